//! Structural invariant checks, differential fuzzing against
//! [`NaiveSeq`], depth statistics and step-count measurements.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::RazError;
use crate::levels::{mix64, LevelSource};
use crate::oracle::NaiveSeq;
use crate::steps::Steps;
use crate::tlist::Dir;
use crate::tree::Tree;
use crate::zip::Zip;

/// One step of an edit script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EditOp<E> {
    Focus(usize),
    Insert(Dir, E),
    Remove(Dir),
    Replace(Dir, E),
    ReplaceCursor(E),
    Move(Dir),
    View(Dir),
    ViewCursor,
    Unfocus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    Focus,
    Insert,
    Remove,
    Replace,
    ReplaceCursor,
    Move,
    View,
    ViewCursor,
    Unfocus,
}

impl OpKind {
    pub const ALL: [OpKind; 9] = [
        OpKind::Focus,
        OpKind::Insert,
        OpKind::Remove,
        OpKind::Replace,
        OpKind::ReplaceCursor,
        OpKind::Move,
        OpKind::View,
        OpKind::ViewCursor,
        OpKind::Unfocus,
    ];
}

impl<E> EditOp<E> {
    pub fn kind(&self) -> OpKind {
        match self {
            EditOp::Focus(_) => OpKind::Focus,
            EditOp::Insert(..) => OpKind::Insert,
            EditOp::Remove(_) => OpKind::Remove,
            EditOp::Replace(..) => OpKind::Replace,
            EditOp::ReplaceCursor(_) => OpKind::ReplaceCursor,
            EditOp::Move(_) => OpKind::Move,
            EditOp::View(_) => OpKind::View,
            EditOp::ViewCursor => OpKind::ViewCursor,
            EditOp::Unfocus => OpKind::Unfocus,
        }
    }
}

/// A RAZ driven by edit scripts.
///
/// Between an unfocus and the next focus the session remembers the cursor
/// index; an edit issued while unfocused refocuses there first, so unfocusing
/// never changes what the next edit sees.
#[derive(Clone, Debug)]
pub enum Session<E> {
    Unfocused { tree: Tree<E>, cursor: usize },
    Focused(Zip<E>),
}

impl<E: Clone> Session<E> {
    pub fn new(tree: Tree<E>) -> Result<Self, RazError> {
        if tree.is_nil() {
            return Err(RazError::EmptySequence);
        }
        Ok(Session::Unfocused { tree, cursor: 0 })
    }

    pub fn from_elements<I>(elems: I, src: &mut LevelSource) -> Result<Self, RazError>
    where
        I: IntoIterator<Item = E>,
    {
        Session::new(Tree::from_elements(elems, src)?)
    }

    pub fn cursor(&self) -> usize {
        match self {
            Session::Unfocused { cursor, .. } => *cursor,
            Session::Focused(z) => z.cursor_index(),
        }
    }

    pub fn to_elements(&self) -> Vec<E> {
        match self {
            Session::Unfocused { tree, .. } => tree.to_elements(),
            Session::Focused(z) => z.to_elements(),
        }
    }

    /// The tree, when unfocused.
    pub fn as_tree(&self) -> Option<&Tree<E>> {
        match self {
            Session::Unfocused { tree, .. } => Some(tree),
            Session::Focused(_) => None,
        }
    }

    /// The sequence as a tree, unfocusing a copy if needed.
    pub fn tree(&self, steps: &mut Steps) -> Result<Tree<E>, RazError> {
        match self {
            Session::Unfocused { tree, .. } => Ok(tree.clone()),
            Session::Focused(z) => z.unfocus_counted(steps),
        }
    }

    fn zip(&mut self, steps: &mut Steps) -> Result<&Zip<E>, RazError> {
        if let Session::Unfocused { tree, cursor } = self {
            let z = tree.focus_counted(*cursor, steps)?;
            *self = Session::Focused(z);
        }
        match self {
            Session::Focused(z) => Ok(z),
            Session::Unfocused { .. } => unreachable!(),
        }
    }

    fn edit<F>(&mut self, steps: &mut Steps, f: F) -> Result<(), RazError>
    where
        F: FnOnce(&Zip<E>, &mut Steps) -> Result<Zip<E>, RazError>,
    {
        let z = self.zip(steps)?;
        let next = f(z, steps)?;
        *self = Session::Focused(next);
        Ok(())
    }

    /// Applies one operation. View operations return the element seen. On
    /// error the represented sequence and cursor are unchanged.
    pub fn apply(
        &mut self,
        op: &EditOp<E>,
        src: &mut LevelSource,
        steps: &mut Steps,
    ) -> Result<Option<E>, RazError> {
        match op {
            EditOp::Focus(p) => {
                let tree = self.tree(steps)?;
                let z = tree.focus_counted(*p, steps)?;
                *self = Session::Focused(z);
            }
            EditOp::Unfocus => {
                if let Session::Focused(z) = self {
                    let tree = z.unfocus_counted(steps)?;
                    let cursor = z.cursor_index();
                    *self = Session::Unfocused { tree, cursor };
                }
            }
            EditOp::Insert(d, x) => self.edit(steps, |z, _| z.insert(*d, x.clone(), src))?,
            EditOp::Remove(d) => self.edit(steps, |z, s| z.remove_counted(*d, s))?,
            EditOp::Replace(d, x) => self.edit(steps, |z, _| z.replace(*d, x.clone()))?,
            EditOp::ReplaceCursor(x) => self.edit(steps, |z, _| Ok(z.replace_cursor(x.clone())))?,
            EditOp::Move(d) => self.edit(steps, |z, s| z.move_counted(*d, s))?,
            EditOp::View(d) => return Ok(Some(self.zip(steps)?.view(*d)?.clone())),
            EditOp::ViewCursor => return Ok(Some(self.zip(steps)?.view_cursor().clone())),
        }
        Ok(None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeViolation {
    /// A cached count differs from the number of elements below.
    Count,
    /// A left subtree holds a level at least its parent's, or a right subtree
    /// one above it.
    CanonicalOrder,
    /// A `Bin` with a `Nil` child.
    NilChild,
}

impl TreeViolation {
    pub fn name(self) -> &'static str {
        match self {
            TreeViolation::Count => "count",
            TreeViolation::CanonicalOrder => "canonical-order",
            TreeViolation::NilChild => "nil-child",
        }
    }
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every structural violation in `t`; empty means the tree is well formed.
pub fn check_tree<E>(t: &Tree<E>) -> Vec<TreeViolation> {
    fn walk<E>(t: &Tree<E>, out: &mut Vec<TreeViolation>) -> (usize, u32) {
        match t {
            Tree::Nil => (0, 0),
            Tree::Leaf(_) => (1, 0),
            Tree::Bin(b) => {
                let (cl, ml) = walk(&b.left, out);
                let (cr, mr) = walk(&b.right, out);
                let level = b.level.get();
                if b.count != cl + cr {
                    out.push(TreeViolation::Count);
                }
                if ml >= level || mr > level {
                    out.push(TreeViolation::CanonicalOrder);
                }
                if b.left.is_nil() || b.right.is_nil() {
                    out.push(TreeViolation::NilChild);
                }
                (cl + cr, level.max(ml).max(mr))
            }
        }
    }
    let mut out = Vec::new();
    walk(t, &mut out);
    out
}

/// Relative frequencies of each operation kind in generated scripts.
#[derive(Clone, Debug, PartialEq)]
pub struct OpWeights {
    pub weights: BTreeMap<OpKind, u32>,
}

impl Default for OpWeights {
    fn default() -> Self {
        let weights = [
            (OpKind::Focus, 4),
            (OpKind::Insert, 30),
            (OpKind::Remove, 20),
            (OpKind::Replace, 10),
            (OpKind::ReplaceCursor, 10),
            (OpKind::Move, 15),
            (OpKind::View, 5),
            (OpKind::ViewCursor, 3),
            (OpKind::Unfocus, 3),
        ]
        .into_iter()
        .collect();
        OpWeights { weights }
    }
}

impl OpWeights {
    pub fn fraction(&self, kind: OpKind) -> f64 {
        let total: u32 = self.weights.values().sum();
        f64::from(self.weights.get(&kind).copied().unwrap_or(0)) / f64::from(total)
    }

    fn pick(&self, rng: &mut impl Rng) -> OpKind {
        let total: u32 = self.weights.values().sum();
        let mut x = rng.random_range(0..total);
        for (&kind, &w) in &self.weights {
            if x < w {
                return kind;
            }
            x -= w;
        }
        unreachable!("weights sum to total")
    }
}

/// A replayable script: initial contents and the operations that follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub seed: u64,
    pub initial: Vec<u32>,
    pub ops: Vec<EditOp<u32>>,
}

impl Script {
    /// Level source used when replaying this script.
    pub fn level_source(&self) -> LevelSource {
        LevelSource::seeded(mix64(self.seed ^ 0x6c65_7665_6c73_0000))
    }
}

pub fn random_script(seed: u64, len: usize, value_pool: u32) -> Script {
    random_script_with(seed, len, value_pool, &OpWeights::default())
}

/// Generates `len` operations that are all in bounds, tracking the sequence
/// length and cursor as they would evolve. An operation that needs a
/// neighbour when there is none is replaced by an insert.
pub fn random_script_with(seed: u64, len: usize, value_pool: u32, weights: &OpWeights) -> Script {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let value_pool = value_pool.max(1);
    let initial: Vec<u32> = (0..rng.random_range(1..=16))
        .map(|_| rng.random_range(0..value_pool))
        .collect();
    let mut length = initial.len();
    let mut cursor = 0usize;
    let mut ops = Vec::with_capacity(len);
    for _ in 0..len {
        let value = rng.random_range(0..value_pool);
        let mut dirs = Vec::with_capacity(2);
        if cursor > 0 {
            dirs.push(Dir::L);
        }
        if cursor + 1 < length {
            dirs.push(Dir::R);
        }
        let mut kind = weights.pick(&mut rng);
        let needs_neighbour = matches!(
            kind,
            OpKind::Remove | OpKind::Replace | OpKind::Move | OpKind::View
        );
        if needs_neighbour && dirs.is_empty() {
            kind = OpKind::Insert;
        }
        let side = if dirs.is_empty() {
            if rng.random_bool(0.5) {
                Dir::L
            } else {
                Dir::R
            }
        } else {
            dirs[rng.random_range(0..dirs.len())]
        };
        let op = match kind {
            OpKind::Focus => {
                cursor = rng.random_range(0..length);
                EditOp::Focus(cursor)
            }
            OpKind::Insert => {
                length += 1;
                if side == Dir::L {
                    cursor += 1;
                }
                EditOp::Insert(side, value)
            }
            OpKind::Remove => {
                length -= 1;
                if side == Dir::L {
                    cursor -= 1;
                }
                EditOp::Remove(side)
            }
            OpKind::Replace => EditOp::Replace(side, value),
            OpKind::ReplaceCursor => EditOp::ReplaceCursor(value),
            OpKind::Move => {
                match side {
                    Dir::L => cursor -= 1,
                    Dir::R => cursor += 1,
                }
                EditOp::Move(side)
            }
            OpKind::View => EditOp::View(side),
            OpKind::ViewCursor => EditOp::ViewCursor,
            OpKind::Unfocus => EditOp::Unfocus,
        };
        ops.push(op);
    }
    Script { seed, initial, ops }
}

/// A failed check, replayable from the script seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub seed: u64,
    pub op: usize,
    pub invariant: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed={} op={} invariant={}",
            self.seed, self.op, self.invariant
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DepthStats {
    pub n: usize,
    pub trials: usize,
    /// Mean leaf depth over all leaves of all trials.
    pub mean: f64,
    pub max: usize,
    pub trial_means: Vec<f64>,
    pub trial_maxes: Vec<usize>,
}

/// Histogram from total steps taken by one operation to how often that
/// happened.
pub type StepHistogram = BTreeMap<u64, u64>;

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub scripts_run: usize,
    pub ops_run: usize,
    /// Number of trees passed through [`check_tree`].
    pub trees_checked: usize,
    pub violations: Vec<Violation>,
    pub depth_stats: Option<DepthStats>,
    pub step_counts: BTreeMap<OpKind, StepHistogram>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.scripts_run += other.scripts_run;
        self.ops_run += other.ops_run;
        self.trees_checked += other.trees_checked;
        self.violations.extend(other.violations);
        for (kind, hist) in other.step_counts {
            let mine = self.step_counts.entry(kind).or_default();
            for (steps, n) in hist {
                *mine.entry(steps).or_default() += n;
            }
        }
        if self.depth_stats.is_none() {
            self.depth_stats = other.depth_stats;
        }
        self
    }

    /// `scripts=<k> violations=<v>`
    pub fn summary(&self) -> String {
        format!(
            "scripts={} violations={}",
            self.scripts_run,
            self.violations.len()
        )
    }
}

/// Runs `script` on a RAZ and on [`NaiveSeq`] side by side.
///
/// After every operation the two must agree on result, error, contents and
/// cursor. Every unfocused tree (and the final one) goes through
/// [`check_tree`]. The run stops at the first operation with a violation.
pub fn differential_run(script: &Script, src: &mut LevelSource) -> CheckReport {
    let mut report = CheckReport {
        scripts_run: 1,
        ..CheckReport::default()
    };
    let violation = |op: usize, invariant: &str| Violation {
        seed: script.seed,
        op,
        invariant: invariant.to_string(),
    };

    let mut raz = match Session::from_elements(script.initial.iter().copied(), src) {
        Ok(s) => s,
        Err(e) => {
            report
                .violations
                .push(violation(0, &format!("construct:{e}")));
            return report;
        }
    };
    let mut naive = match NaiveSeq::new(script.initial.clone()) {
        Ok(s) => s,
        Err(e) => {
            report
                .violations
                .push(violation(0, &format!("construct:{e}")));
            return report;
        }
    };
    if let Some(t) = raz.as_tree() {
        report.trees_checked += 1;
        for v in check_tree(t) {
            report.violations.push(violation(0, v.name()));
        }
    }

    for (i, op) in script.ops.iter().enumerate() {
        let mut steps = Steps::default();
        let got = raz.apply(op, src, &mut steps);
        let want = naive.apply(op);
        report.ops_run += 1;
        *report
            .step_counts
            .entry(op.kind())
            .or_default()
            .entry(steps.total())
            .or_default() += 1;

        match (&got, &want) {
            (Ok(a), Ok(b)) if a != b => report.violations.push(violation(i, "view")),
            (Err(a), Err(b)) if a != b => report.violations.push(violation(i, "error-class")),
            (Ok(_), Err(_)) | (Err(_), Ok(_)) => {
                report.violations.push(violation(i, "error-class"))
            }
            _ => {}
        }
        if raz.to_elements() != naive.elems() {
            report.violations.push(violation(i, "sequence"));
        }
        if raz.cursor() != naive.cursor() {
            report.violations.push(violation(i, "cursor"));
        }
        if *op == EditOp::Unfocus {
            if let Some(t) = raz.as_tree() {
                report.trees_checked += 1;
                for v in check_tree(t) {
                    report.violations.push(violation(i, v.name()));
                }
            }
        }
        if !report.violations.is_empty() {
            return report;
        }
    }

    let end = script.ops.len();
    match raz.tree(&mut Steps::default()) {
        Ok(t) => {
            report.trees_checked += 1;
            for v in check_tree(&t) {
                report.violations.push(violation(end, v.name()));
            }
            if t.to_elements() != naive.elems() {
                report.violations.push(violation(end, "sequence"));
            }
        }
        Err(e) => report
            .violations
            .push(violation(end, &format!("unfocus:{e}"))),
    }
    report
}

/// Differential runs over `scripts` seeds starting at `seed`, in parallel.
pub fn check_many(seed: u64, scripts: usize, ops: usize) -> CheckReport {
    let mut report = (0..scripts as u64)
        .into_par_iter()
        .map(|i| {
            let script = random_script(seed.wrapping_add(i), ops, 1 << 16);
            differential_run(&script, &mut script.level_source())
        })
        .reduce(CheckReport::default, CheckReport::merge);
    report.violations.sort_by_key(|v| (v.seed, v.op));
    report
}

/// Leaf depths of `trials` trees of `n` elements with seeded levels.
pub fn depth_stats(n: usize, trials: usize, seed: u64) -> DepthStats {
    assert!(n >= 1 && trials >= 1);
    let per_trial: Vec<(usize, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut src = LevelSource::seeded(seed.wrapping_add(i));
            let t = Tree::from_elements(0..n, &mut src).expect("seeded source never runs out");
            let (mut sum, mut max) = (0usize, 0usize);
            t.for_each_leaf_depth(|d| {
                sum += d;
                max = max.max(d);
            });
            (sum, max)
        })
        .collect();
    let total: usize = per_trial.iter().map(|p| p.0).sum();
    DepthStats {
        n,
        trials,
        mean: total as f64 / (n * trials) as f64,
        max: per_trial.iter().map(|p| p.1).max().unwrap_or(0),
        trial_means: per_trial.iter().map(|p| p.0 as f64 / n as f64).collect(),
        trial_maxes: per_trial.iter().map(|p| p.1).collect(),
    }
}

/// Steps taken by `focus(t, p)` and by unfocusing the result.
pub fn focus_unfocus_steps<E: Clone>(t: &Tree<E>, p: usize) -> Result<(Steps, Steps), RazError> {
    let mut focus = Steps::default();
    let z = t.focus_counted(p, &mut focus)?;
    let mut unfocus = Steps::default();
    z.unfocus_counted(&mut unfocus)?;
    Ok((focus, unfocus))
}

/// Steps taken by the first trim on side `d` of `z`.
pub fn first_trim_steps<E: Clone>(z: &Zip<E>, d: Dir) -> Result<Steps, RazError> {
    let mut steps = Steps::default();
    // The head of a fresh side is a level; the tree to trim follows it.
    let side = match z.side(d).head() {
        Some(crate::tlist::Entry::Level(_)) => z.side(d).tail()?,
        _ => z.side(d).clone(),
    };
    side.trim_counted(d, &mut steps)?;
    Ok(steps)
}

/// Focuses at `p` and moves `k` times towards `d` (fewer if the sequence ends
/// first). Returns the moves made and the steps they took.
pub fn move_walk_steps<E: Clone>(
    t: &Tree<E>,
    p: usize,
    d: Dir,
    k: usize,
) -> Result<(usize, Steps), RazError> {
    let mut z = t.focus(p)?;
    let mut steps = Steps::default();
    let mut moves = 0;
    while moves < k {
        match z.move_counted(d, &mut steps) {
            Ok(next) => z = next,
            Err(RazError::NoElements) => break,
            Err(e) => return Err(e),
        }
        moves += 1;
    }
    Ok((moves, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::fixtures::*;

    #[test]
    fn example_tree_is_canonical() {
        assert!(check_tree(&t0()).is_empty());
        assert!(check_tree(&t0_without_c()).is_empty());
    }

    #[test]
    fn counterexample_tree_flags_order_and_nil() {
        // Bin(3, 2, x, Bin(5, 1, y, Nil)): both cached counts are right.
        let t = Tree::bin_with_count(
            lv(3),
            2,
            leaf('x'),
            Tree::bin_with_count(lv(5), 1, leaf('y'), Tree::Nil),
        );
        let mut v = check_tree(&t);
        v.sort();
        assert_eq!(
            v,
            vec![TreeViolation::CanonicalOrder, TreeViolation::NilChild]
        );
    }

    #[test]
    fn wrong_count_is_flagged() {
        let t = Tree::bin_with_count(
            lv(3),
            3,
            leaf('x'),
            Tree::bin_with_count(lv(5), 1, leaf('y'), Tree::Nil),
        );
        let mut v = check_tree(&t);
        v.sort();
        assert_eq!(
            v,
            vec![
                TreeViolation::Count,
                TreeViolation::CanonicalOrder,
                TreeViolation::NilChild
            ]
        );
    }

    #[test]
    fn left_ties_break_canonical_order() {
        let t = bin(2, bin(2, leaf('a'), leaf('b')), leaf('c'));
        assert_eq!(check_tree(&t), vec![TreeViolation::CanonicalOrder]);
        let t = bin(2, leaf('a'), bin(2, leaf('b'), leaf('c')));
        assert!(check_tree(&t).is_empty());
    }

    #[test]
    fn seeded_trees_are_canonical() {
        for seed in 0..10_000u64 {
            let mut src = LevelSource::seeded(seed);
            let n = 1 + (mix64(seed) % 200) as usize;
            let t = Tree::from_elements(0..n, &mut src).unwrap();
            assert!(check_tree(&t).is_empty(), "seed {seed}");
        }
    }

    #[test]
    fn scripts_are_deterministic() {
        assert_eq!(random_script(1, 10, 5), random_script(1, 10, 5));
        assert_ne!(random_script(1, 10, 5), random_script(2, 10, 5));
    }

    #[test]
    fn scripts_stay_in_bounds() {
        for seed in 0..50 {
            let script = random_script(seed, 1000, 7);
            let mut naive = NaiveSeq::new(script.initial.clone()).unwrap();
            for op in &script.ops {
                naive.apply(op).unwrap();
                assert!(!naive.is_empty());
            }
        }
    }

    #[test]
    fn op_mix_matches_weights() {
        let weights = OpWeights::default();
        let script = random_script_with(3, 100_000, 100, &weights);
        let mut counts: BTreeMap<OpKind, usize> = BTreeMap::new();
        for op in &script.ops {
            *counts.entry(op.kind()).or_default() += 1;
        }
        for kind in OpKind::ALL {
            let expected = weights.fraction(kind);
            let got = counts.get(&kind).copied().unwrap_or(0) as f64 / 100_000.0;
            assert!(
                (got - expected).abs() <= 0.05 * expected,
                "{kind:?}: {got} vs {expected}"
            );
        }
    }

    fn example_script(ops: Vec<EditOp<u32>>) -> (Script, LevelSource) {
        // z a b c y d e as 0..7
        let script = Script {
            seed: 0,
            initial: (0..7).collect(),
            ops,
        };
        (
            script,
            LevelSource::scripted_from_u32([4, 6, 1, 2, 5, 3]).unwrap(),
        )
    }

    #[test]
    fn differential_run_on_example() {
        let (script, mut src) = example_script(vec![
            EditOp::Focus(4),
            EditOp::Remove(Dir::L),
            EditOp::Unfocus,
        ]);
        let report = differential_run(&script, &mut src);
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.trees_checked, 3);
    }

    #[test]
    fn empty_edit_script_keeps_tree() {
        for p in 0..7 {
            let (script, mut src) = example_script(vec![EditOp::Focus(p), EditOp::Unfocus]);
            let mut raz = Session::from_elements(script.initial.clone(), &mut src).unwrap();
            let before = raz.as_tree().unwrap().clone();
            let mut steps = Steps::default();
            for op in &script.ops {
                raz.apply(op, &mut src, &mut steps).unwrap();
            }
            assert_eq!(raz.as_tree(), Some(&before));
        }
    }

    #[test]
    fn session_errors_leave_state_alone() {
        let mut src = LevelSource::seeded(1);
        let mut s = Session::from_elements(['x', 'y'], &mut src).unwrap();
        let mut steps = Steps::default();
        assert_eq!(
            s.apply(&EditOp::Focus(2), &mut src, &mut steps),
            Err(RazError::OutOfBounds { pos: 2, len: 2 })
        );
        assert_eq!(
            s.apply(&EditOp::Remove(Dir::L), &mut src, &mut steps),
            Err(RazError::NoElements)
        );
        assert_eq!(s.to_elements(), vec!['x', 'y']);
        assert_eq!(s.cursor(), 0);
        assert_eq!(
            Session::<char>::new(Tree::Nil).unwrap_err(),
            RazError::EmptySequence
        );
    }

    #[test]
    fn deliberate_error_scripts_agree_with_oracle() {
        // Out-of-range operations must fail identically on both sides.
        let ops = vec![
            EditOp::Focus(0),
            EditOp::Remove(Dir::L),
            EditOp::Move(Dir::L),
            EditOp::View(Dir::L),
            EditOp::Replace(Dir::L, 9),
            EditOp::Focus(6),
            EditOp::Remove(Dir::R),
            EditOp::Focus(7),
            EditOp::Focus(usize::MAX),
            EditOp::Unfocus,
        ];
        let (script, mut src) = example_script(ops);
        let report = differential_run(&script, &mut src);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn small_fuzz_batch_is_clean() {
        let report = check_many(11, 64, 300);
        assert_eq!(report.scripts_run, 64);
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.summary(), "scripts=64 violations=0");
    }

    #[test]
    fn violation_line_format() {
        let v = Violation {
            seed: 5,
            op: 17,
            invariant: "sequence".into(),
        };
        assert_eq!(v.to_string(), "seed=5 op=17 invariant=sequence");
    }

    #[test]
    fn depth_stats_singleton_and_growth() {
        let s = depth_stats(1, 3, 0);
        assert_eq!((s.mean, s.max), (0.0, 0));
        let small = depth_stats(1 << 8, 20, 9);
        let large = depth_stats(1 << 16, 4, 9);
        assert!(large.mean / small.mean <= 2.6);
    }

    #[test]
    fn step_helpers_on_example() {
        let (focus, unfocus) = focus_unfocus_steps(&t0(), 4).unwrap();
        assert_eq!(focus.descents, 3);
        assert!(unfocus.appends > 0);
        let z = t0().focus(4).unwrap();
        assert_eq!(first_trim_steps(&z, Dir::L).unwrap().trims, 1);
        assert_eq!(first_trim_steps(&z, Dir::R).unwrap().trims, 1);
        let (moves, steps) = move_walk_steps(&t0(), 0, Dir::R, 100).unwrap();
        assert_eq!(moves, 6);
        assert!(steps.trims <= 6);
    }
}
