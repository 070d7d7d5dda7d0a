//! Random-position insertion benchmarks with CSV output.
//!
//! `build` grows a fresh sequence to each target size and times the whole
//! construction. `groups` grows one sequence and times each successive group
//! of insertions. For the RAZ every insertion is focus, insert, unfocus.

use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::checker::EditOp;
use crate::error::RazError;
use crate::levels::{mix64, LevelSource};
use crate::oracle::NaiveSeq;
use crate::tlist::Dir;
use crate::tree::Tree;

/// Sizes above this are never run on the naive structure.
pub const NAIVE_MAX: usize = 1_000_000;

pub const CSV_HEADER: &str = "structure,experiment,n,trial,nanos";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Structure {
    Raz,
    Naive,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::Raz => "raz",
            Structure::Naive => "naive",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Experiment {
    Build { sizes: Vec<usize> },
    Groups { group_size: usize, max_size: usize },
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Build { .. } => "build",
            Experiment::Groups { .. } => "groups",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub experiment: Experiment,
    pub trials: usize,
    pub seed: u64,
    pub structures: Vec<Structure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub structure: Structure,
    pub experiment: &'static str,
    pub n: usize,
    pub trial: usize,
    pub nanos: u64,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark config: {0}")]
    Config(String),
    #[error("raz and naive sequences differ after building {n} elements")]
    Mismatch { n: usize },
    #[error(transparent)]
    Raz(#[from] RazError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl BenchConfig {
    pub fn build(sizes: Vec<usize>, trials: usize, seed: u64) -> Self {
        BenchConfig {
            experiment: Experiment::Build { sizes },
            trials,
            seed,
            structures: vec![Structure::Raz, Structure::Naive],
        }
    }

    pub fn groups(group_size: usize, max_size: usize, seed: u64) -> Self {
        BenchConfig {
            experiment: Experiment::Groups {
                group_size,
                max_size,
            },
            trials: 1,
            seed,
            structures: vec![Structure::Raz, Structure::Naive],
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: &str| Err(BenchError::Config(msg.to_string()));
        if self.structures.is_empty() {
            return bad("no structures selected");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        match &self.experiment {
            Experiment::Build { sizes } => {
                if sizes.is_empty() {
                    return bad("no sizes given");
                }
                if sizes.contains(&0) {
                    return bad("sizes must be at least 1");
                }
                if sizes.windows(2).any(|w| w[0] >= w[1]) {
                    return bad("sizes must be strictly ascending");
                }
            }
            Experiment::Groups {
                group_size,
                max_size,
            } => {
                if *group_size == 0 {
                    return bad("group size must be at least 1");
                }
                if group_size > max_size {
                    return bad("group size exceeds max size");
                }
            }
        }
        Ok(())
    }
}

/// Insertion positions: `pos(len)` picks uniformly among the `len + 1` gaps.
/// The stream depends only on its seed, so every structure sees the same one.
struct Positions(ChaCha8Rng);

impl Positions {
    fn new(seed: u64) -> Self {
        Positions(ChaCha8Rng::seed_from_u64(seed))
    }

    fn next(&mut self, len: usize) -> usize {
        self.0.random_range(0..=len)
    }
}

/// Inserts `x` so that it ends up at index `pos` (`pos <= len`).
pub fn raz_insert_at<E: Clone>(
    tree: &Tree<E>,
    pos: usize,
    x: E,
    src: &mut LevelSource,
) -> Result<Tree<E>, RazError> {
    let len = tree.elm_count();
    let z = if pos == len {
        tree.focus(len - 1)?.insert(Dir::R, x, src)?
    } else {
        tree.focus(pos)?.insert(Dir::L, x, src)?
    };
    z.unfocus()
}

fn naive_insert_at<E: Clone>(seq: &mut NaiveSeq<E>, pos: usize, x: E) -> Result<(), RazError> {
    if pos == seq.len() {
        seq.apply(&EditOp::Focus(pos - 1))?;
        seq.apply(&EditOp::Insert(Dir::R, x))?;
    } else {
        seq.apply(&EditOp::Focus(pos))?;
        seq.apply(&EditOp::Insert(Dir::L, x))?;
    }
    Ok(())
}

fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    mix64(seed ^ mix64(n as u64) ^ mix64(!(trial as u64)))
}

/// The tree after `inserts` random-position insertions into a singleton.
pub fn build_raz(inserts: usize, seed: u64) -> Result<Tree<u64>, RazError> {
    let mut positions = Positions::new(seed);
    let mut src = LevelSource::seeded(mix64(seed));
    let mut tree = Tree::Leaf(0u64);
    for i in 1..=inserts as u64 {
        let pos = positions.next(tree.elm_count());
        tree = raz_insert_at(&tree, pos, i, &mut src)?;
    }
    Ok(tree)
}

/// Same construction on the naive sequence.
pub fn build_naive(inserts: usize, seed: u64) -> Result<NaiveSeq<u64>, RazError> {
    let mut positions = Positions::new(seed);
    let mut seq = NaiveSeq::new(vec![0u64])?;
    for i in 1..=inserts as u64 {
        let pos = positions.next(seq.len());
        naive_insert_at(&mut seq, pos, i)?;
    }
    Ok(seq)
}

fn time_build(structure: Structure, n: usize, seed: u64) -> Result<u64, BenchError> {
    let start = Instant::now();
    match structure {
        Structure::Raz => {
            let t = build_raz(n - 1, seed)?;
            std::hint::black_box(&t);
        }
        Structure::Naive => {
            let s = build_naive(n - 1, seed)?;
            std::hint::black_box(&s);
        }
    }
    Ok(start.elapsed().as_nanos() as u64)
}

/// One record per (structure, size, trial). A warm-up run precedes each
/// (structure, size) and is discarded.
pub fn run_build(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let Experiment::Build { sizes } = &cfg.experiment else {
        return Err(BenchError::Config("expected a build experiment".into()));
    };

    // Spot check at the smallest size: both structures must agree.
    let smallest = sizes[0];
    let check_seed = trial_seed(cfg.seed, smallest, 0);
    let raz = build_raz(smallest - 1, check_seed)?;
    let naive = build_naive(smallest - 1, check_seed)?;
    if raz.to_elements() != naive.elems() {
        return Err(BenchError::Mismatch { n: smallest });
    }

    let mut records = Vec::new();
    for &structure in &cfg.structures {
        for &n in sizes {
            if structure == Structure::Naive && n > NAIVE_MAX {
                continue;
            }
            time_build(structure, n, trial_seed(cfg.seed, n, usize::MAX))?;
            for trial in 0..cfg.trials {
                let nanos = time_build(structure, n, trial_seed(cfg.seed, n, trial))?;
                records.push(BenchRecord {
                    structure,
                    experiment: "build",
                    n,
                    trial,
                    nanos,
                });
            }
        }
    }
    Ok(records)
}

/// One record per group per structure; `n` is the number of elements inserted
/// by the end of the group.
pub fn run_groups(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let Experiment::Groups {
        group_size,
        max_size,
    } = cfg.experiment
    else {
        return Err(BenchError::Config("expected a groups experiment".into()));
    };
    let groups = max_size / group_size;
    let mut records = Vec::new();
    for &structure in &cfg.structures {
        if structure == Structure::Naive && max_size > NAIVE_MAX {
            continue;
        }
        let seed = trial_seed(cfg.seed, max_size, 0);
        let mut positions = Positions::new(seed);
        let mut src = LevelSource::seeded(mix64(seed));
        let mut tree = Tree::Leaf(0u64);
        let mut naive = NaiveSeq::new(vec![0u64])?;
        let mut next = 1u64;
        for g in 0..groups {
            let start = Instant::now();
            for _ in 0..group_size {
                match structure {
                    Structure::Raz => {
                        let pos = positions.next(tree.elm_count());
                        tree = raz_insert_at(&tree, pos, next, &mut src)?;
                    }
                    Structure::Naive => {
                        let pos = positions.next(naive.len());
                        naive_insert_at(&mut naive, pos, next)?;
                    }
                }
                next += 1;
            }
            records.push(BenchRecord {
                structure,
                experiment: "groups",
                n: group_size * (g + 1),
                trial: g,
                nanos: start.elapsed().as_nanos() as u64,
            });
        }
    }
    Ok(records)
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    match cfg.experiment {
        Experiment::Build { .. } => run_build(cfg),
        Experiment::Groups { .. } => run_groups(cfg),
    }
}

pub fn write_csv<W: Write>(mut out: W, records: &[BenchRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.structure, r.experiment, r.n, r.trial, r.nanos
        )?;
    }
    out.flush()
}

/// Median time for `structure` at size `n`, if any records match.
pub fn median_nanos(records: &[BenchRecord], structure: Structure, n: usize) -> Option<u64> {
    let mut times: Vec<u64> = records
        .iter()
        .filter(|r| r.structure == structure && r.n == n)
        .map(|r| r.nanos)
        .collect();
    if times.is_empty() {
        return None;
    }
    times.sort_unstable();
    Some(times[times.len() / 2])
}
