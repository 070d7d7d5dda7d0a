//! Unfocused sequences: binary trees whose internal nodes carry a level and
//! a cached element count.

use std::fmt;
use std::sync::Arc;

use crate::error::RazError;
use crate::levels::{Level, LevelSource};
use crate::steps::Steps;

/// An unfocused sequence.
///
/// Trees are persistent: `Bin` nodes are shared through [`Arc`], so cloning a
/// tree is O(1) apart from cloning a root leaf element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree<E> {
    Nil,
    Leaf(E),
    Bin(Arc<Bin<E>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bin<E> {
    pub level: Level,
    pub count: usize,
    pub left: Tree<E>,
    pub right: Tree<E>,
}

impl<E> Tree<E> {
    /// Binary node with its count computed from the children.
    pub fn bin(level: Level, left: Tree<E>, right: Tree<E>) -> Tree<E> {
        let count = left.elm_count() + right.elm_count();
        Tree::bin_with_count(level, count, left, right)
    }

    /// Binary node with an explicit cached count, which is trusted as given.
    pub fn bin_with_count(level: Level, count: usize, left: Tree<E>, right: Tree<E>) -> Tree<E> {
        Tree::Bin(Arc::new(Bin {
            level,
            count,
            left,
            right,
        }))
    }

    /// Number of elements, read from the root in O(1).
    pub fn elm_count(&self) -> usize {
        match self {
            Tree::Nil => 0,
            Tree::Leaf(_) => 1,
            Tree::Bin(b) => b.count,
        }
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Tree::Nil)
    }

    /// Level of the root, if it is a binary node.
    pub fn level(&self) -> Option<Level> {
        match self {
            Tree::Bin(b) => Some(b.level),
            _ => None,
        }
    }

    /// Largest number of `Bin` nodes on any root-to-leaf path.
    pub fn max_depth(&self) -> usize {
        let mut max = 0;
        self.for_each_leaf_depth(|d| max = max.max(d));
        max
    }

    /// Calls `f` with the depth of every leaf, in order.
    pub fn for_each_leaf_depth(&self, mut f: impl FnMut(usize)) {
        let mut stack = vec![(self, 0usize)];
        while let Some((t, depth)) = stack.pop() {
            match t {
                Tree::Nil => {}
                Tree::Leaf(_) => f(depth),
                Tree::Bin(b) => {
                    stack.push((&b.right, depth + 1));
                    stack.push((&b.left, depth + 1));
                }
            }
        }
    }

    /// In-order iterator over the elements.
    pub fn iter(&self) -> Iter<'_, E> {
        Iter { stack: vec![self] }
    }
}

impl<E: Clone> Tree<E> {
    /// Concatenates two trees, keeping higher levels nearer the root.
    ///
    /// On equal root levels the left tree's root stays on top. Two bare leaves
    /// cannot be joined because there is no level to put between them.
    pub fn append(t1: Tree<E>, t2: Tree<E>) -> Result<Tree<E>, RazError> {
        append_counted(t1, t2, &mut Steps::default())
    }

    /// Elements in order.
    pub fn to_elements(&self) -> Vec<E> {
        let mut out = Vec::with_capacity(self.elm_count());
        out.extend(self.iter().cloned());
        out
    }

    /// Builds the canonical tree for `elems`, drawing one level between each
    /// adjacent pair.
    ///
    /// The root is the leftmost maximum level; left subtrees hold strictly
    /// lower levels and right subtrees lower or equal ones. This is the same
    /// tree `unfocus` produces for the same elements and levels.
    pub fn from_elements<I>(elems: I, src: &mut LevelSource) -> Result<Tree<E>, RazError>
    where
        I: IntoIterator<Item = E>,
    {
        let mut elems = elems.into_iter();
        let first = elems.next().ok_or(RazError::EmptySequence)?;
        // Open nodes on the right spine, each still missing its right child.
        let mut spine: Vec<(Level, Tree<E>)> = Vec::new();
        let mut current = Tree::Leaf(first);
        for e in elems {
            let level = src.draw()?;
            while let Some(&(top, _)) = spine.last() {
                if top >= level {
                    break;
                }
                let (top, left) = spine.pop().unwrap();
                current = Tree::bin(top, left, current);
            }
            spine.push((level, current));
            current = Tree::Leaf(e);
        }
        while let Some((level, left)) = spine.pop() {
            current = Tree::bin(level, left, current);
        }
        Ok(current)
    }
}

impl<E: Clone> Bin<E> {
    pub(crate) fn into_parts(node: Arc<Bin<E>>) -> (Level, Tree<E>, Tree<E>) {
        let b = Arc::unwrap_or_clone(node);
        (b.level, b.left, b.right)
    }
}

/// [`Tree::append`] with step counting: one step per (recursive) call.
///
/// Nodes on the merge path that are not shared are updated in place; shared
/// ones are copied.
pub fn append_counted<E: Clone>(
    t1: Tree<E>,
    t2: Tree<E>,
    steps: &mut Steps,
) -> Result<Tree<E>, RazError> {
    steps.appends += 1;
    let total = t1.elm_count() + t2.elm_count();
    match (t1, t2) {
        (Tree::Nil, t2) => Ok(t2),
        (t1, Tree::Nil) => Ok(t1),
        (Tree::Leaf(_), Tree::Leaf(_)) => Err(RazError::LeafLeaf),
        (t1 @ Tree::Leaf(_), Tree::Bin(b)) => {
            rebuild(b, total, Side::Left, |l| append_counted(t1, l, steps))
        }
        (Tree::Bin(b), t2 @ Tree::Leaf(_)) => {
            rebuild(b, total, Side::Right, |r| append_counted(r, t2, steps))
        }
        (Tree::Bin(b1), Tree::Bin(b2)) => {
            if b1.level >= b2.level {
                rebuild(b1, total, Side::Right, |r| {
                    append_counted(r, Tree::Bin(b2), steps)
                })
            } else {
                rebuild(b2, total, Side::Left, |l| {
                    append_counted(Tree::Bin(b1), l, steps)
                })
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// `node` with one child replaced by `f(child)` and its count set to `count`.
fn rebuild<E: Clone>(
    mut node: Arc<Bin<E>>,
    count: usize,
    side: Side,
    f: impl FnOnce(Tree<E>) -> Result<Tree<E>, RazError>,
) -> Result<Tree<E>, RazError> {
    if let Some(b) = Arc::get_mut(&mut node) {
        let slot = match side {
            Side::Left => &mut b.left,
            Side::Right => &mut b.right,
        };
        let child = std::mem::replace(slot, Tree::Nil);
        *slot = f(child)?;
        b.count = count;
        return Ok(Tree::Bin(node));
    }
    let b = &*node;
    Ok(match side {
        Side::Left => Tree::bin_with_count(b.level, count, f(b.left.clone())?, b.right.clone()),
        Side::Right => Tree::bin_with_count(b.level, count, b.left.clone(), f(b.right.clone())?),
    })
}

pub struct Iter<'a, E> {
    stack: Vec<&'a Tree<E>>,
}

impl<'a, E> Iterator for Iter<'a, E> {
    type Item = &'a E;

    fn next(&mut self) -> Option<&'a E> {
        while let Some(t) = self.stack.pop() {
            match t {
                Tree::Nil => {}
                Tree::Leaf(e) => return Some(e),
                Tree::Bin(b) => {
                    self.stack.push(&b.right);
                    self.stack.push(&b.left);
                }
            }
        }
        None
    }
}

/// `Bin6(Bin4(z,a),b)` style rendering; counts are omitted.
impl<E: fmt::Display> fmt::Display for Tree<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Nil => f.write_str("Nil"),
            Tree::Leaf(e) => e.fmt(f),
            Tree::Bin(b) => write!(f, "Bin{}({},{})", b.level, b.left, b.right),
        }
    }
}
