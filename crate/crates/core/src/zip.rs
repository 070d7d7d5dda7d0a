//! Focused sequences and the local edits performed at the cursor.

use crate::error::RazError;
use crate::levels::LevelSource;
use crate::steps::Steps;
use crate::tlist::{Dir, Entry, TList};
use crate::tree::{append_counted, Tree};

/// A sequence focused on one element.
///
/// `left` is stored outward from the cursor, so the sequence reads as the
/// reverse of `left`, then `focus`, then `right`. A zipper always holds a focus
/// and therefore cannot be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zip<E> {
    left: TList<E>,
    focus: E,
    right: TList<E>,
}

impl<E> Zip<E> {
    pub fn singleton(e: E) -> Self {
        Zip {
            left: TList::nil(),
            focus: e,
            right: TList::nil(),
        }
    }

    pub fn from_parts(left: TList<E>, focus: E, right: TList<E>) -> Self {
        Zip { left, focus, right }
    }

    pub fn left(&self) -> &TList<E> {
        &self.left
    }

    pub fn right(&self) -> &TList<E> {
        &self.right
    }

    pub fn side(&self, d: Dir) -> &TList<E> {
        match d {
            Dir::L => &self.left,
            Dir::R => &self.right,
        }
    }

    pub fn view_cursor(&self) -> &E {
        &self.focus
    }

    pub fn replace_cursor(&self, ne: E) -> Self {
        Zip {
            left: self.left.clone(),
            focus: ne,
            right: self.right.clone(),
        }
    }

    /// Index of the focused element. Linear in the length of the left list.
    pub fn cursor_index(&self) -> usize {
        self.left.elm_count()
    }

    pub fn len(&self) -> usize {
        self.left.elm_count() + 1 + self.right.elm_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The element next to the cursor on side `d`, found without restructuring.
    ///
    /// When that element sits inside a tree this walks the tree's spine, so
    /// repeated deep views cost O(depth) each.
    pub fn view(&self, d: Dir) -> Result<&E, RazError> {
        for entry in self.side(d).iter() {
            match entry {
                Entry::Level(_) => {}
                Entry::Cons(e) => return Ok(e),
                Entry::Tree(t) => return spine_end(t, d),
            }
        }
        Err(RazError::NoElements)
    }

    fn with_side(&self, d: Dir, side: TList<E>) -> Self
    where
        E: Clone,
    {
        match d {
            Dir::L => Zip {
                left: side,
                focus: self.focus.clone(),
                right: self.right.clone(),
            },
            Dir::R => Zip {
                left: self.left.clone(),
                focus: self.focus.clone(),
                right: side,
            },
        }
    }
}

fn spine_end<E>(t: &Tree<E>, d: Dir) -> Result<&E, RazError> {
    let mut cur = t;
    loop {
        match cur {
            Tree::Nil => return Err(RazError::MalformedTree),
            Tree::Leaf(e) => return Ok(e),
            Tree::Bin(b) => {
                cur = match d {
                    Dir::L => &b.right,
                    Dir::R => &b.left,
                }
            }
        }
    }
}

/// Peels `side` down to its nearest element, trimming trees on the way.
/// Returns the levels passed (nearest the cursor first), the element, and the
/// rest of the list after it.
fn expose<E: Clone>(
    side: &TList<E>,
    d: Dir,
    steps: &mut Steps,
) -> Result<(Vec<crate::levels::Level>, E, TList<E>), RazError> {
    let mut levels = Vec::new();
    let mut cur = side.clone();
    loop {
        let next = match cur.split() {
            None => return Err(RazError::NoElements),
            Some((Entry::Cons(e), rest)) => return Ok((levels, e.clone(), rest.clone())),
            Some((Entry::Level(level), rest)) => {
                levels.push(*level);
                rest.clone()
            }
            Some((Entry::Tree(_), _)) => cur.trim_counted(d, steps)?,
        };
        cur = next;
    }
}

impl<E: Clone> Tree<E> {
    /// Focuses on the element at index `p` (0-based).
    ///
    /// Descends a single root-to-leaf path. Each subtree passed on the way is
    /// pushed, together with its parent's level, onto the side it lies on,
    /// so the smallest subtrees end up nearest the cursor.
    pub fn focus(&self, p: usize) -> Result<Zip<E>, RazError> {
        self.focus_counted(p, &mut Steps::default())
    }

    pub fn focus_counted(&self, p: usize, steps: &mut Steps) -> Result<Zip<E>, RazError> {
        let len = self.elm_count();
        if p >= len {
            return Err(RazError::OutOfBounds { pos: p, len });
        }
        let (mut left, mut right) = (TList::nil(), TList::nil());
        let mut cur = self;
        let mut p = p;
        loop {
            match cur {
                Tree::Nil => return Err(RazError::InternalNil),
                Tree::Leaf(e) => {
                    debug_assert_eq!(p, 0);
                    return Ok(Zip::from_parts(left, e.clone(), right));
                }
                Tree::Bin(b) => {
                    steps.descents += 1;
                    let c = b.left.elm_count();
                    if p < c {
                        right = right
                            .push(Entry::Tree(b.right.clone()))
                            .push(Entry::Level(b.level));
                        cur = &b.left;
                    } else {
                        left = left
                            .push(Entry::Tree(b.left.clone()))
                            .push(Entry::Level(b.level));
                        p -= c;
                        cur = &b.right;
                    }
                }
            }
        }
    }
}

impl<E: Clone> Zip<E> {
    /// Rebuilds a balanced tree: both sides are grown into trees and joined
    /// around the focus.
    pub fn unfocus(&self) -> Result<Tree<E>, RazError> {
        self.unfocus_counted(&mut Steps::default())
    }

    pub fn unfocus_counted(&self, steps: &mut Steps) -> Result<Tree<E>, RazError> {
        let left = self.left.grow_counted(Dir::L, steps)?;
        let right = self.right.grow_counted(Dir::R, steps)?;
        let right = append_counted(Tree::Leaf(self.focus.clone()), right, steps)?;
        append_counted(left, right, steps)
    }

    /// Inserts `ne` next to the cursor on side `d` with a freshly drawn level
    /// between the two. The focus stays put.
    pub fn insert(&self, d: Dir, ne: E, src: &mut LevelSource) -> Result<Self, RazError> {
        let level = src.draw()?;
        let side = self
            .side(d)
            .clone()
            .push(Entry::Cons(ne))
            .push(Entry::Level(level));
        Ok(self.with_side(d, side))
    }

    /// Removes the element next to the cursor on side `d`, along with every
    /// level passed before reaching it.
    pub fn remove(&self, d: Dir) -> Result<Self, RazError> {
        self.remove_counted(d, &mut Steps::default())
    }

    pub fn remove_counted(&self, d: Dir, steps: &mut Steps) -> Result<Self, RazError> {
        let (_, _, rest) = expose(self.side(d), d, steps)?;
        Ok(self.with_side(d, rest))
    }

    /// Replaces the element next to the cursor on side `d`. Levels are kept.
    pub fn replace(&self, d: Dir, ne: E) -> Result<Self, RazError> {
        let (levels, _, rest) = expose(self.side(d), d, &mut Steps::default())?;
        let side = levels
            .into_iter()
            .rev()
            .fold(rest.push(Entry::Cons(ne)), |tl, level| {
                tl.push(Entry::Level(level))
            });
        Ok(self.with_side(d, side))
    }

    /// Shifts the cursor one element towards `d`.
    ///
    /// The old focus moves to the other side together with the level that
    /// separated it from the new focus, so unfocusing before or after a move
    /// gives the same tree.
    pub fn move_cursor(&self, d: Dir) -> Result<Self, RazError> {
        self.move_counted(d, &mut Steps::default())
    }

    pub fn move_counted(&self, d: Dir, steps: &mut Steps) -> Result<Self, RazError> {
        let (levels, next, rest) = expose(self.side(d), d, steps)?;
        let other = levels.into_iter().fold(
            self.side(d.opposite())
                .clone()
                .push(Entry::Cons(self.focus.clone())),
            |tl, level| tl.push(Entry::Level(level)),
        );
        let (left, right) = match d {
            Dir::L => (rest, other),
            Dir::R => (other, rest),
        };
        Ok(Zip::from_parts(left, next, right))
    }

    /// The whole sequence, in order.
    pub fn to_elements(&self) -> Vec<E> {
        let mut out = self.left.elements_outward(Dir::L);
        out.reverse();
        out.push(self.focus.clone());
        out.extend(self.right.elements_outward(Dir::R));
        out
    }
}
