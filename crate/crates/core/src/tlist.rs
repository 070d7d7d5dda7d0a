//! Tree lists: one side of a zipper.
//!
//! A [`TList`] is a persistent singly-linked list whose entries are raw
//! elements, levels, or whole unfocused subtrees. Lists are stored outward from
//! the cursor, so the head is always the entry nearest the focus.

use std::fmt;
use std::sync::Arc;

use crate::error::RazError;
use crate::levels::Level;
use crate::steps::Steps;
use crate::tree::{append_counted, Bin, Tree};

/// Which side of the cursor an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub fn opposite(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry<E> {
    Cons(E),
    Level(Level),
    Tree(Tree<E>),
}

impl<E: Clone> Entry<E> {
    /// The entry as a tree. A level becomes an empty `Bin` shell that later
    /// appends fill in.
    pub fn as_tree(&self) -> Tree<E> {
        match self {
            Entry::Cons(e) => Tree::Leaf(e.clone()),
            Entry::Level(level) => Tree::bin_with_count(*level, 0, Tree::Nil, Tree::Nil),
            Entry::Tree(t) => t.clone(),
        }
    }
}

struct Node<E> {
    entry: Entry<E>,
    rest: TList<E>,
}

pub struct TList<E>(Option<Arc<Node<E>>>);

impl<E> TList<E> {
    pub const fn nil() -> Self {
        TList(None)
    }

    pub fn is_nil(&self) -> bool {
        self.0.is_none()
    }

    /// Prepends `entry`. The receiver is shared, not copied.
    pub fn push(self, entry: Entry<E>) -> Self {
        TList(Some(Arc::new(Node { entry, rest: self })))
    }

    pub fn head(&self) -> Option<&Entry<E>> {
        self.0.as_ref().map(|n| &n.entry)
    }

    pub fn split(&self) -> Option<(&Entry<E>, &TList<E>)> {
        self.0.as_ref().map(|n| (&n.entry, &n.rest))
    }

    /// Drops exactly one entry.
    pub fn tail(&self) -> Result<TList<E>, RazError> {
        self.split()
            .map(|(_, rest)| rest.clone())
            .ok_or(RazError::EmptyTList)
    }

    pub fn iter(&self) -> Entries<'_, E> {
        Entries { cur: self }
    }

    /// Number of entries (elements, levels and trees alike).
    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.is_nil()
    }

    /// Number of sequence elements represented, counting inside trees.
    pub fn elm_count(&self) -> usize {
        self.iter()
            .map(|e| match e {
                Entry::Cons(_) => 1,
                Entry::Level(_) => 0,
                Entry::Tree(t) => t.elm_count(),
            })
            .sum()
    }
}

impl<E: Clone> TList<E> {
    /// Builds a list whose head is the first item.
    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = Entry<E>>,
        I::IntoIter: DoubleEndedIterator,
    {
        entries.into_iter().rev().fold(TList::nil(), TList::push)
    }

    /// The head entry as a tree; `Nil` for the empty list.
    pub fn head_as_tree(&self) -> Tree<E> {
        self.head().map_or(Tree::Nil, Entry::as_tree)
    }

    /// Exposes the element nearest the cursor when the head is a tree.
    ///
    /// The head tree is taken apart along its `d`-most spine (rightmost for
    /// `L`, leftmost for `R`); every bypassed branch and its level is pushed
    /// back, so the represented sequence is unchanged. Lists without a tree at
    /// the head are returned as is.
    pub fn trim(&self, d: Dir) -> Result<TList<E>, RazError> {
        self.trim_counted(d, &mut Steps::default())
    }

    pub fn trim_counted(&self, d: Dir, steps: &mut Steps) -> Result<TList<E>, RazError> {
        let Some((Entry::Tree(t), rest)) = self.split() else {
            return Ok(self.clone());
        };
        let mut acc = rest.clone();
        let mut cur = t.clone();
        loop {
            match cur {
                Tree::Nil => return Err(RazError::MalformedTree),
                Tree::Leaf(e) => return Ok(acc.push(Entry::Cons(e))),
                Tree::Bin(b) => {
                    steps.trims += 1;
                    let (level, l, r) = Bin::into_parts(b);
                    let (keep, next) = match d {
                        Dir::L => (l, r),
                        Dir::R => (r, l),
                    };
                    acc = acc.push(Entry::Tree(keep)).push(Entry::Level(level));
                    cur = next;
                }
            }
        }
    }

    /// Folds the whole list back into one tree.
    ///
    /// For `L` each further entry is appended on the left of the accumulated
    /// tree, for `R` on the right, so the result is in sequence order either
    /// way. The empty list grows into `Nil`.
    pub fn grow(&self, d: Dir) -> Result<Tree<E>, RazError> {
        self.grow_counted(d, &mut Steps::default())
    }

    pub fn grow_counted(&self, d: Dir, steps: &mut Steps) -> Result<Tree<E>, RazError> {
        let mut entries = self.iter();
        let Some(first) = entries.next() else {
            return Ok(Tree::Nil);
        };
        let mut acc = first.as_tree();
        for entry in entries {
            steps.grows += 1;
            let next = entry.as_tree();
            acc = match d {
                Dir::L => append_counted(next, acc, steps)?,
                Dir::R => append_counted(acc, next, steps)?,
            };
        }
        Ok(acc)
    }

    /// Elements in storage order (nearest the cursor first).
    pub fn elements_outward(&self, d: Dir) -> Vec<E> {
        let mut out = Vec::new();
        for entry in self.iter() {
            match entry {
                Entry::Cons(e) => out.push(e.clone()),
                Entry::Level(_) => {}
                Entry::Tree(t) => match d {
                    // Left side trees are stored in sequence order but read
                    // from the cursor outward.
                    Dir::L => out.extend(t.to_elements().into_iter().rev()),
                    Dir::R => out.extend(t.iter().cloned()),
                },
            }
        }
        out
    }
}

/// Free-function form of [`TList::tail`].
pub fn tail_tlist<E>(tl: &TList<E>) -> Result<TList<E>, RazError> {
    tl.tail()
}

impl<E> Clone for TList<E> {
    fn clone(&self) -> Self {
        TList(self.0.clone())
    }
}

impl<E> Default for TList<E> {
    fn default() -> Self {
        TList::nil()
    }
}

// Unlinks uniquely owned nodes one by one so long lists do not overflow the
// stack when dropped.
impl<E> Drop for TList<E> {
    fn drop(&mut self) {
        let mut cur = self.0.take();
        while let Some(node) = cur {
            match Arc::try_unwrap(node) {
                Ok(mut node) => cur = node.rest.0.take(),
                Err(_) => break,
            }
        }
    }
}

impl<E: PartialEq> PartialEq for TList<E> {
    fn eq(&self, other: &Self) -> bool {
        let (mut a, mut b) = (self, other);
        loop {
            match (&a.0, &b.0) {
                (None, None) => return true,
                (Some(x), Some(y)) => {
                    if Arc::ptr_eq(x, y) {
                        return true;
                    }
                    if x.entry != y.entry {
                        return false;
                    }
                    a = &x.rest;
                    b = &y.rest;
                }
                _ => return false,
            }
        }
    }
}

impl<E: Eq> Eq for TList<E> {}

impl<E: fmt::Debug> fmt::Debug for TList<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

pub struct Entries<'a, E> {
    cur: &'a TList<E>,
}

impl<'a, E> Iterator for Entries<'a, E> {
    type Item = &'a Entry<E>;

    fn next(&mut self) -> Option<&'a Entry<E>> {
        let node = self.cur.0.as_ref()?;
        self.cur = &node.rest;
        Some(&node.entry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::fixtures::*;

    fn level(v: u32) -> Entry<char> {
        Entry::Level(lv(v))
    }

    fn tree(t: Tree<char>) -> Entry<char> {
        Entry::Tree(t)
    }

    fn list(entries: Vec<Entry<char>>) -> TList<char> {
        TList::from_entries(entries)
    }

    #[test]
    fn trim_left_deconstructs_rightmost_path() {
        let tl = list(vec![
            tree(bin(1, leaf('b'), leaf('c'))),
            level(6),
            tree(bin(4, leaf('z'), leaf('a'))),
        ]);
        let expect = list(vec![
            Entry::Cons('c'),
            level(1),
            tree(leaf('b')),
            level(6),
            tree(bin(4, leaf('z'), leaf('a'))),
        ]);
        assert_eq!(tl.trim(Dir::L).unwrap(), expect);
    }

    #[test]
    fn trim_right_deconstructs_leftmost_path() {
        let tl = list(vec![tree(bin(3, leaf('d'), leaf('e')))]);
        let expect = list(vec![Entry::Cons('d'), level(3), tree(leaf('e'))]);
        let trimmed = tl.trim(Dir::R).unwrap();
        assert_eq!(trimmed, expect);
        assert_eq!(trimmed.elements_outward(Dir::R), vec!['d', 'e']);
    }

    #[test]
    fn trim_leaves_non_tree_heads_alone() {
        let tl = list(vec![Entry::Cons('x'), level(2), tree(leaf('q'))]);
        assert_eq!(tl.trim(Dir::L).unwrap(), tl);
        let tl = list(vec![level(2), tree(leaf('q'))]);
        assert_eq!(tl.trim(Dir::R).unwrap(), tl);
        assert_eq!(TList::<char>::nil().trim(Dir::L).unwrap(), TList::nil());
    }

    #[test]
    fn trim_rejects_nil_on_the_spine() {
        let bad = Tree::bin_with_count(lv(2), 1, leaf('a'), Tree::Nil);
        let tl = list(vec![tree(bad)]);
        assert_eq!(tl.trim(Dir::L), Err(RazError::MalformedTree));
    }

    #[test]
    fn trim_counts_one_step_per_bin() {
        let tl = list(vec![tree(t0())]);
        let mut steps = Steps::default();
        tl.trim_counted(Dir::R, &mut steps).unwrap();
        // leftmost path of t0: Bin6, Bin4
        assert_eq!(steps.trims, 2);
    }

    #[test]
    fn head_as_tree_maps_constructors() {
        assert_eq!(list(vec![Entry::Cons('y')]).head_as_tree(), leaf('y'));
        assert_eq!(
            list(vec![level(6), Entry::Cons('y')]).head_as_tree(),
            Tree::bin_with_count(lv(6), 0, Tree::Nil, Tree::Nil)
        );
        let z = bin(4, leaf('z'), leaf('a'));
        assert_eq!(list(vec![tree(z.clone()), level(1)]).head_as_tree(), z);
        assert_eq!(TList::<char>::nil().head_as_tree(), Tree::Nil);
    }

    #[test]
    fn tail_drops_one_entry() {
        let b = bin(1, leaf('b'), leaf('c'));
        assert_eq!(
            tail_tlist(&list(vec![level(2), tree(b.clone())])).unwrap(),
            list(vec![tree(b)])
        );
        assert_eq!(
            tail_tlist(&list(vec![Entry::Cons('y')])).unwrap(),
            TList::nil()
        );
        assert_eq!(
            tail_tlist(&list(vec![tree(t0()), level(1)])).unwrap(),
            list(vec![level(1)])
        );
        assert_eq!(tail_tlist(&TList::<char>::nil()), Err(RazError::EmptyTList));
    }

    #[test]
    fn grow_left_example() {
        let tl = list(vec![
            level(1),
            tree(leaf('b')),
            level(6),
            tree(bin(4, leaf('z'), leaf('a'))),
        ]);
        let expect = Tree::bin_with_count(
            lv(6),
            3,
            bin(4, leaf('z'), leaf('a')),
            Tree::bin_with_count(lv(1), 1, leaf('b'), Tree::Nil),
        );
        assert_eq!(tl.grow(Dir::L).unwrap(), expect);
    }

    #[test]
    fn grow_right_example() {
        let tl = list(vec![level(5), tree(bin(3, leaf('d'), leaf('e')))]);
        let expect = Tree::bin_with_count(lv(5), 2, Tree::Nil, bin(3, leaf('d'), leaf('e')));
        assert_eq!(tl.grow(Dir::R).unwrap(), expect);
    }

    #[test]
    fn grow_single_tree_is_identity() {
        for d in [Dir::L, Dir::R] {
            assert_eq!(list(vec![tree(t0())]).grow(d).unwrap(), t0());
        }
        assert_eq!(TList::<char>::nil().grow(Dir::L).unwrap(), Tree::Nil);
    }

    #[test]
    fn long_lists_drop_without_overflow() {
        let mut tl = TList::nil();
        for i in 0..1_000_000u32 {
            tl = tl.push(Entry::Cons(i));
        }
        assert_eq!(tl.elm_count(), 1_000_000);
        drop(tl);
    }
}
