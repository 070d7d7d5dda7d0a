//! Naive reference sequence for differential testing.
//!
//! A plain vector plus a cursor index, with O(n) edits. It speaks the same
//! [`EditOp`] vocabulary as the RAZ runner in [`crate::checker`] and fails with
//! the same error for the same out-of-range operation.

use crate::checker::EditOp;
use crate::error::RazError;
use crate::tlist::Dir;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveSeq<E> {
    elems: Vec<E>,
    cursor: usize,
}

impl<E: Clone> NaiveSeq<E> {
    /// Cursor starts on the first element.
    pub fn new(elems: Vec<E>) -> Result<Self, RazError> {
        if elems.is_empty() {
            return Err(RazError::EmptySequence);
        }
        Ok(NaiveSeq { elems, cursor: 0 })
    }

    pub fn elems(&self) -> &[E] {
        &self.elems
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn neighbour(&self, d: Dir) -> Result<usize, RazError> {
        match d {
            Dir::L if self.cursor > 0 => Ok(self.cursor - 1),
            Dir::R if self.cursor + 1 < self.elems.len() => Ok(self.cursor + 1),
            _ => Err(RazError::NoElements),
        }
    }

    /// Applies `op` in place. View operations return the element seen.
    /// On error the sequence is left unchanged.
    pub fn apply(&mut self, op: &EditOp<E>) -> Result<Option<E>, RazError> {
        match op {
            EditOp::Focus(p) => {
                if *p >= self.elems.len() {
                    return Err(RazError::OutOfBounds {
                        pos: *p,
                        len: self.elems.len(),
                    });
                }
                self.cursor = *p;
            }
            EditOp::Insert(Dir::L, x) => {
                self.elems.insert(self.cursor, x.clone());
                self.cursor += 1;
            }
            EditOp::Insert(Dir::R, x) => self.elems.insert(self.cursor + 1, x.clone()),
            EditOp::Remove(d) => {
                let i = self.neighbour(*d)?;
                self.elems.remove(i);
                if *d == Dir::L {
                    self.cursor -= 1;
                }
            }
            EditOp::Replace(d, x) => {
                let i = self.neighbour(*d)?;
                self.elems[i] = x.clone();
            }
            EditOp::ReplaceCursor(x) => self.elems[self.cursor] = x.clone(),
            EditOp::Move(d) => self.cursor = self.neighbour(*d)?,
            EditOp::View(d) => return Ok(Some(self.elems[self.neighbour(*d)?].clone())),
            EditOp::ViewCursor => return Ok(Some(self.elems[self.cursor].clone())),
            EditOp::Unfocus => {}
        }
        Ok(None)
    }
}

/// Functional form of [`NaiveSeq::apply`].
pub fn naive_apply<E: Clone>(
    s: &NaiveSeq<E>,
    op: &EditOp<E>,
) -> Result<(NaiveSeq<E>, Option<E>), RazError> {
    let mut next = s.clone();
    let seen = next.apply(op)?;
    Ok((next, seen))
}
