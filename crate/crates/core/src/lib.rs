//! Random access zipper (RAZ): a persistent sequence that is either an
//! unfocused, probabilistically balanced [`Tree`] or a [`Zip`] focused on one
//! element.
//!
//! Focusing and unfocusing take expected O(log n) time; inserting, removing,
//! replacing and moving next to the cursor take O(1) (amortized for removal
//! and movement).
//!
//! ```
//! use raz::{Dir, LevelSource, Tree};
//!
//! let mut levels = LevelSource::seeded(7);
//! let tree = Tree::from_elements(0..10, &mut levels).unwrap();
//! let zip = tree.focus(3).unwrap();
//! let zip = zip.insert(Dir::R, 99, &mut levels).unwrap();
//! let tree = zip.unfocus().unwrap();
//! assert_eq!(tree.to_elements(), vec![0, 1, 2, 3, 99, 4, 5, 6, 7, 8, 9]);
//! ```

pub mod bench;
pub mod checker;
pub mod cli;
mod error;
pub mod levels;
pub mod oracle;
mod steps;
pub mod tlist;
pub mod tree;
pub mod zip;

pub use error::RazError;
pub use levels::{draw_level, level_of_hash, Level, LevelSource};
pub use steps::Steps;
pub use tlist::{tail_tlist, Dir, Entry, TList};
pub use tree::{append_counted, Bin, Tree};
pub use zip::Zip;
