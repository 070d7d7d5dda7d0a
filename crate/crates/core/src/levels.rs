//! Level generation for probabilistically balanced trees.
//!
//! Every pair of adjacent sequence elements is separated by a [`Level`]. Levels
//! follow a geometric distribution with `P(k) = 2^-k`, obtained by hashing a
//! uniformly random word and counting its trailing zero bits. A sequence of such
//! levels describes, in expectation, the subtree sizes of a perfectly balanced
//! binary tree.
//!
//! A [`LevelSource`] is either seeded (deterministic pseudo-random draws) or
//! scripted (a fixed queue of levels, used to reproduce exact tree shapes).

use std::collections::VecDeque;
use std::fmt;

use crate::error::RazError;

/// Height of an internal tree node. Always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(u32);

impl Level {
    /// The smallest (and most frequent) level.
    pub const MIN: Level = Level(1);

    /// Returns `None` for zero.
    pub const fn new(value: u32) -> Option<Level> {
        if value == 0 {
            None
        } else {
            Some(Level(value))
        }
    }

    pub const fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Trailing zero bits of `h`, plus one.
///
/// The all-zero word maps to `65`, one above the largest count a non-zero word
/// can produce.
pub fn level_of_hash(h: u64) -> Level {
    // trailing_zeros(0) == 64
    Level(h.trailing_zeros() + 1)
}

// SplitMix64 (Steele, Lea, Flood 2014). The generator state advances by the
// golden-ratio increment and each state is passed through the finalizer below.
const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
const MIX_MUL_1: u64 = 0xbf58_476d_1ce4_e5b9;
const MIX_MUL_2: u64 = 0x94d0_49bb_1331_11eb;

/// 64-bit avalanche finalizer from SplitMix64.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX_MUL_1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX_MUL_2);
    z ^ (z >> 31)
}

/// Supplies the level for each newly inserted element.
///
/// Sources are plain values: cloning one forks an independent stream that
/// replays the same draws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelSource {
    /// Counter-based pseudo-random draws.
    Seeded { state: u64 },
    /// Exactly the queued levels, in order.
    Scripted(VecDeque<Level>),
}

impl LevelSource {
    pub fn seeded(seed: u64) -> Self {
        LevelSource::Seeded { state: seed }
    }

    pub fn scripted<I>(levels: I) -> Self
    where
        I: IntoIterator<Item = Level>,
    {
        LevelSource::Scripted(levels.into_iter().collect())
    }

    /// Scripted source from raw integers. Fails on a zero entry.
    pub fn scripted_from_u32<I>(levels: I) -> Result<Self, RazError>
    where
        I: IntoIterator<Item = u32>,
    {
        levels
            .into_iter()
            .map(|v| Level::new(v).ok_or(RazError::ZeroLevel))
            .collect::<Result<VecDeque<_>, _>>()
            .map(LevelSource::Scripted)
    }

    /// Draws the next level and advances the source.
    pub fn draw(&mut self) -> Result<Level, RazError> {
        match self {
            LevelSource::Seeded { state } => {
                *state = state.wrapping_add(GOLDEN_GAMMA);
                Ok(level_of_hash(mix64(*state)))
            }
            LevelSource::Scripted(queue) => queue.pop_front().ok_or(RazError::LevelSourceExhausted),
        }
    }

    /// Levels left in a scripted source; `None` for seeded sources.
    pub fn remaining(&self) -> Option<usize> {
        match self {
            LevelSource::Seeded { .. } => None,
            LevelSource::Scripted(queue) => Some(queue.len()),
        }
    }
}

/// Functional form of [`LevelSource::draw`]: returns the level and the
/// advanced source, leaving the input untouched.
pub fn draw_level(src: &LevelSource) -> Result<(Level, LevelSource), RazError> {
    let mut next = src.clone();
    let level = next.draw()?;
    Ok((level, next))
}
