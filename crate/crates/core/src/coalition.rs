// SPDX-License-Identifier: Apache-2.0

//! Coalitions as bit masks.
//!
//! The public API numbers players `1..=n`; player `i` lives in bit `i - 1`.

use std::fmt;

/// A set of players, player `i` present iff bit `i - 1` is set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u32) -> Self {
        Coalition(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The grand coalition `{1, …, n}`.
    pub fn grand(n: usize) -> Self {
        debug_assert!(n <= 31);
        Coalition(((1u64 << n) - 1) as u32)
    }

    /// Builds a coalition from 1-based player numbers.
    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        let mut bits = 0u32;
        for p in players {
            assert!((1..=32).contains(&p), "player numbers are 1-based");
            bits |= 1 << (p - 1);
        }
        Coalition(bits)
    }

    pub fn contains(self, player: usize) -> bool {
        (1..=32).contains(&player) && self.0 >> (player - 1) & 1 == 1
    }

    pub(crate) fn contains0(self, bit: usize) -> bool {
        self.0 >> bit & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1 << (player - 1))
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1 << (player - 1)))
    }

    pub(crate) fn toggle0(self, bit: usize) -> Self {
        Coalition(self.0 ^ 1 << bit)
    }

    pub fn complement(self, n: usize) -> Self {
        Coalition(!self.0 & Coalition::grand(n).0)
    }

    /// Players in ascending order, 1-based.
    pub fn players(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(bit + 1)
            }
        })
    }

    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }

    /// True when no player above `n` is present.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(Coalition::grand(n))
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.players().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
