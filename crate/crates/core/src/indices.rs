// SPDX-License-Identifier: Apache-2.0

//! The six raw power indices and their normalization.
//!
//! Counting indices (Banzhaf, Public Good, Shift) are integer valued. The
//! share indices (Johnston, Deegan-Packel, Shift-Deegan-Packel) are sums of
//! unit fractions; they are accumulated as integer counts per denominator
//! and converted to the target scalar once, so the result is exact for
//! exact scalar types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndexKind {
    Banzhaf,
    PublicGood,
    Shift,
    Johnston,
    DeeganPackel,
    ShiftDeeganPackel,
}

impl IndexKind {
    pub const ALL: [IndexKind; 6] = [
        IndexKind::Banzhaf,
        IndexKind::PublicGood,
        IndexKind::Shift,
        IndexKind::Johnston,
        IndexKind::DeeganPackel,
        IndexKind::ShiftDeeganPackel,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            IndexKind::Banzhaf => "bz",
            IndexKind::PublicGood => "pgi",
            IndexKind::Shift => "s",
            IndexKind::Johnston => "jo",
            IndexKind::DeeganPackel => "dp",
            IndexKind::ShiftDeeganPackel => "sdp",
        }
    }

    /// Banzhaf and Johnston respect desirability on every complete game and
    /// may anchor a convex combination.
    pub fn is_lm_anchor(self) -> bool {
        matches!(self, IndexKind::Banzhaf | IndexKind::Johnston)
    }

    pub fn requires_complete(self) -> bool {
        matches!(self, IndexKind::Shift | IndexKind::ShiftDeeganPackel)
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        IndexKind::ALL
            .into_iter()
            .find(|k| k.short_name() == lower)
            .ok_or_else(|| Error::Parse(format!("unknown index '{s}' (expected bz, pgi, s, jo, dp or sdp)")))
    }
}

/// Per-player scores of one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexVector<T = Rational> {
    pub kind: IndexKind,
    pub values: Vec<T>,
    pub normalized: bool,
}

impl<T: Scalar> IndexVector<T> {
    /// Score of player `i` (1-based).
    pub fn get(&self, player: usize) -> &T {
        &self.values[player - 1]
    }

    pub fn sum(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc + v.clone())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Divides every entry by the sum of the vector.
    pub fn normalize(&self) -> Result<IndexVector<T>> {
        let total = self.sum();
        if total.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(IndexVector {
            kind: self.kind,
            values: self.values.iter().map(|v| v.clone() / total.clone()).collect(),
            normalized: true,
        })
    }
}

/// Unit-fraction tallies: `counts[i][k]` coalitions give player `i` a
/// share of `1/k`.
struct ShareCounts {
    counts: Vec<Vec<u64>>,
}

impl ShareCounts {
    fn new(n: usize) -> Self {
        ShareCounts {
            counts: vec![vec![0; n + 1]; n],
        }
    }

    fn add(&mut self, coalition: Coalition, denominator: usize) {
        for p in coalition.players() {
            self.counts[p - 1][denominator] += 1;
        }
    }

    fn into_values<T: Scalar>(self) -> Vec<T> {
        self.counts
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c > 0)
                    .fold(T::zero(), |acc, (k, c)| {
                        acc + T::from_count(c) / T::from_count(k as u64)
                    })
            })
            .collect()
    }
}

fn counts_to<T: Scalar>(counts: Vec<u64>) -> Vec<T> {
    counts.into_iter().map(T::from_count).collect()
}

/// Decisive members of `s`: players whose departure makes `s` lose.
pub fn decisive_players(v: &SimpleGame, s: Coalition) -> Coalition {
    if !v.is_winning(s) {
        return Coalition::EMPTY;
    }
    Coalition::from_players(s.players().filter(|&p| !v.is_winning(s.without(p))))
}

fn banzhaf_counts(v: &SimpleGame) -> Vec<u64> {
    let mut counts = vec![0u64; v.players()];
    for s in v.winning_coalitions() {
        for p in decisive_players(v, s).players() {
            counts[p - 1] += 1;
        }
    }
    counts
}

fn membership_counts(v: &SimpleGame, family: &[Coalition]) -> Vec<u64> {
    let mut counts = vec![0u64; v.players()];
    for s in family {
        for p in s.players() {
            counts[p - 1] += 1;
        }
    }
    counts
}

/// Computes one raw index in the scalar type `T`.
pub fn raw_index<T: Scalar>(v: &SimpleGame, kind: IndexKind) -> Result<IndexVector<T>> {
    let n = v.players();
    let values = match kind {
        IndexKind::Banzhaf => counts_to(banzhaf_counts(v)),
        IndexKind::PublicGood => counts_to(membership_counts(v, v.minimal_winning())),
        IndexKind::Shift => counts_to(membership_counts(v, &v.shift_minimal_winning()?)),
        IndexKind::Johnston => {
            let mut shares = ShareCounts::new(n);
            for s in v.winning_coalitions() {
                let d = decisive_players(v, s);
                if !d.is_empty() {
                    shares.add(d, d.len());
                }
            }
            shares.into_values()
        }
        IndexKind::DeeganPackel | IndexKind::ShiftDeeganPackel => {
            let family = if kind == IndexKind::DeeganPackel {
                v.minimal_winning().to_vec()
            } else {
                v.shift_minimal_winning()?
            };
            let mut shares = ShareCounts::new(n);
            for s in family {
                shares.add(s, s.len());
            }
            shares.into_values()
        }
    };
    Ok(IndexVector {
        kind,
        values,
        normalized: false,
    })
}

/// Exact raw index.
pub fn compute(v: &SimpleGame, kind: IndexKind) -> Result<IndexVector> {
    raw_index(v, kind)
}

pub fn raw_banzhaf(v: &SimpleGame) -> IndexVector {
    raw_index(v, IndexKind::Banzhaf).expect("Banzhaf is defined on every game")
}

pub fn raw_pgi(v: &SimpleGame) -> IndexVector {
    raw_index(v, IndexKind::PublicGood).expect("PGI is defined on every game")
}

pub fn raw_shift(v: &SimpleGame) -> Result<IndexVector> {
    raw_index(v, IndexKind::Shift)
}

pub fn raw_johnston(v: &SimpleGame) -> IndexVector {
    raw_index(v, IndexKind::Johnston).expect("Johnston is defined on every game")
}

pub fn raw_deegan_packel(v: &SimpleGame) -> IndexVector {
    raw_index(v, IndexKind::DeeganPackel).expect("DP is defined on every game")
}

pub fn raw_sdp(v: &SimpleGame) -> Result<IndexVector> {
    raw_index(v, IndexKind::ShiftDeeganPackel)
}

/// All six raw indices; the shift-based entries are `None` for incomplete
/// games.
pub fn all_indices(v: &SimpleGame) -> Vec<(IndexKind, Option<IndexVector>)> {
    IndexKind::ALL.into_iter().map(|k| (k, compute(v, k).ok())).collect()
}
