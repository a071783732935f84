// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::coalition::Coalition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("player count {0} outside the supported range 1..={max}", max = crate::game::MAX_PLAYERS)]
    PlayerCount(usize),
    #[error("player {player} outside 1..={n}")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("coalition {coalition} uses players beyond {n}")]
    CoalitionOutOfRange { coalition: Coalition, n: usize },
    #[error("minimal winning family is empty")]
    EmptyFamily,
    #[error("family is not an antichain: {larger} contains {smaller}")]
    NotAntichain { larger: Coalition, smaller: Coalition },
    #[error("the empty coalition must be losing")]
    EmptyCoalitionWins,
    #[error("the grand coalition must be winning")]
    GrandCoalitionLoses,
    #[error("winning set is not monotone: {winning} wins but {superset} loses")]
    NotMonotone { winning: Coalition, superset: Coalition },
    #[error("quota must be positive")]
    NonPositiveQuota,
    #[error("weight of player {0} is negative")]
    NegativeWeight(usize),
    #[error("game is not complete: players {0} and {1} are incomparable")]
    NotComplete(usize, usize),
    #[error("players are not sorted by desirability: {0} does not dominate {1}")]
    NotSorted(usize, usize),
    #[error("player {0} is not a null player")]
    NotNull(usize),
    #[error("player pair index {index} outside 1..={max}")]
    PairOutOfRange { index: usize, max: usize },
    #[error("index vector sums to zero and cannot be normalized")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid convex weights: {0}")]
    InvalidWeights(String),
    #[error("anchor index decreases along desirability at pair {0}")]
    AnchorNotMonotone(usize),
    #[error("index collection needs at least two indices")]
    CollectionTooSmall,
    #[error("game source is empty")]
    EmptyGameSource,
    #[error("weighted representation does not induce the given game")]
    RepresentationMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
