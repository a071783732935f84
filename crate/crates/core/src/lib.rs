// SPDX-License-Identifier: Apache-2.0

//! Exact power indices and the cost of local monotonicity for simple games.
//!
//! Players are numbered `1..=n` throughout the public API; internally
//! player `i` occupies bit `i - 1` of a [`Coalition`] mask.
//!
//! Numeric routines are generic over [`Scalar`]. The exact entry points use
//! [`Rational`]; `f64` instantiations are available for quick exploration.

pub mod coalition;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod format;
pub mod game;
pub mod ilp;
pub mod indices;
pub mod lp;
pub mod monotonicity;
pub mod polyhedron;
pub mod scalar;

pub use coalition::Coalition;
pub use enumeration::{GameFilter, WeightednessCertificate};
pub use error::{Error, Result};
pub use game::{Classification, Completeness, GameEntry, LayerProfile, SimpleGame, WeightedRepresentation};
pub use indices::{IndexKind, IndexVector};
pub use monotonicity::{ConvexWeights, CostResult, IndexCollection, MultiCostResult};
pub use scalar::{Rational, Scalar};

/// Index vector over arbitrary-precision rationals.
pub type ExactIndexVector = IndexVector<Rational>;
/// Index vector over `f64`.
pub type FloatIndexVector = IndexVector<f64>;
/// Weighted representation over arbitrary-precision rationals.
pub type ExactWeights = WeightedRepresentation<Rational>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
