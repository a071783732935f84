// SPDX-License-Identifier: Apache-2.0

//! Convex combinations of raw indices and the cost of local monotonicity.
//!
//! For a collection `(P1, …, Pr)` whose anchor `P1` respects desirability,
//! the combination `Σ α_h P^h` is locally monotonic on a sorted complete
//! game when adjacent players never invert. For a pair `(P1, Ph)` the
//! least anchor weight fixing pair `i` is the threshold
//! `Δ2 / (Δ1 + Δ2)` with `Δ1 = P1_i − P1_{i+1}` and `Δ2 = Ph_{i+1} − Ph_i`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{GameEntry, SimpleGame};
use crate::indices::{raw_index, IndexKind, IndexVector};
use crate::scalar::{Rational, Scalar};

/// A point of the multiplier simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexWeights<T = Rational> {
    alphas: Vec<T>,
}

impl<T: Scalar> ConvexWeights<T> {
    /// Requires non-negative entries summing to exactly one.
    pub fn new(alphas: Vec<T>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidWeights("no multipliers given".into()));
        }
        if let Some(a) = alphas.iter().find(|a| a.is_negative()) {
            return Err(Error::InvalidWeights(format!("negative multiplier {a}")));
        }
        let total = alphas.iter().fold(T::zero(), |acc, a| acc + a.clone());
        if !total.is_one() {
            return Err(Error::InvalidWeights(format!("multipliers sum to {total}, not 1")));
        }
        Ok(ConvexWeights { alphas })
    }

    /// The vertex `e_k` (0-based) of the `r`-simplex.
    pub fn unit(r: usize, k: usize) -> Self {
        let mut alphas = vec![T::zero(); r];
        alphas[k] = T::one();
        ConvexWeights { alphas }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }
}

impl<T: fmt::Display> fmt::Display for ConvexWeights<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.alphas.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Ordered index collection; the first entry is the anchor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexCollection {
    kinds: Vec<IndexKind>,
}

impl IndexCollection {
    pub fn new(kinds: Vec<IndexKind>) -> Result<Self> {
        match kinds.first() {
            None => Err(Error::CollectionTooSmall),
            Some(k) if !k.is_lm_anchor() => {
                Err(Error::Unsupported(format!("anchor index must be bz or jo, found {k}")))
            }
            Some(_) => Ok(IndexCollection { kinds }),
        }
    }

    pub fn pair(anchor: IndexKind, other: IndexKind) -> Result<Self> {
        IndexCollection::new(vec![anchor, other])
    }

    pub fn kinds(&self) -> &[IndexKind] {
        &self.kinds
    }

    pub fn anchor(&self) -> IndexKind {
        self.kinds[0]
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn requires_complete(&self) -> bool {
        self.kinds.iter().any(|k| k.requires_complete())
    }
}

impl FromStr for IndexCollection {
    type Err = Error;

    /// Parses a comma-separated list such as `bz,pgi,s`.
    fn from_str(s: &str) -> Result<Self> {
        let kinds = s.split(',').map(str::parse).collect::<Result<Vec<IndexKind>>>()?;
        IndexCollection::new(kinds)
    }
}

impl fmt::Display for IndexCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.kinds.iter().map(|k| k.short_name()).collect();
        f.write_str(&names.join(","))
    }
}

/// Raw vectors of every index in the collection.
pub fn collection_vectors<T: Scalar>(v: &SimpleGame, collection: &IndexCollection) -> Result<Vec<IndexVector<T>>> {
    collection.kinds().iter().map(|&k| raw_index(v, k)).collect()
}

/// `Σ_h α_h P^h(v)` componentwise.
pub fn convex_index<T: Scalar>(
    v: &SimpleGame,
    collection: &IndexCollection,
    alpha: &ConvexWeights<T>,
) -> Result<Vec<T>> {
    if alpha.len() != collection.len() {
        return Err(Error::DimensionMismatch {
            expected: collection.len(),
            found: alpha.len(),
        });
    }
    let vectors = collection_vectors::<T>(v, collection)?;
    Ok(combine(&vectors, alpha.as_slice()))
}

fn combine<T: Scalar>(vectors: &[IndexVector<T>], alphas: &[T]) -> Vec<T> {
    let n = vectors[0].len();
    (0..n)
        .map(|p| {
            vectors
                .iter()
                .zip(alphas)
                .fold(T::zero(), |acc, (vec, a)| acc + a.clone() * vec.values[p].clone())
        })
        .collect()
}

/// Least `β` with `β·Δ1 − (1 − β)·Δ2 ≥ 0`; `pair` only labels errors.
pub fn threshold_from_deltas<T: Scalar>(delta1: &T, delta2: &T, pair: usize) -> Result<T> {
    if delta1.is_negative() {
        return Err(Error::AnchorNotMonotone(pair));
    }
    if !delta2.is_positive() {
        Ok(T::zero())
    } else if delta1.is_zero() {
        Ok(T::one())
    } else {
        Ok(delta2.clone() / (delta1.clone() + delta2.clone()))
    }
}

fn check_pair(v: &SimpleGame, pair: usize) -> Result<()> {
    let max = v.players().saturating_sub(1);
    if pair == 0 || pair > max {
        Err(Error::PairOutOfRange { index: pair, max })
    } else {
        Ok(())
    }
}

fn pair_threshold<T: Scalar>(p1: &IndexVector<T>, ph: &IndexVector<T>, pair: usize) -> Result<T> {
    let i = pair - 1;
    let d1 = p1.values[i].clone() - p1.values[i + 1].clone();
    let d2 = ph.values[i + 1].clone() - ph.values[i].clone();
    threshold_from_deltas(&d1, &d2, pair)
}

/// Threshold of the adjacent pair `(pair, pair + 1)` on a sorted complete game.
pub fn lm_threshold(v: &SimpleGame, pair: usize, p1: IndexKind, ph: IndexKind) -> Result<Rational> {
    v.require_sorted_complete()?;
    check_pair(v, pair)?;
    let a = raw_index::<Rational>(v, p1)?;
    let b = raw_index::<Rational>(v, ph)?;
    pair_threshold(&a, &b, pair)
}

/// Thresholds of all adjacent pairs, in pair order.
pub fn lm_thresholds(v: &SimpleGame, p1: IndexKind, ph: IndexKind) -> Result<Vec<Rational>> {
    v.require_sorted_complete()?;
    let a = raw_index::<Rational>(v, p1)?;
    let b = raw_index::<Rational>(v, ph)?;
    (1..v.players()).map(|i| pair_threshold(&a, &b, i)).collect()
}

/// Outcome of [`lm_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LmCheck<T = Rational> {
    Monotone,
    /// First adjacent pair `(pair, pair + 1)` with `p_pair < p_{pair+1}`,
    /// and the size of the inversion.
    Violated {
        pair: usize,
        excess: T,
    },
}

impl<T> LmCheck<T> {
    pub fn is_monotone(&self) -> bool {
        matches!(self, LmCheck::Monotone)
    }
}

/// Checks that the combined index is non-increasing along the player order.
pub fn lm_check<T: Scalar>(
    v: &SimpleGame,
    collection: &IndexCollection,
    alpha: &ConvexWeights<T>,
) -> Result<LmCheck<T>> {
    v.require_sorted_complete()?;
    let p = convex_index(v, collection, alpha)?;
    Ok(first_inversion(&p))
}

fn first_inversion<T: Scalar>(p: &[T]) -> LmCheck<T> {
    for i in 1..p.len() {
        if p[i] > p[i - 1] {
            return LmCheck::Violated {
                pair: i,
                excess: p[i].clone() - p[i - 1].clone(),
            };
        }
    }
    LmCheck::Monotone
}

/// Maximum threshold over a game collection, with the certifying game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostResult {
    pub value: Rational,
    pub anchor: IndexKind,
    pub other: IndexKind,
    pub witness: GameEntry,
    /// `None` only for one-player games, which have no adjacent pair.
    pub witness_pair: Option<usize>,
}

impl CostResult {
    /// Recomputes the threshold on the witness.
    pub fn recheck(&self) -> Result<Rational> {
        match self.witness_pair {
            Some(i) => lm_threshold(&self.witness.game, i, self.anchor, self.other),
            None => Ok(Rational::from_integer(0.into())),
        }
    }
}

#[derive(Clone, Debug)]
struct Candidate<'a> {
    value: Rational,
    entry: &'a GameEntry,
    pair: Option<usize>,
}

/// Larger value wins; ties go to the lexicographically smaller serialized
/// game, then the smaller pair.
fn better<'a>(a: Candidate<'a>, b: Candidate<'a>) -> Candidate<'a> {
    let order = a
        .value
        .cmp(&b.value)
        .then_with(|| b.entry.key().cmp(a.entry.key()))
        .then_with(|| b.pair.cmp(&a.pair));
    if order == Ordering::Less {
        b
    } else {
        a
    }
}

/// Best candidate per non-anchor index of the collection.
fn scan<'a>(games: &'a [GameEntry], collection: &IndexCollection) -> Result<Vec<Candidate<'a>>> {
    if games.is_empty() {
        return Err(Error::EmptyGameSource);
    }
    let others = collection.len() - 1;
    let per_game = |entry: &'a GameEntry| -> Result<Vec<Candidate<'a>>> {
        let v = &entry.game;
        v.require_sorted_complete()?;
        let vectors = collection_vectors::<Rational>(v, collection)?;
        let n = v.players();
        (1..=others)
            .map(|h| {
                let mut best = Candidate {
                    value: Rational::from_integer(0.into()),
                    entry,
                    pair: (n > 1).then_some(1),
                };
                for i in 1..n {
                    let t = pair_threshold(&vectors[0], &vectors[h], i)?;
                    if t > best.value {
                        best = Candidate {
                            value: t,
                            entry,
                            pair: Some(i),
                        };
                    }
                }
                Ok(best)
            })
            .collect()
    };
    games
        .par_iter()
        .map(per_game)
        .try_reduce_with(|a, b| Ok(a.into_iter().zip(b).map(|(x, y)| better(x, y)).collect()))
        .expect("non-empty game source")
}

fn to_result(c: Candidate<'_>, anchor: IndexKind, other: IndexKind) -> CostResult {
    CostResult {
        value: c.value,
        anchor,
        other,
        witness: c.entry.clone(),
        witness_pair: c.pair,
    }
}

/// `c_(P1,Ph)` over the given sorted complete games.
pub fn cost_over_games(games: &[GameEntry], p1: IndexKind, ph: IndexKind) -> Result<CostResult> {
    let collection = IndexCollection::pair(p1, ph)?;
    let best = scan(games, &collection)?.pop().expect("one non-anchor index");
    Ok(to_result(best, p1, ph))
}

/// Cost of a collection with `r ≥ 2`, reduced to the pairwise costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiCostResult {
    pub value: Rational,
    /// Cost of `(P1, Ph)` for `h = 2..=r`.
    pub pairwise: Vec<CostResult>,
    /// Position in `pairwise` of the first maximizing pair.
    pub witness: usize,
}

impl MultiCostResult {
    pub fn witness(&self) -> &CostResult {
        &self.pairwise[self.witness]
    }
}

pub fn cost_multi(games: &[GameEntry], collection: &IndexCollection) -> Result<MultiCostResult> {
    if collection.len() < 2 {
        return Err(Error::CollectionTooSmall);
    }
    let anchor = collection.anchor();
    let pairwise: Vec<CostResult> = scan(games, collection)?
        .into_iter()
        .zip(&collection.kinds()[1..])
        .map(|(c, &k)| to_result(c, anchor, k))
        .collect();
    let mut witness = 0;
    for (k, r) in pairwise.iter().enumerate() {
        if r.value > pairwise[witness].value {
            witness = k;
        }
    }
    Ok(MultiCostResult {
        value: pairwise[witness].value.clone(),
        pairwise,
        witness,
    })
}

/// Findings of [`check_preserved_properties`]; every flag is true when the
/// property held on all sampled games.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub games_checked: usize,
    pub symmetry: bool,
    pub null_player: bool,
    /// Normalized components combine to a vector summing to one.
    pub efficiency: bool,
    /// Normalized combination unchanged on the original players when a
    /// null player is appended.
    pub null_invariance: bool,
    /// Games on which every component respects the player order.
    pub dominance_applicable: usize,
    pub dominance: bool,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.symmetry && self.null_player && self.efficiency && self.null_invariance && self.dominance
    }
}

fn normalized_vectors(v: &SimpleGame, collection: &IndexCollection) -> Result<Vec<IndexVector>> {
    collection_vectors::<Rational>(v, collection)?
        .iter()
        .map(IndexVector::normalize)
        .collect()
}

/// Samples the properties a convex combination inherits from its components.
pub fn check_preserved_properties(
    collection: &IndexCollection,
    alpha: &ConvexWeights,
    games: &[SimpleGame],
) -> Result<PropertyReport> {
    if alpha.len() != collection.len() {
        return Err(Error::DimensionMismatch {
            expected: collection.len(),
            found: alpha.len(),
        });
    }
    let mut report = PropertyReport {
        games_checked: 0,
        symmetry: true,
        null_player: true,
        efficiency: true,
        null_invariance: true,
        dominance_applicable: 0,
        dominance: true,
    };
    for v in games {
        if collection.requires_complete() && !v.is_complete() {
            continue;
        }
        report.games_checked += 1;
        let vectors = collection_vectors::<Rational>(v, collection)?;
        let p = combine(&vectors, alpha.as_slice());
        for class in v.equivalence_classes() {
            report.symmetry &= class.iter().all(|&j| p[j - 1] == p[class[0] - 1]);
        }
        report.null_player &= v.null_players().iter().all(|&j| p[j - 1].is_zero());

        let normalized = normalized_vectors(v, collection)?;
        let q = combine(&normalized, alpha.as_slice());
        report.efficiency &= q.iter().cloned().sum::<Rational>().is_one();
        if v.players() < crate::game::MAX_PLAYERS {
            let padded = v.with_null_player()?;
            let q2 = combine(&normalized_vectors(&padded, collection)?, alpha.as_slice());
            report.null_invariance &= q2[..v.players()] == q[..] && q2[v.players()].is_zero();
        }

        if v.is_sorted() && vectors.iter().all(|x| first_inversion(&x.values).is_monotone()) {
            report.dominance_applicable += 1;
            report.dominance &= first_inversion(&p).is_monotone();
        }
    }
    Ok(report)
}
