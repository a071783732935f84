// SPDX-License-Identifier: Apache-2.0

//! Exhaustive enumeration of complete and weighted games.
//!
//! Complete games with `1 ⊒ 2 ⊒ … ⊒ n` are exactly the up-sets of the
//! shift order on coalitions that contain `N` and exclude `∅`. Each
//! isomorphism class of complete games has one such representative, so
//! counting up-sets counts complete games.
//!
//! The search walks coalitions along a fixed linear extension of the
//! shift order, strongest first. A coalition may join the up-set only if
//! all its upper generators already did; no branch ever dead-ends, so the
//! search tree has at most `2^n` nodes per game.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{Completeness, GameEntry, SimpleGame, WeightedRepresentation};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::scalar::Rational;

/// Largest player count accepted by the enumerators.
pub const MAX_ENUMERATION_PLAYERS: usize = 8;

/// The shift order on the coalitions of `{1..n}`.
#[derive(Clone, Debug)]
pub struct ShiftPoset {
    n: usize,
    /// Linear extension: larger coalitions first, then smaller index sums.
    order: Vec<Coalition>,
    /// `position[mask]` is the index of the coalition in `order`.
    position: Vec<usize>,
    /// Upper generators of each coalition, as positions in `order`.
    up: Vec<Vec<usize>>,
}

fn index_sum(s: Coalition) -> usize {
    s.players().sum()
}

/// `S ∪ {k}` for `k ∉ S`, and `S` with `j` replaced by `j − 1` when
/// `j − 1 ∉ S`.
pub fn upper_generators(s: Coalition, n: usize) -> Vec<Coalition> {
    let mut out = Vec::new();
    for k in 1..=n {
        if !s.contains(k) {
            out.push(s.with(k));
        }
    }
    for j in 2..=n {
        if s.contains(j) && !s.contains(j - 1) {
            out.push(s.without(j).with(j - 1));
        }
    }
    out
}

/// `S` without one member, and `S` with `j` replaced by `j + 1` when
/// `j + 1 ∉ S`.
pub fn lower_generators(s: Coalition, n: usize) -> Vec<Coalition> {
    let mut out: Vec<Coalition> = s.players().map(|k| s.without(k)).collect();
    for j in 1..n {
        if s.contains(j) && !s.contains(j + 1) {
            out.push(s.without(j).with(j + 1));
        }
    }
    out
}

impl ShiftPoset {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=crate::game::MAX_PLAYERS).contains(&n) {
            return Err(Error::PlayerCount(n));
        }
        let mut order: Vec<Coalition> = (0..1u32 << n).map(Coalition::from_bits).collect();
        order.sort_by_key(|&s| (std::cmp::Reverse(s.len()), index_sum(s), s.bits()));
        let mut position = vec![0; 1 << n];
        for (p, s) in order.iter().enumerate() {
            position[s.bits() as usize] = p;
        }
        let up = order
            .iter()
            .map(|&s| {
                upper_generators(s, n)
                    .into_iter()
                    .map(|t| position[t.bits() as usize])
                    .collect()
            })
            .collect();
        Ok(ShiftPoset { n, order, position, up })
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn linear_extension(&self) -> &[Coalition] {
        &self.order
    }

    /// `T ⪰ S`: `|T| ≥ |S|` and the `j`-th smallest member of `T` is at most
    /// the `j`-th smallest member of `S`.
    pub fn geq(t: Coalition, s: Coalition) -> bool {
        t.len() >= s.len() && t.players().zip(s.players()).all(|(a, b)| a <= b)
    }

    fn position(&self, s: Coalition) -> usize {
        self.position[s.bits() as usize]
    }
}

/// Class restrictions applied before a game is visited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GameFilter {
    pub proper: bool,
    pub strong: bool,
    pub uniform: bool,
    pub flat: bool,
}

impl GameFilter {
    pub const ALL: GameFilter = GameFilter {
        proper: false,
        strong: false,
        uniform: false,
        flat: false,
    };

    pub fn proper() -> Self {
        GameFilter {
            proper: true,
            ..Self::ALL
        }
    }

    pub fn strong() -> Self {
        GameFilter {
            strong: true,
            ..Self::ALL
        }
    }

    pub fn constant_sum() -> Self {
        GameFilter {
            proper: true,
            strong: true,
            ..Self::ALL
        }
    }

    pub fn uniform() -> Self {
        GameFilter {
            uniform: true,
            ..Self::ALL
        }
    }

    pub fn flat() -> Self {
        GameFilter {
            flat: true,
            ..Self::ALL
        }
    }

    pub fn is_unrestricted(&self) -> bool {
        *self == Self::ALL
    }

    pub fn matches(&self, v: &SimpleGame) -> bool {
        (!self.proper || v.is_proper())
            && (!self.strong || v.is_strong())
            && (!self.uniform || v.is_uniform())
            && (!self.flat || v.layer_profile().is_total())
    }
}

impl FromStr for GameFilter {
    type Err = Error;

    /// Comma-separated subset of `all`, `proper`, `strong`, `constant-sum`,
    /// `uniform`, `flat`.
    fn from_str(s: &str) -> Result<Self> {
        let mut f = GameFilter::ALL;
        for part in s.split(',').map(|p| p.trim().to_ascii_lowercase()) {
            match part.as_str() {
                "all" | "weighted" | "complete" => {}
                "proper" => f.proper = true,
                "strong" => f.strong = true,
                "constant-sum" | "constant_sum" => {
                    f.proper = true;
                    f.strong = true;
                }
                "uniform" => f.uniform = true,
                "flat" => f.flat = true,
                other => return Err(Error::Parse(format!("unknown class filter '{other}'"))),
            }
        }
        Ok(f)
    }
}

impl fmt::Display for GameFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match (self.proper, self.strong) {
            (true, true) => parts.push("constant-sum"),
            (true, false) => parts.push("proper"),
            (false, true) => parts.push("strong"),
            _ => {}
        }
        if self.uniform {
            parts.push("uniform");
        }
        if self.flat {
            parts.push("flat");
        }
        if parts.is_empty() {
            parts.push("all");
        }
        f.write_str(&parts.join(","))
    }
}

fn check_enumeration_size(n: usize) -> Result<()> {
    if (1..=MAX_ENUMERATION_PLAYERS).contains(&n) {
        Ok(())
    } else {
        Err(Error::PlayerCount(n))
    }
}

struct Search<'a> {
    poset: &'a ShiftPoset,
    words: Vec<u64>,
}

impl Search<'_> {
    fn included(&self, pos: usize) -> bool {
        let m = self.poset.order[pos].bits() as usize;
        self.words[m / 64] >> (m % 64) & 1 == 1
    }

    fn set(&mut self, pos: usize, on: bool) {
        let m = self.poset.order[pos].bits() as usize;
        if on {
            self.words[m / 64] |= 1 << (m % 64);
        } else {
            self.words[m / 64] &= !(1 << (m % 64));
        }
    }

    fn can_include(&self, pos: usize) -> bool {
        self.poset.up[pos].iter().all(|&u| self.included(u))
    }

    /// Positions `from..` are undecided. The empty coalition is last and
    /// always excluded.
    fn run(&mut self, from: usize, leaf: &mut dyn FnMut(&[u64])) {
        let last = self.poset.order.len() - 1;
        if from == last {
            leaf(&self.words);
            return;
        }
        if self.can_include(from) {
            self.set(from, true);
            self.run(from + 1, leaf);
            self.set(from, false);
        }
        self.run(from + 1, leaf);
    }

    /// Partial states after deciding positions `..depth`, in search order.
    fn frontier(&mut self, from: usize, depth: usize, out: &mut Vec<Vec<u64>>) {
        if from == depth {
            out.push(self.words.clone());
            return;
        }
        if self.can_include(from) {
            self.set(from, true);
            self.frontier(from + 1, depth, out);
            self.set(from, false);
        }
        self.frontier(from + 1, depth, out);
    }
}

/// Runs `work` on every subtree of the search, in parallel, returning the
/// per-subtree results in search order.
fn search_subtrees<R: Send>(poset: &ShiftPoset, work: impl Fn(&mut Search<'_>, usize) -> R + Sync) -> Vec<R> {
    let n = poset.n;
    let words = vec![0u64; (1usize << n).div_ceil(64)];
    let mut root = Search { poset, words };
    let grand = poset.position(Coalition::grand(n));
    debug_assert_eq!(grand, 0);
    root.set(grand, true);
    let depth = (2 * n).min(poset.order.len() - 1).max(1);
    let mut starts = Vec::new();
    root.frontier(1, depth, &mut starts);
    starts
        .into_par_iter()
        .map(|words| {
            let mut s = Search { poset, words };
            work(&mut s, depth)
        })
        .collect()
}

/// Visits every complete game with players sorted by desirability that
/// passes `filter`; returns the number visited.
pub fn enumerate_complete(n: usize, filter: GameFilter, visitor: impl Fn(&SimpleGame) + Sync) -> Result<u64> {
    check_enumeration_size(n)?;
    let poset = ShiftPoset::new(n)?;
    let counts = search_subtrees(&poset, |s, depth| {
        let mut count = 0u64;
        s.run(depth, &mut |words| {
            let v = SimpleGame::from_words_unchecked(n, words.to_vec());
            if filter.matches(&v) {
                visitor(&v);
                count += 1;
            }
        });
        count
    });
    Ok(counts.into_iter().sum())
}

/// Number of complete games passing `filter`.
pub fn count_complete(n: usize, filter: GameFilter) -> Result<u64> {
    if !filter.is_unrestricted() {
        return enumerate_complete(n, filter, |_| {});
    }
    check_enumeration_size(n)?;
    let poset = ShiftPoset::new(n)?;
    let counts = search_subtrees(&poset, |s, depth| {
        let mut count = 0u64;
        s.run(depth, &mut |_| count += 1);
        count
    });
    Ok(counts.into_iter().sum())
}

/// All complete games passing `filter`, in a fixed deterministic order.
pub fn complete_games(n: usize, filter: GameFilter) -> Result<Vec<SimpleGame>> {
    check_enumeration_size(n)?;
    let poset = ShiftPoset::new(n)?;
    let chunks = search_subtrees(&poset, |s, depth| {
        let mut out = Vec::new();
        s.run(depth, &mut |words| {
            let v = SimpleGame::from_words_unchecked(n, words.to_vec());
            if filter.matches(&v) {
                out.push(v);
            }
        });
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Result of the weightedness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightednessCertificate {
    /// Integer weights and quota with winning weight `≥ q` and losing
    /// weight `≤ q − 1`.
    Weighted(WeightedRepresentation),
    NotWeighted,
}

impl WeightednessCertificate {
    pub fn is_weighted(&self) -> bool {
        matches!(self, WeightednessCertificate::Weighted(_))
    }

    pub fn representation(&self) -> Option<&WeightedRepresentation> {
        match self {
            WeightednessCertificate::Weighted(r) => Some(r),
            WeightednessCertificate::NotWeighted => None,
        }
    }
}

/// Winning coalitions whose lower shift neighbours all lose.
pub fn shift_minimal_in_order(v: &SimpleGame) -> Vec<Coalition> {
    let n = v.players();
    v.winning_coalitions()
        .filter(|&s| lower_generators(s, n).into_iter().all(|t| !v.is_winning(t)))
        .collect()
}

/// Losing coalitions whose upper shift neighbours all win.
pub fn shift_maximal_losing_in_order(v: &SimpleGame) -> Vec<Coalition> {
    let n = v.players();
    v.coalitions()
        .filter(|&s| !v.is_winning(s))
        .filter(|&s| upper_generators(s, n).into_iter().all(|t| v.is_winning(t)))
        .collect()
}

fn weight_row(s: Coalition, n: usize, quota: i64) -> Vec<i64> {
    let mut row = vec![0i64; n + 1];
    for p in s.players() {
        row[p - 1] = 1;
    }
    row[n] = quota;
    row
}

fn weighted_sorted(v: &SimpleGame) -> WeightednessCertificate {
    let n = v.players();
    // Variables w_1..w_n, q; minimizing their sum keeps certificates small.
    let mut lp = LinearProgram::new(n + 1);
    lp.objective = vec![1; n + 1];
    for i in 1..n {
        let mut row = vec![0i64; n + 1];
        row[i - 1] = 1;
        row[i] = -1;
        lp.push(row, Relation::Ge, 0);
    }
    for s in shift_minimal_in_order(v) {
        lp.push(weight_row(s, n, -1), Relation::Ge, 0);
    }
    for t in shift_maximal_losing_in_order(v) {
        let row = weight_row(t, n, -1).into_iter().map(|a| -a).collect();
        lp.push(row, Relation::Ge, 1);
    }
    let values = match lp.solve() {
        LpOutcome::Optimal { values, .. } => values,
        LpOutcome::Infeasible => return WeightednessCertificate::NotWeighted,
        LpOutcome::Unbounded => unreachable!("objective is bounded below by zero"),
    };
    let scale = values.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = values.iter().map(|x| (x * &scale).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        ints.iter_mut().for_each(|x| *x /= &g);
    }
    let quota = Rational::from_integer(ints.pop().expect("quota variable"));
    let weights = ints.into_iter().map(Rational::from_integer).collect();
    let rep = WeightedRepresentation::new(quota, weights).expect("LP solution is a valid representation");
    debug_assert_eq!(SimpleGame::from_weighted(&rep).as_ref(), Ok(v));
    WeightednessCertificate::Weighted(rep)
}

/// Decides weightedness of a complete game exactly.
pub fn is_weighted(v: &SimpleGame) -> Result<WeightednessCertificate> {
    let order = match v.completeness() {
        Completeness::Complete { order } => order,
        Completeness::Incomparable(i, j) => return Err(Error::NotComplete(i, j)),
    };
    if order.iter().enumerate().all(|(k, &p)| p == k + 1) || v.is_sorted() {
        return Ok(weighted_sorted(v));
    }
    let sorted = v.permuted(&order)?;
    Ok(match weighted_sorted(&sorted) {
        WeightednessCertificate::Weighted(rep) => {
            let mut weights = vec![Rational::zero(); v.players()];
            for (k, &p) in order.iter().enumerate() {
                weights[p - 1] = rep.weights[k].clone();
            }
            WeightednessCertificate::Weighted(WeightedRepresentation::new(rep.quota, weights)?)
        }
        WeightednessCertificate::NotWeighted => WeightednessCertificate::NotWeighted,
    })
}

/// Visits every weighted game (sorted, one per isomorphism class) passing
/// `filter`, with an integer representation.
pub fn enumerate_weighted(
    n: usize,
    filter: GameFilter,
    visitor: impl Fn(&SimpleGame, &WeightedRepresentation) + Sync,
) -> Result<u64> {
    let counter = std::sync::atomic::AtomicU64::new(0);
    enumerate_complete(n, filter, |v| {
        if let WeightednessCertificate::Weighted(rep) = weighted_sorted(v) {
            visitor(v, &rep);
            counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
    })?;
    Ok(counter.into_inner())
}

/// All weighted games passing `filter` with their representations, in the
/// same order as [`complete_games`].
pub fn weighted_games(n: usize, filter: GameFilter) -> Result<Vec<(SimpleGame, WeightedRepresentation)>> {
    let games = complete_games(n, filter)?;
    Ok(games
        .into_par_iter()
        .filter_map(|v| match weighted_sorted(&v) {
            WeightednessCertificate::Weighted(rep) => Some((v, rep)),
            WeightednessCertificate::NotWeighted => None,
        })
        .collect())
}

/// Weighted games as entries keyed by their bracket representation.
pub fn weighted_entries(n: usize, filter: GameFilter) -> Result<Vec<GameEntry>> {
    Ok(weighted_games(n, filter)?
        .into_iter()
        .map(|(v, rep)| GameEntry::weighted(v, rep))
        .collect())
}

/// Complete games as entries keyed by their JSON record.
pub fn complete_entries(n: usize, filter: GameFilter) -> Result<Vec<GameEntry>> {
    Ok(complete_games(n, filter)?.into_iter().map(GameEntry::new).collect())
}

/// Row of the uniform-games table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniformCounts {
    pub n: usize,
    pub complete: u64,
    pub weighted: u64,
}

/// Uniform complete and uniform weighted game counts for `n = 1..=max_n`.
pub fn count_uniform_table(max_n: usize) -> Result<Vec<UniformCounts>> {
    (1..=max_n)
        .map(|n| {
            let games = complete_games(n, GameFilter::uniform())?;
            let weighted = games.par_iter().filter(|v| weighted_sorted(v).is_weighted()).count() as u64;
            Ok(UniformCounts {
                n,
                complete: games.len() as u64,
                weighted,
            })
        })
        .collect()
}
