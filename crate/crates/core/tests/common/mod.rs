// SPDX-License-Identifier: Apache-2.0

//! Definitional oracles that read nothing but the winning table, plus the
//! property checks shared by the property suite and the acceptance run.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lmcost::indices::compute;
use lmcost::monotonicity::{check_preserved_properties, convex_index, lm_check};
use lmcost::scalar::{int, rat};
use lmcost::{ConvexWeights, IndexCollection, IndexKind, Rational, SimpleGame, WeightedRepresentation};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Winning table indexed by coalition mask (player `p` is bit `p - 1`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Table {
    pub n: usize,
    pub win: Vec<bool>,
}

impl Table {
    pub fn of(v: &SimpleGame) -> Self {
        Table {
            n: v.players(),
            win: v.table(),
        }
    }

    pub fn weighted(quota: i64, weights: &[i64]) -> Self {
        let n = weights.len();
        let win = (0..1usize << n)
            .map(|m| (0..n).filter(|&p| m >> p & 1 == 1).map(|p| weights[p]).sum::<i64>() >= quota)
            .collect();
        Table { n, win }
    }

    pub fn game(&self) -> SimpleGame {
        SimpleGame::from_table(self.n, &self.win).expect("oracle tables are monotone")
    }

    fn full(&self) -> usize {
        (1 << self.n) - 1
    }

    pub fn decisive(&self, s: usize) -> Vec<usize> {
        if !self.win[s] {
            return Vec::new();
        }
        (0..self.n)
            .filter(|&p| s >> p & 1 == 1 && !self.win[s & !(1 << p)])
            .collect()
    }

    pub fn is_minimal(&self, s: usize) -> bool {
        self.win[s] && (0..self.n).all(|p| s >> p & 1 == 0 || !self.win[s & !(1 << p)])
    }

    /// `i ⊒ j` over 0-based players straight from the definition.
    pub fn geq(&self, i: usize, j: usize) -> bool {
        (0..1usize << self.n)
            .filter(|&s| s >> j & 1 == 1 && s >> i & 1 == 0)
            .all(|s| !self.win[s] || self.win[(s & !(1 << j)) | 1 << i])
    }

    pub fn strictly(&self, i: usize, j: usize) -> bool {
        self.geq(i, j) && !self.geq(j, i)
    }

    pub fn is_sorted_complete(&self) -> bool {
        (1..self.n).all(|i| self.geq(i - 1, i))
    }

    pub fn is_shift_minimal(&self, s: usize) -> bool {
        if !self.is_minimal(s) {
            return false;
        }
        for i in (0..self.n).filter(|&p| s >> p & 1 == 1) {
            for j in (0..self.n).filter(|&p| s >> p & 1 == 0) {
                if self.strictly(i, j) && self.win[(s & !(1 << i)) | 1 << j] {
                    return false;
                }
            }
        }
        true
    }

    fn tally(
        &self,
        keep: impl Fn(usize) -> bool,
        share: impl Fn(usize) -> Rational,
        members: impl Fn(usize) -> Vec<usize>,
    ) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for s in 0..=self.full() {
            if keep(s) {
                let x = share(s);
                for p in members(s) {
                    out[p] += x.clone();
                }
            }
        }
        out
    }

    fn members(s: usize, n: usize) -> Vec<usize> {
        (0..n).filter(|&p| s >> p & 1 == 1).collect()
    }

    pub fn index(&self, kind: IndexKind) -> Vec<Rational> {
        let n = self.n;
        match kind {
            IndexKind::Banzhaf => self.tally(|s| self.win[s], |_| Rational::one(), |s| self.decisive(s)),
            IndexKind::PublicGood => self.tally(|s| self.is_minimal(s), |_| Rational::one(), |s| Self::members(s, n)),
            IndexKind::Shift => self.tally(
                |s| self.is_shift_minimal(s),
                |_| Rational::one(),
                |s| Self::members(s, n),
            ),
            IndexKind::Johnston => self.tally(
                |s| !self.decisive(s).is_empty(),
                |s| rat(1, self.decisive(s).len() as i64),
                |s| self.decisive(s),
            ),
            IndexKind::DeeganPackel => self.tally(
                |s| self.is_minimal(s),
                |s| rat(1, s.count_ones() as i64),
                |s| Self::members(s, n),
            ),
            IndexKind::ShiftDeeganPackel => self.tally(
                |s| self.is_shift_minimal(s),
                |s| rat(1, s.count_ones() as i64),
                |s| Self::members(s, n),
            ),
        }
    }

    /// Number of minimal winning coalitions of each size containing `p`.
    pub fn layers(&self, p: usize) -> Vec<u64> {
        let mut row = vec![0u64; self.n + 1];
        for s in 0..=self.full() {
            if s >> p & 1 == 1 && self.is_minimal(s) {
                row[s.count_ones() as usize] += 1;
            }
        }
        row
    }

    pub fn is_uniform(&self) -> bool {
        let sizes: BTreeSet<u32> = (0..=self.full())
            .filter(|&s| self.is_minimal(s))
            .map(|s| s.count_ones())
            .collect();
        sizes.len() <= 1
    }

    /// Prefix sums of the layer rows form a chain in player order.
    pub fn is_flat_sorted(&self) -> bool {
        let prefix: Vec<Vec<u64>> = (0..self.n)
            .map(|p| {
                self.layers(p)
                    .iter()
                    .scan(0u64, |acc, &x| {
                        *acc += x;
                        Some(*acc)
                    })
                    .collect()
            })
            .collect();
        prefix.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a >= b))
    }
}

/// Monotone Boolean functions on `n` variables, built as pairs `f0 ≤ f1`.
pub fn monotone_functions(n: usize) -> Vec<Vec<bool>> {
    if n == 0 {
        return vec![vec![false], vec![true]];
    }
    let smaller = monotone_functions(n - 1);
    let half = 1usize << (n - 1);
    let mut out = Vec::new();
    for f0 in &smaller {
        for f1 in &smaller {
            if f0.iter().zip(f1).all(|(&a, &b)| !a || b) {
                let mut f = Vec::with_capacity(half * 2);
                f.extend_from_slice(f0);
                f.extend_from_slice(f1);
                out.push(f);
            }
        }
    }
    out
}

/// Sorted complete games on `n ≤ 5` players via the Boolean lattice.
pub fn oracle_complete(n: usize) -> BTreeSet<Table> {
    monotone_functions(n)
        .into_iter()
        .filter(|f| !f[0] && f[(1 << n) - 1])
        .map(|win| Table { n, win })
        .filter(Table::is_sorted_complete)
        .collect()
}

/// Every game realised by non-increasing integer weights up to `max_weight`.
pub fn oracle_weighted(n: usize, max_weight: i64) -> BTreeSet<Table> {
    fn rec(n: usize, cap: i64, prefix: &mut Vec<i64>, out: &mut BTreeSet<Table>) {
        if prefix.len() == n {
            let total: i64 = prefix.iter().sum();
            for q in 1..=total {
                out.insert(Table::weighted(q, prefix));
            }
            return;
        }
        for w in 0..=cap {
            prefix.push(w);
            rec(n, w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    rec(n, max_weight, &mut Vec::new(), &mut out);
    out
}

/// Threshold of `α·P1 + (1−α)·Ph` at `(pair, pair+1)` from oracle vectors:
/// the least α in `[0, 1]` making the combined gap non-negative.
pub fn oracle_threshold(t: &Table, pair: usize, p1: IndexKind, ph: IndexKind) -> Rational {
    let a = t.index(p1);
    let b = t.index(ph);
    let d1 = &a[pair - 1] - &a[pair];
    let d2 = &b[pair - 1] - &b[pair];
    assert!(d1 >= Rational::zero(), "anchor violates dominance");
    if d2 >= Rational::zero() {
        Rational::zero()
    } else if d1.is_zero() {
        Rational::one()
    } else {
        -d2.clone() / (d1 - d2)
    }
}

/// Random weighted game with non-increasing weights on 1..=max_n players.
pub fn weighted_game(max_n: usize) -> impl Strategy<Value = (i64, Vec<i64>)> {
    (1..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(0i64..=12, n))
        .prop_flat_map(|mut w| {
            w.sort_unstable_by(|a, b| b.cmp(a));
            if w[0] == 0 {
                w[0] = 1;
            }
            let total: i64 = w.iter().sum();
            (1..=total, Just(w))
        })
}

pub fn build(quota: i64, weights: &[i64]) -> SimpleGame {
    let rep = WeightedRepresentation::new(int(quota), weights.iter().map(|&w| int(w)).collect()).unwrap();
    SimpleGame::from_weighted(&rep).unwrap()
}

pub fn random_alpha(r: usize) -> impl Strategy<Value = ConvexWeights> {
    proptest::collection::vec(0i64..=20, r).prop_map(|mut raw| {
        if raw.iter().all(|&x| x == 0) {
            raw[0] = 1;
        }
        let total: i64 = raw.iter().sum();
        ConvexWeights::new(raw.iter().map(|&x| rat(x, total)).collect()).unwrap()
    })
}

/// `S ≤ PGI ≤ Bz` per player.
pub fn check_inclusion(v: &SimpleGame) -> Result<(), String> {
    let bz = compute(v, IndexKind::Banzhaf).map_err(|e| e.to_string())?;
    let pgi = compute(v, IndexKind::PublicGood).map_err(|e| e.to_string())?;
    let s = compute(v, IndexKind::Shift).map_err(|e| e.to_string())?;
    for p in 1..=v.players() {
        if !(s.get(p) <= pgi.get(p) && pgi.get(p) <= bz.get(p)) {
            return Err(format!(
                "player {p}: S {} PGI {} Bz {}",
                s.get(p),
                pgi.get(p),
                bz.get(p)
            ));
        }
    }
    Ok(())
}

/// Johnston shares add up to the number of winning coalitions that have a
/// decisive player, and all six indices agree with the oracle.
pub fn check_johnston_and_oracle(v: &SimpleGame) -> Result<(), String> {
    let t = Table::of(v);
    let jo = compute(v, IndexKind::Johnston).map_err(|e| e.to_string())?;
    let expected = (0..1usize << t.n).filter(|&s| !t.decisive(s).is_empty()).count() as i64;
    if jo.sum() != int(expected) {
        return Err(format!("Johnston total {} against {expected} coalitions", jo.sum()));
    }
    for kind in IndexKind::ALL {
        let got = compute(v, kind).map_err(|e| e.to_string())?;
        if got.values != t.index(kind) {
            return Err(format!("{} differs from the definition", kind.short_name()));
        }
    }
    Ok(())
}

/// Equivalent players receive equal values under all six indices.
pub fn check_symmetry(v: &SimpleGame) -> Result<(), String> {
    let t = Table::of(v);
    let vectors: Vec<_> = IndexKind::ALL.iter().map(|&k| compute(v, k).unwrap()).collect();
    for i in 0..t.n {
        for j in i + 1..t.n {
            if t.geq(i, j) && t.geq(j, i) {
                for x in &vectors {
                    if x.values[i] != x.values[j] {
                        return Err(format!(
                            "{} separates equivalent players {} and {}",
                            x.kind.short_name(),
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// PGI and DP respect the player order; DP is strict under strict
/// domination; the DP gap decomposes into non-negative layer addends.
pub fn check_dominance(t: &Table) -> Result<(), String> {
    let v = t.game();
    let pgi = compute(&v, IndexKind::PublicGood).map_err(|e| e.to_string())?;
    let dp = compute(&v, IndexKind::DeeganPackel).map_err(|e| e.to_string())?;
    for i in 1..t.n {
        if pgi.values[i - 1] < pgi.values[i] || dp.values[i - 1] < dp.values[i] {
            return Err(format!("order broken at {},{}", i, i + 1));
        }
        if t.strictly(i - 1, i) && dp.values[i - 1] <= dp.values[i] {
            return Err(format!("DP not strict at {},{}", i, i + 1));
        }
        let (a, b) = (t.layers(i - 1), t.layers(i));
        let mut gap = Rational::zero();
        let (mut pa, mut pb) = (0i64, 0i64);
        for k in 1..=t.n {
            pa += a[k] as i64;
            pb += b[k] as i64;
            let weight = if k == t.n {
                rat(1, k as i64)
            } else {
                rat(1, k as i64) - rat(1, k as i64 + 1)
            };
            let addend = int(pa - pb) * weight;
            if addend < Rational::zero() {
                return Err(format!("negative addend at size {k}"));
            }
            gap += addend;
        }
        if gap != &dp.values[i - 1] - &dp.values[i] {
            return Err("layer decomposition does not sum to the DP gap".into());
        }
    }
    Ok(())
}

/// Symmetry, null player, efficiency and null invariance of convex
/// combinations, and local monotonicity of any mixture of Bz and Jo.
pub fn check_convex(v: &SimpleGame, alpha: &ConvexWeights, beta: &ConvexWeights) -> Result<(), String> {
    let games = [v.clone()];
    for text in ["bz,pgi,s", "jo,dp,sdp"] {
        let collection: IndexCollection = text.parse().unwrap();
        let report = check_preserved_properties(&collection, alpha, &games).map_err(|e| e.to_string())?;
        if !report.all_hold() {
            return Err(format!("{text}: {report:?}"));
        }
        let combined = convex_index(v, &collection, alpha).map_err(|e| e.to_string())?;
        for (h, &kind) in collection.kinds().iter().enumerate() {
            if alpha.as_slice()[h].is_one() && combined != compute(v, kind).unwrap().values {
                return Err("unit multiplier does not reproduce its component".into());
            }
        }
    }
    let bz_jo: IndexCollection = "bz,jo".parse().unwrap();
    if !lm_check(v, &bz_jo, beta).map_err(|e| e.to_string())?.is_monotone() {
        return Err("a mixture of Bz and Jo violates local monotonicity".into());
    }
    Ok(())
}
