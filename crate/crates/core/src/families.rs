// SPDX-License-Identifier: Apache-2.0

//! Parametric lower-bound families and the catalog of explicit witness
//! games, each paired with the closed-form or printed index values it is
//! known for.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::enumeration::GameFilter;
use crate::error::{Error, Result};
use crate::format::parse_weighted;
use crate::game::{SimpleGame, WeightedRepresentation};
use crate::indices::{compute, IndexKind};
use crate::monotonicity::lm_threshold;
use crate::scalar::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Star,
    Proper,
    ConstantSum,
    BzShift { k: usize, m: usize },
    JoDp { k: usize },
}

/// One predicted index value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub kind: IndexKind,
    pub player: usize,
    pub value: Rational,
}

fn predict(kind: IndexKind, player: usize, value: Rational) -> Prediction {
    Prediction { kind, player, value }
}

/// A generated family member with its predicted values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: Family,
    pub n: usize,
    pub representation: WeightedRepresentation,
    pub anchor: IndexKind,
    pub other: IndexKind,
    /// Adjacent pair `(pair, pair + 1)` carrying the bound.
    pub pair: usize,
    pub predicted: Vec<Prediction>,
    pub predicted_bound: Rational,
    /// Class the game is claimed to belong to.
    pub class: GameFilter,
}

fn rep(quota: i64, weights: Vec<i64>) -> WeightedRepresentation {
    WeightedRepresentation::new(int(quota), weights.into_iter().map(int).collect())
        .expect("family parameters give a valid game")
}

fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

fn nonneg(x: Rational) -> Rational {
    if x < Rational::zero() {
        Rational::zero()
    } else {
        x
    }
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(what.to_string()))
    }
}

/// `[2;2,1,…,1]` with `n − 1` players of weight one.
pub fn star_family(n: usize) -> Result<FamilyInstance> {
    require(
        (4..=crate::game::MAX_PLAYERS).contains(&n),
        "star family needs 4 <= n <= 20",
    )?;
    let mut w = vec![2];
    w.extend(std::iter::repeat_n(1, n - 1));
    let ni = n as i64;
    let mut predicted = vec![
        predict(IndexKind::Banzhaf, 1, int(ni)),
        predict(IndexKind::Banzhaf, 2, int(ni - 2)),
    ];
    for kind in [IndexKind::PublicGood, IndexKind::Shift] {
        predicted.push(predict(kind, 1, int(1)));
        predicted.push(predict(kind, 2, int(ni - 2)));
    }
    Ok(FamilyInstance {
        family: Family::Star,
        n,
        representation: rep(2, w),
        anchor: IndexKind::Banzhaf,
        other: IndexKind::PublicGood,
        pair: 1,
        predicted,
        predicted_bound: rat(ni - 3, ni - 1),
        class: GameFilter::strong(),
    })
}

/// `[2n−3; n−1, n−2, n−2, 1, …, 1]`.
pub fn proper_family(n: usize) -> Result<FamilyInstance> {
    require(
        (5..=crate::game::MAX_PLAYERS).contains(&n),
        "proper family needs 5 <= n <= 20",
    )?;
    let ni = n as i64;
    let mut w = vec![ni - 1, ni - 2, ni - 2];
    w.extend(std::iter::repeat_n(1, n - 3));
    let half = pow2(n - 2);
    let one = Rational::one();
    let mut predicted = vec![
        predict(IndexKind::Banzhaf, 1, &half + &one),
        predict(IndexKind::Banzhaf, 2, &half - &one),
        predict(IndexKind::Banzhaf, 3, &half - &one),
        predict(IndexKind::PublicGood, 1, int(2)),
        predict(IndexKind::PublicGood, 2, int(ni - 2)),
        predict(IndexKind::PublicGood, 3, int(ni - 2)),
    ];
    for p in 4..=n {
        predicted.push(predict(IndexKind::Banzhaf, p, int(1)));
        predicted.push(predict(IndexKind::PublicGood, p, int(1)));
    }
    Ok(FamilyInstance {
        family: Family::Proper,
        n,
        representation: rep(2 * ni - 3, w),
        anchor: IndexKind::Banzhaf,
        other: IndexKind::PublicGood,
        pair: 1,
        predicted,
        predicted_bound: rat(ni - 4, ni - 2),
        class: GameFilter::proper(),
    })
}

/// `[2n−5; n−2, n−3, n−3, 1, …, 1]`.
pub fn constant_sum_family(n: usize) -> Result<FamilyInstance> {
    require(
        (6..=crate::game::MAX_PLAYERS).contains(&n),
        "constant-sum family needs 6 <= n <= 20",
    )?;
    let ni = n as i64;
    let mut w = vec![ni - 2, ni - 3, ni - 3];
    w.extend(std::iter::repeat_n(1, n - 3));
    let half = pow2(n - 2);
    let predicted = vec![
        predict(IndexKind::Banzhaf, 1, &half + int(2)),
        predict(IndexKind::Banzhaf, 2, &half - int(2)),
        predict(IndexKind::PublicGood, 1, int(3)),
        predict(IndexKind::PublicGood, 2, int(ni - 2)),
    ];
    Ok(FamilyInstance {
        family: Family::ConstantSum,
        n,
        representation: rep(2 * ni - 5, w),
        anchor: IndexKind::Banzhaf,
        other: IndexKind::PublicGood,
        pair: 1,
        predicted,
        predicted_bound: rat(ni - 5, ni - 1),
        class: GameFilter::constant_sum(),
    })
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// Number of shift-minimal winning coalitions containing player 2 in the
/// general construction: `−1 + S_1 + Σ_a C(k,a)·C(2k+1+m, b(a))` with
/// `b(a) = ⌈(t − a(2k+3)) / (k+1)⌉`, terms outside `0..=2k+1+m` dropped.
pub fn bz_shift_s2(k: usize, m: usize) -> BigInt {
    let t = (2 * k * k + 3 * k + 1) as i64;
    let (ki, light) = (k as i64, (2 * k + 1 + m) as i64);
    let s1 = if k == 1 { 1 } else { 2 };
    let mut total = BigInt::from(s1 - 1);
    for a in 0..=ki {
        let b = num_integer::Integer::div_ceil(&(t - a * (2 * ki + 3)), &(ki + 1));
        if (0..=light).contains(&b) {
            total += binom(k, a as usize) * binom(light as usize, b as usize);
        }
    }
    total
}

/// The construction with `n = 3k + 3 + m` players attaining the best known
/// `(Bz, S)` bounds.
pub fn bz_shift_family(k: usize, m: usize) -> Result<FamilyInstance> {
    require(k >= 1 && m <= 2, "construction needs k >= 1 and m in {0,1,2}")?;
    let n = 3 * k + 3 + m;
    require(n <= crate::game::MAX_PLAYERS, "construction exceeds the player limit")?;
    let t = (2 * k * k + 3 * k + 1) as i64;
    let (ki, mi) = (k as i64, m as i64);
    let mut w = vec![t + 1 + mi * (ki + 1), t + mi * (ki + 1)];
    w.extend(std::iter::repeat_n(2 * ki + 3, k));
    w.extend(std::iter::repeat_n(ki + 1, 2 * k + 1 + m));
    let half = pow2(n - 2);
    let s1 = if k == 1 { 1 } else { 2 };
    let s2 = Rational::from_integer(bz_shift_s2(k, m));
    let bound = {
        let d2 = &s2 - int(s1);
        nonneg(&d2 / (int(2) + &d2))
    };
    Ok(FamilyInstance {
        family: Family::BzShift { k, m },
        n,
        representation: rep(2 * t + mi * (ki + 1), w),
        anchor: IndexKind::Banzhaf,
        other: IndexKind::Shift,
        pair: 1,
        predicted: vec![
            predict(IndexKind::Banzhaf, 1, &half + Rational::one()),
            predict(IndexKind::Banzhaf, 2, &half - Rational::one()),
            predict(IndexKind::Shift, 1, int(s1)),
            predict(IndexKind::Shift, 2, s2),
        ],
        predicted_bound: bound,
        class: GameFilter::strong(),
    })
}

/// `c(k) = (k+2)/k + 1/(k+1) · Σ_{i=1}^{k−1} C(k−1,i−1)·C(k+1,i)`.
pub fn jo_dp_c(k: usize) -> Rational {
    let sum: BigInt = (1..k).map(|i| binom(k - 1, i - 1) * binom(k + 1, i)).sum();
    rat(k as i64 + 2, k as i64) + Rational::new(sum, BigInt::from(k + 1))
}

/// `d(k) = 1/(k+1) + 1/(k+1) · Σ_{i=1}^{k−1} C(k,i)²`.
pub fn jo_dp_d(k: usize) -> Rational {
    let sum: BigInt = (1..k).map(|i| binom(k, i) * binom(k, i)).sum();
    Rational::new(sum + 1, BigInt::from(k + 1))
}

/// `Σ C(k−1,i−1)C(k+1,i) − Σ C(k,i)²` over `i = 1..k−1`; equals `−(k−1)`.
pub fn jo_dp_identity_gap(k: usize) -> BigInt {
    (1..k)
        .map(|i| binom(k - 1, i - 1) * binom(k + 1, i) - binom(k, i) * binom(k, i))
        .sum()
}

/// `[k(k+1); k+1 (k times), k (k+1 times)]` on `n = 2k + 1` players.
pub fn jo_dp_family(k: usize) -> Result<FamilyInstance> {
    require(k >= 1, "Johnston construction needs k >= 1")?;
    let n = 2 * k + 1;
    require(n <= crate::game::MAX_PLAYERS, "construction exceeds the player limit")?;
    let ki = k as i64;
    let mut w: Vec<i64> = std::iter::repeat_n(ki + 1, k).collect();
    w.extend(std::iter::repeat_n(ki, k + 1));
    let (c, d) = (jo_dp_c(k), jo_dp_d(k));
    let heavy_dp = &c - rat(ki + 1, ki);
    let mut predicted = Vec::new();
    for p in 1..=n {
        let heavy = p <= k;
        predicted.push(predict(
            IndexKind::Johnston,
            p,
            if heavy { c.clone() } else { d.clone() },
        ));
        predicted.push(predict(
            IndexKind::DeeganPackel,
            p,
            if heavy { heavy_dp.clone() } else { d.clone() },
        ));
    }
    Ok(FamilyInstance {
        family: Family::JoDp { k },
        n,
        representation: rep(ki * (ki + 1), w),
        anchor: IndexKind::Johnston,
        other: IndexKind::DeeganPackel,
        pair: k,
        predicted,
        predicted_bound: nonneg(Rational::one() - rat(3 * ki + 2, (ki + 1) * (ki + 1))),
        class: GameFilter::ALL,
    })
}

/// `[2(n−3); n−2, n−2, 2 (n−3 times), 1]`, whose last pair bounds the
/// `(Jo, SDP)` cost.
pub fn jo_sdp_game(n: usize) -> Result<WeightedRepresentation> {
    require((5..=crate::game::MAX_PLAYERS).contains(&n), "family needs 5 <= n <= 20")?;
    let ni = n as i64;
    let mut w = vec![ni - 2, ni - 2];
    w.extend(std::iter::repeat_n(2, n - 3));
    w.push(1);
    Ok(rep(2 * (ni - 3), w))
}

/// Outcome of checking one predicted or printed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScoreStatus {
    Match,
    /// The value belongs to another index at the same player.
    Relabeled(IndexKind),
    /// The value is wrong; carries the computed value.
    Mismatch(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreCheck {
    pub kind: IndexKind,
    pub player: usize,
    pub expected: Rational,
    pub computed: Rational,
    pub status: ScoreStatus,
}

/// Values printed under one label are checked as a vector: if they all
/// disagree with that index but all agree with another one, the whole
/// vector is reported as relabeled.
fn check_scores(v: &SimpleGame, predictions: &[Prediction]) -> Result<Vec<ScoreCheck>> {
    let mut vectors = Vec::with_capacity(IndexKind::ALL.len());
    for kind in IndexKind::ALL {
        vectors.push(compute(v, kind).ok());
    }
    let value = |kind: IndexKind, player: usize| {
        let at = IndexKind::ALL.iter().position(|&k| k == kind).expect("known kind");
        vectors[at].as_ref().map(|x| x.get(player).clone())
    };
    let mut out = Vec::with_capacity(predictions.len());
    for kind in IndexKind::ALL {
        let group: Vec<&Prediction> = predictions.iter().filter(|p| p.kind == kind).collect();
        if group.is_empty() {
            continue;
        }
        let holds = |k: IndexKind| group.iter().all(|p| value(k, p.player).as_ref() == Some(&p.value));
        let relabel = if holds(kind) {
            None
        } else {
            IndexKind::ALL.into_iter().find(|&k| k != kind && holds(k))
        };
        for p in group {
            let computed = match value(kind, p.player) {
                Some(c) => c,
                None => compute(v, kind)?.get(p.player).clone(),
            };
            let status = match relabel {
                _ if computed == p.value => ScoreStatus::Match,
                Some(k) => ScoreStatus::Relabeled(k),
                None => ScoreStatus::Mismatch(computed.clone()),
            };
            out.push(ScoreCheck {
                kind: p.kind,
                player: p.player,
                expected: p.value.clone(),
                computed,
                status,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub scores: Vec<ScoreCheck>,
    pub threshold: Rational,
    pub class_holds: bool,
}

impl FamilyReport {
    pub fn all_match(&self, instance: &FamilyInstance) -> bool {
        self.class_holds
            && self.threshold == instance.predicted_bound
            && self.scores.iter().all(|s| s.status == ScoreStatus::Match)
    }
}

/// Recomputes every prediction by definition.
pub fn verify_family(instance: &FamilyInstance) -> Result<FamilyReport> {
    let v = SimpleGame::from_weighted(&instance.representation)?;
    Ok(FamilyReport {
        scores: check_scores(&v, &instance.predicted)?,
        threshold: lm_threshold(&v, instance.pair, instance.anchor, instance.other)?,
        class_holds: instance.class.matches(&v),
    })
}

/// How the source states the witness value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Exact,
    LowerBound,
}

/// One explicit witness game with its printed scores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessEntry {
    pub label: &'static str,
    pub game: &'static str,
    pub anchor: IndexKind,
    pub other: IndexKind,
    pub pair: usize,
    /// Scores exactly as printed, under the printed index label.
    pub printed: Vec<Prediction>,
    /// Cost value the witness is claimed to attain.
    pub claimed: Rational,
    pub claim: Claim,
    pub class: GameFilter,
    /// Documented inconsistency in the printed data, if any.
    pub note: Option<&'static str>,
}

impl WitnessEntry {
    pub fn representation(&self) -> WeightedRepresentation {
        parse_weighted(self.game).expect("catalog games parse")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub scores: Vec<ScoreCheck>,
    pub threshold: Rational,
    pub class_holds: bool,
}

impl WitnessReport {
    pub fn threshold_reproduced(&self, entry: &WitnessEntry) -> bool {
        self.threshold == entry.claimed
    }

    pub fn scores_match(&self) -> bool {
        self.scores.iter().all(|s| s.status == ScoreStatus::Match)
    }
}

pub fn verify_witness(entry: &WitnessEntry) -> Result<WitnessReport> {
    let v = SimpleGame::from_weighted(&entry.representation())?;
    Ok(WitnessReport {
        scores: check_scores(&v, &entry.printed)?,
        threshold: lm_threshold(&v, entry.pair, entry.anchor, entry.other)?,
        class_holds: entry.class.matches(&v),
    })
}

fn scores(kind: IndexKind, values: &[(usize, Rational)]) -> Vec<Prediction> {
    values.iter().map(|(p, v)| predict(kind, *p, v.clone())).collect()
}

fn leading(kind: IndexKind, values: &[i64]) -> Vec<Prediction> {
    values
        .iter()
        .enumerate()
        .map(|(k, &v)| predict(kind, k + 1, int(v)))
        .collect()
}

struct Spec {
    label: &'static str,
    game: &'static str,
    pair: usize,
    printed: Vec<Prediction>,
    claimed: Rational,
    claim: Claim,
    note: Option<&'static str>,
}

fn entries(
    anchor: IndexKind,
    other: IndexKind,
    class: GameFilter,
    specs: Vec<Spec>,
) -> impl Iterator<Item = WitnessEntry> {
    specs.into_iter().map(move |s| WitnessEntry {
        label: s.label,
        game: s.game,
        anchor,
        other,
        pair: s.pair,
        printed: s.printed,
        claimed: s.claimed,
        claim: s.claim,
        class,
        note: s.note,
    })
}

fn first_two(label: &'static str, game: &'static str, bz: [i64; 2], s: [i64; 2], claimed: Rational) -> Spec {
    let mut printed = leading(IndexKind::Banzhaf, &bz);
    printed.extend(leading(IndexKind::Shift, &s));
    Spec {
        label,
        game,
        pair: 1,
        printed,
        claimed,
        claim: Claim::Exact,
        note: None,
    }
}

fn last_two(
    label: &'static str,
    game: &'static str,
    n: usize,
    printed_kind: IndexKind,
    jo: [Rational; 2],
    sdp: [Rational; 2],
    claimed: Rational,
) -> Spec {
    let [j1, j2] = jo;
    let [s1, s2] = sdp;
    let mut printed = scores(IndexKind::Johnston, &[(n - 1, j1), (n, j2)]);
    printed.extend(scores(printed_kind, &[(n - 1, s1), (n, s2)]));
    Spec {
        label,
        game,
        pair: n - 1,
        printed,
        claimed,
        claim: Claim::Exact,
        note: None,
    }
}

fn bound(mut s: Spec) -> Spec {
    s.claim = Claim::LowerBound;
    s
}

fn noted(mut s: Spec, note: &'static str) -> Spec {
    s.note = Some(note);
    s
}

fn positioned(kind: IndexKind, players: &[usize], values: &[Rational]) -> Vec<Prediction> {
    players
        .iter()
        .zip(values)
        .map(|(&p, v)| predict(kind, p, v.clone()))
        .collect()
}

/// Every explicit witness game with its printed partial scores.
pub fn witness_catalog() -> Vec<WitnessEntry> {
    use IndexKind::{
        Banzhaf as Bz, DeeganPackel as Dp, Johnston as Jo, PublicGood as Pgi, Shift as S, ShiftDeeganPackel as Sdp,
    };
    let mut out = Vec::new();

    let tip = {
        let mut printed = leading(Bz, &[85, 43, 41, 41, 41, 41, 41, 41, 41]);
        printed.extend(leading(S, &[22, 1, 26, 26, 26, 26, 26, 26, 26]));
        Spec {
            label: "bz-s/w/9c",
            game: "[8;5,3,2,2,2,2,2,2,2]",
            pair: 2,
            printed,
            claimed: rat(25, 27),
            claim: Claim::Exact,
            note: None,
        }
    };
    out.extend(entries(
        Bz,
        S,
        GameFilter::ALL,
        vec![
            first_two("bz-s/w/7", "[14;9,8,5,2,2,2,2]", [33, 31], [1, 8], rat(7, 9)),
            first_two("bz-s/w/8", "[16;11,10,5,2,2,2,2,2]", [65, 63], [1, 15], rat(7, 8)),
            first_two(
                "bz-s/w/9a",
                "[30;16,15,7,7,3,3,3,3,3]",
                [129, 127],
                [2, 27],
                rat(25, 27),
            ),
            first_two(
                "bz-s/w/9b",
                "[18;13,12,5,2,2,2,2,2,2]",
                [129, 127],
                [1, 26],
                rat(25, 27),
            ),
            tip,
            first_two(
                "bz-s/w/10",
                "[33;19,18,7,7,3,3,3,3,3,3]",
                [257, 255],
                [2, 53],
                rat(51, 53),
            ),
            first_two(
                "bz-s/w/11",
                "[36;22,21,7,7,3,3,3,3,3,3,3]",
                [513, 511],
                [2, 99],
                rat(97, 99),
            ),
            bound(first_two(
                "bz-s/w/12",
                "[56;29,28,9,9,9,4,4,4,4,4,4,4]",
                [1025, 1023],
                [2, 177],
                rat(175, 177),
            )),
        ],
    ));

    out.extend(entries(
        Bz,
        S,
        GameFilter::proper(),
        vec![
            first_two("bz-s/wp/7", "[21;11,10,5,5,3,3,3]", [33, 31], [2, 7], rat(5, 7)),
            first_two("bz-s/wp/8", "[25;13,12,5,5,3,3,3,3]", [65, 63], [2, 13], rat(11, 13)),
            first_two(
                "bz-s/wp/9",
                "[31;16,15,7,7,3,3,3,3,3]",
                [129, 127],
                [2, 26],
                rat(12, 13),
            ),
            noted(
                first_two(
                    "bz-s/wp/10",
                    "[39;12,11,9,9,9,5,5,5,5,5]",
                    [194, 192],
                    [1, 45],
                    rat(21, 22),
                ),
                "printed scores (194,192) and (1,45) give 44/46 = 22/23, not the stated 21/22",
            ),
            first_two(
                "bz-s/wp/11",
                "[32;8,7,7,7,7,4,4,4,4,4,4]",
                [324, 322],
                [1, 84],
                rat(83, 85),
            ),
        ],
    ));

    out.extend(entries(
        Bz,
        S,
        GameFilter::constant_sum(),
        vec![
            first_two("bz-s/wc/8", "[17;9,8,5,3,2,2,2,2]", [66, 62], [3, 11], rat(2, 3)),
            first_two(
                "bz-s/wc/9",
                "[21;11,10,5,5,2,2,2,2,2]",
                [130, 126],
                [3, 26],
                rat(23, 27),
            ),
            first_two(
                "bz-s/wc/10",
                "[21;6,5,5,5,5,3,3,3,3,3]",
                [170, 166],
                [5, 48],
                rat(43, 47),
            ),
            first_two(
                "bz-s/wc/11",
                "[22;8,7,7,7,2,2,2,2,2,2,2]",
                [386, 382],
                [4, 79],
                rat(75, 79),
            ),
        ],
    ));

    let full = |label, game, bz: &[i64], pgi: &[i64], claimed| {
        let mut printed = leading(Bz, bz);
        printed.extend(leading(Pgi, pgi));
        Spec {
            label,
            game,
            pair: 1,
            printed,
            claimed,
            claim: Claim::Exact,
            note: None,
        }
    };
    out.extend(entries(
        Bz,
        Pgi,
        GameFilter::ALL,
        vec![
            full(
                "bz-pgi/w/6",
                "[4;4,3,2,2,1,1]",
                &[11, 9, 5, 5, 3, 3],
                &[1, 4, 3, 3, 3, 3],
                rat(3, 5),
            ),
            full(
                "bz-pgi/w/8",
                "[10;10,8,5,4,4,3,3,2]",
                &[28, 26, 16, 12, 12, 10, 10, 6],
                &[1, 6, 11, 9, 9, 8, 8, 6],
                rat(5, 7),
            ),
            full(
                "bz-pgi/w/10",
                "[7;7,6,6,6,5,3,3,3,2,1]",
                &[24, 22, 22, 22, 20, 12, 12, 12, 8, 6],
                &[1, 8, 8, 8, 7, 9, 9, 9, 7, 6],
                rat(7, 9),
            ),
        ],
    ));

    let dp_note = "second vector is printed under the SDP label but holds Deegan-Packel values";
    let jo_dp = |label, game, players: &[usize], jo: &[Rational], dp: &[Rational], pair, claimed| {
        let mut printed = positioned(Jo, players, jo);
        printed.extend(positioned(Sdp, players, dp));
        noted(
            Spec {
                label,
                game,
                pair,
                printed,
                claimed,
                claim: Claim::Exact,
                note: None,
            },
            dp_note,
        )
    };
    out.extend(entries(
        Jo,
        Dp,
        GameFilter::ALL,
        vec![
            jo_dp(
                "jo-dp/w/5",
                "[3;3,2,2,1,1]",
                &[1, 2, 3, 4, 5],
                &[int(6), rat(5, 2), rat(5, 2), int(1), int(1)],
                &[int(1), rat(3, 2), rat(3, 2), int(1), int(1)],
                1,
                rat(1, 8),
            ),
            jo_dp(
                "jo-dp/w/6",
                "[8;4,4,3,1,1,1]",
                &[1, 2, 3, 4, 5, 6],
                &[rat(15, 2), rat(15, 2), int(6), rat(2, 3), rat(2, 3), rat(2, 3)],
                &[rat(3, 2), rat(3, 2), int(2), rat(2, 3), rat(2, 3), rat(2, 3)],
                2,
                rat(1, 4),
            ),
            jo_dp(
                "jo-dp/w/7",
                "[9;5,4,3,2,2,2,2]",
                &[1, 2, 3, 4, 5, 6, 7],
                &[
                    rat(70, 3),
                    rat(28, 3),
                    rat(23, 3),
                    rat(19, 6),
                    rat(19, 6),
                    rat(19, 6),
                    rat(19, 6),
                ],
                &[
                    rat(23, 6),
                    rat(17, 6),
                    rat(11, 3),
                    rat(19, 6),
                    rat(19, 6),
                    rat(19, 6),
                    rat(19, 6),
                ],
                2,
                rat(1, 3),
            ),
            jo_dp(
                "jo-dp/w/8",
                "[12;4,4,4,3,3,3,3,3]",
                &[1, 2, 3, 4, 5, 6, 7, 8],
                &[
                    rat(19, 2),
                    rat(19, 2),
                    rat(19, 2),
                    rat(17, 2),
                    rat(17, 2),
                    rat(17, 2),
                    rat(17, 2),
                    rat(17, 2),
                ],
                &[
                    rat(47, 6),
                    rat(47, 6),
                    rat(47, 6),
                    rat(17, 2),
                    rat(17, 2),
                    rat(17, 2),
                    rat(17, 2),
                    rat(17, 2),
                ],
                3,
                rat(2, 5),
            ),
            noted(
                bound(jo_dp(
                    "jo-dp/w/9",
                    "[20;5,5,5,5,4,4,4,4,4]",
                    &[1, 4, 5, 9],
                    &[rat(19, 2), rat(19, 2), rat(69, 5), rat(69, 5)],
                    &[rat(53, 4), rat(53, 4), rat(69, 5), rat(69, 5)],
                    4,
                    rat(11, 25),
                )),
                "heavy Johnston score is printed as 19/2; the game gives 29/2, which yields the stated 11/25; \
                 second vector is printed under the SDP label but holds Deegan-Packel values",
            ),
            bound(jo_dp(
                "jo-dp/w/10",
                "[20;5,5,5,5,4,4,4,4,4,4]",
                &[1, 4, 5, 10],
                &[rat(103, 4), rat(103, 4), int(25), int(25)],
                &[rat(97, 4), rat(97, 4), int(25), int(25)],
                4,
                rat(1, 2),
            )),
        ],
    ));

    out.extend(entries(
        Jo,
        Sdp,
        GameFilter::ALL,
        vec![
            last_two(
                "jo-sdp/w/5",
                "[4;3,3,2,2,1]",
                5,
                Sdp,
                [int(2), int(1)],
                [rat(1, 2), int(1)],
                rat(1, 3),
            ),
            last_two(
                "jo-sdp/w/6",
                "[8;4,4,3,3,2,1]",
                6,
                Sdp,
                [int(2), rat(4, 3)],
                [rat(1, 3), rat(4, 3)],
                rat(3, 5),
            ),
            noted(
                last_two(
                    "jo-sdp/w/7",
                    "[8;5,5,2,2,2,2,1]",
                    7,
                    S,
                    [rat(19, 6), rat(8, 3)],
                    [rat(11, 12), rat(8, 3)],
                    rat(7, 9),
                ),
                "second vector is printed under the Shift label but holds SDP values",
            ),
            last_two(
                "jo-sdp/w/8",
                "[15;7,7,3,3,3,3,3,2]",
                8,
                Sdp,
                [rat(86, 15), rat(16, 3)],
                [rat(11, 5), rat(16, 3)],
                rat(47, 53),
            ),
            bound(last_two(
                "jo-sdp/w/9",
                "[12;7,7,2,2,2,2,2,2,1]",
                9,
                Sdp,
                [rat(47, 6), rat(15, 2)],
                [rat(8, 3), rat(15, 2)],
                rat(29, 31),
            )),
        ],
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_games_match_their_brackets() {
        assert_eq!(proper_family(6).unwrap().representation.to_string(), "[9;5,4,4,1,1,1]");
        assert_eq!(
            constant_sum_family(6).unwrap().representation.to_string(),
            "[7;4,3,3,1,1,1]"
        );
        assert_eq!(
            bz_shift_family(1, 1).unwrap().representation.to_string(),
            "[14;9,8,5,2,2,2,2]"
        );
        assert_eq!(
            bz_shift_family(1, 2).unwrap().representation.to_string(),
            "[16;11,10,5,2,2,2,2,2]"
        );
        assert_eq!(
            bz_shift_family(2, 0).unwrap().representation.to_string(),
            "[30;16,15,7,7,3,3,3,3,3]"
        );
        assert_eq!(jo_dp_family(1).unwrap().representation.to_string(), "[2;2,1,1]");
        assert_eq!(jo_dp_family(2).unwrap().representation.to_string(), "[6;3,3,2,2,2]");
        assert_eq!(jo_sdp_game(5).unwrap().to_string(), "[4;3,3,2,2,1]");
        assert_eq!(jo_sdp_game(7).unwrap().to_string(), "[8;5,5,2,2,2,2,1]");
        assert_eq!(jo_sdp_game(9).unwrap().to_string(), "[12;7,7,2,2,2,2,2,2,1]");
    }

    #[test]
    fn parameter_ranges() {
        assert!(star_family(3).is_err());
        assert!(proper_family(4).is_err());
        assert!(constant_sum_family(5).is_err());
        assert!(bz_shift_family(0, 0).is_err());
        assert!(bz_shift_family(1, 3).is_err());
        assert!(jo_dp_family(0).is_err());
        assert!(jo_sdp_game(4).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(jo_dp_c(1), int(3));
        assert_eq!(jo_dp_d(1), rat(1, 2));
        assert_eq!(jo_dp_c(4), rat(29, 2));
        assert_eq!(jo_dp_d(4), rat(69, 5));
        for k in 1..=8 {
            assert_eq!(jo_dp_identity_gap(k), BigInt::from(1 - k as i64));
            assert_eq!(jo_dp_c(k) - jo_dp_d(k), rat(3 * k as i64 + 2, (k * (k + 1)) as i64));
        }
        assert_eq!(bz_shift_s2(1, 1), BigInt::from(8));
        assert_eq!(bz_shift_s2(2, 0), BigInt::from(27));
        assert_eq!(bz_shift_family(1, 1).unwrap().predicted_bound, rat(7, 9));
        assert_eq!(star_family(7).unwrap().predicted_bound, rat(2, 3));
        assert_eq!(proper_family(5).unwrap().predicted_bound, rat(1, 3));
        assert_eq!(constant_sum_family(6).unwrap().predicted_bound, rat(1, 5));
    }

    #[test]
    fn small_families_verify() {
        for inst in [
            star_family(4).unwrap(),
            star_family(7).unwrap(),
            proper_family(6).unwrap(),
            constant_sum_family(7).unwrap(),
            bz_shift_family(1, 1).unwrap(),
            jo_dp_family(3).unwrap(),
        ] {
            let report = verify_family(&inst).unwrap();
            assert!(report.all_match(&inst), "{:?}: {report:?}", inst.family);
        }
    }

    #[test]
    fn catalog_flags_known_misprints() {
        let catalog = witness_catalog();
        let item = catalog.iter().find(|e| e.label == "jo-dp/w/5").unwrap();
        let report = verify_witness(item).unwrap();
        assert!(report.threshold_reproduced(item));
        assert!(report
            .scores
            .iter()
            .any(|s| s.status == ScoreStatus::Relabeled(IndexKind::DeeganPackel)));
    }
}
