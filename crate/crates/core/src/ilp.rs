// SPDX-License-Identifier: Apache-2.0

//! Integer linear programming model whose feasible points are the games of
//! a class together with their swing, minimal winning, shift-minimal
//! winning and Johnston share variables. The objective is the inversion
//! `P^α_{i+1}(v) − P^α_i(v)` of one adjacent pair.
//!
//! Variables, with coalitions written as bitmasks (player `p` is bit
//! `p − 1`):
//!
//! | name        | meaning                                  | domain     |
//! |-------------|------------------------------------------|------------|
//! | `x_S`       | `S` wins                                 | binary     |
//! | `y_i_S`     | `i` is a swing in `S`                    | binary     |
//! | `z_S`       | `S` is minimal winning                   | binary     |
//! | `u_S`       | `S` is shift-minimal winning             | binary     |
//! | `t_i`       | `i` strictly more desirable than `i + 1` | binary     |
//! | `b_i_S`     | Johnston share of `i` in `S`             | `[0, 1]`   |
//! | `w_i`, `q`  | weights and quota                        | `≥ 0`      |

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{SimpleGame, WeightedRepresentation};
use crate::indices::IndexKind;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::monotonicity::{ConvexWeights, IndexCollection};
use crate::scalar::{common_denominator, Rational};

pub const MAX_MODEL_PLAYERS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u32),
    Y(usize, u32),
    Z(u32),
    U(u32),
    T(usize),
    B(usize, u32),
    W(usize),
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(s) => write!(f, "x_{s}"),
            Var::Y(i, s) => write!(f, "y_{i}_{s}"),
            Var::Z(s) => write!(f, "z_{s}"),
            Var::U(s) => write!(f, "u_{s}"),
            Var::T(i) => write!(f, "t_{i}"),
            Var::B(i, s) => write!(f, "b_{i}_{s}"),
            Var::W(i) => write!(f, "w_{i}"),
            Var::Q => write!(f, "q"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpConstraint {
    pub name: String,
    pub terms: Vec<(Var, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// Base class of the modelled games.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseClass {
    Complete,
    Weighted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassFlags {
    pub base: BaseClass,
    pub proper: bool,
    pub strong: bool,
}

impl ClassFlags {
    pub const WEIGHTED: ClassFlags = ClassFlags {
        base: BaseClass::Weighted,
        proper: false,
        strong: false,
    };

    pub fn weighted() -> Self {
        Self::WEIGHTED
    }

    pub fn with_filter(base: BaseClass, filter: crate::enumeration::GameFilter) -> Result<Self> {
        if filter.uniform || filter.flat {
            return Err(Error::Unsupported(
                "uniform and flat classes have no model constraints".into(),
            ));
        }
        Ok(ClassFlags {
            base,
            proper: filter.proper,
            strong: filter.strong,
        })
    }
}

impl fmt::Display for ClassFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.base {
            BaseClass::Complete => "complete",
            BaseClass::Weighted => "weighted",
        })?;
        match (self.proper, self.strong) {
            (true, true) => f.write_str("+constant-sum"),
            (true, false) => f.write_str("+proper"),
            (false, true) => f.write_str("+strong"),
            (false, false) => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    pub n: usize,
    pub class: ClassFlags,
    pub collection: IndexCollection,
    pub alpha: ConvexWeights,
    pub pair: usize,
    pub big_m: i64,
    /// Exact objective, maximized.
    pub objective: Vec<(Var, Rational)>,
    pub constraints: Vec<IlpConstraint>,
}

/// Least integer not below `4n((n+1)/4)^{(n+1)/2}`.
pub fn default_big_m(n: usize) -> i64 {
    let a = Rational::new(BigInt::from(n + 1), BigInt::from(4));
    let k = n.div_ceil(2);
    let x = Rational::from_integer(BigInt::from(4 * n)) * num_traits::pow(a.clone(), k);
    let value = if (n + 1).is_multiple_of(2) {
        x.ceil().to_integer()
    } else {
        // ceil(x·√a) is the least m ≥ 0 with m² ≥ x²·a.
        let square = &x * &x * &a;
        let target = square.ceil().to_integer();
        let mut m = target.sqrt();
        while &m * &m < target {
            m += 1;
        }
        m
    };
    value.to_i64().expect("big-M fits for supported player counts")
}

fn mask(s: Coalition) -> u32 {
    s.bits()
}

/// Collects terms, merging repeated variables and dropping zeros.
struct Row(BTreeMap<Var, i64>);

impl Row {
    fn new() -> Self {
        Row(BTreeMap::new())
    }

    fn add(mut self, var: Var, c: i64) -> Self {
        *self.0.entry(var).or_insert(0) += c;
        self
    }

    fn add_mut(&mut self, var: Var, c: i64) {
        *self.0.entry(var).or_insert(0) += c;
    }

    fn into_constraint(self, name: String, sense: Sense, rhs: i64) -> IlpConstraint {
        IlpConstraint {
            name,
            terms: self.0.into_iter().filter(|&(_, c)| c != 0).collect(),
            sense,
            rhs,
        }
    }
}

/// Builds the model for pair `(pair, pair + 1)`; `big_m` defaults to
/// [`default_big_m`].
pub fn build_model(
    n: usize,
    class: ClassFlags,
    collection: &IndexCollection,
    alpha: &ConvexWeights,
    pair: usize,
    big_m: Option<i64>,
) -> Result<IlpModel> {
    if !(2..=MAX_MODEL_PLAYERS).contains(&n) {
        return Err(Error::PlayerCount(n));
    }
    if alpha.len() != collection.len() {
        return Err(Error::DimensionMismatch {
            expected: collection.len(),
            found: alpha.len(),
        });
    }
    if pair == 0 || pair >= n {
        return Err(Error::PairOutOfRange {
            index: pair,
            max: n - 1,
        });
    }
    let big_m = big_m.unwrap_or_else(|| default_big_m(n));
    let all = || (0..1u32 << n).map(Coalition::from_bits);
    let grand = Coalition::grand(n);
    let mut cs: Vec<IlpConstraint> = Vec::new();
    let x = |s: Coalition| Var::X(mask(s));

    cs.push(
        Row::new()
            .add(x(Coalition::EMPTY), 1)
            .into_constraint("xempty".into(), Sense::Eq, 0),
    );
    cs.push(
        Row::new()
            .add(x(grand), 1)
            .into_constraint("xgrand".into(), Sense::Eq, 1),
    );

    for s in all() {
        for i in 1..=n {
            if !s.contains(i) {
                let t = s.with(i);
                cs.push(Row::new().add(x(s), 1).add(x(t), -1).into_constraint(
                    format!("mono_{}_{}", mask(s), mask(t)),
                    Sense::Le,
                    0,
                ));
            }
        }
    }
    for s in all() {
        for j in 2..=n {
            if s.contains(j) && !s.contains(j - 1) {
                let t = s.without(j).with(j - 1);
                cs.push(Row::new().add(x(s), 1).add(x(t), -1).into_constraint(
                    format!("shift_{}_{}", mask(s), mask(t)),
                    Sense::Le,
                    0,
                ));
            }
        }
    }

    if class.base == BaseClass::Weighted {
        for s in all() {
            let mut r1 = Row::new().add(Var::Q, 1).add(x(s), big_m);
            let mut r2 = Row::new().add(Var::Q, -1).add(x(s), -big_m);
            for i in s.players() {
                r1.add_mut(Var::W(i), -1);
                r2.add_mut(Var::W(i), 1);
            }
            cs.push(r1.into_constraint(format!("bigM1_{}", mask(s)), Sense::Le, big_m));
            cs.push(r2.into_constraint(format!("bigM2_{}", mask(s)), Sense::Le, -1));
        }
    }

    let complement_family = match (class.proper, class.strong) {
        (true, true) => Some(("csum", Sense::Eq)),
        (true, false) => Some(("proper", Sense::Le)),
        (false, true) => Some(("strong", Sense::Ge)),
        (false, false) => None,
    };
    if let Some((label, sense)) = complement_family {
        for s in all().filter(|s| !s.contains(n)) {
            let c = s.complement(n);
            cs.push(
                Row::new()
                    .add(x(s), 1)
                    .add(x(c), 1)
                    .into_constraint(format!("{label}_{}", mask(s)), sense, 1),
            );
        }
    }

    for i in 1..=n {
        for s in all() {
            let y = Var::Y(i, mask(s));
            if s.contains(i) {
                cs.push(
                    Row::new()
                        .add(y, 1)
                        .add(x(s), -1)
                        .add(x(s.without(i)), 1)
                        .into_constraint(format!("ydef_{i}_{}", mask(s)), Sense::Eq, 0),
                );
            } else {
                cs.push(
                    Row::new()
                        .add(y, 1)
                        .into_constraint(format!("yzero_{i}_{}", mask(s)), Sense::Eq, 0),
                );
            }
        }
    }

    for s in all() {
        let z = Var::Z(mask(s));
        cs.push(
            Row::new()
                .add(z, 1)
                .add(x(s), -1)
                .into_constraint(format!("zdef1_{}", mask(s)), Sense::Le, 0),
        );
        for i in s.players() {
            cs.push(Row::new().add(z, 1).add(x(s.without(i)), 1).into_constraint(
                format!("zdef2_{}_{i}", mask(s)),
                Sense::Le,
                1,
            ));
        }
        let mut r = Row::new().add(z, 1).add(x(s), -1);
        for i in s.players() {
            r.add_mut(x(s.without(i)), 1);
        }
        cs.push(r.into_constraint(format!("zdef3_{}", mask(s)), Sense::Ge, 0));
    }

    for i in 1..n {
        let rest: Vec<Coalition> = all().filter(|s| !s.contains(i) && !s.contains(i + 1)).collect();
        let mut total = Row::new().add(Var::T(i), -1);
        for &s in &rest {
            let (a, b) = (s.with(i), s.with(i + 1));
            cs.push(
                Row::new()
                    .add(x(a), 1)
                    .add(x(b), -1)
                    .add(Var::T(i), -1)
                    .into_constraint(format!("tsep1_{i}_{}", mask(s)), Sense::Le, 0),
            );
            total.add_mut(x(a), 1);
            total.add_mut(x(b), -1);
        }
        cs.push(total.into_constraint(format!("tsep2_{i}"), Sense::Ge, 0));
        for &s in &rest {
            let (a, b) = (Var::U(mask(s.with(i))), Var::U(mask(s.with(i + 1))));
            cs.push(Row::new().add(a, 1).add(b, -1).add(Var::T(i), 1).into_constraint(
                format!("ueq1_{i}_{}", mask(s)),
                Sense::Ge,
                0,
            ));
            cs.push(Row::new().add(b, 1).add(a, -1).add(Var::T(i), 1).into_constraint(
                format!("ueq2_{i}_{}", mask(s)),
                Sense::Ge,
                0,
            ));
        }
    }

    for s in all() {
        let u = Var::U(mask(s));
        cs.push(
            Row::new()
                .add(u, 1)
                .add(Var::Z(mask(s)), -1)
                .into_constraint(format!("uz_{}", mask(s)), Sense::Le, 0),
        );
        let shifts: Vec<(usize, Coalition)> = (1..n)
            .filter(|&i| s.contains(i) && !s.contains(i + 1))
            .map(|i| (i, s.without(i).with(i + 1)))
            .collect();
        for &(i, shifted) in &shifts {
            cs.push(
                Row::new()
                    .add(u, 1)
                    .add(x(s), -1)
                    .add(x(shifted), 1)
                    .add(Var::T(i), 1)
                    .into_constraint(format!("shift_u_{}_{i}", mask(s)), Sense::Le, 1),
            );
        }
        let mut low = Row::new().add(u, 1).add(x(s), -1);
        for &(_, shifted) in &shifts {
            low.add_mut(x(shifted), 1);
        }
        let name = if s.contains(n) {
            low.add_mut(x(s.without(n)), 1);
            format!("ulow2_{}", mask(s))
        } else {
            format!("ulow1_{}", mask(s))
        };
        cs.push(low.into_constraint(name, Sense::Ge, 0));
    }

    for s in all() {
        for i in 1..=n {
            cs.push(
                Row::new()
                    .add(Var::B(i, mask(s)), 1)
                    .add(Var::Y(i, mask(s)), -1)
                    .into_constraint(format!("john_b1_{i}_{}", mask(s)), Sense::Le, 0),
            );
        }
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                cs.push(
                    Row::new()
                        .add(Var::B(i, mask(s)), 1)
                        .add(Var::B(j, mask(s)), -1)
                        .add(Var::Y(i, mask(s)), -1)
                        .add(Var::Y(j, mask(s)), -1)
                        .into_constraint(format!("john_b2_{i}_{j}_{}", mask(s)), Sense::Ge, -2),
                );
            }
        }
        let mut sum = Row::new();
        for i in 1..=n {
            sum.add_mut(Var::B(i, mask(s)), 1);
        }
        cs.push(sum.into_constraint(format!("john_b3_{}", mask(s)), Sense::Le, 1));
        for i in 1..=n {
            let mut r = Row::new().add(Var::Y(i, mask(s)), -1);
            for j in 1..=n {
                r.add_mut(Var::B(j, mask(s)), 1);
            }
            cs.push(r.into_constraint(format!("john_b4_{i}_{}", mask(s)), Sense::Ge, 0));
        }
    }

    Ok(IlpModel {
        n,
        class,
        collection: collection.clone(),
        alpha: alpha.clone(),
        pair,
        big_m,
        objective: objective(n, collection, alpha, pair),
        constraints: cs,
    })
}

/// Linear form of `Σ_h α_h (P^h_{pair+1} − P^h_pair)`.
fn objective(n: usize, collection: &IndexCollection, alpha: &ConvexWeights, pair: usize) -> Vec<(Var, Rational)> {
    let mut terms: BTreeMap<Var, Rational> = BTreeMap::new();
    for (&kind, a) in collection.kinds().iter().zip(alpha.as_slice()) {
        for (player, sign) in [(pair + 1, 1i64), (pair, -1)] {
            for bits in 0..1u32 << n {
                let s = Coalition::from_bits(bits);
                let size = Rational::from_integer(BigInt::from(s.len().max(1)));
                let (var, weight) = match kind {
                    IndexKind::Banzhaf => (Var::Y(player, bits), Rational::one()),
                    IndexKind::Johnston => (Var::B(player, bits), Rational::one()),
                    _ if !s.contains(player) => continue,
                    IndexKind::PublicGood => (Var::Z(bits), Rational::one()),
                    IndexKind::Shift => (Var::U(bits), Rational::one()),
                    IndexKind::DeeganPackel => (Var::Z(bits), Rational::one() / size),
                    IndexKind::ShiftDeeganPackel => (Var::U(bits), Rational::one() / size),
                };
                let c = a * weight * Rational::from_integer(BigInt::from(sign));
                *terms.entry(var).or_insert_with(Rational::zero) += c;
            }
        }
    }
    terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl IlpModel {
    /// Every declared variable in canonical order.
    pub fn variables(&self) -> Vec<Var> {
        let n = self.n;
        let masks = || 0..1u32 << n;
        let mut v: Vec<Var> = masks().map(Var::X).collect();
        v.extend((1..=n).flat_map(|i| masks().map(move |s| Var::Y(i, s))));
        v.extend(masks().map(Var::Z));
        v.extend(masks().map(Var::U));
        v.extend((1..n).map(Var::T));
        v.extend((1..=n).flat_map(|i| masks().map(move |s| Var::B(i, s))));
        if self.class.base == BaseClass::Weighted {
            v.extend((1..=n).map(Var::W));
            v.push(Var::Q);
        }
        v
    }

    pub fn constraint_count(&self, prefix: &str) -> usize {
        let tag = format!("{prefix}_");
        self.constraints
            .iter()
            .filter(|c| c.name == prefix || c.name.starts_with(&tag))
            .count()
    }

    /// Positive factor making every objective coefficient an integer.
    pub fn objective_scale(&self) -> BigInt {
        common_denominator(self.objective.iter().map(|(_, c)| c))
    }
}

fn is_binary(v: Var) -> bool {
    matches!(v, Var::X(_) | Var::Y(..) | Var::Z(_) | Var::U(_) | Var::T(_))
}

fn write_terms(out: &mut String, terms: impl IntoIterator<Item = (String, Var)>) {
    for (k, (coeff, var)) in terms.into_iter().enumerate() {
        if k > 0 && k % 8 == 0 {
            out.push_str("\n   ");
        }
        let (sign, magnitude) = match coeff.strip_prefix('-') {
            Some(m) => ("-", m.to_string()),
            None => ("+", coeff),
        };
        if k == 0 {
            if sign == "-" {
                out.push_str(" -");
            }
            let _ = write!(out, " {magnitude} {var}");
        } else {
            let _ = write!(out, " {sign} {magnitude} {var}");
        }
    }
}

/// CPLEX LP text. Output depends only on the model.
pub fn emit_lp_text(model: &IlpModel) -> String {
    let mut out = String::new();
    let alpha: Vec<String> = model.alpha.as_slice().iter().map(|a| a.to_string()).collect();
    let _ = writeln!(
        out,
        "\\ n={} class={} collection={} alpha={} pair={} M={}",
        model.n,
        model.class,
        model.collection,
        alpha.join(","),
        model.pair,
        model.big_m
    );
    let scale = model.objective_scale();
    let _ = writeln!(
        out,
        "\\ objective = (P_{} - P_{}) * {}",
        model.pair + 1,
        model.pair,
        scale
    );
    out.push_str("Maximize\n obj:");
    if model.objective.is_empty() {
        let _ = write!(out, " 0 {}", Var::X(0));
    } else {
        let factor = Rational::from_integer(scale);
        write_terms(
            &mut out,
            model
                .objective
                .iter()
                .map(|(v, c)| ((c * &factor).to_integer().to_string(), *v)),
        );
    }
    out.push_str("\nSubject To\n");
    for c in &model.constraints {
        let _ = write!(out, " {}:", c.name);
        write_terms(&mut out, c.terms.iter().map(|&(v, k)| (k.to_string(), v)));
        let _ = writeln!(out, " {} {}", c.sense.symbol(), c.rhs);
    }
    out.push_str("Bounds\n");
    for v in model.variables() {
        match v {
            Var::B(..) => {
                let _ = writeln!(out, " 0 <= {v} <= 1");
            }
            Var::W(_) | Var::Q => {
                let _ = writeln!(out, " {v} >= 0");
            }
            _ => {}
        }
    }
    out.push_str("Binaries\n");
    let binaries: Vec<String> = model
        .variables()
        .into_iter()
        .filter(|&v| is_binary(v))
        .map(|v| v.to_string())
        .collect();
    for chunk in binaries.chunks(10) {
        let _ = writeln!(out, " {}", chunk.join(" "));
    }
    out.push_str("End\n");
    out
}

/// Outcome of [`evaluate_assignment`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentReport {
    /// Unscaled objective value.
    pub objective: Rational,
    pub constraints_checked: usize,
    /// Names of violated constraints.
    pub violations: Vec<String>,
    /// Variables outside their declared domain.
    pub domain_violations: Vec<String>,
    /// Integer scaling applied to the representation.
    pub weight_scale: BigInt,
}

impl AssignmentReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty() && self.domain_violations.is_empty()
    }
}

/// Integer weights and quota realizing `rep` with a gap of at least one
/// between winning and losing coalitions, and the scale used.
fn integer_representation(rep: &WeightedRepresentation) -> (Vec<BigInt>, BigInt, BigInt) {
    let scale = common_denominator(rep.weights.iter().chain(std::iter::once(&rep.quota)));
    let f = Rational::from_integer(scale.clone());
    let weights = rep.weights.iter().map(|w| (w * &f).to_integer()).collect();
    (weights, (&rep.quota * &f).to_integer(), scale)
}

/// The unique assignment describing `game` with weights from `rep`.
pub fn derive_assignment(
    model: &IlpModel,
    game: &SimpleGame,
    rep: Option<&WeightedRepresentation>,
) -> Result<(HashMap<Var, Rational>, BigInt)> {
    let n = model.n;
    if game.players() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: game.players(),
        });
    }
    game.require_sorted_complete()?;
    let mut values: HashMap<Var, Rational> = HashMap::new();
    let bit = |b: bool| if b { Rational::one() } else { Rational::zero() };
    let minimal: std::collections::HashSet<Coalition> = game.minimal_winning().iter().copied().collect();
    let shift: std::collections::HashSet<Coalition> = game.shift_minimal_winning()?.into_iter().collect();
    for s in game.coalitions() {
        let m = mask(s);
        values.insert(Var::X(m), bit(game.is_winning(s)));
        values.insert(Var::Z(m), bit(minimal.contains(&s)));
        values.insert(Var::U(m), bit(shift.contains(&s)));
        let swings: Vec<usize> = (1..=n).filter(|&i| s.contains(i) && game.is_swing(s, i)).collect();
        for i in 1..=n {
            let swing = swings.contains(&i);
            values.insert(Var::Y(i, m), bit(swing));
            let share = if swing {
                Rational::new(BigInt::one(), BigInt::from(swings.len()))
            } else {
                Rational::zero()
            };
            values.insert(Var::B(i, m), share);
        }
    }
    for i in 1..n {
        values.insert(Var::T(i), bit(!game.equivalent(i, i + 1)));
    }
    let mut scale = BigInt::one();
    if model.class.base == BaseClass::Weighted {
        let rep = rep.ok_or(Error::RepresentationMismatch)?;
        if rep.players() != n || SimpleGame::from_weighted(rep)? != *game {
            return Err(Error::RepresentationMismatch);
        }
        let (weights, quota, s) = integer_representation(rep);
        for (i, w) in weights.into_iter().enumerate() {
            values.insert(Var::W(i + 1), Rational::from_integer(w));
        }
        values.insert(Var::Q, Rational::from_integer(quota));
        scale = s;
    }
    Ok((values, scale))
}

/// Checks the assignment induced by `game` against every constraint and
/// variable domain.
pub fn evaluate_assignment(
    model: &IlpModel,
    game: &SimpleGame,
    rep: Option<&WeightedRepresentation>,
) -> Result<AssignmentReport> {
    let (values, weight_scale) = derive_assignment(model, game, rep)?;
    let value = |v: &Var| values.get(v).cloned().unwrap_or_else(Rational::zero);
    let mut violations = Vec::new();
    for c in &model.constraints {
        let lhs = c.terms.iter().fold(Rational::zero(), |acc, (v, k)| {
            acc + value(v) * Rational::from_integer(BigInt::from(*k))
        });
        let rhs = Rational::from_integer(BigInt::from(c.rhs));
        let ok = match c.sense {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
        };
        if !ok {
            violations.push(c.name.clone());
        }
    }
    let mut domain_violations = Vec::new();
    for v in model.variables() {
        let x = value(&v);
        let ok = if is_binary(v) {
            x.is_zero() || x.is_one()
        } else if matches!(v, Var::B(..)) {
            !x.is_negative() && x <= Rational::one()
        } else {
            !x.is_negative()
        };
        if !ok {
            domain_violations.push(v.to_string());
        }
    }
    let objective = model
        .objective
        .iter()
        .fold(Rational::zero(), |acc, (v, c)| acc + c * value(v));
    Ok(AssignmentReport {
        objective,
        constraints_checked: model.constraints.len(),
        violations,
        domain_violations,
        weight_scale,
    })
}

/// Solves the weight and quota part of the model with every `x_S` fixed by
/// `game`. Infeasible exactly when no representation with the model's gap
/// convention and `Σ w ≤ M − 1` exists.
pub fn fit_weights(model: &IlpModel, game: &SimpleGame) -> Result<LpOutcome> {
    if model.class.base != BaseClass::Weighted {
        return Err(Error::Unsupported("model has no weight variables".into()));
    }
    let n = model.n;
    if game.players() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: game.players(),
        });
    }
    // Columns: w_1..w_n, q.
    let mut lp = LinearProgram::new(n + 1);
    lp.objective = vec![1; n + 1];
    for c in model.constraints.iter().filter(|c| c.name.starts_with("bigM")) {
        let mut coeffs = vec![0i64; n + 1];
        let mut rhs = c.rhs;
        for &(v, k) in &c.terms {
            match v {
                Var::W(i) => coeffs[i - 1] += k,
                Var::Q => coeffs[n] += k,
                Var::X(s) => {
                    if game.is_winning(Coalition::from_bits(s)) {
                        rhs -= k;
                    }
                }
                _ => unreachable!("weight links mention only x, w and q"),
            }
        }
        let relation = match c.sense {
            Sense::Le => Relation::Le,
            Sense::Ge => Relation::Ge,
            Sense::Eq => Relation::Eq,
        };
        lp.push(coeffs, relation, rhs);
    }
    Ok(lp.solve())
}

/// Reads `x_<mask> <0|1>` lines; other lines are ignored.
pub fn parse_solution(n: usize, text: &str) -> Result<SimpleGame> {
    if n == 0 || n > MAX_MODEL_PLAYERS {
        return Err(Error::PlayerCount(n));
    }
    let size = 1usize << n;
    let mut table: Vec<Option<bool>> = vec![None; size];
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        let (Some(name), Some(value)) = (parts.next(), parts.next()) else {
            continue;
        };
        let Some(bits) = name.strip_prefix("x_") else {
            continue;
        };
        let bits: usize = bits
            .parse()
            .map_err(|_| Error::Parse(format!("bad coalition mask in '{name}'")))?;
        if bits >= size {
            return Err(Error::CoalitionOutOfRange {
                coalition: Coalition::from_bits(bits as u32),
                n,
            });
        }
        let value: f64 = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad value for {name}: '{value}'")))?;
        let win = if value.abs() < 1e-6 {
            false
        } else if (value - 1.0).abs() < 1e-6 {
            true
        } else {
            return Err(Error::Parse(format!("{name} must be 0 or 1, found {value}")));
        };
        table[bits] = Some(win);
    }
    let table: Vec<bool> = table
        .into_iter()
        .enumerate()
        .map(|(s, v)| v.ok_or_else(|| Error::Parse(format!("missing value for x_{s}"))))
        .collect::<Result<_>>()?;
    SimpleGame::from_table(n, &table)
}
