// SPDX-License-Identifier: Apache-2.0

//! Exact two-phase simplex for small linear programs with integer data.
//!
//! The tableau is kept fraction-free: every entry is an integer and the
//! true tableau is the stored one divided by the current pivot product
//! `d`. Each update `(a·p − b·c) / d` divides exactly, so entries stay
//! subdeterminants of the input and remain small. Pivoting follows Bland's
//! rule, which rules out cycling on the highly degenerate programs that
//! weightedness tests produce.
//!
//! Arithmetic runs in `i128` with overflow checks and falls back to
//! `BigInt` if a checked operation ever fails.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, Zero};

use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub relation: Relation,
    pub rhs: i64,
}

/// Minimize `objective · x` subject to the constraints and `x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub vars: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { values: Vec<Rational>, objective: Rational },
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram {
            vars,
            constraints: Vec::new(),
            objective: vec![0; vars],
        }
    }

    pub fn push(&mut self, coeffs: Vec<i64>, relation: Relation, rhs: i64) {
        assert_eq!(coeffs.len(), self.vars, "constraint width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        match Tableau::<i128>::build(self).and_then(|t| t.run()) {
            Some(outcome) => outcome,
            None => Tableau::<BigInt>::build(self)
                .and_then(|t| t.run())
                .expect("arbitrary precision never overflows"),
        }
    }
}

trait Exact: Clone + Integer + Signed + CheckedMul + CheckedSub {
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Tableau<I> {
    /// Constraint rows, then the phase-1 row, then the phase-2 row. The
    /// last column is the right-hand side.
    rows: Vec<Vec<I>>,
    basis: Vec<usize>,
    d: I,
    structural: usize,
    /// Columns at and beyond this index are artificial.
    first_artificial: usize,
    width: usize,
}

impl<I: Exact> Tableau<I> {
    fn build(lp: &LinearProgram) -> Option<Self> {
        let m = lp.constraints.len();
        let mut normalized = Vec::with_capacity(m);
        for c in &lp.constraints {
            let (mut coeffs, mut rel, mut rhs) = (c.coeffs.clone(), c.relation, c.rhs);
            let flip = rhs < 0 || (rhs == 0 && rel == Relation::Ge);
            if flip {
                coeffs.iter_mut().for_each(|a| *a = -*a);
                rhs = -rhs;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            normalized.push((coeffs, rel, rhs));
        }
        let slacks = normalized.iter().filter(|c| c.1 != Relation::Eq).count();
        let artificials = normalized.iter().filter(|c| c.1 != Relation::Le).count();
        let first_artificial = lp.vars + slacks;
        let width = first_artificial + artificials;

        let zero = I::zero();
        let mut rows = vec![vec![zero.clone(); width + 1]; m + 2];
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (lp.vars, first_artificial);
        for (r, (coeffs, rel, rhs)) in normalized.iter().enumerate() {
            for (j, &a) in coeffs.iter().enumerate() {
                rows[r][j] = I::from_i64(a);
            }
            rows[r][width] = I::from_i64(*rhs);
            match rel {
                Relation::Le => {
                    rows[r][next_slack] = I::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    rows[r][next_slack] = -I::one();
                    next_slack += 1;
                    rows[r][next_art] = I::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    rows[r][next_art] = I::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
        }
        // Phase-1 reduced costs: minimize the sum of artificials.
        for r in 0..m {
            if basis[r] >= first_artificial {
                for j in 0..=width {
                    if j < first_artificial || j == width {
                        rows[m][j] = rows[m][j].checked_sub(&rows[r][j])?;
                    }
                }
            }
        }
        for (j, &c) in lp.objective.iter().enumerate() {
            rows[m + 1][j] = I::from_i64(c);
        }
        Some(Tableau {
            rows,
            basis,
            d: I::one(),
            structural: lp.vars,
            first_artificial,
            width,
        })
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    /// Sign of the true value of a stored entry.
    fn positive(&self, x: &I) -> bool {
        !x.is_zero() && x.is_negative() == self.d.is_negative()
    }

    fn negative(&self, x: &I) -> bool {
        !x.is_zero() && x.is_negative() != self.d.is_negative()
    }

    fn pivot(&mut self, r: usize, s: usize) -> Option<()> {
        let p = self.rows[r][s].clone();
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[s].clone();
            for (k, entry) in row.iter_mut().enumerate() {
                let a = entry.checked_mul(&p)?;
                let b = if f.is_zero() {
                    I::zero()
                } else {
                    f.checked_mul(&pivot_row[k])?
                };
                let diff = a.checked_sub(&b)?;
                debug_assert!(diff.is_multiple_of(&self.d));
                *entry = diff / self.d.clone();
            }
        }
        self.d = p;
        self.basis[r] = s;
        Some(())
    }

    /// Bland's rule on objective row `obj`; `Ok(true)` at optimality,
    /// `Ok(false)` when unbounded.
    fn optimize(&mut self, obj: usize) -> Option<bool> {
        let m = self.m();
        loop {
            let entering = (0..self.first_artificial).find(|&j| self.negative(&self.rows[obj][j]));
            let Some(s) = entering else {
                return Some(true);
            };
            let mut leave: Option<usize> = None;
            for i in 0..m {
                if !self.positive(&self.rows[i][s]) {
                    continue;
                }
                leave = Some(match leave {
                    None => i,
                    Some(l) => {
                        let lhs = self.rows[i][self.width].checked_mul(&self.rows[l][s])?;
                        let rhs = self.rows[l][self.width].checked_mul(&self.rows[i][s])?;
                        // Denominators share the sign of d, so their product is positive.
                        if lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[l]) {
                            i
                        } else {
                            l
                        }
                    }
                });
            }
            match leave {
                None => return Some(false),
                Some(r) => self.pivot(r, s)?,
            }
        }
    }

    fn run(mut self) -> Option<LpOutcome> {
        let m = self.m();
        let has_artificial = self.first_artificial < self.width;
        if has_artificial {
            // Phase 1 is bounded below by zero.
            self.optimize(m)?;
            if !self.rows[m][self.width].is_zero() {
                return Some(LpOutcome::Infeasible);
            }
            for r in 0..m {
                if self.basis[r] < self.first_artificial {
                    continue;
                }
                if let Some(s) = (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    self.pivot(r, s)?;
                }
            }
        }
        if !self.optimize(m + 1)? {
            return Some(LpOutcome::Unbounded);
        }
        let d = self.d.to_big();
        let mut values = vec![Rational::zero(); self.structural];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.structural {
                values[b] = Rational::new(self.rows[r][self.width].to_big(), d.clone());
            }
        }
        let objective = -Rational::new(self.rows[m + 1][self.width].to_big(), d);
        Some(LpOutcome::Optimal { values, objective })
    }
}
