// SPDX-License-Identifier: Apache-2.0

//! The set of convex multipliers `α ∈ 𝕊^r` whose combined index is locally
//! monotone, for collections of two or three indices.
//!
//! Every game and adjacent pair `(i, i+1)` contributes the halfspace
//! `α·d ≥ 0` with `d_h = P^h_i(v) − P^h_{i+1}(v)`. The polytope is kept as
//! a cyclic vertex list in barycentric coordinates and clipped one
//! halfspace at a time; all arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::GameEntry;
use crate::monotonicity::{collection_vectors, ConvexWeights, IndexCollection};
use crate::scalar::{to_decimal, Rational};

/// Constraint `α·d ≥ 0` produced by one game and adjacent pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub d: Vec<Rational>,
    pub game: GameEntry,
    pub pair: usize,
}

impl Halfspace {
    /// The constraint induced by `entry` at pair `(pair, pair + 1)`.
    pub fn from_game(entry: GameEntry, pair: usize, collection: &IndexCollection) -> Result<Self> {
        entry.game.require_sorted_complete()?;
        let max = entry.game.players().saturating_sub(1);
        if pair == 0 || pair > max {
            return Err(Error::PairOutOfRange { index: pair, max });
        }
        let mut h = Halfspace {
            d: Vec::new(),
            game: entry,
            pair,
        };
        h.d = h.recompute(collection)?;
        Ok(h)
    }

    /// `d` recomputed from the certificate game.
    pub fn recompute(&self, collection: &IndexCollection) -> Result<Vec<Rational>> {
        let vectors = collection_vectors::<Rational>(&self.game.game, collection)?;
        Ok(pair_difference(
            &vectors.iter().map(|x| x.values.clone()).collect::<Vec<_>>(),
            self.pair,
        ))
    }

    pub fn value_at(&self, alpha: &[Rational]) -> Rational {
        dot(&self.d, alpha)
    }

    /// Primitive integer direction with the same orientation.
    pub fn direction(&self) -> Vec<BigInt> {
        primitive(&self.d)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn pair_difference(vectors: &[Vec<Rational>], pair: usize) -> Vec<Rational> {
    vectors.iter().map(|x| &x[pair - 1] - &x[pair]).collect()
}

fn primitive(d: &[Rational]) -> Vec<BigInt> {
    let lcm = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = d
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &gcd).collect()
    }
}

fn prefers(a: &Halfspace, b: &Halfspace) -> bool {
    (a.game.key(), a.pair) < (b.game.key(), b.pair)
}

/// Games paired with every halfspace they induce.
///
/// Halfspaces with `d ≥ 0` hold on the whole simplex and are dropped;
/// identical vectors keep only the certificate with the smallest
/// serialized game, then the smallest pair.
#[derive(Clone, Debug)]
pub struct GameSource {
    collection: IndexCollection,
    games: usize,
    cuts: Vec<Halfspace>,
}

impl GameSource {
    pub fn new(entries: &[GameEntry], collection: &IndexCollection) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyGameSource);
        }
        if !(2..=3).contains(&collection.len()) {
            return Err(Error::Unsupported(format!(
                "polyhedra are computed for 2 or 3 indices, not {}",
                collection.len()
            )));
        }
        let per_game = |entry: &GameEntry| -> Result<Vec<Halfspace>> {
            entry.game.require_sorted_complete()?;
            let vectors: Vec<Vec<Rational>> = collection_vectors::<Rational>(&entry.game, collection)?
                .into_iter()
                .map(|x| x.values)
                .collect();
            Ok((1..entry.game.players())
                .map(|pair| Halfspace {
                    d: pair_difference(&vectors, pair),
                    game: entry.clone(),
                    pair,
                })
                .filter(|h| h.d.iter().any(|x| x.is_negative()))
                .collect())
        };
        let found: Vec<Vec<Halfspace>> = entries.par_iter().map(per_game).collect::<Result<_>>()?;
        let mut unique: BTreeMap<Vec<Rational>, Halfspace> = BTreeMap::new();
        for h in found.into_iter().flatten() {
            match unique.get(&h.d) {
                Some(existing) if !prefers(&h, existing) => {}
                _ => {
                    unique.insert(h.d.clone(), h);
                }
            }
        }
        Ok(GameSource {
            collection: collection.clone(),
            games: entries.len(),
            cuts: unique.into_values().collect(),
        })
    }

    pub fn collection(&self) -> &IndexCollection {
        &self.collection
    }

    pub fn games(&self) -> usize {
        self.games
    }

    /// Distinct non-trivial halfspaces.
    pub fn cuts(&self) -> &[Halfspace] {
        &self.cuts
    }
}

/// Most violated constraint at `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// `P^α_{i+1}(v) − P^α_i(v) > 0`.
    pub value: Rational,
    pub halfspace: Halfspace,
}

/// `None` when `alpha` lies in the polytope, otherwise the maximum
/// violation over all games and pairs.
pub fn separation_oracle(alpha: &ConvexWeights, source: &GameSource) -> Result<Option<Violation>> {
    if alpha.len() != source.collection.len() {
        return Err(Error::DimensionMismatch {
            expected: source.collection.len(),
            found: alpha.len(),
        });
    }
    let a = alpha.as_slice();
    let best = source
        .cuts
        .par_iter()
        .filter_map(|h| {
            let value = -h.value_at(a);
            value.is_positive().then_some((value, h))
        })
        .reduce_with(|x, y| match x.0.cmp(&y.0) {
            std::cmp::Ordering::Greater => x,
            std::cmp::Ordering::Less => y,
            std::cmp::Ordering::Equal => {
                if prefers(y.1, x.1) {
                    y
                } else {
                    x
                }
            }
        });
    Ok(best.map(|(value, h)| Violation {
        value,
        halfspace: h.clone(),
    }))
}

/// Polytope inside `𝕊^r` in both H- and V-representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmPolyhedron {
    pub r: usize,
    /// Cyclic boundary order, starting at `(1, 0, …, 0)`.
    pub vertices: Vec<Vec<Rational>>,
    /// Facet-defining constraints other than the simplex facets.
    pub halfspaces: Vec<Halfspace>,
}

impl LmPolyhedron {
    pub fn simplex(r: usize) -> Result<Self> {
        if !(2..=3).contains(&r) {
            return Err(Error::Unsupported(format!(
                "polyhedra are computed for 2 or 3 indices, not {r}"
            )));
        }
        let vertices = (0..r)
            .map(|k| {
                (0..r)
                    .map(|j| if j == k { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Ok(LmPolyhedron {
            r,
            vertices,
            halfspaces: Vec::new(),
        })
    }

    pub fn contains(&self, alpha: &[Rational]) -> bool {
        alpha.len() == self.r
            && alpha.iter().all(|x| !x.is_negative())
            && alpha.iter().sum::<Rational>() == Rational::one()
            && self.halfspaces.iter().all(|h| !h.value_at(alpha).is_negative())
    }

    pub fn has_vertex(&self, point: &[Rational]) -> bool {
        self.vertices.iter().any(|v| v == point)
    }

    /// Intersects with `α·d ≥ 0` and recomputes the facet list.
    pub fn cut(&mut self, h: Halfspace) {
        let mut all = std::mem::take(&mut self.halfspaces);
        self.vertices = clip(&self.vertices, &h.d);
        all.push(h);
        self.halfspaces = self.facets(all);
    }

    fn cut_all(&mut self, cuts: impl IntoIterator<Item = Halfspace>) {
        let mut all = std::mem::take(&mut self.halfspaces);
        for h in cuts {
            self.vertices = clip(&self.vertices, &h.d);
            all.push(h);
        }
        self.halfspaces = self.facets(all);
    }

    /// Keeps one constraint per supporting line: tight at two vertices
    /// for `r = 3`, at one vertex other than `e_1` for `r = 2`.
    fn facets(&self, all: Vec<Halfspace>) -> Vec<Halfspace> {
        let needed = if self.r == 3 { 2 } else { 1 };
        let mut by_direction: BTreeMap<Vec<BigInt>, Halfspace> = BTreeMap::new();
        for h in all {
            let tight = self.vertices.iter().filter(|v| h.value_at(v).is_zero()).count();
            if tight < needed || self.vertices.len() < needed + 1 {
                continue;
            }
            let key = h.direction();
            match by_direction.get(&key) {
                Some(existing) if !prefers(&h, existing) => {}
                _ => {
                    by_direction.insert(key, h);
                }
            }
        }
        by_direction.into_values().collect()
    }

    /// Vertices rotated to start at `(1, 0, …, 0)`.
    fn canonical(mut self) -> Self {
        if let Some(at) = self.vertices.iter().position(|v| v[0].is_one()) {
            self.vertices.rotate_left(at);
        }
        self
    }

    /// Boundary as CSV in the `(α2, α3)` plane, closed by repeating the
    /// first point.
    pub fn boundary_csv(&self, decimals: usize) -> String {
        let mut out = String::from("alpha2,alpha3,alpha2_decimal,alpha3_decimal\n");
        let third = |v: &Vec<Rational>| v.get(2).cloned().unwrap_or_else(Rational::zero);
        for v in self.vertices.iter().chain(self.vertices.first()) {
            let (a2, a3) = (&v[1], third(v));
            let _ = writeln!(
                out,
                "{a2},{a3},{},{}",
                to_decimal(a2, decimals),
                to_decimal(&a3, decimals)
            );
        }
        out
    }
}

fn lerp(p: &[Rational], q: &[Rational], t: &Rational) -> Vec<Rational> {
    p.iter().zip(q).map(|(a, b)| a + t * (b - a)).collect()
}

/// Sutherland-Hodgman step against `x·d ≥ 0`.
fn clip(polygon: &[Vec<Rational>], d: &[Rational]) -> Vec<Vec<Rational>> {
    let values: Vec<Rational> = polygon.iter().map(|p| dot(p, d)).collect();
    if values.iter().all(|x| !x.is_negative()) {
        return polygon.to_vec();
    }
    let k = polygon.len();
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(k + 1);
    for i in 0..k {
        let j = (i + 1) % k;
        let (fp, fq) = (&values[i], &values[j]);
        if !fp.is_negative() {
            out.push(polygon[i].clone());
        }
        if (fp.is_negative() && fq.is_positive()) || (fp.is_positive() && fq.is_negative()) {
            let t = fp / (fp - fq);
            out.push(lerp(&polygon[i], &polygon[j], &t));
        }
        if k == 2 {
            break;
        }
    }
    if k == 2 && !values[1].is_negative() {
        out.push(polygon[1].clone());
    }
    simplify(out)
}

fn collinear(a: &[Rational], b: &[Rational], c: &[Rational]) -> bool {
    let u: Vec<Rational> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let w: Vec<Rational> = c.iter().zip(b).map(|(x, y)| x - y).collect();
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| &u[i] * &w[j] == &u[j] * &w[i]))
}

/// Drops repeated points and vertices interior to an edge.
fn simplify(mut points: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    points.dedup();
    while points.len() > 1 && points.first() == points.last() {
        points.pop();
    }
    if points.len() >= 3 {
        let mut changed = true;
        while changed && points.len() >= 3 {
            changed = false;
            let k = points.len();
            for i in 0..k {
                let (a, b, c) = (&points[(i + k - 1) % k], &points[i], &points[(i + 1) % k]);
                if collinear(a, b, c) {
                    points.remove(i);
                    changed = true;
                    break;
                }
            }
        }
    }
    points
}

/// Intersection of the simplex with every halfspace of the source.
pub fn plm_direct(source: &GameSource) -> Result<LmPolyhedron> {
    let mut poly = LmPolyhedron::simplex(source.collection.len())?;
    let mut by_direction: BTreeMap<Vec<BigInt>, &Halfspace> = BTreeMap::new();
    for h in &source.cuts {
        let key = h.direction();
        match by_direction.get(&key) {
            Some(existing) if !prefers(h, existing) => {}
            _ => {
                by_direction.insert(key, h);
            }
        }
    }
    poly.cut_all(by_direction.into_values().cloned());
    Ok(poly.canonical())
}

/// One round of the cutting loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazyRound {
    pub vertices: Vec<Vec<Rational>>,
    /// Vertex index and the cut the oracle returned for it.
    pub cuts: Vec<(usize, Halfspace)>,
}

/// Starting from the simplex, checks every vertex with the oracle, adds
/// the returned cuts and repeats until all vertices are verified.
pub fn plm_lazy(source: &GameSource) -> Result<(LmPolyhedron, Vec<LazyRound>)> {
    let mut poly = LmPolyhedron::simplex(source.collection.len())?;
    let mut rounds = Vec::new();
    loop {
        let mut cuts: Vec<(usize, Halfspace)> = Vec::new();
        for (k, vertex) in poly.vertices.iter().enumerate() {
            let alpha = ConvexWeights::new(vertex.clone())?;
            if let Some(violation) = separation_oracle(&alpha, source)? {
                if !cuts.iter().any(|(_, h)| h.d == violation.halfspace.d) {
                    cuts.push((k, violation.halfspace));
                }
            }
        }
        let done = cuts.is_empty();
        rounds.push(LazyRound {
            vertices: poly.vertices.clone(),
            cuts: cuts.clone(),
        });
        if done {
            return Ok((poly.canonical(), rounds));
        }
        poly.cut_all(cuts.into_iter().map(|(_, h)| h));
    }
}

/// Least `β` such that every `α ∈ 𝕊^r` with `α_1 ≥ β` lies in the polytope.
///
/// The polytope is convex and contains `e_1`, so it suffices to look at
/// the simplex edges through `e_1`; on each, the smallest `α_1` among the
/// vertices on that edge bounds the slice.
pub fn cost_from_polyhedron(poly: &LmPolyhedron) -> Rational {
    (1..poly.r)
        .map(|h| {
            poly.vertices
                .iter()
                .filter(|v| (1..poly.r).all(|j| j == h || v[j].is_zero()))
                .map(|v| v[0].clone())
                .min()
                .unwrap_or_else(Rational::one)
        })
        .max()
        .unwrap_or_else(Rational::zero)
}
