// SPDX-License-Identifier: Apache-2.0

//! Simple games and their structural predicates.
//!
//! A [`SimpleGame`] stores the full characteristic function as a bit table
//! over all `2^n` coalitions. Derived families (minimal winning
//! coalitions, the desirability relation) are computed lazily once and
//! shared between threads.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest supported player count.
pub const MAX_PLAYERS: usize = 20;

/// Quota and weights of a weighted game `[q; w_1, …, w_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedRepresentation<T = crate::Rational> {
    pub quota: T,
    pub weights: Vec<T>,
}

impl<T: Scalar> WeightedRepresentation<T> {
    pub fn new(quota: T, weights: Vec<T>) -> Result<Self> {
        check_player_count(weights.len())?;
        if quota <= T::zero() {
            return Err(Error::NonPositiveQuota);
        }
        if let Some(p) = weights.iter().position(|w| *w < T::zero()) {
            return Err(Error::NegativeWeight(p + 1));
        }
        let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
        if total < quota {
            return Err(Error::GrandCoalitionLoses);
        }
        Ok(WeightedRepresentation { quota, weights })
    }

    pub fn players(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_of(&self, coalition: Coalition) -> T {
        coalition
            .players()
            .fold(T::zero(), |acc, p| acc + self.weights[p - 1].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> WeightedRepresentation<U> {
        WeightedRepresentation {
            quota: f(&self.quota),
            weights: self.weights.iter().map(f).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for WeightedRepresentation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.quota)?;
        for (k, w) in self.weights.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

fn check_player_count(n: usize) -> Result<()> {
    if (1..=MAX_PLAYERS).contains(&n) {
        Ok(())
    } else {
        Err(Error::PlayerCount(n))
    }
}

/// A game together with an optional weighted representation and the
/// serialized form used to break ties between equally good witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameEntry {
    pub game: SimpleGame,
    pub representation: Option<WeightedRepresentation>,
    key: String,
}

impl GameEntry {
    /// Keyed by its JSON record.
    pub fn new(game: SimpleGame) -> Self {
        let key = crate::format::game_to_json(&game);
        GameEntry {
            game,
            representation: None,
            key,
        }
    }

    /// Keyed by bracket notation.
    pub fn weighted(game: SimpleGame, representation: WeightedRepresentation) -> Self {
        let key = representation.to_string();
        GameEntry {
            game,
            representation: Some(representation),
            key,
        }
    }

    pub fn key(&self) -> &str {
        &self.key
    }
}

impl fmt::Display for GameEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

/// Per-player counts `|M_i(l)|` of minimal winning coalitions of size `l`
/// containing player `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerProfile {
    /// `counts[i - 1][l - 1]`.
    counts: Vec<Vec<u64>>,
}

impl LayerProfile {
    pub fn count(&self, player: usize, size: usize) -> u64 {
        self.counts[player - 1][size - 1]
    }

    pub fn row(&self, player: usize) -> &[u64] {
        &self.counts[player - 1]
    }

    pub fn total(&self, player: usize) -> u64 {
        self.counts[player - 1].iter().sum()
    }

    /// Prefix sums `Σ_{l ≤ k} |M_i(l)|` for `k = 1..=n`.
    pub fn prefix_sums(&self, player: usize) -> Vec<u64> {
        self.counts[player - 1]
            .iter()
            .scan(0u64, |acc, c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }

    /// The layer relation `i ≿ j`.
    pub fn layer_geq(&self, i: usize, j: usize) -> bool {
        self.prefix_sums(i)
            .iter()
            .zip(self.prefix_sums(j))
            .all(|(a, b)| *a >= b)
    }

    pub fn is_total(&self) -> bool {
        let n = self.counts.len();
        (1..=n).all(|i| (i + 1..=n).all(|j| self.layer_geq(i, j) || self.layer_geq(j, i)))
    }
}

/// Structural flags of a game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub proper: bool,
    pub strong: bool,
    pub constant_sum: bool,
    pub uniform: bool,
    pub flat: bool,
    pub layers: LayerProfile,
}

/// Outcome of the completeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Players listed strongest first; `order[0] ⊒ order[1] ⊒ …`.
    Complete { order: Vec<usize> },
    /// Two incomparable players.
    Incomparable(usize, usize),
}

impl Completeness {
    pub fn is_complete(&self) -> bool {
        matches!(self, Completeness::Complete { .. })
    }
}

#[derive(Clone, Debug)]
struct Dominance {
    /// Bit `j` of `geq[i]` set iff `i ⊒ j` (0-based).
    geq: Vec<u32>,
}

impl Dominance {
    fn geq(&self, i: usize, j: usize) -> bool {
        self.geq[i] >> j & 1 == 1
    }

    fn strict(&self, i: usize, j: usize) -> bool {
        self.geq(i, j) && !self.geq(j, i)
    }
}

/// A simple game on players `1..=n`.
#[derive(Clone)]
pub struct SimpleGame {
    n: usize,
    winning: Vec<u64>,
    minimal: OnceLock<Vec<Coalition>>,
    dominance: OnceLock<Dominance>,
}

impl PartialEq for SimpleGame {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.winning == other.winning
    }
}

impl Eq for SimpleGame {}

impl Hash for SimpleGame {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.winning.hash(state);
    }
}

impl PartialOrd for SimpleGame {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Games order by player count, then by their minimal winning families
/// compared as sorted mask lists. This is the deterministic tie-break
/// used wherever several games certify the same value.
impl Ord for SimpleGame {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.minimal_winning().cmp(other.minimal_winning()))
    }
}

impl fmt::Debug for SimpleGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGame")
            .field("n", &self.n)
            .field("minimal_winning", &self.minimal_winning())
            .finish()
    }
}

fn words_for(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

impl SimpleGame {
    fn from_raw(n: usize, winning: Vec<u64>) -> Self {
        SimpleGame {
            n,
            winning,
            minimal: OnceLock::new(),
            dominance: OnceLock::new(),
        }
    }

    /// Builds a game from its characteristic function, validating the
    /// simple-game axioms.
    pub fn from_fn(n: usize, mut is_winning: impl FnMut(Coalition) -> bool) -> Result<Self> {
        check_player_count(n)?;
        let mut winning = vec![0u64; words_for(n)];
        for mask in 0..1u32 << n {
            if is_winning(Coalition::from_bits(mask)) {
                winning[mask as usize / 64] |= 1 << (mask % 64);
            }
        }
        let game = SimpleGame::from_raw(n, winning);
        game.validate()?;
        Ok(game)
    }

    /// Builds a game from a winning table indexed by coalition mask.
    pub fn from_table(n: usize, table: &[bool]) -> Result<Self> {
        check_player_count(n)?;
        if table.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: table.len(),
            });
        }
        SimpleGame::from_fn(n, |s| table[s.index()])
    }

    /// Builds a game from a validated up-set bit table.
    pub(crate) fn from_words_unchecked(n: usize, winning: Vec<u64>) -> Self {
        debug_assert_eq!(winning.len(), words_for(n));
        SimpleGame::from_raw(n, winning)
    }

    fn validate(&self) -> Result<()> {
        if self.is_winning(Coalition::EMPTY) {
            return Err(Error::EmptyCoalitionWins);
        }
        if !self.is_winning(Coalition::grand(self.n)) {
            return Err(Error::GrandCoalitionLoses);
        }
        for mask in 0..1u32 << self.n {
            let s = Coalition::from_bits(mask);
            if !self.is_winning(s) {
                continue;
            }
            for p in 1..=self.n {
                if !s.contains(p) && !self.is_winning(s.with(p)) {
                    return Err(Error::NotMonotone {
                        winning: s,
                        superset: s.with(p),
                    });
                }
            }
        }
        Ok(())
    }

    /// The unique game whose minimal winning coalitions are `family`.
    pub fn from_minimal_winning(n: usize, family: &[Coalition]) -> Result<Self> {
        check_player_count(n)?;
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for &s in family {
            if !s.within(n) {
                return Err(Error::CoalitionOutOfRange { coalition: s, n });
            }
        }
        for &a in family {
            for &b in family {
                if a != b && b.is_subset(a) {
                    return Err(Error::NotAntichain { larger: a, smaller: b });
                }
            }
        }
        if family.contains(&Coalition::EMPTY) {
            return Err(Error::EmptyCoalitionWins);
        }
        let mut table = vec![false; 1 << n];
        for &s in family {
            table[s.index()] = true;
        }
        // Up-closure: masks in increasing order see all their subsets first.
        for mask in 1..1usize << n {
            if table[mask] {
                continue;
            }
            table[mask] = (0..n).any(|bit| mask >> bit & 1 == 1 && table[mask ^ 1 << bit]);
        }
        let game = SimpleGame::from_table(n, &table)?;
        debug_assert_eq!(
            {
                let mut fam = family.to_vec();
                fam.sort();
                fam
            },
            game.minimal_winning().to_vec()
        );
        Ok(game)
    }

    /// The weighted game `S wins iff w(S) >= q`.
    pub fn from_weighted<T: Scalar>(rep: &WeightedRepresentation<T>) -> Result<Self> {
        let rep = WeightedRepresentation::new(rep.quota.clone(), rep.weights.clone())?;
        let n = rep.players();
        // Subset sums in increasing mask order reuse the sum without the top bit.
        let mut sums: Vec<T> = Vec::with_capacity(1 << n);
        sums.push(T::zero());
        for mask in 1usize..1 << n {
            let top = usize::BITS - 1 - mask.leading_zeros();
            let rest = mask ^ 1 << top;
            let s = sums[rest].clone() + rep.weights[top as usize].clone();
            sums.push(s);
        }
        SimpleGame::from_fn(n, |s| sums[s.index()] >= rep.quota)
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    pub fn is_winning(&self, s: Coalition) -> bool {
        let m = s.index();
        self.winning[m / 64] >> (m % 64) & 1 == 1
    }

    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> {
        (0..1u32 << self.n).map(Coalition::from_bits)
    }

    pub fn winning_coalitions(&self) -> impl Iterator<Item = Coalition> + '_ {
        self.coalitions().filter(|s| self.is_winning(*s))
    }

    /// Winning table indexed by coalition mask.
    pub fn table(&self) -> Vec<bool> {
        self.coalitions().map(|s| self.is_winning(s)).collect()
    }

    fn check_player(&self, player: usize) -> Result<()> {
        if (1..=self.n).contains(&player) {
            Ok(())
        } else {
            Err(Error::PlayerOutOfRange { player, n: self.n })
        }
    }

    /// Minimal winning coalitions, sorted by mask.
    pub fn minimal_winning(&self) -> &[Coalition] {
        self.minimal.get_or_init(|| {
            self.winning_coalitions()
                .filter(|s| s.players().all(|p| !self.is_winning(s.without(p))))
                .collect()
        })
    }

    /// Maximal losing coalitions, sorted by mask.
    pub fn maximal_losing(&self) -> Vec<Coalition> {
        self.coalitions()
            .filter(|s| !self.is_winning(*s))
            .filter(|s| (1..=self.n).all(|p| s.contains(p) || self.is_winning(s.with(p))))
            .collect()
    }

    /// True iff `s` is winning and loses without `player`.
    pub fn is_swing(&self, s: Coalition, player: usize) -> bool {
        s.contains(player) && self.is_winning(s) && !self.is_winning(s.without(player))
    }

    fn dominance(&self) -> &Dominance {
        self.dominance.get_or_init(|| {
            let n = self.n;
            let mut geq = vec![0u32; n];
            for i in 0..n {
                for j in 0..n {
                    if i == j || self.dominates0(i, j) {
                        geq[i] |= 1 << j;
                    }
                }
            }
            Dominance { geq }
        })
    }

    /// Direct test of `i ⊒ j` on 0-based players.
    fn dominates0(&self, i: usize, j: usize) -> bool {
        // Every S with j ∈ S, i ∉ S: S wins ⇒ S − j + i wins.
        self.coalitions().all(|s| {
            !s.contains0(j) || s.contains0(i) || !self.is_winning(s) || self.is_winning(s.toggle0(j).toggle0(i))
        })
    }

    /// The desirability relation `i ⊒ j` for distinct players.
    pub fn desirability_geq(&self, i: usize, j: usize) -> Result<bool> {
        self.check_player(i)?;
        self.check_player(j)?;
        if i == j {
            return Err(Error::PlayerOutOfRange { player: j, n: self.n });
        }
        Ok(self.dominance().geq(i - 1, j - 1))
    }

    /// `i ⊒ j` including the reflexive case.
    pub(crate) fn geq(&self, i: usize, j: usize) -> bool {
        self.dominance().geq(i - 1, j - 1)
    }

    /// `i ⊒ j` and not `j ⊒ i`.
    pub fn strictly_dominates(&self, i: usize, j: usize) -> bool {
        self.dominance().strict(i - 1, j - 1)
    }

    /// Players `i` and `j` are equivalent (`i □ j`).
    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.geq(i, j) && self.geq(j, i)
    }

    /// Checks totality of `⊒`; on success returns the players sorted by
    /// desirability with ties broken by ascending player number.
    pub fn completeness(&self) -> Completeness {
        let d = self.dominance();
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                if !d.geq(i, j) && !d.geq(j, i) {
                    return Completeness::Incomparable(i + 1, j + 1);
                }
            }
        }
        let mut order: Vec<usize> = (1..=n).collect();
        order.sort_by_key(|&p| (std::cmp::Reverse(d.geq[p - 1].count_ones()), p));
        Completeness::Complete { order }
    }

    pub fn is_complete(&self) -> bool {
        self.completeness().is_complete()
    }

    /// True when `1 ⊒ 2 ⊒ … ⊒ n`.
    pub fn is_sorted(&self) -> bool {
        (1..self.n).all(|i| self.geq(i, i + 1))
    }

    /// Fails unless the game is complete with players sorted by desirability.
    pub fn require_sorted_complete(&self) -> Result<()> {
        if let Completeness::Incomparable(i, j) = self.completeness() {
            return Err(Error::NotComplete(i, j));
        }
        match (1..self.n).find(|&i| !self.geq(i, i + 1)) {
            Some(i) => Err(Error::NotSorted(i, i + 1)),
            None => Ok(()),
        }
    }

    /// Relabels players: new player `k` is old player `order[k - 1]`.
    pub fn permuted(&self, order: &[usize]) -> Result<SimpleGame> {
        let n = self.n;
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: order.len(),
            });
        }
        for &p in order {
            self.check_player(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Parse(format!("player {p} repeated in permutation")));
            }
        }
        let image = |s: Coalition| Coalition::from_players(s.players().map(|new| order[new - 1]));
        SimpleGame::from_fn(n, |s| self.is_winning(image(s)))
    }

    /// The same game with players sorted strongest first. Fails for
    /// incomplete games.
    pub fn sorted(&self) -> Result<SimpleGame> {
        match self.completeness() {
            Completeness::Complete { order } => self.permuted(&order),
            Completeness::Incomparable(i, j) => Err(Error::NotComplete(i, j)),
        }
    }

    /// Shift-minimal winning coalitions: minimal winning coalitions that
    /// lose whenever a member is replaced by a strictly dominated
    /// non-member.
    pub fn shift_minimal_winning(&self) -> Result<Vec<Coalition>> {
        if let Completeness::Incomparable(i, j) = self.completeness() {
            return Err(Error::NotComplete(i, j));
        }
        let d = self.dominance();
        let n = self.n;
        Ok(self
            .minimal_winning()
            .iter()
            .copied()
            .filter(|&s| {
                (0..n).filter(|&i| s.contains0(i)).all(|i| {
                    (0..n)
                        .filter(|&j| !s.contains0(j) && d.strict(i, j))
                        .all(|j| !self.is_winning(s.toggle0(i).toggle0(j)))
                })
            })
            .collect())
    }

    pub fn is_proper(&self) -> bool {
        self.winning_coalitions()
            .all(|s| !self.is_winning(s.complement(self.n)))
    }

    pub fn is_strong(&self) -> bool {
        self.coalitions()
            .filter(|s| !self.is_winning(*s))
            .all(|s| self.is_winning(s.complement(self.n)))
    }

    pub fn layer_profile(&self) -> LayerProfile {
        let n = self.n;
        let mut counts = vec![vec![0u64; n]; n];
        for s in self.minimal_winning() {
            let size = s.len();
            for p in s.players() {
                counts[p - 1][size - 1] += 1;
            }
        }
        LayerProfile { counts }
    }

    pub fn is_uniform(&self) -> bool {
        let mut sizes = self.minimal_winning().iter().map(|s| s.len());
        let first = sizes.next();
        sizes.all(|s| Some(s) == first)
    }

    pub fn classify(&self) -> Classification {
        let proper = self.is_proper();
        let strong = self.is_strong();
        let layers = self.layer_profile();
        Classification {
            proper,
            strong,
            constant_sum: proper && strong,
            uniform: self.is_uniform(),
            flat: layers.is_total(),
            layers,
        }
    }

    /// Players in no minimal winning coalition.
    pub fn null_players(&self) -> Vec<usize> {
        let used = self
            .minimal_winning()
            .iter()
            .fold(Coalition::EMPTY, |acc, s| Coalition::from_bits(acc.bits() | s.bits()));
        (1..=self.n).filter(|&p| !used.contains(p)).collect()
    }

    pub fn is_null(&self, player: usize) -> bool {
        self.minimal_winning().iter().all(|s| !s.contains(player))
    }

    /// Classes of equivalent players, each sorted, ordered by smallest member.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for p in 1..=self.n {
            match classes.iter_mut().find(|c| self.equivalent(c[0], p)) {
                Some(class) => class.push(p),
                None => classes.push(vec![p]),
            }
        }
        classes
    }

    /// The `(n − 1)`-player game obtained by deleting the null player `i`;
    /// players above `i` move down by one.
    pub fn drop_null(&self, player: usize) -> Result<SimpleGame> {
        self.check_player(player)?;
        if !self.is_null(player) {
            return Err(Error::NotNull(player));
        }
        if self.n == 1 {
            return Err(Error::PlayerCount(0));
        }
        let lift = |s: Coalition| Coalition::from_players(s.players().map(|p| if p >= player { p + 1 } else { p }));
        SimpleGame::from_fn(self.n - 1, |s| self.is_winning(lift(s)))
    }

    /// Appends a null player `n + 1`.
    pub fn with_null_player(&self) -> Result<SimpleGame> {
        let top = self.n + 1;
        SimpleGame::from_fn(top, |s| self.is_winning(s.without(top)))
    }

    /// Minimal winning coalitions as player lists.
    pub fn minimal_winning_lists(&self) -> Vec<Vec<usize>> {
        self.minimal_winning().iter().map(|s| s.players().collect()).collect()
    }
}
