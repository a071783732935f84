// SPDX-License-Identifier: Apache-2.0

//! Text formats for games.
//!
//! Weighted games use bracket notation `[q;w1,...,wn]` where every entry
//! is an integer or a fraction `p/r`. General games use the JSON record
//! `{"n": 3, "minimal_winning": [[1], [2, 3]]}` with 1-based players.

use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{SimpleGame, WeightedRepresentation};
use crate::scalar::{parse_rational, Rational};

/// Parses `[q;w1,...,wn]`.
pub fn parse_weighted(text: &str) -> Result<WeightedRepresentation> {
    let body = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [q;w1,...,wn], found '{}'", text.trim())))?;
    let (quota, weights) = body
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("missing ';' after the quota in '{}'", text.trim())))?;
    let quota = parse_rational(quota)?;
    let weights = weights
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<Rational>>>()?;
    WeightedRepresentation::new(quota, weights)
}

pub fn format_weighted(rep: &WeightedRepresentation) -> String {
    rep.to_string()
}

/// JSON layout of a general game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameRecord {
    pub n: usize,
    pub minimal_winning: Vec<Vec<usize>>,
}

impl GameRecord {
    pub fn from_game(v: &SimpleGame) -> Self {
        GameRecord {
            n: v.players(),
            minimal_winning: v.minimal_winning_lists(),
        }
    }

    pub fn to_game(&self) -> Result<SimpleGame> {
        let mut family = Vec::with_capacity(self.minimal_winning.len());
        for players in &self.minimal_winning {
            if let Some(&p) = players.iter().find(|&&p| p == 0 || p > self.n) {
                return Err(Error::PlayerOutOfRange { player: p, n: self.n });
            }
            family.push(Coalition::from_players(players.iter().copied()));
        }
        SimpleGame::from_minimal_winning(self.n, &family)
    }
}

pub fn game_to_json(v: &SimpleGame) -> String {
    serde_json::to_string(&GameRecord::from_game(v)).expect("game record serializes")
}

pub fn game_from_json(text: &str) -> Result<SimpleGame> {
    let record: GameRecord =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid game record: {e}")))?;
    record.to_game()
}

/// Accepts either bracket notation or a JSON record.
pub fn parse_game(text: &str) -> Result<SimpleGame> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        game_from_json(trimmed)
    } else {
        SimpleGame::from_weighted(&parse_weighted(trimmed)?)
    }
}
