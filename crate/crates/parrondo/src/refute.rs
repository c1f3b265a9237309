//! The deterministic "simple capital-dependent game" and why it is no
//! paradox: parity absorption makes its game B unconditionally winning, so
//! mixing two such games never turns losers into a winner.
//!
//! Game A here loses 1 dollar on even capital and 2 on odd capital. Game B
//! gains 6 on odd capital and loses 7 on even capital. Because the odd-side
//! delta of game B is even, capital becomes odd at most one step after play
//! begins and stays odd forever, collecting +6 per play from then on.

use crate::engine::{self, EnsembleStats, RngStream};
use crate::error::{Error, Result};
use crate::model::Probability;
use std::fmt;

/// How many steps [`parity_absorption`] scans before giving up.
pub const ABSORPTION_SCAN_LIMIT: u32 = 100;

/// A deterministic game: the capital change depends only on the parity of
/// the current capital.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGameRule {
    odd_delta: i64,
    even_delta: i64,
}

impl SimpleGameRule {
    /// Builds a rule from its odd-capital and even-capital deltas.
    pub fn new(odd_delta: i64, even_delta: i64) -> Self {
        Self {
            odd_delta,
            even_delta,
        }
    }

    /// The published game A: lose 2 on odd capital, lose 1 on even capital.
    pub fn game_a() -> Self {
        Self::new(-2, -1)
    }

    /// The published game B: gain 6 on odd capital, lose 7 on even capital.
    pub fn game_b() -> Self {
        Self::new(6, -7)
    }

    /// Capital change applied on odd capital.
    pub fn odd_delta(self) -> i64 {
        self.odd_delta
    }

    /// Capital change applied on even capital.
    pub fn even_delta(self) -> i64 {
        self.even_delta
    }

    /// The delta this rule applies at the given capital. Parity is taken
    /// from the non-negative remainder, so -3 counts as odd.
    pub fn delta_for(self, capital: i64) -> i64 {
        if capital.rem_euclid(2) == 1 {
            self.odd_delta
        } else {
            self.even_delta
        }
    }
}

/// Plays one round of the deterministic game.
pub fn simple_step(rule: SimpleGameRule, capital: i64) -> i64 {
    capital + rule.delta_for(capital)
}

/// The parity of a capital value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Capital is odd.
    Odd,
    /// Capital is even.
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Odd => write!(f, "Odd"),
            Parity::Even => write!(f, "Even"),
        }
    }
}

/// Result of scanning a rule for parity absorption.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityAbsorption {
    /// Steps taken before the parity became invariant. Zero means the start
    /// capital was already absorbed. Equals the scan limit when no
    /// absorption was found.
    pub steps: u32,
    /// The absorbed parity, or `None` when the scan limit was reached.
    pub parity: Option<Parity>,
    /// The capital change applied on every step after absorption; zero when
    /// no absorption was found.
    pub delta: i64,
}

/// Iterates the rule from `start` until the capital's parity can no longer
/// change, which happens exactly when the delta for the current parity is
/// even. Scans at most [`ABSORPTION_SCAN_LIMIT`] steps; rules that keep
/// flipping parity (both deltas odd) report `None`.
pub fn parity_absorption(rule: SimpleGameRule, start: i64) -> ParityAbsorption {
    let mut capital = start;
    for steps in 0..ABSORPTION_SCAN_LIMIT {
        let odd = capital.rem_euclid(2) == 1;
        let delta = rule.delta_for(capital);
        if delta.rem_euclid(2) == 0 {
            return ParityAbsorption {
                steps,
                parity: Some(if odd { Parity::Odd } else { Parity::Even }),
                delta,
            };
        }
        capital = simple_step(rule, capital);
    }
    ParityAbsorption {
        steps: ABSORPTION_SCAN_LIMIT,
        parity: None,
        delta: 0,
    }
}

/// Runs the ensemble for the compound simple game: each step selects game A
/// with probability `gamma` (one random draw per step), game B otherwise,
/// and applies the selected deterministic rule. At gamma 0 or 1 every trial
/// is the same pure-game trajectory. Aggregation follows the engine's
/// contract, so results do not depend on trial scheduling.
pub fn simulate_simple_compound(
    gamma: f64,
    t_max: u64,
    trials: u64,
    seed: u64,
) -> Result<EnsembleStats> {
    let gamma = Probability::new(gamma)
        .map_err(|_| Error::InvalidArgument(format!("gamma must lie in [0, 1], got {gamma}")))?;
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "trials must be at least 1".to_string(),
        ));
    }
    let game_a = SimpleGameRule::game_a();
    let game_b = SimpleGameRule::game_b();
    engine::run_ensemble_with(t_max, trials, move |trial| {
        let mut rng = RngStream::new(seed, trial);
        let mut capital = 0i64;
        let mut capitals = Vec::with_capacity(t_max as usize + 1);
        capitals.push(capital);
        for _ in 0..t_max {
            let rule = if rng.bernoulli(gamma) { game_a } else { game_b };
            capital = simple_step(rule, capital);
            capitals.push(capital);
        }
        Ok(capitals)
    })
}
