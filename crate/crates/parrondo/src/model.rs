//! Domain types: validated probabilities, bias parameters, the game family,
//! and canonical constructors for the published parameterizations.
//!
//! Values are validated once at construction and are immutable afterwards,
//! so the simulation and analysis layers never re-check ranges.

use std::fmt;

use crate::error::{Error, Result};
use crate::refute::SimpleGameRule;

/// A win probability, guaranteed finite and inside `[0, 1]`.
///
/// The complement `1 - p` is stored alongside the value. Recomputing it on
/// demand would discard most significant digits whenever `p` sits within a
/// few ulps of 1, and quantities like the fairness ratio divide by that
/// complement; carrying both keeps such results at full relative
/// precision. Constructors keep the pair consistent, and [`complement`]
/// simply swaps the fields, making it an exact involution.
///
/// [`complement`]: Probability::complement
#[derive(Clone, Copy, Debug)]
pub struct Probability {
    value: f64,
    complement: f64,
}

impl Probability {
    /// Wraps a raw value, rejecting NaN, infinities, and anything outside `[0, 1]`.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Self {
                value,
                complement: 1.0 - value,
            })
        } else {
            Err(Error::InvalidProbability(value))
        }
    }

    /// Builds a probability from a separately computed value and
    /// complement, for callers that can produce both sides at full
    /// relative precision (for example the pair `a/(a+b)`, `b/(a+b)`).
    /// Both parts must lie in `[0, 1]` and sum to 1 within a few ulps.
    pub fn from_parts(value: f64, complement: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidProbability(value));
        }
        if !complement.is_finite() || !(0.0..=1.0).contains(&complement) {
            return Err(Error::InvalidProbability(complement));
        }
        if (value + complement - 1.0).abs() > 4.0 * f64::EPSILON {
            return Err(Error::InvalidArgument(format!(
                "value {value} and complement {complement} do not sum to 1"
            )));
        }
        Ok(Self { value, complement })
    }

    /// Returns the wrapped value.
    pub fn value(self) -> f64 {
        self.value
    }

    /// Returns `1 - p` as a probability by swapping the stored parts.
    pub fn complement(self) -> Self {
        Self {
            value: self.complement,
            complement: self.value,
        }
    }

    /// The complement as a raw value, exact even when the value is within
    /// a few ulps of 1.
    pub fn complement_value(self) -> f64 {
        self.complement
    }
}

impl PartialEq for Probability {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for Probability {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The biasing offset and capital modulus shared by one game family.
///
/// `epsilon` itself only has to be finite and non-negative here; whether a
/// particular offset keeps every derived probability inside `[0, 1]` is
/// checked by the game constructors, where the offsets are actually applied.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiasParams {
    epsilon: f64,
    m: u32,
}

impl BiasParams {
    /// Validates the biasing offset (finite, non-negative) and modulus (at least 2).
    pub fn new(epsilon: f64, m: u32) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be finite and non-negative, got {epsilon}"
            )));
        }
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "modulus m must be at least 2, got {m}"
            )));
        }
        Ok(Self { epsilon, m })
    }

    /// The biasing offset.
    pub fn epsilon(self) -> f64 {
        self.epsilon
    }

    /// The capital modulus.
    pub fn m(self) -> u32 {
        self.m
    }
}

/// The memoryless coin-flip game: one play wins with probability `p1` and
/// moves capital by plus or minus one dollar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GameA {
    p1: Probability,
}

impl GameA {
    /// Builds the game from its single win probability.
    pub fn new(p1: Probability) -> Self {
        Self { p1 }
    }

    /// The win probability.
    pub fn p1(self) -> Probability {
        self.p1
    }
}

/// The capital-dependent game B: scenario 1 (win probability `p2`) applies
/// when capital is a multiple of `m`, scenario 2 (`p3`) otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapitalGameB {
    p2: Probability,
    p3: Probability,
    m: u32,
}

impl CapitalGameB {
    /// Builds the game; the modulus must be at least 2.
    pub fn new(p2: Probability, p3: Probability, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "modulus m must be at least 2, got {m}"
            )));
        }
        Ok(Self { p2, p3, m })
    }

    /// Scenario 1 win probability (capital divisible by `m`).
    pub fn p2(self) -> Probability {
        self.p2
    }

    /// Scenario 2 win probability.
    pub fn p3(self) -> Probability {
        self.p3
    }

    /// The capital modulus.
    pub fn m(self) -> u32 {
        self.m
    }

    /// The win probability that applies at the given capital. Divisibility is
    /// decided on the mathematical (always non-negative) remainder, so
    /// negative capital classifies the same way as its positive counterpart.
    pub fn scenario_for(self, capital: i64) -> Probability {
        if capital.rem_euclid(i64::from(self.m)) == 0 {
            self.p2
        } else {
            self.p3
        }
    }
}

/// The history-dependent game B: the win probability is indexed by the
/// outcomes of the previous two plays, ordered (before last, last).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistoryGameB {
    p2: Probability,
    p3: Probability,
    p4: Probability,
    p5: Probability,
}

impl HistoryGameB {
    /// Builds the game from the four win probabilities for histories
    /// (Lose, Lose), (Lose, Win), (Win, Lose), and (Win, Win).
    pub fn new(p2: Probability, p3: Probability, p4: Probability, p5: Probability) -> Self {
        Self { p2, p3, p4, p5 }
    }

    /// Win probability after two losses.
    pub fn p2(self) -> Probability {
        self.p2
    }

    /// Win probability after a loss followed by a win.
    pub fn p3(self) -> Probability {
        self.p3
    }

    /// Win probability after a win followed by a loss.
    pub fn p4(self) -> Probability {
        self.p4
    }

    /// Win probability after two wins.
    pub fn p5(self) -> Probability {
        self.p5
    }

    /// The win probability selected by a (before last, last) outcome pair.
    pub fn probability_for(self, history: (Outcome, Outcome)) -> Probability {
        match history {
            (Outcome::Lose, Outcome::Lose) => self.p2,
            (Outcome::Lose, Outcome::Win) => self.p3,
            (Outcome::Win, Outcome::Lose) => self.p4,
            (Outcome::Win, Outcome::Win) => self.p5,
        }
    }
}

/// The component game B inside a compound game.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GameB {
    /// Capital-dependent variant.
    Capital(CapitalGameB),
    /// History-dependent variant.
    History(HistoryGameB),
}

/// The compound game: each play selects game A with probability `gamma` and
/// the component game B otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompoundGame {
    gamma: Probability,
    game_a: GameA,
    game_b: GameB,
}

impl CompoundGame {
    /// Builds a compound game from its mixing probability and components.
    pub fn new(gamma: Probability, game_a: GameA, game_b: GameB) -> Self {
        Self {
            gamma,
            game_a,
            game_b,
        }
    }

    /// Probability of selecting game A on any given play.
    pub fn gamma(self) -> Probability {
        self.gamma
    }

    /// The coin-flip component.
    pub fn game_a(self) -> GameA {
        self.game_a
    }

    /// The game-B component.
    pub fn game_b(self) -> GameB {
        self.game_b
    }

    /// Effective scenario probabilities (pc1, pc2) of the mixture, defined
    /// for the capital-dependent variant only:
    /// pc1 = gamma * p1 + (1 - gamma) * p2 and likewise pc2 with p3.
    pub fn compound_point(self) -> Option<(Probability, Probability)> {
        let GameB::Capital(b) = self.game_b else {
            return None;
        };
        let g = self.gamma.value();
        let p1 = self.game_a.p1().value();
        let mix = |p: f64| {
            let v = (g * p1 + (1.0 - g) * p).clamp(0.0, 1.0);
            Probability::new(v).expect("convex combination of probabilities stays in range")
        };
        Some((mix(b.p2().value()), mix(b.p3().value())))
    }
}

/// Identifier of one of the eight winning/losing scheme combinations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemeId(u8);

impl SchemeId {
    /// Validates an identifier in `1..=8`.
    pub fn new(id: u8) -> Result<Self> {
        if (1..=8).contains(&id) {
            Ok(Self(id))
        } else {
            Err(Error::InvalidArgument(format!(
                "scheme id must lie in 1..=8, got {id}"
            )))
        }
    }

    /// The numeric identifier.
    pub fn get(self) -> u8 {
        self.0
    }

    /// All eight identifiers in order.
    pub fn all() -> [SchemeId; 8] {
        [1, 2, 3, 4, 5, 6, 7, 8].map(SchemeId)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The result of one play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Capital moved up.
    Win,
    /// Capital moved down.
    Lose,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Win => write!(f, "Win"),
            Outcome::Lose => write!(f, "Lose"),
        }
    }
}

/// Instantaneous player state: capital, plays completed, and the outcomes of
/// the last two plays (ordered before last, then last) when known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlayerState {
    /// Current capital in dollars.
    pub capital: i64,
    /// Number of plays completed.
    pub t: u64,
    /// Last two outcomes, or `None` when no history has been established.
    pub history: Option<(Outcome, Outcome)>,
}

impl PlayerState {
    /// The starting state: zero capital, zero plays, no history.
    pub fn new() -> Self {
        Self {
            capital: 0,
            t: 0,
            history: None,
        }
    }

    /// A starting state with the given capital.
    pub fn with_capital(capital: i64) -> Self {
        Self {
            capital,
            ..Self::new()
        }
    }

    /// Returns this state with the history pair set.
    pub fn with_history(self, older: Outcome, newer: Outcome) -> Self {
        Self {
            history: Some((older, newer)),
            ..self
        }
    }

    /// The successor state after one play: capital shifted by `delta`, play
    /// count incremented, and the history pair shifted by the new outcome.
    /// A state without history stays without history; seed the pair first
    /// when a history-dependent game is going to be played.
    pub fn advanced(self, delta: i64, outcome: Outcome) -> Self {
        Self {
            capital: self.capital + delta,
            t: self.t + 1,
            history: self.history.map(|(_, last)| (last, outcome)),
        }
    }
}

impl Default for PlayerState {
    fn default() -> Self {
        Self::new()
    }
}

/// Any playable game.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GameSpec {
    /// Memoryless coin flip.
    A(GameA),
    /// Capital-dependent game B.
    CapitalB(CapitalGameB),
    /// History-dependent game B.
    HistoryB(HistoryGameB),
    /// Random mixture of game A and a game B.
    Compound(CompoundGame),
    /// Deterministic parity game used by the refutation analysis.
    Simple(SimpleGameRule),
}

impl GameSpec {
    /// True when stepping this game consults the two-play history.
    pub fn uses_history(&self) -> bool {
        match self {
            GameSpec::HistoryB(_) => true,
            GameSpec::Compound(c) => matches!(c.game_b(), GameB::History(_)),
            _ => false,
        }
    }
}

impl From<GameA> for GameSpec {
    fn from(g: GameA) -> Self {
        GameSpec::A(g)
    }
}

impl From<CapitalGameB> for GameSpec {
    fn from(g: CapitalGameB) -> Self {
        GameSpec::CapitalB(g)
    }
}

impl From<HistoryGameB> for GameSpec {
    fn from(g: HistoryGameB) -> Self {
        GameSpec::HistoryB(g)
    }
}

impl From<CompoundGame> for GameSpec {
    fn from(g: CompoundGame) -> Self {
        GameSpec::Compound(g)
    }
}

impl From<SimpleGameRule> for GameSpec {
    fn from(g: SimpleGameRule) -> Self {
        GameSpec::Simple(g)
    }
}

/// Builds the original pair: the coin flip with p1 = 0.5 - epsilon and the
/// capital-dependent game B with p2 = 0.1 - epsilon, p3 = 0.75 - epsilon.
pub fn build_parrondo_games(bias: BiasParams) -> Result<(GameA, CapitalGameB)> {
    let e = bias.epsilon();
    let p1 = Probability::new(0.5 - e)?;
    let p2 = Probability::new(0.1 - e)?;
    let p3 = Probability::new(0.75 - e)?;
    Ok((GameA::new(p1), CapitalGameB::new(p2, p3, bias.m())?))
}

/// Builds the modified pair used with modulus 5: the same coin flip paired
/// with p2 = 0.1 - epsilon and p3 = 0.63 - epsilon. The modulus is taken
/// from `bias`; the published family uses m = 5.
pub fn build_modified_games(bias: BiasParams) -> Result<(GameA, CapitalGameB)> {
    let e = bias.epsilon();
    let p1 = Probability::new(0.5 - e)?;
    let p2 = Probability::new(0.1 - e)?;
    let p3 = Probability::new(0.63 - e)?;
    Ok((GameA::new(p1), CapitalGameB::new(p2, p3, bias.m())?))
}

/// Builds the history-dependent pair: the coin flip plus game B with win
/// probabilities 0.9 - epsilon (after LL), 0.25 - epsilon (LW),
/// 0.25 - epsilon (WL), and 0.7 - epsilon (WW). Losing probabilities are
/// always the complements of these.
pub fn build_history_games(bias: BiasParams) -> Result<(GameA, HistoryGameB)> {
    let e = bias.epsilon();
    let p1 = Probability::new(0.5 - e)?;
    let p2 = Probability::new(0.9 - e)?;
    let p3 = Probability::new(0.25 - e)?;
    let p4 = Probability::new(0.25 - e)?;
    let p5 = Probability::new(0.7 - e)?;
    Ok((GameA::new(p1), HistoryGameB::new(p2, p3, p4, p5)))
}

/// Whether each part of a scheme is individually winning: game A, game B's
/// scenario 1, and game B's scenario 2.
fn scheme_sides(id: SchemeId) -> (bool, bool, bool) {
    match id.get() {
        1 => (false, false, true),
        2 => (true, false, true),
        3 => (false, true, true),
        4 => (false, false, false),
        5 => (true, true, true),
        6 => (true, false, false),
        7 => (false, true, false),
        8 => (true, true, false),
        _ => unreachable!("SchemeId is validated on construction"),
    }
}

/// Builds the canonical games of one scheme. Game A gets 0.5 -/+ epsilon for
/// its losing/winning variants. Game B's point is one of four canonical
/// pairs: (0.1-e, 0.75-e) for scenario 1 losing and 2 winning, its
/// reflection (0.9+e, 0.25+e), (0.1-e, 0.25-e) for both losing, and its
/// reflection (0.9+e, 0.75+e). The compound mixes the pair with `gamma`.
pub fn build_scheme(
    id: SchemeId,
    bias: BiasParams,
    gamma: Probability,
) -> Result<(GameA, CapitalGameB, CompoundGame)> {
    let e = bias.epsilon();
    let (a_wins, s1_wins, s2_wins) = scheme_sides(id);
    let p1 = Probability::new(if a_wins { 0.5 + e } else { 0.5 - e })?;
    let (p2, p3) = match (s1_wins, s2_wins) {
        (false, true) => (0.1 - e, 0.75 - e),
        (true, false) => (0.9 + e, 0.25 + e),
        (false, false) => (0.1 - e, 0.25 - e),
        (true, true) => (0.9 + e, 0.75 + e),
    };
    let game_a = GameA::new(p1);
    let game_b = CapitalGameB::new(Probability::new(p2)?, Probability::new(p3)?, bias.m())?;
    let compound = CompoundGame::new(gamma, game_a, GameB::Capital(game_b));
    Ok((game_a, game_b, compound))
}

/// Replaces every win probability p by 1 - p, leaving the structure (moduli,
/// history slots, mixing probability) unchanged. The deterministic simple
/// game has no probabilities to reflect and is rejected.
pub fn reflect_game(game: &GameSpec) -> Result<GameSpec> {
    match game {
        GameSpec::A(a) => Ok(GameSpec::A(GameA::new(a.p1().complement()))),
        GameSpec::CapitalB(b) => Ok(GameSpec::CapitalB(CapitalGameB::new(
            b.p2().complement(),
            b.p3().complement(),
            b.m(),
        )?)),
        GameSpec::HistoryB(h) => Ok(GameSpec::HistoryB(HistoryGameB::new(
            h.p2().complement(),
            h.p3().complement(),
            h.p4().complement(),
            h.p5().complement(),
        ))),
        GameSpec::Compound(c) => {
            let game_a = GameA::new(c.game_a().p1().complement());
            let game_b = match c.game_b() {
                GameB::Capital(b) => GameB::Capital(CapitalGameB::new(
                    b.p2().complement(),
                    b.p3().complement(),
                    b.m(),
                )?),
                GameB::History(h) => GameB::History(HistoryGameB::new(
                    h.p2().complement(),
                    h.p3().complement(),
                    h.p4().complement(),
                    h.p5().complement(),
                )),
            };
            Ok(GameSpec::Compound(CompoundGame::new(
                c.gamma(),
                game_a,
                game_b,
            )))
        }
        GameSpec::Simple(_) => Err(Error::UnsupportedGame(
            "reflection is defined for probabilistic games only",
        )),
    }
}
