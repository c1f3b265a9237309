//! Exact analysis: the fair boundary curve of probability space, region
//! classification, stationary distributions of the capital and history
//! chains, per-play drift, and the eight-scheme classification table.
//!
//! Two independent winning criteria live here. The product ratio
//! p2 * p3^(m-1) / ((1-p2) * (1-p3)^(m-1)) compares the chance of a full
//! upward cycle against a downward one; the stationary drift weighs each
//! scenario's edge by how often the chain visits it. Away from the boundary
//! both must agree on the verdict, and the tests hold them to that.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{BiasParams, CapitalGameB, GameB, GameSpec, Probability, SchemeId};
use nalgebra::{DMatrix, DVector};

/// Default half-width of the boundary band used when classifying points:
/// ratios within this distance of 1 count as Boundary.
pub const DEFAULT_REGION_TOL: f64 = 1e-9;

/// A location (p2, p3) for game B in the unit square of probability space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbabilityPoint {
    /// Scenario 1 win probability (capital divisible by m).
    pub p2: Probability,
    /// Scenario 2 win probability.
    pub p3: Probability,
}

impl ProbabilityPoint {
    /// Bundles two validated probabilities into a point.
    pub fn new(p2: Probability, p3: Probability) -> Self {
        Self { p2, p3 }
    }
}

impl fmt::Display for ProbabilityPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p2, self.p3)
    }
}

/// Which side of the fair boundary a point falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// The game drifts upward.
    Winning,
    /// The game drifts downward.
    Losing,
    /// Within tolerance of the fair curve.
    Boundary,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Winning => write!(f, "Winning"),
            Region::Losing => write!(f, "Losing"),
            Region::Boundary => write!(f, "Boundary"),
        }
    }
}

/// The capital-residue Markov chain of a capital-dependent game: from
/// residue s, a win moves to (s+1) mod m and a loss to (s-1) mod m.
#[derive(Clone, Debug, PartialEq)]
pub struct ModMChain {
    win: Vec<Probability>,
}

impl ModMChain {
    /// Builds a chain from one win probability per residue class.
    pub fn new(win: Vec<Probability>) -> Result<Self> {
        if win.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a residue chain needs at least 2 states, got {}",
                win.len()
            )));
        }
        Ok(Self { win })
    }

    /// The chain of a capital-dependent game: p2 at residue zero, p3 at
    /// every other residue.
    pub fn from_game(game: &CapitalGameB) -> Self {
        let m = game.m() as usize;
        let mut win = vec![game.p3(); m];
        win[0] = game.p2();
        Self { win }
    }

    /// The chain of the game located at a probability point; the game
    /// constructor enforces m >= 2.
    pub fn from_point(point: ProbabilityPoint, m: u32) -> Result<Self> {
        Ok(Self::from_game(&CapitalGameB::new(point.p2, point.p3, m)?))
    }

    /// Number of residue classes.
    pub fn m(&self) -> u32 {
        self.win.len() as u32
    }

    /// Win probability per residue class.
    pub fn win_probabilities(&self) -> &[Probability] {
        &self.win
    }

    fn transition_matrix(&self) -> DMatrix<f64> {
        let m = self.win.len();
        let mut p = DMatrix::zeros(m, m);
        for (s, w) in self.win.iter().enumerate() {
            p[(s, (s + 1) % m)] += w.value();
            p[(s, (s + m - 1) % m)] += w.complement_value();
        }
        p
    }
}

/// Solves pi P = pi, sum(pi) = 1 for a small dense transition matrix by
/// replacing one balance equation with the normalization row.
fn stationary_of(p: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = p.nrows();
    let mut system = p.transpose() - DMatrix::<f64>::identity(n, n);
    let mut rhs = DVector::zeros(n);
    for col in 0..n {
        system[(n - 1, col)] = 1.0;
    }
    rhs[n - 1] = 1.0;
    let pi = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::DegenerateChain("singular balance system".to_string()))?;
    Ok(pi.iter().copied().collect())
}

fn require_mixing(win: &[f64]) -> Result<()> {
    for (state, &w) in win.iter().enumerate() {
        if w <= 0.0 || w >= 1.0 {
            return Err(Error::DegenerateChain(format!(
                "win probability {w} at state {state} makes a transition certain"
            )));
        }
    }
    Ok(())
}

/// The unique stationary distribution of an irreducible residue chain.
/// Every win probability must lie strictly inside (0, 1); certain
/// transitions would make parts of the chain unreachable or absorbing.
/// The returned vector satisfies pi P = pi with residual below 1e-12 for
/// the small moduli used here.
pub fn stationary_distribution(chain: &ModMChain) -> Result<Vec<f64>> {
    let win: Vec<f64> = chain
        .win_probabilities()
        .iter()
        .map(|p| p.value())
        .collect();
    require_mixing(&win)?;
    stationary_of(&chain.transition_matrix())
}

/// The four-state history chain over (before last, last) outcome pairs in
/// the order LL, LW, WL, WW. A win from state (o, n) leads to (n, Win), a
/// loss to (n, Lose).
fn history_transition(win: [f64; 4]) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(4, 4);
    for (state, &w) in win.iter().enumerate() {
        let last = state & 1;
        p[(state, 2 * last + 1)] += w;
        p[(state, 2 * last)] += 1.0 - w;
    }
    p
}

fn drift_of_residue_chain(chain: &ModMChain) -> Result<f64> {
    let pi = stationary_distribution(chain)?;
    Ok(chain
        .win_probabilities()
        .iter()
        .zip(&pi)
        .map(|(w, q)| q * (w.value() - w.complement_value()))
        .sum())
}

fn drift_of_history_chain(win: [f64; 4]) -> Result<f64> {
    require_mixing(&win)?;
    let pi = stationary_of(&history_transition(win))?;
    Ok(pi.iter().zip(&win).map(|(q, w)| q * (2.0 * w - 1.0)).sum())
}

/// Expected capital change per play in the long run.
///
/// The coin flip needs no chain: its drift is 2 p1 - 1. Capital-dependent
/// games (and compound games built on one) use the stationary distribution
/// of the mod-m residue chain; history-dependent games (and their
/// compounds) use the four-state chain over outcome pairs. The
/// deterministic simple game is not probabilistic and is rejected.
pub fn exact_drift(game: &GameSpec) -> Result<f64> {
    match game {
        GameSpec::A(a) => Ok(2.0 * a.p1().value() - 1.0),
        GameSpec::CapitalB(b) => drift_of_residue_chain(&ModMChain::from_game(b)),
        GameSpec::HistoryB(h) => drift_of_history_chain([
            h.p2().value(),
            h.p3().value(),
            h.p4().value(),
            h.p5().value(),
        ]),
        GameSpec::Compound(c) => {
            let gamma = c.gamma().value();
            let p1 = c.game_a().p1().value();
            match c.game_b() {
                GameB::Capital(b) => {
                    let mix = |p: f64| {
                        Probability::new((gamma * p1 + (1.0 - gamma) * p).clamp(0.0, 1.0))
                            .expect("convex combination stays in range")
                    };
                    let m = b.m() as usize;
                    let mut win = vec![mix(b.p3().value()); m];
                    win[0] = mix(b.p2().value());
                    drift_of_residue_chain(&ModMChain::new(win)?)
                }
                GameB::History(h) => {
                    let mix = |p: f64| gamma * p1 + (1.0 - gamma) * p;
                    drift_of_history_chain([
                        mix(h.p2().value()),
                        mix(h.p3().value()),
                        mix(h.p4().value()),
                        mix(h.p5().value()),
                    ])
                }
            }
        }
        GameSpec::Simple(_) => Err(Error::UnsupportedGame(
            "drift is defined for probabilistic games only",
        )),
    }
}

/// The fair boundary curve: the scenario 1 probability that exactly
/// balances a game whose scenario 2 probability is `p3`, namely
/// (1-p3)^(m-1) / ((1-p3)^(m-1) + p3^(m-1)). The endpoints evaluate to the
/// curve's limits: 1 at p3 = 0 and 0 at p3 = 1. The result carries both
/// sides of the split at full relative precision, so feeding it back into
/// [`fairness_ratio`] recovers 1 to machine accuracy even where the curve
/// hugs the edge of the square.
pub fn boundary_p2(p3: Probability, m: u32) -> Result<Probability> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "modulus m must be at least 2, got {m}"
        )));
    }
    let lose_side = p3.complement_value().powi(m as i32 - 1);
    let win_side = p3.value().powi(m as i32 - 1);
    let total = lose_side + win_side;
    Probability::from_parts(lose_side / total, win_side / total)
}

/// The product-form fairness criterion
/// p2 * p3^(m-1) / ((1-p2) * (1-p3)^(m-1)). Values above 1 mean winning,
/// below 1 losing. A vanishing denominator reports positive infinity, which
/// downstream classification reads as Winning.
pub fn fairness_ratio(point: ProbabilityPoint, m: u32) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "modulus m must be at least 2, got {m}"
        )));
    }
    let numerator = point.p2.value() * point.p3.value().powi(m as i32 - 1);
    let denominator = point.p2.complement_value() * point.p3.complement_value().powi(m as i32 - 1);
    if denominator == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(numerator / denominator)
}

/// Classifies a point against the fair boundary: Winning when the fairness
/// ratio exceeds 1 + tol, Losing below 1 - tol, Boundary in between.
pub fn classify_point(point: ProbabilityPoint, m: u32, tol: f64) -> Result<Region> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let ratio = fairness_ratio(point, m)?;
    if ratio > 1.0 + tol {
        Ok(Region::Winning)
    } else if ratio < 1.0 - tol {
        Ok(Region::Losing)
    } else {
        Ok(Region::Boundary)
    }
}

/// The only real solution of p1^3 = (1 - p1)^3: the fair coin, p1 = 1/2.
pub fn game_a_fair_root() -> Probability {
    Probability::new(0.5).expect("one half is a probability")
}

/// The compound winning condition: true when the mixed point (pc1, pc2)
/// has fairness ratio strictly above 1.
pub fn compound_condition(pc1: Probability, pc2: Probability, m: u32) -> Result<bool> {
    Ok(fairness_ratio(ProbabilityPoint::new(pc1, pc2), m)? > 1.0)
}

/// Whether a game wins or loses in the long run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Positive drift.
    Win,
    /// Zero or negative drift.
    Lose,
}

impl Verdict {
    /// Labels a drift value; zero counts as losing.
    pub fn from_drift(drift: f64) -> Self {
        if drift > 0.0 {
            Verdict::Win
        } else {
            Verdict::Lose
        }
    }

    /// The opposite verdict.
    pub fn negated(self) -> Self {
        match self {
            Verdict::Win => Verdict::Lose,
            Verdict::Lose => Verdict::Win,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Win => write!(f, "Win"),
            Verdict::Lose => write!(f, "Lose"),
        }
    }
}

/// How surprising a scheme's compound verdict is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Paradox {
    /// The mixture lands on the opposite side of both components.
    VeryStrong,
    /// The mixture escapes the pull of its game B component.
    Strong,
    /// The mixture behaves as expected.
    NotApplicable,
}

impl fmt::Display for Paradox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Paradox::VeryStrong => write!(f, "Very strong"),
            Paradox::Strong => write!(f, "Strong"),
            Paradox::NotApplicable => write!(f, "N/A"),
        }
    }
}

/// Per-scheme verdicts for game A, game B, and their compound, plus the
/// paradox-strength label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeClassification {
    /// Which scheme was classified.
    pub scheme: SchemeId,
    /// Long-run verdict of game A alone.
    pub verdict_a: Verdict,
    /// Long-run verdict of game B alone.
    pub verdict_b: Verdict,
    /// Long-run verdict of the compound game.
    pub verdict_compound: Verdict,
    /// Strength label derived from the three verdicts.
    pub paradox: Paradox,
}

impl SchemeClassification {
    /// The scheme's effect in words, such as "Lose + Lose = Win".
    pub fn description(&self) -> String {
        format!(
            "{} + {} = {}",
            self.verdict_a, self.verdict_b, self.verdict_compound
        )
    }
}

/// Labels a verdict triple. The mixture flipping both components is the
/// very strong case; the mixture siding with game A against game B is the
/// strong one; anything else is unremarkable.
pub fn paradox_label(a: Verdict, b: Verdict, compound: Verdict) -> Paradox {
    if compound != a && compound != b {
        Paradox::VeryStrong
    } else if compound == a && compound != b {
        Paradox::Strong
    } else {
        Paradox::NotApplicable
    }
}

/// Classifies one scheme by exact drift: builds its canonical games, takes
/// the drift sign of each, and labels the triple.
pub fn classify_scheme(
    id: SchemeId,
    bias: BiasParams,
    gamma: Probability,
) -> Result<SchemeClassification> {
    let (a, b, compound) = crate::model::build_scheme(id, bias, gamma)?;
    let verdict_a = Verdict::from_drift(exact_drift(&GameSpec::A(a))?);
    let verdict_b = Verdict::from_drift(exact_drift(&GameSpec::CapitalB(b))?);
    let verdict_compound = Verdict::from_drift(exact_drift(&GameSpec::Compound(compound))?);
    Ok(SchemeClassification {
        scheme: id,
        verdict_a,
        verdict_b,
        verdict_compound,
        paradox: paradox_label(verdict_a, verdict_b, verdict_compound),
    })
}
