//! Seeded simulation: single plays, whole trajectories, and trial-parallel
//! ensembles.
//!
//! Reproducibility contract: every trial owns an independent random stream
//! keyed by (seed, trial index), and trials are aggregated with exact
//! integer sums. Both pieces together make ensemble statistics
//! bit-identical across runs, thread counts, and trial execution orders.

use crate::error::{Error, Result};
use crate::model::{GameB, GameSpec, Outcome, PlayerState, Probability};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// A reproducible random stream for one simulation trial.
///
/// The generator is ChaCha8 keyed by `seed` with the cipher's stream
/// parameter set to `stream_id`, so any (seed, stream_id) pair names the
/// same infinite bit sequence on every platform and thread schedule.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    /// Opens the stream identified by (seed, stream_id).
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    /// The seed shared by all streams of one experiment.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The per-trial stream identifier.
    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform draw in `[0, 1)` built from 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Bernoulli draw: true with probability `p`.
    pub fn bernoulli(&mut self, p: Probability) -> bool {
        self.next_f64() < p.value()
    }

    /// One uniform draw over the four (before last, last) outcome pairs,
    /// consuming a single generator word.
    pub fn history_pair(&mut self) -> (Outcome, Outcome) {
        let bits = self.rng.next_u64();
        let older = if bits & 1 == 0 {
            Outcome::Lose
        } else {
            Outcome::Win
        };
        let newer = if bits & 2 == 0 {
            Outcome::Lose
        } else {
            Outcome::Win
        };
        (older, newer)
    }
}

/// One simulated capital path; index is the number of plays completed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// Capital after 0, 1, ... plays. Length is the play count plus one.
    pub capitals: Vec<i64>,
}

impl Trajectory {
    /// Capital after the last play.
    pub fn final_capital(&self) -> i64 {
        *self
            .capitals
            .last()
            .expect("a trajectory always holds the initial capital")
    }
}

/// Per-step ensemble statistics over many trials.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleStats {
    /// Mean capital after t plays.
    pub mean: Vec<f64>,
    /// Standard error of the mean after t plays: sample standard deviation
    /// divided by the square root of the trial count.
    pub stderr: Vec<f64>,
    /// Number of trials aggregated.
    pub trials: u64,
    /// Number of plays per trial.
    pub t_max: u64,
}

impl EnsembleStats {
    /// Mean capital after the last play.
    pub fn final_mean(&self) -> f64 {
        *self.mean.last().expect("stats cover at least t = 0")
    }

    /// Standard error after the last play.
    pub fn final_stderr(&self) -> f64 {
        *self.stderr.last().expect("stats cover at least t = 0")
    }
}

/// Draw order, fixed for reproducibility: a compound game first draws its
/// game selection, then the selected game draws its win/lose outcome. Plain
/// probabilistic games draw once per step; the deterministic simple game
/// draws nothing.
fn play(game: &GameSpec, state: &PlayerState, rng: &mut RngStream) -> (i64, Outcome) {
    let won = match game {
        GameSpec::A(a) => rng.bernoulli(a.p1()),
        GameSpec::CapitalB(b) => rng.bernoulli(b.scenario_for(state.capital)),
        GameSpec::HistoryB(h) => {
            let history = state.history.expect("checked by step");
            rng.bernoulli(h.probability_for(history))
        }
        GameSpec::Compound(c) => {
            if rng.bernoulli(c.gamma()) {
                rng.bernoulli(c.game_a().p1())
            } else {
                match c.game_b() {
                    GameB::Capital(b) => rng.bernoulli(b.scenario_for(state.capital)),
                    GameB::History(h) => {
                        let history = state.history.expect("checked by step");
                        rng.bernoulli(h.probability_for(history))
                    }
                }
            }
        }
        GameSpec::Simple(rule) => {
            let delta = rule.delta_for(state.capital);
            return (
                delta,
                if delta > 0 {
                    Outcome::Win
                } else {
                    Outcome::Lose
                },
            );
        }
    };
    if won {
        (1, Outcome::Win)
    } else {
        (-1, Outcome::Lose)
    }
}

/// Plays one round of `game` from `state` and returns the successor state
/// together with the outcome. Games that consult the two-play history
/// require `state.history` to be set, even on steps where a compound game
/// happens to select its history-free component.
pub fn step(
    game: &GameSpec,
    state: &PlayerState,
    rng: &mut RngStream,
) -> Result<(PlayerState, Outcome)> {
    if game.uses_history() && state.history.is_none() {
        return Err(Error::UnsetHistory);
    }
    let (delta, outcome) = play(game, state, rng);
    Ok((state.advanced(delta, outcome), outcome))
}

/// Simulates `t_max` plays from a zero-capital start. History-dependent
/// games get their initial two-play history drawn uniformly from this
/// trial's stream; use [`simulate_trajectory_from`] to pin a fixed history
/// or a different starting capital.
pub fn simulate_trajectory(game: &GameSpec, t_max: u64, rng: &mut RngStream) -> Result<Trajectory> {
    let mut initial = PlayerState::new();
    if game.uses_history() {
        let (older, newer) = rng.history_pair();
        initial = initial.with_history(older, newer);
    }
    simulate_trajectory_from(game, initial, t_max, rng)
}

/// Simulates `t_max` plays from an explicit initial state.
pub fn simulate_trajectory_from(
    game: &GameSpec,
    initial: PlayerState,
    t_max: u64,
    rng: &mut RngStream,
) -> Result<Trajectory> {
    let mut capitals = Vec::with_capacity(t_max as usize + 1);
    capitals.push(initial.capital);
    let mut state = initial;
    for _ in 0..t_max {
        let (next, _) = step(game, &state, rng)?;
        state = next;
        capitals.push(state.capital);
    }
    Ok(Trajectory { capitals })
}

/// Runs `trials` independent trajectories of `game`, trial k on stream
/// (seed, k), and aggregates per-step means and standard errors. Trials may
/// execute on any number of threads in any order; the result is identical
/// either way.
pub fn run_ensemble(game: &GameSpec, t_max: u64, trials: u64, seed: u64) -> Result<EnsembleStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "trials must be at least 1".to_string(),
        ));
    }
    run_ensemble_with(t_max, trials, move |trial| {
        let mut rng = RngStream::new(seed, trial);
        simulate_trajectory(game, t_max, &mut rng).map(|t| t.capitals)
    })
}

struct MomentSums {
    sum: Vec<i64>,
    sum_sq: Vec<i128>,
}

impl MomentSums {
    fn zero(len: usize) -> Self {
        Self {
            sum: vec![0; len],
            sum_sq: vec![0; len],
        }
    }

    fn add_trial(&mut self, capitals: &[i64]) {
        for (i, &c) in capitals.iter().enumerate() {
            self.sum[i] += c;
            self.sum_sq[i] += i128::from(c) * i128::from(c);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.sum.iter_mut().zip(other.sum) {
            *a += b;
        }
        for (a, b) in self.sum_sq.iter_mut().zip(other.sum_sq) {
            *a += b;
        }
        self
    }
}

/// Shared ensemble runner: maps trial indices to capital paths in parallel
/// and reduces exact integer first and second moments. Integer addition is
/// associative and commutative, which is what makes the reduction
/// order-insensitive.
pub(crate) fn run_ensemble_with<F>(t_max: u64, trials: u64, trial_path: F) -> Result<EnsembleStats>
where
    F: Fn(u64) -> Result<Vec<i64>> + Sync,
{
    let len = t_max as usize + 1;
    let sums = (0..trials)
        .into_par_iter()
        .try_fold(
            || MomentSums::zero(len),
            |mut acc, trial| {
                let capitals = trial_path(trial)?;
                debug_assert_eq!(capitals.len(), len);
                acc.add_trial(&capitals);
                Ok::<MomentSums, Error>(acc)
            },
        )
        .try_reduce(|| MomentSums::zero(len), |a, b| Ok(a.merge(b)))?;

    let n = trials as f64;
    let mean: Vec<f64> = sums.sum.iter().map(|&s| s as f64 / n).collect();
    let stderr: Vec<f64> = if trials < 2 {
        vec![0.0; len]
    } else {
        sums.sum
            .iter()
            .zip(&sums.sum_sq)
            .map(|(&s, &sq)| {
                let numerator = i128::from(trials) * sq - i128::from(s) * i128::from(s);
                let variance = numerator as f64 / (n * (n - 1.0));
                (variance / n).sqrt()
            })
            .collect()
    };
    Ok(EnsembleStats {
        mean,
        stderr,
        trials,
        t_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        build_history_games, build_parrondo_games, BiasParams, CapitalGameB, CompoundGame, GameA,
    };
    use proptest::prelude::*;

    fn p(v: f64) -> Probability {
        Probability::new(v).unwrap()
    }

    fn scheme_one() -> (GameSpec, GameSpec, GameSpec) {
        let bias = BiasParams::new(0.005, 3).unwrap();
        let (a, b) = build_parrondo_games(bias).unwrap();
        let compound = CompoundGame::new(p(0.5), a, GameB::Capital(b));
        (
            GameSpec::A(a),
            GameSpec::CapitalB(b),
            GameSpec::Compound(compound),
        )
    }

    /// Exact E[capital after t plays] for a mod-m chain started at residue
    /// zero, by evolving the residue occupancy distribution directly.
    fn exact_mean_capital(win: &[f64], t_max: usize) -> Vec<f64> {
        let m = win.len();
        let mut occupancy = vec![0.0; m];
        occupancy[0] = 1.0;
        let mut means = Vec::with_capacity(t_max + 1);
        let mut mean = 0.0;
        means.push(mean);
        for _ in 0..t_max {
            mean += occupancy
                .iter()
                .zip(win)
                .map(|(q, w)| q * (2.0 * w - 1.0))
                .sum::<f64>();
            let mut next = vec![0.0; m];
            for s in 0..m {
                next[(s + 1) % m] += occupancy[s] * win[s];
                next[(s + m - 1) % m] += occupancy[s] * (1.0 - win[s]);
            }
            occupancy = next;
            means.push(mean);
        }
        means
    }

    #[test]
    fn certain_win_and_loss_trajectories_are_exact() {
        let mut rng = RngStream::new(0, 0);
        let sure_win = GameSpec::A(GameA::new(p(1.0)));
        let t = simulate_trajectory(&sure_win, 5, &mut rng).unwrap();
        assert_eq!(t.capitals, [0, 1, 2, 3, 4, 5]);

        let sure_loss = GameSpec::A(GameA::new(p(0.0)));
        let t = simulate_trajectory(&sure_loss, 3, &mut rng).unwrap();
        assert_eq!(t.capitals, [0, -1, -2, -3]);
    }

    #[test]
    fn zero_length_runs_hold_only_the_start() {
        let (a, _, _) = scheme_one();
        let mut rng = RngStream::new(0, 0);
        let t = simulate_trajectory(&a, 0, &mut rng).unwrap();
        assert_eq!(t.capitals, [0]);
        assert_eq!(t.final_capital(), 0);
    }

    #[test]
    fn scenario_routing_depends_on_capital_divisibility() {
        let win_only_on_multiples =
            GameSpec::CapitalB(CapitalGameB::new(p(1.0), p(0.0), 3).unwrap());
        let mut rng = RngStream::new(0, 0);

        let from_six = PlayerState::with_capital(6);
        let (next, outcome) = step(&win_only_on_multiples, &from_six, &mut rng).unwrap();
        assert_eq!(outcome, Outcome::Win);
        assert_eq!(next.capital, 7);

        let from_minus_two = PlayerState::with_capital(-2);
        let (next, outcome) = step(&win_only_on_multiples, &from_minus_two, &mut rng).unwrap();
        assert_eq!(outcome, Outcome::Lose);
        assert_eq!(next.capital, -3);
    }

    #[test]
    fn negative_capital_routing_matches_true_divisibility_along_walks() {
        let b = CapitalGameB::new(p(0.3), p(0.6), 3).unwrap();
        let game = GameSpec::CapitalB(b);
        let mut rng = RngStream::new(11, 0);
        let mut state = PlayerState::with_capital(-50);
        for _ in 0..500 {
            let expected = if ((state.capital % 3) + 3) % 3 == 0 {
                b.p2()
            } else {
                b.p3()
            };
            assert_eq!(b.scenario_for(state.capital), expected);
            let (next, _) = step(&game, &state, &mut rng).unwrap();
            state = next;
        }
    }

    #[test]
    fn history_games_require_a_seeded_history() {
        let bias = BiasParams::new(0.005, 3).unwrap();
        let (a, h) = build_history_games(bias).unwrap();
        let game = GameSpec::HistoryB(h);
        let mut rng = RngStream::new(0, 0);
        let err = step(&game, &PlayerState::new(), &mut rng);
        assert!(matches!(err, Err(Error::UnsetHistory)));

        let mixed = GameSpec::Compound(CompoundGame::new(p(0.5), a, GameB::History(h)));
        let err = step(&mixed, &PlayerState::new(), &mut rng);
        assert!(matches!(err, Err(Error::UnsetHistory)));

        let seeded = PlayerState::new().with_history(Outcome::Lose, Outcome::Win);
        assert!(step(&game, &seeded, &mut rng).is_ok());
    }

    #[test]
    fn history_trajectories_seed_themselves() {
        let bias = BiasParams::new(0.005, 3).unwrap();
        let (_, h) = build_history_games(bias).unwrap();
        let game = GameSpec::HistoryB(h);
        let mut rng = RngStream::new(4, 9);
        let t = simulate_trajectory(&game, 50, &mut rng).unwrap();
        assert_eq!(t.capitals.len(), 51);
    }

    #[test]
    fn identical_streams_replay_identical_draws() {
        let mut a = RngStream::new(123, 7);
        let mut b = RngStream::new(123, 7);
        for _ in 0..100 {
            assert_eq!(a.next_f64().to_bits(), b.next_f64().to_bits());
        }
        let mut other_stream = RngStream::new(123, 8);
        let same: Vec<u64> = (0..8)
            .map(|_| RngStream::new(123, 7).next_f64().to_bits())
            .collect();
        assert!(same.iter().all(|&x| x == same[0]));
        assert_ne!(RngStream::new(123, 7).next_f64(), other_stream.next_f64());
    }

    #[test]
    fn single_trial_stats_equal_the_trajectory_with_zero_stderr() {
        let (_, b, _) = scheme_one();
        let stats = run_ensemble(&b, 40, 1, 5).unwrap();
        let mut rng = RngStream::new(5, 0);
        let t = simulate_trajectory(&b, 40, &mut rng).unwrap();
        for (i, &c) in t.capitals.iter().enumerate() {
            assert_eq!(stats.mean[i], c as f64);
            assert_eq!(stats.stderr[i], 0.0);
        }
    }

    #[test]
    fn zero_trials_is_an_argument_error() {
        let (a, _, _) = scheme_one();
        assert!(matches!(
            run_ensemble(&a, 10, 0, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn ensembles_are_bitwise_deterministic() {
        let (_, _, compound) = scheme_one();
        let one = run_ensemble(&compound, 60, 300, 17).unwrap();
        let two = run_ensemble(&compound, 60, 300, 17).unwrap();
        for (a, b) in one.mean.iter().zip(&two.mean) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        for (a, b) in one.stderr.iter().zip(&two.stderr) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn thread_count_does_not_change_ensemble_stats() {
        let (_, b, _) = scheme_one();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_ensemble(&b, 50, 400, 2).unwrap());
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(8)
            .build()
            .unwrap()
            .install(|| run_ensemble(&b, 50, 400, 2).unwrap());
        assert_eq!(single, many);
        for (a, b) in single.mean.iter().zip(&many.mean) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn game_a_ensemble_matches_the_closed_form_drift() {
        let (a, _, _) = scheme_one();
        let stats = run_ensemble(&a, 200, 10_000, 0).unwrap();
        let expected = 200.0 * (2.0 * 0.495 - 1.0);
        assert!(
            (stats.final_mean() - expected).abs() <= 0.5,
            "mean {} expected {}",
            stats.final_mean(),
            expected
        );
    }

    #[test]
    fn capital_game_ensembles_match_exact_finite_time_means() {
        let cases: [(&str, Vec<f64>); 2] = [
            ("game B", vec![0.095, 0.745, 0.745]),
            ("compound", vec![0.295, 0.62, 0.62]),
        ];
        for (name, win) in cases {
            let b = CapitalGameB::new(p(win[0]), p(win[1]), 3).unwrap();
            let stats = run_ensemble(&GameSpec::CapitalB(b), 200, 4_000, 3).unwrap();
            let exact = exact_mean_capital(&win, 200);
            let diff = (stats.final_mean() - exact[200]).abs();
            assert!(
                diff <= 4.0 * stats.final_stderr(),
                "{name}: mean {} exact {} stderr {}",
                stats.final_mean(),
                exact[200],
                stats.final_stderr()
            );
        }
    }

    #[test]
    fn reflected_games_drift_the_opposite_way() {
        let (_, b, _) = scheme_one();
        let reflected = crate::model::reflect_game(&b).unwrap();
        let losing = run_ensemble(&b, 200, 4_000, 6).unwrap();
        let winning = run_ensemble(&reflected, 200, 4_000, 6).unwrap();
        assert!(losing.final_mean() < 0.0);
        assert!(winning.final_mean() > 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn probabilistic_trajectories_move_one_dollar_per_play(
            p1 in 0.0..=1.0f64,
            p2 in 0.0..=1.0f64,
            p3 in 0.0..=1.0f64,
            gamma in 0.0..=1.0f64,
            m in 2u32..=6,
            seed in 0u64..1000,
            pick in 0usize..3,
        ) {
            let a = GameA::new(p(p1));
            let b = CapitalGameB::new(p(p2), p(p3), m).unwrap();
            let game = match pick {
                0 => GameSpec::A(a),
                1 => GameSpec::CapitalB(b),
                _ => GameSpec::Compound(CompoundGame::new(p(gamma), a, GameB::Capital(b))),
            };
            let mut rng = RngStream::new(seed, 0);
            let t = simulate_trajectory(&game, 100, &mut rng).unwrap();
            prop_assert_eq!(t.capitals[0], 0);
            for w in t.capitals.windows(2) {
                prop_assert_eq!((w[1] - w[0]).abs(), 1);
            }
        }
    }
}
