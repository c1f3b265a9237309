//! Two losing games, alternated at random, produce a winning one.
//!
//! Game A is a coin flip that wins with probability 0.5 - epsilon. Game B
//! consults the capital: on multiples of 3 it wins with probability
//! 0.1 - epsilon, elsewhere with 0.75 - epsilon. Each game on its own
//! drifts downward. Flipping a fair coin before every play to choose
//! between them drifts upward.
//!
//! Run with `cargo run --example paradox`.

use parrondo::analysis::exact_drift;
use parrondo::engine::run_ensemble;
use parrondo::model::{
    build_parrondo_games, BiasParams, CompoundGame, GameB, GameSpec, Probability,
};

const TRIALS: u64 = 2_000;
const GAMES: u64 = 200;
const SEED: u64 = 1;

fn main() -> parrondo::Result<()> {
    parrondo::cli::reset_sigpipe();
    let bias = BiasParams::new(0.005, 3)?;
    let (game_a, game_b) = build_parrondo_games(bias)?;
    let gamma = Probability::new(0.5)?;
    let compound = CompoundGame::new(gamma, game_a, GameB::Capital(game_b));

    println!("game A wins with probability {}", game_a.p1());
    println!(
        "game B wins with probability {} on multiples of {} and {} elsewhere",
        game_b.p2(),
        game_b.m(),
        game_b.p3()
    );
    println!("the compound plays A with probability {gamma}, B otherwise");
    println!();

    let games: [(&str, GameSpec); 3] = [
        ("game A", game_a.into()),
        ("game B", game_b.into()),
        ("compound", compound.into()),
    ];

    println!(
        "{:<10} {:>15} {:>25}",
        "game", "drift per play", "mean capital after 200"
    );
    for (name, spec) in &games {
        let drift = exact_drift(spec)?;
        let stats = run_ensemble(spec, GAMES, TRIALS, SEED)?;
        println!(
            "{:<10} {:>+15.6} {:>15.3} +/- {:.3}",
            name,
            drift,
            stats.final_mean(),
            stats.final_stderr()
        );
    }
    println!();
    println!("Both components lose on every play, yet the mixture wins. The coin");
    println!("flips reshuffle how often the capital sits on a multiple of 3, and");
    println!("the favourable scenario of game B ends up played often enough to");
    println!("tip the balance.");
    Ok(())
}
