//! A deterministic "paradox" that dissolves on inspection: the claimed
//! losing game was never losing.
//!
//! The simple games move the capital by a fixed amount chosen by its
//! parity. Game A subtracts 2 from odd capital and 1 from even capital;
//! game B adds 6 to odd capital and subtracts 7 from even capital. The
//! claim is that A and B both lose while their random alternation wins.
//! Tracing a few steps shows the flaw: each rule is absorbed into one
//! parity after at most one step and then repeats a single delta forever,
//! and game B's absorbed delta is +6. Pure game B is the best strategy
//! available, and mixing only dilutes it.
//!
//! Run with `cargo run --example refutation`.

use parrondo::analysis::Verdict;
use parrondo::refute::{parity_absorption, simple_step, simulate_simple_compound, SimpleGameRule};

const TRIALS: u64 = 2_000;
const GAMES: u64 = 200;
const SEED: u64 = 3;

fn trace(rule: SimpleGameRule, start: i64, steps: usize) -> String {
    let mut capital = start;
    let mut parts = vec![capital.to_string()];
    for _ in 0..steps {
        capital = simple_step(rule, capital);
        parts.push(capital.to_string());
    }
    parts.join(", ")
}

fn main() -> parrondo::Result<()> {
    parrondo::cli::reset_sigpipe();
    let game_a = SimpleGameRule::game_a();
    let game_b = SimpleGameRule::game_b();

    println!(
        "game A (odd {:+}, even {:+}):",
        game_a.odd_delta(),
        game_a.even_delta()
    );
    println!("  from 9:  {}", trace(game_a, 9, 5));
    println!("  from 10: {}", trace(game_a, 10, 5));
    println!(
        "game B (odd {:+}, even {:+}):",
        game_b.odd_delta(),
        game_b.even_delta()
    );
    println!("  from 9:  {}", trace(game_b, 9, 5));
    println!("  from 10: {}", trace(game_b, 10, 5));
    println!();

    for (name, rule) in [("game A", game_a), ("game B", game_b)] {
        let absorption = parity_absorption(rule, 0);
        let parity = absorption
            .parity
            .map(|p| p.to_string())
            .unwrap_or_else(|| "none".to_string());
        let verdict = Verdict::from_drift(absorption.delta as f64);
        println!(
            "{name} from 0: absorbed into {parity} parity after {} step(s), then {:+} per play ({verdict})",
            absorption.steps, absorption.delta
        );
    }
    println!();

    let pure_a = simulate_simple_compound(1.0, GAMES, 1, SEED)?;
    let pure_b = simulate_simple_compound(0.0, GAMES, 1, SEED)?;
    let mixed = simulate_simple_compound(0.5, GAMES, TRIALS, SEED)?;
    println!("capital after {GAMES} plays from 0:");
    println!(
        "  pure game A: {:>9.1} (deterministic)",
        pure_a.final_mean()
    );
    println!(
        "  pure game B: {:>9.1} (deterministic)",
        pure_b.final_mean()
    );
    println!(
        "  50/50 mix:   {:>9.1} +/- {:.1} over {TRIALS} trials",
        mixed.final_mean(),
        mixed.final_stderr()
    );
    println!();
    println!("The mix wins, but only because game B wins; it earns less than");
    println!("playing B alone. Nothing here turns two losers into a winner,");
    println!("because game B was never a loser.");
    Ok(())
}
