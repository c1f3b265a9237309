//! All eight ways to pick winning or losing sides for the three parts of
//! the game pair, classified by exact drift.
//!
//! A scheme chooses, for game A and for each of game B's two scenarios,
//! whether that part is individually winning or losing. Four schemes
//! produce a verdict flip between the components and their mixture. Two of
//! those (a pair of losers combining into a winner and a pair of winners
//! combining into a loser) earn the strongest label; two (where only game B
//! flips against the mixture) the intermediate one. The other four are
//! unremarkable and get no label.
//!
//! Run with `cargo run --example eight_schemes`.

use parrondo::analysis::{classify_scheme, exact_drift};
use parrondo::model::{build_scheme, BiasParams, GameSpec, Probability, SchemeId};

fn main() -> parrondo::Result<()> {
    parrondo::cli::reset_sigpipe();
    let bias = BiasParams::new(0.005, 3)?;
    let gamma = Probability::new(0.5)?;

    println!(
        "{:<8} {:>11} {:>11} {:>11}   {:<20} paradox",
        "scheme", "drift A", "drift B", "drift mix", "verdicts"
    );
    for id in SchemeId::all() {
        let (a, b, compound) = build_scheme(id, bias, gamma)?;
        let drift_a = exact_drift(&GameSpec::A(a))?;
        let drift_b = exact_drift(&GameSpec::CapitalB(b))?;
        let drift_c = exact_drift(&GameSpec::Compound(compound))?;
        let class = classify_scheme(id, bias, gamma)?;
        println!(
            "{:<8} {:>+11.6} {:>+11.6} {:>+11.6}   {:<20} {}",
            id.to_string(),
            drift_a,
            drift_b,
            drift_c,
            class.description(),
            class.paradox
        );
    }
    println!();
    println!("Scheme #8 mirrors #1, #7 mirrors #2, #6 mirrors #3, and #5 mirrors");
    println!("#4: every win probability p is replaced by 1 - p, which negates the");
    println!("drifts and swaps the verdicts.");
    Ok(())
}
