//! The (p2, p3) probability square, its fairness boundary, and exact
//! classification of points against it.
//!
//! Every capital-dependent game B is a point in the unit square: p2 is the
//! win probability on multiples of m, p3 the win probability elsewhere. The
//! fair points form a curve p2(p3) on which the products of win and loss
//! probabilities around a cycle balance exactly. Points above the curve
//! win, points below lose, and the signed drift from the stationary
//! distribution of the capital's residue chain quantifies by how much.
//!
//! Run with `cargo run --example probability_space`.

use parrondo::analysis::{
    boundary_p2, classify_point, exact_drift, fairness_ratio, game_a_fair_root, ProbabilityPoint,
    DEFAULT_REGION_TOL,
};
use parrondo::model::{CapitalGameB, GameSpec, Probability};

fn main() -> parrondo::Result<()> {
    parrondo::cli::reset_sigpipe();
    println!("fairness boundary p2(p3), sampled across the square:");
    println!("{:>6} {:>14} {:>14}", "p3", "p2 for m = 3", "p2 for m = 5");
    for i in 1..=9 {
        let p3 = Probability::new(i as f64 / 10.0)?;
        let m3 = boundary_p2(p3, 3)?;
        let m5 = boundary_p2(p3, 5)?;
        println!(
            "{:>6.2} {:>14.6} {:>14.6}",
            p3.value(),
            m3.value(),
            m5.value()
        );
    }
    println!();
    println!("the diagonal p2 = p3 collapses game B to a coin flip, so the curves");
    println!(
        "all cross the diagonal at {}, the fair coin",
        game_a_fair_root()
    );
    println!();

    let samples = [
        (0.09, 0.74, 3),
        (0.10, 0.75, 3),
        (0.12, 0.78, 3),
        (0.11473087818696884, 0.625, 5),
        (0.62, 0.32, 3),
    ];
    println!("classifying sample points at tolerance {DEFAULT_REGION_TOL:e}:");
    println!(
        "{:>22} {:>3} {:>10} {:>16} {:>13}",
        "point", "m", "region", "fairness ratio", "drift"
    );
    for (p2, p3, m) in samples {
        let point = ProbabilityPoint::new(Probability::new(p2)?, Probability::new(p3)?);
        let region = classify_point(point, m, DEFAULT_REGION_TOL)?;
        let ratio = fairness_ratio(point, m)?;
        let game = CapitalGameB::new(point.p2, point.p3, m)?;
        let drift = exact_drift(&GameSpec::CapitalB(game))?;
        println!(
            "{:>22} {:>3} {:>10} {:>16.9} {:>+13.6}",
            format!("({:.6}, {:.6})", point.p2.value(), point.p3.value()),
            m,
            region.to_string(),
            ratio,
            drift
        );
    }
    println!();
    println!("A fairness ratio above 1 always pairs with positive drift and the");
    println!("winning region; below 1 with negative drift and the losing region.");
    println!("The fourth sample sits on the m = 5 boundary itself, where the");
    println!("ratio is 1 and the drift vanishes to machine precision.");
    Ok(())
}
