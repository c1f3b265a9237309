//! Simulation and exact analysis of Parrondo games: two games that each
//! lose on their own combine into a winning mixture.
//!
//! The library covers the classic capital-dependent construction (game A
//! is a biased coin, game B picks its coin by capital modulo m), the
//! history-dependent variant keyed on the last two outcomes, all eight
//! winning/losing scheme combinations including the reversed paradox,
//! linear and bent mixing paths through probability space, and a
//! deterministic "simple capital-dependent game" that fails to produce the
//! paradox at all.
//!
//! Simulated results are ensemble means over reproducible RNG streams
//! ([`engine`]); exact results come from stationary distributions of the
//! underlying Markov chains ([`analysis`]). The two views are held to
//! agree everywhere, which is what makes the paradoxical cases trustworthy
//! rather than sampling flukes.
//!
//! ```
//! use parrondo::analysis::{classify_scheme, exact_drift, Paradox};
//! use parrondo::model::{build_parrondo_games, BiasParams, Probability};
//! use parrondo::model::{CompoundGame, GameB, GameSpec, SchemeId};
//!
//! # fn main() -> parrondo::Result<()> {
//! let bias = BiasParams::new(0.005, 3)?;
//! let half = Probability::new(0.5)?;
//!
//! // Both component games drift downward...
//! let (a, b) = build_parrondo_games(bias)?;
//! assert!(exact_drift(&GameSpec::A(a))? < 0.0);
//! assert!(exact_drift(&GameSpec::CapitalB(b))? < 0.0);
//!
//! // ...yet alternating them at random drifts upward.
//! let compound = CompoundGame::new(half, a, GameB::Capital(b));
//! assert!(exact_drift(&GameSpec::Compound(compound))? > 0.0);
//!
//! let row = classify_scheme(SchemeId::new(1)?, bias, half)?;
//! assert_eq!(row.description(), "Lose + Lose = Win");
//! assert_eq!(row.paradox, Paradox::VeryStrong);
//! # Ok(())
//! # }
//! ```
//!
//! The `examples/` directory walks through each capability: the original
//! paradox, the history-dependent variant, the eight schemes, the
//! probability-space boundary, the modified construction at m = 5, bent
//! mixing paths, and the refutation of the simple game. The `parrondo`
//! binary exposes the same runs as subcommands that write CSV series.

#![warn(missing_docs)]

pub mod analysis;
pub mod cli;
pub mod engine;
mod error;
pub mod mixing;
pub mod model;
pub mod refute;

pub use error::{Error, Result};
