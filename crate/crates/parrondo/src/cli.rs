//! Command-line front end. Settings come from flags layered over an
//! optional TOML config file; each subcommand runs simulations or exact
//! analyses and writes CSV series (optionally with companion SVG charts)
//! plus a short summary on stdout.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::analysis::{
    boundary_p2, classify_point, classify_scheme, exact_drift, fairness_ratio, ProbabilityPoint,
    DEFAULT_REGION_TOL,
};
use crate::engine::{run_ensemble, EnsembleStats};
use crate::error::{Error, Result};
use crate::mixing::{compound_from_point, path_point, signed_boundary_distance, MixPath};
use crate::model::{
    build_history_games, build_modified_games, build_parrondo_games, build_scheme, BiasParams,
    CompoundGame, GameB, GameSpec, Probability, SchemeId,
};
use crate::refute::{parity_absorption, simple_step, simulate_simple_compound, SimpleGameRule};

const DEFAULT_EPSILON: f64 = 0.005;
const DEFAULT_M: u32 = 3;
const DEFAULT_GAMMA: f64 = 0.5;
const DEFAULT_TRIALS: u64 = 10_000;
const DEFAULT_GAMES: u64 = 200;
const DEFAULT_SEED: u64 = 0;
const DEFAULT_BOUNDARY_SAMPLES: u32 = 1001;
const DEFAULT_KAPPAS: [f64; 4] = [-0.05, 0.0, 0.05, 0.1];

#[derive(Parser, Debug)]
#[command(
    name = "parrondo",
    version,
    about = "Simulate and analyze Parrondo games",
    max_term_width = 100
)]
struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Biasing parameter applied to every win probability.
    #[arg(long, global = true, value_name = "EPS")]
    epsilon: Option<f64>,

    /// Modulus of the capital condition.
    #[arg(long, global = true, value_name = "M")]
    m: Option<u32>,

    /// Probability of picking game A at each compound step.
    #[arg(long, global = true, value_name = "GAMMA")]
    gamma: Option<f64>,

    /// Number of independent trials per ensemble.
    #[arg(long, global = true, value_name = "N")]
    trials: Option<u64>,

    /// Number of games played per trial (the time horizon).
    #[arg(long, global = true, value_name = "T")]
    games: Option<u64>,

    /// Base seed; trial k draws from stream k of this seed.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    /// Directory for CSV and SVG output.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Also write a line-chart SVG next to each CSV.
    #[arg(long, global = true)]
    svg: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate games A and B and their compound, one CSV per game.
    Simulate {
        /// Winning/losing scheme (1..8) to draw the game pair from.
        #[arg(long, value_name = "ID")]
        scheme: Option<u8>,

        /// Which family game B comes from.
        #[arg(long, value_enum)]
        variant: Option<Variant>,
    },
    /// Sample the fair boundary curve into a CSV.
    Boundary {
        /// Number of evenly spaced samples over [0, 1].
        #[arg(long, value_name = "N")]
        samples: Option<u32>,
    },
    /// Classify one (p2, p3) point against the boundary.
    Classify {
        /// Scenario 1 win probability.
        p2: f64,
        /// Scenario 2 win probability.
        p3: f64,
        /// Modulus; defaults to the global --m.
        m: Option<u32>,
    },
    /// Print the eight-scheme classification table.
    Schemes,
    /// Build mixing paths, simulate each midpoint compound game.
    Mix {
        /// Path curvature; repeat the flag for several paths.
        #[arg(long, value_name = "K")]
        kappa: Vec<f64>,
    },
    /// Demonstrate the simple capital-dependent game's failure.
    Refute,
}

/// Which kind of game B a simulation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// Win probability keyed by capital modulo m.
    Capital,
    /// Win probability keyed by the last two outcomes.
    History,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    epsilon: Option<f64>,
    m: Option<u32>,
    gamma: Option<f64>,
    trials: Option<u64>,
    games: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    svg: Option<bool>,
    scheme: Option<u8>,
    variant: Option<String>,
    samples: Option<u32>,
    kappa: Option<Vec<f64>>,
}

impl ConfigFile {
    fn variant(&self) -> Result<Option<Variant>> {
        match self.variant.as_deref() {
            None => Ok(None),
            Some("capital") => Ok(Some(Variant::Capital)),
            Some("history") => Ok(Some(Variant::History)),
            Some(other) => Err(Error::InvalidArgument(format!(
                "variant must be \"capital\" or \"history\", got \"{other}\""
            ))),
        }
    }
}

#[derive(Debug)]
struct Settings {
    bias: BiasParams,
    gamma: Probability,
    trials: u64,
    games: u64,
    seed: u64,
    out: PathBuf,
    svg: bool,
}

fn load_config(path: &Path) -> Result<ConfigFile> {
    let text = fs::read_to_string(path).map_err(|e| io_at(path, e))?;
    toml::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("config file {}: {e}", path.display())))
}

fn resolve_settings(cli: &Cli, file: &ConfigFile) -> Result<Settings> {
    let epsilon = cli.epsilon.or(file.epsilon).unwrap_or(DEFAULT_EPSILON);
    let m = cli.m.or(file.m).unwrap_or(DEFAULT_M);
    let gamma = cli.gamma.or(file.gamma).unwrap_or(DEFAULT_GAMMA);
    let trials = cli.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let games = cli.games.or(file.games).unwrap_or(DEFAULT_GAMES);
    let seed = cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    let out = cli
        .out
        .clone()
        .or_else(|| file.out.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "trials must be at least 1".to_string(),
        ));
    }
    Ok(Settings {
        bias: BiasParams::new(epsilon, m)?,
        gamma: Probability::new(gamma)?,
        trials,
        games,
        seed,
        out,
        svg: cli.svg || file.svg.unwrap_or(false),
    })
}

/// Formats a value with 12 significant digits, the fixed precision of all
/// CSV output. Zero prints as "0" and non-finite values by their usual
/// names.
fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let decimals = (11 - x.abs().log10().floor() as i64).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Attaches the offending path to an I/O error, which `std::io` alone does
/// not report.
fn io_at(path: &Path, err: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(
        err.kind(),
        format!("{}: {err}", path.display()),
    ))
}

fn write_series_csv(path: &Path, stats: &EnsembleStats) -> Result<()> {
    let mut body = String::from("t,mean_capital,stderr\n");
    for t in 0..=stats.t_max {
        let i = t as usize;
        body.push_str(&format!(
            "{t},{},{}\n",
            fmt_sig(stats.mean[i]),
            fmt_sig(stats.stderr[i])
        ));
    }
    fs::write(path, body).map_err(|e| io_at(path, e))?;
    Ok(())
}

fn padded_bounds(values: &[f64]) -> (f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min == max {
        return (min - 1.0, max + 1.0);
    }
    let pad = 0.04 * (max - min);
    (min - pad, max + pad)
}

fn tick_label(x: f64) -> String {
    let s = format!("{x:.3}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    if trimmed.is_empty() || trimmed == "-" {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

fn chart_svg(title: &str, x_label: &str, y_label: &str, xs: &[f64], ys: &[f64]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const LEFT: f64 = 64.0;
    const RIGHT: f64 = 18.0;
    const TOP: f64 = 32.0;
    const BOTTOM: f64 = 44.0;

    let (x_min, x_max) = padded_bounds(xs);
    let (y_min, y_max) = padded_bounds(ys);
    let to_x = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * (W - LEFT - RIGHT);
    let to_y = |y: f64| H - BOTTOM - (y - y_min) / (y_max - y_min) * (H - TOP - BOTTOM);

    let mut points = String::new();
    for (x, y) in xs.iter().zip(ys) {
        points.push_str(&format!("{:.2},{:.2} ", to_x(*x), to_y(*y)));
    }

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{W}\" height=\"{H}\" fill=\"#ffffff\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"14\">{title}</text>\n",
        W / 2.0
    ));
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{:.2}\" stroke=\"#333333\"/>\n",
        H - BOTTOM
    ));
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333333\"/>\n",
        H - BOTTOM,
        W - RIGHT,
        H - BOTTOM
    ));
    for (value, x, y, anchor) in [
        (x_min, to_x(x_min), H - BOTTOM + 16.0, "middle"),
        (x_max, to_x(x_max), H - BOTTOM + 16.0, "middle"),
    ] {
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"{anchor}\" \
             font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">{}</text>\n",
            tick_label(value)
        ));
    }
    for (value, y) in [(y_min, to_y(y_min)), (y_max, to_y(y_max))] {
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"11\" fill=\"#333333\">{}</text>\n",
            LEFT - 6.0,
            y + 4.0,
            tick_label(value)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\" fill=\"#333333\">{x_label}</text>\n",
        (LEFT + W - RIGHT) / 2.0,
        H - 8.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\" fill=\"#333333\" transform=\"rotate(-90 16 {:.2})\">{y_label}</text>\n",
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0
    ));
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#2563eb\" stroke-width=\"1.5\"/>\n",
        points.trim_end()
    ));
    svg.push_str("</svg>\n");
    svg
}

fn write_series_svg(path: &Path, title: &str, stats: &EnsembleStats) -> Result<()> {
    let xs: Vec<f64> = (0..=stats.t_max).map(|t| t as f64).collect();
    fs::write(
        path,
        chart_svg(title, "t", "mean capital", &xs, &stats.mean),
    )
    .map_err(|e| io_at(path, e))?;
    Ok(())
}

fn emit_series(settings: &Settings, name: &str, stats: &EnsembleStats) -> Result<()> {
    let csv = settings.out.join(format!("{name}.csv"));
    write_series_csv(&csv, stats)?;
    println!("wrote {}", csv.display());
    if settings.svg {
        let svg = settings.out.join(format!("{name}.svg"));
        write_series_svg(&svg, name, stats)?;
        println!("wrote {}", svg.display());
    }
    Ok(())
}

fn cmd_simulate(settings: &Settings, scheme: Option<u8>, variant: Variant) -> Result<()> {
    if scheme.is_some() && variant == Variant::History {
        return Err(Error::InvalidArgument(
            "--scheme picks capital-dependent pairs and cannot be combined with \
             the history variant"
                .to_string(),
        ));
    }
    let (game_a, game_b, compound): (GameSpec, GameSpec, GameSpec) = match (scheme, variant) {
        (Some(id), _) => {
            let (a, b, c) = build_scheme(SchemeId::new(id)?, settings.bias, settings.gamma)?;
            (a.into(), b.into(), c.into())
        }
        (None, Variant::History) => {
            let (a, h) = build_history_games(settings.bias)?;
            let c = CompoundGame::new(settings.gamma, a, GameB::History(h));
            (a.into(), h.into(), c.into())
        }
        (None, Variant::Capital) => {
            let (a, b) = if settings.bias.m() == 5 {
                build_modified_games(settings.bias)?
            } else {
                build_parrondo_games(settings.bias)?
            };
            let c = CompoundGame::new(settings.gamma, a, GameB::Capital(b));
            (a.into(), b.into(), c.into())
        }
    };

    fs::create_dir_all(&settings.out).map_err(|e| io_at(&settings.out, e))?;
    let mut finals = Vec::new();
    for (name, game) in [
        ("game_a", &game_a),
        ("game_b", &game_b),
        ("compound", &compound),
    ] {
        let stats = run_ensemble(game, settings.games, settings.trials, settings.seed)?;
        emit_series(settings, name, &stats)?;
        finals.push(stats.final_mean());
    }
    println!(
        "mean final capital: game A {}, game B {}, compound {}",
        fmt_sig(finals[0]),
        fmt_sig(finals[1]),
        fmt_sig(finals[2])
    );
    println!(
        "exact drift per play: game A {}, game B {}, compound {}",
        fmt_sig(exact_drift(&game_a)?),
        fmt_sig(exact_drift(&game_b)?),
        fmt_sig(exact_drift(&compound)?)
    );
    Ok(())
}

fn cmd_boundary(settings: &Settings, samples: u32) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "boundary sampling needs at least 2 samples, got {samples}"
        )));
    }
    let m = settings.bias.m();
    let mut p3s = Vec::with_capacity(samples as usize);
    let mut p2s = Vec::with_capacity(samples as usize);
    for i in 0..samples {
        let p3 = f64::from(i) / f64::from(samples - 1);
        p3s.push(p3);
        p2s.push(boundary_p2(Probability::new(p3)?, m)?.value());
    }

    fs::create_dir_all(&settings.out).map_err(|e| io_at(&settings.out, e))?;
    let mut body = String::from("p3,p2\n");
    for (p3, p2) in p3s.iter().zip(&p2s) {
        body.push_str(&format!("{},{}\n", fmt_sig(*p3), fmt_sig(*p2)));
    }
    let csv = settings.out.join("boundary.csv");
    fs::write(&csv, body).map_err(|e| io_at(&csv, e))?;
    println!("wrote {}", csv.display());
    if settings.svg {
        let svg = settings.out.join("boundary.svg");
        let title = format!("fair boundary, m = {m}");
        fs::write(&svg, chart_svg(&title, "p3", "p2", &p3s, &p2s)).map_err(|e| io_at(&svg, e))?;
        println!("wrote {}", svg.display());
    }
    println!("boundary curve for m = {m}: {samples} samples");
    Ok(())
}

fn cmd_classify(settings: &Settings, p2: f64, p3: f64, m: Option<u32>) -> Result<()> {
    let m = m.unwrap_or(settings.bias.m());
    let point = ProbabilityPoint::new(Probability::new(p2)?, Probability::new(p3)?);
    let region = classify_point(point, m, DEFAULT_REGION_TOL)?;
    let ratio = fairness_ratio(point, m)?;
    let drift = match exact_drift(&GameSpec::CapitalB(compound_from_point(point, m)?)) {
        Ok(d) => fmt_sig(d),
        Err(Error::DegenerateChain(_)) => "n/a (degenerate chain)".to_string(),
        Err(e) => return Err(e),
    };
    println!("point ({}, {}), m = {m}", fmt_sig(p2), fmt_sig(p3));
    println!("region: {region}");
    println!("fairness ratio: {}", fmt_sig(ratio));
    println!("exact drift: {drift}");
    Ok(())
}

fn cmd_schemes(settings: &Settings) -> Result<()> {
    println!(
        "{:<8}{:<8}{:<8}{:<10}{:<20}paradox",
        "scheme", "game A", "game B", "compound", "effect"
    );
    for id in SchemeId::all() {
        let row = classify_scheme(id, settings.bias, settings.gamma)?;
        println!(
            "{:<8}{:<8}{:<8}{:<10}{:<20}{}",
            row.scheme.to_string(),
            row.verdict_a.to_string(),
            row.verdict_b.to_string(),
            row.verdict_compound.to_string(),
            row.description(),
            row.paradox
        );
    }
    Ok(())
}

fn cmd_mix(settings: &Settings, kappas: &[f64]) -> Result<()> {
    if kappas.is_empty() {
        return Err(Error::InvalidArgument(
            "mixing needs at least one kappa".to_string(),
        ));
    }
    let m = settings.bias.m();
    let (a, b) = if m == 5 {
        build_modified_games(settings.bias)?
    } else {
        build_parrondo_games(settings.bias)?
    };
    let endpoint_a = ProbabilityPoint::new(a.p1(), a.p1());
    let endpoint_b = ProbabilityPoint::new(b.p2(), b.p3());

    fs::create_dir_all(&settings.out).map_err(|e| io_at(&settings.out, e))?;
    for (i, &kappa) in kappas.iter().enumerate() {
        let path = MixPath::bent(endpoint_a, endpoint_b, kappa)?;
        let mid = path_point(&path, 0.5)?;
        let game = compound_from_point(mid, m)?;
        let drift = exact_drift(&GameSpec::CapitalB(game))?;
        let distance = signed_boundary_distance(mid, m)?;
        let stats = run_ensemble(
            &GameSpec::CapitalB(game),
            settings.games,
            settings.trials,
            settings.seed,
        )?;
        emit_series(settings, &format!("mix_{}", i + 1), &stats)?;
        println!(
            "path {}: kappa {kappa}, midpoint ({}, {}), drift {}, distance {}, mean final {}",
            i + 1,
            fmt_sig(mid.p2.value()),
            fmt_sig(mid.p3.value()),
            fmt_sig(drift),
            fmt_sig(distance),
            fmt_sig(stats.final_mean())
        );
    }
    Ok(())
}

fn cmd_refute(settings: &Settings) -> Result<()> {
    for start in [9i64, 10] {
        let mut capital = start;
        let mut trace = vec![capital.to_string()];
        for _ in 0..4 {
            capital = simple_step(SimpleGameRule::game_b(), capital);
            trace.push(capital.to_string());
        }
        println!("game B trace from {start}: {}", trace.join(","));
    }

    for (name, rule) in [
        ("game A", SimpleGameRule::game_a()),
        ("game B", SimpleGameRule::game_b()),
    ] {
        let report = parity_absorption(rule, 0);
        match report.parity {
            Some(parity) => {
                let verdict = if report.delta > 0 {
                    "WINNING"
                } else {
                    "LOSING"
                };
                println!(
                    "{name}: {verdict} (absorbed parity {parity}, {:+}/step)",
                    report.delta
                );
            }
            None => println!("{name}: no parity absorption within {} steps", report.steps),
        }
    }

    fs::create_dir_all(&settings.out).map_err(|e| io_at(&settings.out, e))?;
    let mut finals = Vec::new();
    for (name, gamma) in [
        ("refute_a", 1.0),
        ("refute_b", 0.0),
        ("refute_compound", settings.gamma.value()),
    ] {
        let stats =
            simulate_simple_compound(gamma, settings.games, settings.trials, settings.seed)?;
        emit_series(settings, name, &stats)?;
        finals.push(stats.final_mean());
    }
    let verdict = if finals[2] > 0.0 { "WINNING" } else { "LOSING" };
    let comparison = if finals[2] < finals[1] {
        "below"
    } else {
        "not below"
    };
    println!(
        "compound (gamma = {}): {verdict}, mean final {}, {comparison} pure game B's {}",
        settings.gamma,
        fmt_sig(finals[2]),
        fmt_sig(finals[1])
    );
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    let settings = resolve_settings(&cli, &file)?;
    match cli.command {
        Command::Simulate { scheme, variant } => {
            let scheme = scheme.or(file.scheme);
            let variant = variant.or(file.variant()?).unwrap_or(Variant::Capital);
            cmd_simulate(&settings, scheme, variant)
        }
        Command::Boundary { samples } => {
            let samples = samples.or(file.samples).unwrap_or(DEFAULT_BOUNDARY_SAMPLES);
            cmd_boundary(&settings, samples)
        }
        Command::Classify { p2, p3, m } => cmd_classify(&settings, p2, p3, m),
        Command::Schemes => cmd_schemes(&settings),
        Command::Mix { kappa } => {
            let kappas = if !kappa.is_empty() {
                kappa
            } else {
                file.kappa
                    .clone()
                    .unwrap_or_else(|| DEFAULT_KAPPAS.to_vec())
            };
            cmd_mix(&settings, &kappas)
        }
        Command::Refute => cmd_refute(&settings),
    }
}

fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::Io(_) => 3,
        _ => 2,
    }
}

/// Restores terminate-on-SIGPIPE so that piping output into a pager or
/// `head` ends the process quietly instead of panicking on the first write
/// after the reader exits (Rust binaries ignore SIGPIPE by default). Call
/// once at the top of `main`; does nothing on non-unix targets.
pub fn reset_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

/// Parses arguments, runs the selected command, and returns the process
/// exit code: 0 on success, 2 for argument errors, 3 for I/O failures.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(error) => {
            eprintln!("error: {error}");
            exit_code_for(&error)
        }
    }
}
