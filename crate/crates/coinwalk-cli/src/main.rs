//! Command-line front end for the coinwalk library: evolve walks and
//! export distributions, reduce coins to canonical form, run the
//! machine-checked operator identities, and sample dispersion relations.
//!
//! Exit codes are stable for CI use: 0 when the command (and any check it
//! ran) succeeded, 1 when a verification failed or the run hit a guard or
//! I/O failure, 2 on malformed input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use coinwalk::coin::{parse_coin_spec, CoinMatrix, EulerAngles, MATRIX_TOL};
use coinwalk::equivalence::{
    canonical_reduction, check_cumulative_identity, check_rational_field, standard_probes,
    verify_canonical, EquivReport, ProductTransform, RationalField,
};
use coinwalk::lattice::Distribution;
use coinwalk::spectral::{dispersion, momentum_shift};
use coinwalk::walk::{dense_matrix, translation_defect};
use coinwalk::{LatticeConfig, WalkError, WalkSpec, WalkerCoinState};
use num_complex::Complex64;
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Simulation and verification toolkit for one-dimensional coined
/// quantum walks.
#[derive(Parser)]
#[command(name = "coinwalk", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a walk and export its position distribution.
    Simulate(SimulateArgs),
    /// Reduce a coin to the canonical single-parameter walk coin.
    Canonicalize(CanonicalizeArgs),
    /// Run a machine-checked operator identity and report the outcome.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Sample the dispersion relation ω(k) and export it.
    Spectrum(SpectrumArgs),
}

const COIN_HELP: &str = "Coin: euler:η,θ,ξ | axis:φ,rx,ry,rz | matrix:<8 floats>";
const DEFAULT_COIN: &str = "euler:0,1.5707963267948966,0";

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, default_value = DEFAULT_COIN, help = COIN_HELP)]
    coin: String,
    /// Number of walk steps.
    #[arg(long, default_value_t = 10)]
    steps: u64,
    /// Initial state: site=<j>,<up|down|plus|minus|sym> or
    /// site=<j>,<re_up>,<im_up>,<re_down>,<im_down>.
    #[arg(long, default_value = "site=0,up")]
    init: String,
    /// Electric phase Φ; selects the electric walk when present.
    #[arg(long)]
    phi: Option<f64>,
    /// Lattice size; defaults to a padded window auto-sized for the run.
    #[arg(long)]
    lattice: Option<usize>,
    /// Boundary handling.
    #[arg(long, value_enum, default_value_t = BoundaryArg::Padded)]
    boundary: BoundaryArg,
    /// Distribution CSV output path.
    #[arg(long, default_value = "distribution.csv")]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum BoundaryArg {
    /// Finite window with guard sites; walking past the edge is an error.
    Padded,
    /// Cyclic lattice.
    Ring,
}

#[derive(Args)]
struct CanonicalizeArgs {
    #[arg(long, help = COIN_HELP)]
    coin: String,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check that the conjugated three-angle walk equals the θ-only walk.
    Canonical(VerifyCanonicalArgs),
    /// Check the electric walk against its time-dependent-coin equivalent.
    Electric(VerifyElectricArgs),
    /// Check exact revival of a rational-phase electric walk every q steps.
    Rational(VerifyRationalArgs),
    /// Measure how far a walk is from commuting with the ring translation.
    Translation(VerifyTranslationArgs),
}

#[derive(Args)]
struct VerifyCanonicalArgs {
    #[arg(long, help = COIN_HELP)]
    coin: String,
    /// Steps to evolve each probe.
    #[arg(long, default_value_t = 10)]
    steps: u64,
    /// Pass threshold for the largest deviation.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Random probe states added to the two localized ones.
    #[arg(long, default_value_t = 6)]
    probes: usize,
    /// Seed for probe generation, recorded in the report.
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct VerifyElectricArgs {
    /// Canonical coin angle θ.
    #[arg(long)]
    theta: f64,
    /// Electric phase Φ.
    #[arg(long)]
    phi: f64,
    /// Steps to evolve each probe.
    #[arg(long, default_value_t = 20)]
    steps: u64,
    /// Pass threshold for the largest deviation.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Random probe states added to the two localized ones.
    #[arg(long, default_value_t = 6)]
    probes: usize,
    /// Seed for probe generation, recorded in the report.
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct VerifyRationalArgs {
    /// Canonical coin angle θ.
    #[arg(long)]
    theta: f64,
    /// Numerator of Φ = 2πp/q; must be coprime to q.
    #[arg(long)]
    p: i64,
    /// Denominator of Φ = 2πp/q.
    #[arg(long)]
    q: u64,
    /// Number of q-step periods to compare.
    #[arg(long, default_value_t = 4)]
    periods: u64,
    /// Pass threshold for the largest deviation.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Random probe states added to the two localized ones.
    #[arg(long, default_value_t = 6)]
    probes: usize,
    /// Seed for probe generation, recorded in the report.
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct VerifyTranslationArgs {
    #[arg(long, default_value = DEFAULT_COIN, help = COIN_HELP)]
    coin: String,
    /// Electric phase Φ; measures the electric walk when present.
    #[arg(long)]
    phi: Option<f64>,
    /// Ring size.
    #[arg(long, default_value_t = 16)]
    lattice: usize,
    /// Step index whose propagator is tested.
    #[arg(long, default_value_t = 1)]
    steps: u64,
    /// Pass threshold for the defect.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, default_value = DEFAULT_COIN, help = COIN_HELP)]
    coin: String,
    /// Number of momentum samples on (−π, π].
    #[arg(long, default_value_t = 512)]
    samples: usize,
    /// Dispersion CSV output path.
    #[arg(long, default_value = "dispersion.csv")]
    out: PathBuf,
}

/// Failed commands map to the exit-code contract through this split:
/// malformed input exits 2, runtime failures (guard violations, failed
/// writes) exit 1.
enum Failure {
    Invalid(String),
    Runtime(String),
}

impl From<WalkError> for Failure {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::InvalidInput(_)
            | WalkError::SizeLimit(_)
            | WalkError::IncommensurateRingPhase(_) => Failure::Invalid(e.to_string()),
            WalkError::GuardViolation(_) | WalkError::Internal(_) => {
                Failure::Runtime(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

#[derive(Serialize)]
struct SimulateSummary {
    steps: u64,
    mean: f64,
    variance: f64,
    stddev: f64,
    norm_drift: f64,
}

#[derive(Serialize)]
struct CanonicalizeSummary {
    theta: f64,
    w_phase: f64,
    /// Row-major re/im pairs of the coin-space factor X.
    x_matrix: [f64; 8],
    residual_check: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    global_phase: Option<f64>,
    method: String,
}

#[derive(Serialize)]
struct SpectrumSummary {
    samples: u64,
    theta: f64,
    momentum_shift: f64,
    omega_min: f64,
    omega_max: f64,
    max_v_group: f64,
}

fn main() -> ExitCode {
    match run(&Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Canonicalize(a) => cmd_canonicalize(a),
        Command::Verify(VerifyCommand::Canonical(a)) => cmd_verify_canonical(a),
        Command::Verify(VerifyCommand::Electric(a)) => cmd_verify_electric(a),
        Command::Verify(VerifyCommand::Rational(a)) => cmd_verify_rational(a),
        Command::Verify(VerifyCommand::Translation(a)) => cmd_verify_translation(a),
        Command::Spectrum(a) => cmd_spectrum(a),
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<bool, Failure> {
    let parsed = parse_coin_spec(&args.coin)?;
    let (site, coin_state) = parse_init(&args.init)?;
    let spec = match args.phi {
        Some(phi) => WalkSpec::electric(parsed.coin, phi)?,
        None => WalkSpec::simple(parsed.coin),
    };
    let config = simulate_lattice(args, site)?;
    let mut state = WalkerCoinState::localized(site, coin_state, config)?;
    spec.evolve(&mut state, args.steps)?;
    let norm_drift = (state.norm() - 1.0).abs();
    let dist = state.position_distribution();
    write_distribution_csv(&dist, &args.out)?;
    let m = dist.moments();
    print_json(&SimulateSummary {
        steps: args.steps,
        mean: m.mean,
        variance: m.variance,
        stddev: m.stddev,
        norm_drift,
    });
    Ok(true)
}

fn simulate_lattice(args: &SimulateArgs, site: i64) -> Result<LatticeConfig, Failure> {
    let config = match (args.boundary, args.lattice) {
        (BoundaryArg::Ring, size) => {
            let size = size.unwrap_or(16);
            LatticeConfig::ring(size, size / 2)?
        }
        (BoundaryArg::Padded, Some(size)) => LatticeConfig::padded(size, size / 2)?,
        (BoundaryArg::Padded, None) => {
            LatticeConfig::padded_for(site.unsigned_abs() as usize, args.steps as usize)?
        }
    };
    Ok(config)
}

fn cmd_canonicalize(args: &CanonicalizeArgs) -> Result<bool, Failure> {
    let parsed = parse_coin_spec(&args.coin)?;
    let angles = parsed.coin.euler_angles();
    let (theta, transform) = canonical_reduction(&angles);
    let (residual_check, method) = reduction_residual(&angles, theta, &transform)?;
    let e = transform.x.mat().entries();
    print_json(&CanonicalizeSummary {
        theta,
        w_phase: transform.w_phase,
        x_matrix: [
            e[0].re, e[0].im, e[1].re, e[1].im, e[2].re, e[2].im, e[3].re, e[3].im,
        ],
        residual_check,
        global_phase: (parsed.global_phase.abs() > MATRIX_TOL).then_some(parsed.global_phase),
        method: method.to_string(),
    });
    Ok(true)
}

/// Largest deviation of V·Z·V† from the θ-only walk: computed on dense
/// ring matrices when the position-phase gradient closes around a ring of
/// 8 sites, otherwise by comparing evolved probe states on a padded
/// window.
fn reduction_residual(
    angles: &EulerAngles,
    theta: f64,
    transform: &ProductTransform,
) -> Result<(f64, &'static str), Failure> {
    let ring = LatticeConfig::ring(8, 4)?;
    if ring.ring_commensurate(transform.w_phase) {
        let v = transform.dense(ring)?;
        let full = dense_matrix(&WalkSpec::simple(CoinMatrix::from_euler(angles)), ring, 1)?;
        let reduced_coin = CoinMatrix::from_euler(&EulerAngles::new(0.0, theta, 0.0)?);
        let reduced = dense_matrix(&WalkSpec::simple(reduced_coin), ring, 1)?;
        let conjugated = v.mul(&full).mul(&v.adjoint());
        Ok((conjugated.max_abs_diff(&reduced), "dense_ring_conjugation"))
    } else {
        let probes = standard_probes(LatticeConfig::padded_for(2, 10)?, 6, 7)?;
        let report = verify_canonical(angles, 10, &probes, MATRIX_TOL)?;
        Ok((report.max_deviation, "padded_interior_action"))
    }
}

fn cmd_verify_canonical(args: &VerifyCanonicalArgs) -> Result<bool, Failure> {
    let parsed = parse_coin_spec(&args.coin)?;
    let angles = parsed.coin.euler_angles();
    let config = LatticeConfig::padded_for(2, args.steps as usize)?;
    let probes = standard_probes(config, args.probes, args.seed)?;
    let report = verify_canonical(&angles, args.steps, &probes, args.tol)?
        .param("seed", args.seed)
        .param("n_probes", probes.len() as u64);
    emit_report(&report)
}

fn cmd_verify_electric(args: &VerifyElectricArgs) -> Result<bool, Failure> {
    let config = LatticeConfig::padded_for(2, args.steps as usize)?;
    let probes = standard_probes(config, args.probes, args.seed)?;
    let report = check_cumulative_identity(args.theta, args.phi, args.steps, &probes, args.tol)?
        .param("seed", args.seed)
        .param("n_probes", probes.len() as u64);
    emit_report(&report)
}

fn cmd_verify_rational(args: &VerifyRationalArgs) -> Result<bool, Failure> {
    let field = RationalField::new(args.p, args.q)?;
    let total_steps = args.periods * args.q;
    let config = LatticeConfig::padded_for(2, total_steps as usize)?;
    let probes = standard_probes(config, args.probes, args.seed)?;
    let report = check_rational_field(args.theta, &field, args.periods, &probes, args.tol)?
        .param("seed", args.seed)
        .param("n_probes", probes.len() as u64);
    emit_report(&report)
}

fn cmd_verify_translation(args: &VerifyTranslationArgs) -> Result<bool, Failure> {
    let parsed = parse_coin_spec(&args.coin)?;
    let spec = match args.phi {
        Some(phi) => WalkSpec::electric(parsed.coin, phi)?,
        None => WalkSpec::simple(parsed.coin),
    };
    let config = LatticeConfig::ring(args.lattice, args.lattice / 2)?;
    let probes = WalkerCoinState::basis(config);
    let defect = translation_defect(&spec, &probes, args.steps)?;
    let mut report = EquivReport::new("translation_invariance", args.steps, defect, args.tol)
        .param("lattice", args.lattice as u64);
    if let Some(phi) = args.phi {
        report = report.param("phi", phi);
    }
    emit_report(&report)
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<bool, Failure> {
    let parsed = parse_coin_spec(&args.coin)?;
    let curve = dispersion(&parsed.coin, args.samples)?;
    let mut w = BufWriter::new(File::create(&args.out)?);
    curve.write_csv(&mut w)?;
    w.flush()?;
    let angles = parsed.coin.euler_angles();
    let (omega_min, omega_max) = curve.omega_range();
    print_json(&SpectrumSummary {
        samples: args.samples as u64,
        theta: angles.theta,
        momentum_shift: momentum_shift(&parsed.coin),
        omega_min,
        omega_max,
        max_v_group: curve.max_group_speed(),
    });
    Ok(true)
}

/// Parses `site=<j>,<coin>` where `<coin>` names a standard coin state or
/// gives four floats re_up,im_up,re_down,im_down (normalized on use).
fn parse_init(spec: &str) -> Result<(i64, [Complex64; 2]), Failure> {
    let invalid = || Failure::Invalid(format!("malformed init spec `{spec}`"));
    let rest = spec.strip_prefix("site=").ok_or_else(invalid)?;
    let fields: Vec<&str> = rest.split(',').collect();
    let site: i64 = fields
        .first()
        .and_then(|f| f.trim().parse().ok())
        .ok_or_else(invalid)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::ZERO;
    let imag = Complex64::new(0.0, 1.0);
    let coin = match &fields[1..] {
        [name] => match name.trim() {
            "up" => [one, zero],
            "down" => [zero, one],
            "plus" => [one, one],
            "minus" => [one, -one],
            "sym" => [one, imag],
            _ => return Err(invalid()),
        },
        [a, b, c, d] => {
            let f = |t: &str| -> Result<f64, Failure> {
                let x: f64 = t.trim().parse().map_err(|_| invalid())?;
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(invalid())
                }
            };
            [
                Complex64::new(f(a)?, f(b)?),
                Complex64::new(f(c)?, f(d)?),
            ]
        }
        _ => return Err(invalid()),
    };
    Ok((site, coin))
}

/// Writes `site,probability` rows for every site carrying probability,
/// ascending. Unreached sites hold exact zeros and are omitted.
fn write_distribution_csv(dist: &Distribution, path: &Path) -> Result<(), Failure> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "site,probability")?;
    for (site, p) in dist.iter() {
        if p > 0.0 {
            writeln!(w, "{site},{p:.16e}")?;
        }
    }
    w.flush()?;
    Ok(())
}

fn print_json<T: Serialize>(summary: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(summary).expect("summary serialization cannot fail")
    );
}

fn emit_report(report: &EquivReport) -> Result<bool, Failure> {
    println!("{}", report.to_json_string());
    Ok(report.pass)
}
