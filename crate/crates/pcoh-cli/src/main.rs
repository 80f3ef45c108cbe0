//! Batch command-line front end for the partial-coherence library.
//!
//! Every invocation writes exactly one JSON document to stdout;
//! diagnostics go to stderr. Exit codes: 0 success, 1 domain error (bad
//! state file, failed precondition), 2 usage error, 3 verification suite
//! reported violations.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use pcoh::entangle::MinimizationSummary;
use pcoh::json::{ChannelFile, DensityFile, ProbFile, RationalProbFile, StateFile};
use pcoh::{
    ent_mixed, ent_pure, is_catalyst, is_catalyst_exact, maximal_state, pcoh_mixed, pcoh_pure,
    pio_convertible, prepare_from_maximal, run_suite, sampled_min_partial_coherence,
    synthesize_pio, DensityMatrix, Party, PcvMode, PureState, Report, RoofConfig, Scf, SuiteConfig,
    SuiteId, Tolerance,
};

#[derive(Parser)]
#[command(
    name = "pcoh",
    about = "Partial coherence toolbox: measures, PIO convertibility and synthesis, verification suites",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherence vector of a pure state (party a, party b, or full).
    Pcv {
        #[arg(long)]
        state: PathBuf,
        /// One of `a`, `b`, `full`.
        #[arg(long, default_value = "a")]
        party: String,
    },
    /// Schmidt decomposition of a pure state.
    Schmidt {
        #[arg(long)]
        state: PathBuf,
    },
    /// Partial coherence measure: `f(psi_party)` for pure states, the
    /// convex roof for density matrices.
    Measure {
        #[arg(long)]
        state: PathBuf,
        /// Symmetric concave function id (shannon, one_minus_max, one_minus_purity).
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "a")]
        party: String,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Induced entanglement: `f(p)` for pure states (optionally the
    /// sampled minimum over local unitaries), the convex roof for
    /// density matrices.
    Entangle {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        f: String,
        /// Monte Carlo unitary samples (pure states only).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide PIO convertibility between two pure states.
    ConvertCheck {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Catalysis check on probability-vector files.
    CatalystCheck {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        catalyst: PathBuf,
        /// Exact mode: vectors given as `[[num, den], ..]` rationals.
        #[arg(long)]
        rational: bool,
    },
    /// Synthesize an explicit PIO pipeline for a convertible pair.
    Synthesize {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Emit the single-stage (flattened) form.
        #[arg(long)]
        flatten: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a maximal partial coherent state.
    Maximal {
        #[arg(long)]
        da: usize,
        #[arg(long)]
        db: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// PIO channel preparing a target density matrix from the canonical
    /// maximal state.
    Prepare {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and emit its report.
    Verify {
        #[arg(long)]
        suite: String,
        /// Trial count (suite default when omitted).
        #[arg(long)]
        n: Option<usize>,
        /// Dimension pairs like `3x2,4x4` (suite default when omitted).
        #[arg(long)]
        dims: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
        /// Inner samples per trial where the suite uses them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => write!(f, "{m}"),
        }
    }
}

impl From<pcoh::Error> for CliError {
    fn from(e: pcoh::Error) -> Self {
        match e {
            pcoh::Error::UnknownFunction(_)
            | pcoh::Error::UnknownSuite(_)
            | pcoh::Error::InvalidParty(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode, CliError> {
    let tol = Tolerance::DEFAULT;
    match cmd {
        Command::Pcv { state, party } => {
            let s = read_state(&state, &tol)?;
            let mode = parse_mode(&party)?;
            let p = pcoh::coherence_vector(&s, mode);
            emit(&ProbFile::from_prob(&p))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Schmidt { state } => {
            let s = read_state(&state, &tol)?;
            let dec = s.schmidt(&tol).map_err(CliError::from)?;
            let matrix = |m: &pcoh::linalg::CMat| -> Vec<Vec<(f64, f64)>> {
                (0..m.nrows())
                    .map(|i| {
                        (0..m.ncols())
                            .map(|j| (m[(i, j)].re, m[(i, j)].im))
                            .collect()
                    })
                    .collect()
            };
            emit(&json!({
                "coeffs": dec.coeffs.entries(),
                "basis_a": matrix(&dec.basis_a),
                "basis_b": matrix(&dec.basis_b),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Measure {
            state,
            f,
            party,
            restarts,
            seed,
        } => {
            let f = Scf::builtin(&f)?;
            let party = parse_party(&party)?;
            match read_state_or_density(&state, &tol)? {
                Input::Pure(s) => {
                    emit(&json!({ "value": pcoh_pure(&s, &f, party) }))?;
                }
                Input::Density(rho) => {
                    let cfg = roof_config(restarts, seed);
                    let r = pcoh_mixed(&rho, &f, party, &cfg)?;
                    eprintln!(
                        "roof: converged={} evaluations={} ensemble={}",
                        r.converged,
                        r.evaluations,
                        r.ensemble.states.len()
                    );
                    emit(&json!({ "value": r.value }))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Entangle {
            state,
            f,
            samples,
            restarts,
            seed,
        } => {
            let scf = Scf::builtin(&f)?;
            match read_state_or_density(&state, &tol)? {
                Input::Pure(s) => match samples {
                    Some(n) => {
                        let seed = resolve_seed(seed);
                        let r = sampled_min_partial_coherence(&s, &scf, n, seed);
                        emit(&MinimizationSummary {
                            value: r.value,
                            f: scf.id().to_string(),
                            seed,
                            samples: r.samples_used,
                        })?;
                    }
                    None => {
                        emit(&json!({ "value": ent_pure(&s, &scf) }))?;
                    }
                },
                Input::Density(rho) => {
                    let cfg = roof_config(restarts, seed);
                    let r = ent_mixed(&rho, &scf, &cfg)?;
                    eprintln!(
                        "roof: converged={} evaluations={} ensemble={}",
                        r.converged,
                        r.evaluations,
                        r.ensemble.states.len()
                    );
                    emit(&json!({ "value": r.value }))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ConvertCheck { from, to } => {
            let src = read_state(&from, &tol)?;
            let dst = read_state(&to, &tol)?;
            let forward = pio_convertible(&src, &dst, &tol)?;
            let reverse = pio_convertible(&dst, &src, &tol)?;
            let relation = match (forward, reverse) {
                (true, true) => "both",
                (true, false) => "forward",
                (false, true) => "reverse",
                (false, false) => "incomparable",
            };
            emit(&json!({ "convertible": forward, "relation": relation }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CatalystCheck {
            from,
            to,
            catalyst,
            rational,
        } => {
            let outcome = if rational {
                let src = read_rational(&from)?;
                let dst = read_rational(&to)?;
                let cat = read_rational(&catalyst)?;
                is_catalyst_exact(&cat, &src, &dst)?
            } else {
                let src = read_prob(&from, &tol)?;
                let dst = read_prob(&to, &tol)?;
                let cat = read_prob(&catalyst, &tol)?;
                is_catalyst(&cat, &src, &dst, &tol)
            };
            emit(&json!({ "outcome": outcome.as_str() }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Synthesize {
            from,
            to,
            flatten,
            out,
        } => {
            let src = read_state(&from, &tol)?;
            let dst = read_state(&to, &tol)?;
            let pipe = synthesize_pio(&src, &dst, &tol)?;
            let fidelity = pipe
                .apply(&src.density())
                .and_then(|rho| rho.fidelity_pure(&dst))?;
            eprintln!("fidelity: {fidelity:.15}");
            let file = if flatten {
                ChannelFile::from_kraus(&pipe.flatten()?)
            } else {
                ChannelFile::from_pipeline(&pipe)
            };
            emit_with_copy(&file, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Maximal { da, db, out } => {
            if da == 0 || db == 0 {
                return Err(CliError::Usage("dimensions must be positive".into()));
            }
            let e0: Vec<Complex64> = {
                let mut v = vec![Complex64::new(0.0, 0.0); db];
                v[0] = Complex64::new(1.0, 0.0);
                v
            };
            let s = maximal_state(da, &vec![e0; da], &tol)?;
            emit_with_copy(&StateFile::from_state(&s), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Prepare { state, out } => {
            let rho = read_density(&state, &tol)?;
            let pipe = prepare_from_maximal(&rho, &tol)?;
            emit_with_copy(&ChannelFile::from_pipeline(&pipe), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            n,
            dims,
            seed,
            restarts,
            samples,
            out,
        } => {
            let suite = SuiteId::from_str(&suite)?;
            let mut cfg = SuiteConfig::new(suite);
            if let Some(n) = n {
                cfg.trials = n;
            }
            if let Some(spec) = dims {
                cfg.dims = parse_dims(&spec)?;
            }
            cfg.seed = resolve_seed(seed);
            if let Some(r) = restarts {
                cfg.roof.restarts = r;
            }
            cfg.samples = samples;
            let report = run_suite(&cfg)?;
            let text = encode_report(&report).map_err(CliError::Domain)?;
            println!("{text}");
            if let Some(path) = out {
                fs::write(&path, &text).map_err(|e| {
                    CliError::Domain(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            if report.violations > 0 {
                eprintln!("{} violations detected", report.violations);
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Canonical report encoding: struct field order, shortest round-trip
/// floats. `decode . encode` is the identity on this form.
fn encode_report(r: &Report) -> Result<String, String> {
    serde_json::to_string(r).map_err(|e| e.to_string())
}

enum Input {
    Pure(PureState),
    Density(DensityMatrix),
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))
}

fn read_state(path: &Path, tol: &Tolerance) -> Result<PureState, CliError> {
    let text = read_text(path)?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Domain(format!("{}: not a state file: {e}", path.display())))?;
    Ok(file.to_state(tol)?)
}

fn read_density(path: &Path, tol: &Tolerance) -> Result<DensityMatrix, CliError> {
    let text = read_text(path)?;
    let file: DensityFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Domain(format!("{}: not a density file: {e}", path.display())))?;
    Ok(file.to_density(tol)?)
}

/// Accept either schema, keyed on `amps` vs `entries`.
fn read_state_or_density(path: &Path, tol: &Tolerance) -> Result<Input, CliError> {
    let text = read_text(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Domain(format!("{}: invalid JSON: {e}", path.display())))?;
    if value.get("amps").is_some() {
        let file: StateFile = serde_json::from_value(value)
            .map_err(|e| CliError::Domain(format!("{}: not a state file: {e}", path.display())))?;
        Ok(Input::Pure(file.to_state(tol)?))
    } else if value.get("entries").is_some() {
        let file: DensityFile = serde_json::from_value(value).map_err(|e| {
            CliError::Domain(format!("{}: not a density file: {e}", path.display()))
        })?;
        Ok(Input::Density(file.to_density(tol)?))
    } else {
        Err(CliError::Domain(format!(
            "{}: expected a state file (amps) or density file (entries)",
            path.display()
        )))
    }
}

fn read_prob(path: &Path, tol: &Tolerance) -> Result<pcoh::ProbVector, CliError> {
    let text = read_text(path)?;
    let file: ProbFile = serde_json::from_str(&text).map_err(|e| {
        CliError::Domain(format!("{}: not a probability file: {e}", path.display()))
    })?;
    Ok(file.to_prob(tol)?)
}

fn read_rational(path: &Path) -> Result<Vec<pcoh::Rational>, CliError> {
    let text = read_text(path)?;
    let file: RationalProbFile = serde_json::from_str(&text).map_err(|e| {
        CliError::Domain(format!(
            "{}: not a rational probability file: {e}",
            path.display()
        ))
    })?;
    Ok(file.to_rationals()?)
}

fn parse_party(s: &str) -> Result<Party, CliError> {
    Party::from_str(s).map_err(CliError::from)
}

fn parse_mode(s: &str) -> Result<PcvMode, CliError> {
    match s {
        "a" | "A" => Ok(PcvMode::A),
        "b" | "B" => Ok(PcvMode::B),
        "full" => Ok(PcvMode::Full),
        other => Err(CliError::Usage(format!(
            "invalid --party `{other}` (expected a, b, or full)"
        ))),
    }
}

fn parse_dims(spec: &str) -> Result<Vec<(usize, usize)>, CliError> {
    spec.split(',')
        .map(|pair| {
            let parts: Vec<&str> = pair.trim().split('x').collect();
            if parts.len() != 2 {
                return Err(CliError::Usage(format!(
                    "invalid dims entry `{pair}` (expected daxdb, e.g. 3x2)"
                )));
            }
            let da = parts[0]
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid d_a in `{pair}`")))?;
            let db = parts[1]
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid d_b in `{pair}`")))?;
            Ok((da, db))
        })
        .collect()
}

/// Seed precedence: flag, then PCOH_SEED, then 42.
fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("PCOH_SEED")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
    })
    .unwrap_or(42)
}

fn roof_config(restarts: Option<usize>, seed: Option<u64>) -> RoofConfig {
    let mut cfg = RoofConfig {
        seed: resolve_seed(seed),
        ..RoofConfig::default()
    };
    if let Some(r) = restarts {
        cfg.restarts = r;
    }
    cfg
}

fn emit<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value)
        .map_err(|e| CliError::Domain(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn emit_with_copy<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string(value)
        .map_err(|e| CliError::Domain(format!("serialization failed: {e}")))?;
    println!("{text}");
    if let Some(path) = out {
        fs::write(path, &text)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
