//! Seeded randomized verification suites.
//!
//! Each suite turns one theorem-level claim into a Monte Carlo check at
//! desk scale and emits a machine-readable [`Report`]. Trials draw their
//! randomness from per-trial ChaCha streams keyed by `(suite, seed,
//! trial)`, so trial `k` is the same regardless of the trial count and
//! every report is replayable from its seed. Violation magnitudes are
//! signed slacks (observed minus allowed), so `max_violation <= 0` means
//! every check passed with margin.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::str::FromStr;
use std::time::Instant;

use crate::coherence::{coherence_vector, partial_dephase, pcoh_mixed, pcoh_pure, PcvMode};
use crate::entangle::{
    analytic_min_unitary, analytic_min_unitary_b, ent_mixed, ent_pure, g_f, werner_state,
    wootters_eof,
};
use crate::error::{Error, Result};
use crate::linalg::{cr, CMat};
use crate::majorization::{majorization_slack, ProbVector};
use crate::pio::{orthogonalizing_pio, random_pio, synthesize_pio, PioRandomConfig};
use crate::random::{ginibre_density_rng, haar_pure_rng, haar_unitary_rng};
use crate::roof::{RoofConfig, ENSEMBLE_CAP};
use crate::scf::Scf;
use crate::states::{example_pair, DensityMatrix, Party, PureState, UnitaryMatrix};
use crate::tol::Tolerance;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Supported party dimension range for suite configurations.
pub const DIM_RANGE: (usize, usize) = (2, 8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteId {
    SchurHornChain,
    IneqChain,
    PioMonotonicity,
    Theorem1Roundtrip,
    Theorem3,
    Theorem6,
    GfConcavity,
    RoofOracle,
    Faithfulness,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::SchurHornChain,
        SuiteId::IneqChain,
        SuiteId::PioMonotonicity,
        SuiteId::Theorem1Roundtrip,
        SuiteId::Theorem3,
        SuiteId::Theorem6,
        SuiteId::GfConcavity,
        SuiteId::RoofOracle,
        SuiteId::Faithfulness,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::SchurHornChain => "schur_horn_chain",
            SuiteId::IneqChain => "ineq_chain",
            SuiteId::PioMonotonicity => "pio_monotonicity",
            SuiteId::Theorem1Roundtrip => "theorem1_roundtrip",
            SuiteId::Theorem3 => "theorem3",
            SuiteId::Theorem6 => "theorem6",
            SuiteId::GfConcavity => "gf_concavity",
            SuiteId::RoofOracle => "roof_oracle",
            SuiteId::Faithfulness => "faithfulness",
        }
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Configuration of one suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    /// Number of trials (outer Monte Carlo loop).
    pub trials: usize,
    /// Candidate `(d_a, d_b)` pairs; each trial picks one at random.
    pub dims: Vec<(usize, usize)>,
    pub seed: u64,
    /// Inner samples per trial where applicable (unitary samples for
    /// theorem3, PIO instruments for theorem6/monotonicity).
    pub samples: Option<usize>,
    /// Convex-roof budget for the suites that need it.
    pub roof: RoofConfig,
    pub tol: Tolerance,
}

impl SuiteConfig {
    pub fn new(suite: SuiteId) -> Self {
        SuiteConfig {
            suite,
            trials: default_trials(suite),
            dims: default_dims(suite),
            seed: 42,
            samples: None,
            roof: RoofConfig::default(),
            tol: Tolerance::DEFAULT,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Invalid("trial count must be at least 1".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::Invalid("dims list must be non-empty".into()));
        }
        for &(da, db) in &self.dims {
            for d in [da, db] {
                if d < DIM_RANGE.0 || d > DIM_RANGE.1 {
                    return Err(Error::DimensionOutOfRange(d, DIM_RANGE.0, DIM_RANGE.1));
                }
            }
        }
        Ok(())
    }
}

pub fn default_trials(suite: SuiteId) -> usize {
    match suite {
        SuiteId::SchurHornChain | SuiteId::IneqChain => 1000,
        SuiteId::PioMonotonicity => 1000,
        SuiteId::Theorem1Roundtrip => 500,
        SuiteId::Theorem3 | SuiteId::Theorem6 => 200,
        SuiteId::GfConcavity => 1000,
        SuiteId::RoofOracle => 120,
        SuiteId::Faithfulness => 100,
    }
}

pub fn default_dims(suite: SuiteId) -> Vec<(usize, usize)> {
    match suite {
        SuiteId::SchurHornChain | SuiteId::IneqChain => {
            vec![(2, 2), (3, 2), (4, 3), (5, 5), (6, 6)]
        }
        SuiteId::PioMonotonicity => vec![(2, 2), (3, 2), (3, 3), (4, 2)],
        SuiteId::Theorem1Roundtrip => vec![(3, 2), (4, 2), (4, 3), (5, 2), (5, 3)],
        SuiteId::Theorem3 => vec![(2, 2), (3, 3)],
        SuiteId::Theorem6 => vec![(2, 2), (2, 3), (3, 3), (3, 4)],
        SuiteId::GfConcavity => vec![(2, 2), (3, 3), (4, 4), (6, 6)],
        SuiteId::RoofOracle | SuiteId::Faithfulness => vec![(2, 2)],
    }
}

/// Outcome of a suite run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub suite: String,
    pub trials: usize,
    pub violations: usize,
    /// Largest signed slack over all checks (observed minus allowed);
    /// `<= 0` when everything passed.
    pub max_violation: f64,
    /// Inputs of the worst trial, for replay and inspection.
    pub worst_case: serde_json::Value,
    pub seed: u64,
    /// Wall-clock seconds; informational only, excluded from determinism
    /// guarantees.
    pub wall_time: f64,
    /// Optimizer budget, recorded by the suites that run the convex roof
    /// so shortfalls can be told apart from genuine bound violations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<serde_json::Value>,
}

struct TrialOutcome {
    violations: usize,
    /// Worst signed slack in this trial.
    slack: f64,
    payload: serde_json::Value,
}

/// Per-trial RNG keyed by suite, seed, and trial index.
fn suite_trial_rng(suite: SuiteId, seed: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let name = suite.as_str().as_bytes();
    let len = name.len().min(24);
    key[8..8 + len].copy_from_slice(&name[..len]);
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial + 1);
    rng
}

fn pick_dims<R: Rng>(dims: &[(usize, usize)], rng: &mut R) -> (usize, usize) {
    dims[rng.random_range(0..dims.len())]
}

/// Run a suite and aggregate per-trial outcomes into a [`Report`].
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();

    let trial_results: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect::<Result<Vec<_>>>()?;

    let violations: usize = trial_results.iter().map(|t| t.violations).sum();
    let mut worst_idx = 0usize;
    for (i, t) in trial_results.iter().enumerate() {
        if t.slack > trial_results[worst_idx].slack {
            worst_idx = i;
        }
    }
    let max_violation = trial_results[worst_idx].slack;

    let budget = match cfg.suite {
        SuiteId::RoofOracle | SuiteId::Faithfulness | SuiteId::PioMonotonicity => Some(json!({
            "restarts": cfg.roof.restarts,
            "max_iters": cfg.roof.max_iters,
            "ensemble_cap": ENSEMBLE_CAP,
        })),
        _ => None,
    };

    Ok(Report {
        suite: cfg.suite.as_str().to_string(),
        trials: cfg.trials,
        violations,
        max_violation,
        worst_case: json!({
            "trial": worst_idx,
            "detail": trial_results[worst_idx].payload,
        }),
        seed: cfg.seed,
        wall_time: start.elapsed().as_secs_f64(),
        budget,
    })
}

fn run_trial(cfg: &SuiteConfig, trial: usize) -> Result<TrialOutcome> {
    let mut rng = suite_trial_rng(cfg.suite, cfg.seed, trial as u64);
    match cfg.suite {
        SuiteId::SchurHornChain => Ok(schur_horn_trial(cfg, &mut rng)),
        SuiteId::IneqChain => Ok(ineq_chain_trial(cfg, &mut rng)),
        SuiteId::PioMonotonicity => pio_monotonicity_trial(cfg, trial, &mut rng),
        SuiteId::Theorem1Roundtrip => theorem1_trial(cfg, trial, &mut rng),
        SuiteId::Theorem3 => Ok(theorem3_trial(cfg, &mut rng)),
        SuiteId::Theorem6 => theorem6_trial(cfg, trial, &mut rng),
        SuiteId::GfConcavity => Ok(gf_concavity_trial(cfg, &mut rng)),
        SuiteId::RoofOracle => roof_oracle_trial(cfg, trial, &mut rng),
        SuiteId::Faithfulness => faithfulness_trial(cfg, trial, &mut rng),
    }
}

/// Collect named slack checks into a trial outcome.
fn collect(checks: Vec<(&'static str, f64)>, context: serde_json::Value) -> TrialOutcome {
    let mut violations = 0usize;
    let mut slack = f64::NEG_INFINITY;
    let mut worst_name = "";
    for (name, s) in &checks {
        if *s > 0.0 {
            violations += 1;
        }
        if *s > slack {
            slack = *s;
            worst_name = name;
        }
    }
    TrialOutcome {
        violations,
        slack,
        payload: json!({ "worst_check": worst_name, "context": context }),
    }
}

fn state_payload(s: &PureState) -> serde_json::Value {
    json!({
        "da": s.da(),
        "db": s.db(),
        "amps": s.amps().iter().map(|z| vec![z.re, z.im]).collect::<Vec<_>>(),
    })
}

// --- schur_horn_chain: psi < psi_a < p with slack 1e-10 ------------------

fn schur_horn_trial(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> TrialOutcome {
    const SLACK: f64 = 1e-10;
    let (da, db) = pick_dims(&cfg.dims, rng);
    let s = haar_pure_rng(da, db, rng);
    let full = coherence_vector(&s, PcvMode::Full);
    let pcv = coherence_vector(&s, PcvMode::A);
    let p = ProbVector::new(s.schmidt_coeffs(), &cfg.tol).expect("schmidt simplex");
    let checks = vec![
        (
            "psi_majorized_by_psi_a",
            majorization_slack(&full, &pcv) - SLACK,
        ),
        ("psi_a_majorized_by_p", majorization_slack(&pcv, &p) - SLACK),
    ];
    collect(checks, state_payload(&s))
}

// --- ineq_chain: f(psi) >= f(psi_a) >= f(p) with slack 1e-9 ---------------

fn ineq_chain_trial(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> TrialOutcome {
    const SLACK: f64 = 1e-9;
    let (da, db) = pick_dims(&cfg.dims, rng);
    let s = haar_pure_rng(da, db, rng);
    let full = coherence_vector(&s, PcvMode::Full);
    let pcv = coherence_vector(&s, PcvMode::A);
    let p = ProbVector::new(s.schmidt_coeffs(), &cfg.tol).expect("schmidt simplex");
    let mut checks = Vec::new();
    for f in Scf::builtins() {
        let v_full = f.eval(&full);
        let v_pcv = f.eval(&pcv);
        let v_p = f.eval(&p);
        checks.push(("f(psi_a) <= f(psi)", v_pcv - v_full - SLACK));
        checks.push(("f(p) <= f(psi_a)", v_p - v_pcv - SLACK));
    }
    collect(checks, state_payload(&s))
}

// --- pio_monotonicity: R2b for C_a plus dephasing kills coherence --------

fn pio_monotonicity_trial(
    cfg: &SuiteConfig,
    trial: usize,
    rng: &mut ChaCha8Rng,
) -> Result<TrialOutcome> {
    const SLACK: f64 = 1e-9;
    let (da, db) = pick_dims(&cfg.dims, rng);
    let s = haar_pure_rng(da, db, rng);
    let pio_cfg = PioRandomConfig {
        n_kraus: rng.random_range(2..=3),
        depth: rng.random_range(1..=3),
        seed: rng.random(),
    };
    let channel = random_pio(da, db, &pio_cfg)?;
    let branches = channel.branch_outcomes(&s, &cfg.tol)?;
    let mut checks = Vec::new();
    for f in Scf::builtins() {
        let before = pcoh_pure(&s, &f, Party::A);
        let after: f64 = branches
            .iter()
            .map(|(p, b)| p * pcoh_pure(b, &f, Party::A))
            .sum();
        checks.push(("selective_average_monotone", after - before - SLACK));
    }

    // The dephased projector must carry no partial coherence: its spectral
    // ensemble already realizes (numerically) zero, so a slim roof budget
    // suffices for this upper-bound check.
    let dephased = partial_dephase(&s.density());
    let slim = RoofConfig {
        restarts: 1,
        max_iters: 16,
        seed: rng.random(),
        ..RoofConfig::default()
    };
    let roof = pcoh_mixed(&dephased, &Scf::shannon(), Party::A, &slim)?;
    checks.push(("dephased_has_zero_pcoh", roof.value - 1e-12));

    Ok(collect(
        checks,
        json!({ "state": state_payload(&s), "pio": {
            "n_kraus": pio_cfg.n_kraus, "depth": pio_cfg.depth, "seed": pio_cfg.seed,
        }, "trial": trial }),
    ))
}

// --- theorem1_roundtrip: decision + constructive synthesis ----------------

fn theorem1_trial(cfg: &SuiteConfig, trial: usize, rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let tol = &cfg.tol;
    // Trial 0 replays the hand-given incomparable pair.
    let (src, dst, label) = if trial == 0 {
        let (psi, phi) = example_pair(2);
        (psi, phi, "example_pair")
    } else {
        let (da, db) = pick_dims(&cfg.dims, rng);
        (
            haar_pure_rng(da, db, rng),
            haar_pure_rng(da, db, rng),
            "haar_pair",
        )
    };

    let forward = crate::pio::pio_convertible(&src, &dst, tol)?;
    let reverse = crate::pio::pio_convertible(&dst, &src, tol)?;
    let mut checks = Vec::new();

    for (convertible, a, b, tag) in [
        (forward, &src, &dst, "forward"),
        (reverse, &dst, &src, "reverse"),
    ] {
        if convertible {
            let pipe = synthesize_pio(a, b, tol)?;
            let fid = pipe.apply(&a.density())?.fidelity_pure(b)?;
            checks.push(("synthesis_fidelity", (1.0 - fid) - 1e-8));
            checks.push(("stages_are_pio", if pipe.is_pio(tol) { -1.0 } else { 1.0 }));
            let residual = pipe.flatten()?.completeness_residual();
            checks.push(("flatten_completeness", residual - 1e-10));
            checks.push((
                "stage_count",
                pipe.stages().len() as f64 - (a.da() + 1) as f64,
            ));
            let _ = tag;
        } else {
            // Synthesis must refuse.
            let refused = matches!(synthesize_pio(a, b, tol), Err(Error::NotConvertible));
            checks.push(("refuses_incomparable", if refused { -1.0 } else { 1.0 }));
        }
    }

    if trial == 0 {
        // The example pair must come out incomparable.
        let incomparable = !forward && !reverse;
        checks.push((
            "example_pair_incomparable",
            if incomparable { -1.0 } else { 1.0 },
        ));
    }

    Ok(collect(
        checks,
        json!({
            "kind": label,
            "forward": forward,
            "reverse": reverse,
            "src": state_payload(&src),
            "dst": state_payload(&dst),
        }),
    ))
}

// --- theorem3: minimum of C_a over local unitaries is f(p) ----------------

fn theorem3_trial(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> TrialOutcome {
    const SLACK: f64 = 1e-9;
    let n_unitaries = cfg.samples.unwrap_or(2000);
    let (da, db) = pick_dims(&cfg.dims, rng);
    let s = haar_pure_rng(da, db, rng);
    let p = ProbVector::new(s.schmidt_coeffs(), &cfg.tol).expect("schmidt simplex");

    let mut checks = Vec::new();
    let builtins = Scf::builtins();
    let floors: Vec<f64> = builtins.iter().map(|f| f.eval(&p)).collect();

    // Sampled local unitaries never dip below f(p).
    let mut worst_dip = f64::NEG_INFINITY;
    for _ in 0..n_unitaries {
        let u = UnitaryMatrix::trusted(haar_unitary_rng(da, rng));
        let rotated = s.evolve_a(&u).expect("dimension match");
        for (f, floor) in builtins.iter().zip(floors.iter()) {
            let v = pcoh_pure(&rotated, f, Party::A);
            worst_dip = worst_dip.max(floor - SLACK - v);
        }
    }
    checks.push(("sampled_lower_bound", worst_dip));

    // The analytic minimizer attains f(p) for every built-in.
    let ua = analytic_min_unitary(&s);
    let rotated_a = s.evolve_a(&ua).expect("dimension match");
    let ub = analytic_min_unitary_b(&s);
    let rotated_b = s.evolve_b(&ub).expect("dimension match");
    for (f, floor) in builtins.iter().zip(floors.iter()) {
        let va = pcoh_pure(&rotated_a, f, Party::A);
        checks.push(("analytic_gap", (va - floor).abs() - SLACK));
        let vb = pcoh_pure(&rotated_b, f, Party::B);
        checks.push(("party_agreement", (va - vb).abs() - SLACK));
    }

    collect(checks, state_payload(&s))
}

// --- theorem6: orthogonalizing PIO attains f(psi_a); PIO average below ----

fn theorem6_trial(cfg: &SuiteConfig, trial: usize, rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    const SLACK: f64 = 1e-9;
    let n_instruments = cfg.samples.unwrap_or(5);
    let tol = &cfg.tol;
    // Sample dims with d_a <= d_b so support(psi_a) <= d_b holds.
    let (da, db) = {
        let (a, b) = pick_dims(&cfg.dims, rng);
        (a.min(b), a.max(b))
    };
    let s = haar_pure_rng(da, db, rng);
    let mut checks = Vec::new();

    let orth = orthogonalizing_pio(&s, tol)?;
    let out = &orth.branch_outcomes(&s, tol)?[0].1;
    let pcv = coherence_vector(&s, PcvMode::A);
    for f in Scf::builtins() {
        let claim = f.eval(&pcv);
        checks.push((
            "orthogonalized_attains",
            (ent_pure(out, &f) - claim).abs() - SLACK,
        ));
    }

    // Random PIO instruments never average above f(psi_a).
    for _ in 0..n_instruments {
        let pio_cfg = PioRandomConfig {
            n_kraus: rng.random_range(2..=3),
            depth: rng.random_range(1..=2),
            seed: rng.random(),
        };
        let channel = random_pio(da, db, &pio_cfg)?;
        let branches = channel.branch_outcomes(&s, tol)?;
        for f in Scf::builtins() {
            let claim = pcoh_pure(&s, &f, Party::A);
            let avg: f64 = branches.iter().map(|(p, b)| p * ent_pure(b, &f)).sum();
            checks.push(("selective_entanglement_bounded", avg - claim - SLACK));
        }
    }

    Ok(collect(
        checks,
        json!({ "state": state_payload(&s), "trial": trial }),
    ))
}

// --- gf_concavity: concavity and unitary invariance of g_f ----------------

fn gf_concavity_trial(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> TrialOutcome {
    const SLACK: f64 = 1e-10;
    let (d, _) = pick_dims(&cfg.dims, rng);
    let rank1 = rng.random_range(1..=d);
    let rank2 = rng.random_range(1..=d);
    let rho1 = ginibre_density_rng(d, rank1, rng);
    let rho2 = ginibre_density_rng(d, rank2, rng);
    let r: f64 = rng.random();
    let mix_mat = rho1.mat().scale(r) + rho2.mat().scale(1.0 - r);
    let mix = DensityMatrix::trusted(d, 1, mix_mat);

    let mut checks = Vec::new();
    for f in Scf::builtins() {
        let g_mix = g_f(&mix, &f).expect("valid state");
        let g1 = g_f(&rho1, &f).expect("valid state");
        let g2 = g_f(&rho2, &f).expect("valid state");
        checks.push(("concavity", r * g1 + (1.0 - r) * g2 - g_mix - SLACK));

        let u = UnitaryMatrix::trusted(haar_unitary_rng(d, rng));
        let conj = u.conjugate_density(&rho1).expect("dimension match");
        let g_conj = g_f(&conj, &f).expect("valid state");
        checks.push(("unitary_invariance", (g_conj - g1).abs() - SLACK));
    }

    collect(
        checks,
        json!({ "d": d, "r": r, "rank1": rank1, "rank2": rank2 }),
    )
}

// --- roof_oracle: convex roof against the concurrence closed form ---------

fn roof_oracle_trial(
    cfg: &SuiteConfig,
    trial: usize,
    rng: &mut ChaCha8Rng,
) -> Result<TrialOutcome> {
    const LOWER: f64 = -1e-6;
    const UPPER: f64 = 5e-3;
    let tol = &cfg.tol;
    let werner_trials = cfg.trials.min(20);
    let (rho, kind) = if trial < werner_trials {
        let p = if werner_trials == 1 {
            0.5
        } else {
            trial as f64 / (werner_trials - 1) as f64
        };
        (werner_state(p, tol)?, json!({ "kind": "werner", "p": p }))
    } else {
        let s1 = haar_pure_rng(2, 2, rng);
        let s2 = haar_pure_rng(2, 2, rng);
        let w: f64 = rng.random();
        let rho = DensityMatrix::mixture(&[(w, &s1.density()), (1.0 - w, &s2.density())], tol)?;
        (rho, json!({ "kind": "rank2", "weight": w }))
    };

    let mut roof_cfg = cfg.roof.clone();
    roof_cfg.seed = rng.random();
    let roof = ent_mixed(&rho, &Scf::shannon(), &roof_cfg)?;
    let oracle = wootters_eof(&rho)?;
    let gap = roof.value - oracle;

    // Below the oracle: the closed form is violated (serious). Above: the
    // optimizer budget fell short.
    let checks = vec![
        ("bound_violated", LOWER - gap),
        ("budget_insufficient", gap - UPPER),
    ];
    Ok(collect(
        checks,
        json!({
            "input": kind,
            "roof": roof.value,
            "oracle": oracle,
            "gap": gap,
            "converged": roof.converged,
            "evaluations": roof.evaluations,
        }),
    ))
}

// --- faithfulness: free inputs score (numerically) zero -------------------

fn faithfulness_trial(
    cfg: &SuiteConfig,
    trial: usize,
    rng: &mut ChaCha8Rng,
) -> Result<TrialOutcome> {
    let tol = &cfg.tol;
    let mut roof_cfg = cfg.roof.clone();
    roof_cfg.seed = rng.random();

    if trial % 2 == 0 {
        // Random partial incoherent state of rank <= 3 on 2x2.
        let splits = [(1usize, 1usize), (1, 2), (2, 1)];
        let (r0, r1) = splits[rng.random_range(0..splits.len())];
        let b0 = ginibre_density_rng(2, r0, rng);
        let b1 = ginibre_density_rng(2, r1, rng);
        let w: f64 = 0.1 + 0.8 * rng.random::<f64>();
        let mut mat = CMat::zeros(4, 4);
        for x in 0..2 {
            for y in 0..2 {
                mat[(x, y)] = cr(w) * b0.mat()[(x, y)];
                mat[(2 + x, 2 + y)] = cr(1.0 - w) * b1.mat()[(x, y)];
            }
        }
        let rho = DensityMatrix::new(2, 2, mat, tol)?;
        let roof = pcoh_mixed(&rho, &Scf::shannon(), Party::A, &roof_cfg)?;
        Ok(collect(
            vec![("partial_incoherent_pcoh", roof.value - 1e-6)],
            json!({ "kind": "partial_incoherent", "weight": w, "value": roof.value }),
        ))
    } else {
        // Separable product mixture of <= 3 members on 2x2.
        let members = rng.random_range(2..=3);
        let mut parts = Vec::new();
        let raw: Vec<f64> = (0..members)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let total: f64 = raw.iter().sum();
        for weight in raw.iter().map(|x| x / total) {
            let alpha = haar_pure_rng(2, 1, rng);
            let beta = haar_pure_rng(2, 1, rng);
            let mut amps = Vec::with_capacity(4);
            for i in 0..2 {
                for j in 0..2 {
                    amps.push(alpha.amps()[i] * beta.amps()[j]);
                }
            }
            let product = PureState::new(2, 2, amps, tol)?;
            parts.push((weight, product.density()));
        }
        let refs: Vec<(f64, &DensityMatrix)> = parts.iter().map(|(w, d)| (*w, d)).collect();
        let rho = DensityMatrix::mixture(&refs, tol)?;
        let roof = ent_mixed(&rho, &Scf::shannon(), &roof_cfg)?;
        Ok(collect(
            vec![("separable_ent", roof.value - 1e-4)],
            json!({ "kind": "separable", "members": members, "value": roof.value }),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: SuiteId, trials: usize) -> SuiteConfig {
        let mut cfg = SuiteConfig::new(suite);
        cfg.trials = trials;
        cfg.seed = 7;
        cfg
    }

    #[test]
    fn schur_horn_small_run_is_clean() {
        let report = run_suite(&quick(SuiteId::SchurHornChain, 50)).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.max_violation <= 0.0);
    }

    #[test]
    fn ineq_chain_small_run_is_clean() {
        let report = run_suite(&quick(SuiteId::IneqChain, 50)).unwrap();
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn theorem1_small_run_is_clean() {
        let report = run_suite(&quick(SuiteId::Theorem1Roundtrip, 25)).unwrap();
        assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    }

    #[test]
    fn theorem3_tiny_run_is_clean() {
        let mut cfg = quick(SuiteId::Theorem3, 5);
        cfg.samples = Some(100);
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    }

    #[test]
    fn replay_is_exact() {
        let cfg = quick(SuiteId::SchurHornChain, 20);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.max_violation, b.max_violation);
        assert_eq!(a.worst_case, b.worst_case);
    }

    #[test]
    fn trials_are_count_independent() {
        // Worst-case details of trial k must not depend on the trial count.
        let mut small = quick(SuiteId::IneqChain, 5);
        let mut large = quick(SuiteId::IneqChain, 25);
        small.seed = 3;
        large.seed = 3;
        let a = run_suite(&small).unwrap();
        let b = run_suite(&large).unwrap();
        // Both runs rank trials by slack; the shared prefix of trials gives
        // identical slacks for the same indices, so re-running the small
        // config must reproduce itself and the large run must contain it.
        let rerun = run_suite(&small).unwrap();
        assert_eq!(a.max_violation, rerun.max_violation);
        assert!(b.trials > a.trials);
    }

    #[test]
    fn unknown_suite_errors() {
        assert!(matches!(
            "majorize_everything".parse::<SuiteId>(),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn dims_validated() {
        let mut cfg = quick(SuiteId::SchurHornChain, 5);
        cfg.dims = vec![(1, 2)];
        assert!(matches!(
            run_suite(&cfg),
            Err(Error::DimensionOutOfRange(1, _, _))
        ));
        cfg.dims = vec![(9, 2)];
        assert!(run_suite(&cfg).is_err());
        cfg.dims = vec![];
        assert!(run_suite(&cfg).is_err());
    }

    #[test]
    fn gf_concavity_small_run_is_clean() {
        let report = run_suite(&quick(SuiteId::GfConcavity, 50)).unwrap();
        assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = run_suite(&quick(SuiteId::SchurHornChain, 5)).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(report, back);
        let again = serde_json::to_string(&back).unwrap();
        assert_eq!(text, again);
    }
}
