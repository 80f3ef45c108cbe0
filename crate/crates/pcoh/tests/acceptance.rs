//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured margin (run with `--nocapture` to see them).
//!
//! Criteria 1-2 are exact rational-arithmetic checks of the hand-given
//! vectors; 3 exercises constructive channel synthesis at scale; 4-10
//! drive the seeded verification suites at their full trial counts and
//! demand zero violations at the stated tolerances.

use std::time::Instant;

use pcoh::majorization::{
    is_catalyst_exact, is_majorized_by_exact, rationals, tensor_exact, CatalystOutcome, Rational,
};
use pcoh::random::haar_pure;
use pcoh::{pio_convertible, run_suite, synthesize_pio, SuiteConfig, SuiteId, Tolerance};

const TOL: Tolerance = Tolerance::DEFAULT;

fn suite_config(suite: SuiteId, trials: usize, seed: u64) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(suite);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg
}

#[test]
fn criterion_01_incomparable_pair_exact() {
    let start = Instant::now();
    let psi = rationals(&[(1, 2), (13, 50), (6, 25), (0, 1)]).unwrap();
    let phi = rationals(&[(2, 5), (2, 5), (3, 20), (1, 20)]).unwrap();
    const REPS: u32 = 100;
    let mut forward = true;
    let mut reverse = true;
    for _ in 0..REPS {
        forward = is_majorized_by_exact(&psi, &phi).unwrap();
        reverse = is_majorized_by_exact(&phi, &psi).unwrap();
    }
    let per_call = start.elapsed() / (2 * REPS);
    assert!(!forward, "psi must not be majorized by phi");
    assert!(!reverse, "phi must not be majorized by psi");
    assert!(
        per_call.as_secs_f64() < 1e-3,
        "exact check took {per_call:?} per call"
    );
    println!("criterion 1 PASS - incomparable pair rejected both ways exactly ({per_call:?}/call)");
}

#[test]
fn criterion_02_catalysis_exact() {
    let start = Instant::now();
    let catalyst = rationals(&[(3, 5), (2, 5)]).unwrap();
    let src = rationals(&[(2, 5), (2, 5), (3, 20), (1, 20)]).unwrap();
    let dst = rationals(&[(1, 2), (13, 50), (6, 25), (0, 1)]).unwrap();
    let outcome = is_catalyst_exact(&catalyst, &src, &dst).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(outcome, CatalystOutcome::Catalyzes);
    assert!(
        elapsed.as_secs_f64() < 1e-3,
        "catalysis check took {elapsed:?}"
    );

    // The advertised prefix sums, exactly.
    let prefix = |v: &[Rational]| -> Vec<Rational> {
        let mut sorted = v.to_vec();
        sorted.sort_by(|a, b| b.cmp(a));
        let mut acc = Rational::ZERO;
        sorted
            .iter()
            .map(|e| {
                acc = acc.add(e).unwrap();
                acc
            })
            .collect()
    };
    let src_c = tensor_exact(&src, &catalyst).unwrap();
    let dst_c = tensor_exact(&dst, &catalyst).unwrap();
    let expect_src = rationals(&[
        (6, 25),
        (12, 25),
        (16, 25),
        (4, 5),
        (89, 100),
        (19, 20),
        (49, 50),
        (1, 1),
    ])
    .unwrap();
    let expect_dst = rationals(&[
        (3, 10),
        (1, 2),
        (82, 125),
        (4, 5),
        (113, 125),
        (1, 1),
        (1, 1),
        (1, 1),
    ])
    .unwrap();
    assert_eq!(prefix(&src_c), expect_src);
    assert_eq!(prefix(&dst_c), expect_dst);
    println!("criterion 2 PASS - catalyst enables the conversion with the stated prefix sums");
}

#[test]
fn criterion_03_theorem1_constructive_synthesis() {
    let start = Instant::now();
    const TARGET: usize = 500;
    let da_choices = [3usize, 4, 5];
    let db_choices = [2usize, 3];

    let mut synthesized = 0usize;
    let mut worst_fidelity = 1.0f64;
    let mut worst_residual = 0.0f64;
    let mut seed = 0u64;
    while synthesized < TARGET {
        let da = da_choices[(seed % 3) as usize];
        let db = db_choices[((seed / 3) % 2) as usize];
        let src = haar_pure(da, db, 2 * seed + 1).unwrap();
        let dst = haar_pure(da, db, 2 * seed + 2).unwrap();
        seed += 1;
        if !pio_convertible(&src, &dst, &TOL).unwrap() {
            continue;
        }
        let pipe = synthesize_pio(&src, &dst, &TOL).unwrap();
        assert!(
            pipe.is_pio(&TOL),
            "stage failed the PIO structure test (pair seed {seed})"
        );
        assert!(pipe.stages().len() <= da + 1);
        let fidelity = pipe
            .apply(&src.density())
            .unwrap()
            .fidelity_pure(&dst)
            .unwrap();
        assert!(
            fidelity >= 1.0 - 1e-8,
            "fidelity {fidelity} below 1 - 1e-8 (pair seed {seed})"
        );
        let residual = pipe.flatten().unwrap().completeness_residual();
        assert!(
            residual <= 1e-10,
            "completeness residual {residual} (pair seed {seed})"
        );
        worst_fidelity = worst_fidelity.min(fidelity);
        worst_residual = worst_residual.max(residual);
        synthesized += 1;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "synthesis sweep took {elapsed:?}"
    );
    println!(
        "criterion 3 PASS - {TARGET} convertible pairs synthesized (worst fidelity {worst_fidelity:.2e} below 1: {:.2e}, worst residual {worst_residual:.2e}, {elapsed:?})",
        1.0 - worst_fidelity
    );
}

#[test]
fn criterion_04_schur_horn_and_ineq_chain() {
    let start = Instant::now();
    let report = run_suite(&suite_config(SuiteId::SchurHornChain, 1000, 42)).unwrap();
    assert_eq!(
        report.violations, 0,
        "majorization chain violations: {}",
        report.worst_case
    );
    let f_report = run_suite(&suite_config(SuiteId::IneqChain, 1000, 42)).unwrap();
    assert_eq!(
        f_report.violations, 0,
        "f-chain violations: {}",
        f_report.worst_case
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "chain suites took {elapsed:?}"
    );
    println!(
        "criterion 4 PASS - 1000-state majorization chain (margin {:.2e}) and f-chain (margin {:.2e}) clean in {elapsed:?}",
        -report.max_violation, -f_report.max_violation
    );
}

#[test]
fn criterion_05_theorem3_minimum_over_unitaries() {
    let start = Instant::now();
    let mut cfg = suite_config(SuiteId::Theorem3, 200, 42);
    cfg.dims = vec![(2, 2), (3, 3)];
    cfg.samples = Some(2000);
    let report = run_suite(&cfg).unwrap();
    assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "theorem3 took {elapsed:?}");
    println!(
        "criterion 5 PASS - 200 states x 2000 unitaries respect the Schmidt floor; analytic minimizer attains it (margin {:.2e}, {elapsed:?})",
        -report.max_violation
    );
}

#[test]
fn criterion_06_theorem6_maximal_entanglement() {
    let start = Instant::now();
    let mut cfg = suite_config(SuiteId::Theorem6, 200, 42);
    cfg.samples = Some(5); // 200 trials x 5 instruments = 1000 PIO channels
    let report = run_suite(&cfg).unwrap();
    assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "theorem6 took {elapsed:?}");
    println!(
        "criterion 6 PASS - orthogonalizing PIO attains f(psi_a); 1000 random instruments stay below (margin {:.2e}, {elapsed:?})",
        -report.max_violation
    );
}

#[test]
fn criterion_07_convex_roof_vs_wootters_oracle() {
    let start = Instant::now();
    // 20 Werner states plus 100 random rank-<=2 states, default roof budget.
    let report = run_suite(&suite_config(SuiteId::RoofOracle, 120, 42)).unwrap();
    assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 600.0,
        "roof oracle took {elapsed:?}"
    );
    println!(
        "criterion 7 PASS - roof matches the concurrence oracle within [-1e-6, 5e-3] on 120 states (margin {:.2e}, {elapsed:?})",
        -report.max_violation
    );
}

#[test]
fn criterion_08_faithfulness_of_roofs() {
    let start = Instant::now();
    // Even trials: partial incoherent (pcoh <= 1e-6); odd: separable
    // product mixtures (ent <= 1e-4). 100 trials = 50 + 50.
    let report = run_suite(&suite_config(SuiteId::Faithfulness, 100, 42)).unwrap();
    assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "faithfulness took {elapsed:?}"
    );
    println!(
        "criterion 8 PASS - free states score zero under both roofs (margin {:.2e}, {elapsed:?})",
        -report.max_violation
    );
}

#[test]
fn criterion_09_selective_monotonicity() {
    let start = Instant::now();
    let report = run_suite(&suite_config(SuiteId::PioMonotonicity, 1000, 42)).unwrap();
    assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "monotonicity took {elapsed:?}"
    );
    println!(
        "criterion 9 PASS - 1000 selective instruments never gain partial coherence; dephased states score <= 1e-12 ({elapsed:?})"
    );
}

#[test]
fn criterion_10_gf_concavity_and_invariance() {
    let start = Instant::now();
    let report = run_suite(&suite_config(SuiteId::GfConcavity, 1000, 42)).unwrap();
    assert_eq!(report.violations, 0, "worst: {}", report.worst_case);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "g_f suite took {elapsed:?}");
    println!(
        "criterion 10 PASS - g_f concave and unitarily invariant on 1000 triples (margin {:.2e}, {elapsed:?})",
        -report.max_violation
    );
}
