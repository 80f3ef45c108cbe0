//! Generic convex-roof engine.
//!
//! The roof of a pure-state valuation `v` at a density matrix `rho` is
//! `min sum_i q_i v(psi_i)` over all pure-state ensembles of `rho`. Every
//! size-`m` ensemble arises from the spectral decomposition through an
//! `m x r` column-orthonormal mixing matrix (Schrodinger-HJW), so the
//! search space is the isometry manifold. The optimizer walks it with
//! random two-row complex rotations and an annealed step size, restarted
//! from independent random isometries; the spectral ensemble itself is
//! restart 0, which makes the returned value an upper bound on the true
//! roof that never exceeds the spectral-ensemble average.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{cr, CMat, CVec};
use crate::majorization::ProbVector;
use crate::random::{gaussian_matrix, trial_rng};
use crate::states::{DensityMatrix, Ensemble, PureState};
use crate::tol::Tolerance;

/// Annealing schedule for the rotation magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepSchedule {
    /// Initial rotation scale in radians.
    pub initial: f64,
    /// Multiplier applied after `patience` consecutive rejections.
    pub decay: f64,
    /// Consecutive rejections before the step shrinks.
    pub patience: usize,
    /// Step size below which a restart counts as converged.
    pub floor: f64,
}

impl Default for StepSchedule {
    fn default() -> Self {
        StepSchedule {
            initial: 0.7,
            decay: 0.6,
            patience: 24,
            floor: 1e-8,
        }
    }
}

/// Convex-roof optimizer configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RoofConfig {
    /// Independent restarts; restart 0 starts at the spectral ensemble.
    pub restarts: usize,
    /// Ensemble size; `None` selects `min(rank^2, 16)`.
    pub ensemble_size: Option<usize>,
    /// Proposal budget per restart.
    pub max_iters: usize,
    pub step_schedule: StepSchedule,
    pub seed: u64,
}

impl Default for RoofConfig {
    fn default() -> Self {
        RoofConfig {
            restarts: 32,
            ensemble_size: None,
            max_iters: 2000,
            step_schedule: StepSchedule::default(),
            seed: 0,
        }
    }
}

/// Cap on the automatic `rank^2` ensemble size.
pub const ENSEMBLE_CAP: usize = 16;

/// Outcome of a roof minimization.
#[derive(Debug, Clone)]
pub struct RoofResult {
    /// Achieved ensemble average; an upper bound on the true roof.
    pub value: f64,
    /// The realizing ensemble (zero-weight members dropped).
    pub ensemble: Ensemble,
    /// Whether the best restart annealed to the step floor within budget.
    pub converged: bool,
    /// Total valuation evaluations across all restarts.
    pub evaluations: u64,
}

struct RestartOutcome {
    value: f64,
    mixing: CMat,
    converged: bool,
    evaluations: u64,
}

/// Minimize the ensemble average of `valuation` over pure-state
/// decompositions of `rho`.
pub fn convex_roof<F>(rho: &DensityMatrix, valuation: F, cfg: &RoofConfig) -> Result<RoofResult>
where
    F: Fn(&PureState) -> f64 + Sync,
{
    let tol = Tolerance::DEFAULT;
    let (probs, basis) = rho.spectral(&tol)?;

    // Support of the spectral decomposition: columns scaled by sqrt(p).
    let mut scaled: Vec<CVec> = Vec::new();
    for (k, &p) in probs.entries().iter().enumerate() {
        if p > 1e-14 {
            scaled.push(basis.mat().column(k).into_owned().map(|z| z * cr(p.sqrt())));
        }
    }
    let rank = scaled.len().max(1);
    let m = cfg
        .ensemble_size
        .unwrap_or_else(|| (rank * rank).min(ENSEMBLE_CAP))
        .max(rank);

    let da = rho.da();
    let db = rho.db();
    let dim = rho.dim();
    let valuation = &valuation;

    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|restart| {
            let mut rng = trial_rng(cfg.seed, restart as u64);
            let mixing = if restart == 0 {
                // Spectral ensemble, padded with zero-weight rows.
                let mut v = CMat::zeros(m, rank);
                for k in 0..rank {
                    v[(k, k)] = Complex64::new(1.0, 0.0);
                }
                v
            } else {
                haar_isometry(m, rank, &mut rng)
            };
            run_restart(mixing, &scaled, da, db, dim, valuation, cfg, &mut rng)
        })
        .collect();

    // Deterministic reduction: minimum value, earliest restart on ties.
    let mut best_idx = 0usize;
    for (i, o) in outcomes.iter().enumerate() {
        if o.value < outcomes[best_idx].value {
            best_idx = i;
        }
    }
    let evaluations: u64 = outcomes.iter().map(|o| o.evaluations).sum();
    let best = &outcomes[best_idx];

    // Assemble the realizing ensemble from the best mixing matrix.
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for i in 0..m {
        let (q, psi) = ensemble_member(&best.mixing, i, &scaled, da, db, dim);
        if q > 1e-12 {
            weights.push(q);
            states.push(psi.expect("member with positive weight"));
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let ensemble = Ensemble {
        weights: ProbVector::new(weights, &tol)?,
        states,
    };

    Ok(RoofResult {
        value: best.value,
        ensemble,
        converged: best.converged,
        evaluations,
    })
}

/// Haar-random `m x r` isometry (Q factor of a Gaussian matrix).
fn haar_isometry<R: Rng>(m: usize, r: usize, rng: &mut R) -> CMat {
    let g = gaussian_matrix(m, r, rng);
    let qr = nalgebra::linalg::QR::new(g);
    qr.q().columns(0, r).into_owned()
}

/// Row `i` of the mixing matrix determines ensemble member `i`:
/// its weight and (if the weight is positive) the normalized state.
fn ensemble_member(
    mixing: &CMat,
    i: usize,
    scaled: &[CVec],
    da: usize,
    db: usize,
    dim: usize,
) -> (f64, Option<PureState>) {
    let mut v = CVec::zeros(dim);
    for (k, col) in scaled.iter().enumerate() {
        let w = mixing[(i, k)];
        if w.norm_sqr() == 0.0 {
            continue;
        }
        for t in 0..dim {
            v[t] += w * col[t];
        }
    }
    let q = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if q <= 1e-16 {
        return (q, None);
    }
    let norm = q.sqrt();
    v.iter_mut().for_each(|z| *z /= cr(norm));
    (q, Some(PureState::from_normalized(da, db, v)))
}

fn member_cost<F>(
    mixing: &CMat,
    i: usize,
    scaled: &[CVec],
    da: usize,
    db: usize,
    dim: usize,
    valuation: &F,
) -> f64
where
    F: Fn(&PureState) -> f64 + Sync,
{
    let (q, psi) = ensemble_member(mixing, i, scaled, da, db, dim);
    match psi {
        Some(s) => q * valuation(&s),
        None => 0.0,
    }
}

#[allow(clippy::too_many_arguments)]
fn run_restart<F>(
    mut mixing: CMat,
    scaled: &[CVec],
    da: usize,
    db: usize,
    dim: usize,
    valuation: &F,
    cfg: &RoofConfig,
    rng: &mut impl Rng,
) -> RestartOutcome
where
    F: Fn(&PureState) -> f64 + Sync,
{
    let m = mixing.nrows();
    let mut costs: Vec<f64> = (0..m)
        .map(|i| member_cost(&mixing, i, scaled, da, db, dim, valuation))
        .collect();
    let mut total: f64 = costs.iter().sum();
    let mut evaluations = m as u64;

    let schedule = cfg.step_schedule;
    let mut step = schedule.initial;
    let mut rejects = 0usize;
    let mut converged = false;
    // Checkpoint for the stall criterion: a final quarter that improves
    // by less than opt_tol counts as converged even if the step never
    // reached its floor.
    let checkpoint_at = cfg.max_iters - cfg.max_iters / 4;
    let mut checkpoint = total;

    if m >= 2 {
        for iter in 0..cfg.max_iters {
            if iter == checkpoint_at {
                checkpoint = total;
            }
            // Bias the first row toward members still carrying value: the
            // descent direction almost always involves them. A uniform
            // floor keeps the proposal ergodic.
            let floor_w = (total.max(1e-12)) / (4.0 * m as f64);
            let weight_sum: f64 = costs.iter().map(|c| c + floor_w).sum();
            let mut pick = rng.random::<f64>() * weight_sum;
            let mut i = m - 1;
            for (idx, c) in costs.iter().enumerate() {
                pick -= c + floor_w;
                if pick <= 0.0 {
                    i = idx;
                    break;
                }
            }
            let mut j = rng.random_range(0..m - 1);
            if j >= i {
                j += 1;
            }
            let theta: f64 = step * rng.sample::<f64, _>(rand_distr::StandardNormal);
            let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
            let (c, s) = (theta.cos(), theta.sin());

            // Two-row rotation G = [[c, e^{i phi} s], [-e^{-i phi} s, c]]
            // applied to rows (i, j) preserves column orthonormality.
            let r = mixing.ncols();
            let mut row_i = vec![Complex64::new(0.0, 0.0); r];
            let mut row_j = vec![Complex64::new(0.0, 0.0); r];
            for k in 0..r {
                row_i[k] = cr(c) * mixing[(i, k)] + phase * cr(s) * mixing[(j, k)];
                row_j[k] = -phase.conj() * cr(s) * mixing[(i, k)] + cr(c) * mixing[(j, k)];
            }
            let old_i: Vec<Complex64> = (0..r).map(|k| mixing[(i, k)]).collect();
            let old_j: Vec<Complex64> = (0..r).map(|k| mixing[(j, k)]).collect();
            for k in 0..r {
                mixing[(i, k)] = row_i[k];
                mixing[(j, k)] = row_j[k];
            }

            let new_i = member_cost(&mixing, i, scaled, da, db, dim, valuation);
            let new_j = member_cost(&mixing, j, scaled, da, db, dim, valuation);
            evaluations += 2;
            let delta = new_i + new_j - costs[i] - costs[j];

            if delta < -1e-15 {
                costs[i] = new_i;
                costs[j] = new_j;
                total += delta;
                rejects = 0;
            } else {
                for k in 0..r {
                    mixing[(i, k)] = old_i[k];
                    mixing[(j, k)] = old_j[k];
                }
                rejects += 1;
                if rejects >= schedule.patience {
                    rejects = 0;
                    step *= schedule.decay;
                    if step < schedule.floor {
                        converged = true;
                        break;
                    }
                }
            }
        }
    } else {
        // Rank-1 states admit a unique ensemble; nothing to optimize.
        converged = true;
    }

    if !converged && checkpoint - total <= Tolerance::DEFAULT.opt_tol {
        converged = true;
    }

    // Recompute from scratch to shed incremental drift.
    let fresh: f64 = (0..m)
        .map(|i| member_cost(&mixing, i, scaled, da, db, dim, valuation))
        .sum();
    evaluations += m as u64;

    RestartOutcome {
        value: fresh,
        mixing,
        converged,
        evaluations,
    }
}

/// Serialization helper mirroring `RoofResult` without the state payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoofSummary {
    pub value: f64,
    pub converged: bool,
    pub evaluations: u64,
    pub ensemble_size: usize,
}

impl From<&RoofResult> for RoofSummary {
    fn from(r: &RoofResult) -> Self {
        RoofSummary {
            value: r.value,
            converged: r.converged,
            evaluations: r.evaluations,
            ensemble_size: r.ensemble.states.len(),
        }
    }
}
