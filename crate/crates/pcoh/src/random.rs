//! Seeded random sampling: Haar unitaries, Haar pure states, Ginibre
//! density matrices. Every sampler is a deterministic function of its
//! seed; the verification harness builds per-trial generators with
//! [`trial_rng`] so that trial `k` never depends on the trial count.

use nalgebra::linalg::QR;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{cr, CMat, CVec, C_ONE};
use crate::states::{DensityMatrix, PureState, UnitaryMatrix};

/// Sampler kinds exposed by [`random_sample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    HaarPure { da: usize, db: usize },
    HaarUnitary { d: usize },
    GinibreDensity { d: usize, rank: usize },
}

#[derive(Debug, Clone)]
pub enum Sample {
    Pure(PureState),
    Unitary(UnitaryMatrix),
    Density(DensityMatrix),
}

/// A ChaCha stream keyed by `(seed, stream)`. Distinct streams are
/// statistically independent, which is what makes per-trial splitting
/// reproducible under any trial count.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> num_complex::Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    num_complex::Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of iid standard complex Gaussians, filled row-major.
pub(crate) fn gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    let mut m = CMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// diagonal phases of R absorbed into Q.
pub(crate) fn haar_unitary_rng<R: Rng>(d: usize, rng: &mut R) -> CMat {
    let g = gaussian_matrix(d, d, rng);
    let qr = QR::new(g);
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 {
            rkk / cr(rkk.norm())
        } else {
            C_ONE
        };
        for i in 0..d {
            q[(i, k)] *= phase;
        }
    }
    q
}

pub(crate) fn haar_pure_rng<R: Rng>(da: usize, db: usize, rng: &mut R) -> PureState {
    let n = da * db;
    let mut v = CVec::zeros(n);
    for i in 0..n {
        v[i] = complex_gaussian(rng);
    }
    let norm = v.norm();
    v.iter_mut().for_each(|z| *z /= cr(norm));
    PureState::from_normalized(da, db, v)
}

/// `G G^dag / tr(G G^dag)` for a `d x rank` complex Gaussian `G`.
pub(crate) fn ginibre_density_rng<R: Rng>(d: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let g = gaussian_matrix(d, rank, rng);
    let m = &g * g.adjoint();
    let trace = m.trace().re;
    DensityMatrix::trusted(d, 1, m.map(|z| z / cr(trace)))
}

pub fn haar_unitary(d: usize, seed: u64) -> Result<UnitaryMatrix> {
    if d == 0 {
        return Err(Error::DimensionMismatch(
            "dimension must be positive".into(),
        ));
    }
    let mut rng = trial_rng(seed, 0);
    Ok(UnitaryMatrix::trusted(haar_unitary_rng(d, &mut rng)))
}

pub fn haar_pure(da: usize, db: usize, seed: u64) -> Result<PureState> {
    if da == 0 || db == 0 {
        return Err(Error::DimensionMismatch(
            "dimensions must be positive".into(),
        ));
    }
    let mut rng = trial_rng(seed, 0);
    Ok(haar_pure_rng(da, db, &mut rng))
}

pub fn ginibre_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if d == 0 || rank == 0 || rank > d {
        return Err(Error::DimensionMismatch(format!(
            "ginibre rank must satisfy 1 <= rank <= d (got rank {rank}, d {d})"
        )));
    }
    let mut rng = trial_rng(seed, 0);
    Ok(ginibre_density_rng(d, rank, &mut rng))
}

/// Unified sampler entry point.
pub fn random_sample(kind: SampleKind, seed: u64) -> Result<Sample> {
    match kind {
        SampleKind::HaarPure { da, db } => Ok(Sample::Pure(haar_pure(da, db, seed)?)),
        SampleKind::HaarUnitary { d } => Ok(Sample::Unitary(haar_unitary(d, seed)?)),
        SampleKind::GinibreDensity { d, rank } => {
            Ok(Sample::Density(ginibre_density(d, rank, seed)?))
        }
    }
}
