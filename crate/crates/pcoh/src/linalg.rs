//! Dense complex linear algebra helpers shared across the crate.
//!
//! Everything here operates on `nalgebra` dynamic matrices of `Complex64`.
//! Dimensions are small (a few dozen at most), so the code favors clarity
//! and numerical robustness over asymptotic speed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Max entrywise deviation from Hermiticity, `max |m_ij - conj(m_ji)|`.
pub fn hermitian_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Max entrywise deviation from the identity.
pub fn identity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { C_ONE } else { C_ZERO };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

/// Max entrywise deviation from unitarity, `max |U^dag U - I|`.
pub fn unitary_defect(u: &CMat) -> f64 {
    identity_defect(&(u.adjoint() * u))
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian eigendecomposition with eigenvalues sorted non-increasing.
///
/// Returns `(values, vectors)` where column `k` of `vectors` is the
/// eigenvector of `values[k]`. The input is symmetrized first so that
/// rounding-level Hermiticity defects cannot leak into the solver.
pub fn eigh_desc(h: &CMat) -> (Vec<f64>, CMat) {
    let n = h.nrows();
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = nalgebra::linalg::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Positive-semidefinite square root via the spectral decomposition.
/// Eigenvalues below zero (rounding noise) are clipped.
pub fn psd_sqrt(h: &CMat) -> CMat {
    let (vals, vecs) = eigh_desc(h);
    let n = h.nrows();
    let mut out = CMat::zeros(n, n);
    for (k, &v) in vals.iter().enumerate() {
        let s = v.max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        let col = vecs.column(k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += cr(s) * col[i] * col[j].conj();
            }
        }
    }
    out
}

/// Unitary `U` with `U v = e_0`, built from a single Householder reflector.
/// `v` must be normalized.
pub fn to_e0_unitary(v: &CVec) -> CMat {
    let n = v.len();
    let phase = if v[0].norm() > 0.0 {
        v[0] / cr(v[0].norm())
    } else {
        C_ONE
    };
    // u = v + phase*e0 never degenerates: ||u||^2 = 2 + 2|v_0|.
    let mut u = v.clone();
    u[0] += phase;
    let norm_sq: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    let mut h = CMat::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] -= cr(2.0 / norm_sq) * u[i] * u[j].conj();
        }
    }
    // H v = -phase*e0, so premultiply by -conj(phase).
    let correction = -phase.conj();
    h.iter_mut().for_each(|z| *z *= correction);
    h
}

/// Unitary `U` with `U e_0 = v`; adjoint of [`to_e0_unitary`].
pub fn from_e0_unitary(v: &CVec) -> CMat {
    to_e0_unitary(v).adjoint()
}

/// Permutation matrix sending `|perm[k]> <- |k>`, i.e. column `k` has its
/// 1 at row `perm[k]`.
pub fn permutation_matrix(perm: &[usize]) -> CMat {
    let n = perm.len();
    let mut p = CMat::zeros(n, n);
    for (k, &target) in perm.iter().enumerate() {
        p[(target, k)] = C_ONE;
    }
    p
}

/// Extend `cols` (orthonormal) to a full orthonormal set of `dim` vectors
/// by Gram-Schmidt against the computational basis. Each round picks the
/// candidate basis vector with the largest residual, which always has
/// norm at least `1/sqrt(dim)`.
pub fn complete_orthonormal(cols: &[CVec], dim: usize) -> Vec<CVec> {
    let orthogonalize = |basis: &[CVec], v: &mut CVec| {
        // Two passes of Gram-Schmidt keep orthogonality at machine precision.
        for _ in 0..2 {
            for b in basis {
                let overlap: Complex64 = b.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum();
                for i in 0..dim {
                    v[i] -= overlap * b[i];
                }
            }
        }
    };
    let mut basis: Vec<CVec> = cols.to_vec();
    while basis.len() < dim {
        let mut best: Option<(f64, CVec)> = None;
        for candidate in 0..dim {
            let mut v = CVec::zeros(dim);
            v[candidate] = C_ONE;
            orthogonalize(&basis, &mut v);
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(n, _)| norm > *n) {
                best = Some((norm, v));
            }
        }
        let (norm, mut v) = best.expect("dim > 0");
        assert!(norm > 1e-8, "no candidate left to complete the basis");
        v.iter_mut().for_each(|z| *z /= cr(norm));
        basis.push(v);
    }
    basis
}
