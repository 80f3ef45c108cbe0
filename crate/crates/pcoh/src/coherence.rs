//! Partial coherence: coherence vectors, the partial decohering map, the
//! free set membership test, and measures built from symmetric concave
//! functions (pure-state values plus convex-roof mixed extensions).

use crate::error::Result;
use crate::linalg::{frobenius, CMat};
use crate::majorization::ProbVector;
use crate::roof::{convex_roof, RoofConfig, RoofResult};
use crate::scf::Scf;
use crate::states::{DensityMatrix, Party, PureState};
use crate::tol::Tolerance;

/// Which squared-amplitude marginal to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcvMode {
    /// Party-a populations `sum_j |psi_ij|^2` (the partial coherence vector).
    A,
    /// Party-b populations `sum_i |psi_ij|^2`.
    B,
    /// All squared amplitudes `|psi_ij|^2` in the product basis.
    Full,
}

impl From<Party> for PcvMode {
    fn from(p: Party) -> Self {
        match p {
            Party::A => PcvMode::A,
            Party::B => PcvMode::B,
        }
    }
}

/// Coherence vector of a pure state in the chosen mode. Mode `A` equals
/// the diagonal of the party-a marginal, so it is invariant under any
/// unitary acting on party b alone.
pub fn coherence_vector(s: &PureState, mode: PcvMode) -> ProbVector {
    let (da, db) = (s.da(), s.db());
    let entries = match mode {
        PcvMode::A => (0..da)
            .map(|i| (0..db).map(|j| s.amp(i, j).norm_sqr()).sum())
            .collect::<Vec<f64>>(),
        PcvMode::B => (0..db)
            .map(|j| (0..da).map(|i| s.amp(i, j).norm_sqr()).sum())
            .collect::<Vec<f64>>(),
        PcvMode::Full => s.amps().iter().map(|z| z.norm_sqr()).collect(),
    };
    ProbVector::new(entries, &Tolerance::DEFAULT).expect("squared amplitudes lie on the simplex")
}

/// The partial decohering map `Delta(rho) = sum_i |i><i| (x) <i|rho|i>`,
/// i.e. the pinching that kills every off-diagonal party-a block.
pub fn partial_dephase(rho: &DensityMatrix) -> DensityMatrix {
    let (da, db) = (rho.da(), rho.db());
    let d = rho.dim();
    let mut out = CMat::zeros(d, d);
    for i in 0..da {
        for j in 0..db {
            for j2 in 0..db {
                out[(i * db + j, i * db + j2)] = rho.mat()[(i * db + j, i * db + j2)];
            }
        }
    }
    DensityMatrix::trusted(da, db, out)
}

/// Membership in the free set: `||rho - Delta(rho)||_F <= atol * d`.
pub fn is_partial_incoherent(rho: &DensityMatrix, tol: &Tolerance) -> bool {
    let delta = partial_dephase(rho);
    frobenius(&(rho.mat() - delta.mat())) <= tol.atol * rho.dim() as f64
}

/// Pure-state partial coherence `C_party(|psi>) = f(psi_party)`.
pub fn pcoh_pure(s: &PureState, f: &Scf, party: Party) -> f64 {
    f.eval(&coherence_vector(s, party.into()))
}

/// Convex-roof extension of [`pcoh_pure`] to density matrices.
pub fn pcoh_mixed(
    rho: &DensityMatrix,
    f: &Scf,
    party: Party,
    cfg: &RoofConfig,
) -> Result<RoofResult> {
    convex_roof(rho, |s| pcoh_pure(s, f, party), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cr, C_ZERO};
    use crate::random::{haar_pure, haar_unitary};
    use crate::states::{bell_phi_plus, example_pair, make_pure};

    const TOL: Tolerance = Tolerance::DEFAULT;

    #[test]
    fn example_state_pcv() {
        let (psi, phi) = example_pair(2);
        let pa = coherence_vector(&psi, PcvMode::A);
        let expect = [0.5, 0.26, 0.24, 0.0];
        for (got, want) in pa.entries().iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-14);
        }
        let pb = coherence_vector(&phi, PcvMode::A);
        let expect = [0.4, 0.4, 0.15, 0.05];
        for (got, want) in pb.entries().iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn product_state_pcv_is_point_mass() {
        let s = make_pure(
            3,
            2,
            vec![C_ZERO, C_ZERO, cr(0.6), cr(0.8), C_ZERO, C_ZERO],
            &TOL,
        )
        .unwrap();
        let p = coherence_vector(&s, PcvMode::A);
        assert!((p.entries()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bell_full_mode() {
        let p = coherence_vector(&bell_phi_plus(), PcvMode::Full);
        let expect = [0.5, 0.0, 0.0, 0.5];
        for (got, want) in p.entries().iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn pcv_mode_a_invariant_under_b_unitaries() {
        for seed in 0..10 {
            let s = haar_pure(3, 4, seed).unwrap();
            let u = haar_unitary(4, seed + 100).unwrap();
            let rotated = s.evolve_b(&u).unwrap();
            let before = coherence_vector(&s, PcvMode::A);
            let after = coherence_vector(&rotated, PcvMode::A);
            for (x, y) in before.entries().iter().zip(after.entries().iter()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dephase_bell() {
        let rho = partial_dephase(&bell_phi_plus().density());
        // (|11><11| + |22><22|)/2 in the product basis.
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j && (i == 0 || i == 3) {
                    0.5
                } else {
                    0.0
                };
                assert!((rho.mat()[(i, j)] - cr(expect)).norm() < 1e-14);
            }
        }
        assert!(is_partial_incoherent(&rho, &TOL));
        assert!(!is_partial_incoherent(&bell_phi_plus().density(), &TOL));
    }

    #[test]
    fn dephase_is_idempotent_fixed_point() {
        for seed in 0..20 {
            let s = haar_pure(3, 2, seed).unwrap();
            let rho = s.density();
            let once = partial_dephase(&rho);
            let twice = partial_dephase(&once);
            assert!(frobenius(&(once.mat() - twice.mat())) < 1e-13);
            assert!(is_partial_incoherent(&once, &TOL));
            // Delta(rho) == rho iff rho already partial incoherent.
            let gap = frobenius(&(rho.mat() - once.mat()));
            assert_eq!(gap < TOL.atol, is_partial_incoherent(&rho, &TOL));
        }
    }

    #[test]
    fn block_states_are_free() {
        // |i><i| (x) rho_b is partial incoherent by definition.
        let rho_b = crate::random::ginibre_density(3, 2, 7).unwrap();
        let mut mat = CMat::zeros(6, 6);
        for j in 0..3 {
            for j2 in 0..3 {
                mat[(3 + j, 3 + j2)] = rho_b.mat()[(j, j2)];
            }
        }
        let rho = DensityMatrix::new(2, 3, mat, &TOL).unwrap();
        assert!(is_partial_incoherent(&rho, &TOL));
    }

    #[test]
    fn maximal_state_value() {
        let f = Scf::shannon();
        // Uniform pcv on d_a = 4 gives ln 4.
        let s = crate::pio::maximal_state(4, &basis_states(4, 2), &TOL).unwrap();
        assert!((pcoh_pure(&s, &f, Party::A) - 4.0f64.ln()).abs() < 1e-12);
    }

    fn basis_states(count: usize, db: usize) -> Vec<Vec<num_complex::Complex64>> {
        (0..count)
            .map(|_| {
                let mut v = vec![C_ZERO; db];
                v[0] = cr(1.0);
                v
            })
            .collect()
    }

    #[test]
    fn product_state_has_zero_pcoh() {
        let s = make_pure(2, 2, vec![C_ZERO, C_ZERO, cr(0.6), cr(0.8)], &TOL).unwrap();
        for f in Scf::builtins() {
            assert!(pcoh_pure(&s, &f, Party::A).abs() < 1e-12);
        }
    }

    #[test]
    fn example_state_shannon_value() {
        let (psi, _) = example_pair(2);
        let f = Scf::shannon();
        assert!((pcoh_pure(&psi, &f, Party::A) - 1.039320664104926).abs() < 1e-12);
    }

    #[test]
    fn mixed_pcoh_of_dephased_bell_vanishes() {
        let rho = partial_dephase(&bell_phi_plus().density());
        let cfg = RoofConfig {
            restarts: 4,
            max_iters: 200,
            seed: 1,
            ..RoofConfig::default()
        };
        let r = pcoh_mixed(&rho, &Scf::shannon(), Party::A, &cfg).unwrap();
        assert!(r.value <= 1e-9, "got {}", r.value);
    }

    #[test]
    fn mixed_pcoh_of_pure_state_matches_pure_value() {
        let (psi, _) = example_pair(2);
        let cfg = RoofConfig {
            restarts: 2,
            max_iters: 100,
            seed: 2,
            ..RoofConfig::default()
        };
        let r = pcoh_mixed(&psi.density(), &Scf::shannon(), Party::A, &cfg).unwrap();
        assert!((r.value - 1.039320664104926).abs() < 1e-9);
    }

    #[test]
    fn bell_mixture_endpoint() {
        // t = 1 endpoint of (1-t) Delta(Bell) + t Bell is the pure Bell
        // state: roof equals H(0.5, 0.5) = ln 2.
        let bell = bell_phi_plus();
        let cfg = RoofConfig {
            restarts: 2,
            max_iters: 100,
            seed: 3,
            ..RoofConfig::default()
        };
        let r = pcoh_mixed(&bell.density(), &Scf::shannon(), Party::A, &cfg).unwrap();
        assert!((r.value - std::f64::consts::LN_2).abs() < 1e-9);
    }
}
