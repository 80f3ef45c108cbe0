//! Symmetric concave functions on the probability simplex, the
//! generators of every measure in this crate.
//!
//! A registered function must vanish at `(1, 0, ..., 0)`, be invariant
//! under permutations, and be concave. The built-ins satisfy these by
//! construction; user-supplied functions are screened by a randomized
//! check of all three conditions before they can be used.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::majorization::ProbVector;
use crate::random::trial_rng;

type EvalFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A named symmetric concave function.
#[derive(Clone)]
pub struct Scf {
    id: String,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for Scf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scf").field("id", &self.id).finish()
    }
}

impl Scf {
    /// Shannon entropy in nats, with `0 ln 0 = 0`.
    pub fn shannon() -> Scf {
        Scf {
            id: "shannon".into(),
            eval: Arc::new(|p| {
                -p.iter()
                    .filter(|&&x| x > 0.0)
                    .map(|&x| x * x.ln())
                    .sum::<f64>()
            }),
        }
    }

    /// `1 - max_i p_i`.
    pub fn one_minus_max() -> Scf {
        Scf {
            id: "one_minus_max".into(),
            eval: Arc::new(|p| 1.0 - p.iter().cloned().fold(0.0, f64::max)),
        }
    }

    /// `1 - sum_i p_i^2` (linear entropy).
    pub fn one_minus_purity() -> Scf {
        Scf {
            id: "one_minus_purity".into(),
            eval: Arc::new(|p| 1.0 - p.iter().map(|&x| x * x).sum::<f64>()),
        }
    }

    /// The three built-in functions.
    pub fn builtins() -> Vec<Scf> {
        vec![
            Self::shannon(),
            Self::one_minus_max(),
            Self::one_minus_purity(),
        ]
    }

    /// Look up a built-in by its lowercase ASCII id.
    pub fn builtin(id: &str) -> Result<Scf> {
        match id {
            "shannon" => Ok(Self::shannon()),
            "one_minus_max" => Ok(Self::one_minus_max()),
            "one_minus_purity" => Ok(Self::one_minus_purity()),
            other => Err(Error::UnknownFunction(other.to_string())),
        }
    }

    /// Register a user-supplied function after randomized screening of
    /// faithfulness, permutation invariance, and concavity.
    pub fn custom<F>(id: impl Into<String>, f: F, seed: u64) -> Result<Scf>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        let scf = Scf {
            id: id.into(),
            eval: Arc::new(f),
        };
        scf.validate(seed)?;
        Ok(scf)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Evaluate on a validated probability vector.
    pub fn eval(&self, p: &ProbVector) -> f64 {
        (self.eval)(p.entries())
    }

    /// Evaluate on a raw slice assumed to lie on the simplex. Hot path of
    /// the roof optimizer.
    pub fn eval_raw(&self, p: &[f64]) -> f64 {
        (self.eval)(p)
    }

    /// Randomized screening of (F1)-(F3). Tolerance 1e-9 absorbs rounding
    /// in the mixture arithmetic.
    pub fn validate(&self, seed: u64) -> Result<()> {
        const TRIALS: usize = 200;
        const TOL: f64 = 1e-9;
        let mut rng = trial_rng(seed, 0x5cf);

        // (F1) faithfulness at every permutation of the point mass.
        for d in 2..=6 {
            for pos in 0..d {
                let mut p = vec![0.0; d];
                p[pos] = 1.0;
                let v = (self.eval)(&p);
                if !v.is_finite() || v.abs() > TOL {
                    return Err(Error::ScfConditionFailed {
                        id: self.id.clone(),
                        condition: "F1 (faithfulness)",
                        defect: v.abs(),
                    });
                }
            }
        }

        for _ in 0..TRIALS {
            let d = rng.random_range(2..=6);
            let p = random_simplex(d, &mut rng);
            let q = random_simplex(d, &mut rng);

            // (F2) permutation invariance.
            let mut shuffled = p.clone();
            for i in (1..d).rev() {
                let j = rng.random_range(0..=i);
                shuffled.swap(i, j);
            }
            let defect = ((self.eval)(&p) - (self.eval)(&shuffled)).abs();
            if !defect.is_finite() || defect > TOL {
                return Err(Error::ScfConditionFailed {
                    id: self.id.clone(),
                    condition: "F2 (permutation invariance)",
                    defect,
                });
            }

            // (F3) concavity.
            let r: f64 = rng.random();
            let mix: Vec<f64> = p
                .iter()
                .zip(q.iter())
                .map(|(&a, &b)| r * a + (1.0 - r) * b)
                .collect();
            let lhs = (self.eval)(&mix);
            let rhs = r * (self.eval)(&p) + (1.0 - r) * (self.eval)(&q);
            if !lhs.is_finite() || lhs < rhs - TOL {
                return Err(Error::ScfConditionFailed {
                    id: self.id.clone(),
                    condition: "F3 (concavity)",
                    defect: rhs - lhs,
                });
            }
        }
        Ok(())
    }
}

/// Uniform point on the simplex (normalized exponentials).
fn random_simplex<R: Rng>(d: usize, rng: &mut R) -> Vec<f64> {
    let mut p: Vec<f64> = (0..d).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    p
}

/// Evaluate a registered function on a probability vector.
pub fn eval_scf(f: &Scf, p: &ProbVector) -> f64 {
    f.eval(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::Tolerance;

    const TOL: Tolerance = Tolerance::DEFAULT;

    #[test]
    fn shannon_values() {
        let f = Scf::shannon();
        let point = ProbVector::new(vec![1.0, 0.0, 0.0], &TOL).unwrap();
        assert_eq!(f.eval(&point), 0.0);
        let half = ProbVector::new(vec![0.5, 0.5], &TOL).unwrap();
        assert!((f.eval(&half) - std::f64::consts::LN_2).abs() < 1e-15);
        let skewed = ProbVector::new(vec![0.5, 0.26, 0.24], &TOL).unwrap();
        let expect = -(0.5f64 * 0.5f64.ln() + 0.26 * 0.26f64.ln() + 0.24 * 0.24f64.ln());
        assert!((f.eval(&skewed) - expect).abs() < 1e-15);
        // Frozen value computed from the definition above.
        assert!((expect - 1.039320664104926).abs() < 1e-12);
    }

    #[test]
    fn builtins_pass_screening() {
        for f in Scf::builtins() {
            f.validate(7).unwrap();
        }
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(Scf::builtin("shannon").unwrap().id(), "shannon");
        assert!(matches!(
            Scf::builtin("renyi_2"),
            Err(Error::UnknownFunction(_))
        ));
    }

    #[test]
    fn custom_rejects_non_concave() {
        // Purity is convex, not concave.
        let bad = Scf::custom(
            "purity_gap",
            |p| p.iter().map(|&x| x * x).sum::<f64>() - 1.0 / p.len() as f64,
            3,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn custom_rejects_unfaithful() {
        let bad = Scf::custom(
            "offset",
            |p| 1.0 - p.iter().map(|&x| x * x).sum::<f64>() + 0.1,
            3,
        );
        assert!(matches!(
            bad,
            Err(Error::ScfConditionFailed {
                condition: "F1 (faithfulness)",
                ..
            })
        ));
    }

    #[test]
    fn custom_rejects_asymmetric() {
        let bad = Scf::custom(
            "weighted",
            |p| {
                -p.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0.0)
                    .map(|(i, &x)| (i + 1) as f64 * x * x.ln())
                    .sum::<f64>()
            },
            3,
        );
        assert!(matches!(
            bad,
            Err(Error::ScfConditionFailed {
                condition: "F2 (permutation invariance)",
                ..
            })
        ));
    }

    #[test]
    fn custom_accepts_renyi_half() {
        // 2(ln sum sqrt(p)) is symmetric concave and faithful.
        let good = Scf::custom(
            "renyi_half",
            |p| 2.0 * p.iter().map(|&x| x.max(0.0).sqrt()).sum::<f64>().ln(),
            3,
        );
        assert!(good.is_ok());
    }

    #[test]
    fn schur_concavity_of_builtins() {
        // p ≺ q implies f(p) >= f(q) for all built-ins; spot-check a chain.
        let p = ProbVector::new(vec![0.4, 0.3, 0.3], &TOL).unwrap();
        let q = ProbVector::new(vec![0.6, 0.3, 0.1], &TOL).unwrap();
        for f in Scf::builtins() {
            assert!(f.eval(&p) >= f.eval(&q) - 1e-12, "failed for {}", f.id());
        }
    }
}
