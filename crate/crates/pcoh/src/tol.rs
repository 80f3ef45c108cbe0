use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by every module.
///
/// `atol` absorbs floating-point rounding in validation and comparisons,
/// `fid_tol` is the slack allowed on channel-synthesis fidelities, and
/// `opt_tol` is the convergence target of the convex-roof optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub atol: f64,
    pub fid_tol: f64,
    pub opt_tol: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        atol: 1e-10,
        fid_tol: 1e-9,
        opt_tol: 1e-6,
    };

    /// All tolerances strictly positive and ordered `atol <= fid_tol <= opt_tol`.
    pub fn is_valid(&self) -> bool {
        self.atol > 0.0
            && self.fid_tol > 0.0
            && self.opt_tol > 0.0
            && self.atol <= self.fid_tol
            && self.fid_tol <= self.opt_tol
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_ordered() {
        let t = Tolerance::default();
        assert!(t.is_valid());
        assert_eq!(t.atol, 1e-10);
        assert_eq!(t.fid_tol, 1e-9);
        assert_eq!(t.opt_tol, 1e-6);
    }
}
