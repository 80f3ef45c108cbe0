use thiserror::Error;

/// Errors produced by state construction, channel validation, and the
/// verification harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("norm deviates from 1 by {0:.3e} (silent renormalization cap is 1e-6)")]
    NormDeviation(f64),

    #[error("matrix is not Hermitian (max |m - m^\u{2020}| = {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("trace deviates from 1 by {0:.3e}")]
    NotUnitTrace(f64),

    #[error("matrix is not unitary (max |U^\u{2020}U - I| = {0:.3e})")]
    NotUnitary(f64),

    #[error("not a probability vector: {0}")]
    NotSimplex(String),

    #[error("invalid rational: {0}")]
    BadRational(String),

    #[error("unknown symmetric concave function `{0}`")]
    UnknownFunction(String),

    #[error("function `{id}` violates condition {condition} (defect {defect:.3e})")]
    ScfConditionFailed {
        id: String,
        condition: &'static str,
        defect: f64,
    },

    #[error("Kraus completeness violated (max residual {0:.3e})")]
    IncompleteKraus(f64),

    #[error("flattening would produce {0} Kraus operators (cap {1})")]
    KrausBlowup(usize, usize),

    #[error("source partial coherence vector is not majorized by the target's; no PIO exists")]
    NotConvertible,

    #[error("support of the partial coherence vector ({support}) exceeds d_b ({db})")]
    SupportExceedsB { support: usize, db: usize },

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("party dimension {0} outside the supported range [{1}, {2}]")]
    DimensionOutOfRange(usize, usize, usize),

    #[error("invalid party label `{0}` (expected `a` or `b`)")]
    InvalidParty(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
