//! Partial coherence of bipartite quantum states.
//!
//! The crate implements the resource theory whose free states are block
//! diagonal in a fixed basis of one party (`sum_i p_i |i><i| (x) rho_i`)
//! and whose free operations (PIO) preserve them Kraus-by-Kraus:
//!
//! - [`states`]: dense complex substrate: pure states, density matrices,
//!   spectral and Schmidt decompositions, seeded Haar/Ginibre sampling
//!   (see [`random`]).
//! - [`majorization`]: probability vectors, the majorization order that
//!   decides every convertibility question, catalysis, and an exact
//!   rational mode for hand-given vectors.
//! - [`scf`] and [`coherence`]: measures generated by symmetric concave
//!   functions: pure-state values `f(psi_a)` and convex-roof mixed
//!   extensions on top of [`roof`].
//! - [`pio`]: Kraus-level PIO validation, the convertibility decision,
//!   explicit channel synthesis for convertible pairs, maximal partial
//!   coherent states, and random PIO sampling.
//! - [`entangle`]: the induced entanglement measures: `f` of the Schmidt
//!   vector, the analytic minimizer over local unitaries, mixed-state
//!   roofs, and a two-qubit concurrence oracle used for verification.
//! - [`harness`]: seeded Monte Carlo suites that check the theorem-level
//!   claims and emit machine-readable reports.
//! - [`json`]: file schemas used by the command-line front end.

pub mod coherence;
pub mod entangle;
pub mod error;
pub mod harness;
pub mod json;
pub mod linalg;
pub mod majorization;
pub mod pio;
pub mod random;
pub mod roof;
pub mod scf;
pub mod states;
pub mod tol;

pub use coherence::{
    coherence_vector, is_partial_incoherent, partial_dephase, pcoh_mixed, pcoh_pure, PcvMode,
};
pub use entangle::{
    analytic_min_unitary, concurrence, ent_mixed, ent_pure, g_f, max_ent_under_pio,
    sampled_min_partial_coherence, werner_state, wootters_eof, MinimizationResult,
};
pub use error::{Error, Result};
pub use harness::{run_suite, Report, SuiteConfig, SuiteId};
pub use majorization::{
    is_catalyst, is_catalyst_exact, is_majorized_by, is_majorized_by_exact, tensor_prob,
    CatalystOutcome, ProbVector, Rational,
};
pub use pio::{
    apply_channel, branch_outcomes, flatten_pipeline, is_pio_kraus_set, maximal_state,
    orthogonalizing_pio, pio_convertible, prepare_from_maximal, random_pio, synthesize_pio,
    ChannelPipeline, KrausSet, PioRandomConfig,
};
pub use random::{ginibre_density, haar_pure, haar_unitary, random_sample, Sample, SampleKind};
pub use roof::{convex_roof, RoofConfig, RoofResult};
pub use scf::{eval_scf, Scf};
pub use states::{
    make_pure, schmidt, spectral, DensityMatrix, Ensemble, Party, PureState, SchmidtDecomposition,
    UnitaryMatrix,
};
pub use tol::Tolerance;
