//! Partial incoherent operations (PIO) at the Kraus level.
//!
//! A Kraus operator on the composite system is PIO-structured when,
//! viewed as a `d_a x d_a` grid of `d_b x d_b` blocks, every block-column
//! holds at most one nonzero block: such operators map the free set into
//! itself. The module validates this structure, applies channels and
//! selective instruments, decides pure-state convertibility by
//! majorization of partial coherence vectors, and synthesizes an explicit
//! pipeline (collapse, a T-transform ladder on party a, re-preparation)
//! for every convertible pair.

use num_complex::Complex64;
use rand::Rng;

use crate::coherence::{coherence_vector, PcvMode};
use crate::error::{Error, Result};
use crate::linalg::{
    cr, from_e0_unitary, identity_defect, max_abs, permutation_matrix, to_e0_unitary, CMat, CVec,
    C_ONE, C_ZERO,
};
use crate::majorization::is_majorized_by;
use crate::random::{haar_unitary_rng, trial_rng};
use crate::states::{DensityMatrix, PureState, UnitaryMatrix, NORM_FIX_CAP};
use crate::tol::Tolerance;

/// Hard cap on the Kraus count produced by flattening.
pub const FLATTEN_CAP: usize = 4096;

/// A completely positive trace-preserving map as a list of Kraus matrices
/// on a fixed `d_a x d_b` composite system.
#[derive(Debug, Clone)]
pub struct KrausSet {
    da: usize,
    db: usize,
    kraus: Vec<CMat>,
}

impl KrausSet {
    /// Validate dimensions and completeness `sum K^dag K = 1` (entrywise
    /// within `atol * d`).
    pub fn new(da: usize, db: usize, kraus: Vec<CMat>, tol: &Tolerance) -> Result<Self> {
        let d = da * db;
        if kraus.is_empty() {
            return Err(Error::DimensionMismatch("empty Kraus list".into()));
        }
        for k in &kraus {
            if k.nrows() != d || k.ncols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator is {}x{}, expected {d}x{d}",
                    k.nrows(),
                    k.ncols()
                )));
            }
        }
        let set = KrausSet { da, db, kraus };
        let residual = set.completeness_residual();
        if residual > tol.atol * d as f64 {
            return Err(Error::IncompleteKraus(residual));
        }
        Ok(set)
    }

    pub(crate) fn trusted(da: usize, db: usize, kraus: Vec<CMat>) -> Self {
        KrausSet { da, db, kraus }
    }

    pub fn da(&self) -> usize {
        self.da
    }

    pub fn db(&self) -> usize {
        self.db
    }

    pub fn dim(&self) -> usize {
        self.da * self.db
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn len(&self) -> usize {
        self.kraus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus.is_empty()
    }

    /// Max entrywise deviation of `sum K^dag K` from the identity.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.dim();
        let mut acc = CMat::zeros(d, d);
        for k in &self.kraus {
            acc += k.adjoint() * k;
        }
        identity_defect(&acc)
    }

    /// Structural PIO test: at most one nonzero `d_b x d_b` block per
    /// block-column in every Kraus operator.
    pub fn is_pio(&self, tol: &Tolerance) -> bool {
        self.kraus.iter().all(|k| {
            (0..self.da).all(|col| {
                let mut nonzero = 0usize;
                for row in 0..self.da {
                    let mut fro = 0.0f64;
                    for x in 0..self.db {
                        for y in 0..self.db {
                            fro += k[(row * self.db + x, col * self.db + y)].norm_sqr();
                        }
                    }
                    if fro.sqrt() > tol.atol {
                        nonzero += 1;
                    }
                }
                nonzero <= 1
            })
        })
    }

    /// Channel action `rho -> sum K rho K^dag`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "channel acts on dimension {}, state has {}",
                self.dim(),
                rho.dim()
            )));
        }
        let d = self.dim();
        let mut out = CMat::zeros(d, d);
        for k in &self.kraus {
            out += k * rho.mat() * k.adjoint();
        }
        Ok(DensityMatrix::trusted(self.da, self.db, out))
    }

    /// Selective-measurement outcomes on a pure input: normalized branch
    /// states with probabilities, branches below `atol` omitted.
    pub fn branch_outcomes(&self, s: &PureState, tol: &Tolerance) -> Result<Vec<(f64, PureState)>> {
        if s.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "channel acts on dimension {}, state has {}",
                self.dim(),
                s.dim()
            )));
        }
        let mut branches = Vec::new();
        for k in &self.kraus {
            let v = k * s.amps();
            let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if p <= tol.atol {
                continue;
            }
            let norm = p.sqrt();
            branches.push((
                p,
                PureState::from_normalized(self.da, self.db, v.map(|z| z / cr(norm))),
            ));
        }
        Ok(branches)
    }

    /// Scale every Kraus operator by `sqrt(w)` (used to flatten mixtures
    /// of channels into a single set).
    fn scaled(&self, w: f64) -> Vec<CMat> {
        let f = cr(w.sqrt());
        self.kraus.iter().map(|k| k.map(|z| z * f)).collect()
    }
}

/// An ordered composition of Kraus stages (applied first to last).
#[derive(Debug, Clone)]
pub struct ChannelPipeline {
    stages: Vec<KrausSet>,
}

impl ChannelPipeline {
    pub fn new(stages: Vec<KrausSet>) -> Result<Self> {
        let first = stages
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty pipeline".into()))?;
        let dim = first.dim();
        if stages.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch(
                "pipeline stages act on different dimensions".into(),
            ));
        }
        Ok(ChannelPipeline { stages })
    }

    pub fn stages(&self) -> &[KrausSet] {
        &self.stages
    }

    pub fn da(&self) -> usize {
        self.stages[0].da()
    }

    pub fn db(&self) -> usize {
        self.stages[0].db()
    }

    /// Apply all stages in order.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let mut state = rho.clone();
        for stage in &self.stages {
            state = stage.apply(&state)?;
        }
        Ok(state)
    }

    /// Every stage passes the structural PIO test.
    pub fn is_pio(&self, tol: &Tolerance) -> bool {
        self.stages.iter().all(|s| s.is_pio(tol))
    }

    /// Collapse the pipeline into a single Kraus set whose operators are
    /// all ordered products across stages. Products that vanish to
    /// rounding level are dropped; the count is capped at [`FLATTEN_CAP`].
    pub fn flatten(&self) -> Result<KrausSet> {
        let count: usize = self.stages.iter().map(|s| s.len()).product();
        if count > FLATTEN_CAP {
            return Err(Error::KrausBlowup(count, FLATTEN_CAP));
        }
        let d = self.stages[0].dim();
        let mut products: Vec<CMat> = vec![CMat::identity(d, d)];
        for stage in &self.stages {
            let mut next = Vec::with_capacity(products.len() * stage.len());
            for k in stage.kraus() {
                for p in &products {
                    next.push(k * p);
                }
            }
            products = next;
        }
        products.retain(|k| max_abs(k) > 1e-14);
        Ok(KrausSet::trusted(
            self.stages[0].da(),
            self.stages[0].db(),
            products,
        ))
    }
}

/// Free-function forms of the channel operations.
pub fn is_pio_kraus_set(k: &KrausSet, tol: &Tolerance) -> bool {
    k.is_pio(tol)
}

pub fn apply_channel(k: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    k.apply(rho)
}

pub fn branch_outcomes(
    k: &KrausSet,
    s: &PureState,
    tol: &Tolerance,
) -> Result<Vec<(f64, PureState)>> {
    k.branch_outcomes(s, tol)
}

pub fn flatten_pipeline(p: &ChannelPipeline) -> Result<KrausSet> {
    p.flatten()
}

/// Theorem-level convertibility: `src -> dst` under PIO iff the party-a
/// coherence vector of `src` is majorized by that of `dst`. Party-b
/// dimensions may differ; only party-a vectors are compared.
pub fn pio_convertible(src: &PureState, dst: &PureState, tol: &Tolerance) -> Result<bool> {
    if src.da() != dst.da() {
        return Err(Error::DimensionMismatch(format!(
            "party-a dimensions differ ({} vs {})",
            src.da(),
            dst.da()
        )));
    }
    Ok(is_majorized_by(
        &coherence_vector(src, PcvMode::A),
        &coherence_vector(dst, PcvMode::A),
        tol,
    ))
}

/// Conditional b-state of row `i`, or `None` when the row carries no
/// weight.
fn conditional_b_state(s: &PureState, i: usize, weight: f64) -> Option<CVec> {
    if weight <= 1e-14 {
        return None;
    }
    let db = s.db();
    let mut v = CVec::zeros(db);
    let scale = cr(1.0 / weight.sqrt());
    for j in 0..db {
        v[j] = s.amp(i, j) * scale;
    }
    Some(v)
}

/// Controlled unitary `sum_i |i><i| (x) U_i` as a single composite matrix.
fn controlled_unitary(da: usize, db: usize, blocks: &[CMat]) -> CMat {
    let d = da * db;
    let mut u = CMat::zeros(d, d);
    for (i, b) in blocks.iter().enumerate() {
        for x in 0..db {
            for y in 0..db {
                u[(i * db + x, i * db + y)] = b[(x, y)];
            }
        }
    }
    u
}

/// One step of the Hardy-Littlewood-Polya reduction: the largest index
/// where `y` still exceeds `x`, the first later index where it falls
/// short, and the transferred mass.
fn hlp_step(x: &[f64], y: &[f64], eps: f64) -> Option<(usize, usize, f64)> {
    let n = x.len();
    let j = (0..n).rev().find(|&j| y[j] > x[j] + eps)?;
    let k = (j + 1..n).find(|&k| y[k] < x[k] - eps)?;
    let delta = (y[j] - x[j]).min(x[k] - y[k]);
    Some((j, k, delta))
}

/// The two-outcome party-a instrument that deterministically converts the
/// pure state with sorted weight vector `from` into the one with vector
/// `to`, where `from = T to` on the pair `(j, k)`.
fn t_transform_instrument(
    da: usize,
    db: usize,
    from: &[f64],
    to: &[f64],
    j: usize,
    k: usize,
) -> KrausSet {
    let denom = to[j] - to[k];
    let p1 = if denom.abs() < 1e-15 {
        1.0
    } else {
        ((from[j] - to[k]) / denom).clamp(0.0, 1.0)
    };
    let p2 = 1.0 - p1;

    let ratio = |num: f64, den: f64, p: f64| -> f64 {
        if den <= 1e-15 {
            // Zero-weight coordinate: any magnitude with |a|^2 + |b|^2 = 1
            // works; split as the mixing probabilities.
            p.sqrt()
        } else {
            (p * num / den).max(0.0).sqrt()
        }
    };

    let mut kraus = Vec::new();
    if p1 > 1e-30 {
        let mut k1 = CMat::zeros(da * db, da * db);
        for i in 0..da {
            let a = ratio(to[i], from[i], p1);
            for x in 0..db {
                k1[(i * db + x, i * db + x)] = cr(a);
            }
        }
        kraus.push(k1);
    }
    if p2 > 1e-30 {
        let swap = |i: usize| -> usize {
            if i == j {
                k
            } else if i == k {
                j
            } else {
                i
            }
        };
        let mut k2 = CMat::zeros(da * db, da * db);
        for i in 0..da {
            let target = swap(i);
            let b = ratio(to[target], from[i], p2);
            for x in 0..db {
                k2[(target * db + x, i * db + x)] = cr(b);
            }
        }
        kraus.push(k2);
    }
    KrausSet::trusted(da, db, kraus)
}

/// Explicit PIO pipeline realizing `src -> dst` (Theorem 1, sufficiency).
///
/// Stage 1 collapses every conditional b-state onto `|1>_b` and sorts the
/// party-a weights; the middle stages walk a T-transform ladder from the
/// source weight vector to the target one; the last stage restores the
/// target ordering and re-prepares the target conditional b-states.
pub fn synthesize_pio(
    src: &PureState,
    dst: &PureState,
    tol: &Tolerance,
) -> Result<ChannelPipeline> {
    if !pio_convertible(src, dst, tol)? {
        return Err(Error::NotConvertible);
    }
    if src.db() != dst.db() {
        return Err(Error::DimensionMismatch(format!(
            "channel synthesis needs equal party-b dimensions ({} vs {})",
            src.db(),
            dst.db()
        )));
    }
    let (da, db) = (src.da(), src.db());
    let x = coherence_vector(src, PcvMode::A);
    let y = coherence_vector(dst, PcvMode::A);
    let x = x.entries();
    let y = y.entries();

    // Descending orders (stable).
    let mut order_x: Vec<usize> = (0..da).collect();
    order_x.sort_by(|&a, &b| x[b].partial_cmp(&x[a]).expect("finite"));
    let mut order_y: Vec<usize> = (0..da).collect();
    order_y.sort_by(|&a, &b| y[b].partial_cmp(&y[a]).expect("finite"));
    let xs: Vec<f64> = order_x.iter().map(|&i| x[i]).collect();
    let ys: Vec<f64> = order_y.iter().map(|&i| y[i]).collect();

    let mut stages: Vec<KrausSet> = Vec::new();

    // Stage 1: collapse conditional b-states to |1>_b, then sort party a.
    let collapse_blocks: Vec<CMat> = (0..da)
        .map(|i| match conditional_b_state(src, i, x[i]) {
            Some(v) => to_e0_unitary(&v),
            None => CMat::identity(db, db),
        })
        .collect();
    let mut sort_x = vec![0usize; da];
    for (pos, &orig) in order_x.iter().enumerate() {
        sort_x[orig] = pos;
    }
    let u1 = permutation_matrix(&sort_x).kronecker(&CMat::identity(db, db))
        * controlled_unitary(da, db, &collapse_blocks);
    stages.push(KrausSet::trusted(da, db, vec![u1]));

    // T-transform ladder from ys down to xs, replayed in reverse on the
    // state. Chain vectors: ys = v_0, v_1, ..., v_M ~ xs.
    let mut chain: Vec<Vec<f64>> = vec![ys.clone()];
    let mut cur = ys.clone();
    for _ in 0..(4 * da) {
        match hlp_step(&xs, &cur, 1e-13) {
            Some((j, k, delta)) => {
                cur[j] -= delta;
                cur[k] += delta;
                chain.push(cur.clone());
            }
            None => break,
        }
    }
    // Instruments run from the state's current vector (xs, end of chain)
    // back to ys (start of chain).
    for w in chain.windows(2).rev() {
        let (to, from) = (&w[0], &w[1]);
        let (j, k) = pick_pair(from, to)?;
        stages.push(t_transform_instrument(da, db, from, to, j, k));
    }

    // Final stage: restore target ordering, then prepare target b-states.
    let prepare_blocks: Vec<CMat> = (0..da)
        .map(|i| match conditional_b_state(dst, i, y[i]) {
            Some(v) => from_e0_unitary(&v),
            None => CMat::identity(db, db),
        })
        .collect();
    let u2 = controlled_unitary(da, db, &prepare_blocks)
        * permutation_matrix(&order_y).kronecker(&CMat::identity(db, db));
    stages.push(KrausSet::trusted(da, db, vec![u2]));

    ChannelPipeline::new(stages)
}

/// The coordinate pair on which two adjacent ladder vectors differ.
fn pick_pair(from: &[f64], to: &[f64]) -> Result<(usize, usize)> {
    let mut j = None;
    let mut k = None;
    for (i, (&f, &t)) in from.iter().zip(to.iter()).enumerate() {
        if (f - t).abs() > 1e-15 {
            if t > f {
                j = Some(i);
            } else {
                k = Some(i);
            }
        }
    }
    match (j, k) {
        (Some(j), Some(k)) => Ok((j, k)),
        _ => Err(Error::Invalid(
            "degenerate ladder step without a transfer pair".into(),
        )),
    }
}

/// `|psi_max> = (1/sqrt(d_a)) sum_i |i>_a |b_i>_b` for arbitrary
/// normalized (not necessarily orthogonal) conditional states.
pub fn maximal_state(da: usize, b_states: &[Vec<Complex64>], tol: &Tolerance) -> Result<PureState> {
    if b_states.len() != da {
        return Err(Error::DimensionMismatch(format!(
            "need {da} conditional b-states, got {}",
            b_states.len()
        )));
    }
    let db = b_states
        .first()
        .map(|v| v.len())
        .ok_or_else(|| Error::DimensionMismatch("empty b-state list".into()))?;
    let mut amps = CVec::zeros(da * db);
    let scale = cr(1.0 / (da as f64).sqrt());
    for (i, b) in b_states.iter().enumerate() {
        if b.len() != db {
            return Err(Error::DimensionMismatch(
                "conditional b-states have different lengths".into(),
            ));
        }
        let norm: f64 = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol.atol.max(NORM_FIX_CAP) {
            return Err(Error::NormDeviation((norm - 1.0).abs()));
        }
        for j in 0..db {
            amps[i * db + j] = scale * b[j] / cr(norm);
        }
    }
    Ok(PureState::from_normalized(da, db, amps))
}

/// PIO channel mapping the canonical maximal state (`b_i = |1>_b`) to an
/// arbitrary target density matrix: synthesize one pipeline per spectral
/// eigenstate and flatten the mixture `sum_i q_i E_i` into scaled Kraus
/// operators.
pub fn prepare_from_maximal(rho: &DensityMatrix, tol: &Tolerance) -> Result<ChannelPipeline> {
    let (da, db) = (rho.da(), rho.db());
    let e0: Vec<Complex64> = {
        let mut v = vec![C_ZERO; db];
        v[0] = C_ONE;
        v
    };
    let psi_max = maximal_state(da, &vec![e0; da], tol)?;
    let ensemble = rho.eigen_ensemble(tol)?;
    let mut kraus: Vec<CMat> = Vec::new();
    for (w, target) in ensemble
        .weights
        .entries()
        .iter()
        .zip(ensemble.states.iter())
    {
        let pipe = synthesize_pio(&psi_max, target, tol)?;
        let flat = pipe.flatten()?;
        kraus.extend(flat.scaled(*w));
        if kraus.len() > FLATTEN_CAP {
            return Err(Error::KrausBlowup(kraus.len(), FLATTEN_CAP));
        }
    }
    ChannelPipeline::new(vec![KrausSet::trusted(da, db, kraus)])
}

/// The orthogonalizing controlled unitary of the coherence-entanglement
/// correspondence: rotates each populated conditional b-state onto a
/// distinct computational basis vector, so the output's Schmidt vector
/// equals the sorted partial coherence vector.
pub fn orthogonalizing_pio(s: &PureState, tol: &Tolerance) -> Result<KrausSet> {
    let (da, db) = (s.da(), s.db());
    let pcv = coherence_vector(s, PcvMode::A);
    let support: Vec<usize> = (0..da).filter(|&i| pcv.entries()[i] > tol.atol).collect();
    if support.len() > db {
        return Err(Error::SupportExceedsB {
            support: support.len(),
            db,
        });
    }
    let mut blocks: Vec<CMat> = vec![CMat::identity(db, db); da];
    for (slot, &i) in support.iter().enumerate() {
        let v = conditional_b_state(s, i, pcv.entries()[i]).expect("supported row");
        let mut to_slot: Vec<usize> = (0..db).collect();
        to_slot.swap(0, slot);
        blocks[i] = permutation_matrix(&to_slot) * to_e0_unitary(&v);
    }
    let u = controlled_unitary(da, db, &blocks);
    Ok(KrausSet::trusted(da, db, vec![u]))
}

/// Configuration for [`random_pio`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PioRandomConfig {
    /// Kraus operators per instrument/noise layer.
    pub n_kraus: usize,
    /// Number of composed elementary layers.
    pub depth: usize,
    pub seed: u64,
}

impl Default for PioRandomConfig {
    fn default() -> Self {
        PioRandomConfig {
            n_kraus: 3,
            depth: 2,
            seed: 0,
        }
    }
}

/// Sample a random PIO channel as a composition of elementary layers:
/// controlled unitaries, party-a incoherent instruments (weighted random
/// permutations), and channels acting on party b alone.
pub fn random_pio(da: usize, db: usize, cfg: &PioRandomConfig) -> Result<KrausSet> {
    if da == 0 || db == 0 || cfg.n_kraus == 0 || cfg.depth == 0 {
        return Err(Error::DimensionMismatch(
            "dimensions, depth, and Kraus count must be positive".into(),
        ));
    }
    let mut rng = trial_rng(cfg.seed, 0x710);
    let mut stages = Vec::with_capacity(cfg.depth);
    for _ in 0..cfg.depth {
        let layer = match rng.random_range(0..3u8) {
            0 => controlled_unitary_layer(da, db, &mut rng),
            1 => incoherent_instrument_layer(da, db, cfg.n_kraus, &mut rng),
            _ => b_channel_layer(da, db, cfg.n_kraus, &mut rng),
        };
        stages.push(layer);
    }
    ChannelPipeline::new(stages)?.flatten()
}

fn controlled_unitary_layer<R: Rng>(da: usize, db: usize, rng: &mut R) -> KrausSet {
    let blocks: Vec<CMat> = (0..da).map(|_| haar_unitary_rng(db, rng)).collect();
    KrausSet::trusted(da, db, vec![controlled_unitary(da, db, &blocks)])
}

/// Party-a incoherent instrument: Kraus operators `D_n P_n (x) 1_b` with
/// random permutations and column weights normalized per column.
fn incoherent_instrument_layer<R: Rng>(
    da: usize,
    db: usize,
    n_kraus: usize,
    rng: &mut R,
) -> KrausSet {
    // c[n][j]: weight of Kraus n in column j; sum_n c[n][j] = 1.
    let mut weights = vec![vec![0.0f64; da]; n_kraus];
    for j in 0..da {
        let raw: Vec<f64> = (0..n_kraus)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let total: f64 = raw.iter().sum();
        for n in 0..n_kraus {
            weights[n][j] = raw[n] / total;
        }
    }
    let mut kraus = Vec::with_capacity(n_kraus);
    for w in weights.iter() {
        // Random permutation of party a.
        let mut perm: Vec<usize> = (0..da).collect();
        for i in (1..da).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        let mut k = CMat::zeros(da * db, da * db);
        for j in 0..da {
            let amp = cr(w[j].sqrt());
            for x in 0..db {
                k[(perm[j] * db + x, j * db + x)] = amp;
            }
        }
        kraus.push(k);
    }
    KrausSet::trusted(da, db, kraus)
}

/// `1_a (x) (random channel on b)` from a Haar-random Stinespring
/// dilation with an `n_kraus`-dimensional environment.
fn b_channel_layer<R: Rng>(da: usize, db: usize, n_kraus: usize, rng: &mut R) -> KrausSet {
    let w = haar_unitary_rng(db * n_kraus, rng);
    let ia = CMat::identity(da, da);
    let mut kraus = Vec::with_capacity(n_kraus);
    for e in 0..n_kraus {
        let mut kb = CMat::zeros(db, db);
        for row in 0..db {
            for col in 0..db {
                // Composite index beta*n + env with the input environment
                // fixed to 0.
                kb[(row, col)] = w[(row * n_kraus + e, col * n_kraus)];
            }
        }
        kraus.push(ia.kronecker(&kb));
    }
    KrausSet::trusted(da, db, kraus)
}

/// Kraus set of the partial decohering map: `{ |i><i| (x) 1_b }`.
pub fn dephasing_kraus(da: usize, db: usize) -> KrausSet {
    let d = da * db;
    let mut kraus = Vec::with_capacity(da);
    for i in 0..da {
        let mut k = CMat::zeros(d, d);
        for j in 0..db {
            k[(i * db + j, i * db + j)] = C_ONE;
        }
        kraus.push(k);
    }
    KrausSet::trusted(da, db, kraus)
}

/// Unitary-conjugation channel as a single-Kraus set.
pub fn unitary_channel(da: usize, db: usize, u: &UnitaryMatrix) -> Result<KrausSet> {
    if u.dim() != da * db {
        return Err(Error::DimensionMismatch(
            "unitary does not match the composite dimension".into(),
        ));
    }
    Ok(KrausSet::trusted(da, db, vec![u.mat().clone()]))
}
