//! Probability vectors and the majorization partial order.
//!
//! Majorization (`x` majorized by `y` when every prefix sum of the sorted
//! copy of `x` is bounded by the corresponding prefix sum of sorted `y`)
//! governs every convertibility statement in this crate. Comparisons come
//! in two flavors: a float mode with an absolute tolerance, and an exact
//! rational mode for hand-given vectors where decisions must be
//! tolerance-free.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::Tolerance;

/// A finite probability vector. Construction clips rounding-level
/// negatives to zero and renormalizes so the entries sum to 1 exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbVector {
    entries: Vec<f64>,
}

impl ProbVector {
    pub fn new(entries: Vec<f64>, tol: &Tolerance) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::NotSimplex("empty vector".into()));
        }
        for (i, &e) in entries.iter().enumerate() {
            if !e.is_finite() {
                return Err(Error::NotSimplex(format!("entry {i} is not finite")));
            }
            if e < -tol.atol {
                return Err(Error::NotSimplex(format!(
                    "entry {i} = {e:.3e} is negative beyond tolerance"
                )));
            }
            if e > 1.0 + tol.atol {
                return Err(Error::NotSimplex(format!(
                    "entry {i} = {e} exceeds 1 beyond tolerance"
                )));
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > tol.atol {
            return Err(Error::NotSimplex(format!(
                "sum = {sum} deviates from 1 by {:.3e}",
                (sum - 1.0).abs()
            )));
        }
        let mut clipped: Vec<f64> = entries.iter().map(|&e| e.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        if total <= 0.0 {
            return Err(Error::NotSimplex("all entries are zero".into()));
        }
        clipped.iter_mut().for_each(|e| *e /= total);
        Ok(ProbVector { entries: clipped })
    }

    /// Uniform distribution on `d` outcomes.
    pub fn uniform(d: usize) -> Self {
        ProbVector {
            entries: vec![1.0 / d as f64; d],
        }
    }

    /// Point distribution `(1, 0, ..., 0)` of length `d`.
    pub fn point(d: usize) -> Self {
        let mut entries = vec![0.0; d];
        entries[0] = 1.0;
        ProbVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entries sorted non-increasing (stable; ties keep input order).
    pub fn descending(&self) -> Vec<f64> {
        let mut sorted = self.entries.clone();
        sorted.sort_by(|a, b| b.partial_cmp(a).expect("entries are finite"));
        sorted
    }

    /// Shannon-style support: number of entries above `atol`.
    pub fn support(&self, atol: f64) -> usize {
        self.entries.iter().filter(|&&e| e > atol).count()
    }
}

/// Signed majorization slack: the largest amount by which a prefix sum of
/// sorted `x` exceeds the matching prefix sum of sorted `y`. Nonpositive
/// (up to rounding) exactly when `x` is majorized by `y`. Shorter vectors
/// are zero-padded before comparison.
pub fn majorization_slack(x: &ProbVector, y: &ProbVector) -> f64 {
    let n = x.len().max(y.len());
    let mut xs = x.descending();
    let mut ys = y.descending();
    xs.resize(n, 0.0);
    ys.resize(n, 0.0);
    let mut px = 0.0;
    let mut py = 0.0;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..n {
        px += xs[k];
        py += ys[k];
        worst = worst.max(px - py);
    }
    worst
}

/// `x` majorized by `y` within `tol.atol` on every prefix sum.
pub fn is_majorized_by(x: &ProbVector, y: &ProbVector, tol: &Tolerance) -> bool {
    majorization_slack(x, y) <= tol.atol
}

/// Tensor product with the index convention `out[i*len(y) + j] = x_i y_j`.
pub fn tensor_prob(x: &ProbVector, y: &ProbVector) -> ProbVector {
    let mut entries = Vec::with_capacity(x.len() * y.len());
    for &xi in x.entries() {
        for &yj in y.entries() {
            entries.push(xi * yj);
        }
    }
    // Products of simplex vectors stay on the simplex; no revalidation.
    ProbVector { entries }
}

/// Outcome of a catalysis check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalystOutcome {
    /// `src` is already majorized by `dst`; no catalyst needed.
    AlreadyConvertible,
    /// `src` is not majorized by `dst`, but `src (x) c` is majorized by `dst (x) c`.
    Catalyzes,
    /// The candidate does not enable the conversion.
    No,
}

impl CatalystOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            CatalystOutcome::AlreadyConvertible => "already_convertible",
            CatalystOutcome::Catalyzes => "catalyzes",
            CatalystOutcome::No => "no",
        }
    }
}

/// Does `c` catalyze the conversion of `src` into `dst`?
pub fn is_catalyst(
    c: &ProbVector,
    src: &ProbVector,
    dst: &ProbVector,
    tol: &Tolerance,
) -> CatalystOutcome {
    if is_majorized_by(src, dst, tol) {
        return CatalystOutcome::AlreadyConvertible;
    }
    let src_c = tensor_prob(src, c);
    let dst_c = tensor_prob(dst, c);
    if is_majorized_by(&src_c, &dst_c, tol) {
        CatalystOutcome::Catalyzes
    } else {
        CatalystOutcome::No
    }
}

// ---------------------------------------------------------------------------
// Exact rational mode
// ---------------------------------------------------------------------------

/// A reduced fraction with positive denominator. Arithmetic goes through
/// `i128` intermediates, which is ample for hand-given vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadRational("zero denominator".into()));
        }
        Self::reduce(num as i128, den as i128)
    }

    fn reduce(num: i128, den: i128) -> Result<Self> {
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        let num = sign * num / g;
        let den = sign * den / g;
        let num =
            i64::try_from(num).map_err(|_| Error::BadRational("numerator overflow".into()))?;
        let den =
            i64::try_from(den).map_err(|_| Error::BadRational("denominator overflow".into()))?;
        Ok(Rational { num, den })
    }

    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn add(&self, other: &Rational) -> Result<Rational> {
        let num = self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        let den = self.den as i128 * other.den as i128;
        Self::reduce(num, den)
    }

    pub fn mul(&self, other: &Rational) -> Result<Rational> {
        Self::reduce(
            self.num as i128 * other.num as i128,
            self.den as i128 * other.den as i128,
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

fn check_rational_simplex(x: &[Rational]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::NotSimplex("empty vector".into()));
    }
    if x.iter().any(Rational::is_negative) {
        return Err(Error::NotSimplex("negative rational entry".into()));
    }
    let mut sum = Rational::ZERO;
    for e in x {
        sum = sum.add(e)?;
    }
    if sum != Rational::ONE {
        return Err(Error::NotSimplex(format!(
            "rational entries sum to {}/{}, not 1",
            sum.num, sum.den
        )));
    }
    Ok(())
}

/// Exact majorization check on rational simplex vectors; no tolerances.
pub fn is_majorized_by_exact(x: &[Rational], y: &[Rational]) -> Result<bool> {
    check_rational_simplex(x)?;
    check_rational_simplex(y)?;
    let n = x.len().max(y.len());
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.resize(n, Rational::ZERO);
    ys.resize(n, Rational::ZERO);
    xs.sort_by(|a, b| b.cmp(a));
    ys.sort_by(|a, b| b.cmp(a));
    let mut px = Rational::ZERO;
    let mut py = Rational::ZERO;
    for k in 0..n {
        px = px.add(&xs[k])?;
        py = py.add(&ys[k])?;
        if px > py {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact tensor product, same index convention as [`tensor_prob`].
pub fn tensor_exact(x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for xi in x {
        for yj in y {
            out.push(xi.mul(yj)?);
        }
    }
    Ok(out)
}

/// Exact catalysis check.
pub fn is_catalyst_exact(
    c: &[Rational],
    src: &[Rational],
    dst: &[Rational],
) -> Result<CatalystOutcome> {
    if is_majorized_by_exact(src, dst)? {
        return Ok(CatalystOutcome::AlreadyConvertible);
    }
    let src_c = tensor_exact(src, c)?;
    let dst_c = tensor_exact(dst, c)?;
    if is_majorized_by_exact(&src_c, &dst_c)? {
        Ok(CatalystOutcome::Catalyzes)
    } else {
        Ok(CatalystOutcome::No)
    }
}

/// Convenience constructor for slices of `(num, den)` pairs.
pub fn rationals(pairs: &[(i64, i64)]) -> Result<Vec<Rational>> {
    pairs.iter().map(|&(n, d)| Rational::new(n, d)).collect()
}
