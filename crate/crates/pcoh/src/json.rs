//! File schemas for states, density matrices, probability vectors, and
//! channels. Complex numbers serialize as `[re, im]` pairs; amplitude
//! vectors follow the crate's row-major `i*db + j` layout.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::majorization::{rationals, ProbVector, Rational};
use crate::pio::{ChannelPipeline, KrausSet};
use crate::states::{DensityMatrix, PureState};
use crate::tol::Tolerance;

/// `{"da": .., "db": .., "amps": [[re, im], ..]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub da: usize,
    pub db: usize,
    pub amps: Vec<(f64, f64)>,
}

impl StateFile {
    pub fn from_state(s: &PureState) -> Self {
        StateFile {
            da: s.da(),
            db: s.db(),
            amps: s.amps().iter().map(|z| (z.re, z.im)).collect(),
        }
    }

    pub fn to_state(&self, tol: &Tolerance) -> Result<PureState> {
        let amps: Vec<Complex64> = self
            .amps
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect();
        PureState::new(self.da, self.db, amps, tol)
    }
}

/// `{"d": ..}` or `{"da": .., "db": ..}` plus `entries` as a nested
/// row-major matrix of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub da: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub db: Option<usize>,
    pub entries: Vec<Vec<(f64, f64)>>,
}

impl DensityFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let mut entries = Vec::with_capacity(d);
        for i in 0..d {
            entries.push(
                (0..d)
                    .map(|j| {
                        let z = rho.mat()[(i, j)];
                        (z.re, z.im)
                    })
                    .collect(),
            );
        }
        if rho.db() == 1 {
            DensityFile {
                d: Some(rho.da()),
                da: None,
                db: None,
                entries,
            }
        } else {
            DensityFile {
                d: None,
                da: Some(rho.da()),
                db: Some(rho.db()),
                entries,
            }
        }
    }

    pub fn to_density(&self, tol: &Tolerance) -> Result<DensityMatrix> {
        let (da, db) = match (self.d, self.da, self.db) {
            (Some(d), None, None) => (d, 1),
            (None, Some(da), Some(db)) => (da, db),
            _ => {
                return Err(Error::Invalid(
                    "density file needs either `d` or both `da` and `db`".into(),
                ))
            }
        };
        let dim = da * db;
        if self.entries.len() != dim || self.entries.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {dim}x{dim} entry grid"
            )));
        }
        let mut mat = CMat::zeros(dim, dim);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &(re, im)) in row.iter().enumerate() {
                mat[(i, j)] = Complex64::new(re, im);
            }
        }
        DensityMatrix::new(da, db, mat, tol)
    }
}

/// `{"p": [real, ..]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbFile {
    pub p: Vec<f64>,
}

impl ProbFile {
    pub fn from_prob(p: &ProbVector) -> Self {
        ProbFile {
            p: p.entries().to_vec(),
        }
    }

    pub fn to_prob(&self, tol: &Tolerance) -> Result<ProbVector> {
        ProbVector::new(self.p.clone(), tol)
    }
}

/// `{"p": [[num, den], ..]}` (exact mode).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalProbFile {
    pub p: Vec<(i64, i64)>,
}

impl RationalProbFile {
    pub fn to_rationals(&self) -> Result<Vec<Rational>> {
        rationals(&self.p)
    }
}

/// Full roof outcome including the realizing ensemble.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoofResultFile {
    pub value: f64,
    pub converged: bool,
    pub evaluations: u64,
    pub weights: Vec<f64>,
    pub states: Vec<StateFile>,
}

impl RoofResultFile {
    pub fn from_result(r: &crate::roof::RoofResult) -> Self {
        RoofResultFile {
            value: r.value,
            converged: r.converged,
            evaluations: r.evaluations,
            weights: r.ensemble.weights.entries().to_vec(),
            states: r
                .ensemble
                .states
                .iter()
                .map(StateFile::from_state)
                .collect(),
        }
    }
}

/// One pipeline stage: a list of Kraus matrices, each a nested row-major
/// grid of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageFile {
    pub kraus: Vec<Vec<Vec<(f64, f64)>>>,
}

/// `{"da": .., "db": .., "stages": [{"kraus": [..]}, ..]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelFile {
    pub da: usize,
    pub db: usize,
    pub stages: Vec<StageFile>,
}

fn matrix_to_rows(m: &CMat) -> Vec<Vec<(f64, f64)>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| (m[(i, j)].re, m[(i, j)].im))
                .collect()
        })
        .collect()
}

fn rows_to_matrix(rows: &[Vec<(f64, f64)>], dim: usize) -> Result<CMat> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {dim}x{dim} Kraus matrix"
        )));
    }
    let mut m = CMat::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, &(re, im)) in row.iter().enumerate() {
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

impl ChannelFile {
    pub fn from_pipeline(p: &ChannelPipeline) -> Self {
        ChannelFile {
            da: p.da(),
            db: p.db(),
            stages: p
                .stages()
                .iter()
                .map(|s| StageFile {
                    kraus: s.kraus().iter().map(matrix_to_rows).collect(),
                })
                .collect(),
        }
    }

    pub fn from_kraus(k: &KrausSet) -> Self {
        ChannelFile {
            da: k.da(),
            db: k.db(),
            stages: vec![StageFile {
                kraus: k.kraus().iter().map(matrix_to_rows).collect(),
            }],
        }
    }

    pub fn to_pipeline(&self, tol: &Tolerance) -> Result<ChannelPipeline> {
        let dim = self.da * self.db;
        let mut stages = Vec::with_capacity(self.stages.len());
        for stage in &self.stages {
            let kraus: Vec<CMat> = stage
                .kraus
                .iter()
                .map(|rows| rows_to_matrix(rows, dim))
                .collect::<Result<_>>()?;
            stages.push(KrausSet::new(self.da, self.db, kraus, tol)?);
        }
        ChannelPipeline::new(stages)
    }
}
