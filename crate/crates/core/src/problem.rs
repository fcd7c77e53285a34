//! JSON problem definitions and named presets.
//!
//! ```json
//! {
//!   "schema": "qcrd/v1",
//!   "source": [[[0.75, 0.0], [0.25, 0.0]], [[0.25, 0.0], [0.25, 0.0]]],
//!   "observable": { "kind": "eigenbasis" },
//!   "outcomes": 2,
//!   "solver": { "restarts": 8 }
//! }
//! ```
//!
//! Complex entries are `[re, im]` pairs. `source` may also be the string
//! `"paper-example"`. `side_info` carries a joint state `ρ_AB` whose
//! `A` marginal must equal `source`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::distortion::{classical_cost_observable, eigenbasis_observable, example_observable};
use crate::linalg::{c, max_abs_diff, partial_trace, ComplexMatrix, HermitianOperator, MAX_DIM};
use crate::presets::{example_source, hamming_costs, luo_devetak_source};
use crate::states::{computational_basis, purify, purify_joint};
use crate::{DensityOperator, DistortionObservable, Error, Purification, Result, SolverOptions};

pub const SCHEMA: &str = "qcrd/v1";

/// Name of the qubit `|+⟩`/`|0⟩` preset.
pub const PAPER_EXAMPLE: &str = "paper-example";
pub const LUO_DEVETAK: &str = "luo-devetak";
pub const PRESETS: [&str; 2] = [PAPER_EXAMPLE, LUO_DEVETAK];

const MARGINAL_TOL: f64 = 1e-8;

pub type MatrixSpec = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SourceSpec {
    Preset(String),
    Matrix(MatrixSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideInfoSpec {
    /// Joint state on `A ⊗ B`.
    pub state: MatrixSpec,
    pub b_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CostBasis {
    /// Reference Schmidt basis of the source.
    Eigenbasis,
    Computational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum KindedObservable {
    PaperExample,
    Eigenbasis,
    ClassicalCost { costs: Vec<Vec<f64>>, basis: CostBasis },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObservableSpec {
    Blocks(Vec<MatrixSpec>),
    Kinded(KindedObservable),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub restarts: Option<usize>,
    pub max_iterations: Option<usize>,
    pub lagrange_grid: Option<Vec<f64>>,
    pub convergence_tol: Option<f64>,
    pub rng_seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema: String,
    pub source: SourceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side_info: Option<SideInfoSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable: Option<ObservableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<usize>,
    #[serde(default)]
    pub solver: SolverSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    /// Spec form of a named preset.
    pub fn preset(name: &str) -> Result<Self> {
        let base = |source: SourceSpec| ProblemSpec {
            schema: SCHEMA.into(),
            source,
            side_info: None,
            observable: None,
            outcomes: None,
            solver: SolverSpec::default(),
            output: OutputSpec::default(),
        };
        match name {
            PAPER_EXAMPLE => Ok(ProblemSpec {
                observable: Some(ObservableSpec::Kinded(KindedObservable::PaperExample)),
                outcomes: Some(2),
                ..base(SourceSpec::Preset(PAPER_EXAMPLE.into()))
            }),
            LUO_DEVETAK => {
                let joint = luo_devetak_source();
                let marginal = partial_trace(joint.op(), &[2, 2], &[0]).expect("2x2 joint");
                Ok(ProblemSpec {
                    side_info: Some(SideInfoSpec { state: matrix_to_spec(joint.matrix()), b_dim: 2 }),
                    observable: Some(ObservableSpec::Kinded(KindedObservable::ClassicalCost {
                        costs: hamming_costs(2),
                        basis: CostBasis::Computational,
                    })),
                    outcomes: Some(2),
                    ..base(SourceSpec::Matrix(matrix_to_spec(marginal.matrix())))
                })
            }
            other => Err(Error::UnknownPreset(other.into())),
        }
    }

    /// Validates and expands the spec.
    pub fn resolve(&self) -> Result<Problem> {
        if self.schema != SCHEMA {
            return Err(Error::InvalidArgument(format!(
                "unsupported schema {:?}, expected {SCHEMA:?}",
                self.schema
            )));
        }
        let (source, preset) = match &self.source {
            SourceSpec::Preset(name) if name == PAPER_EXAMPLE => (example_source(), Some(PAPER_EXAMPLE)),
            SourceSpec::Preset(name) => return Err(Error::UnknownPreset(name.clone())),
            SourceSpec::Matrix(m) => (DensityOperator::from_matrix(matrix_from_spec(m)?)?, None),
        };
        let dim = source.dim();
        if dim > MAX_DIM {
            return Err(Error::InvalidArgument(format!("source dimension {dim} exceeds {MAX_DIM}")));
        }

        let side_info = match &self.side_info {
            None => None,
            Some(si) => {
                let joint = DensityOperator::from_matrix(matrix_from_spec(&si.state)?)?;
                if si.b_dim == 0 || joint.dim() != dim * si.b_dim {
                    return Err(Error::DimensionMismatch { expected: dim * si.b_dim.max(1), found: joint.dim() });
                }
                let marginal = partial_trace(joint.op(), &[dim, si.b_dim], &[0])?;
                let dev = max_abs_diff(marginal.matrix(), source.matrix());
                if dev > MARGINAL_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "side_info marginal on A differs from source by {dev:e}"
                    )));
                }
                Some(SideInfo { joint, b_dim: si.b_dim })
            }
        };

        let observable = match &self.observable {
            None if preset == Some(PAPER_EXAMPLE) => example_observable(),
            None => eigenbasis_observable(&source),
            Some(ObservableSpec::Kinded(KindedObservable::PaperExample)) => {
                if dim != 2 {
                    return Err(Error::DimensionMismatch { expected: 2, found: dim });
                }
                example_observable()
            }
            Some(ObservableSpec::Kinded(KindedObservable::Eigenbasis)) => eigenbasis_observable(&source),
            Some(ObservableSpec::Kinded(KindedObservable::ClassicalCost { costs, basis })) => {
                let basis = match basis {
                    CostBasis::Eigenbasis => purify(&source).reference_schmidt_basis().expect("canonical"),
                    CostBasis::Computational => computational_basis(dim),
                };
                classical_cost_observable(costs, &basis)?
            }
            Some(ObservableSpec::Blocks(blocks)) => DistortionObservable::new(
                blocks
                    .iter()
                    .map(|b| HermitianOperator::new(matrix_from_spec(b)?))
                    .collect::<Result<_>>()?,
            )?,
        };
        let b_dim = side_info.as_ref().map_or(1, |s| s.b_dim);
        let full_dim = dim * b_dim * b_dim;
        if observable.dim() != dim && observable.dim() != full_dim {
            return Err(Error::DimensionMismatch { expected: dim, found: observable.dim() });
        }
        if observable.dim() != dim && side_info.is_none() {
            return Err(Error::DimensionMismatch { expected: dim, found: observable.dim() });
        }

        let outcomes = self.outcomes.unwrap_or(observable.outcome_count());
        if outcomes != observable.outcome_count() {
            return Err(Error::OutcomeMismatch { povm: outcomes, observable: observable.outcome_count() });
        }

        let defaults = SolverOptions::default();
        let s = &self.solver;
        let solver = SolverOptions {
            restarts: s.restarts.unwrap_or(defaults.restarts),
            max_iterations: s.max_iterations.unwrap_or(defaults.max_iterations),
            lagrange_grid: s.lagrange_grid.clone().unwrap_or(defaults.lagrange_grid),
            convergence_tol: s.convergence_tol.unwrap_or(defaults.convergence_tol),
            rng_seed: s.rng_seed.unwrap_or(defaults.rng_seed),
        };
        solver.validate()?;

        Ok(Problem {
            preset: preset.map(str::to_owned),
            source,
            side_info,
            observable,
            outcomes,
            solver,
            output: self.output.clone(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct SideInfo {
    pub joint: DensityOperator,
    pub b_dim: usize,
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub preset: Option<String>,
    pub source: DensityOperator,
    pub side_info: Option<SideInfo>,
    /// Acts on `R`, or on `R ⊗ B` when it has that dimension.
    pub observable: DistortionObservable,
    pub outcomes: usize,
    pub solver: SolverOptions,
    pub output: OutputSpec,
}

impl Problem {
    pub fn from_preset(name: &str) -> Result<Self> {
        ProblemSpec::preset(name)?.resolve()
    }

    fn observable_on_reference(&self) -> bool {
        self.observable.dim() == self.source.dim()
    }

    /// Purification of `ρ_A` alone.
    pub fn purification(&self) -> Purification {
        purify(&self.source)
    }

    /// Observable for [`Problem::purification`].
    pub fn plain_observable(&self) -> Result<&DistortionObservable> {
        if self.observable_on_reference() {
            Ok(&self.observable)
        } else {
            Err(Error::InvalidArgument("observable acts on R ⊗ B; use the side-information problem".into()))
        }
    }

    /// Purification of `ρ_AB`; a one-dimensional `B` when no side
    /// information was given.
    pub fn qsi_purification(&self) -> Result<Purification> {
        match &self.side_info {
            Some(si) => purify_joint(&si.joint, [self.source.dim(), si.b_dim]),
            None => purify_joint(&self.source, [self.source.dim(), 1]),
        }
    }

    pub fn b_dim(&self) -> usize {
        self.side_info.as_ref().map_or(1, |s| s.b_dim)
    }

    /// Observable on `R ⊗ B` for [`Problem::qsi_purification`].
    pub fn qsi_observable(&self) -> DistortionObservable {
        if self.observable_on_reference() {
            self.observable.lift_to_side_info(self.b_dim())
        } else {
            self.observable.clone()
        }
    }

    /// Smallest distortion of a constant measurement: beyond it the rate
    /// is zero.
    pub fn zero_rate_distortion(&self) -> f64 {
        let psi = self.purification();
        let rho_r = psi.reference_state();
        match self.plain_observable() {
            Ok(obs) => obs.blocks().iter().map(|b| b.trace_product(&rho_r)).fold(f64::INFINITY, f64::min),
            Err(_) => self.observable.d_max(),
        }
    }

    /// 26 points from 0 to 0.25 for the `|+⟩`/`|0⟩` preset, otherwise 21
    /// points from 0 to the zero-rate distortion.
    pub fn default_grid(&self) -> Vec<f64> {
        if self.preset.as_deref() == Some(PAPER_EXAMPLE) {
            return (0..=25).map(|i| i as f64 / 100.0).collect();
        }
        let top = self.zero_rate_distortion();
        (0..=20).map(|i| top * i as f64 / 20.0).collect()
    }
}

pub fn matrix_from_spec(m: &MatrixSpec) -> Result<ComplexMatrix> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| c(m[i][j][0], m[i][j][1])))
}

pub fn matrix_to_spec(m: &ComplexMatrix) -> MatrixSpec {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}
