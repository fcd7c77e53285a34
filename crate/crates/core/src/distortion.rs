//! Distortion observables `Δ = Σ_x Δ_x ⊗ |x⟩⟨x|` and their evaluation.

use crate::linalg::{c, eig_hermitian, tensor, ComplexMatrix, ComplexVector, HermitianOperator, PSD_TOL};
use crate::states::{induced_cq_state, induced_cq_state_qsi, purify};
use crate::{presets, DensityOperator, Error, Povm, Purification, Result};

/// One PSD block per outcome, acting on the reference (or on `R ⊗ B`).
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionObservable {
    blocks: Vec<HermitianOperator>,
    d_max: f64,
}

impl DistortionObservable {
    pub fn new(blocks: Vec<HermitianOperator>) -> Result<Self> {
        let dim = blocks
            .first()
            .map(HermitianOperator::dim)
            .ok_or_else(|| Error::InvalidArgument("observable needs at least one block".into()))?;
        let mut d_max = f64::NEG_INFINITY;
        for b in &blocks {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: b.dim() });
            }
            let eig = eig_hermitian(b)?;
            let min_eigenvalue = *eig.eigenvalues.last().expect("nonempty");
            if min_eigenvalue < -PSD_TOL {
                return Err(Error::NotPositive { min_eigenvalue });
            }
            d_max = d_max.max(eig.eigenvalues[0]);
        }
        Ok(Self { blocks, d_max })
    }

    pub fn blocks(&self) -> &[HermitianOperator] {
        &self.blocks
    }

    pub fn outcome_count(&self) -> usize {
        self.blocks.len()
    }

    /// Dimension of the space the blocks act on.
    pub fn dim(&self) -> usize {
        self.blocks[0].dim()
    }

    /// Largest eigenvalue over all blocks.
    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    /// `Δ_x ↦ Δ_x ⊗ I_{R_B} ⊗ I_B` for a canonical purification of `ρ_AB`,
    /// whose reference splits as `R_A ⊗ R_B`.
    pub fn lift_to_side_info(&self, b_dim: usize) -> DistortionObservable {
        let id = HermitianOperator::identity(b_dim * b_dim);
        DistortionObservable {
            blocks: self.blocks.iter().map(|b| tensor(b, &id)).collect(),
            d_max: self.d_max,
        }
    }

    pub(crate) fn block_matrices(&self) -> Vec<ComplexMatrix> {
        self.blocks.iter().map(|b| b.matrix().clone()).collect()
    }
}

fn check_outcomes(povm: &Povm, delta: &DistortionObservable) -> Result<()> {
    if povm.outcomes() != delta.outcome_count() {
        return Err(Error::OutcomeMismatch { povm: povm.outcomes(), observable: delta.outcome_count() });
    }
    Ok(())
}

/// `d(ρ, M_Λ) = Tr[Δ (id_R ⊗ M_Λ)(ψ_RA)] = Σ_x Tr(Δ_x σ_x)`.
pub fn distortion(psi: &Purification, povm: &Povm, delta: &DistortionObservable) -> Result<f64> {
    check_outcomes(povm, delta)?;
    if delta.dim() != psi.reference_dim() {
        return Err(Error::DimensionMismatch { expected: psi.reference_dim(), found: delta.dim() });
    }
    let sigma = induced_cq_state(psi, povm)?;
    Ok(sigma
        .conditional_ops()
        .iter()
        .zip(delta.blocks())
        .map(|(s, d)| s.trace_product(d))
        .sum())
}

/// The same quantity as the bilinear form `⟨ψ| Σ_x Δ_x ⊗ Λ_x |ψ⟩`.
pub fn distortion_bilinear(psi: &Purification, povm: &Povm, delta: &DistortionObservable) -> Result<f64> {
    check_outcomes(povm, delta)?;
    if psi.has_side_info() {
        return Err(Error::InvalidArgument("use distortion_qsi for (R, A, B) purifications".into()));
    }
    if delta.dim() != psi.reference_dim() {
        return Err(Error::DimensionMismatch { expected: psi.reference_dim(), found: delta.dim() });
    }
    if povm.dim() != psi.a_dim() {
        return Err(Error::DimensionMismatch { expected: psi.a_dim(), found: povm.dim() });
    }
    let v = psi.state_vector();
    Ok(delta
        .blocks()
        .iter()
        .zip(povm.effects())
        .map(|(d, e)| {
            let op = d.matrix().kronecker(e.matrix());
            v.dotc(&(op * v)).re
        })
        .sum())
}

/// `Tr{Δ_RBX (id_R ⊗ M_Λ ⊗ id_B)(ψ_RAB)}` with blocks on `R ⊗ B`.
pub fn distortion_qsi(psi: &Purification, povm: &Povm, delta: &DistortionObservable) -> Result<f64> {
    check_outcomes(povm, delta)?;
    let rb = psi.reference_dim() * psi.b_dim();
    if delta.dim() != rb {
        return Err(Error::DimensionMismatch { expected: rb, found: delta.dim() });
    }
    let sigma = induced_cq_state_qsi(psi, povm)?;
    Ok(sigma
        .conditional_ops()
        .iter()
        .zip(delta.blocks())
        .map(|(s, d)| s.trace_product(d))
        .sum())
}

/// `Δ_x = I − |x⟩⟨x|` in the reference Schmidt basis of the canonical
/// purification of `ρ` (one block per eigenvector).
pub fn eigenbasis_observable(rho: &DensityOperator) -> DistortionObservable {
    let basis = purify(rho).reference_schmidt_basis().expect("canonical purification");
    let id = HermitianOperator::identity(rho.dim());
    let blocks = basis.iter().map(|v| id.sub(&HermitianOperator::projector(v))).collect();
    DistortionObservable { blocks, d_max: 1.0 }
}

/// Block `y` is `Σ_x d(x, y) |b_x⟩⟨b_x|` for a cost matrix `costs[x][y]`
/// over source symbols `x` (basis vectors) and outcomes `y`.
pub fn classical_cost_observable(costs: &[Vec<f64>], basis: &[ComplexVector]) -> Result<DistortionObservable> {
    let dim = basis.first().map_or(0, |v| v.len());
    crate::linalg::check_orthonormal_basis(basis, dim)?;
    if costs.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: costs.len() });
    }
    let outcomes = costs[0].len();
    for (row, r) in costs.iter().enumerate() {
        if r.len() != outcomes {
            return Err(Error::DimensionMismatch { expected: outcomes, found: r.len() });
        }
        for (col, &value) in r.iter().enumerate() {
            if value < 0.0 || !value.is_finite() {
                return Err(Error::NegativeCost { row, col, value });
            }
        }
    }
    let blocks = (0..outcomes)
        .map(|y| {
            let mut m = ComplexMatrix::zeros(dim, dim);
            for (x, v) in basis.iter().enumerate() {
                m += (v * v.adjoint()) * c(costs[x][y], 0.0);
            }
            HermitianOperator::from_matrix_unchecked(m)
        })
        .collect();
    DistortionObservable::new(blocks)
}

/// `Δ_RX = (I − |+⟩⟨+|) ⊗ |0⟩⟨0| + (I − |0⟩⟨0|) ⊗ |1⟩⟨1|` on a qubit reference:
/// outcome 0 stands for `|+⟩`, outcome 1 for `|0⟩`.
pub fn example_observable() -> DistortionObservable {
    let id = HermitianOperator::identity(2);
    let blocks = vec![
        id.sub(&HermitianOperator::projector(&presets::plus_state())),
        id.sub(&HermitianOperator::projector(&crate::linalg::basis_vector(2, 0))),
    ];
    DistortionObservable { blocks, d_max: 1.0 }
}
