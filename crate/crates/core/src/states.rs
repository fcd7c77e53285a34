//! Density operators, purifications, POVMs and the classical-quantum states
//! they induce.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{
    self, basis_vector, c, check_orthonormal_basis, eig_hermitian, max_abs_diff,
    partial_trace_matrix, sqrt_psd, ComplexMatrix, ComplexVector, HermitianOperator, PSD_TOL,
};
use crate::{Error, Result};

/// Completeness tolerance for `Σ_x Λ_x = I` (max-entry error).
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// Unit-trace positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: HermitianOperator,
}

impl DensityOperator {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let trace = op.trace();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { value: trace });
        }
        let min_eigenvalue = op.min_eigenvalue();
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { op })
    }

    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(m)?)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { op: HermitianOperator::identity(dim).scale(1.0 / dim as f64) }
    }

    /// `|v⟩⟨v|` for a unit vector `v`.
    pub fn pure(v: &ComplexVector) -> Result<Self> {
        let norm = v.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { value: norm });
        }
        Self::new(HermitianOperator::projector(v))
    }

    /// Convex mixture `Σ_i w_i ρ_i`.
    pub fn mixture(weights: &[f64], states: &[DensityOperator]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::InvalidArgument("mixture needs one weight per state".into()));
        }
        let dim = states[0].dim();
        let mut acc = HermitianOperator::zeros(dim);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            acc = acc.add(&s.op.scale(*w));
        }
        Self::new(acc)
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

/// Pure state `|ψ⟩` over `(R, A[, B])`, with `R` purifying the system.
///
/// Purifications built by [`purify`] / [`purify_joint`] are the canonical
/// ones, `|ψ⟩ = (I_R ⊗ √ρ) Σ_i |i⟩_R |i⟩`, i.e.
/// `|ψ⟩ = Σ_z √λ_z |v̄_z⟩_R |v_z⟩` for the eigenpairs `(λ_z, v_z)` of `ρ`.
/// The reference marginal is `ρ_R = ρ̄` and `Tr_R ψ = ρ`. Nothing built from
/// this form depends on which eigenvectors are chosen inside a degenerate
/// eigenspace.
#[derive(Debug, Clone)]
pub struct Purification {
    reference_dim: usize,
    system_dims: Vec<usize>,
    state: ComplexVector,
    schmidt: Option<Schmidt>,
}

#[derive(Debug, Clone)]
struct Schmidt {
    coeffs: Vec<f64>,
    system_basis: Vec<ComplexVector>,
}

impl Purification {
    /// Wraps a user-supplied state vector over `(R, A[, B])`.
    pub fn from_state_vector(
        state: ComplexVector,
        reference_dim: usize,
        system_dims: Vec<usize>,
    ) -> Result<Self> {
        if system_dims.is_empty() || system_dims.len() > 2 {
            return Err(Error::InvalidArgument(
                "a purification has one system factor (A) or two (A, B)".into(),
            ));
        }
        let expected = reference_dim * system_dims.iter().product::<usize>();
        if state.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: state.len() });
        }
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { value: norm });
        }
        Ok(Self { reference_dim, system_dims, state, schmidt: None })
    }

    pub fn reference_dim(&self) -> usize {
        self.reference_dim
    }

    pub fn system_dims(&self) -> &[usize] {
        &self.system_dims
    }

    pub fn a_dim(&self) -> usize {
        self.system_dims[0]
    }

    /// Dimension of the side-information factor (1 when absent).
    pub fn b_dim(&self) -> usize {
        self.system_dims.get(1).copied().unwrap_or(1)
    }

    pub fn has_side_info(&self) -> bool {
        self.system_dims.len() == 2
    }

    /// All factor dimensions in `(R, A[, B])` order.
    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![self.reference_dim];
        dims.extend_from_slice(&self.system_dims);
        dims
    }

    pub fn state_vector(&self) -> &ComplexVector {
        &self.state
    }

    /// Schmidt coefficients `√λ_z` (descending) when the purification was
    /// built from a density operator.
    pub fn schmidt_coeffs(&self) -> Option<&[f64]> {
        self.schmidt.as_ref().map(|s| s.coeffs.as_slice())
    }

    /// Schmidt basis on the system side: the eigenbasis of `ρ`.
    pub fn system_schmidt_basis(&self) -> Option<&[ComplexVector]> {
        self.schmidt.as_ref().map(|s| s.system_basis.as_slice())
    }

    /// Schmidt basis on the reference side, `{|v̄_z⟩}`.
    pub fn reference_schmidt_basis(&self) -> Option<Vec<ComplexVector>> {
        self.schmidt
            .as_ref()
            .map(|s| s.system_basis.iter().map(|v| v.map(|z| z.conj())).collect())
    }

    pub fn projector(&self) -> ComplexMatrix {
        &self.state * self.state.adjoint()
    }

    /// `Tr_R ψ`, the state on the system factor(s).
    pub fn system_state(&self) -> HermitianOperator {
        let keep: Vec<usize> = (1..=self.system_dims.len()).collect();
        let m = partial_trace_matrix(&self.projector(), &self.dims(), &keep)
            .expect("purification dims are consistent");
        HermitianOperator::from_matrix_unchecked(m)
    }

    /// `Tr_{A[B]} ψ`, the reference marginal.
    pub fn reference_state(&self) -> HermitianOperator {
        let m = partial_trace_matrix(&self.projector(), &self.dims(), &[0])
            .expect("purification dims are consistent");
        HermitianOperator::from_matrix_unchecked(m)
    }

    /// Matrix `U` with `U[a, (r, b)] = ψ[r, a, b]`; conditional operators are
    /// `σ_x = Uᵀ Λ_xᵀ Ū` on `R ⊗ B`.
    pub(crate) fn amplitude_matrix(&self) -> ComplexMatrix {
        let (dr, da, db) = (self.reference_dim, self.a_dim(), self.b_dim());
        ComplexMatrix::from_fn(da, dr * db, |a, rb| {
            let (r, b) = (rb / db, rb % db);
            self.state[(r * da + a) * db + b]
        })
    }

    /// Moves the side-information factor into the reference:
    /// `(R, A, B) → (R⊗B, A)`.
    pub fn merge_side_into_reference(&self) -> Purification {
        let (dr, da, db) = (self.reference_dim, self.a_dim(), self.b_dim());
        let mut state = ComplexVector::zeros(self.state.len());
        for r in 0..dr {
            for a in 0..da {
                for b in 0..db {
                    state[(r * db + b) * da + a] = self.state[(r * da + a) * db + b];
                }
            }
        }
        Purification {
            reference_dim: dr * db,
            system_dims: vec![da],
            state,
            schmidt: None,
        }
    }

    /// Product purification of two single-system purifications, reordered to
    /// `(R₁R₂, A₁A₂)`.
    pub fn product(first: &Purification, second: &Purification) -> Result<Purification> {
        if first.has_side_info() || second.has_side_info() {
            return Err(Error::InvalidArgument("product expects (R, A) purifications".into()));
        }
        let (r1, a1) = (first.reference_dim, first.a_dim());
        let (r2, a2) = (second.reference_dim, second.a_dim());
        let mut state = ComplexVector::zeros(r1 * r2 * a1 * a2);
        for i in 0..r1 {
            for j in 0..r2 {
                for k in 0..a1 {
                    for l in 0..a2 {
                        let r = i * r2 + j;
                        let a = k * a2 + l;
                        state[r * (a1 * a2) + a] =
                            first.state[i * a1 + k] * second.state[j * a2 + l];
                    }
                }
            }
        }
        Ok(Purification {
            reference_dim: r1 * r2,
            system_dims: vec![a1 * a2],
            state,
            schmidt: None,
        })
    }
}

/// Canonical purification of a single-system source.
pub fn purify(rho: &DensityOperator) -> Purification {
    purify_with_dims(rho, vec![rho.dim()])
}

/// Canonical purification `ψ_RAB` of a joint state `ρ_AB` with
/// `dims = [d_A, d_B]`.
pub fn purify_joint(rho_ab: &DensityOperator, dims: [usize; 2]) -> Result<Purification> {
    if dims[0] * dims[1] != rho_ab.dim() {
        return Err(Error::DimensionMismatch { expected: dims[0] * dims[1], found: rho_ab.dim() });
    }
    Ok(purify_with_dims(rho_ab, dims.to_vec()))
}

fn purify_with_dims(rho: &DensityOperator, system_dims: Vec<usize>) -> Purification {
    let n = rho.dim();
    let eig = eig_hermitian(rho.op()).expect("density operators have small dimension");
    let root = eig.reconstruct_with(|x| x.max(0.0).sqrt());
    // ψ[r, s] = √ρ[s, r]
    let state = ComplexVector::from_fn(n * n, |idx, _| {
        let (r, s) = (idx / n, idx % n);
        root[(s, r)]
    });
    Purification {
        reference_dim: n,
        system_dims,
        state,
        schmidt: Some(Schmidt {
            coeffs: eig.eigenvalues.iter().map(|x| x.max(0.0).sqrt()).collect(),
            system_basis: eig.eigenvectors,
        }),
    }
}

/// Finite POVM with outcomes labelled `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    effects: Vec<HermitianOperator>,
}

impl Povm {
    pub fn new(effects: Vec<HermitianOperator>) -> Result<Self> {
        let dim = effects
            .first()
            .map(HermitianOperator::dim)
            .ok_or_else(|| Error::InvalidArgument("a POVM needs at least one effect".into()))?;
        let mut total = ComplexMatrix::zeros(dim, dim);
        for e in &effects {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.dim() });
            }
            let min_eigenvalue = e.min_eigenvalue();
            if min_eigenvalue < -PSD_TOL {
                return Err(Error::NotPositive { min_eigenvalue });
            }
            total += e.matrix();
        }
        let deviation = max_abs_diff(&total, &ComplexMatrix::identity(dim, dim));
        if deviation > COMPLETENESS_TOL {
            return Err(Error::IncompletePovm { deviation });
        }
        Ok(Self { effects })
    }

    /// `{I}`.
    pub fn identity(dim: usize) -> Self {
        Self { effects: vec![HermitianOperator::identity(dim)] }
    }

    /// `k` copies of `I/k`: uninformative, rate zero.
    pub fn uniform(dim: usize, outcomes: usize) -> Self {
        let e = HermitianOperator::identity(dim).scale(1.0 / outcomes as f64);
        Self { effects: vec![e; outcomes] }
    }

    /// Outcome `x` gets `I`, every other outcome `0`.
    pub fn constant(dim: usize, outcomes: usize, x: usize) -> Self {
        let effects = (0..outcomes)
            .map(|y| if y == x { HermitianOperator::identity(dim) } else { HermitianOperator::zeros(dim) })
            .collect();
        Self { effects }
    }

    /// Von Neumann measurement in an orthonormal basis.
    pub fn projective(basis: &[ComplexVector]) -> Result<Self> {
        let dim = basis.first().map_or(0, |v| v.len());
        check_orthonormal_basis(basis, dim)?;
        Self::new(basis.iter().map(HermitianOperator::projector).collect())
    }

    /// Diagonal POVM `Λ_x = Σ_z q(x|z) |z⟩⟨z|` from a row-stochastic channel
    /// `channel[z][x]`.
    pub fn from_channel(basis: &[ComplexVector], channel: &[Vec<f64>]) -> Result<Self> {
        let dim = basis.first().map_or(0, |v| v.len());
        check_orthonormal_basis(basis, dim)?;
        if channel.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: channel.len() });
        }
        let outcomes = channel[0].len();
        let mut effects = vec![ComplexMatrix::zeros(dim, dim); outcomes];
        for (z, row) in channel.iter().enumerate() {
            if row.len() != outcomes {
                return Err(Error::DimensionMismatch { expected: outcomes, found: row.len() });
            }
            let proj = &basis[z] * basis[z].adjoint();
            for (x, &q) in row.iter().enumerate() {
                effects[x] += &proj * c(q, 0.0);
            }
        }
        Self::new(effects.into_iter().map(HermitianOperator::from_matrix_unchecked).collect())
    }

    /// Ginibre-square construction: `Λ_x = M^{-1/2} G_x†G_x M^{-1/2}` with
    /// `M = Σ_x G_x†G_x`. `None` when `M` is numerically singular.
    pub fn from_ginibre(gs: &[ComplexMatrix]) -> Option<Self> {
        let effects = ginibre_effects(gs)?;
        Some(Self { effects: effects.into_iter().map(HermitianOperator::from_matrix_unchecked).collect() })
    }

    /// Outcome-wise convex mixture `t·a + (1−t)·b`.
    pub fn mix(t: f64, a: &Povm, b: &Povm) -> Result<Self> {
        if a.outcomes() != b.outcomes() {
            return Err(Error::DimensionMismatch { expected: a.outcomes(), found: b.outcomes() });
        }
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        Self::new(
            a.effects
                .iter()
                .zip(&b.effects)
                .map(|(x, y)| x.scale(t).add(&y.scale(1.0 - t)))
                .collect(),
        )
    }

    /// Product measurement with outcome `(x₁, x₂) ↦ x₁·k₂ + x₂`.
    pub fn tensor(a: &Povm, b: &Povm) -> Self {
        let effects = a
            .effects
            .iter()
            .flat_map(|x| b.effects.iter().map(move |y| linalg::tensor(x, y)))
            .collect();
        Self { effects }
    }

    pub fn effects(&self) -> &[HermitianOperator] {
        &self.effects
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }
}

pub(crate) fn ginibre_effects(gs: &[ComplexMatrix]) -> Option<Vec<ComplexMatrix>> {
    let dim = gs.first()?.ncols();
    let squares: Vec<ComplexMatrix> = gs.iter().map(|g| g.adjoint() * g).collect();
    let mut total = ComplexMatrix::zeros(dim, dim);
    for s in &squares {
        total += s;
    }
    let scale = total.diagonal().iter().map(|z| z.re).sum::<f64>() / dim as f64;
    let inv_root = linalg::inverse_sqrt_pd(&total, 1e-13 * scale.max(f64::MIN_POSITIVE))?;
    Some(
        squares
            .iter()
            .map(|s| {
                let e = &inv_root * s * &inv_root;
                (&e + e.adjoint()) * c(0.5, 0.0)
            })
            .collect(),
    )
}

/// Outcome distribution `p(x) = Tr(Λ_x ρ)`.
pub fn apply_measurement_map(povm: &Povm, state: &DensityOperator) -> Result<Vec<f64>> {
    if povm.dim() != state.dim() {
        return Err(Error::DimensionMismatch { expected: state.dim(), found: povm.dim() });
    }
    Ok(povm.effects.iter().map(|e| e.trace_product(state.op())).collect())
}

/// Classical-quantum state `Σ_x σ_x ⊗ |x⟩⟨x|` with `Tr σ_x = p(x)`.
#[derive(Debug, Clone)]
pub struct CqState {
    probs: Vec<f64>,
    ops: Vec<HermitianOperator>,
    factor_dims: Option<(usize, usize)>,
}

impl CqState {
    /// Validates that the conditional operators are PSD and their traces
    /// form a distribution. Probabilities are read off the traces.
    pub fn new(ops: Vec<HermitianOperator>) -> Result<Self> {
        let dim = ops
            .first()
            .map(HermitianOperator::dim)
            .ok_or_else(|| Error::InvalidArgument("cq state needs at least one outcome".into()))?;
        for op in &ops {
            if op.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: op.dim() });
            }
            let min_eigenvalue = op.min_eigenvalue();
            if min_eigenvalue < -PSD_TOL {
                return Err(Error::NotPositive { min_eigenvalue });
            }
        }
        let probs: Vec<f64> = ops.iter().map(HermitianOperator::trace).collect();
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { value: total });
        }
        Ok(Self { probs, ops, factor_dims: None })
    }

    /// Declares the quantum factor as `R ⊗ B` with the given dimensions.
    pub fn with_factor_dims(mut self, r_dim: usize, b_dim: usize) -> Result<Self> {
        if r_dim * b_dim != self.quantum_dim() {
            return Err(Error::DimensionMismatch { expected: self.quantum_dim(), found: r_dim * b_dim });
        }
        self.factor_dims = Some((r_dim, b_dim));
        Ok(self)
    }

    pub fn outcome_probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn conditional_ops(&self) -> &[HermitianOperator] {
        &self.ops
    }

    pub fn factor_dims(&self) -> Option<(usize, usize)> {
        self.factor_dims
    }

    pub fn outcomes(&self) -> usize {
        self.ops.len()
    }

    pub fn quantum_dim(&self) -> usize {
        self.ops[0].dim()
    }

    /// `Σ_x σ_x`, the marginal on the quantum factor.
    pub fn quantum_marginal(&self) -> HermitianOperator {
        self.ops
            .iter()
            .fold(HermitianOperator::zeros(self.quantum_dim()), |acc, op| acc.add(op))
    }

    /// Block-diagonal joint operator `Σ_x σ_x ⊗ |x⟩⟨x|` (X last).
    pub fn joint_operator(&self) -> HermitianOperator {
        let k = self.outcomes();
        let mut acc = HermitianOperator::zeros(self.quantum_dim() * k);
        for (x, op) in self.ops.iter().enumerate() {
            let mut label = vec![0.0; k];
            label[x] = 1.0;
            acc = acc.add(&linalg::tensor(op, &HermitianOperator::diagonal(&label)));
        }
        acc
    }

    /// Applies a map to every conditional operator (e.g. a channel on R).
    pub fn map_quantum(&self, f: impl Fn(&HermitianOperator) -> HermitianOperator) -> Result<Self> {
        let mut out = CqState::new(self.ops.iter().map(f).collect())?;
        out.factor_dims = None;
        Ok(out)
    }

    /// Completely dephases the quantum factor in `basis`.
    pub fn dephase_quantum(&self, basis: &[ComplexVector]) -> Result<Self> {
        check_orthonormal_basis(basis, self.quantum_dim())?;
        let mut out = self.map_quantum(|op| linalg::dephase(op, basis))?;
        out.factor_dims = self.factor_dims;
        Ok(out)
    }

    /// Partial trace of every conditional operator over the quantum factors
    /// not in `keep`.
    pub fn reduce_quantum(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        let ops = self
            .ops
            .iter()
            .map(|op| linalg::partial_trace(op, dims, keep))
            .collect::<Result<Vec<_>>>()?;
        CqState::new(ops)
    }

    /// Relabels outcomes through `label_of` (into `0..n_labels`), summing
    /// the conditional operators that share a label.
    pub fn coarse_grain(&self, label_of: impl Fn(usize) -> usize, n_labels: usize) -> Result<Self> {
        let mut ops = vec![HermitianOperator::zeros(self.quantum_dim()); n_labels];
        for (x, op) in self.ops.iter().enumerate() {
            let y = label_of(x);
            if y >= n_labels {
                return Err(Error::InvalidArgument(format!("label {y} out of range")));
            }
            ops[y] = ops[y].add(op);
        }
        let mut out = CqState::new(ops)?;
        out.factor_dims = self.factor_dims;
        Ok(out)
    }
}

/// `σ_RX = (id_R ⊗ M_Λ)(ψ_RA)`, via `σ_x = Tr_A{(I_R ⊗ Λ_x) ψ}`.
pub fn induced_cq_state(psi: &Purification, povm: &Povm) -> Result<CqState> {
    if psi.has_side_info() {
        return Err(Error::InvalidArgument(
            "purification carries side information; use induced_cq_state_qsi".into(),
        ));
    }
    let ops = conditional_ops_by_partial_trace(psi, povm)?;
    CqState::new(ops)
}

/// `σ_XRB = Σ_x |x⟩⟨x| ⊗ Tr_A{(I_R ⊗ Λ_x ⊗ I_B) ψ_RAB}`; conditional
/// operators act on `R ⊗ B` and the state records those factor dimensions.
pub fn induced_cq_state_qsi(psi: &Purification, povm: &Povm) -> Result<CqState> {
    let ops = conditional_ops_by_partial_trace(psi, povm)?;
    CqState::new(ops)?.with_factor_dims(psi.reference_dim(), psi.b_dim())
}

fn conditional_ops_by_partial_trace(psi: &Purification, povm: &Povm) -> Result<Vec<HermitianOperator>> {
    if povm.dim() != psi.a_dim() {
        return Err(Error::DimensionMismatch { expected: psi.a_dim(), found: povm.dim() });
    }
    let dims = psi.dims();
    let projector = psi.projector();
    let id_r = ComplexMatrix::identity(psi.reference_dim(), psi.reference_dim());
    let id_b = ComplexMatrix::identity(psi.b_dim(), psi.b_dim());
    let keep: Vec<usize> = if psi.has_side_info() { vec![0, 2] } else { vec![0] };
    povm.effects
        .iter()
        .map(|e| {
            let lifted = id_r.kronecker(e.matrix()).kronecker(&id_b);
            let m = partial_trace_matrix(&(lifted * &projector), &dims, &keep)?;
            // Tr_A{(I⊗Λ)ψ} is Hermitian by cyclicity on A; drop roundoff.
            Ok(HermitianOperator::from_matrix_unchecked((&m + m.adjoint()) * c(0.5, 0.0)))
        })
        .collect()
}

/// The same state as [`induced_cq_state`] for a canonical purification,
/// written as `σ_x = √ρ_R Λ_xᵀ √ρ_R` with `ρ_R` the reference marginal.
pub fn induced_cq_state_sqrt_form(rho: &DensityOperator, povm: &Povm) -> Result<CqState> {
    if povm.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: povm.dim() });
    }
    let root = sqrt_psd(&rho.op().conjugate())?;
    let ops = povm
        .effects
        .iter()
        .map(|e| {
            let m = root.matrix() * e.matrix().transpose() * root.matrix();
            HermitianOperator::from_matrix_unchecked((&m + m.adjoint()) * c(0.5, 0.0))
        })
        .collect();
    CqState::new(ops)
}

/// Replaces each effect by its diagonal part in `basis`.
pub fn pinch_povm(povm: &Povm, basis: &[ComplexVector]) -> Result<Povm> {
    check_orthonormal_basis(basis, povm.dim())?;
    Povm::new(povm.effects.iter().map(|e| linalg::dephase(e, basis)).collect())
}

/// Random POVM from the Ginibre-square construction, stream 0 of `rng_seed`.
pub fn sample_random_povm(dim: usize, outcomes: usize, rng_seed: u64) -> Result<Povm> {
    sample_random_povm_stream(dim, outcomes, rng_seed, 0)
}

/// Random POVM for sample `stream` of a sweep keyed by `rng_seed`; the
/// result depends only on `(rng_seed, stream)`.
pub fn sample_random_povm_stream(dim: usize, outcomes: usize, rng_seed: u64, stream: u64) -> Result<Povm> {
    if outcomes == 0 || dim == 0 {
        return Err(Error::InvalidArgument("need dim ≥ 1 and outcomes ≥ 1".into()));
    }
    if outcomes == 1 {
        return Ok(Povm::identity(dim));
    }
    let mut rng = stream_rng(rng_seed, stream);
    loop {
        let gs = ginibre_matrices(&mut rng, dim, outcomes);
        if let Some(povm) = Povm::from_ginibre(&gs) {
            return Ok(povm);
        }
    }
}

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `k` square matrices with i.i.d. standard complex Gaussian entries.
pub(crate) fn ginibre_matrices(rng: &mut ChaCha8Rng, dim: usize, outcomes: usize) -> Vec<ComplexMatrix> {
    (0..outcomes)
        .map(|_| {
            ComplexMatrix::from_fn(dim, dim, |_, _| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                c(re, im) * std::f64::consts::FRAC_1_SQRT_2
            })
        })
        .collect()
}

/// Random density operator `G G† / Tr(G G†)` with a Ginibre `G`.
pub fn sample_random_density(dim: usize, rng_seed: u64, stream: u64) -> DensityOperator {
    let mut rng = stream_rng(rng_seed, stream);
    let g = ginibre_matrices(&mut rng, dim, 1).remove(0);
    let m = &g * g.adjoint();
    let trace: f64 = m.diagonal().iter().map(|z| z.re).sum();
    DensityOperator::new(HermitianOperator::from_matrix_unchecked(m * c(1.0 / trace, 0.0)))
        .expect("Ginibre product is a valid state")
}

/// Computational basis of `C^dim`.
pub fn computational_basis(dim: usize) -> Vec<ComplexVector> {
    (0..dim).map(|i| basis_vector(dim, i)).collect()
}
