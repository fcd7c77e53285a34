//! Entropies and mutual informations, in bits.

use std::fmt;

use crate::linalg::{eigenvalues, partial_trace, ComplexMatrix, HermitianOperator};
use crate::{CqState, DensityOperator, Error, Result};

/// Eigenvalues below this are exact zeros inside `λ log λ`.
pub const EIGENVALUE_FLOOR: f64 = 1e-14;

/// Outcomes with smaller probability contribute nothing to cq informations.
pub const PROBABILITY_FLOOR: f64 = 1e-14;

/// An information quantity in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Bits(pub f64);

impl Bits {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

fn xlog2x(x: f64) -> f64 {
    if x < EIGENVALUE_FLOOR {
        0.0
    } else {
        x * x.log2()
    }
}

/// `−Σ λ log₂ λ` over the spectrum of a PSD matrix, without normalising.
pub(crate) fn entropy_unnormalized(m: &ComplexMatrix) -> f64 {
    -eigenvalues(m).into_iter().map(xlog2x).sum::<f64>()
}

/// `H(ρ) = −Tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Bits {
    Bits(entropy_unnormalized(rho.matrix()))
}

/// Entropy of a unit-trace PSD operator given as a bare Hermitian operator.
pub fn operator_entropy(op: &HermitianOperator) -> Bits {
    Bits(entropy_unnormalized(op.matrix()))
}

/// `H(p) = −Σ p log₂ p`.
pub fn shannon_entropy(p: &[f64]) -> Result<Bits> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("empty".into()));
    }
    if let Some(bad) = p.iter().find(|&&x| !(x >= -1e-12)) {
        return Err(Error::InvalidDistribution(format!("entry {bad}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("sums to {total}")));
    }
    Ok(Bits(-p.iter().map(|&x| xlog2x(x.max(0.0))).sum::<f64>()))
}

/// `I(X;R) = H(R) − Σ_x p(x) H(σ_x / p(x))`.
pub fn mutual_information_cq(sigma: &CqState) -> Bits {
    let marginal = sigma.quantum_marginal();
    let total = entropy_unnormalized(marginal.matrix());
    let conditional: f64 = sigma
        .outcome_probs()
        .iter()
        .zip(sigma.conditional_ops())
        .filter(|(p, _)| **p >= PROBABILITY_FLOOR)
        .map(|(&p, op)| p * entropy_unnormalized(&(op.matrix() / num_complex::Complex::new(p, 0.0))))
        .sum();
    Bits(total - conditional)
}

/// `I(X;R|B) = I(X;RB) − I(X;B)` for a cq state whose conditional operators
/// act on `R ⊗ B` (declared via [`CqState::with_factor_dims`]).
pub fn conditional_mutual_information_cq(sigma: &CqState) -> Result<Bits> {
    let (r_dim, b_dim) = sigma.factor_dims().ok_or(Error::MissingFactorDims)?;
    let with_rb = mutual_information_cq(sigma);
    let b_only = sigma.reduce_quantum(&[r_dim, b_dim], &[1])?;
    Ok(Bits(with_rb.0 - mutual_information_cq(&b_only).0))
}

/// `I(A;B) = H(A) + H(B) − H(AB)` of a bipartite operator `ρ_AB` with
/// factor dimensions `dims = [d_A, d_B]`.
pub fn mutual_information(rho_ab: &HermitianOperator, dims: [usize; 2]) -> Result<Bits> {
    let a = partial_trace(rho_ab, &dims, &[0])?;
    let b = partial_trace(rho_ab, &dims, &[1])?;
    Ok(Bits(
        entropy_unnormalized(a.matrix()) + entropy_unnormalized(b.matrix())
            - entropy_unnormalized(rho_ab.matrix()),
    ))
}
