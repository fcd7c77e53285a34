//! Named problem instances.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::linalg::{basis_vector, c, tensor, ComplexVector, HermitianOperator};
use crate::{DensityOperator, Error, Result};

/// `|+⟩`.
pub fn plus_state() -> ComplexVector {
    ComplexVector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)])
}

/// Qubit source emitting `|+⟩` and `|0⟩` with probability 1/2 each:
/// `ρ = (|+⟩⟨+| + |0⟩⟨0|)/2`, with eigenvalues `cos²(π/8)` and `sin²(π/8)`.
pub fn example_source() -> DensityOperator {
    let plus = DensityOperator::pure(&plus_state()).expect("unit vector");
    let zero = DensityOperator::pure(&basis_vector(2, 0)).expect("unit vector");
    DensityOperator::mixture(&[0.5, 0.5], &[plus, zero]).expect("valid mixture")
}

/// Eigenbasis `{|φ₀⟩, |φ₁⟩}` of [`example_source`]:
/// `|φ₀⟩ = cos(π/8)|0⟩ + sin(π/8)|1⟩`, `|φ₁⟩ = sin(π/8)|0⟩ − cos(π/8)|1⟩`.
pub fn example_eigenbasis() -> [ComplexVector; 2] {
    let (cs, sn) = ((PI / 8.0).cos(), (PI / 8.0).sin());
    [
        ComplexVector::from_vec(vec![c(cs, 0.0), c(sn, 0.0)]),
        ComplexVector::from_vec(vec![c(sn, 0.0), c(-cs, 0.0)]),
    ]
}

/// `Σ_y p(y) |y⟩⟨y|_A ⊗ ρ_B^y`.
pub fn cq_source(p: &[f64], conditionals: &[DensityOperator]) -> Result<DensityOperator> {
    if p.len() != conditionals.len() || p.is_empty() {
        return Err(Error::InvalidArgument("one conditional state per symbol".into()));
    }
    let n = p.len();
    let db = conditionals[0].dim();
    let mut acc = HermitianOperator::zeros(n * db);
    for (y, (w, rho)) in p.iter().zip(conditionals).enumerate() {
        if rho.dim() != db {
            return Err(Error::DimensionMismatch { expected: db, found: rho.dim() });
        }
        let label = HermitianOperator::projector(&basis_vector(n, y));
        acc = acc.add(&tensor(&label, rho.op()).scale(*w));
    }
    DensityOperator::new(acc)
}

/// Two-symbol classical source with qubit side information:
/// `p = (0.6, 0.4)`, `ρ_B^0 = |0⟩⟨0|`, `ρ_B^1 = |+⟩⟨+|`.
pub fn luo_devetak_source() -> DensityOperator {
    let b0 = DensityOperator::pure(&basis_vector(2, 0)).expect("unit vector");
    let b1 = DensityOperator::pure(&plus_state()).expect("unit vector");
    cq_source(&[0.6, 0.4], &[b0, b1]).expect("valid cq source")
}

/// Hamming cost on `n` symbols.
pub fn hamming_costs(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
        .collect()
}
