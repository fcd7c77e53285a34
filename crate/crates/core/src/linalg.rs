//! Dense complex linear algebra for small operators.
//!
//! Matrices are stored as [`nalgebra::DMatrix`] over `Complex<f64>`. The
//! [`HermitianOperator`] newtype carries the Hermiticity invariant and is the
//! common carrier for states, POVM effects and distortion blocks.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use crate::{Error, Result};

pub type C64 = Complex<f64>;

/// Dense row/column complex matrix.
pub type ComplexMatrix = DMatrix<C64>;

/// Complex column vector.
pub type ComplexVector = DVector<C64>;

/// Max-entry deviation from Hermiticity accepted at construction.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in `[-PSD_TOL, 0)` are treated as roundoff and clamped to zero.
pub const PSD_TOL: f64 = 1e-10;

/// Largest operator dimension the crate is tuned for.
pub const MAX_DIM: usize = 64;

const EIG_MAX_SWEEPS: usize = 10_000;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Hermitian square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Validates squareness, finiteness and Hermiticity (within
    /// [`HERMITIAN_TOL`]); the stored matrix is the exact Hermitian part.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let adjoint = matrix.adjoint();
        let deviation = max_abs_diff(&matrix, &adjoint);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::from_matrix_unchecked((&matrix + adjoint) * c(0.5, 0.0)))
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix_unchecked(ComplexMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_matrix_unchecked(ComplexMatrix::zeros(dim, dim))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_matrix_unchecked(ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                c(values[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        }))
    }

    /// Real symmetric matrix given row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: bad.len() });
        }
        Self::new(ComplexMatrix::from_fn(n, n, |i, j| c(rows[i][j], 0.0)))
    }

    /// Rank-one projector `|v⟩⟨v|` (the vector is not normalised here).
    pub fn projector(v: &ComplexVector) -> Self {
        Self::from_matrix_unchecked(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Re Tr(self · other)`.
    pub fn trace_product(&self, other: &HermitianOperator) -> f64 {
        trace_product(&self.matrix, &other.matrix).re
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_matrix_unchecked(&self.matrix * c(factor, 0.0))
    }

    pub fn add(&self, other: &HermitianOperator) -> Self {
        Self::from_matrix_unchecked(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &HermitianOperator) -> Self {
        Self::from_matrix_unchecked(&self.matrix - &other.matrix)
    }

    /// Complex conjugate (equivalently the transpose, for Hermitian input).
    pub fn conjugate(&self) -> Self {
        Self::from_matrix_unchecked(self.matrix.map(|z| z.conj()))
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        eigenvalues(&self.matrix).into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        eigenvalues(&self.matrix).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }
}

/// `Tr(a · b)` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = c(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Kronecker product `a ⊗ b`, `a` the slower index.
pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator::from_matrix_unchecked(a.matrix.kronecker(&b.matrix))
}

/// Kronecker product of two vectors, first factor slower.
pub fn tensor_vec(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    a.kronecker(b)
}

/// Partial trace of a general square matrix over the factors *not* in `keep`.
///
/// `dims` lists the factor dimensions (first factor slowest); the result is
/// ordered by the kept factors in their original order.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    if m.nrows() != total {
        return Err(Error::DimensionMismatch { expected: total, found: m.nrows() });
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::InvalidArgument(format!(
            "subsystem index {bad} out of range for {} factors",
            dims.len()
        )));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();

    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    // Offsets into the full index space contributed by each kept / traced
    // multi-index.
    let offsets = |factors: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize];
        for &f in factors {
            let mut next = Vec::with_capacity(out.len() * dims[f]);
            for &base in &out {
                for v in 0..dims[f] {
                    next.push(base + v * strides[f]);
                }
            }
            out = next;
        }
        out
    };
    let kept_offsets = offsets(&kept);
    let traced_offsets = offsets(&traced);

    let n = kept_offsets.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (i, &ri) in kept_offsets.iter().enumerate() {
        for (j, &cj) in kept_offsets.iter().enumerate() {
            let mut acc = c(0.0, 0.0);
            for &t in &traced_offsets {
                acc += m[(ri + t, cj + t)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Reduced operator on the factors listed in `keep`.
pub fn partial_trace(
    m: &HermitianOperator,
    dims: &[usize],
    keep: &[usize],
) -> Result<HermitianOperator> {
    partial_trace_matrix(&m.matrix, dims, keep).map(HermitianOperator::from_matrix_unchecked)
}

/// Spectral decomposition with eigenvalues sorted in descending order.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors; `eigenvectors[i]` belongs to `eigenvalues[i]`.
    pub eigenvectors: Vec<ComplexVector>,
}

impl EigDecomposition {
    /// `Σ f(λ_i) v_i v_i†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvectors.first().map_or(0, |v| v.len());
        let mut out = ComplexMatrix::zeros(n, n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out += (v * v.adjoint()) * c(f(*lambda), 0.0);
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }

    /// Eigenvectors as the columns of a unitary matrix.
    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.eigenvectors)
    }
}

pub fn eig_hermitian(m: &HermitianOperator) -> Result<EigDecomposition> {
    let eig = SymmetricEigen::try_new(m.matrix.clone(), f64::EPSILON, EIG_MAX_SWEEPS)
        .ok_or(Error::EigenNonConvergence)?;
    let mut order: Vec<usize> = (0..m.dim()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    Ok(EigDecomposition {
        eigenvalues: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
        eigenvectors: order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect(),
    })
}

/// Eigenvalues of a Hermitian matrix, unsorted. Hot path for entropies.
pub(crate) fn eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    match m.nrows() {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let off = m[(0, 1)].norm_sqr();
            let mean = 0.5 * (a + d);
            let half = 0.5 * (a - d);
            let r = (half * half + off).sqrt();
            vec![mean + r, mean - r]
        }
        _ => m.clone().symmetric_eigenvalues().iter().copied().collect(),
    }
}

/// Positive square root, clamping eigenvalues in `[-PSD_TOL, 0)`.
pub fn sqrt_psd(m: &HermitianOperator) -> Result<HermitianOperator> {
    let eig = eig_hermitian(m)?;
    if let Some(&min) = eig.eigenvalues.last() {
        if min < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
    }
    Ok(HermitianOperator::from_matrix_unchecked(
        eig.reconstruct_with(|x| x.max(0.0).sqrt()),
    ))
}

/// `M^{-1/2}` for a positive-definite matrix; `None` when an eigenvalue is
/// below `floor`.
pub(crate) fn inverse_sqrt_pd(m: &ComplexMatrix, floor: f64) -> Option<ComplexMatrix> {
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, EIG_MAX_SWEEPS)?;
    if eig.eigenvalues.iter().any(|&x| !(x > floor)) {
        return None;
    }
    let n = m.nrows();
    let mut scaled = eig.eigenvectors.clone();
    for j in 0..n {
        let s = c(eig.eigenvalues[j].powf(-0.5), 0.0);
        for i in 0..n {
            scaled[(i, j)] *= s;
        }
    }
    Some(scaled * eig.eigenvectors.adjoint())
}

/// Trace norm `‖a − b‖₁`.
pub fn trace_distance(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(eigenvalues(&(&a.matrix - &b.matrix)).iter().map(|x| x.abs()).sum())
}

/// Maximum deviation of the Gram matrix of `basis` from the identity.
pub fn gram_deviation(basis: &[ComplexVector]) -> f64 {
    let mut worst = 0.0f64;
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((u.dotc(v) - c(target, 0.0)).norm());
        }
    }
    worst
}

/// Checks that `basis` is a complete orthonormal basis of `C^dim`.
pub fn check_orthonormal_basis(basis: &[ComplexVector], dim: usize) -> Result<()> {
    if basis.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: basis.len() });
    }
    if let Some(v) = basis.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
    }
    let deviation = gram_deviation(basis);
    if deviation > 1e-9 {
        return Err(Error::NotOrthonormal { deviation });
    }
    Ok(())
}

/// Completely dephases `m` in `basis`: `Σ_z ⟨z|m|z⟩ |z⟩⟨z|`.
pub fn dephase(m: &HermitianOperator, basis: &[ComplexVector]) -> HermitianOperator {
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for z in basis {
        let weight = z.dotc(&(m.matrix() * z)).re;
        out += (z * z.adjoint()) * c(weight, 0.0);
    }
    HermitianOperator::from_matrix_unchecked(out)
}

pub fn basis_vector(dim: usize, index: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(dim);
    v[index] = c(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sigma_z() -> HermitianOperator {
        HermitianOperator::diagonal(&[1.0, -1.0])
    }

    pub(crate) fn random_hermitian(dim: usize, entries: &[f64]) -> HermitianOperator {
        let g = ComplexMatrix::from_fn(dim, dim, |i, j| {
            c(entries[2 * (i * dim + j)], entries[2 * (i * dim + j) + 1])
        });
        HermitianOperator::new((&g + g.adjoint()) * c(0.5, 0.0)).unwrap()
    }

    fn random_psd(dim: usize, entries: &[f64]) -> HermitianOperator {
        let g = ComplexMatrix::from_fn(dim, dim, |i, j| {
            c(entries[2 * (i * dim + j)], entries[2 * (i * dim + j) + 1])
        });
        HermitianOperator::new(g.adjoint() * &g).unwrap()
    }

    #[test]
    fn tensor_fixtures() {
        let i2 = HermitianOperator::identity(2);
        assert_eq!(tensor(&i2, &i2), HermitianOperator::identity(4));

        let p0 = HermitianOperator::diagonal(&[1.0, 0.0]);
        let p1 = HermitianOperator::diagonal(&[0.0, 1.0]);
        assert_eq!(tensor(&p0, &p1), HermitianOperator::diagonal(&[0.0, 1.0, 0.0, 0.0]));

        let zz = tensor(&sigma_z(), &sigma_z());
        let eig = eig_hermitian(&zz).unwrap();
        let expected = [1.0, 1.0, -1.0, -1.0];
        for (got, want) in eig.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_product_and_bell() {
        let rho_a = HermitianOperator::from_real_rows(&[&[0.7, 0.2], &[0.2, 0.3]]).unwrap();
        let rho_b = HermitianOperator::diagonal(&[0.25, 0.75]);
        let joint = tensor(&rho_a, &rho_b);
        let reduced = partial_trace(&joint, &[2, 2], &[0]).unwrap();
        assert!(max_abs_diff(reduced.matrix(), rho_a.matrix()) < 1e-14);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = ComplexVector::from_vec(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        let projector = HermitianOperator::projector(&bell);
        let reduced = partial_trace(&projector, &[2, 2], &[1]).unwrap();
        let half = HermitianOperator::identity(2).scale(0.5);
        assert!(max_abs_diff(reduced.matrix(), half.matrix()) < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = HermitianOperator::identity(4);
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[0]),
            Err(Error::DimensionMismatch { expected: 6, found: 4 })
        ));
        assert!(partial_trace(&m, &[2, 2], &[2]).is_err());
    }

    #[test]
    fn partial_trace_three_factors_keeps_order() {
        let a = HermitianOperator::diagonal(&[0.9, 0.1]);
        let b = HermitianOperator::diagonal(&[0.2, 0.3, 0.5]);
        let d = HermitianOperator::diagonal(&[0.6, 0.4]);
        let joint = tensor(&tensor(&a, &b), &d);
        let ad = partial_trace(&joint, &[2, 3, 2], &[2, 0]).unwrap();
        assert!(max_abs_diff(ad.matrix(), tensor(&a, &d).matrix()) < 1e-14);
        let b_only = partial_trace(&joint, &[2, 3, 2], &[1]).unwrap();
        assert!(max_abs_diff(b_only.matrix(), b.matrix()) < 1e-14);
    }

    #[test]
    fn eig_fixtures() {
        let eig = eig_hermitian(&HermitianOperator::diagonal(&[1.0, 3.0])).unwrap();
        assert_eq!(eig.eigenvalues.len(), 2);
        assert!((eig.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvectors[0][1].norm() - 1.0).abs() < 1e-14);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = ComplexVector::from_vec(vec![c(s, 0.0), c(s, 0.0)]);
        let eig = eig_hermitian(&HermitianOperator::projector(&plus)).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!(eig.eigenvalues[1].abs() < 1e-14);
    }

    #[test]
    fn eig_degenerate_spectrum_is_orthonormal() {
        let m = HermitianOperator::diagonal(&[0.5, 0.5, 0.5, 0.1]);
        let eig = eig_hermitian(&m).unwrap();
        assert!(gram_deviation(&eig.eigenvectors) < 1e-12);
        assert!(max_abs_diff(&eig.reconstruct(), m.matrix()) < 1e-12);
    }

    #[test]
    fn sqrt_fixtures() {
        let root = sqrt_psd(&HermitianOperator::identity(3)).unwrap();
        assert!(max_abs_diff(root.matrix(), HermitianOperator::identity(3).matrix()) < 1e-14);
        let root = sqrt_psd(&HermitianOperator::diagonal(&[4.0, 9.0])).unwrap();
        assert!(max_abs_diff(root.matrix(), HermitianOperator::diagonal(&[2.0, 3.0]).matrix()) < 1e-13);
        // Tiny negative eigenvalues are clamped, real negatives rejected.
        assert!(sqrt_psd(&HermitianOperator::diagonal(&[1.0, -5e-11])).is_ok());
        assert!(matches!(
            sqrt_psd(&HermitianOperator::diagonal(&[1.0, -1e-6])),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn trace_distance_fixtures() {
        let rho = HermitianOperator::diagonal(&[0.3, 0.7]);
        assert!(trace_distance(&rho, &rho).unwrap().abs() < 1e-15);
        let zero = HermitianOperator::diagonal(&[1.0, 0.0]);
        let one = HermitianOperator::diagonal(&[0.0, 1.0]);
        assert!((trace_distance(&zero, &one).unwrap() - 2.0).abs() < 1e-15);
        let mixed = HermitianOperator::identity(2).scale(0.5);
        assert!((trace_distance(&zero, &mixed).unwrap() - 1.0).abs() < 1e-15);
        assert!(trace_distance(&zero, &HermitianOperator::identity(3)).is_err());
    }

    #[test]
    fn construction_rejects_invalid_matrices() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| if i < j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!(matches!(HermitianOperator::new(m), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            HermitianOperator::new(ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        let mut nan = ComplexMatrix::identity(2, 2);
        nan[(0, 0)] = c(f64::NAN, 0.0);
        assert!(matches!(HermitianOperator::new(nan), Err(Error::NonFinite)));
    }

    fn entries(max_dim: usize) -> impl Strategy<Value = (usize, Vec<f64>)> {
        (1..=max_dim).prop_flat_map(|d| (Just(d), prop::collection::vec(-1.0f64..1.0, 2 * d * d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn eig_reconstructs((dim, e) in entries(8)) {
            let m = random_hermitian(dim, &e);
            let eig = eig_hermitian(&m).unwrap();
            prop_assert!(max_abs_diff(&eig.reconstruct(), m.matrix()) <= 1e-9);
            prop_assert!(gram_deviation(&eig.eigenvectors) <= 1e-9);
            prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    proptest! {
        #[test]
        fn partial_trace_preserves_trace((d1, e1) in entries(4), (d2, e2) in entries(4)) {
            let a = random_psd(d1, &e1);
            let b = random_psd(d2, &e2);
            let joint = tensor(&a, &b);
            let reduced = partial_trace(&joint, &[d1, d2], &[0]).unwrap();
            prop_assert!((reduced.trace() - joint.trace()).abs() <= 1e-12 * joint.trace().max(1.0));
            let expected = a.scale(b.trace());
            prop_assert!(max_abs_diff(reduced.matrix(), expected.matrix()) <= 1e-12 * joint.trace().max(1.0));
        }

        #[test]
        fn sqrt_squares_back((dim, e) in entries(6)) {
            let m = random_psd(dim, &e);
            let root = sqrt_psd(&m).unwrap();
            let square = root.matrix() * root.matrix();
            prop_assert!(max_abs_diff(&square, m.matrix()) <= 1e-9);
        }

        #[test]
        fn trace_distance_is_a_metric(
            (dim, e1) in entries(4),
            e2 in prop::collection::vec(-1.0f64..1.0, 32),
            e3 in prop::collection::vec(-1.0f64..1.0, 32),
        ) {
            let a = random_hermitian(dim, &e1);
            let b = random_hermitian(dim, &e2);
            let d = random_hermitian(dim, &e3);
            let ab = trace_distance(&a, &b).unwrap();
            let ba = trace_distance(&b, &a).unwrap();
            let bd = trace_distance(&b, &d).unwrap();
            let ad = trace_distance(&a, &d).unwrap();
            prop_assert!(ab >= 0.0);
            prop_assert!((ab - ba).abs() <= 1e-10);
            prop_assert!(ad <= ab + bd + 1e-10);
        }
    }
}
