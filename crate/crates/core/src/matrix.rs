//! Dense complex square matrices.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{invalid, Result};

/// A dense `dim × dim` complex matrix.
///
/// Storage is delegated to `nalgebra`; the public surface speaks in row-major
/// `(row, col)` indices and row-major flat vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(dim, dim, &mut f))
    }

    /// Builds a matrix from `dim²` entries in row-major order.
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return invalid("matrix dimension must be positive");
        }
        if entries.len() != dim * dim {
            return invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            ));
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, &entries)))
    }

    /// Rank-one projector `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |r, c| v[r] * v[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        (0..n * n).map(|i| self.0[(i / n, i % n)]).collect()
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..n {
            for c in 0..n {
                acc += self.0[(r, c)] * other.0[(c, r)];
            }
        }
        acc
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self(&self.0 * s)
    }

    /// Kronecker product, `self` being the most significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M − M†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.0[(r, c)] - self.0[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part `(M + M†)/2`, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.hermitian_eigenvalues()[0]
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex64 {
        &mut self.0[idx]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn row_major_round_trip() {
        let entries = vec![c(1.0, 0.0), c(2.0, 1.0), c(3.0, -1.0), c(4.0, 0.0)];
        let m = ComplexMatrix::from_row_major(2, entries.clone()).unwrap();
        assert_eq!(m[(0, 1)], c(2.0, 1.0));
        assert_eq!(m[(1, 0)], c(3.0, -1.0));
        assert_eq!(m.row_major(), entries);
    }

    #[test]
    fn wrong_entry_count_is_rejected() {
        assert!(ComplexMatrix::from_row_major(2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::from_row_major(0, vec![]).is_err());
    }

    #[test]
    fn kron_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_first_factor_most_significant() {
        // |1><0| ⊗ |0><1| has its single entry at row 1*2+0, column 0*2+1.
        let mut a = ComplexMatrix::zeros(2);
        a[(1, 0)] = c(1.0, 0.0);
        let mut b = ComplexMatrix::zeros(2);
        b[(0, 1)] = c(1.0, 0.0);
        let k = a.kron(&b);
        assert_eq!(k[(2, 1)], c(1.0, 0.0));
        assert_eq!(k.row_major().iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn pauli_y_eigenvalues() {
        let y = ComplexMatrix::from_row_major(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        let ev = y.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
        assert_eq!(y.hermiticity_deviation(), 0.0);
    }

    #[test]
    fn trace_product_matches_full_product() {
        let a = ComplexMatrix::from_fn(3, |r, k| c(r as f64 + 0.5, k as f64 - 1.0));
        let b = ComplexMatrix::from_fn(3, |r, k| c((r * k) as f64, 0.25 * r as f64));
        assert!((a.trace_product(&b) - (&a * &b).trace()).norm() < 1e-12);
    }
}
