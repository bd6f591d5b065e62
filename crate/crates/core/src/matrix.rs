//! Dense complex matrices backed by `nalgebra`.

use std::ops::{Add, Mul};

use nalgebra::DMatrix;
pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Error, Result};

/// Finite, non-empty complex matrix.
///
/// Serialises as `{"dim": d, "re": [[..]], "im": [[..]]}` in row-major order;
/// `dim` is only written for square matrices and is checked when present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix(DMatrix<Complex64>);

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct MatrixRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        let m = ComplexMatrix::from_parts(&repr.re, &repr.im)?;
        if let Some(d) = repr.dim {
            if m.rows() != d || m.cols() != d {
                return Err(invalid_input(format!(
                    "declared dim {d} does not match {}x{} entries",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(m)
    }
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        let (re, im) = m.to_parts();
        MatrixRepr {
            dim: m.is_square().then(|| m.rows()),
            re,
            im,
        }
    }
}

impl ComplexMatrix {
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(invalid_input("matrix must have at least one row and column"));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid_input("matrix has non-finite entries"));
        }
        Ok(Self(m))
    }

    /// Row-major entries.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(invalid_input(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, entries))
    }

    /// Builds a matrix from separate real and imaginary row lists.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let rows = re.len();
        if rows == 0 {
            return Err(invalid_input("matrix has no rows"));
        }
        if im.len() != rows {
            return Err(invalid_input(format!("re has {rows} rows but im has {}", im.len())));
        }
        let cols = re[0].len();
        let mut entries = Vec::with_capacity(rows * cols);
        for (r, (re_row, im_row)) in re.iter().zip(im).enumerate() {
            if re_row.len() != cols || im_row.len() != cols {
                return Err(invalid_input(format!("row {r} is ragged (expected {cols} columns)")));
            }
            entries.extend(re_row.iter().zip(im_row).map(|(&a, &b)| Complex64::new(a, b)));
        }
        Self::from_row_slice(rows, cols, &entries)
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        Self(DMatrix::from_fn(d, d, |r, c| {
            if r == c {
                Complex64::new(diag[r], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub(crate) fn from_dmatrix_unchecked(m: DMatrix<Complex64>) -> Self {
        Self(m)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.diagonal().iter().sum()
    }

    /// Largest entrywise modulus of `self - other`; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.0.shape() != other.0.shape() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M - M†|`; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |M - I|`; infinite for non-square input.
    pub fn identity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&Self::identity(self.rows()))
    }

    /// `(M + M†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0))
    }

    /// `A · M · A†`.
    pub fn conjugate_by(&self, a: &ComplexMatrix) -> Self {
        Self(&a.0 * &self.0 * a.0.adjoint())
    }

    /// Row-major `(re, im)` lists.
    pub fn to_parts(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let rows = (0..self.rows()).map(|r| (0..self.cols()).map(|c| self.0[(r, c)]).collect::<Vec<_>>());
        rows.map(|row| {
            (
                row.iter().map(|z| z.re).collect::<Vec<_>>(),
                row.iter().map(|z| z.im).collect::<Vec<_>>(),
            )
        })
        .unzip()
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

/// Pauli matrices.
pub mod pauli {
    use super::{Complex64, ComplexMatrix};

    const O: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn two_by_two(entries: [Complex64; 4]) -> ComplexMatrix {
        ComplexMatrix::from_dmatrix_unchecked(nalgebra::DMatrix::from_row_slice(2, 2, &entries))
    }

    pub fn x() -> ComplexMatrix {
        two_by_two([O, ONE, ONE, O])
    }

    pub fn y() -> ComplexMatrix {
        two_by_two([O, -I, I, O])
    }

    pub fn z() -> ComplexMatrix {
        two_by_two([ONE, O, O, -ONE])
    }
}
