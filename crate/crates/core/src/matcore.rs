//! Dense complex matrices, the singular value decomposition, numerical rank
//! and the tolerance policy used by every approximate decision in the crate.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = Complex64;

/// Tolerance policy.
///
/// `rank_rtol` is the relative singular-value cutoff: a singular value counts
/// toward the rank when it exceeds `rank_rtol * scale * max(rows, cols)`, where
/// `scale` is the largest singular value (or a caller supplied reference
/// magnitude, see [`rank_against`]). `eq_rtol` is the relative Frobenius
/// threshold used by [`approx_eq`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tol {
    pub rank_rtol: f64,
    pub eq_rtol: f64,
}

impl Tol {
    /// Default rank cutoff. Products of up to `2k+1` factors with `k <= 4`
    /// carry rounding noise of a few hundred ulps relative to the reference
    /// scale, so the cutoff sits well above that floor.
    pub const DEFAULT_RANK_RTOL: f64 = 1e-11;
    /// Equality threshold for generated matrix families.
    pub const FAMILY_EQ_RTOL: f64 = 1e-8;
    /// Equality threshold for small rational fixtures.
    pub const FIXTURE_EQ_RTOL: f64 = 1e-10;

    pub fn new(rank_rtol: f64, eq_rtol: f64) -> Result<Self> {
        if !(rank_rtol.is_finite() && rank_rtol >= 0.0) {
            return Err(Error::InvalidTolerance(format!(
                "rank_rtol must be finite and nonnegative, got {rank_rtol}"
            )));
        }
        if !(eq_rtol.is_finite() && eq_rtol > 0.0) {
            return Err(Error::InvalidTolerance(format!(
                "eq_rtol must be finite and positive, got {eq_rtol}"
            )));
        }
        Ok(Tol { rank_rtol, eq_rtol })
    }

    /// Tolerances for the small rational example matrices.
    pub fn fixture() -> Self {
        Tol {
            rank_rtol: Self::DEFAULT_RANK_RTOL,
            eq_rtol: Self::FIXTURE_EQ_RTOL,
        }
    }

    pub fn with_eq(self, eq_rtol: f64) -> Result<Self> {
        Tol::new(self.rank_rtol, eq_rtol)
    }

    pub fn with_rank(self, rank_rtol: f64) -> Result<Self> {
        Tol::new(rank_rtol, self.eq_rtol)
    }

    /// Residual bound `eq_rtol * max(1, scale)`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.eq_rtol * scale.max(1.0)
    }
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            rank_rtol: Self::DEFAULT_RANK_RTOL,
            eq_rtol: Self::FAMILY_EQ_RTOL,
        }
    }
}

/// Dense complex matrix.
///
/// Entries are finite when built through the checked constructors. Zero-sized
/// matrices are permitted so that degenerate blocks (for instance the `L`
/// block of an invertible matrix) compose without special cases.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat(DMatrix<C64>);

impl Mat {
    /// Builds a matrix from row-major entries, rejecting wrong counts and
    /// non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Mat(DMatrix::from_row_slice(rows, cols, &data)))
    }

    /// Real matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_row_major(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Real matrix from a slice of equally long rows. Panics on ragged input;
    /// intended for literals.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(n * m);
        for r in rows {
            assert_eq!(r.as_ref().len(), m, "ragged matrix literal");
            data.extend_from_slice(r.as_ref());
        }
        Self::from_real(n, m, &data).expect("finite matrix literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Mat(DMatrix::identity(n, n))
    }

    /// Square diagonal matrix with real diagonal.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Mat(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Mat(DMatrix::from_fn(rows, cols, f))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.rows() == 0 || self.cols() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn to_row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        Mat(self.0.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> Mat {
        Mat(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Mat {
        self.scale(C64::new(s, 0.0))
    }

    /// `A^k` with `A^0 = I`. Panics on non-square input.
    pub fn pow(&self, k: usize) -> Mat {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut acc = Mat::identity(self.rows());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Copy of the `nrows x ncols` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, nrows: usize, ncols: usize) -> Mat {
        Mat(self.0.view((row, col), (nrows, ncols)).into_owned())
    }

    /// Horizontal concatenation `[a b ...]`.
    pub fn hstack(parts: &[&Mat]) -> Result<Mat> {
        let rows = parts.first().map_or(0, |m| m.rows());
        if let Some(bad) = parts.iter().find(|m| m.rows() != rows) {
            return Err(Error::ShapeMismatch {
                left: parts[0].shape(),
                right: bad.shape(),
            });
        }
        let cols = parts.iter().map(|m| m.cols()).sum();
        let mut out = DMatrix::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            out.view_mut((0, c0), (rows, m.cols())).copy_from(&m.0);
            c0 += m.cols();
        }
        Ok(Mat(out))
    }

    /// Vertical concatenation.
    pub fn vstack(parts: &[&Mat]) -> Result<Mat> {
        let cols = parts.first().map_or(0, |m| m.cols());
        if let Some(bad) = parts.iter().find(|m| m.cols() != cols) {
            return Err(Error::ShapeMismatch {
                left: parts[0].shape(),
                right: bad.shape(),
            });
        }
        let rows = parts.iter().map(|m| m.rows()).sum();
        let mut out = DMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for m in parts {
            out.view_mut((r0, 0), (m.rows(), cols)).copy_from(&m.0);
            r0 += m.rows();
        }
        Ok(Mat(out))
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Result<Mat> {
        let top = Mat::hstack(&[a, b])?;
        let bottom = Mat::hstack(&[c, d])?;
        Mat::vstack(&[&top, &bottom])
    }
}

impl From<DMatrix<C64>> for Mat {
    fn from(m: DMatrix<C64>) -> Self {
        Mat(m)
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Mat> for &Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                Mat(&self.0 $op &rhs.0)
            }
        }
        impl $tr<Mat> for Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                Mat(self.0 $op rhs.0)
            }
        }
        impl $tr<&Mat> for Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                Mat(self.0 $op &rhs.0)
            }
        }
        impl $tr<Mat> for &Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                Mat(&self.0 $op rhs.0)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat(-&self.0)
    }
}

impl Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat(-self.0)
    }
}

/// Full singular value decomposition `A = U diag(sigma) V*`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows x rows`, unitary.
    pub u: Mat,
    /// `min(rows, cols)` values, nonincreasing.
    pub sigma: Vec<f64>,
    /// `cols x cols`, unitary.
    pub v: Mat,
}

impl Svd {
    /// `U diag(sigma) V*`.
    pub fn reconstruct(&self) -> Mat {
        let (m, n) = (self.u.rows(), self.v.rows());
        let s = Mat::from_fn(m, n, |i, j| {
            if i == j {
                C64::new(self.sigma[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        &(&self.u * &s) * &self.v.adjoint()
    }
}

fn to_faer(a: &Mat) -> faer::Mat<C64> {
    faer::Mat::from_fn(a.rows(), a.cols(), |i, j| a.0[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, C64>) -> Mat {
    Mat(DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]))
}

/// Full SVD with both unitary factors square and singular values sorted
/// in nonincreasing order.
pub fn svd(a: &Mat) -> Result<Svd> {
    if a.is_empty() {
        return Err(Error::Empty);
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let dec = to_faer(a).svd().map_err(|_| Error::NoConvergence)?;
    let sigma = dec.S().column_vector().iter().map(|s| s.re).collect();
    Ok(Svd {
        u: from_faer(dec.U()),
        sigma,
        v: from_faer(dec.V()),
    })
}

/// Singular values only, nonincreasing. Empty input gives an empty vector.
pub fn singular_values(a: &Mat) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    to_faer(a)
        .singular_values()
        .unwrap_or_else(|_| vec![f64::NAN; a.rows().min(a.cols())])
}

fn cutoff(sigma_ref: f64, rows: usize, cols: usize, tol: Tol) -> f64 {
    tol.rank_rtol * sigma_ref * rows.max(cols) as f64
}

/// Numerical rank: the number of singular values above
/// `rank_rtol * sigma_1 * max(rows, cols)`. The zero matrix has rank 0.
pub fn rank(a: &Mat, tol: Tol) -> usize {
    let s = singular_values(a);
    let s1 = s.first().copied().unwrap_or(0.0);
    count_above(&s, cutoff(s1, a.rows(), a.cols(), tol))
}

/// Rank measured against a caller supplied magnitude instead of `sigma_1`.
///
/// Needed when `a` is a product whose exact value may vanish, e.g. a power of
/// a nilpotent matrix: relative to its own largest singular value, pure
/// rounding noise looks full rank. The effective reference is
/// `max(scale, sigma_1)`.
pub fn rank_against(a: &Mat, scale: f64, tol: Tol) -> usize {
    let s = singular_values(a);
    let s1 = s.first().copied().unwrap_or(0.0);
    count_above(&s, cutoff(scale.max(s1), a.rows(), a.cols(), tol))
}

fn count_above(s: &[f64], cut: f64) -> usize {
    s.iter().filter(|&&x| x > cut && x > 0.0).count()
}

/// Rank of `A^k` judged against `sigma_1(A)^k`.
pub fn rank_of_power(a: &Mat, k: usize, tol: Tol) -> usize {
    let s1 = singular_values(a).first().copied().unwrap_or(0.0);
    rank_against(&a.pow(k), s1.powi(k as i32), tol)
}

/// `true` iff `||A - B||_F <= eq_rtol * max(1, ||A||_F, ||B||_F)`.
pub fn approx_eq(a: &Mat, b: &Mat, tol: Tol) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(is_close(a, b, tol))
}

/// Shape-agnostic variant of [`approx_eq`] for internal use; different shapes
/// compare unequal.
pub(crate) fn is_close(a: &Mat, b: &Mat, tol: Tol) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let scale = a.frobenius_norm().max(b.frobenius_norm());
    (a - b).frobenius_norm() <= tol.bound(scale)
}

/// `true` iff `a` is zero relative to the reference magnitude `scale`.
pub(crate) fn is_negligible(a: &Mat, scale: f64, tol: Tol) -> bool {
    a.frobenius_norm() <= tol.bound(scale)
}

/// Inverse of a square matrix, computed through the SVD. Fails when the
/// smallest singular value falls at or below the rank cutoff.
pub fn inv(a: &Mat, tol: Tol) -> Result<Mat> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.is_empty() {
        return Ok(a.clone());
    }
    let d = svd(a)?;
    let n = a.rows();
    let s_min = d.sigma[n - 1];
    if s_min <= cutoff(d.sigma[0], n, n, tol) || s_min == 0.0 {
        return Err(Error::Singular { sigma_min: s_min });
    }
    let inv_s: Vec<f64> = d.sigma.iter().map(|s| 1.0 / s).collect();
    Ok(&(&d.v * &Mat::diag(&inv_s)) * &d.u.adjoint())
}

/// Largest singular value; 0 for empty input.
pub fn spectral_norm(a: &Mat) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Orthonormal basis (as columns) of the range of `a`.
pub fn range_basis(a: &Mat, tol: Tol) -> Result<Mat> {
    range_basis_against(a, 0.0, tol)
}

/// As [`range_basis`], with the rank judged against `max(scale, sigma_1)`.
pub fn range_basis_against(a: &Mat, scale: f64, tol: Tol) -> Result<Mat> {
    if a.is_empty() {
        return Ok(Mat::zeros(a.rows(), 0));
    }
    let d = svd(a)?;
    let r = count_above(&d.sigma, cutoff(d.sigma[0].max(scale), a.rows(), a.cols(), tol));
    Ok(d.u.block(0, 0, a.rows(), r))
}

/// Full-row-rank matrix whose null space equals the null space of `a`
/// (the conjugated leading right singular vectors).
pub fn row_space_rows(a: &Mat, tol: Tol) -> Result<Mat> {
    row_space_rows_against(a, 0.0, tol)
}

/// As [`row_space_rows`], with the rank judged against `max(scale, sigma_1)`.
pub fn row_space_rows_against(a: &Mat, scale: f64, tol: Tol) -> Result<Mat> {
    if a.is_empty() {
        return Ok(Mat::zeros(0, a.cols()));
    }
    let d = svd(a)?;
    let r = count_above(&d.sigma, cutoff(d.sigma[0].max(scale), a.rows(), a.cols(), tol));
    Ok(d.v.block(0, 0, a.cols(), r).adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tol {
        Tol::fixture()
    }

    #[test]
    fn identity_and_zero_singular_values() {
        assert_eq!(svd(&Mat::identity(3)).unwrap().sigma, vec![1.0, 1.0, 1.0]);
        assert_eq!(svd(&Mat::zeros(2, 2)).unwrap().sigma, vec![0.0, 0.0]);
        assert_eq!(rank(&Mat::zeros(3, 3), tol()), 0);
        assert_eq!(rank(&Mat::identity(5), tol()), 5);
    }

    #[test]
    fn svd_rejects_empty_and_non_finite() {
        assert_eq!(svd(&Mat::zeros(0, 2)).unwrap_err(), Error::Empty);
        let bad = Mat::from(DMatrix::from_element(2, 2, C64::new(f64::NAN, 0.0)));
        assert_eq!(svd(&bad).unwrap_err(), Error::NonFinite);
        assert!(Mat::from_real(1, 1, &[f64::INFINITY]).is_err());
    }

    #[test]
    fn rectangular_svd_is_full() {
        let a = Mat::from_real_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]);
        for m in [a.clone(), a.adjoint()] {
            let d = svd(&m).unwrap();
            assert_eq!(d.u.shape(), (m.rows(), m.rows()));
            assert_eq!(d.v.shape(), (m.cols(), m.cols()));
            assert!(is_close(&(d.u.adjoint() * &d.u), &Mat::identity(m.rows()), tol()));
            assert!(is_close(&(d.v.adjoint() * &d.v), &Mat::identity(m.cols()), tol()));
            assert!(is_close(&d.reconstruct(), &m, tol()));
        }
    }

    #[test]
    fn approx_eq_shape_mismatch() {
        let err = approx_eq(&Mat::zeros(2, 2), &Mat::zeros(2, 3), tol()).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
        assert!(approx_eq(&Mat::zeros(2, 2), &Mat::zeros(2, 2), tol()).unwrap());
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = inv(&Mat::diag(&[2.0, 4.0]), tol()).unwrap();
        assert!(is_close(&d, &Mat::diag(&[0.5, 0.25]), tol()));
        assert!(is_close(&inv(&Mat::identity(3), tol()).unwrap(), &Mat::identity(3), tol()));
        assert!(matches!(
            inv(&Mat::diag(&[1.0, 0.0]), tol()),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(inv(&Mat::zeros(2, 3), tol()), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn power_rank_ignores_rounding_noise() {
        // Strictly upper triangular, so A^3 = 0 exactly in exact arithmetic.
        let a = Mat::from_real_rows(&[[0.0, 1.0, 0.3], [0.0, 0.0, 2.0], [0.0, 0.0, 0.0]]);
        assert_eq!(rank_of_power(&a, 0, tol()), 3);
        assert_eq!(rank_of_power(&a, 1, tol()), 2);
        assert_eq!(rank_of_power(&a, 2, tol()), 1);
        assert_eq!(rank_of_power(&a, 3, tol()), 0);
        let noise = Mat::from_real_rows(&[[1e-17, 0.0], [0.0, 1e-17]]);
        assert_eq!(rank(&noise, tol()), 2);
        assert_eq!(rank_against(&noise, 1.0, tol()), 0);
    }

    #[test]
    fn projector_helpers() {
        let a = Mat::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        let b = range_basis(&a, tol()).unwrap();
        assert_eq!(b.shape(), (2, 1));
        let s = row_space_rows(&a, tol()).unwrap();
        assert_eq!(s.shape(), (1, 2));
        assert!(is_negligible(&(&s * &Mat::from_real_rows(&[[0.0], [1.0]])), 1.0, tol()));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tol::new(-1.0, 1e-8).is_err());
        assert!(Tol::new(0.0, 0.0).is_err());
        assert!(Tol::new(0.0, 1e-8).is_ok());
    }
}
