//! Hartwig–Spindelböck decomposition, the matrix index, and the
//! Moore–Penrose inverse written in the decomposition's block form.

use crate::error::{Error, Result};
use crate::matcore::{rank_against, singular_values, svd, Mat, Tol};

/// `A = U [[ΣK, ΣL], [0, 0]] U*` with `U` unitary, `Σ` positive diagonal and
/// `K K* + L L* = I_r`.
#[derive(Debug, Clone)]
pub struct Hsd {
    pub u: Mat,
    /// Diagonal of `Σ`, nonincreasing and positive.
    pub sigma: Vec<f64>,
    pub k: Mat,
    pub l: Mat,
}

impl Hsd {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    pub fn sigma_mat(&self) -> Mat {
        Mat::diag(&self.sigma)
    }

    pub fn sigma_inv(&self) -> Mat {
        Mat::diag(&self.sigma.iter().map(|s| 1.0 / s).collect::<Vec<_>>())
    }

    /// `ΣK`
    pub fn sigma_k(&self) -> Mat {
        &self.sigma_mat() * &self.k
    }

    /// `ΣL`
    pub fn sigma_l(&self) -> Mat {
        &self.sigma_mat() * &self.l
    }

    /// Splits `U* M U` into its `r` / `n-r` blocks `(M11, M12, M21, M22)`.
    pub fn blocks(&self, m: &Mat) -> (Mat, Mat, Mat, Mat) {
        let t = &(&self.u.adjoint() * m) * &self.u;
        let (n, r) = (self.dim(), self.rank());
        (
            t.block(0, 0, r, r),
            t.block(0, r, r, n - r),
            t.block(r, 0, n - r, r),
            t.block(r, r, n - r, n - r),
        )
    }

    /// `U [[b11, b12], [b21, b22]] U*`.
    pub fn assemble(&self, b11: &Mat, b12: &Mat, b21: &Mat, b22: &Mat) -> Result<Mat> {
        let inner = Mat::from_blocks(b11, b12, b21, b22)?;
        if inner.shape() != self.u.shape() {
            return Err(Error::ShapeMismatch {
                left: inner.shape(),
                right: self.u.shape(),
            });
        }
        Ok(&(&self.u * &inner) * &self.u.adjoint())
    }

    /// `U [[b11, b12], [0, 0]] U*`.
    pub fn assemble_top(&self, b11: &Mat, b12: &Mat) -> Result<Mat> {
        let (n, r) = (self.dim(), self.rank());
        self.assemble(b11, b12, &Mat::zeros(n - r, r), &Mat::zeros(n - r, n - r))
    }

    /// `U [[b11, 0], [b21, 0]] U*`.
    pub fn assemble_left(&self, b11: &Mat, b21: &Mat) -> Result<Mat> {
        let (n, r) = (self.dim(), self.rank());
        self.assemble(b11, &Mat::zeros(r, n - r), b21, &Mat::zeros(n - r, n - r))
    }

    /// `U [[ΣK, ΣL], [0, 0]] U*`.
    pub fn reconstruct(&self) -> Mat {
        self.assemble_top(&self.sigma_k(), &self.sigma_l())
            .expect("consistent HSD blocks")
    }
}

fn require_square(a: &Mat) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Builds the decomposition from an SVD `A = P diag(σ, 0) Q*`: `U = P`,
/// `W = Q* P`, and `[K L]` are the first `r` rows of `W`.
pub fn hs_decompose(a: &Mat, tol: Tol) -> Result<Hsd> {
    hs_decompose_against(a, 0.0, tol)
}

/// As [`hs_decompose`], with the rank cutoff taken relative to
/// `max(scale, sigma_1)`. Used on sub-blocks whose exact value may vanish.
pub(crate) fn hs_decompose_against(a: &Mat, scale: f64, tol: Tol) -> Result<Hsd> {
    require_square(a)?;
    let d = svd(a)?;
    let n = a.rows();
    let cut = tol.rank_rtol * d.sigma[0].max(scale) * n as f64;
    let r = d.sigma.iter().filter(|&&s| s > cut && s > 0.0).count();
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    let w = &d.v.adjoint() * &d.u;
    Ok(Hsd {
        k: w.block(0, 0, r, r),
        l: w.block(0, r, r, n - r),
        sigma: d.sigma[..r].to_vec(),
        u: d.u,
    })
}

/// Smallest `k` with `rank(A^k) = rank(A^{k+1})`, capped at `n`. Ranks of
/// powers are judged against `sigma_1(A)^k`.
pub fn index(a: &Mat, tol: Tol) -> Result<usize> {
    index_against(a, 0.0, tol)
}

/// As [`index`], judging ranks against `max(scale, sigma_1(A))^k`.
pub(crate) fn index_against(a: &Mat, scale: f64, tol: Tol) -> Result<usize> {
    require_square(a)?;
    let n = a.rows();
    let s1 = singular_values(a).first().copied().unwrap_or(0.0).max(scale);
    let mut power = Mat::identity(n);
    let mut prev = n;
    for k in 0..n {
        power = &power * a;
        let next = rank_against(&power, s1.powi(k as i32 + 1), tol);
        if next == prev {
            return Ok(k);
        }
        prev = next;
    }
    Ok(n)
}

/// `U [[K*Σ⁻¹, 0], [L*Σ⁻¹, 0]] U*`.
pub fn mp_from_hs(h: &Hsd) -> Mat {
    let s_inv = h.sigma_inv();
    h.assemble_left(&(&h.k.adjoint() * &s_inv), &(&h.l.adjoint() * &s_inv))
        .expect("consistent HSD blocks")
}
