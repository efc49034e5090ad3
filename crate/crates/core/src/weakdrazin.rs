//! Minimal rank weak Drazin inverses: certificates, the two canonical
//! members, and a seeded sampler that draws from the whole family.
//!
//! A left member is `X` with `X A^{k+1} = A^k` and `rank X = rank A^D`; in
//! Hartwig–Spindelböck coordinates these are exactly
//! `U [[Z, W], [0, 0]] U*` with `Z` a left member for `ΣK` and
//! `R(W) ⊆ R(Z)`. The sampler walks that characterization recursively.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::classical::{dmp, mpd};
use crate::decomp::{hs_decompose, hs_decompose_against, index_against, Hsd};
use crate::error::{Error, Result, Side};
use crate::matcore::{inv, is_negligible, rank, rank_against, singular_values, Mat, Tol, C64};

/// Outcome of checking a candidate minimal rank weak Drazin inverse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WdCertificate {
    pub side: Side,
    /// Index of `A` used in the defining equation.
    pub k: usize,
    /// `||X A^{k+1} - A^k||_F` (left) or `||A^{k+1} X - A^k||_F` (right).
    pub residual_wd: f64,
    pub rank_x: usize,
    pub rank_ad: usize,
    pub valid: bool,
}

impl WdCertificate {
    pub fn into_result(self) -> Result<Self> {
        if self.valid {
            Ok(self)
        } else {
            Err(Error::NotMrwd {
                side: self.side,
                residual: self.residual_wd,
                rank_x: self.rank_x,
                rank_ad: self.rank_ad,
            })
        }
    }
}

/// Checks both conditions: the weak Drazin equation within
/// `eq_rtol * max(1, ||A^k||_F)` and `rank X = rank A^k`.
pub fn certify_mrwd(a: &Mat, x: &Mat, side: Side, tol: Tol) -> Result<WdCertificate> {
    certify_against(a, x, side, 0.0, 0.0, tol)
}

/// Certificate with ranks of `A`'s powers judged against `a_scale` and the
/// rank of `X` against `x_scale` (each floored by the matrix's own norm).
pub(crate) fn certify_against(
    a: &Mat,
    x: &Mat,
    side: Side,
    a_scale: f64,
    x_scale: f64,
    tol: Tol,
) -> Result<WdCertificate> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.shape() != x.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: x.shape(),
        });
    }
    let k = index_against(a, a_scale, tol)?;
    let s1 = singular_values(a).first().copied().unwrap_or(0.0).max(a_scale);
    let ak = a.pow(k);
    let ak1 = &ak * a;
    let lhs = match side {
        Side::Left => x * &ak1,
        Side::Right => &ak1 * x,
    };
    let residual_wd = (&lhs - &ak).frobenius_norm();
    let rank_ad = rank_against(&ak, s1.powi(k as i32), tol);
    let rank_x = if x_scale > 0.0 {
        rank_against(x, x_scale, tol)
    } else {
        rank(x, tol)
    };
    let valid = residual_wd <= tol.bound(ak.frobenius_norm()) && rank_x == rank_ad;
    Ok(WdCertificate {
        side,
        k,
        residual_wd,
        rank_x,
        rank_ad,
        valid,
    })
}

/// Canonical left member `A^D A A†`.
pub fn mrwd_dmp(a: &Mat, tol: Tol) -> Result<Mat> {
    dmp(a, tol)
}

/// Canonical right member `A† A A^D`.
pub fn mrwd_mpd_right(a: &Mat, tol: Tol) -> Result<Mat> {
    mpd(a, tol)
}

/// `rows x cols` matrix of independent standard complex Gaussians.
pub(crate) fn complex_gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Mat::from(DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(h * re, h * im)
    }))
}

/// Draws a member of the minimal rank weak Drazin family of `A` on `side`.
/// Deterministic in `(A, seed)`.
pub fn sample_mrwd(a: &Mat, side: Side, seed: u64, tol: Tol) -> Result<Mat> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = singular_values(a).first().copied().unwrap_or(0.0);
    match side {
        Side::Left => sample_left(a, scale, &mut rng, tol),
        // X is a right member of A iff X* is a left member of A*.
        Side::Right => Ok(sample_left(&a.adjoint(), scale, &mut rng, tol)?.adjoint()),
    }
}

fn sample_left(a: &Mat, scale: f64, rng: &mut ChaCha8Rng, tol: Tol) -> Result<Mat> {
    let n = a.rows();
    let h = match hs_decompose_against(a, scale, tol) {
        Ok(h) => h,
        Err(Error::ZeroMatrix) => return Ok(Mat::zeros(n, n)),
        Err(e) => return Err(e),
    };
    let r = h.rank();
    let sk = h.sigma_k();
    let z = if rank_against(&sk, scale, tol) == r {
        inv(&sk, tol)?
    } else {
        sample_left(&sk, scale, rng, tol)?
    };
    let w = &z * &complex_gaussian(r, n - r, rng);
    h.assemble_top(&z, &w)
}

/// Checks that `X1` has the block shape of a minimal rank right weak Drazin
/// inverse of `A†`: `U* X1 U = [[Z1, 0], [W1, 0]]` with `Z1` a certified
/// right member for `K*Σ⁻¹` and `R(W1*) ⊆ R(Z1*)`.
///
/// Only right members are confined to this shape. A left member `X1` of `A†`
/// need not vanish on `N(A†)`, so its upper-right block is free in general.
pub fn mrwd_pinv_structure_check(a: &Mat, x1: &Mat, tol: Tol) -> Result<bool> {
    if a.shape() != x1.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: x1.shape(),
        });
    }
    let h = match hs_decompose(a, tol) {
        Ok(h) => h,
        // A† = 0, whose only member is 0.
        Err(Error::ZeroMatrix) => return Ok(is_negligible(x1, 0.0, tol)),
        Err(e) => return Err(e),
    };
    Ok(pinv_member_blocks(&h, x1, tol)?.is_some())
}

/// Returns `(Z1, W1)` when `X1` passes the block test of
/// [`mrwd_pinv_structure_check`].
pub(crate) fn pinv_member_blocks(h: &Hsd, x1: &Mat, tol: Tol) -> Result<Option<(Mat, Mat)>> {
    let x_norm = x1.frobenius_norm();
    let (z1, b12, w1, b22) = h.blocks(x1);
    if !is_negligible(&b12, x_norm, tol) || !is_negligible(&b22, x_norm, tol) {
        return Ok(None);
    }
    let m = &h.k.adjoint() * &h.sigma_inv();
    let m_scale = 1.0 / h.sigma[h.rank() - 1];
    let cert = certify_against(&m, &z1, Side::Right, m_scale, x_norm, tol)?;
    if !cert.valid {
        return Ok(None);
    }
    let stacked = Mat::hstack(&[&z1.adjoint(), &w1.adjoint()])?;
    if rank_against(&stacked, x_norm, tol) != rank_against(&z1, x_norm, tol) {
        return Ok(None);
    }
    Ok(Some((z1, w1)))
}
