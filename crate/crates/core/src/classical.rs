//! Classical generalized inverses: Moore–Penrose, Drazin, group, core,
//! DMP, MPD and CMP, plus the block forms of `A^D`, `A^{D,†}` and `A^{†,D}`
//! in Hartwig–Spindelböck coordinates.

use crate::decomp::{index, index_against, Hsd};
use crate::error::{Error, Result};
use crate::matcore::{inv, is_close, svd, Mat, Tol};

/// Moore–Penrose inverse via the SVD.
pub fn moore_penrose(a: &Mat, tol: Tol) -> Mat {
    pinv_against(a, 0.0, tol)
}

/// Moore–Penrose inverse with singular values below
/// `rank_rtol * max(scale, sigma_1) * max(rows, cols)` treated as zero.
pub(crate) fn pinv_against(a: &Mat, scale: f64, tol: Tol) -> Mat {
    if a.is_empty() {
        return Mat::zeros(a.cols(), a.rows());
    }
    let d = svd(a).expect("finite matrix");
    let reference = scale.max(d.sigma[0]);
    let cut = tol.rank_rtol * reference * a.rows().max(a.cols()) as f64;
    let inv_s: Vec<f64> = d
        .sigma
        .iter()
        .map(|&s| if s > cut && s > 0.0 { 1.0 / s } else { 0.0 })
        .collect();
    let p = inv_s.len();
    let s_plus = Mat::diag(&inv_s);
    let v = d.v.block(0, 0, a.cols(), p);
    let u = d.u.block(0, 0, a.rows(), p);
    &(&v * &s_plus) * &u.adjoint()
}

/// Relative residuals of the four Penrose equations
/// `AXA = A`, `XAX = X`, `(AX)* = AX`, `(XA)* = XA`.
pub fn penrose_residuals(a: &Mat, x: &Mat) -> [f64; 4] {
    let ax = a * x;
    let xa = x * a;
    [
        rel(&(&ax * a), a),
        rel(&(&xa * x), x),
        rel(&ax.adjoint(), &ax),
        rel(&xa.adjoint(), &xa),
    ]
}

/// Relative residuals of the Drazin equations
/// `XAX = X`, `AX = XA`, `A^{k+1} X = A^k`.
pub fn drazin_residuals(a: &Mat, x: &Mat, k: usize) -> [f64; 3] {
    let ak = a.pow(k);
    [
        rel(&(&(x * a) * x), x),
        rel(&(a * x), &(x * a)),
        rel(&(&(&ak * a) * x), &ak),
    ]
}

/// `||p - q||_F / max(1, ||p||_F, ||q||_F)`.
pub(crate) fn rel(p: &Mat, q: &Mat) -> f64 {
    (p - q).frobenius_norm() / p.frobenius_norm().max(q.frobenius_norm()).max(1.0)
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

/// Drazin inverse `A^k (A^{2k+1})† A^k`, `k = ind(A)`, checked against the
/// three defining equations.
pub fn drazin(a: &Mat, tol: Tol) -> Result<Mat> {
    drazin_against(a, 0.0, tol)
}

/// As [`drazin`], with ranks judged against `max(scale, sigma_1(A))`.
pub(crate) fn drazin_against(a: &Mat, scale: f64, tol: Tol) -> Result<Mat> {
    require_square(a)?;
    let k = index_against(a, scale, tol)?;
    if k == 0 {
        return inv(a, tol);
    }
    let s1 = crate::matcore::singular_values(a)[0].max(scale);
    let ak = a.pow(k);
    let big = &(&ak * &ak) * a;
    let x = &(&ak * &pinv_against(&big, s1.powi(2 * k as i32 + 1), tol)) * &ak;
    let res = drazin_residuals(a, &x, k);
    if res.iter().any(|&r| r > tol.eq_rtol) {
        return Err(Error::DrazinResidual(res));
    }
    Ok(x)
}

/// Group inverse; requires `ind(A) <= 1`.
pub fn group_inverse(a: &Mat, tol: Tol) -> Result<Mat> {
    require_square(a)?;
    let k = index(a, tol)?;
    if k > 1 {
        return Err(Error::IndexTooLarge { index: k });
    }
    drazin(a, tol)
}

/// Core inverse `A^# A A†`; requires `ind(A) <= 1`.
pub fn core_inverse(a: &Mat, tol: Tol) -> Result<Mat> {
    let g = group_inverse(a, tol)?;
    Ok(&(&g * a) * &moore_penrose(a, tol))
}

/// DMP inverse `A^D A A†`.
pub fn dmp(a: &Mat, tol: Tol) -> Result<Mat> {
    let d = drazin(a, tol)?;
    Ok(&(&d * a) * &moore_penrose(a, tol))
}

/// MPD inverse `A† A A^D`.
pub fn mpd(a: &Mat, tol: Tol) -> Result<Mat> {
    let d = drazin(a, tol)?;
    Ok(&(&moore_penrose(a, tol) * a) * &d)
}

/// CMP inverse `A† A A^D A A†`.
pub fn cmp(a: &Mat, tol: Tol) -> Result<Mat> {
    let d = drazin(a, tol)?;
    let p = moore_penrose(a, tol);
    Ok(&(&(&(&p * a) * &d) * a) * &p)
}

/// `A^D`, `A^{D,†}` and `A^{†,D}` evaluated from their block forms.
#[derive(Debug, Clone)]
pub struct BlockForms {
    pub drazin: Mat,
    pub dmp: Mat,
    pub mpd: Mat,
}

/// With `D = (ΣK)^D`:
///
/// * `A^D     = U [[D, D²ΣL], [0, 0]] U*`
/// * `A^{D,†} = U [[D, 0], [0, 0]] U*`
/// * `A^{†,D} = U [[K*K D, K*K D²ΣL], [L*K D, L*K D²ΣL]] U*`
pub fn classical_block_forms(h: &Hsd, tol: Tol) -> Result<BlockForms> {
    let (n, r) = (h.dim(), h.rank());
    let d = drazin_against(&h.sigma_k(), h.sigma[0], tol)?;
    let d2sl = &(&d * &d) * &h.sigma_l();
    let zero_tr = Mat::zeros(r, n - r);
    let drazin = h.assemble_top(&d, &d2sl)?;
    let dmp = h.assemble_top(&d, &zero_tr)?;
    let kk = &h.k.adjoint() * &h.k;
    let lk = &h.l.adjoint() * &h.k;
    let mpd = h.assemble(&(&kk * &d), &(&kk * &d2sl), &(&lk * &d), &(&lk * &d2sl))?;
    Ok(BlockForms { drazin, dmp, mpd })
}

/// `true` when every Drazin residual is within `eq_rtol`.
pub fn is_drazin_inverse(a: &Mat, x: &Mat, tol: Tol) -> Result<bool> {
    let k = index(a, tol)?;
    Ok(drazin_residuals(a, x, k).iter().all(|&r| r <= tol.eq_rtol)
        && is_close(&(a * x), &(x * a), tol))
}
