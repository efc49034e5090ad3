//! Weak CMP, weak MPD and weak DMP inverses.
//!
//! Each is a function of the pair `(A, X)`: the minimal rank weak Drazin
//! inverse `X` is arbitrary but fixed, so none of these inverses is unique in
//! `A` alone. The checked entry points certify `X` first; the `_unchecked`
//! variants skip the certificate for negative tests.

use serde::Serialize;

use crate::classical::{moore_penrose, pinv_against};
use crate::decomp::{hs_decompose, index, Hsd};
use crate::error::{Error, Result, Side};
use crate::matcore::{
    inv, is_close, rank, range_basis_against, row_space_rows_against, singular_values,
    spectral_norm, Mat, Tol,
};
use crate::weakdrazin::{certify_against, certify_mrwd, pinv_member_blocks};

/// `A† A X A A†`, with `X` certified as a left minimal rank weak Drazin inverse.
pub fn weak_cmp(a: &Mat, x: &Mat, tol: Tol) -> Result<Mat> {
    certify_mrwd(a, x, Side::Left, tol)?.into_result()?;
    Ok(weak_cmp_unchecked(a, x, tol))
}

pub fn weak_cmp_unchecked(a: &Mat, x: &Mat, tol: Tol) -> Mat {
    let p = moore_penrose(a, tol);
    &(&(&(&p * a) * x) * a) * &p
}

/// Block form `U [[K*KZ, 0], [L*KZ, 0]] U*` of the weak CMP inverse, where
/// `Z` is a left minimal rank weak Drazin inverse of `ΣK`.
pub fn weak_cmp_hs(h: &Hsd, z: &Mat, tol: Tol) -> Result<Mat> {
    certify_block(h, z, Side::Left, tol)?;
    let kz = &h.k * z;
    h.assemble_left(&(&h.k.adjoint() * &kz), &(&h.l.adjoint() * &kz))
}

fn certify_block(h: &Hsd, z: &Mat, side: Side, tol: Tol) -> Result<()> {
    certify_against(&h.sigma_k(), z, side, h.sigma[0], 0.0, tol)?
        .into_result()
        .map(|_| ())
}

/// `A† X A`, with `X` certified as a left minimal rank weak Drazin inverse.
pub fn weak_mpd(a: &Mat, x: &Mat, tol: Tol) -> Result<Mat> {
    certify_mrwd(a, x, Side::Left, tol)?.into_result()?;
    Ok(weak_mpd_unchecked(a, x, tol))
}

pub fn weak_mpd_unchecked(a: &Mat, x: &Mat, tol: Tol) -> Mat {
    &(&moore_penrose(a, tol) * x) * a
}

/// Block form of the weak MPD inverse:
/// `U [[K*Σ⁻¹ZΣK, K*Σ⁻¹ZΣL], [L*Σ⁻¹ZΣK, L*Σ⁻¹ZΣL]] U*`.
pub fn weak_mpd_hs(h: &Hsd, z: &Mat, tol: Tol) -> Result<Mat> {
    certify_block(h, z, Side::Left, tol)?;
    let si_z = &h.sigma_inv() * z;
    let (kt, lt) = (h.k.adjoint(), h.l.adjoint());
    let (sk, sl) = (h.sigma_k(), h.sigma_l());
    h.assemble(
        &(&(&kt * &si_z) * &sk),
        &(&(&kt * &si_z) * &sl),
        &(&(&lt * &si_z) * &sk),
        &(&(&lt * &si_z) * &sl),
    )
}

/// `A Z A†`, with `Z` certified as a right minimal rank weak Drazin inverse.
pub fn weak_dmp(a: &Mat, z: &Mat, tol: Tol) -> Result<Mat> {
    certify_mrwd(a, z, Side::Right, tol)?.into_result()?;
    Ok(weak_dmp_unchecked(a, z, tol))
}

pub fn weak_dmp_unchecked(a: &Mat, z: &Mat, tol: Tol) -> Mat {
    &(a * z) * &moore_penrose(a, tol)
}

/// Upper-left `r x r` block `Z` of `U* X U`.
pub fn extract_z(h: &Hsd, x: &Mat) -> Mat {
    h.blocks(x).0
}

/// The projector expression of the weak CMP inverse `Y` through
/// `C = I - AY` and `D = I - YA`.
#[derive(Debug, Clone)]
pub struct CdExpression {
    pub y: Mat,
    pub c: Mat,
    pub d: Mat,
    /// `(A + C)⁻¹`, computed directly.
    pub inv_plus: Mat,
    /// `(A - C)⁻¹`, computed directly.
    pub inv_minus: Mat,
    /// `(I - D)(A + C)⁻¹(I - C)`
    pub y_plus: Mat,
    /// `(I - D)(A - C)⁻¹(I - C)`
    pub y_minus: Mat,
    /// `XAA† + (I - XA) Σ_{i<k} (-A)^i`
    pub series_plus: Mat,
    /// `XAA† - (I - XA) Σ_{i<k} A^i`
    pub series_minus: Mat,
}

pub fn cd_expression(a: &Mat, x: &Mat, tol: Tol) -> Result<CdExpression> {
    let y = weak_cmp(a, x, tol)?;
    let n = a.rows();
    let id = Mat::identity(n);
    let c = &id - &(a * &y);
    let d = &id - &(&y * a);
    let inv_plus = inv(&(a + &c), tol)?;
    let inv_minus = inv(&(a - &c), tol)?;
    let y_plus = &(&(&id - &d) * &inv_plus) * &(&id - &c);
    let y_minus = &(&(&id - &d) * &inv_minus) * &(&id - &c);

    let k = index(a, tol)?;
    let xa = x * a;
    let xaa_p = &xa * &moore_penrose(a, tol);
    let mut alt = Mat::zeros(n, n);
    let mut pos = Mat::zeros(n, n);
    let mut term = id.clone();
    for i in 0..k {
        pos = &pos + &term;
        alt = if i % 2 == 0 { &alt + &term } else { &alt - &term };
        term = &term * a;
    }
    let free = &id - &xa;
    let series_plus = &xaa_p + &(&free * &alt);
    let series_minus = &xaa_p - &(&free * &pos);
    Ok(CdExpression {
        y,
        c,
        d,
        inv_plus,
        inv_minus,
        y_plus,
        y_minus,
        series_plus,
        series_minus,
    })
}

/// `(A ± D)⁻¹` through Jacobson's lemma next to the direct inverses.
#[derive(Debug, Clone)]
pub struct JacobsonInverses {
    /// `I + (Y - I)(A + C)⁻¹ A`
    pub inv_a_plus_d: Mat,
    /// `-I + (Y + I)(A - C)⁻¹ A`
    pub inv_a_minus_d: Mat,
    pub direct_plus: Mat,
    pub direct_minus: Mat,
}

impl JacobsonInverses {
    pub fn agree(&self, tol: Tol) -> bool {
        is_close(&self.inv_a_plus_d, &self.direct_plus, tol)
            && is_close(&self.inv_a_minus_d, &self.direct_minus, tol)
    }
}

pub fn jacobson_ad_inverses(a: &Mat, c: &Mat, d: &Mat, y: &Mat, tol: Tol) -> Result<JacobsonInverses> {
    let id = Mat::identity(a.rows());
    let plus = inv(&(a + c), tol)?;
    let minus = inv(&(a - c), tol)?;
    Ok(JacobsonInverses {
        inv_a_plus_d: &id + &(&(&(y - &id) * &plus) * a),
        inv_a_minus_d: &(&(&(y + &id) * &minus) * a) - &id,
        direct_plus: inv(&(a + d), tol)?,
        direct_minus: inv(&(a - d), tol)?,
    })
}

/// Oblique projector onto `R(range_of)` along `N(null_of)`, computed as
/// `B (S B)⁻¹ S` with `B` an orthonormal basis of the range and `S` a full
/// row rank matrix with the prescribed null space.
pub fn oblique_projector(range_of: &Mat, null_of: &Mat, tol: Tol) -> Result<Mat> {
    projector_against(range_of, 0.0, null_of, 0.0, tol)
}

pub(crate) fn projector_against(
    range_of: &Mat,
    range_scale: f64,
    null_of: &Mat,
    null_scale: f64,
    tol: Tol,
) -> Result<Mat> {
    if range_of.rows() != null_of.cols() {
        return Err(Error::ShapeMismatch {
            left: range_of.shape(),
            right: null_of.shape(),
        });
    }
    let b = range_basis_against(range_of, range_scale, tol)?;
    let s = row_space_rows_against(null_of, null_scale, tol)?;
    if b.cols() != s.rows() {
        return Err(Error::NotComplementary);
    }
    let sb = &s * &b;
    // B and S have orthonormal columns / rows, so SB is judged on unit scale.
    let smallest = singular_values(&sb).last().copied().unwrap_or(1.0);
    if smallest <= tol.rank_rtol * b.rows() as f64 {
        return Err(Error::NotComplementary);
    }
    let sb_inv = inv(&sb, tol).map_err(|_| Error::NotComplementary)?;
    Ok(&(&b * &sb_inv) * &s)
}

/// Truth values of the three equivalent statements characterizing the weak
/// CMP inverse through its two projectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectorStatements {
    /// `Y = A†AXAA†`
    pub formula: bool,
    /// `AY = P_{R(A^k),N(XAA†)}`, `YA = P_{R(A†A^k),N(XA)}`, `YAY = Y`
    pub projectors_outer: bool,
    /// both projector identities and `rank Y = rank A^k`
    pub projectors_rank: bool,
}

impl ProjectorStatements {
    pub fn agree(&self) -> bool {
        self.formula == self.projectors_outer && self.formula == self.projectors_rank
    }
}

/// `AY = P_{R(A^k), N(XAA†)}` and `YA = P_{R(A†A^k), N(XA)}` for the given
/// pair; shared by the projector characterization and the suites.
pub fn weak_cmp_projectors(a: &Mat, x: &Mat, tol: Tol) -> Result<(Mat, Mat)> {
    let k = index(a, tol)?;
    let p = moore_penrose(a, tol);
    let s_a = spectral_norm(a);
    let s_p = spectral_norm(&p);
    let s_x = spectral_norm(x);
    let ak = a.pow(k);
    let xa = x * a;
    let first = projector_against(&ak, s_a.powi(k as i32), &(&xa * &p), s_x * s_a * s_p, tol)?;
    let second = projector_against(&(&p * &ak), s_p * s_a.powi(k as i32), &xa, s_x * s_a, tol)?;
    Ok((first, second))
}

pub fn projector_characterization(a: &Mat, x: &Mat, y: &Mat, tol: Tol) -> Result<ProjectorStatements> {
    let cert = certify_mrwd(a, x, Side::Left, tol)?.into_result()?;
    if y.shape() != a.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: y.shape(),
        });
    }
    let formula = is_close(y, &weak_cmp_unchecked(a, x, tol), tol);
    let (p_first, p_second) = weak_cmp_projectors(a, x, tol)?;
    let projectors = is_close(&(a * y), &p_first, tol) && is_close(&(y * a), &p_second, tol);
    let outer = is_close(&(&(y * a) * y), y, tol);
    let rank_ok = rank(y, tol) == cert.rank_ad;
    Ok(ProjectorStatements {
        formula,
        projectors_outer: projectors && outer,
        projectors_rank: projectors && rank_ok,
    })
}

/// `true` iff `e`, `f` are idempotent and `y` is the strong Bott–Duffin
/// `(e, f)`-inverse of `a`: `yay = y`, `ya = e`, `ay = f`.
pub fn bott_duffin_verify(a: &Mat, y: &Mat, e: &Mat, f: &Mat, tol: Tol) -> Result<bool> {
    for (which, m) in [("e", e), ("f", f)] {
        if m.shape() != a.shape() {
            return Err(Error::ShapeMismatch {
                left: a.shape(),
                right: m.shape(),
            });
        }
        let sq = m * m;
        if !is_close(&sq, m, tol) {
            let residual = crate::classical::rel(&sq, m);
            return Err(Error::NotIdempotent { which, residual });
        }
    }
    Ok(is_close(&(&(y * a) * y), y, tol) && is_close(&(y * a), e, tol) && is_close(&(a * y), f, tol))
}

/// A candidate `(a, y, e, f)` for [`bott_duffin_verify`].
#[derive(Debug, Clone)]
pub struct BottDuffinTriple {
    pub name: &'static str,
    pub y: Mat,
    pub e: Mat,
    pub f: Mat,
}

/// The three triples: weak CMP `(A†AXA, AXAA†)`, weak MPD `(A†XA², AA†XA)`
/// and weak DMP `(AZA†A, A²ZA†)` for a right member `Z`.
pub fn bott_duffin_triples(a: &Mat, x: &Mat, z: &Mat, tol: Tol) -> Result<[BottDuffinTriple; 3]> {
    certify_mrwd(a, x, Side::Left, tol)?.into_result()?;
    certify_mrwd(a, z, Side::Right, tol)?.into_result()?;
    let p = moore_penrose(a, tol);
    let pa = &p * a;
    let ap = a * &p;
    let xa = x * a;
    let axa = a * &xa;
    let a2 = a * a;
    let az = a * z;
    let azp = &az * &p;
    Ok([
        BottDuffinTriple {
            name: "weak CMP",
            y: &(&pa * x) * &ap,
            e: &pa * &xa,
            f: &axa * &p,
        },
        BottDuffinTriple {
            name: "weak MPD",
            y: &p * &xa,
            e: &(&p * x) * &a2,
            f: &ap * &xa,
        },
        BottDuffinTriple {
            name: "weak DMP",
            y: azp.clone(),
            e: &azp * a,
            f: &(&a2 * z) * &p,
        },
    ])
}

/// Both sides of `Y† = Y1  ⇔  (KZ)† = Z1K*`.
#[derive(Debug, Clone)]
pub struct PinvRelation {
    /// `A†AXAA†`
    pub y: Mat,
    /// `AA†X1A†A`
    pub y1: Mat,
    pub lhs_holds: bool,
    pub rhs_holds: bool,
}

impl PinvRelation {
    pub fn agree(&self) -> bool {
        self.lhs_holds == self.rhs_holds
    }
}

/// `X` must be a left minimal rank weak Drazin inverse of `A` and `X1` a
/// right one of `A†` (the members with the block shape
/// `U [[Z1, 0], [W1, 0]] U*`).
pub fn wcmp_pinv_relation(a: &Mat, x: &Mat, x1: &Mat, tol: Tol) -> Result<PinvRelation> {
    certify_mrwd(a, x, Side::Left, tol)?.into_result()?;
    let p = moore_penrose(a, tol);
    certify_mrwd(&p, x1, Side::Right, tol)?.into_result()?;
    let y = weak_cmp_unchecked(a, x, tol);
    let y1 = &(&(&(a * &p) * x1) * &p) * a;
    let s_a = spectral_norm(a);
    let s_p = spectral_norm(&p);
    let y_scale = s_p * s_p * s_a * s_a * spectral_norm(x);
    let lhs_holds = is_close(&pinv_against(&y, y_scale, tol), &y1, tol);
    let rhs_holds = match hs_decompose(a, tol) {
        Err(Error::ZeroMatrix) => true,
        Err(e) => return Err(e),
        Ok(h) => {
            let z = extract_z(&h, x);
            let z1 = match pinv_member_blocks(&h, x1, tol)? {
                Some((z1, _)) => z1,
                None => return Err(Error::NotMrwd {
                    side: Side::Right,
                    residual: f64::NAN,
                    rank_x: rank(x1, tol),
                    rank_ad: rank(x1, tol),
                }),
            };
            let kz = &h.k * &z;
            is_close(&pinv_against(&kz, spectral_norm(&z), tol), &(&z1 * &h.k.adjoint()), tol)
        }
    };
    Ok(PinvRelation {
        y,
        y1,
        lhs_holds,
        rhs_holds,
    })
}
