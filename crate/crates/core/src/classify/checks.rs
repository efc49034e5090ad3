//! Equivalence checkers. Every "if and only if" is evaluated by computing both
//! sides independently; a checker reports the booleans and `agree()` says
//! whether the equivalence held on this input.

use serde::Serialize;

use super::predicates::{is_chi_inverse, is_left_k_ep, is_nilpotent};
use crate::classical::{drazin, drazin_against, dmp, moore_penrose, mpd};
use crate::decomp::{hs_decompose, index, Hsd};
use crate::error::{Error, Result, Side};
use crate::matcore::{is_close, is_negligible, spectral_norm, Mat, Tol};
use crate::weakdrazin::certify_mrwd;
use crate::weakinv::{extract_z, weak_cmp_unchecked, weak_mpd_unchecked};

/// Decomposition data shared by the block-form clauses. `None` for `A = 0`,
/// where every block is empty and the block clauses hold vacuously.
struct Blocks {
    h: Hsd,
    z: Mat,
    /// `(ΣK)^D`
    skd: Mat,
}

fn blocks(a: &Mat, x: &Mat, tol: Tol) -> Result<Option<Blocks>> {
    match hs_decompose(a, tol) {
        Err(Error::ZeroMatrix) => Ok(None),
        Err(e) => Err(e),
        Ok(h) => {
            let z = extract_z(&h, x);
            let skd = drazin_against(&h.sigma_k(), h.sigma[0], tol)?;
            Ok(Some(Blocks { h, z, skd }))
        }
    }
}

fn certified(a: &Mat, x: &Mat, tol: Tol) -> Result<()> {
    certify_mrwd(a, x, Side::Left, tol)?.into_result().map(|_| ())
}

/// The clauses of the Moore–Penrose characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropMp {
    /// `A†AXAA† = A†`
    pub wcmp_is_pinv: bool,
    /// `ind(A) <= 1`
    pub index_le_one: bool,
    /// `A = AA^DA`
    pub a_eq_a_ad_a: bool,
    /// `A = XA²`
    pub a_eq_x_a2: bool,
    /// `X` is a χ-inverse of `A`
    pub chi_inverse: bool,
}

impl PropMp {
    pub fn agree(&self) -> bool {
        let v = self.wcmp_is_pinv;
        [self.index_le_one, self.a_eq_a_ad_a, self.a_eq_x_a2, self.chi_inverse]
            .iter()
            .all(|&b| b == v)
    }
}

pub fn check_prop_mp(a: &Mat, x: &Mat, tol: Tol) -> Result<PropMp> {
    certified(a, x, tol)?;
    let p = moore_penrose(a, tol);
    let d = drazin(a, tol)?;
    Ok(PropMp {
        wcmp_is_pinv: is_close(&weak_cmp_unchecked(a, x, tol), &p, tol),
        index_le_one: index(a, tol)? <= 1,
        a_eq_a_ad_a: is_close(&(&(a * &d) * a), a, tol),
        a_eq_x_a2: is_close(&(&(x * a) * a), a, tol),
        chi_inverse: is_chi_inverse(a, x, tol),
    })
}

/// Two sides of an equivalence stated for `ind(A) = 1`. Invertible inputs
/// (index 0) fall outside the statement; `agree()` does not judge them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexOnePair {
    pub lhs: bool,
    pub rhs: bool,
    pub index_zero: bool,
}

impl IndexOnePair {
    pub fn agree(&self) -> bool {
        self.index_zero || self.lhs == self.rhs
    }
}

/// `A†XA = A†` versus `ind(A) = 1 ∧ L = 0`.
pub fn check_wmpd_mp(a: &Mat, x: &Mat, tol: Tol) -> Result<IndexOnePair> {
    certified(a, x, tol)?;
    let k = index(a, tol)?;
    let lhs = is_close(&weak_mpd_unchecked(a, x, tol), &moore_penrose(a, tol), tol);
    let l_zero = match blocks(a, x, tol)? {
        None => true,
        Some(b) => is_negligible(&b.h.l, 1.0, tol),
    };
    Ok(IndexOnePair {
        lhs,
        rhs: k == 1 && l_zero,
        index_zero: k == 0,
    })
}

/// Two sides of an equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub lhs: bool,
    pub rhs: bool,
}

impl Equivalence {
    pub fn agree(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Weak CMP equals weak MPD versus `Z = (ΣK)^D ∧ (ΣK)^DΣL = 0`.
pub fn check_wmpd_wcmp(a: &Mat, x: &Mat, tol: Tol) -> Result<Equivalence> {
    certified(a, x, tol)?;
    let lhs = is_close(&weak_cmp_unchecked(a, x, tol), &weak_mpd_unchecked(a, x, tol), tol);
    let rhs = match blocks(a, x, tol)? {
        None => true,
        Some(b) => {
            let sl = b.h.sigma_l();
            is_close(&b.z, &b.skd, tol)
                && is_negligible(&(&b.skd * &sl), spectral_norm(&b.skd) * b.h.sigma[0], tol)
        }
    };
    Ok(Equivalence { lhs, rhs })
}

/// `A†AXA = AXAA†` versus `K*KZ = Z ∧ L*KZ = 0 ∧ ZΣL = 0 ∧ Z = (ΣK)^D`.
pub fn check_wcep(a: &Mat, x: &Mat, tol: Tol) -> Result<Equivalence> {
    certified(a, x, tol)?;
    let p = moore_penrose(a, tol);
    let axa = &(a * x) * a;
    let lhs = is_close(&(&p * &axa), &(&axa * &p), tol);
    let rhs = match blocks(a, x, tol)? {
        None => true,
        Some(b) => {
            let h = &b.h;
            let kz = &h.k * &b.z;
            let z_norm = spectral_norm(&b.z);
            is_close(&(&h.k.adjoint() * &kz), &b.z, tol)
                && is_negligible(&(&h.l.adjoint() * &kz), z_norm, tol)
                && is_negligible(&(&b.z * &h.sigma_l()), z_norm * h.sigma[0], tol)
                && is_close(&b.z, &b.skd, tol)
        }
    };
    Ok(Equivalence { lhs, rhs })
}

/// The four equivalent conditions of the main theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MainTheorem {
    /// `A†AXA = AXAA†`
    pub commuting: bool,
    /// weak CMP equals both DMP and MPD
    pub wcmp_eq_dmp_mpd: bool,
    /// weak CMP, `A^D`, DMP and MPD all coincide
    pub all_coincide: bool,
    /// `XAA† = A^D` and `A` is left k-EP
    pub xaa_pinv_left_k_ep: bool,
}

impl MainTheorem {
    pub fn agree(&self) -> bool {
        let v = self.commuting;
        [self.wcmp_eq_dmp_mpd, self.all_coincide, self.xaa_pinv_left_k_ep]
            .iter()
            .all(|&b| b == v)
    }
}

pub fn check_main_theorem(a: &Mat, x: &Mat, tol: Tol) -> Result<MainTheorem> {
    certified(a, x, tol)?;
    let p = moore_penrose(a, tol);
    let d = drazin(a, tol)?;
    let dm = dmp(a, tol)?;
    let md = mpd(a, tol)?;
    let y = weak_cmp_unchecked(a, x, tol);
    let axa = &(a * x) * a;
    Ok(MainTheorem {
        commuting: is_close(&(&p * &axa), &(&axa * &p), tol),
        wcmp_eq_dmp_mpd: is_close(&y, &dm, tol) && is_close(&y, &md, tol),
        all_coincide: is_close(&y, &d, tol) && is_close(&d, &dm, tol) && is_close(&dm, &md, tol),
        xaa_pinv_left_k_ep: is_close(&(&(x * a) * &p), &d, tol) && is_left_k_ep(a, tol),
    })
}

/// The three special values of the weak CMP inverse `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prop22 {
    /// `Y = 0` versus `A` nilpotent
    pub zero: Equivalence,
    /// `Y = A` versus `A† = A`
    pub itself: Equivalence,
    /// `Y = A*` versus `A† = A* ∧ ind(A) = 1`
    pub adjoint: IndexOnePair,
}

impl Prop22 {
    pub fn agree(&self) -> bool {
        self.zero.agree() && self.itself.agree() && self.adjoint.agree()
    }
}

pub fn check_prop22(a: &Mat, x: &Mat, tol: Tol) -> Result<Prop22> {
    certified(a, x, tol)?;
    let k = index(a, tol)?;
    let p = moore_penrose(a, tol);
    let y = weak_cmp_unchecked(a, x, tol);
    let (sa, sp) = (spectral_norm(a), spectral_norm(&p));
    let y_scale = sp * sp * sa * sa * spectral_norm(x);
    let a_star = a.adjoint();
    Ok(Prop22 {
        zero: Equivalence {
            lhs: is_negligible(&y, y_scale, tol),
            rhs: is_nilpotent(a, tol),
        },
        itself: Equivalence {
            lhs: is_close(&y, a, tol),
            rhs: is_close(&p, a, tol),
        },
        adjoint: IndexOnePair {
            lhs: is_close(&y, &a_star, tol),
            rhs: is_close(&p, &a_star, tol) && k == 1,
            index_zero: k == 0,
        },
    })
}
