//! Serializable reports: every inverse of a matrix with the residual of its
//! defining identities, and the class / checker summary.

use serde::Serialize;

use crate::classical::{
    cmp, dmp, drazin, drazin_residuals, moore_penrose, mpd, penrose_residuals, rel,
};
use crate::classify::{
    check_main_theorem, check_prop22, check_prop_mp, check_wcep, check_wmpd_mp, check_wmpd_wcmp,
    is_core_ep, is_ep, is_k_ep, is_left_k_ep, is_nilpotent, is_partial_isometry, Equivalence,
    IndexOnePair, MainTheorem, Prop22, PropMp,
};
use crate::decomp::index;
use crate::error::{Error, Result, Side};
use crate::matcore::{rank, Mat, Tol};
use crate::weakdrazin::{certify_mrwd, sample_mrwd, WdCertificate};
use crate::weakinv::{weak_cmp, weak_dmp, weak_mpd};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Fingerprint {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub index: usize,
}

impl Fingerprint {
    pub fn of(a: &Mat, tol: Tol) -> Result<Self> {
        Ok(Fingerprint {
            rows: a.rows(),
            cols: a.cols(),
            rank: rank(a, tol),
            index: index(a, tol)?,
        })
    }
}

/// One computed inverse and the worst relative residual of its identities.
#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub name: &'static str,
    pub matrix: Mat,
    pub residual: f64,
    pub ok: bool,
}

/// A minimal rank weak Drazin inverse used by the report, with its origin.
#[derive(Debug, Clone, Serialize)]
pub struct Member {
    pub matrix: Mat,
    pub supplied: bool,
    pub certificate: WdCertificate,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Classes {
    pub nilpotent: bool,
    pub ep: bool,
    pub partial_isometry: bool,
    pub k_ep: bool,
    pub left_k_ep: bool,
    pub core_ep: bool,
}

impl Classes {
    pub fn of(a: &Mat, tol: Tol) -> Self {
        Classes {
            nilpotent: is_nilpotent(a, tol),
            ep: is_ep(a, tol),
            partial_isometry: is_partial_isometry(a, tol),
            k_ep: is_k_ep(a, tol),
            left_k_ep: is_left_k_ep(a, tol),
            core_ep: is_core_ep(a, tol),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InverseReport {
    pub fingerprint: Fingerprint,
    pub tol: Tol,
    /// Left member used by the weak CMP and weak MPD inverses.
    pub x: Member,
    /// Right member used by the weak DMP inverse.
    pub z: Member,
    pub inverses: Vec<Entry>,
    pub classes: Classes,
}

impl InverseReport {
    pub fn all_ok(&self) -> bool {
        self.inverses.iter().all(|e| e.ok)
    }

    pub fn get(&self, name: &str) -> Option<&Mat> {
        self.inverses.iter().find(|e| e.name == name).map(|e| &e.matrix)
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

/// Certifies a supplied member, or samples one from `seed`.
pub fn member(a: &Mat, given: Option<&Mat>, side: Side, seed: u64, tol: Tol) -> Result<Member> {
    let (matrix, supplied) = match given {
        Some(x) => (x.clone(), true),
        None => (sample_mrwd(a, side, seed, tol)?, false),
    };
    let certificate = certify_mrwd(a, &matrix, side, tol)?.into_result()?;
    Ok(Member {
        matrix,
        supplied,
        certificate,
    })
}

fn worst(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

/// Builds the full report. `x` is certified as a left member when given;
/// otherwise left and right members are sampled from `seed`.
pub fn inverse_report(a: &Mat, x: Option<&Mat>, seed: u64, tol: Tol) -> Result<InverseReport> {
    require_square(a)?;
    let fingerprint = Fingerprint::of(a, tol)?;
    let k = fingerprint.index;
    let x = member(a, x, Side::Left, seed, tol)?;
    let z = member(a, None, Side::Right, seed.wrapping_add(1), tol)?;
    let (xm, zm) = (&x.matrix, &z.matrix);

    let p = moore_penrose(a, tol);
    let d = drazin(a, tol)?;
    let ak = a.pow(k);
    let ad_a = &d * a;
    let a_ad = a * &d;
    let outer = |m: &Mat| rel(&(&(m * a) * m), m);

    let dmp_m = dmp(a, tol)?;
    let mpd_m = mpd(a, tol)?;
    let cmp_m = cmp(a, tol)?;
    let wcmp = weak_cmp(a, xm, tol)?;
    let wmpd = weak_mpd(a, xm, tol)?;
    let wdmp = weak_dmp(a, zm, tol)?;
    let axa = &(a * xm) * a;
    let a2 = a * a;

    let mut inverses = vec![
        ("moore_penrose", p.clone(), worst(&penrose_residuals(a, &p))),
        ("drazin", d.clone(), worst(&drazin_residuals(a, &d, k))),
        (
            "dmp",
            dmp_m.clone(),
            worst(&[outer(&dmp_m), rel(&(&dmp_m * a), &ad_a), rel(&(&ak * &dmp_m), &(&ak * &p))]),
        ),
        (
            "mpd",
            mpd_m.clone(),
            worst(&[outer(&mpd_m), rel(&(a * &mpd_m), &a_ad), rel(&(&mpd_m * &ak), &(&p * &ak))]),
        ),
        (
            "cmp",
            cmp_m.clone(),
            worst(&[
                outer(&cmp_m),
                rel(&(a * &cmp_m), &(&a_ad * &(a * &p))),
                rel(&(&cmp_m * a), &(&(&p * a) * &ad_a)),
            ]),
        ),
        (
            "weak_cmp",
            wcmp.clone(),
            worst(&[
                outer(&wcmp),
                rel(&(&wcmp * a), &(&p * &axa)),
                rel(&(a * &wcmp), &(&axa * &p)),
            ]),
        ),
        (
            "weak_mpd",
            wmpd.clone(),
            worst(&[
                outer(&wmpd),
                rel(&(&wmpd * a), &(&(&p * xm) * &a2)),
                rel(&(a * &wmpd), &(&(&(a * &p) * xm) * a)),
            ]),
        ),
        (
            "weak_dmp",
            wdmp.clone(),
            worst(&[
                outer(&wdmp),
                rel(&(&wdmp * a), &(&(&(a * zm) * &p) * a)),
                rel(&(a * &wdmp), &(&(&a2 * zm) * &p)),
            ]),
        ),
    ];
    if k <= 1 {
        let core = &ad_a * &p;
        let res = worst(&[outer(&core), rel(&(a * &core), &(a * &p)), rel(&(&core * &a2), a)]);
        inverses.push(("core", core, res));
    }

    Ok(InverseReport {
        fingerprint,
        tol,
        inverses: inverses
            .into_iter()
            .map(|(name, matrix, residual)| Entry {
                name,
                matrix,
                residual,
                ok: residual <= tol.eq_rtol,
            })
            .collect(),
        classes: Classes::of(a, tol),
        x,
        z,
    })
}

/// Every checker's record on `(A, X)`.
#[derive(Debug, Clone, Serialize)]
pub struct Checks {
    pub prop22: Prop22,
    pub prop_mp: PropMp,
    pub wmpd_mp: IndexOnePair,
    pub wmpd_wcmp: Equivalence,
    pub wcep: Equivalence,
    pub main: MainTheorem,
}

impl Checks {
    pub fn all_agree(&self) -> bool {
        self.prop22.agree()
            && self.prop_mp.agree()
            && self.wmpd_mp.agree()
            && self.wmpd_wcmp.agree()
            && self.wcep.agree()
            && self.main.agree()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub fingerprint: Fingerprint,
    pub classes: Classes,
    pub x: Member,
    pub checks: Checks,
}

pub fn class_report(a: &Mat, x: Option<&Mat>, seed: u64, tol: Tol) -> Result<ClassReport> {
    require_square(a)?;
    let x = member(a, x, Side::Left, seed, tol)?;
    let m = &x.matrix;
    Ok(ClassReport {
        fingerprint: Fingerprint::of(a, tol)?,
        classes: Classes::of(a, tol),
        checks: Checks {
            prop22: check_prop22(a, m, tol)?,
            prop_mp: check_prop_mp(a, m, tol)?,
            wmpd_mp: check_wmpd_mp(a, m, tol)?,
            wmpd_wcmp: check_wmpd_wcmp(a, m, tol)?,
            wcep: check_wcep(a, m, tol)?,
            main: check_main_theorem(a, m, tol)?,
        },
        x,
    })
}
