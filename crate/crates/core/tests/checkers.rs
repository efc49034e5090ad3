use ginv::classical::{drazin, moore_penrose};
use ginv::classify::*;
use ginv::decomp::index;
use ginv::fixtures::{core_ep_not_wcep, wmpd_not_wcep};
use ginv::matcore::{approx_eq, inv, Mat};
use ginv::weakdrazin::sample_mrwd;
use ginv::weakinv::weak_cmp;
use ginv::{Side, Tol};

fn invertible() -> (Mat, Mat) {
    let a = Mat::from_real_rows(&[[2.0, 1.0], [1.0, 3.0]]);
    let ai = inv(&a, Tol::default()).unwrap();
    (a, ai)
}

#[test]
fn class_predicates() {
    let tol = Tol::fixture();
    let g = core_ep_not_wcep();
    assert!(is_core_ep(&g.a, tol));
    assert!(!is_ep(&g.a, tol));
    let j = Mat::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
    assert!(is_nilpotent(&j, tol) && !is_ep(&j, tol));
}

#[test]
fn prop_mp_examples() {
    let tol = Tol::default();
    let (a, ai) = invertible();
    let r = check_prop_mp(&a, &ai, tol).unwrap();
    assert!(r.wcmp_is_pinv && r.agree());

    let g = core_ep_not_wcep();
    let r = check_prop_mp(&g.a, &g.x, Tol::fixture()).unwrap();
    assert_eq!(
        (r.wcmp_is_pinv, r.index_le_one, r.a_eq_a_ad_a, r.a_eq_x_a2, r.chi_inverse),
        (false, false, false, false, false)
    );

    for seed in 0..5 {
        let a = gen_with_index(5, 3, 1, seed).unwrap();
        let x = sample_mrwd(&a, Side::Left, seed, tol).unwrap();
        let r = check_prop_mp(&a, &x, tol).unwrap();
        assert!(r.wcmp_is_pinv && r.agree(), "{r:?}");
    }
}

#[test]
fn wmpd_mp_examples() {
    let tol = Tol::default();
    let h = gen_hermitian_singular(3, 3, 2).unwrap();
    let r = check_wmpd_mp(&h, &inv(&h, tol).unwrap(), tol).unwrap();
    assert!(r.index_zero && r.lhs && !r.rhs);

    let d = Mat::diag(&[2.0, 0.0]);
    let r = check_wmpd_mp(&d, &Mat::diag(&[0.5, 0.0]), tol).unwrap();
    assert!(r.lhs && r.rhs && !r.index_zero);

    let f = wmpd_not_wcep();
    let r = check_wmpd_mp(&f.a, &f.x, Tol::fixture()).unwrap();
    assert!(!r.lhs && !r.rhs);
}

#[test]
fn wmpd_wcmp_examples() {
    let f = wmpd_not_wcep();
    let r = check_wmpd_wcmp(&f.a, &f.x, Tol::fixture()).unwrap();
    assert!(r.lhs && r.rhs);

    let g = core_ep_not_wcep();
    let d = drazin(&g.a, Tol::fixture()).unwrap();
    assert!(check_wmpd_wcmp(&g.a, &d, Tol::fixture()).unwrap().agree());

    let (a, ai) = invertible();
    let r = check_wmpd_wcmp(&a, &ai, Tol::default()).unwrap();
    assert!(r.lhs && r.rhs);
}

#[test]
fn wcep_examples_and_one_way_implication() {
    let tol = Tol::fixture();
    let f = wmpd_not_wcep();
    let r = check_wcep(&f.a, &f.x, tol).unwrap();
    assert!(!r.lhs && !r.rhs);
    // The converse of "wcep ⇒ weak CMP = weak MPD" fails here.
    assert!(check_wmpd_wcmp(&f.a, &f.x, tol).unwrap().lhs);

    let g = core_ep_not_wcep();
    let r = check_wcep(&g.a, &g.x, tol).unwrap();
    assert!(!r.lhs && !r.rhs && is_core_ep(&g.a, tol));

    let (a, ai) = invertible();
    let r = check_wcep(&a, &ai, Tol::default()).unwrap();
    assert!(r.lhs && r.rhs);
}

#[test]
fn main_theorem_examples() {
    let tol = Tol::default();
    let (a, ai) = invertible();
    let r = check_main_theorem(&a, &ai, tol).unwrap();
    assert!(r.commuting && r.wcmp_eq_dmp_mpd && r.all_coincide && r.xaa_pinv_left_k_ep);

    let f = wmpd_not_wcep();
    let r = check_main_theorem(&f.a, &f.x, Tol::fixture()).unwrap();
    assert!(!r.commuting && !r.wcmp_eq_dmp_mpd && !r.all_coincide && !r.xaa_pinv_left_k_ep);

    for seed in 0..5 {
        let h = gen_hermitian_singular(5, 3, seed).unwrap();
        let r = check_main_theorem(&h, &drazin(&h, tol).unwrap(), tol).unwrap();
        assert!(r.commuting && r.wcmp_eq_dmp_mpd && r.all_coincide && r.xaa_pinv_left_k_ep);
    }
}

#[test]
fn prop22_examples() {
    let tol = Tol::default();
    let j3 = Mat::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]);
    let r = check_prop22(&j3, &Mat::zeros(3, 3), tol).unwrap();
    assert!(r.zero.lhs && r.zero.rhs && r.agree());

    // Unitary: Y = A⁻¹ = A*, but the statement is about index 1.
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let u = Mat::from_real_rows(&[[c, -c], [c, c]]);
    let r = check_prop22(&u, &u.adjoint(), tol).unwrap();
    assert!(r.adjoint.lhs && !r.adjoint.rhs && r.adjoint.index_zero && r.agree());

    let f = wmpd_not_wcep();
    let r = check_prop22(&f.a, &f.x, Tol::fixture()).unwrap();
    for pair in [r.zero, r.itself] {
        assert!(!pair.lhs && !pair.rhs);
    }
    assert!(!r.adjoint.lhs && !r.adjoint.rhs);

    for seed in 0..5 {
        let s = gen_self_pinv(4, 2, seed).unwrap();
        let r = check_prop22(&s, &drazin(&s, tol).unwrap(), tol).unwrap();
        assert!(r.itself.lhs && r.itself.rhs);
        let p = gen_partial_isometry(4, 2, seed).unwrap();
        let x = sample_mrwd(&p, Side::Left, seed, tol).unwrap();
        let r = check_prop22(&p, &x, tol).unwrap();
        assert!(r.agree(), "{r:?}");
    }
}

#[test]
fn class_implications_on_generated_matrices() {
    let tol = Tol::default();
    for seed in 0..30 {
        let a = match seed % 3 {
            0 => gen_ep(5, 2 + (seed as usize % 3), seed).unwrap(),
            1 => gen_with_index(5, 3, 2, seed).unwrap(),
            _ => gen_hermitian_singular(6, 4, seed).unwrap(),
        };
        if is_k_ep(&a, tol) {
            assert!(is_left_k_ep(&a, tol));
        }
        if is_ep(&a, tol) {
            assert!(index(&a, tol).unwrap() <= 1);
            let x = sample_mrwd(&a, Side::Left, seed, tol).unwrap();
            assert!(approx_eq(&weak_cmp(&a, &x, tol).unwrap(), &moore_penrose(&a, tol), tol).unwrap());
        }
    }
}

#[test]
fn exact_oracle_on_fixtures() {
    use ginv::classify::exact::QMat;
    let a = QMat::from_i64(&[[1, 1, 0, 1], [0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0]]);
    let f = wmpd_not_wcep();
    assert_eq!(a.to_mat(), f.a);
    assert!(a.pinv().max_abs_diff(&f.pinv) == 0.0);
    assert_eq!(a.index(), f.index);
    let b = QMat::from_i64(&[[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]]);
    let g = core_ep_not_wcep();
    assert!(b.drazin().max_abs_diff(g.expected("drazin").unwrap()) == 0.0);
    assert!(b.pinv().max_abs_diff(&g.pinv) == 0.0);
}
