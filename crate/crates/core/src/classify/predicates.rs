//! Matrix-class predicates. Each is evaluated with the crate's approximate
//! equality; inputs are assumed square and finite.

use crate::classical::{drazin, moore_penrose};
use crate::decomp::index;
use crate::matcore::{is_close, rank, rank_against, singular_values, Mat, Tol};

fn sigma1(a: &Mat) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// `A^n ≈ 0`, with the rank of `A^n` judged against `sigma_1(A)^n`.
pub fn is_nilpotent(a: &Mat, tol: Tol) -> bool {
    let n = a.rows();
    if n == 0 {
        return true;
    }
    rank_against(&a.pow(n), sigma1(a).powi(n as i32), tol) == 0
}

/// `A†A ≈ AA†`.
pub fn is_ep(a: &Mat, tol: Tol) -> bool {
    let p = moore_penrose(a, tol);
    is_close(&(&p * a), &(a * &p), tol)
}

/// `A† ≈ A*`.
pub fn is_partial_isometry(a: &Mat, tol: Tol) -> bool {
    is_close(&moore_penrose(a, tol), &a.adjoint(), tol)
}

/// `A†A^k ≈ A^kA†` with `k = ind(A)`.
pub fn is_k_ep(a: &Mat, tol: Tol) -> bool {
    let Ok(k) = index(a, tol) else { return false };
    let p = moore_penrose(a, tol);
    let ak = a.pow(k);
    is_close(&(&p * &ak), &(&ak * &p), tol)
}

/// `A†A^{k+1} ≈ A^k` with `k = ind(A)`.
pub fn is_left_k_ep(a: &Mat, tol: Tol) -> bool {
    let Ok(k) = index(a, tol) else { return false };
    let p = moore_penrose(a, tol);
    let ak = a.pow(k);
    is_close(&(&(&p * &ak) * a), &ak, tol)
}

/// `A†AA^DA ≈ AA^DAA†`.
pub fn is_core_ep(a: &Mat, tol: Tol) -> bool {
    let Ok(d) = drazin(a, tol) else { return false };
    let p = moore_penrose(a, tol);
    let ada = &(a * &d) * a;
    is_close(&(&p * &ada), &(&ada * &p), tol)
}

/// `AXA ≈ A` and `R(X) ⊆ R(A)`, the latter as `rank [A X] = rank A`.
pub fn is_chi_inverse(a: &Mat, x: &Mat, tol: Tol) -> bool {
    if a.shape() != x.shape() || !a.is_square() {
        return false;
    }
    if !is_close(&(&(a * x) * a), a, tol) {
        return false;
    }
    let stacked = Mat::hstack(&[a, x]).expect("equal row counts");
    let scale = sigma1(a).max(sigma1(x));
    rank_against(&stacked, scale, tol) == rank(a, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tol {
        Tol::fixture()
    }

    #[test]
    fn identity_and_jordan_block() {
        let i = Mat::identity(3);
        assert!(is_ep(&i, tol()) && is_core_ep(&i, tol()));
        assert!(is_k_ep(&i, tol()) && is_left_k_ep(&i, tol()));
        assert!(!is_nilpotent(&i, tol()));
        let j = Mat::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(is_nilpotent(&j, tol()));
        assert!(!is_ep(&j, tol()));
        assert!(is_partial_isometry(&j, tol()));
    }

    #[test]
    fn chi_inverse_needs_range_inclusion() {
        let a = Mat::diag(&[1.0, 0.0]);
        assert!(is_chi_inverse(&a, &a, tol()));
        let x = Mat::from_real_rows(&[[1.0, 0.0], [1.0, 0.0]]);
        assert!(is_close(&(&(&a * &x) * &a), &a, tol()));
        assert!(!is_chi_inverse(&a, &x, tol()));
    }

    #[test]
    fn zero_matrix_classes() {
        let z = Mat::zeros(3, 3);
        assert!(is_nilpotent(&z, tol()));
        assert!(is_ep(&z, tol()) && is_partial_isometry(&z, tol()));
        assert!(is_core_ep(&z, tol()) && is_left_k_ep(&z, tol()));
    }
}
