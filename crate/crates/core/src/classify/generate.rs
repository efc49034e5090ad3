//! Seeded random matrices with prescribed structure.
//!
//! `gen_with_index` uses the core-nilpotent form `S · diag(C, N) · S⁻¹`. The
//! similarity `S` and the core block `C` are drawn with singular values in
//! fixed narrow bands, so every generated matrix is well conditioned on its
//! nonzero part and the rank/index decisions stay far from the cutoff.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::predicates::{is_ep, is_nilpotent, is_partial_isometry};
use crate::decomp::index;
use crate::error::{Error, Result};
use crate::matcore::{inv, rank, Mat, Tol, C64};
use crate::weakdrazin::complex_gaussian;

/// Singular values of the similarity `S`.
const S_BAND: (f64, f64) = (1.0, 3.0);
/// Singular values of the invertible core block.
const CORE_BAND: (f64, f64) = (0.7, 1.4);
/// Magnitudes of the superdiagonal entries of each Jordan block.
const JORDAN_BAND: (f64, f64) = (0.5, 1.5);
const MAX_ATTEMPTS: usize = 32;

pub(crate) fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Mat {
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    let g = complex_gaussian(n, n, rng).into_dmatrix();
    Mat::from(g.qr().q())
}

/// `Q1 diag(s) Q2` with each `s_i` uniform in `band`.
fn banded(n: usize, band: (f64, f64), rng: &mut ChaCha8Rng) -> Mat {
    let s: Vec<f64> = (0..n).map(|_| rng.random_range(band.0..=band.1)).collect();
    let q1 = random_unitary(n, rng);
    let q2 = random_unitary(n, rng);
    &(&q1 * &Mat::diag(&s)) * &q2
}

fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let (p, q) = (a.rows(), b.rows());
    Mat::from_blocks(a, &Mat::zeros(p, q), &Mat::zeros(q, p), b).expect("square blocks")
}

/// Nilpotent `m x m` Jordan matrix with the given block sizes and random
/// nonzero superdiagonal entries.
fn jordan(sizes: &[usize], rng: &mut ChaCha8Rng) -> Mat {
    let m: usize = sizes.iter().sum();
    let mut d = DMatrix::<C64>::zeros(m, m);
    let mut start = 0;
    for &s in sizes {
        for i in start..start + s - 1 {
            let mag = rng.random_range(JORDAN_BAND.0..=JORDAN_BAND.1);
            let phase = rng.random_range(0.0..std::f64::consts::TAU);
            d[(i, i + 1)] = C64::from_polar(mag, phase);
        }
        start += s;
    }
    Mat::from(d)
}

/// `b` block sizes in `[1, k]` summing to `m`, the first equal to `k`.
fn partition(m: usize, b: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut sizes = vec![1; b];
    sizes[0] = k;
    let mut extra = m - k - (b - 1);
    while extra > 0 {
        let i = rng.random_range(1..b);
        if sizes[i] < k {
            sizes[i] += 1;
            extra -= 1;
        }
    }
    sizes
}

fn core_nilpotent(n: usize, sizes: &[usize], rng: &mut ChaCha8Rng) -> Result<Mat> {
    let m: usize = sizes.iter().sum();
    let c = banded(n - m, CORE_BAND, rng);
    let nil = jordan(sizes, rng);
    let s = banded(n, S_BAND, rng);
    let s_inv = inv(&s, Tol::default())?;
    Ok(&(&s * &block_diag(&c, &nil)) * &s_inv)
}

fn infeasible(msg: String) -> Error {
    Error::InfeasibleSpec(msg)
}

/// Random `n x n` matrix with `rank(A) = r` and `ind(A) = k` exactly
/// (checked after construction).
pub fn gen_with_index(n: usize, r: usize, k: usize, seed: u64) -> Result<Mat> {
    if r > n || k > n {
        return Err(infeasible(format!("rank {r}, index {k} in dimension {n}")));
    }
    let b = n - r;
    if k == 0 && b != 0 {
        return Err(infeasible(format!("index 0 requires full rank, got rank {r} of {n}")));
    }
    if k > 0 && (b == 0 || k + b - 1 > n) {
        return Err(infeasible(format!("no {n}x{n} matrix has rank {r} and index {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tol::default();
    for _ in 0..MAX_ATTEMPTS {
        let sizes = if k == 0 {
            Vec::new()
        } else {
            let m = rng.random_range(k + b - 1..=(k * b).min(n));
            partition(m, b, k, &mut rng)
        };
        let a = core_nilpotent(n, &sizes, &mut rng)?;
        if rank(&a, tol) == r && index(&a, tol)? == k {
            return Ok(a);
        }
    }
    Err(Error::NoConvergence)
}

/// Random nilpotent matrix of nilpotency index exactly `k`.
pub fn gen_nilpotent(n: usize, k: usize, seed: u64) -> Result<Mat> {
    if n == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    if k == 0 || k > n {
        return Err(infeasible(format!("nilpotency index {k} in dimension {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tol::default();
    for _ in 0..MAX_ATTEMPTS {
        let b = rng.random_range(n.div_ceil(k)..=n - k + 1);
        let sizes = partition(n, b, k, &mut rng);
        let a = core_nilpotent(n, &sizes, &mut rng)?;
        if is_nilpotent(&a, tol) && index(&a, tol)? == k {
            return Ok(a);
        }
    }
    Err(Error::NoConvergence)
}

fn check_rank(n: usize, r: usize) -> Result<()> {
    if r > n {
        Err(infeasible(format!("rank {r} in dimension {n}")))
    } else {
        Ok(())
    }
}

/// `U diag(C, 0) U*` with `U` unitary and `C` invertible.
pub fn gen_ep(n: usize, r: usize, seed: u64) -> Result<Mat> {
    check_rank(n, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary(n, &mut rng);
    let c = banded(r, CORE_BAND, &mut rng);
    let a = &(&u * &block_diag(&c, &Mat::zeros(n - r, n - r))) * &u.adjoint();
    debug_assert!(is_ep(&a, Tol::default()));
    Ok(a)
}

/// `U [[K, L], [0, 0]] U*` with `[K L]` the first `r` rows of a random
/// unitary, i.e. the decomposition with `Σ = I`.
pub fn gen_partial_isometry(n: usize, r: usize, seed: u64) -> Result<Mat> {
    check_rank(n, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary(n, &mut rng);
    let w = random_unitary(n, &mut rng);
    let top = w.block(0, 0, r, n);
    let full = Mat::vstack(&[&top, &Mat::zeros(n - r, n)])?;
    let a = &(&u * &full) * &u.adjoint();
    debug_assert!(is_partial_isometry(&a, Tol::default()));
    Ok(a)
}

fn hermitian(n: usize, eig: &[f64], rng: &mut ChaCha8Rng) -> Mat {
    let mut d = eig.to_vec();
    d.resize(n, 0.0);
    let u = random_unitary(n, rng);
    &(&u * &Mat::diag(&d)) * &u.adjoint()
}

/// Hermitian matrix of rank `r` with eigenvalues of random sign and
/// magnitude in `[0.5, 2]`.
pub fn gen_hermitian_singular(n: usize, r: usize, seed: u64) -> Result<Mat> {
    check_rank(n, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eig: Vec<f64> = (0..r)
        .map(|_| {
            let m = rng.random_range(0.5..=2.0);
            if rng.random_bool(0.5) { m } else { -m }
        })
        .collect();
    Ok(hermitian(n, &eig, &mut rng))
}

/// Hermitian matrix of rank `r` with eigenvalues `±1`, so that `A† = A`.
pub fn gen_self_pinv(n: usize, r: usize, seed: u64) -> Result<Mat> {
    check_rank(n, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eig: Vec<f64> = (0..r).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
    Ok(hermitian(n, &eig, &mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::moore_penrose;
    use crate::matcore::is_close;

    #[test]
    fn prescribed_rank_and_index() {
        let tol = Tol::default();
        for seed in 0..20 {
            let a = gen_with_index(4, 2, 2, seed).unwrap();
            assert_eq!((rank(&a, tol), index(&a, tol).unwrap()), (2, 2));
        }
        for (n, r, k) in [(8, 4, 4), (8, 7, 2), (5, 5, 0), (6, 3, 1), (3, 0, 1), (8, 6, 3)] {
            let a = gen_with_index(n, r, k, 7).unwrap();
            assert_eq!((rank(&a, tol), index(&a, tol).unwrap()), (r, k), "{n} {r} {k}");
        }
    }

    #[test]
    fn infeasible_requests() {
        for (n, r, k) in [(3, 4, 1), (3, 2, 0), (3, 3, 1), (4, 1, 3), (3, 0, 2), (2, 1, 3)] {
            assert!(matches!(gen_with_index(n, r, k, 0), Err(Error::InfeasibleSpec(_))), "{n} {r} {k}");
        }
        assert!(gen_nilpotent(3, 0, 0).is_err());
        assert!(gen_ep(2, 3, 0).is_err());
    }

    #[test]
    fn nilpotent_has_exact_index() {
        let tol = Tol::default();
        for seed in 0..10 {
            let a = gen_nilpotent(3, 3, seed).unwrap();
            assert!(a.pow(3).frobenius_norm() < 1e-12);
            assert!(a.pow(2).frobenius_norm() > 1e-3);
            assert!(is_nilpotent(&gen_nilpotent(6, 2, seed).unwrap(), tol));
        }
    }

    #[test]
    fn structured_classes() {
        let tol = Tol::default();
        for seed in 0..10 {
            assert!(is_ep(&gen_ep(3, 2, seed).unwrap(), tol));
            assert!(is_partial_isometry(&gen_partial_isometry(5, 3, seed).unwrap(), tol));
            let h = gen_hermitian_singular(5, 3, seed).unwrap();
            assert!(is_close(&h, &h.adjoint(), tol));
            assert_eq!(rank(&h, tol), 3);
            let s = gen_self_pinv(4, 2, seed).unwrap();
            assert!(is_close(&moore_penrose(&s, tol), &s, tol));
        }
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(gen_with_index(5, 3, 2, 11).unwrap(), gen_with_index(5, 3, 2, 11).unwrap());
        assert_ne!(gen_with_index(5, 3, 2, 11).unwrap(), gen_with_index(5, 3, 2, 12).unwrap());
    }
}
