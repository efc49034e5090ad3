//! Exact rational arithmetic for small real matrices: row reduction, rank,
//! index, and the Moore–Penrose and Drazin inverses. Used as an oracle for
//! the floating-point routines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::matcore::{Mat, C64};

type Q = BigRational;

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend(r.as_ref().iter().map(|&v| Q::from_integer(BigInt::from(v))));
        }
        QMat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> QMat {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(l, j);
                    *out.at(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> QMat {
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    fn select_cols(&self, idx: &[usize]) -> QMat {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                *out.at(i, c) = self.get(i, j).clone();
            }
        }
        out
    }

    fn top_rows(&self, r: usize) -> QMat {
        QMat {
            rows: r,
            cols: self.cols,
            data: self.data[..r * self.cols].to_vec(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(row * m.cols + j, p * m.cols + j);
            }
            let lead = m.get(row, col).clone();
            for j in 0..m.cols {
                let v = m.get(row, j) / &lead;
                *m.at(row, j) = v;
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).clone();
                for j in 0..m.cols {
                    let v = m.get(row, j) * &f;
                    *m.at(i, j) -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at(i, j) = self.get(i, j).clone();
            }
            *aug.at(i, n + i) = Q::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at(i, j) = r.get(i, n + j).clone();
            }
        }
        Some(inv)
    }

    /// Smallest `k` with `rank(A^k) = rank(A^{k+1})`.
    pub fn index(&self) -> usize {
        let mut prev = self.rows;
        let mut p = Self::identity(self.rows);
        for k in 0..self.rows {
            p = p.mul(self);
            let next = p.rank();
            if next == prev {
                return k;
            }
            prev = next;
        }
        self.rows
    }

    /// Moore–Penrose inverse through the full-rank factorization `A = FG`:
    /// `A† = Gᵀ(GGᵀ)⁻¹(FᵀF)⁻¹Fᵀ`.
    pub fn pinv(&self) -> QMat {
        let (r, pivots) = self.rref();
        if pivots.is_empty() {
            return Self::zeros(self.cols, self.rows);
        }
        let f = self.select_cols(&pivots);
        let g = r.top_rows(pivots.len());
        let (ft, gt) = (f.transpose(), g.transpose());
        let ggt_inv = g.mul(&gt).inverse().expect("full row rank");
        let ftf_inv = ft.mul(&f).inverse().expect("full column rank");
        gt.mul(&ggt_inv).mul(&ftf_inv).mul(&ft)
    }

    /// Drazin inverse `A^k (A^{2k+1})† A^k`.
    pub fn drazin(&self) -> QMat {
        let k = self.index();
        let ak = self.pow(k);
        ak.mul(&self.pow(2 * k + 1).pinv()).mul(&ak)
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            C64::new(self.get(i, j).to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }

    pub fn max_abs_diff(&self, m: &Mat) -> f64 {
        assert_eq!((self.rows, self.cols), m.shape());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = self.get(i, j).to_f64().unwrap_or(f64::NAN);
                worst = worst.max((m.get(i, j) - C64::new(q, 0.0)).norm());
            }
        }
        worst
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}
