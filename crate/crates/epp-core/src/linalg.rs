//! Small dense linear algebra used internally: row-major matrices, one-sided
//! Jacobi SVD for the blur factors, and a pivoted LU for the coarsest
//! multigrid level. Kept dependency-free so the crate builds without std.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Largest absolute deviation from symmetry; 0 for square symmetric.
    pub fn asymmetry(&self) -> f64 {
        debug_assert_eq!(self.rows, self.cols);
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                worst = worst.max((self.get(r, c) - self.get(c, r)).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        norm_inf(&self.data)
    }

    /// y = self * x.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(y.len(), self.rows);
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            y[r] = dot(row, x);
        }
    }

    /// y = self^T * x.
    pub fn matvec_t(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.rows);
        debug_assert_eq!(y.len(), self.cols);
        for v in y.iter_mut() {
            *v = 0.0;
        }
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let xr = x[r];
            for (yc, a) in y.iter_mut().zip(row.iter()) {
                *yc += xr * a;
            }
        }
    }

    /// self * other, accumulated row by row for cache friendliness.
    pub fn matmul(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &o) in dst.iter_mut().zip(orow.iter()) {
                    *d += aik * o;
                }
            }
        }
        out
    }
}

/// Thin SVD of a square matrix by one-sided (Hestenes) Jacobi rotations.
///
/// Returns (u, sigma, v) with `a = u * diag(sigma) * v^T`, singular values
/// sorted non-increasingly and each `v` column's largest-magnitude entry made
/// positive for reproducible signs.
pub(crate) fn jacobi_svd(a: &Mat) -> (Mat, Vec<f64>, Mat) {
    debug_assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut work = a.clone();
    let mut v = Mat::identity(n);

    let tol = 1e-15;
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                // Gram entries of columns p and q.
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for r in 0..n {
                    let xp = work.get(r, p);
                    let xq = work.get(r, q);
                    app += xp * xp;
                    aqq += xq * xq;
                    apq += xp * xq;
                }
                let scale = (app * aqq).sqrt();
                if scale == 0.0 || apq.abs() <= tol * scale {
                    continue;
                }
                off = off.max(apq.abs() / scale);
                let zeta = (aqq - app) / (2.0 * apq);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for r in 0..n {
                    let xp = work.get(r, p);
                    let xq = work.get(r, q);
                    work.set(r, p, cs * xp - sn * xq);
                    work.set(r, q, sn * xp + cs * xq);
                }
                for r in 0..n {
                    let vp = v.get(r, p);
                    let vq = v.get(r, q);
                    v.set(r, p, cs * vp - sn * vq);
                    v.set(r, q, sn * vp + cs * vq);
                }
            }
        }
        if off <= tol {
            break;
        }
    }

    // Column norms are the singular values; normalized columns form U.
    let mut order: Vec<usize> = (0..n).collect();
    let mut sigma = vec![0.0f64; n];
    for j in 0..n {
        let mut s = 0.0;
        for r in 0..n {
            let x = work.get(r, j);
            s += x * x;
        }
        sigma[j] = s.sqrt();
    }
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap().then(i.cmp(&j)));

    let mut u = Mat::zeros(n, n);
    let mut vs = Mat::zeros(n, n);
    let mut svals = vec![0.0f64; n];
    for (dst, &src) in order.iter().enumerate() {
        svals[dst] = sigma[src];
        // Fix signs by the dominant entry of the V column.
        let mut best = 0usize;
        let mut best_abs = 0.0;
        for r in 0..n {
            let x = v.get(r, src).abs();
            if x > best_abs {
                best_abs = x;
                best = r;
            }
        }
        let flip = if v.get(best, src) < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vs.set(r, dst, flip * v.get(r, src));
            let uval = if sigma[src] > 0.0 {
                flip * work.get(r, src) / sigma[src]
            } else {
                0.0
            };
            u.set(r, dst, uval);
        }
    }
    (u, svals, vs)
}

/// LU factorization with partial pivoting, for the small dense coarsest-level
/// solve. Stores the factors in place plus the pivot permutation.
#[derive(Debug, Clone)]
pub(crate) struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    piv: Vec<usize>,
}

impl LuFactors {
    pub fn factor(a: &Mat) -> LuFactors {
        debug_assert_eq!(a.rows, a.cols);
        let n = a.rows;
        let mut lu = a.data.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut pr = k;
            let mut pv = lu[k * n + k].abs();
            for r in (k + 1)..n {
                let v = lu[r * n + k].abs();
                if v > pv {
                    pv = v;
                    pr = r;
                }
            }
            if pr != k {
                piv.swap(k, pr);
                for c in 0..n {
                    lu.swap(k * n + c, pr * n + c);
                }
            }
            let pivot = lu[k * n + k];
            if pivot == 0.0 {
                continue;
            }
            for r in (k + 1)..n {
                let f = lu[r * n + k] / pivot;
                lu[r * n + k] = f;
                for c in (k + 1)..n {
                    lu[r * n + c] -= f * lu[k * n + c];
                }
            }
        }
        LuFactors { n, lu, piv }
    }

    pub fn solve(&self, b: &[f64], x: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            x[i] = b[self.piv[i]];
        }
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu[i * n + j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= self.lu[i * n + j] * x[j];
            }
            let d = self.lu[i * n + i];
            if d != 0.0 {
                x[i] /= d;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_from_rows(rows: &[&[f64]]) -> Mat {
        let r = rows.len();
        let c = rows[0].len();
        let mut data = Vec::new();
        for row in rows {
            data.extend_from_slice(row);
        }
        Mat::from_vec(r, c, data)
    }

    #[test]
    fn jacobi_svd_reconstructs() {
        let a = mat_from_rows(&[
            &[4.0, 1.0, -2.0],
            &[0.5, 3.0, 0.0],
            &[-1.0, 0.2, 2.5],
        ]);
        let (u, s, v) = jacobi_svd(&a);
        // a == u * diag(s) * v^T
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += u.get(i, k) * s[k] * v.get(j, k);
                }
                assert!((acc - a.get(i, j)).abs() < 1e-12);
            }
        }
        // V orthonormal.
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += v.get(k, i) * v.get(k, j);
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((acc - want).abs() < 1e-12);
            }
        }
        assert!(s[0] >= s[1] && s[1] >= s[2]);
    }

    #[test]
    fn lu_solves_small_system() {
        let a = mat_from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let lu = LuFactors::factor(&a);
        let mut x = [0.0; 2];
        lu.solve(&[5.0, 10.0], &mut x);
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn matvec_against_matmul() {
        let a = mat_from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = mat_from_rows(&[&[0.5], &[-1.0]]);
        let ab = a.matmul(&b);
        let mut y = [0.0; 2];
        a.matvec(&[0.5, -1.0], &mut y);
        assert_eq!(ab.data, y.to_vec());
        let mut yt = [0.0; 2];
        a.matvec_t(&[1.0, 1.0], &mut yt);
        assert_eq!(yt, [4.0, 6.0]);
    }
}
