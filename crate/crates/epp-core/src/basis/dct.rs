//! Orthonormal 2D discrete cosine transform.
//!
//! The 1D matrix has entries sqrt(1/m) in the first row and
//! sqrt(2/m) cos((2j+1) i pi / (2m)) below; the 2D transform is its Kronecker
//! square. Power-of-two sizes use the recursive split into two half-size
//! transforms (O(m log m) per row); other sizes fall back to a precomputed
//! dense matrix.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;
use num_traits::Float;

use crate::linalg::Mat;
use crate::Image;

#[derive(Debug, Clone)]
enum Strategy {
    /// Per-level butterfly weights 1 / (2 cos((2n+1) pi / (2N))) for
    /// N = m, m/2, ..., 2.
    Lee { weights: Vec<Vec<f64>> },
    Dense { c: Mat },
}

/// Reusable plan for the orthonormal 2D DCT of a fixed side length.
#[derive(Debug, Clone)]
pub struct Dct2Plan {
    m: usize,
    strategy: Strategy,
}

fn ortho_scales(m: usize) -> (f64, f64) {
    ((1.0 / m as f64).sqrt(), (2.0 / m as f64).sqrt())
}

fn dense_dct_matrix(m: usize) -> Mat {
    let (s0, s) = ortho_scales(m);
    let mut c = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let v = if i == 0 {
                s0
            } else {
                s * ((2 * j + 1) as f64 * i as f64 * PI / (2.0 * m as f64)).cos()
            };
            c.set(i, j, v);
        }
    }
    c
}

fn forward_rec(x: &mut [f64], tmp: &mut [f64], weights: &[Vec<f64>], level: usize) {
    let n = x.len();
    if n == 1 {
        return;
    }
    let half = n / 2;
    let w = &weights[level];
    for i in 0..half {
        let a = x[i];
        let b = x[n - 1 - i];
        tmp[i] = a + b;
        tmp[half + i] = (a - b) * w[i];
    }
    x.copy_from_slice(&tmp[..n]);
    {
        let (g, h) = x.split_at_mut(half);
        forward_rec(g, tmp, weights, level + 1);
        forward_rec(h, tmp, weights, level + 1);
    }
    for k in 0..half {
        tmp[2 * k] = x[k];
    }
    for k in 0..half - 1 {
        tmp[2 * k + 1] = x[half + k] + x[half + k + 1];
    }
    tmp[n - 1] = x[n - 1];
    x.copy_from_slice(&tmp[..n]);
}

fn inverse_rec(x: &mut [f64], tmp: &mut [f64], weights: &[Vec<f64>], level: usize) {
    let n = x.len();
    if n == 1 {
        return;
    }
    let half = n / 2;
    for k in 0..half {
        tmp[k] = x[2 * k];
    }
    tmp[half] = x[1];
    for k in 1..half {
        tmp[half + k] = x[2 * k + 1] + x[2 * k - 1];
    }
    x.copy_from_slice(&tmp[..n]);
    {
        let (g, h) = x.split_at_mut(half);
        inverse_rec(g, tmp, weights, level + 1);
        inverse_rec(h, tmp, weights, level + 1);
    }
    let w = &weights[level];
    for i in 0..half {
        let g = x[i];
        let h = x[half + i] * w[i];
        tmp[i] = g + h;
        tmp[n - 1 - i] = g - h;
    }
    x.copy_from_slice(&tmp[..n]);
}

impl Dct2Plan {
    pub fn new(m: usize) -> Self {
        let strategy = if m >= 2 && m.is_power_of_two() {
            let mut weights = Vec::new();
            let mut n = m;
            while n >= 2 {
                let half = n / 2;
                let mut w = Vec::with_capacity(half);
                for i in 0..half {
                    let angle = (2 * i + 1) as f64 * PI / (2.0 * n as f64);
                    w.push(0.5 / angle.cos());
                }
                weights.push(w);
                n = half;
            }
            Strategy::Lee { weights }
        } else {
            Strategy::Dense {
                c: dense_dct_matrix(m),
            }
        };
        Dct2Plan { m, strategy }
    }

    pub fn side(&self) -> usize {
        self.m
    }

    /// In-place orthonormal 1D DCT-II.
    fn dct_1d(&self, x: &mut [f64], tmp: &mut [f64]) {
        let m = self.m;
        let (s0, s) = ortho_scales(m);
        match &self.strategy {
            Strategy::Lee { weights } => {
                forward_rec(x, tmp, weights, 0);
                x[0] *= s0;
                for v in x[1..].iter_mut() {
                    *v *= s;
                }
            }
            Strategy::Dense { c } => {
                c.matvec(&x.to_vec(), x);
            }
        }
    }

    /// In-place orthonormal 1D inverse (the transpose of [`dct_1d`]).
    fn idct_1d(&self, x: &mut [f64], tmp: &mut [f64]) {
        let m = self.m;
        let (s0, s) = ortho_scales(m);
        match &self.strategy {
            Strategy::Lee { weights } => {
                x[0] *= s0;
                for v in x[1..].iter_mut() {
                    *v *= s;
                }
                inverse_rec(x, tmp, weights, 0);
            }
            Strategy::Dense { c } => {
                c.matvec_t(&x.to_vec(), x);
            }
        }
    }

    fn transform_2d(&self, x: &Image, inverse: bool) -> Image {
        debug_assert_eq!(x.side(), self.m);
        let m = self.m;
        let mut out = x.clone();
        let mut tmp = vec![0.0f64; m];
        let mut col = vec![0.0f64; m];
        for r in 0..m {
            let row = &mut out.as_mut_slice()[r * m..(r + 1) * m];
            if inverse {
                self.idct_1d(row, &mut tmp);
            } else {
                self.dct_1d(row, &mut tmp);
            }
        }
        for c in 0..m {
            for r in 0..m {
                col[r] = out.get(r, c);
            }
            if inverse {
                self.idct_1d(&mut col, &mut tmp);
            } else {
                self.dct_1d(&mut col, &mut tmp);
            }
            for r in 0..m {
                out.set(r, c, col[r]);
            }
        }
        out
    }

    /// 2D forward transform: coefficient grid indexed by (row, col) frequency.
    pub fn forward(&self, x: &Image) -> Image {
        self.transform_2d(x, false)
    }

    /// 2D inverse transform (exact transpose of [`forward`]).
    pub fn inverse(&self, y: &Image) -> Image {
        self.transform_2d(y, true)
    }
}

/// One-shot orthonormal 2D DCT of an image (or its inverse). Build a
/// [`Dct2Plan`] instead when transforming repeatedly at the same size.
pub fn dct2(x: &Image, inverse: bool) -> Image {
    let plan = Dct2Plan::new(x.side());
    if inverse {
        plan.inverse(x)
    } else {
        plan.forward(x)
    }
}
