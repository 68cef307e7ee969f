use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::linalg::{jacobi_svd, Mat};
use crate::operators::Psf;
use crate::{Error, Image, Result};

/// Second singular value below this fraction of the first means the kernel
/// is treated as exactly separable.
const SEPARABILITY_TOL: f64 = 1e-10;

/// The blur operator `A` as a Kronecker product of two m-by-m factors with
/// reflexive boundary conditions. Applying it to an image X computes
/// `factor_col * X * factor_row^T`; the full n-by-n matrix is never formed.
#[derive(Debug, Clone)]
pub struct BlurOperator {
    factor_row: Mat,
    factor_col: Mat,
    m: usize,
    exact: bool,
}

/// 1D reflexive-boundary convolution matrix for a kernel with the given
/// center tap: a Toeplitz matrix plus the two Hankel corrections produced by
/// reflecting the signal at each border.
fn reflexive_factor(kernel: &[f64], center: usize, m: usize) -> Mat {
    let s = kernel.len();
    let tap = |offset: isize| -> f64 {
        let idx = center as isize + offset;
        if idx >= 0 && (idx as usize) < s {
            kernel[idx as usize]
        } else {
            0.0
        }
    };
    let mut a = Mat::zeros(m, m);
    for i in 0..m as isize {
        for j in 0..m as isize {
            let mut v = tap(i - j);
            v += tap(i + j + 1);
            v += tap(i + j + 1 - 2 * m as isize);
            a.set(i as usize, j as usize, v);
        }
    }
    a
}

/// Build the separable blur operator for a PSF on an m-by-m grid.
///
/// A kernel of numerical rank one is factored exactly into an outer product
/// of two 1D kernels; otherwise the dominant singular pair of the kernel is
/// used as the nearest rank-one (Kronecker) approximation and the operator is
/// flagged inexact. Each 1D kernel becomes a Toeplitz-plus-Hankel factor
/// realizing reflexive boundary conditions.
pub fn blur_from_psf(psf: &Psf, m: usize) -> Result<BlurOperator> {
    let s = psf.size();
    if m < s {
        return Err(Error::InvalidParameter(format!(
            "image side {m} is smaller than the PSF size {s}"
        )));
    }
    let kernel = Mat::from_vec(s, s, psf.kernel().to_vec());
    let (u, sigma, v) = jacobi_svd(&kernel);
    let exact = s == 1 || sigma[1] <= SEPARABILITY_TOL * sigma[0];

    let scale = sigma[0].sqrt();
    let mut col_kernel = vec![0.0f64; s];
    let mut row_kernel = vec![0.0f64; s];
    for i in 0..s {
        col_kernel[i] = scale * u.get(i, 0);
        row_kernel[i] = scale * v.get(i, 0);
    }

    let (ci, cj) = psf.center();
    let factor_col = reflexive_factor(&col_kernel, ci, m);
    let factor_row = reflexive_factor(&row_kernel, cj, m);
    Ok(BlurOperator {
        factor_row,
        factor_col,
        m,
        exact,
    })
}

impl BlurOperator {
    /// Assemble from explicit row/column factors (row-major, m-by-m each).
    /// Useful for constructing synthetic operators in tests and experiments.
    pub fn from_factors(
        m: usize,
        factor_row: Vec<f64>,
        factor_col: Vec<f64>,
        exact: bool,
    ) -> Result<BlurOperator> {
        if factor_row.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                got: factor_row.len(),
            });
        }
        if factor_col.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                got: factor_col.len(),
            });
        }
        Ok(BlurOperator {
            factor_row: Mat::from_vec(m, m, factor_row),
            factor_col: Mat::from_vec(m, m, factor_col),
            m,
            exact,
        })
    }

    pub fn side(&self) -> usize {
        self.m
    }

    /// True when the operator reproduces the PSF convolution exactly; false
    /// for nearest-Kronecker approximations of non-separable kernels.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Row factor entries (the matrix acting across columns), row-major.
    pub fn factor_row(&self) -> &[f64] {
        &self.factor_row.data
    }

    /// Column factor entries (the matrix acting down rows), row-major.
    pub fn factor_col(&self) -> &[f64] {
        &self.factor_col.data
    }

    pub(crate) fn factor_row_mat(&self) -> &Mat {
        &self.factor_row
    }

    pub(crate) fn factor_col_mat(&self) -> &Mat {
        &self.factor_col
    }

    fn check_side(&self, x: &Image) -> Result<()> {
        if x.side() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: x.side(),
            });
        }
        Ok(())
    }

    /// Blur an image: `factor_col * X * factor_row^T`.
    pub fn apply(&self, x: &Image) -> Result<Image> {
        self.check_side(x)?;
        let m = self.m;
        // t = factor_col * X
        let mut t = vec![0.0f64; m * m];
        mat_mul(&self.factor_col.data, x.as_slice(), &mut t, m);
        // out = t * factor_row^T
        let mut out = vec![0.0f64; m * m];
        mat_mul_bt(&t, &self.factor_row.data, &mut out, m);
        Image::from_vec(m, out)
    }

    /// Adjoint blur: `factor_col^T * X * factor_row`.
    pub fn apply_adjoint(&self, x: &Image) -> Result<Image> {
        self.check_side(x)?;
        let m = self.m;
        let mut t = vec![0.0f64; m * m];
        mat_tmul(&self.factor_col.data, x.as_slice(), &mut t, m);
        let mut out = vec![0.0f64; m * m];
        mat_mul(&t, &self.factor_row.data, &mut out, m);
        Image::from_vec(m, out)
    }
}

/// out = a * b for square row-major m-by-m buffers.
fn mat_mul(a: &[f64], b: &[f64], out: &mut [f64], m: usize) {
    for v in out.iter_mut() {
        *v = 0.0;
    }
    for i in 0..m {
        for k in 0..m {
            let aik = a[i * m + k];
            if aik == 0.0 {
                continue;
            }
            let brow = &b[k * m..(k + 1) * m];
            let orow = &mut out[i * m..(i + 1) * m];
            for (o, &bv) in orow.iter_mut().zip(brow.iter()) {
                *o += aik * bv;
            }
        }
    }
}

/// out = a * b^T.
fn mat_mul_bt(a: &[f64], b: &[f64], out: &mut [f64], m: usize) {
    for i in 0..m {
        let arow = &a[i * m..(i + 1) * m];
        for j in 0..m {
            let brow = &b[j * m..(j + 1) * m];
            out[i * m + j] = crate::linalg::dot(arow, brow);
        }
    }
}

/// out = a^T * b.
fn mat_tmul(a: &[f64], b: &[f64], out: &mut [f64], m: usize) {
    for v in out.iter_mut() {
        *v = 0.0;
    }
    for k in 0..m {
        let brow = &b[k * m..(k + 1) * m];
        for i in 0..m {
            let aki = a[k * m + i];
            if aki == 0.0 {
                continue;
            }
            let orow = &mut out[i * m..(i + 1) * m];
            for (o, &bv) in orow.iter_mut().zip(brow.iter()) {
                *o += aki * bv;
            }
        }
    }
}
