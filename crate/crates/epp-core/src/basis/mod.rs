//! Orthonormal signal-subspace machinery.
//!
//! A [`SpectralBasis`] orders an orthonormal basis of image space by
//! decreasing spectral magnitude of the blur operator: DCT basis vectors
//! ordered by the magnitudes of the operator's DCT eigenvalues, or the
//! Kronecker-SVD right singular vectors ordered by the products of the factor
//! singular values. The leading k vectors span the signal subspace; the rest
//! span its orthogonal complement. Neither basis matrix is ever materialized:
//! synthesis and analysis go through the fast transform or the m-by-m factor
//! matrices.

mod dct;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use dct::{dct2, Dct2Plan};

use crate::linalg::{jacobi_svd, Mat};
use crate::operators::BlurOperator;
use crate::{Error, Image, Result};

/// Which basis family a [`SpectralBasis`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Dct,
    Svd,
}

#[derive(Debug, Clone)]
enum KindData {
    Dct {
        plan: Dct2Plan,
        /// Signed operator eigenvalues, by rank.
        eigenvalues: Vec<f64>,
    },
    Svd {
        u_row: Mat,
        v_row: Mat,
        u_col: Mat,
        v_col: Mat,
    },
}

/// Orthonormal basis of image space with a spectral ordering.
#[derive(Debug, Clone)]
pub struct SpectralBasis {
    m: usize,
    n: usize,
    data: KindData,
    /// rank -> flat coefficient-grid index.
    ordering: Vec<u32>,
    /// flat coefficient-grid index -> rank.
    rank_of: Vec<u32>,
    /// Spectral magnitudes by rank, non-increasing.
    spectral_values: Vec<f64>,
    exact: bool,
}

/// Coefficients of an image split at the subspace dimension k: `head` holds
/// the k leading (signal-subspace) coefficients, `tail` the remaining n - k.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSplit {
    pub k: usize,
    pub head: Vec<f64>,
    pub tail: Vec<f64>,
}

/// Which part of a [`CoeffSplit`] to synthesize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Head,
    Tail,
    Both,
}

/// Sort ranks by decreasing value with ascending (row, col) tie-breaks, the
/// first index pinned to the given flat position (if any).
fn spectral_ordering(m: usize, values: &[f64], pin_first: Option<usize>) -> Vec<u32> {
    let n = m * m;
    let mut idx: Vec<u32> = (0..n as u32).collect();
    idx.sort_by(|&a, &b| {
        values[b as usize]
            .partial_cmp(&values[a as usize])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    if let Some(first) = pin_first {
        if let Some(pos) = idx.iter().position(|&i| i as usize == first) {
            if pos != 0 {
                let v = idx.remove(pos);
                idx.insert(0, v);
            }
        }
    }
    idx
}

fn invert_ordering(ordering: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; ordering.len()];
    for (rank, &flat) in ordering.iter().enumerate() {
        inv[flat as usize] = rank as u32;
    }
    inv
}

/// Build the DCT basis for a blur operator with symmetric factors.
///
/// The operator's eigenvalues in the 2D DCT basis are recovered by
/// transforming the blurred impulse at the origin and dividing by the DC
/// column of the transform; ordering is by decreasing eigenvalue magnitude
/// with the constant (DC) vector pinned first.
pub fn build_dct_basis(blur: &BlurOperator) -> Result<SpectralBasis> {
    let m = blur.side();
    let n = m * m;
    let tol = 1e-10;
    for (name, f) in [
        ("row", blur.factor_row_mat()),
        ("column", blur.factor_col_mat()),
    ] {
        if f.asymmetry() > tol * f.max_abs().max(1e-300) {
            return Err(Error::UnsupportedOperator(format!(
                "DCT basis requires symmetric blur factors; {name} factor is not symmetric"
            )));
        }
    }

    let plan = Dct2Plan::new(m);
    // Transform A applied to an impulse at (0,0); the DCT of that impulse is
    // the outer product of the transform's first columns, which is nowhere
    // zero, so elementwise division recovers the eigenvalues.
    let mut impulse = Image::zeros(m);
    impulse.set(0, 0, 1.0);
    let blurred = blur.apply(&impulse)?;
    let numer = plan.forward(&blurred);
    let denom = plan.forward(&impulse);
    let mut eigen_grid = vec![0.0f64; n];
    let mut magnitude = vec![0.0f64; n];
    for i in 0..n {
        let e = numer.as_slice()[i] / denom.as_slice()[i];
        eigen_grid[i] = e;
        magnitude[i] = e.abs();
    }

    let ordering = spectral_ordering(m, &magnitude, Some(0));
    let rank_of = invert_ordering(&ordering);
    let mut spectral_values = Vec::with_capacity(n);
    let mut eigenvalues = Vec::with_capacity(n);
    for &flat in &ordering {
        spectral_values.push(magnitude[flat as usize]);
        eigenvalues.push(eigen_grid[flat as usize]);
    }

    Ok(SpectralBasis {
        m,
        n,
        data: KindData::Dct { plan, eigenvalues },
        ordering,
        rank_of,
        spectral_values,
        exact: blur.is_exact(),
    })
}

/// Build the Kronecker-SVD basis: singular value decompositions of the two
/// blur factors, with basis vectors ordered by decreasing products of the
/// factor singular values. For inexact (nearest-Kronecker) operators the
/// basis is the exact SVD of the approximate operator and the flag is
/// propagated so callers know reconstructions may degrade.
pub fn build_svd_basis(blur: &BlurOperator) -> Result<SpectralBasis> {
    let m = blur.side();
    let n = m * m;
    let (u_row, s_row, v_row) = jacobi_svd(blur.factor_row_mat());
    let (u_col, s_col, v_col) = jacobi_svd(blur.factor_col_mat());

    // Product of factor singular values for the pair (i of row factor,
    // j of column factor), stored at grid position (j, i).
    let mut products = vec![0.0f64; n];
    for i in 0..m {
        for j in 0..m {
            products[j * m + i] = s_row[i] * s_col[j];
        }
    }
    // Tie-break ascending (i, j) over the pair indices.
    let mut idx: Vec<u32> = (0..n as u32).collect();
    idx.sort_by(|&a, &b| {
        let (ia, ja) = ((a as usize) % m, (a as usize) / m);
        let (ib, jb) = ((b as usize) % m, (b as usize) / m);
        products[b as usize]
            .partial_cmp(&products[a as usize])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(ia.cmp(&ib))
            .then(ja.cmp(&jb))
    });
    let rank_of = invert_ordering(&idx);
    let spectral_values: Vec<f64> = idx.iter().map(|&f| products[f as usize]).collect();

    Ok(SpectralBasis {
        m,
        n,
        data: KindData::Svd {
            u_row,
            v_row,
            u_col,
            v_col,
        },
        ordering: idx,
        rank_of,
        spectral_values,
        exact: blur.is_exact(),
    })
}

impl SpectralBasis {
    pub fn kind(&self) -> BasisKind {
        match self.data {
            KindData::Dct { .. } => BasisKind::Dct,
            KindData::Svd { .. } => BasisKind::Svd,
        }
    }

    pub fn side(&self) -> usize {
        self.m
    }

    /// Dimension of image space, m^2.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// True when the underlying operator reproduces its PSF exactly.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Spectral magnitudes by rank (non-increasing).
    pub fn spectral_values(&self) -> &[f64] {
        &self.spectral_values
    }

    /// Signed operator eigenvalues by rank, available for the DCT kind.
    pub fn eigenvalues(&self) -> Option<&[f64]> {
        match &self.data {
            KindData::Dct { eigenvalues, .. } => Some(eigenvalues),
            KindData::Svd { .. } => None,
        }
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

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.n {
            return Err(Error::InvalidParameter(format!(
                "subspace dimension k must satisfy 1 <= k < {}, got {k}",
                self.n
            )));
        }
        Ok(())
    }

    /// Coefficients of an image in the ordered basis (length n, by rank).
    pub fn transform(&self, x: &Image) -> Result<Vec<f64>> {
        self.check_side(x)?;
        let grid = match &self.data {
            KindData::Dct { plan, .. } => plan.forward(x),
            KindData::Svd { v_row, v_col, .. } => factor_analysis(v_col, v_row, x),
        };
        let mut out = vec![0.0f64; self.n];
        for (rank, &flat) in self.ordering.iter().enumerate() {
            out[rank] = grid.as_slice()[flat as usize];
        }
        Ok(out)
    }

    /// Image with the given coefficients in the ordered basis.
    pub fn inverse_transform(&self, coeffs: &[f64]) -> Result<Image> {
        if coeffs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: coeffs.len(),
            });
        }
        let mut grid = Image::zeros(self.m);
        for (rank, &flat) in self.ordering.iter().enumerate() {
            grid.as_mut_slice()[flat as usize] = coeffs[rank];
        }
        let out = match &self.data {
            KindData::Dct { plan, .. } => plan.inverse(&grid),
            KindData::Svd { v_row, v_col, .. } => factor_synthesis(v_col, v_row, &grid),
        };
        Ok(out)
    }

    /// Coefficients of data against the *left* basis: the DCT coefficients
    /// themselves, or u_i^T b for the SVD kind.
    pub fn left_coefficients(&self, b: &Image) -> Result<Vec<f64>> {
        self.check_side(b)?;
        let grid = match &self.data {
            KindData::Dct { plan, .. } => plan.forward(b),
            KindData::Svd { u_row, u_col, .. } => factor_analysis(u_col, u_row, b),
        };
        let mut out = vec![0.0f64; self.n];
        for (rank, &flat) in self.ordering.iter().enumerate() {
            out[rank] = grid.as_slice()[flat as usize];
        }
        Ok(out)
    }

    /// Full transform split at k.
    pub fn analyze(&self, x: &Image, k: usize) -> Result<CoeffSplit> {
        self.check_k(k)?;
        let full = self.transform(x)?;
        let head = full[..k].to_vec();
        let tail = full[k..].to_vec();
        Ok(CoeffSplit { k, head, tail })
    }

    /// Reconstruct an image from (part of) a coefficient split.
    pub fn synthesize(&self, split: &CoeffSplit, part: Part) -> Result<Image> {
        let k = split.k;
        self.check_k(k)?;
        if split.head.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: split.head.len(),
            });
        }
        if split.tail.len() != self.n - k {
            return Err(Error::DimensionMismatch {
                expected: self.n - k,
                got: split.tail.len(),
            });
        }
        let mut full = vec![0.0f64; self.n];
        if matches!(part, Part::Head | Part::Both) {
            full[..k].copy_from_slice(&split.head);
        }
        if matches!(part, Part::Tail | Part::Both) {
            full[k..].copy_from_slice(&split.tail);
        }
        self.inverse_transform(&full)
    }
}

/// Grid of inner products against the factor basis pairs: V_col^T X V_row.
fn factor_analysis(v_col: &Mat, v_row: &Mat, x: &Image) -> Image {
    let m = x.side();
    let xm = Mat::from_vec(m, m, x.as_slice().to_vec());
    let t = v_col.transpose().matmul(&xm);
    let g = t.matmul(v_row);
    Image::from_vec(m, g.data).unwrap()
}

/// Inverse of [`factor_analysis`]: V_col G V_row^T.
fn factor_synthesis(v_col: &Mat, v_row: &Mat, grid: &Image) -> Image {
    let m = grid.side();
    let gm = Mat::from_vec(m, m, grid.as_slice().to_vec());
    let t = v_col.matmul(&gm);
    let out = t.matmul(&v_row.transpose());
    Image::from_vec(m, out.data).unwrap()
}
