use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A square grayscale image with `f64` intensities, stored row-major.
///
/// This is the unvectorized form of the solution and data vectors: an m-by-m
/// grid rather than a length m^2 column. All operators in this crate act on
/// `Image` directly so that the full blur matrix is never formed.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    side: usize,
    data: Vec<f64>,
}

impl Image {
    /// All-zero image of side length `m` (m >= 2).
    pub fn zeros(m: usize) -> Self {
        Image {
            side: m,
            data: vec![0.0; m * m],
        }
    }

    /// Constant image filled with `value`.
    pub fn constant(m: usize, value: f64) -> Self {
        Image {
            side: m,
            data: vec![value; m * m],
        }
    }

    /// Build from a pixel function of (row, col).
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(m * m);
        for r in 0..m {
            for c in 0..m {
                data.push(f(r, c));
            }
        }
        Image { side: m, data }
    }

    /// Wrap an existing row-major buffer; `data.len()` must equal `m * m`.
    pub fn from_vec(m: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                got: data.len(),
            });
        }
        Ok(Image { side: m, data })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.side + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.side + c] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Euclidean norm of the vectorized image.
    pub fn norm2(&self) -> f64 {
        crate::linalg::norm2(&self.data)
    }

    /// Inner product with another image of the same side length.
    pub fn dot(&self, other: &Image) -> f64 {
        crate::linalg::dot(&self.data, &other.data)
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// Elementwise `self + alpha * other`.
    pub fn axpy(&mut self, alpha: f64, other: &Image) {
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += alpha * b;
        }
    }

    /// Pixelwise sum.
    pub fn add(&self, other: &Image) -> Image {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    /// Pixelwise difference `self - other`.
    pub fn sub(&self, other: &Image) -> Image {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    pub fn scale(&mut self, alpha: f64) {
        for a in self.data.iter_mut() {
            *a *= alpha;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_checks_length() {
        assert!(Image::from_vec(3, vec![0.0; 9]).is_ok());
        assert!(Image::from_vec(3, vec![0.0; 8]).is_err());
    }

    #[test]
    fn arithmetic_helpers() {
        let a = Image::from_fn(2, |r, c| (r * 2 + c) as f64);
        let b = Image::constant(2, 1.0);
        let s = a.add(&b);
        assert_eq!(s.get(1, 1), 4.0);
        let d = s.sub(&b);
        assert_eq!(d.as_slice(), a.as_slice());
        assert_eq!(b.norm2(), 2.0);
        assert_eq!(a.mean(), 1.5);
    }
}
