use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Image, Result};

/// The discrete gradient `L`: first differences across columns stacked over
/// first differences down rows, in column-major vec order. Its null space is
/// exactly the constant images. Stores nothing but the side length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradientOperator {
    m: usize,
}

impl GradientOperator {
    pub fn new(m: usize) -> Self {
        GradientOperator { m }
    }

    pub fn side(&self) -> usize {
        self.m
    }

    /// Length of the gradient vector: 2m(m-1).
    pub fn output_len(&self) -> usize {
        2 * self.m * (self.m - 1)
    }

    /// Forward gradient. The first m(m-1) entries are the horizontal
    /// differences X[r][c+1] - X[r][c] (column-major over the (r, c) grid of
    /// difference positions), followed by the vertical differences
    /// X[r+1][c] - X[r][c] in the same layout.
    pub fn apply(&self, x: &Image) -> Result<Vec<f64>> {
        if x.side() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: x.side(),
            });
        }
        let m = self.m;
        let block = m * (m - 1);
        let mut g = vec![0.0f64; 2 * block];
        for c in 0..m - 1 {
            for r in 0..m {
                g[c * m + r] = x.get(r, c + 1) - x.get(r, c);
            }
        }
        for c in 0..m {
            for r in 0..m - 1 {
                g[block + c * (m - 1) + r] = x.get(r + 1, c) - x.get(r, c);
            }
        }
        Ok(g)
    }

    /// Exact transpose of [`apply`](Self::apply).
    pub fn apply_adjoint(&self, g: &[f64]) -> Result<Image> {
        let m = self.m;
        let block = m * (m - 1);
        if g.len() != 2 * block {
            return Err(Error::DimensionMismatch {
                expected: 2 * block,
                got: g.len(),
            });
        }
        let mut out = Image::zeros(m);
        for c in 0..m - 1 {
            for r in 0..m {
                let v = g[c * m + r];
                // Difference X[r][c+1] - X[r][c] scatters +v and -v.
                out.set(r, c + 1, out.get(r, c + 1) + v);
                out.set(r, c, out.get(r, c) - v);
            }
        }
        for c in 0..m {
            for r in 0..m - 1 {
                let v = g[block + c * (m - 1) + r];
                out.set(r + 1, c, out.get(r + 1, c) + v);
                out.set(r, c, out.get(r, c) - v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rand_image(m: usize, seed: u64) -> Image {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        Image::from_fn(m, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn constant_image_maps_to_zero() {
        let l = GradientOperator::new(5);
        let g = l.apply(&Image::constant(5, 3.25)).unwrap();
        assert!(g.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn nonconstant_image_has_nonzero_gradient() {
        let l = GradientOperator::new(5);
        for seed in 0..4 {
            let x = rand_image(5, seed);
            let g = l.apply(&x).unwrap();
            assert!(g.iter().any(|&v| v != 0.0));
        }
    }

    #[test]
    fn two_by_two_column_step() {
        // X = [[0,1],[0,1]]: both nonzeros sit in the horizontal-difference
        // block, each equal to 1; hand-checked against the Kronecker
        // definition with column-major vec.
        let x = Image::from_vec(2, vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        let l = GradientOperator::new(2);
        let g = l.apply(&x).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(&g[..2], &[1.0, 1.0]);
        assert_eq!(&g[2..], &[0.0, 0.0]);
    }

    #[test]
    fn adjoint_consistency() {
        let m = 7;
        let l = GradientOperator::new(m);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(42);
        for seed in 0..4 {
            let x = rand_image(m, 300 + seed);
            let g: Vec<f64> = (0..l.output_len())
                .map(|_| rng.random_range(-1.0..1.0))
                .collect();
            let lhs = crate::linalg::dot(&l.apply(&x).unwrap(), &g);
            let rhs = x.dot(&l.apply_adjoint(&g).unwrap());
            assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let l = GradientOperator::new(4);
        assert!(l.apply_adjoint(&vec![0.0; 23]).is_err());
        assert!(l.apply(&Image::zeros(5)).is_err());
    }

    #[test]
    fn gradient_is_linear() {
        let l = GradientOperator::new(6);
        let x = rand_image(6, 11);
        let y = rand_image(6, 12);
        let (a, b) = (2.0, -0.5);
        let mut combo = x.clone();
        combo.scale(a);
        combo.axpy(b, &y);
        let lhs = l.apply(&combo).unwrap();
        let gx = l.apply(&x).unwrap();
        let gy = l.apply(&y).unwrap();
        for i in 0..lhs.len() {
            assert!((lhs[i] - (a * gx[i] + b * gy[i])).abs() < 1e-12);
        }
    }
}
