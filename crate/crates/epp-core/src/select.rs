//! Subspace dimension selection by generalized cross-validation.
//!
//! With beta the data coefficients against the ordered left basis vectors,
//! the GCV function is G(k) = (sum of beta_i^2 for i > k) / (n - k)^2 and the
//! subspace dimension is a shrunken version of its argmin (GCV tends to pick
//! k too large, so the pipeline keeps 2/3 of it by default).

use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use crate::basis::SpectralBasis;
use crate::operators::BlurOperator;
use crate::{Error, Image, Result};

/// Fraction of the GCV argmin kept by default.
pub const DEFAULT_SHRINK: f64 = 2.0 / 3.0;

/// The GCV function evaluated at every candidate k, and its argmin over the
/// searched range.
#[derive(Debug, Clone, PartialEq)]
pub struct GcvCurve {
    /// G(1) .. G(n-1).
    pub values: Vec<f64>,
    /// Smallest k attaining the minimum over the searched range.
    pub argmin: usize,
}

/// Data coefficients beta_i against the ordered left basis vectors: ordered
/// DCT coefficients of `b` for the DCT kind, u_i^T b for the SVD kind.
pub fn spectral_coefficients(
    basis: &SpectralBasis,
    blur: &BlurOperator,
    b: &Image,
) -> Result<Vec<f64>> {
    if basis.side() != blur.side() {
        return Err(Error::DimensionMismatch {
            expected: blur.side(),
            got: basis.side(),
        });
    }
    basis.left_coefficients(b)
}

/// GCV curve with the argmin searched over `1..=min(cap, n-1)`.
///
/// The curve itself is computed for every k with one reverse cumulative sum.
/// Blur spectra decay fast, so capping the search (default n/2 in
/// [`gcv_curve`]) skips the flat noise-dominated region.
pub fn gcv_curve_capped(beta: &[f64], cap: usize) -> Result<GcvCurve> {
    let n = beta.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "GCV needs at least two coefficients, got {n}"
        )));
    }
    // tail[k] = sum of beta_i^2 for i >= k (0-based).
    let mut tail = beta.iter().map(|&b| b * b).collect::<Vec<f64>>();
    for i in (0..n - 1).rev() {
        tail[i] += tail[i + 1];
    }
    let mut values = Vec::with_capacity(n - 1);
    for k in 1..n {
        let denom = (n - k) as f64;
        values.push(tail[k] / (denom * denom));
    }
    let hi = cap.clamp(1, n - 1);
    let mut argmin = 1usize;
    let mut best = values[0];
    for k in 2..=hi {
        let v = values[k - 1];
        if v < best {
            best = v;
            argmin = k;
        }
    }
    Ok(GcvCurve { values, argmin })
}

/// GCV curve with the default search cap of n/2.
pub fn gcv_curve(beta: &[f64]) -> Result<GcvCurve> {
    let cap = (beta.len() / 2).max(1);
    gcv_curve_capped(beta, cap)
}

/// Shrink the GCV argmin: k = round(shrink * argmin), at least 1, rounded
/// half-to-even.
pub fn choose_k(curve: &GcvCurve, shrink: f64) -> Result<usize> {
    if !(shrink > 0.0 && shrink <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "shrink factor must lie in (0, 1], got {shrink}"
        )));
    }
    let n = curve.values.len() + 1;
    let scaled = shrink * curve.argmin as f64;
    // Round half to even.
    let floor = scaled.floor();
    let frac = scaled - floor;
    let rounded = if (frac - 0.5).abs() < 1e-12 {
        if (floor as i64) % 2 == 0 {
            floor
        } else {
            floor + 1.0
        }
    } else {
        scaled.round()
    };
    Ok((rounded as usize).clamp(1, n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_dominant_coefficient() {
        let curve = gcv_curve(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(curve.values[0], 0.0);
        assert_eq!(curve.argmin, 1);
    }

    #[test]
    fn trailing_energy_pushes_argmin_down() {
        // G(1) = 2/9, G(2) = 2/4, G(3) = 1.
        let curve = gcv_curve_capped(&[0.0, 0.0, 1.0, 1.0], 3).unwrap();
        assert!((curve.values[0] - 2.0 / 9.0).abs() < 1e-15);
        assert!((curve.values[1] - 0.5).abs() < 1e-15);
        assert!((curve.values[2] - 1.0).abs() < 1e-15);
        assert_eq!(curve.argmin, 1);
    }

    #[test]
    fn flat_coefficients_prefer_smallest_k() {
        // G(k) = c^2 / (4 - k), increasing in k.
        let c = 0.7;
        let curve = gcv_curve_capped(&[c, c, c, c], 3).unwrap();
        for k in 1..=3usize {
            assert!((curve.values[k - 1] - c * c / (4 - k) as f64).abs() < 1e-15);
        }
        assert_eq!(curve.argmin, 1);
    }

    #[test]
    fn matches_double_loop_evaluation() {
        // Brute-force oracle: evaluate the formula directly for every k.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for n in [2usize, 3, 10, 100] {
            let beta: Vec<f64> = (0..n).map(|_| next()).collect();
            let curve = gcv_curve_capped(&beta, n - 1).unwrap();
            for k in 1..n {
                let mut sum = 0.0;
                for (i, b) in beta.iter().enumerate() {
                    if i + 1 > k {
                        sum += b * b;
                    }
                }
                let direct = sum / ((n - k) * (n - k)) as f64;
                assert!(
                    (curve.values[k - 1] - direct).abs() <= 1e-12 * direct.max(1e-300),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn choose_k_applies_shrink() {
        let curve = GcvCurve {
            values: vec![0.0; 4095],
            argmin: 2519,
        };
        assert_eq!(choose_k(&curve, 2.0 / 3.0).unwrap(), 1679);
        assert_eq!(choose_k(&curve, 1.0).unwrap(), 2519);
    }

    #[test]
    fn choose_k_floors_at_one() {
        let curve = GcvCurve {
            values: vec![0.0; 9],
            argmin: 1,
        };
        assert_eq!(choose_k(&curve, 0.1).unwrap(), 1);
        assert_eq!(choose_k(&curve, 1.0).unwrap(), 1);
        assert!(choose_k(&curve, 0.0).is_err());
        assert!(choose_k(&curve, 1.5).is_err());
    }

    #[test]
    fn choose_k_rounds_half_to_even() {
        let curve = GcvCurve {
            values: vec![0.0; 99],
            argmin: 5,
        };
        // 0.5 * 5 = 2.5 rounds to 2.
        assert_eq!(choose_k(&curve, 0.5).unwrap(), 2);
        let curve7 = GcvCurve {
            values: vec![0.0; 99],
            argmin: 7,
        };
        // 0.5 * 7 = 3.5 rounds to 4.
        assert_eq!(choose_k(&curve7, 0.5).unwrap(), 4);
    }

    #[test]
    fn choose_k_monotone_in_shrink() {
        let curve = GcvCurve {
            values: vec![0.0; 999],
            argmin: 700,
        };
        let mut last = 0usize;
        for i in 1..=20 {
            let s = i as f64 / 20.0;
            let k = choose_k(&curve, s).unwrap();
            assert!(k >= last);
            last = k;
        }
    }

    #[test]
    fn argmin_tracks_noise_floor_crossing() {
        // Decaying signal plus flat noise floor: the argmin should land near
        // the crossing index.
        let n = 400usize;
        let eps = 1e-3;
        let beta: Vec<f64> = (0..n)
            .map(|i| (0.96f64).powi(i as i32) + eps)
            .collect();
        // Crossing index where the decaying part falls to eps.
        let crossing = ((eps as f64).ln() / (0.96f64).ln()).round() as usize;
        let curve = gcv_curve(&beta).unwrap();
        let lo = crossing - crossing / 10;
        let hi = crossing + crossing / 10;
        assert!(
            curve.argmin >= lo && curve.argmin <= hi,
            "argmin {} not within 10% of crossing {}",
            curve.argmin,
            crossing
        );
    }

    #[test]
    fn zero_coefficients_give_zero_curve() {
        let curve = gcv_curve(&[0.0, 0.0, 0.0]).unwrap();
        assert!(curve.values.iter().all(|&v| v == 0.0));
        assert_eq!(curve.argmin, 1);
        assert!(gcv_curve(&[1.0]).is_err());
    }
}
