use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use crate::{Error, Result};

/// Which analytic family a PSF came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsfKind {
    Gaussian,
    OutOfFocus,
    Custom,
}

/// A point-spread function: a nonnegative s-by-s kernel (s odd) normalized to
/// unit sum, with its center pixel recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct Psf {
    kernel: Vec<f64>,
    size: usize,
    center: (usize, usize),
    kind: PsfKind,
}

impl Psf {
    /// Wrap a user-supplied kernel. Entries must be nonnegative with positive
    /// sum; the kernel is normalized to unit sum.
    pub fn custom(size: usize, kernel: Vec<f64>) -> Result<Psf> {
        if size == 0 || size % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "kernel size must be odd and positive, got {size}"
            )));
        }
        if kernel.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: size * size,
                got: kernel.len(),
            });
        }
        if kernel.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "kernel entries must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = kernel.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidParameter("kernel sums to zero".into()));
        }
        let mut kernel = kernel;
        for v in kernel.iter_mut() {
            *v /= sum;
        }
        let c = (size - 1) / 2;
        Ok(Psf {
            kernel,
            size,
            center: (c, c),
            kind: PsfKind::Custom,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn center(&self) -> (usize, usize) {
        self.center
    }

    pub fn kind(&self) -> PsfKind {
        self.kind
    }

    /// Row-major kernel entries (unit sum).
    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.kernel[i * self.size + j]
    }
}

fn check_gaussian_params(sigma: f64, size: usize) -> Result<()> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gaussian sigma must be positive, got {sigma}"
        )));
    }
    if size == 0 || size % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "gaussian size must be odd and positive, got {size}"
        )));
    }
    Ok(())
}

fn gaussian_from_exponent(size: usize, coeff: f64) -> Psf {
    let c = ((size - 1) / 2) as isize;
    let mut kernel = Vec::with_capacity(size * size);
    for i in 0..size as isize {
        for j in 0..size as isize {
            let d2 = ((i - c) * (i - c) + (j - c) * (j - c)) as f64;
            kernel.push((-coeff * d2).exp());
        }
    }
    let sum: f64 = kernel.iter().sum();
    for v in kernel.iter_mut() {
        *v /= sum;
    }
    Psf {
        kernel,
        size,
        center: ((size - 1) / 2, (size - 1) / 2),
        kind: PsfKind::Gaussian,
    }
}

/// Gaussian PSF with entries proportional to exp(-d^2 / (2 sigma^2)), where
/// d is the distance to the kernel center. Larger sigma blurs more.
pub fn make_gaussian_psf(sigma: f64, size: usize) -> Result<Psf> {
    check_gaussian_params(sigma, size)?;
    Ok(gaussian_from_exponent(size, 1.0 / (2.0 * sigma * sigma)))
}

/// Gaussian PSF with entries proportional to exp(-sigma^2 d^2 / 2): sigma
/// acts as an inverse width, so larger sigma gives a *narrower* kernel.
/// Provided for comparisons against implementations using that convention;
/// [`make_gaussian_psf`] is the one to use for actual blurring.
pub fn make_gaussian_psf_inverse_width(sigma: f64, size: usize) -> Result<Psf> {
    check_gaussian_params(sigma, size)?;
    Ok(gaussian_from_exponent(size, sigma * sigma / 2.0))
}

/// Out-of-focus PSF: constant inside the disk of radius `r` around the
/// center, zero outside, normalized to unit sum. The kernel must be large
/// enough that the disk is not clipped (size >= 2r + 1).
pub fn make_out_of_focus_psf(r: f64, size: usize) -> Result<Psf> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "disk radius must be positive, got {r}"
        )));
    }
    if size == 0 || size % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "disk kernel size must be odd and positive, got {size}"
        )));
    }
    if (size as f64) < 2.0 * r + 1.0 {
        return Err(Error::InvalidParameter(format!(
            "disk of radius {r} is clipped by a {size}x{size} kernel; need size >= 2r + 1"
        )));
    }
    let c = ((size - 1) / 2) as isize;
    let mut kernel = Vec::with_capacity(size * size);
    let r2 = r * r;
    let mut count = 0usize;
    for i in 0..size as isize {
        for j in 0..size as isize {
            let d2 = ((i - c) * (i - c) + (j - c) * (j - c)) as f64;
            if d2 <= r2 {
                kernel.push(1.0);
                count += 1;
            } else {
                kernel.push(0.0);
            }
        }
    }
    let inv = 1.0 / count as f64;
    for v in kernel.iter_mut() {
        *v *= inv;
    }
    Ok(Psf {
        kernel,
        size,
        center: ((size - 1) / 2, (size - 1) / 2),
        kind: PsfKind::OutOfFocus,
    })
}
