//! Edge-preserving projection (EPP) image deblurring.
//!
//! The method splits a restoration into a smooth subspace component and a
//! high-frequency correction. The smooth part is the least-squares solution of
//! the blur model projected onto a low-frequency signal subspace; the
//! correction minimizes the p-norm (1 < p < 2) of the image gradient over the
//! orthogonal complement, which restores edges that plain subspace projection
//! smooths away.
//!
//! Everything is matrix-free: the blur operator is a Kronecker product of two
//! small factors with reflexive boundary conditions, the subspace bases are
//! either the 2D DCT or the Kronecker SVD of the blur factors, and the inner
//! p-norm solver is IRLS with restarted GMRES, right-preconditioned by a
//! geometric multigrid V-cycle on the reweighted diffusion operator.
//!
//! Typical use:
//!
//! ```
//! use epp_core::operators::{make_gaussian_psf, blur_from_psf};
//! use epp_core::basis::build_dct_basis;
//! use epp_core::pipeline::{epp_solve, EppOptions};
//!
//! let psf = make_gaussian_psf(1.0, 5).unwrap();
//! let blur = blur_from_psf(&psf, 32).unwrap();
//! let basis = build_dct_basis(&blur).unwrap();
//! let b = blur.apply(&epp_core::Image::constant(32, 0.5)).unwrap();
//! let opts = EppOptions::new(1.2).unwrap();
//! let result = epp_solve(&blur, &basis, &b, &opts).unwrap();
//! assert_eq!(result.x.side(), 32);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod basis;
mod error;
mod image;
pub(crate) mod linalg;
pub mod metrics;
pub mod multigrid;
pub mod operators;
pub mod pipeline;
pub mod pnorm;
pub mod select;

pub use error::{Error, Result};
pub use image::Image;
