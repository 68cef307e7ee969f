//! Matrix-free forward operators: point-spread functions, the separable blur
//! operator with reflexive boundary conditions, and the discrete gradient.

mod blur;
mod gradient;
mod psf;

pub use blur::{blur_from_psf, BlurOperator};
pub use gradient::GradientOperator;
pub use psf::{make_gaussian_psf, make_gaussian_psf_inverse_width, make_out_of_focus_psf, Psf, PsfKind};
