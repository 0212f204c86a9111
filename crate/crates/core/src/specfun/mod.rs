//! Special-function kernels used throughout the crate.

pub mod gamma;
pub mod harmonics;
pub mod hypergeometric;
pub mod orthopoly;
pub mod wigner;

pub use gamma::{digamma, gamma, ln_binomial, ln_factorial, ln_gamma, ln_pochhammer, upper_incomplete_gamma, EULER_GAMMA};
pub use harmonics::sph_harm_sq;
pub use hypergeometric::{hyp1f1, hyp2f2, SeriesValue};
pub use orthopoly::{poly_eval, poly_roots, PolyFamily, PolyKind};
pub use wigner::{wigner3j, wigner3j_int};
