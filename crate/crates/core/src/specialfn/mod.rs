//! Gamma and Bessel functions.

mod bessel;
mod gamma;

pub use bessel::{bessel_j, bessel_zero, BesselZeroTable};
pub use gamma::{gamma, ln_gamma};

pub(crate) use bessel::{jn, zeros_below};
pub(crate) use gamma::ln_gamma_positive;
