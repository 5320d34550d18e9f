pub mod bounds;
pub mod confmap;
pub mod constants;
pub mod eigensolver;
pub mod error;
pub mod optimize;
pub mod quasidisc;
pub mod scalar;
pub mod specialfn;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` instantiations of the generic types.
pub mod f64 {
    pub type Alpha = crate::constants::Alpha<f64>;
    pub type Infimum = crate::constants::Infimum<f64>;
    pub type DiscConstants = crate::constants::DiscConstants<f64>;
    pub type PolynomialMap = crate::confmap::PolynomialMap<f64>;
    pub type BoundInputs = crate::bounds::BoundInputs<f64>;
    pub type BoundReport = crate::bounds::BoundReport<f64>;
    pub type Domain = crate::eigensolver::Domain<f64>;
    pub type EigenResult = crate::eigensolver::EigenResult<f64>;
    pub type LogScaled = crate::quasidisc::LogScaled<f64>;
    pub type QuasidiscReport = crate::quasidisc::QuasidiscReport<f64>;
}
