//! local strong-to-weak symmetry breaking diagnostics for exact, Gaussian and decohered states

pub mod container;
pub mod densemix;
pub mod error;
pub mod gaussfermi;
pub mod isingdecohere;
pub mod linalg;
pub mod predictions;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{CMat, Real};
pub use series::{ScalingSeries, SeriesMeta};

pub type DensityMatrix = densemix::DensityMatrix<f64>;
pub type LocalOperator = densemix::LocalOperator<f64>;
pub type CorrelationMatrix = gaussfermi::CorrelationMatrix<f64>;
pub type QuadraticHamiltonian = gaussfermi::QuadraticHamiltonian<f64>;
