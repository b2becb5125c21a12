//! Discrete spectral models of Dirichlet L-functions on cycle graphs.

pub mod acceptance;
pub mod analytic;
pub mod asymptotics;
pub mod characters;
pub mod discrete_spectra;
pub mod error;
pub mod exact_series;
pub mod grh_probe;
pub mod heat;
pub mod oracle;
pub mod summation;
pub mod table;

pub use error::{CharacterRequirement, Error, Result};
