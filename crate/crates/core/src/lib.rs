pub mod error;
pub mod lattice;
pub mod nodes;
pub mod chebinterp;
pub mod fourier_lebesgue;
pub mod kernel_identities;
pub mod convergence;
pub mod cli;

pub use error::{Error, Result};
