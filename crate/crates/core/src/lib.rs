pub mod analysis;
pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod format;
pub mod kernels;
pub mod oracle;
pub mod polys;
pub mod recursion;

pub use error::{Error, Result};
