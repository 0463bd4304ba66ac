pub mod bits;
pub mod error;
pub mod estimator;
pub mod field;
pub mod hypercube;
pub mod kat;
pub mod keys;
pub mod mpc;
pub mod params;
pub mod rank;
pub mod scheme;
pub mod shamir;
pub mod symmetric;
pub mod threshold;

pub use error::{Error, Result};
