//! Zeros of Gaussian analytic functions, polygafs and determinantal point processes.

pub mod dpp;
pub mod error;
pub mod experiment;
pub mod gaf;
pub mod generator;
pub mod linalg;
pub mod points;
pub mod polygaf;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use num_complex::Complex64;
