//! Exact computer algebra for the Jordanian quantum algebra `U_z sl(2,R)` and
//! its extended, Poincaré and oscillator relatives.

pub mod algebra;
pub mod boson;
pub mod contract;
pub mod decompose;
pub mod error;
pub mod hopf;
pub mod matrix;
pub mod realization;
pub mod rep;
pub mod word;
pub mod scalar;

pub use error::{Error, Result};
