//! Exact matrices: sparse storage, elimination, certified truncation blocks.

pub mod cert;
pub mod dense;
pub mod linalg;

pub use cert::{CertMatrix, Leg};
pub use dense::Matrix;
