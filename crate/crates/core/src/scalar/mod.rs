//! Exact coefficient arithmetic.

pub mod epsilon;
pub mod radical;
pub mod ratfunc;
pub mod rational;
pub mod ring;
pub mod zpoly;

pub use epsilon::EpsilonScalar;
pub use radical::Scalar;
pub use ratfunc::RatFunc;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use ring::{Field, Ring};
pub use zpoly::ZPoly;
