//! Exact-arithmetic certificates for matrix algebra generation.
//!
//! Decides, with machine-checkable witnesses, whether a finite set of
//! square matrices generates the full matrix algebra: a Burnside-graph
//! obstruction (necessary condition), block-constructibility criteria
//! (sufficient conditions), a span-closure oracle for ground truth, and
//! the construction and verification of a one-parameter family of
//! counterexamples to the Kippenhahn conjecture.
//!
//! All computation is over the Gaussian rationals; no floating point and
//! no tolerances anywhere.

#![forbid(unsafe_code)]

pub mod criteria;
pub mod error;
pub mod graph;
pub mod kippenhahn;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod word;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::Scalar;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
