//! Exact coefficients: polynomials and rational functions in `l_q`, and the
//! assignment `l`.

mod ell;
mod poly;
mod scalar;

pub use ell::{factorize, len, EllSpec};
pub use poly::{Monomial, Polynomial};
pub use scalar::Scalar;
