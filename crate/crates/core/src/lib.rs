//! Continuous q-Jacobi polynomials and the machinery around them: q-shifted
//! factorials, basic hypergeometric series, Askey–Wilson and q-Racah
//! polynomials, special values, Poisson kernels, generating functions, and a
//! randomized identity verification harness.

pub mod awpolys;
pub mod dd;
pub mod exact;
mod mp;
pub mod ctsqjacobi;
pub mod error;
pub mod harness;
pub mod kernels;
pub mod qcore;
pub mod quadrature;
pub mod series;
pub mod specials;

pub use error::{Error, Result};
pub use qcore::{Complex, ParamList, QContext};
