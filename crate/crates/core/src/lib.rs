//! High-precision toolkit for k-th order squeeze generators
//! `A^(k) = -i(e^{iθ} a₊^k - e^{-iθ} a₋^k)`.
//!
//! The generator splits into `k` zero-diagonal Jacobi blocks `A^(k,i)` acting on
//! the Fock vectors `e_{i+pk}`. The modules here build those blocks, decide
//! their deficiency indices, classify the basis vectors as analytic or
//! quasianalytic, exponentiate truncations, and check the Segal–Bargmann-type
//! model for the two squeeze blocks.

pub mod arith;
pub mod cinfty;
pub mod deficiency;
pub mod error;
pub mod expgroup;
pub mod fock;
pub mod linalg;
pub mod orthopoly;
pub mod quadrature;
pub mod sbmodel;
pub mod special;

pub use arith::{Cplx, PrecisionConfig, Real, Scalar};
pub use error::{Error, Result};
