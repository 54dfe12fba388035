//! Special functions needed by the function-space model: complex log-gamma,
//! modified Bessel functions and the confluent hypergeometric series.

mod bessel;
mod gamma;
mod hyp1f1;

pub use bessel::{bessel_i, bessel_k, bessel_k_half_integer};
pub use gamma::{abs_gamma, ln_gamma, ln_gamma_real};
pub use hyp1f1::{hyp1f1, Hyp1f1};
