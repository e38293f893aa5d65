//! Pre-modular polynomials of the integral Lamé curve.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`algebra`]: exact rationals, sparse multivariate polynomials over a fixed
//!   alphabet, Sylvester resultants and symmetric-function reduction.
//! * [`lame`]: the spectral recursion for the Lamé curve `C^2 = l_n(B)`, the
//!   tabulated species/twisted factors for `n <= 4` and the resultant
//!   elimination producing `W_n(z)`.
//! * [`elliptic`]: q-series evaluation of Weierstrass functions, the Hecke
//!   function and numerical points on the Liouville curve.
//! * [`premodular`]: evaluation and zero location of `Z_n = W_n(Z)`, cusp
//!   expansions and the `n = 4` counting formula.
//! * [`cli`]: the command-line front end.

// `!(x <= tol)` is used on purpose so that NaN residuals fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod lame;
pub mod premodular;

pub use error::{Error, Result};
