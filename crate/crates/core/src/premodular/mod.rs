//! The pre-modular form `Z_n(sigma; tau) = W_n(Z)`: evaluation, zeros in
//! `tau`, expansions at the cusp and the counting formulas for `n = 4`.

mod counting;
mod cusp;
mod evaluator;
mod reconstruct;
mod zeros;

pub use counting::{arith_functions, counting, euler_phi, psi, ArithValues, CountReport};
pub use cusp::{cusp_expansion, cusp_leading_n4, nu_infinity_numeric, CuspClass, CuspExpansion};
pub use evaluator::{green_residual, wn_polynomial, PremodularEvaluator, ZnValue};
pub use reconstruct::reconstruct_point;
pub use zeros::{find_zeros, TauRegion, UnresolvedRegion, ZeroRecord, ZeroSearch};
