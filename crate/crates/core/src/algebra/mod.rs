//! Exact algebra over `Q`: rationals, sparse polynomials in a fixed alphabet,
//! resultants and reduction of symmetric expressions in the half-period values.

mod poly;
mod resultant;
mod serial;
mod symmetric;

pub use poly::{
    rat, ratio, Grading, Monomial, MultiPoly, NumericPoly, Rational, UniPolyView, Var, WeightReport,
    NVARS,
};
pub use resultant::{bareiss_det, resultant, sylvester};
pub use serial::{parse_rational, PolyJson, TermJson};
pub use symmetric::symmetric_reduce;
