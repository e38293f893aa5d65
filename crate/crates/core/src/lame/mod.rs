//! Spectral data of the Lamé curve and the elimination producing the
//! minimal polynomial `W_n(z)` of `z_n` over the function field of `E`.

mod elimination;
mod ode;
pub mod reference;
mod tables;

pub use elimination::{
    build_fg, check_specialization, compute_wn, eliminate, random_curve_point,
    specialization_checks, CurvePoint, Elimination, SpecializationCheck, WnMode, WnReport,
};
pub use ode::{
    apply_tensor_ode, assemble_ell, consistency_polys, leading_factor, solve_spectral_coeffs,
    ConsistencyPair, SpectralCoeffs, XPoly,
};
pub use tables::{factored_ell, load_tables, spectral_constant, SpectralTables};
