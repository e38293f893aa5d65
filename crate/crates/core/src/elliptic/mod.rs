//! Weierstrass functions on `C / (Z + Z tau)` by q-series, and numerical
//! points of the Liouville curve.

mod context;
mod curve;
mod functions;
mod roots;

pub use context::{TorusContext, TorusPoint};
pub use curve::{
    covering_values, maier_check, monodromy_exponents, monodromy_from_sums, sample_branch_point,
    sample_liouville_point, seeded_points, uni_coeffs, wp_inverse, CoveringValues, CurvePointNumeric,
    MaierReport, MAX_SAMPLE_N,
};
pub use functions::{half_period_series, hecke_z, hecke_z_real, weierstrass_eval, WpValues};
pub use roots::{eval_scale, poly_roots};
