use std::sync::OnceLock;

use num_complex::Complex64;

use crate::algebra::{NumericPoly, Var};
use crate::elliptic::{
    poly_roots, sample_liouville_point, weierstrass_eval, CurvePointNumeric, TorusContext,
};
use crate::lame::build_fg;
use crate::{Error, Result};

type C = Complex64;

/// `f` with its coefficients in `B` converted to floating point.
struct FgNumeric {
    f: Vec<NumericPoly>,
}

fn fg_numeric(n: u32) -> Result<&'static FgNumeric> {
    static CACHE: [OnceLock<FgNumeric>; 5] = [const { OnceLock::new() }; 5];
    if !(1..=4).contains(&n) {
        return Err(Error::Unsupported(format!("no covering data for n = {n}")));
    }
    let slot = &CACHE[n as usize];
    if let Some(v) = slot.get() {
        return Ok(v);
    }
    let (f, _) = build_fg(n)?;
    let split = |p: &crate::algebra::MultiPoly| {
        p.as_uni(Var::B)
            .coeffs
            .iter()
            .map(|c| c.to_numeric())
            .collect::<Vec<_>>()
    };
    let v = FgNumeric { f: split(&f) };
    Ok(slot.get_or_init(|| v))
}

/// The point `a` of the Liouville curve with `sigma_n(a) = sigma` and
/// `z_n(a) = z`, for `z` a root of `W_n` over `sigma`.
///
/// Every root `B` of `f(B) = 0` over `x0 = wp(sigma)` gives two candidate points
/// `(B, +-C)`; the one reproducing `(wp(sigma), wp'(sigma), z)` best is
/// returned. `g` alone cannot pick `B` where the covering data degenerate
/// (e.g. `g2 = 0`).
pub fn reconstruct_point(n: u32, sigma: C, z: C, ctx: &TorusContext) -> Result<CurvePointNumeric> {
    let fg = fg_numeric(n)?;
    let wp = weierstrass_eval(sigma, ctx)?;
    let vals = ctx.values(&[(Var::X0, wp.wp), (Var::Y0, wp.dwp), (Var::Z, z)]);
    let mut f: Vec<C> = fg.f.iter().map(|p| p.eval(&vals)).collect();
    while f.last().is_some_and(|c| c.norm() == 0.0) {
        f.pop();
    }
    let roots = poly_roots(&f)?;
    let mut best: Option<(f64, CurvePointNumeric)> = None;
    let mut last_err = None;
    for b in roots {
        let pt = match sample_liouville_point(n, b, ctx) {
            Ok(pt) => pt,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        for cand in [pt.negated(ctx), pt] {
            let w = weierstrass_eval(cand.sigma_full, ctx)?;
            let dist = (cand.zn - z).norm() / (1.0 + z.norm())
                + (w.wp - wp.wp).norm() / (1.0 + wp.wp.norm())
                + (w.dwp - wp.dwp).norm() / (1.0 + wp.dwp.norm());
            if best.as_ref().is_none_or(|(d, _)| dist < *d) {
                best = Some((dist, cand));
            }
        }
    }
    match best {
        Some((d, _)) if d > 1e-6 => Err(Error::Construction(format!(
            "no point over sigma = {sigma} reproduces z = {z} (best mismatch {d:e})"
        ))),
        Some((_, pt)) => Ok(pt),
        None => Err(last_err.unwrap_or_else(|| Error::Construction("f has no roots in B".into()))),
    }
}
