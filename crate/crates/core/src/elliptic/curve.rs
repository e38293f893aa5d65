use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::context::{TorusContext, TorusPoint};
use super::functions::{weierstrass_eval, WpValues};
use super::roots::poly_roots;
use crate::algebra::{MultiPoly, NumericPoly, Var, NVARS};
use crate::lame::{assemble_ell, load_tables, solve_spectral_coeffs};
use crate::{Error, Result};

type C = Complex64;

/// Largest `n` accepted by [`sample_liouville_point`].
pub const MAX_SAMPLE_N: u32 = 6;

/// Accept a sign choice when its residual is below this.
const SIGN_TOL: f64 = 1e-9;
/// ... and the runner-up is at least this much worse.
const SIGN_GAP: f64 = 1e3;

/// Invert `wp`: a point `z` with `wp(z) = x`.
///
/// Starts Newton's method from the best node of a 12x12 grid over the
/// fundamental cell (and from `x^{-1/2}` for large `|x|`). With `sign_hint`
/// the branch `z` or `-z` whose `wp'` is closer to the hint is returned.
pub fn wp_inverse(x: C, ctx: &TorusContext, sign_hint: Option<C>) -> Result<TorusPoint> {
    let scale = 1.0 + x.norm();
    let mut best: Option<(f64, C)> = None;
    let mut consider = |z: C| {
        if let Ok(v) = weierstrass_eval(z, ctx) {
            let d = (v.wp - x).norm();
            if d.is_finite() && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, z));
            }
        }
    };
    const GRID: usize = 12;
    for i in 0..GRID {
        for j in 0..GRID {
            let u = (i as f64 + 0.5) / GRID as f64 - 0.5;
            let v = (j as f64 + 0.5) / GRID as f64 - 0.5;
            consider(u + v * ctx.tau);
        }
    }
    if x.norm() > 1.0 {
        consider(1.0 / x.sqrt());
    }
    let (_, mut z) = best.ok_or_else(|| Error::Convergence("no usable start for wp^{-1}".into()))?;

    let mut v = weierstrass_eval(z, ctx)?;
    for _ in 0..200 {
        let f = v.wp - x;
        if f.norm() < 1e-15 * scale {
            break;
        }
        if v.dwp.norm() == 0.0 {
            break;
        }
        let step = f / v.dwp;
        let mut damping = 1.0;
        let mut moved = false;
        for _ in 0..30 {
            let cand = z - damping * step;
            if let Ok(w) = weierstrass_eval(cand, ctx) {
                if (w.wp - x).norm() < f.norm() {
                    z = cand;
                    v = w;
                    moved = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if !moved {
            break;
        }
    }
    let residual = (v.wp - x).norm();
    if !(residual < 1e-10 * scale) {
        return Err(Error::Convergence(format!(
            "wp^(-1)({x}) stalled with residual {residual:e}"
        )));
    }
    if let Some(hint) = sign_hint {
        if (-v.dwp - hint).norm() < (v.dwp - hint).norm() {
            z = -z;
        }
    }
    Ok(TorusPoint::from_z(z, ctx))
}

/// `q(x)` coefficients and `l_n` as floating polynomials in `B, g2, g3`.
struct SpectralNumerics {
    /// `s_0, ..., s_n` at `alpha = 0, beta = 2B`.
    s: Vec<NumericPoly>,
    ell: NumericPoly,
}

fn spectral_numerics(n: u32) -> Result<&'static SpectralNumerics> {
    static CACHE: [OnceLock<SpectralNumerics>; MAX_SAMPLE_N as usize + 1] =
        [const { OnceLock::new() }; MAX_SAMPLE_N as usize + 1];
    if n == 0 || n > MAX_SAMPLE_N {
        return Err(Error::Argument(format!(
            "Liouville points are built for 1 <= n <= {MAX_SAMPLE_N}, got {n}"
        )));
    }
    let slot = &CACHE[n as usize];
    if let Some(s) = slot.get() {
        return Ok(s);
    }
    let coeffs = solve_spectral_coeffs(n)?;
    let two_b = MultiPoly::var(Var::B).scale(&crate::algebra::rat(2));
    let s = coeffs
        .s
        .iter()
        .map(|p| {
            p.specialize(&[(Var::Alpha, crate::algebra::rat(0))])
                .substitute(Var::Beta, &two_b)
                .to_numeric()
        })
        .collect();
    let ell = assemble_ell(n)?.to_numeric();
    Ok(slot.get_or_init(|| SpectralNumerics { s, ell }))
}

/// Floating copies of the factor tables used by the covering-map formulas.
struct TableNumerics {
    c_n: f64,
    l0: NumericPoly,
    l: [NumericPoly; 3],
    lt0: NumericPoly,
    lt: [NumericPoly; 3],
    l_theta: NumericPoly,
}

fn table_numerics(n: u32) -> Result<&'static TableNumerics> {
    static CACHE: [OnceLock<TableNumerics>; 5] = [const { OnceLock::new() }; 5];
    if n == 0 || n > 4 {
        return Err(Error::Unsupported(format!(
            "covering-map tables exist for 1 <= n <= 4, got {n}"
        )));
    }
    let slot = &CACHE[n as usize];
    if let Some(t) = slot.get() {
        return Ok(t);
    }
    let t = load_tables(n)?;
    let c_n = t
        .c_sq
        .to_f64()
        .ok_or_else(|| Error::Internal("c_n^2 is not representable".into()))?
        .sqrt();
    let num = TableNumerics {
        c_n,
        l0: t.l0.to_numeric(),
        l: [1, 2, 3].map(|i| t.l(i).to_numeric()),
        lt0: t.lt0.to_numeric(),
        lt: [1, 2, 3].map(|i| t.lt(i).to_numeric()),
        l_theta: t.l_theta.to_numeric(),
    };
    Ok(slot.get_or_init(|| num))
}

/// Coefficients (ascending in `var`) of `p` with all other variables taken
/// from `values`.
pub fn uni_coeffs(p: &MultiPoly, var: Var, values: &[C; NVARS]) -> Vec<C> {
    let view = p.as_uni(var);
    view.coeffs.iter().map(|c| c.eval_complex(values)).collect()
}

/// A numerical point of the Liouville curve: zeros `a` of a Lamé-type
/// solution together with `(B, C)`.
#[derive(Clone, Debug)]
pub struct CurvePointNumeric {
    pub n: u32,
    /// Representatives in the plane; `sigma_full` is their plain sum.
    pub a: Vec<C>,
    pub wp_a: Vec<C>,
    pub dwp_a: Vec<C>,
    pub b: C,
    pub c: C,
    /// Largest relative deviation of `C(a)` across the choice of `i`.
    pub c_spread: f64,
    pub sigma_full: C,
    pub sigma: TorusPoint,
    /// `sum zeta(a_i)`.
    pub sum_zeta: C,
    /// `zeta(sigma) - sum zeta(a_i)`.
    pub zn: C,
    /// `|sum_i wp'(a_i) wp(a_i)^r|` for `r = 0..n-2`, relative.
    pub residuals: Vec<f64>,
    /// `|(2n-1) sum wp(a_i) - B| / (1 + |B|)`.
    pub b_residual: f64,
    /// `|C^2 - l_n(B)|` relative to the term scale of `l_n`.
    pub ell_residual: f64,
}

impl CurvePointNumeric {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// The image under `a -> -a`, i.e. `(B, C) -> (B, -C)`.
    pub fn negated(&self, ctx: &TorusContext) -> CurvePointNumeric {
        let neg = |v: &[C]| v.iter().map(|x| -x).collect::<Vec<_>>();
        CurvePointNumeric {
            a: neg(&self.a),
            dwp_a: neg(&self.dwp_a),
            c: -self.c,
            sigma_full: -self.sigma_full,
            sigma: TorusPoint::from_z(-self.sigma_full, ctx),
            sum_zeta: -self.sum_zeta,
            zn: -self.zn,
            ..self.clone()
        }
    }
}

fn sign_residuals(x: &[C], dwp: &[C], signs: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n.saturating_sub(1))
        .map(|r| {
            let mut sum = C::new(0.0, 0.0);
            let mut scale = 0.0;
            for i in 0..n {
                let term = signs[i] * dwp[i] * x[i].powu(r as u32);
                sum += term;
                scale += term.norm();
            }
            if scale > 0.0 {
                sum.norm() / scale
            } else {
                0.0
            }
        })
        .collect()
}

/// Point of the curve over a given `B`.
///
/// Solves `q(x) = 0`, inverts `wp` at the roots and chooses the branches of
/// `wp'` by trying all `2^{n-1}` sign patterns (the overall sign is the
/// hyperelliptic involution and fixed by taking `a_1` as returned).
pub fn sample_liouville_point(n: u32, b: C, ctx: &TorusContext) -> Result<CurvePointNumeric> {
    build_point(n, b, ctx, true)
}

/// As [`sample_liouville_point`] at a branch point `C = 0`, where several
/// sign patterns are equally good and the best one is taken.
pub fn sample_branch_point(n: u32, b: C, ctx: &TorusContext) -> Result<CurvePointNumeric> {
    build_point(n, b, ctx, false)
}

fn build_point(n: u32, b: C, ctx: &TorusContext, unique: bool) -> Result<CurvePointNumeric> {
    let sn = spectral_numerics(n)?;
    let vals = ctx.values(&[(Var::B, b)]);
    let nu = n as usize;
    let mut coeffs = vec![C::new(0.0, 0.0); nu + 1];
    for (j, s) in sn.s.iter().enumerate() {
        let v = s.eval(&vals);
        coeffs[nu - j] = if j % 2 == 0 { v } else { -v };
    }
    let x = poly_roots(&coeffs)?;
    for i in 0..nu {
        for j in 0..i {
            if (x[i] - x[j]).norm() < 1e-7 * (1.0 + x[i].norm()) {
                return Err(Error::Construction(format!(
                    "q(x) has a repeated root near {} at B = {b}",
                    x[i]
                )));
            }
        }
    }
    let mut a = Vec::with_capacity(nu);
    let mut dwp = Vec::with_capacity(nu);
    for xi in &x {
        let p = wp_inverse(*xi, ctx, None)?;
        a.push(p.z);
        dwp.push(weierstrass_eval(p.z, ctx)?.dwp);
    }

    let mut candidates: Vec<(f64, Vec<f64>)> = (0..1usize << (nu - 1))
        .map(|mask| {
            let signs: Vec<f64> = (0..nu)
                .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            let worst = sign_residuals(&x, &dwp, &signs)
                .into_iter()
                .fold(0.0, f64::max);
            (worst, signs)
        })
        .collect();
    candidates.sort_by(|p, q| p.0.total_cmp(&q.0));
    let (best, signs) = candidates[0].clone();
    if !(best < SIGN_TOL) {
        return Err(Error::Construction(format!(
            "no sign choice solves the zero equations at B = {b} (best residual {best:e})"
        )));
    }
    if unique {
        if let Some((second, _)) = candidates.get(1) {
            if *second < SIGN_GAP * best.max(1e-300) && *second < SIGN_TOL {
                return Err(Error::Construction(format!(
                    "sign choice is ambiguous at B = {b} ({best:e} vs {second:e})"
                )));
            }
        }
    }
    for i in 0..nu {
        if signs[i] < 0.0 {
            a[i] = -a[i];
            dwp[i] = -dwp[i];
        }
    }
    let residuals = sign_residuals(&x, &dwp, &vec![1.0; nu]);

    let c_i: Vec<C> = (0..nu)
        .map(|i| {
            (0..nu)
                .filter(|&j| j != i)
                .fold(dwp[i], |acc, j| acc * (x[i] - x[j]))
        })
        .collect();
    let c = c_i.iter().sum::<C>() / nu as f64;
    let c_scale = c_i.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
    let c_spread = c_i.iter().map(|v| (v - c).norm()).fold(0.0, f64::max) / c_scale;

    let mut sum_zeta = C::new(0.0, 0.0);
    for ai in &a {
        sum_zeta += weierstrass_eval(*ai, ctx)?.zeta;
    }
    let sigma_full: C = a.iter().sum();
    let zn = weierstrass_eval(sigma_full, ctx)?.zeta - sum_zeta;

    let ell = sn.ell.eval(&vals);
    let ell_scale = sn.ell.eval_scale(&vals) + c.norm_sqr();
    let ell_residual = (c * c - ell).norm() / ell_scale.max(1e-300);
    let b_residual =
        ((2.0 * n as f64 - 1.0) * x.iter().sum::<C>() - b).norm() / (1.0 + b.norm());

    Ok(CurvePointNumeric {
        n,
        a,
        wp_a: x,
        dwp_a: dwp,
        b,
        c,
        c_spread,
        sigma_full,
        sigma: TorusPoint::from_z(sigma_full, ctx),
        sum_zeta,
        zn,
        residuals,
        b_residual,
        ell_residual,
    })
}

/// `(x0, y0, kappa)` at `(B, C)` from the factor tables.
#[derive(Clone, Debug)]
pub struct CoveringValues {
    /// One value of `x0` per species `i`.
    pub x0: [C; 3],
    pub y0: C,
    pub kappa: C,
}

/// The covering maps `x0 = wp(sigma)`, `y0 = wp'(sigma)` and `kappa` in terms of
/// `(B, C)`; errors at zeros of `l0 * lt0`.
pub fn covering_values(n: u32, b: C, c: C, ctx: &TorusContext) -> Result<CoveringValues> {
    let t = table_numerics(n)?;
    let vals = ctx.values(&[(Var::B, b)]);
    let l0 = t.l0.eval(&vals);
    let lt0 = t.lt0.eval(&vals);
    let scale = t.l0.eval_scale(&vals) * t.lt0.eval_scale(&vals);
    if (l0 * lt0).norm() < 1e-12 * scale.max(1e-300) {
        return Err(Error::Pole(format!("l0 * lt0 vanishes at B = {b}")));
    }
    let nf = n as f64;
    let k = 4.0 / (nf * nf * (nf + 1.0) * (nf + 1.0));
    let lt: Vec<C> = t.lt.iter().map(|p| p.eval(&vals)).collect();
    let x0 = [0, 1, 2].map(|i| {
        ctx.e[i] + k * t.l[i].eval(&vals) * lt[i] * lt[i] / (l0 * lt0 * lt0)
    });
    // With C = wp'(a_i) prod (wp(a_i) - wp(a_j)) the closed forms hold for
    // (-1)^{n+1} C.
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let c_norm = sign * c / t.c_n;
    let y0 = 16.0 / (nf * (nf + 1.0)).powi(3) * c_norm * lt[0] * lt[1] * lt[2]
        / (l0 * l0 * lt0 * lt0 * lt0);
    let kappa = -(nf - 1.0) * (nf + 2.0) / (nf * (nf + 1.0)) * c_norm * t.l_theta.eval(&vals)
        / (l0 * lt0);
    Ok(CoveringValues { x0, y0, kappa })
}

/// Residuals of the covering-map identities at a curve point.
#[derive(Clone, Debug)]
pub struct MaierReport {
    pub values: CoveringValues,
    /// Largest pairwise difference of the three `x0`, relative.
    pub x0_spread: f64,
    /// `|wp(sigma) - x0|`, relative.
    pub x0_error: f64,
    /// `|wp'(sigma) - y0|`, relative.
    pub y0_error: f64,
    /// `|kappa + z_n|`, relative to `max(1, |z_n|)`.
    pub kappa_error: f64,
}

impl MaierReport {
    pub fn worst(&self) -> f64 {
        self.x0_spread
            .max(self.x0_error)
            .max(self.y0_error)
            .max(self.kappa_error)
    }
}

pub fn maier_check(pt: &CurvePointNumeric, ctx: &TorusContext) -> Result<MaierReport> {
    let values = covering_values(pt.n, pt.b, pt.c, ctx)?;
    let WpValues { wp, dwp, .. } = weierstrass_eval(pt.sigma_full, ctx)?;
    let x0 = values.x0[0];
    let rel = |d: C, s: C| d.norm() / s.norm().max(1.0);
    let mut x0_spread: f64 = 0.0;
    for i in 0..3 {
        for j in 0..i {
            x0_spread = x0_spread.max(rel(values.x0[i] - values.x0[j], x0));
        }
    }
    Ok(MaierReport {
        x0_spread,
        x0_error: rel(wp - x0, x0),
        y0_error: rel(dwp - values.y0, values.y0),
        kappa_error: rel(values.kappa + pt.zn, pt.zn),
        values,
    })
}

/// Monodromy exponents `(r, s)` from `r + s tau = sigma`,
/// `r eta1 + s eta2 = sum zeta(a_i)`.
pub fn monodromy_exponents(pt: &CurvePointNumeric, ctx: &TorusContext) -> (C, C) {
    monodromy_from_sums(pt.sigma_full, pt.sum_zeta, ctx)
}

pub fn monodromy_from_sums(sigma: C, sum_zeta: C, ctx: &TorusContext) -> (C, C) {
    let det = ctx.eta2 - ctx.tau * ctx.eta1;
    let r = (sigma * ctx.eta2 - ctx.tau * sum_zeta) / det;
    let s = (sum_zeta - ctx.eta1 * sigma) / det;
    (r, s)
}

/// Seeded draws of `(tau, B)` together with a point of the Liouville curve
/// over each `B`.
///
/// `tau` is uniform in `[-1/2, 1/2] x [0.8, 1.6]` and `B` uniform in the square
/// of half-width 6; draws where the point cannot be built or the covering maps
/// have a pole are replaced by fresh ones.
pub fn seeded_points(n: u32, count: usize, seed: u64) -> Result<Vec<(TorusContext, CurvePointNumeric)>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 50 * count.max(1) {
            return Err(Error::Construction(format!(
                "only {} of {count} points for n = {n} after {attempts} draws",
                out.len()
            )));
        }
        let tau = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
        let b = C::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
        let ctx = TorusContext::new(tau)?;
        let Ok(pt) = sample_liouville_point(n, b, &ctx) else {
            continue;
        };
        if covering_values(n, pt.b, pt.c, &ctx).is_err() {
            continue;
        }
        out.push((ctx, pt));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> TorusContext {
        TorusContext::new(C::new(0.13, 1.07)).unwrap()
    }

    #[test]
    fn inverse_at_half_period() {
        let c = ctx();
        let p = wp_inverse(c.e[0], &c, None).unwrap();
        assert!((p.r - 0.5).abs() < 1e-6 && p.s.abs() < 1e-6, "{p:?}");
    }

    #[test]
    fn inverse_round_trip_with_hint() {
        let c = ctx();
        let z = C::new(0.31, 0.4);
        let v = weierstrass_eval(z, &c).unwrap();
        let p = wp_inverse(v.wp, &c, Some(v.dwp)).unwrap();
        let w = weierstrass_eval(p.z, &c).unwrap();
        assert!((w.wp - v.wp).norm() < 1e-10 * (1.0 + v.wp.norm()));
        assert!((w.dwp - v.dwp).norm() < 1e-8 * (1.0 + v.dwp.norm()));
    }

    #[test]
    fn n1_point() {
        let c = ctx();
        let pt = sample_liouville_point(1, C::new(1.3, -0.4), &c).unwrap();
        assert!(pt.zn.norm() < 1e-12);
        assert!(pt.ell_residual < 1e-12);
        let rep = maier_check(&pt, &c).unwrap();
        assert!(rep.worst() < 1e-9, "{rep:?}");
    }

    #[test]
    fn n2_point_satisfies_identities() {
        let c = ctx();
        let pt = sample_liouville_point(2, C::new(2.1, 0.7), &c).unwrap();
        assert!(pt.max_residual() < 1e-9);
        assert!(pt.b_residual < 1e-9);
        assert!(pt.ell_residual < 1e-9);
        let rep = maier_check(&pt, &c).unwrap();
        assert!(rep.worst() < 1e-8, "{rep:?}");
    }

    #[test]
    fn monodromy_solves_both_equations() {
        let c = ctx();
        let pt = sample_liouville_point(3, C::new(-1.2, 0.9), &c).unwrap();
        let (r, s) = monodromy_exponents(&pt, &c);
        assert!((r + s * c.tau - pt.sigma_full).norm() < 1e-10);
        assert!((r * c.eta1 + s * c.eta2 - pt.sum_zeta).norm() < 1e-10);
    }
}
