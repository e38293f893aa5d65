use std::f64::consts::PI;

use num_complex::Complex64;

use super::context::TorusContext;
use crate::{Error, Result};

/// `wp(z)`, `wp'(z)` and `zeta(z)` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WpValues {
    pub wp: Complex64,
    pub dwp: Complex64,
    pub zeta: Complex64,
}

/// Write `z = w + k tau + j` with `|Im w| <= Im(tau)/2` and the real
/// coordinate of `w` in `[-1/2, 1/2]`.
pub(crate) fn reduce(z: Complex64, ctx: &TorusContext) -> (Complex64, f64, f64) {
    let k = (z.im / ctx.tau.im).round();
    let z1 = z - k * ctx.tau;
    let r = z1.re - z1.im / ctx.tau.im * ctx.tau.re;
    let j = r.round();
    (z1 - j, k, j)
}

/// Evaluate through the trigonometric q-series
///
/// `zeta(w) = eta1 w + pi cot(pi w) + 4 pi sum_n q^n/(1-q^n) sin(2 pi n w)`,
/// `wp = -zeta'`, `wp' = -zeta''`, after reducing `z` into the strip
/// `|Im w| <= Im(tau)/2`; the quasi-periods restore `zeta(z)`.
pub fn weierstrass_eval(z: Complex64, ctx: &TorusContext) -> Result<WpValues> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    let (w, k, j) = reduce(z, ctx);
    if w.norm() < 1e-12 {
        return Err(Error::Pole(format!("{z} is a lattice point")));
    }
    let pw = PI * w;
    let (sin, cos) = (pw.sin(), pw.cos());
    let mut s_zeta = Complex64::new(0.0, 0.0);
    let mut s_wp = Complex64::new(0.0, 0.0);
    let mut s_dwp = Complex64::new(0.0, 0.0);
    for (n, l) in ctx.lambert.iter().enumerate().skip(1) {
        let nf = n as f64;
        let arg = 2.0 * PI * nf * w;
        let (sn, cn) = (arg.sin(), arg.cos());
        s_zeta += l * sn;
        s_wp += nf * l * cn;
        s_dwp += nf * nf * l * sn;
    }
    let pi2 = PI * PI;
    let zeta_w = ctx.eta1 * w + PI * cos / sin + 4.0 * PI * s_zeta;
    let wp = -ctx.eta1 + pi2 / (sin * sin) - 8.0 * pi2 * s_wp;
    let dwp = -2.0 * pi2 * PI * cos / (sin * sin * sin) + 16.0 * pi2 * PI * s_dwp;
    Ok(WpValues {
        wp,
        dwp,
        zeta: zeta_w + k * ctx.eta2 + j * ctx.eta1,
    })
}

/// Hecke function `Z_{r,s} = zeta(r + s tau) - r eta1 - s eta2`; `r`, `s` may
/// be complex.
pub fn hecke_z(r: Complex64, s: Complex64, ctx: &TorusContext) -> Result<Complex64> {
    let z = r + s * ctx.tau;
    Ok(weierstrass_eval(z, ctx)?.zeta - r * ctx.eta1 - s * ctx.eta2)
}

/// [`hecke_z`] for real `(r, s)`.
pub fn hecke_z_real(r: f64, s: f64, ctx: &TorusContext) -> Result<Complex64> {
    hecke_z(Complex64::new(r, 0.0), Complex64::new(s, 0.0), ctx)
}

/// Values on the line `s = 1/2` from the dedicated double series in
/// `q^{n(m - 1/2)}`, real `t`: `(wp, wp', Z)` at `t + tau/2`.
pub fn half_period_series(t: f64, ctx: &TorusContext) -> (Complex64, Complex64, Complex64) {
    let pi2 = PI * PI;
    let half_q = (PI * super::context::I * ctx.tau).exp();
    let mut full = Complex64::new(0.0, 0.0);
    let mut cos_part = Complex64::new(0.0, 0.0);
    let mut sin2_part = Complex64::new(0.0, 0.0);
    let mut sin_part = Complex64::new(0.0, 0.0);
    let terms = 2 * ctx.trunc;
    for n in 1..=terms {
        let nf = n as f64;
        let (sn, cn) = (2.0 * PI * nf * t).sin_cos();
        for m in 1..=terms {
            if n * m > 2 * terms {
                break;
            }
            let qnm = ctx.q.powu((n * m) as u32);
            let qhalf = half_q.powu((n * (2 * m - 1)) as u32);
            full += nf * qnm;
            cos_part += nf * cn * qhalf;
            sin2_part += nf * nf * sn * qhalf;
            sin_part += sn * qhalf;
        }
    }
    let wp = -pi2 / 3.0 + 8.0 * pi2 * full - 8.0 * pi2 * cos_part;
    let dwp = 16.0 * pi2 * PI * sin2_part;
    let z = 4.0 * PI * sin_part;
    (wp, dwp, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> TorusContext {
        TorusContext::new(Complex64::new(0.1, 1.1)).unwrap()
    }

    #[test]
    fn lattice_point_is_a_pole() {
        let c = ctx();
        assert!(matches!(
            weierstrass_eval(Complex64::new(1.0, 0.0) + c.tau, &c),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn half_period_is_critical() {
        let c = ctx();
        let v = weierstrass_eval(Complex64::new(0.5, 0.0), &c).unwrap();
        assert!(v.dwp.norm() < 1e-12);
    }

    #[test]
    fn quasi_periodicity() {
        let c = ctx();
        let z = Complex64::new(0.21, 0.33);
        let a = weierstrass_eval(z, &c).unwrap().zeta;
        let b = weierstrass_eval(z + 1.0, &c).unwrap().zeta;
        let d = weierstrass_eval(z + c.tau, &c).unwrap().zeta;
        assert!((b - a - c.eta1).norm() < 1e-10);
        assert!((d - a - c.eta2).norm() < 1e-10);
    }
}
