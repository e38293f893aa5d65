use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::evaluator::PremodularEvaluator;
use crate::algebra::Var;
use crate::{Error, Result};

type C = Complex64;

/// Terms kept in `p = q^{1/2}`.
const TERMS: usize = 16;
/// A coefficient counts as nonzero once it exceeds this fraction of the sum
/// of the absolute values that produced it.
const NONZERO: f64 = 1e-9;

/// Position of `sigma = t + s tau` relative to the cusp at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum CuspClass {
    /// `s = 0 mod 1`.
    Zero,
    /// `s = 1/2 mod 1`.
    Half,
    /// any other `s`.
    Generic(f64),
}

impl CuspClass {
    pub fn classify(s: f64) -> Self {
        let frac = s - s.floor();
        if !(1e-12..=1.0 - 1e-12).contains(&frac) {
            CuspClass::Zero
        } else if (frac - 0.5).abs() < 1e-12 {
            CuspClass::Half
        } else {
            CuspClass::Generic(s)
        }
    }
}

/// Truncated power series in `p = q^{1/2}`.
#[derive(Clone, Debug, PartialEq)]
struct Series(Vec<C>);

impl Series {
    fn zero() -> Self {
        Series(vec![C::new(0.0, 0.0); TERMS])
    }

    fn constant(c: C) -> Self {
        let mut s = Self::zero();
        s.0[0] = c;
        s
    }

    fn add(&self, o: &Series) -> Series {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn scale(&self, c: C) -> Series {
        Series(self.0.iter().map(|a| a * c).collect())
    }

    fn mul(&self, o: &Series) -> Series {
        let mut out = Self::zero();
        for (i, a) in self.0.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            for (j, b) in o.0.iter().enumerate().take(TERMS - i) {
                out.0[i + j] += a * b;
            }
        }
        out
    }

    fn abs(&self) -> Series {
        Series(self.0.iter().map(|a| C::new(a.norm(), 0.0)).collect())
    }

    /// `sum_{n, m >= 1} f(n) q^{n m}`.
    fn lambert(f: impl Fn(usize) -> C) -> Series {
        let mut s = Self::zero();
        for big_n in 1..TERMS.div_ceil(2) {
            for n in (1..=big_n).filter(|n| big_n % n == 0) {
                s.0[2 * big_n] += f(n);
            }
        }
        s
    }

    /// `sum_{n, m >= 1} f(n) q^{n (m - 1/2)}`.
    fn half_lambert(f: impl Fn(usize) -> C) -> Series {
        let mut s = Self::zero();
        for n in 1..TERMS {
            for m in 1.. {
                let k = n * (2 * m - 1);
                if k >= TERMS {
                    break;
                }
                s.0[k] += f(n);
            }
        }
        s
    }
}

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

/// `(z, x0, y0, g2, g3)` as series at the cusp.
fn inputs(class: CuspClass, t: f64) -> [Series; 5] {
    let pi2 = PI * PI;
    let g2 = Series::constant(re(4.0 * pi2 * pi2 / 3.0)).add(
        &Series::lambert(|n| re((n as f64).powi(3)))
            .scale(re(240.0 * 4.0 * pi2 * pi2 / 3.0)),
    );
    let g3 = Series::constant(re(8.0 * pi2 * pi2 * pi2 / 27.0)).add(
        &Series::lambert(|n| re((n as f64).powi(5)))
            .scale(re(-504.0 * 8.0 * pi2 * pi2 * pi2 / 27.0)),
    );
    let trig = |n: usize| (2.0 * PI * n as f64 * t).sin_cos();
    match class {
        CuspClass::Zero => {
            let (sin, cos) = (PI * t).sin_cos();
            let eta1 = Series::constant(re(pi2 / 3.0))
                .add(&Series::lambert(|n| re(n as f64)).scale(re(-8.0 * pi2)));
            let z = Series::constant(re(PI * cos / sin))
                .add(&Series::lambert(|n| re(trig(n).0)).scale(re(4.0 * PI)));
            let x0 = eta1
                .scale(re(-1.0))
                .add(&Series::constant(re(pi2 / (sin * sin))))
                .add(&Series::lambert(|n| re(n as f64 * trig(n).1)).scale(re(-8.0 * pi2)));
            let y0 = Series::constant(re(-2.0 * pi2 * PI * cos / (sin * sin * sin))).add(
                &Series::lambert(|n| re((n * n) as f64 * trig(n).0)).scale(re(16.0 * pi2 * PI)),
            );
            [z, x0, y0, g2, g3]
        }
        CuspClass::Half => {
            let z = Series::half_lambert(|n| re(trig(n).0)).scale(re(4.0 * PI));
            let x0 = Series::constant(re(-pi2 / 3.0))
                .add(&Series::lambert(|n| re(n as f64)).scale(re(8.0 * pi2)))
                .add(&Series::half_lambert(|n| re(n as f64 * trig(n).1)).scale(re(-8.0 * pi2)));
            let y0 = Series::half_lambert(|n| re((n * n) as f64 * trig(n).0))
                .scale(re(16.0 * pi2 * PI));
            [z, x0, y0, g2, g3]
        }
        CuspClass::Generic(s) => {
            // Only the limit is needed: every correction is O(q^{min(s, 1-s)}).
            let frac = s - s.floor();
            [
                Series::constant(C::new(0.0, PI * (2.0 * frac - 1.0))),
                Series::constant(re(-pi2 / 3.0)),
                Series::zero(),
                g2,
                g3,
            ]
        }
    }
}

/// Leading term `c q^k` of `Z_n(t + s tau; tau)` as `Im tau -> infinity`.
#[derive(Clone, Debug, Serialize)]
pub struct CuspExpansion {
    pub class: CuspClass,
    pub t: f64,
    /// `k`, in powers of `q`.
    pub order: f64,
    pub coefficient: C,
    /// `|c|` relative to the absolute-value bound of its contributions.
    pub significance: f64,
}

/// Expansion of `Z_n` at the cusp by truncated q-series arithmetic: the
/// q-expansions of `Z`, `wp`, `wp'`, `g2`, `g3` are substituted into `W_n`.
///
/// For generic `s` only the constant term is formed, from the limits
/// `Z -> pi i (2s - 1)`, `wp -> -pi^2/3`, `wp' -> 0`.
pub fn cusp_expansion(ev: &PremodularEvaluator, class: CuspClass, t: f64) -> Result<CuspExpansion> {
    if !matches!(class, CuspClass::Generic(_)) && ((2.0 * t).round() - 2.0 * t).abs() < 1e-12 {
        return Err(Error::Argument(format!(
            "t = {t} is a half-integer: the trigonometric factors vanish"
        )));
    }
    let inputs = inputs(class, t);
    let abs_inputs: Vec<Series> = inputs.iter().map(Series::abs).collect();
    let vars = [Var::Z, Var::X0, Var::Y0, Var::G2, Var::G3];
    let mut value = Series::zero();
    let mut bound = Series::zero();
    for (m, c) in ev.wn.terms() {
        if [Var::B, Var::E1, Var::E2, Var::E3, Var::Alpha, Var::Beta]
            .iter()
            .any(|&v| m.exp(v) > 0)
        {
            return Err(Error::Argument("W_n must only involve z, x0, y0, g2, g3".into()));
        }
        let coeff = c.to_f64().unwrap_or(f64::NAN);
        let mut term = Series::constant(re(coeff));
        let mut abs_term = Series::constant(re(coeff.abs()));
        for (k, v) in vars.iter().enumerate() {
            for _ in 0..m.exp(*v) {
                term = term.mul(&inputs[k]);
                abs_term = abs_term.mul(&abs_inputs[k]);
            }
        }
        value = value.add(&term);
        bound = bound.add(&abs_term);
    }
    let step = if matches!(class, CuspClass::Generic(_)) {
        TERMS
    } else {
        1
    };
    for k in (0..TERMS).step_by(step) {
        let size = value.0[k].norm() / bound.0[k].norm().max(f64::MIN_POSITIVE);
        if size > NONZERO {
            return Ok(CuspExpansion {
                class,
                t,
                order: k as f64 / 2.0,
                coefficient: value.0[k],
                significance: size,
            });
        }
    }
    Err(Error::Convergence(format!(
        "no nonzero coefficient up to q^{} for {class:?}, t = {t}",
        (TERMS - 1) as f64 / 2.0
    )))
}

/// Closed forms of the leading term of `Z_4` at the cusp: `(order, coefficient)`.
pub fn cusp_leading_n4(class: CuspClass, t: f64) -> (f64, f64) {
    let pi10 = PI.powi(10);
    let cs2 = (PI * t).cos().powi(2) * (PI * t).sin().powi(2);
    match class {
        CuspClass::Zero => (3.0, 2f64.powi(14) * 27.0 * 25.0 * 7.0 * pi10 * cs2),
        CuspClass::Half => (2.0, 2f64.powi(10) * 27.0 * 25.0 * 7.0 * pi10 * cs2),
        CuspClass::Generic(s) => {
            let s = s - s.floor();
            let poly = (s - 2.0)
                * (s - 1.0).powi(2)
                * s.powi(2)
                * (s + 1.0)
                * (2.0 * s - 3.0)
                * (2.0 * s - 1.0).powi(2)
                * (2.0 * s + 1.0);
            (0.0, -64.0 * pi10 * poly)
        }
    }
}

/// Sum of the cusp orders of `Z_n(k1/N + k2/N tau)` over all classes with
/// `gcd(k1, k2, N) = 1`.
pub fn nu_infinity_numeric(ev: &PremodularEvaluator, big_n: u64) -> Result<i64> {
    if big_n < 3 {
        return Err(Error::Argument(format!("N must be at least 3, got {big_n}")));
    }
    let mut total = 0.0;
    for k1 in 0..big_n {
        for k2 in 0..big_n {
            if k1.gcd(&k2).gcd(&big_n) != 1 {
                continue;
            }
            let s = k2 as f64 / big_n as f64;
            let t = k1 as f64 / big_n as f64;
            total += cusp_expansion(ev, CuspClass::classify(s), t)?.order;
        }
    }
    if total.fract() != 0.0 {
        return Err(Error::Consistency(format!("non-integral cusp total {total}")));
    }
    Ok(total as i64)
}
