use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::algebra::{parse_rational, Grading, MultiPoly, PolyJson, Var, NVARS};
use crate::elliptic::{hecke_z, weierstrass_eval, CurvePointNumeric, TorusContext};
use crate::lame::{compute_wn, eliminate, WnMode};
use crate::{Error, Result};

type C = Complex64;

/// `W_n` for `1 <= n <= 4`: full elimination for `n <= 3`, the tabulated
/// polynomial after a seeded specialization check for `n = 4`. Computed once
/// per process.
pub fn wn_polynomial(n: u32) -> Result<&'static MultiPoly> {
    static CACHE: [OnceLock<MultiPoly>; 5] = [const { OnceLock::new() }; 5];
    if !(1..=4).contains(&n) {
        return Err(Error::Unsupported(format!(
            "W_n is available for 1 <= n <= 4, got {n}"
        )));
    }
    let slot = &CACHE[n as usize];
    if let Some(w) = slot.get() {
        return Ok(w);
    }
    let w = if n <= 3 {
        eliminate(n)?.wn
    } else {
        compute_wn(n, WnMode::Specialized { draws: 4, seed: 0 })?.wn
    };
    Ok(slot.get_or_init(|| w))
}

/// Horner scheme in `z` over terms read back from the serialized form.
#[derive(Clone, Debug)]
struct HornerForm {
    /// `by_z[k]` holds the terms of the `z^k` coefficient.
    by_z: Vec<Vec<(f64, [u16; NVARS])>>,
}

impl HornerForm {
    fn from_json(pj: &PolyJson) -> Result<Self> {
        let zi = Var::Z.index();
        let mut by_z: Vec<Vec<(f64, [u16; NVARS])>> = Vec::new();
        for t in &pj.terms {
            let mut exps: [u16; NVARS] = t
                .exp
                .as_slice()
                .try_into()
                .map_err(|_| Error::Parse("bad exponent vector".into()))?;
            let k = exps[zi] as usize;
            exps[zi] = 0;
            let c = parse_rational(&t.coeff)?
                .to_f64()
                .ok_or_else(|| Error::Parse(format!("coefficient {} overflows", t.coeff)))?;
            if by_z.len() <= k {
                by_z.resize(k + 1, Vec::new());
            }
            by_z[k].push((c, exps));
        }
        Ok(HornerForm { by_z })
    }

    fn eval(&self, values: &[C; NVARS]) -> C {
        let z = values[Var::Z.index()];
        let coeff = |terms: &[(f64, [u16; NVARS])]| -> C {
            terms
                .iter()
                .map(|(c, e)| {
                    e.iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .fold(C::new(*c, 0.0), |acc, (i, &k)| acc * values[i].powu(k as u32))
                })
                .sum()
        };
        self.by_z
            .iter()
            .rev()
            .fold(C::new(0.0, 0.0), |acc, terms| acc * z + coeff(terms))
    }
}

/// `Z_n(sigma; tau)` with both evaluation paths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZnValue {
    /// Term-by-term substitution into the exact polynomial.
    pub value: C,
    /// Horner evaluation of the serialized polynomial.
    pub horner: C,
    /// `sum |term|`: rounding in `value` is relative to this.
    pub scale: f64,
    /// `sum |c_m| L^{w(m)}` with `L = max(|z|, |x0|^{1/2}, |y0|^{1/3},
    /// |g2|^{1/4}, |g3|^{1/6})` and `w` the weight of the monomial; unlike
    /// `scale` it does not collapse when several arguments vanish together.
    pub magnitude: f64,
}

impl ZnValue {
    pub fn relative(&self) -> f64 {
        self.value.norm() / self.scale.max(f64::MIN_POSITIVE)
    }

    /// `|value| / magnitude`.
    pub fn normalized(&self) -> f64 {
        self.value.norm() / self.magnitude.max(f64::MIN_POSITIVE)
    }

    /// Relative disagreement of the two evaluation paths.
    pub fn path_gap(&self) -> f64 {
        (self.value - self.horner).norm() / self.scale.max(f64::MIN_POSITIVE)
    }
}

type CacheKey = (u64, u64, u64, u64, u64, u64, usize);

/// Evaluates `Z_n = W_n(Z)` at torsion or general points.
#[derive(Debug)]
pub struct PremodularEvaluator {
    pub n: u32,
    pub wn: MultiPoly,
    horner: HornerForm,
    /// `(|c|, weight)` per term.
    weights: Vec<(f64, u32)>,
    cache: Mutex<HashMap<CacheKey, ZnValue>>,
}

impl PremodularEvaluator {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_polynomial(n, wn_polynomial(n)?.clone())
    }

    pub fn with_polynomial(n: u32, wn: MultiPoly) -> Result<Self> {
        let horner = HornerForm::from_json(&PolyJson::from_poly(&wn))?;
        let weights = wn
            .terms()
            .map(|(m, c)| (c.to_f64().unwrap_or(f64::INFINITY).abs(), m.weight(Grading::M)))
            .collect();
        Ok(PremodularEvaluator {
            n,
            wn,
            horner,
            weights,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Evaluate at explicit values of `(g2, g3, x0, y0, z)` taken from `ctx` and
    /// the arguments.
    pub fn eval_values(&self, x0: C, y0: C, z: C, ctx: &TorusContext) -> ZnValue {
        let vals = ctx.values(&[(Var::X0, x0), (Var::Y0, y0), (Var::Z, z)]);
        let l = [
            z.norm(),
            x0.norm().sqrt(),
            y0.norm().cbrt(),
            ctx.g2.norm().powf(0.25),
            ctx.g3.norm().powf(1.0 / 6.0),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        ZnValue {
            value: self.wn.eval_complex(&vals),
            horner: self.horner.eval(&vals),
            scale: self.wn.eval_complex_scale(&vals),
            magnitude: self.weights.iter().map(|(c, w)| c * l.powi(*w as i32)).sum(),
        }
    }

    /// `Z_{n; r, s}(tau)`; `(r, s)` may be complex.
    pub fn eval(&self, r: C, s: C, ctx: &TorusContext) -> Result<ZnValue> {
        let key = (
            r.re.to_bits(),
            r.im.to_bits(),
            s.re.to_bits(),
            s.im.to_bits(),
            ctx.tau.re.to_bits(),
            ctx.tau.im.to_bits(),
            ctx.trunc,
        );
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let sigma = r + s * ctx.tau;
        let wp = weierstrass_eval(sigma, ctx)?;
        let z = hecke_z(r, s, ctx)?;
        let v = self.eval_values(wp.wp, wp.dwp, z, ctx);
        let mut cache = self.cache.lock().expect("cache lock");
        if cache.len() > 1 << 16 {
            cache.clear();
        }
        cache.insert(key, v);
        Ok(v)
    }

    pub fn eval_real(&self, r: f64, s: f64, ctx: &TorusContext) -> Result<ZnValue> {
        self.eval(C::new(r, 0.0), C::new(s, 0.0), ctx)
    }

    /// `W_n(z_n(a))` at `x0 = wp(sigma(a))`, `y0 = wp'(sigma(a))`.
    pub fn eval_at_point(&self, pt: &CurvePointNumeric, ctx: &TorusContext) -> Result<ZnValue> {
        let wp = weierstrass_eval(pt.sigma_full, ctx)?;
        Ok(self.eval_values(wp.wp, wp.dwp, pt.zn, ctx))
    }

    /// Coefficients (ascending in `z`) of `W_n` over the point `sigma` of `E`.
    pub fn fiber_polynomial(&self, sigma: C, ctx: &TorusContext) -> Result<Vec<C>> {
        let wp = weierstrass_eval(sigma, ctx)?;
        let vals = ctx.values(&[(Var::X0, wp.wp), (Var::Y0, wp.dwp)]);
        Ok(crate::elliptic::uni_coeffs(&self.wn, Var::Z, &vals))
    }
}

/// `Z(sigma(a)) - z_n(a)`: vanishes exactly when `a` solves the Green equation.
pub fn green_residual(pt: &CurvePointNumeric, ctx: &TorusContext) -> Result<C> {
    let (r, s) = ctx.real_coords(pt.sigma_full);
    Ok(crate::elliptic::hecke_z_real(r, s, ctx)? - pt.zn)
}
