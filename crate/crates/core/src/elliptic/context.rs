use std::f64::consts::PI;

use num_complex::Complex64;

use super::functions::weierstrass_eval;
use crate::algebra::{Var, NVARS};
use crate::{Error, Result};

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Lattice `Z + Z tau` with its cached invariants.
///
/// Series are truncated at `trunc` terms, which by default is chosen so that
/// `|q|^{trunc/2} < 1e-18`; the factor 1/2 accounts for evaluation points with
/// `|Im z| <= Im(tau)/2` after reduction.
#[derive(Clone, Debug)]
pub struct TorusContext {
    pub tau: Complex64,
    pub q: Complex64,
    pub trunc: usize,
    pub g2: Complex64,
    pub g3: Complex64,
    pub delta: Complex64,
    /// `e_1 = wp(1/2)`, `e_2 = wp(tau/2)`, `e_3 = wp((1+tau)/2)`.
    pub e: [Complex64; 3],
    pub eta1: Complex64,
    pub eta2: Complex64,
    /// `q^n / (1 - q^n)` for `n = 1..=trunc` (index 0 unused).
    pub(crate) lambert: Vec<Complex64>,
}

impl TorusContext {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::Domain(format!("Im tau must be positive, got {tau}")));
        }
        let digits = 18.0 * std::f64::consts::LN_10;
        let trunc = (2.0 * digits / (2.0 * PI * tau.im)).ceil() as usize + 2;
        Self::with_trunc(tau, trunc.max(8))
    }

    pub fn with_trunc(tau: Complex64, trunc: usize) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::Domain(format!("Im tau must be positive, got {tau}")));
        }
        if trunc == 0 {
            return Err(Error::Argument("truncation order must be positive".into()));
        }
        let q = (2.0 * PI * I * tau).exp();
        let mut lambert = vec![Complex64::new(0.0, 0.0); trunc + 1];
        let mut qn = Complex64::new(1.0, 0.0);
        for slot in lambert.iter_mut().skip(1) {
            qn *= q;
            *slot = qn / (1.0 - qn);
        }
        // sum sigma_k(n) q^n = sum n^k q^n / (1 - q^n)
        let lsum = |k: i32| -> Complex64 {
            lambert
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, l)| (n as f64).powi(k) * l)
                .sum()
        };
        let pi2 = PI * PI;
        let g2 = 4.0 * pi2 * pi2 / 3.0 * (1.0 + 240.0 * lsum(3));
        let g3 = 8.0 * pi2 * pi2 * pi2 / 27.0 * (1.0 - 504.0 * lsum(5));
        let eta1 = pi2 / 3.0 * (1.0 - 24.0 * lsum(1));
        let eta2 = eta1 * tau - 2.0 * PI * I;
        let mut ctx = TorusContext {
            tau,
            q,
            trunc,
            g2,
            g3,
            delta: g2 * g2 * g2 - 27.0 * g3 * g3,
            e: [Complex64::new(0.0, 0.0); 3],
            eta1,
            eta2,
            lambert,
        };
        let half = [
            Complex64::new(0.5, 0.0),
            tau / 2.0,
            (1.0 + tau) / 2.0,
        ];
        for (i, w) in half.into_iter().enumerate() {
            ctx.e[i] = weierstrass_eval(w, &ctx)?.wp;
        }
        Ok(ctx)
    }

    /// `|eta1 tau - eta2 - 2 pi i|`.
    pub fn legendre_residual(&self) -> f64 {
        (self.eta1 * self.tau - self.eta2 - 2.0 * PI * I).norm()
    }

    /// Evaluation vector for polynomials: `g2`, `g3`, `e_i` from the lattice and
    /// the listed variables as given; everything else zero.
    pub fn values(&self, assign: &[(Var, Complex64)]) -> [Complex64; NVARS] {
        let mut v = [Complex64::new(0.0, 0.0); NVARS];
        v[Var::G2.index()] = self.g2;
        v[Var::G3.index()] = self.g3;
        for i in 0..3 {
            v[Var::e(i + 1).index()] = self.e[i];
        }
        for (var, value) in assign {
            v[var.index()] = *value;
        }
        v
    }

    /// Real coordinates `(r, s)` with `z = r + s tau`.
    pub fn real_coords(&self, z: Complex64) -> (f64, f64) {
        let s = z.im / self.tau.im;
        (z.re - s * self.tau.re, s)
    }
}

/// A point `z = r + s tau` of the torus, `s` normalized into `[0, 1)` and
/// `r` into `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusPoint {
    pub z: Complex64,
    pub r: f64,
    pub s: f64,
}

impl TorusPoint {
    pub fn from_z(z: Complex64, ctx: &TorusContext) -> Self {
        let (r, s) = ctx.real_coords(z);
        Self::from_rs(r, s, ctx)
    }

    pub fn from_rs(r: f64, s: f64, ctx: &TorusContext) -> Self {
        let wrap = |x: f64| {
            let y = x - x.floor();
            if y >= 1.0 - 1e-14 {
                0.0
            } else {
                y
            }
        };
        let (r, s) = (wrap(r), wrap(s));
        TorusPoint {
            z: r + s * ctx.tau,
            r,
            s,
        }
    }
}
