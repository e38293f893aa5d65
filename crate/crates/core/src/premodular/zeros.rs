use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::evaluator::{PremodularEvaluator, ZnValue};
use crate::algebra::Rational;
use crate::elliptic::TorusContext;
use crate::{Error, Result};

type C = Complex64;
/// Located zeros with their winding numbers, and cells left unresolved.
type Scan = (Vec<(C, i32)>, Vec<UnresolvedRegion>);

/// Values with `|Z_n| / scale` below this are rounding noise.
const RESOLUTION: f64 = 1e-13;
/// The top edge is lowered until `|Z_n| / scale` stays above this on it.
const CLIP_LEVEL: f64 = 1e-11;
/// Largest relative residual accepted for a zero.
const ZERO_TOL: f64 = 1e-9;
const MAX_DEPTH: u32 = 3;

/// Axis-parallel rectangle in the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TauRegion {
    pub re0: f64,
    pub re1: f64,
    pub im0: f64,
    pub im1: f64,
}

impl TauRegion {
    /// Rejects empty rectangles and anything reaching below `Im tau = 0.5`,
    /// where the series lose too much accuracy.
    pub fn new(re0: f64, re1: f64, im0: f64, im1: f64) -> Result<Self> {
        if !(re0 < re1 && im0 < im1) {
            return Err(Error::Argument(format!(
                "empty region [{re0}, {re1}] x [{im0}, {im1}]"
            )));
        }
        if im0 < 0.5 {
            return Err(Error::Domain(format!(
                "search region must lie in Im tau >= 0.5, got {im0}"
            )));
        }
        Ok(TauRegion { re0, re1, im0, im1 })
    }

    /// `[-0.6, 0.6] x [0.5, 4]`: the strip `|Re tau| <= 1/2` with a margin so
    /// that the elliptic points `rho`, `rho + 1` are interior.
    pub fn default_search() -> Self {
        TauRegion {
            re0: -0.6,
            re1: 0.6,
            im0: 0.5,
            im1: 4.0,
        }
    }

    pub fn contains(&self, tau: C) -> bool {
        (self.re0..=self.re1).contains(&tau.re) && (self.im0..=self.im1).contains(&tau.im)
    }

    fn corners(&self) -> [C; 4] {
        [
            C::new(self.re0, self.im0),
            C::new(self.re1, self.im0),
            C::new(self.re1, self.im1),
            C::new(self.re0, self.im1),
        ]
    }

    fn center(&self) -> C {
        C::new((self.re0 + self.re1) / 2.0, (self.im0 + self.im1) / 2.0)
    }

    fn split(&self, nx: usize, ny: usize, offset: (f64, f64)) -> Vec<TauRegion> {
        // Interior grid lines are shifted by `offset` (fractions of a cell).
        let line = |a: f64, b: f64, k: usize, m: usize, off: f64| -> f64 {
            if k == 0 {
                a
            } else if k == m {
                b
            } else {
                a + (b - a) * (k as f64 + off) / m as f64
            }
        };
        let mut out = Vec::with_capacity(nx * ny);
        for i in 0..nx {
            for j in 0..ny {
                out.push(TauRegion {
                    re0: line(self.re0, self.re1, i, nx, offset.0),
                    re1: line(self.re0, self.re1, i + 1, nx, offset.0),
                    im0: line(self.im0, self.im1, j, ny, offset.1),
                    im1: line(self.im0, self.im1, j + 1, ny, offset.1),
                });
            }
        }
        out
    }
}

/// A located zero of `tau -> Z_{n; r, s}(tau)`.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroRecord {
    #[serde(serialize_with = "ser_rational")]
    pub r: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
    pub tau: C,
    /// `|Z_n| / magnitude` at `tau`.
    pub residual: f64,
    /// `|dZ_n / dtau| / magnitude` at `tau`.
    pub derivative: f64,
    /// Winding number of `Z_n` around a small box centred at `tau`.
    pub winding: i32,
}

/// Part of the search region that could not be resolved.
#[derive(Clone, Debug, Serialize)]
pub struct UnresolvedRegion {
    pub region: TauRegion,
    pub winding: Option<i32>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroSearch {
    pub n: u32,
    pub region: TauRegion,
    /// The part actually scanned after removing a top strip lost to rounding.
    pub scanned: TauRegion,
    /// Winding number of `Z_n` along the boundary of `scanned`.
    pub total_winding: Option<i32>,
    pub zeros: Vec<ZeroRecord>,
    pub unresolved: Vec<UnresolvedRegion>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

struct Sampler<'a> {
    ev: &'a PremodularEvaluator,
    r: f64,
    s: f64,
}

impl Sampler<'_> {
    fn full(&self, tau: C) -> Result<ZnValue> {
        let ctx = TorusContext::new(tau)?;
        self.ev.eval_real(self.r, self.s, &ctx)
    }

    /// `(Z_n, magnitude)` at `tau`.
    fn value(&self, tau: C) -> Result<(C, f64)> {
        let v = self.full(tau)?;
        Ok((v.value, v.magnitude))
    }

    fn derivative(&self, tau: C) -> Result<C> {
        let h = 1e-5;
        let (fp, _) = self.value(tau + h)?;
        let (fm, _) = self.value(tau - h)?;
        let (gp, _) = self.value(tau + C::new(0.0, h))?;
        let (gm, _) = self.value(tau - C::new(0.0, h))?;
        // Average of the real- and imaginary-direction central differences.
        Ok(((fp - fm) + (gp - gm) / C::new(0.0, 1.0)) / (4.0 * h))
    }

    fn resolved(&self, tau: C) -> Result<C> {
        let v = self.full(tau)?;
        let f = v.value;
        if f.norm() < RESOLUTION * v.scale {
            return Err(Error::Convergence(format!(
                "contour passes within rounding of a zero at {tau}"
            )));
        }
        Ok(f)
    }

    fn segment(&self, a: C, fa: C, b: C, fb: C, depth: u32) -> Result<f64> {
        // log f is holomorphic: a large change of log|f| signals a fast
        // rotation of arg f even when the sampled phases look close.
        let ratio = fb / fa;
        let d = ratio.arg();
        if d.abs() <= 0.3 && ratio.norm().ln().abs() <= 0.3 {
            return Ok(d);
        }
        if depth >= 40 {
            return Err(Error::Convergence(format!(
                "argument jump not resolved between {a} and {b}"
            )));
        }
        let m = (a + b) / 2.0;
        let fm = self.resolved(m)?;
        Ok(self.segment(a, fa, m, fm, depth + 1)? + self.segment(m, fm, b, fb, depth + 1)?)
    }

    fn winding(&self, region: &TauRegion) -> Result<i32> {
        let corners = region.corners();
        let mut total = 0.0;
        for k in 0..4 {
            let (a, b) = (corners[k], corners[(k + 1) % 4]);
            let pieces = ((b - a).norm() / 0.02).ceil().max(4.0) as usize;
            let pts: Vec<C> = (0..=pieces)
                .map(|j| a + (b - a) * (j as f64 / pieces as f64))
                .collect();
            let vals = pts
                .iter()
                .map(|&p| self.resolved(p))
                .collect::<Result<Vec<_>>>()?;
            for j in 0..pieces {
                total += self.segment(pts[j], vals[j], pts[j + 1], vals[j + 1], 0)?;
            }
        }
        let w = total / (2.0 * PI);
        let rounded = w.round();
        if (w - rounded).abs() > 0.1 {
            return Err(Error::Convergence(format!("non-integral winding {w}")));
        }
        Ok(rounded as i32)
    }

    fn newton(&self, start: C) -> Option<C> {
        let mut tau = start;
        for _ in 0..80 {
            let (f, _) = self.value(tau).ok()?;
            let d = self.derivative(tau).ok()?;
            if d.norm() == 0.0 {
                return None;
            }
            let mut step = f / d;
            if step.norm() > 0.1 {
                step *= 0.1 / step.norm();
            }
            tau -= step;
            if tau.im < 0.3 || !tau.re.is_finite() {
                return None;
            }
            if step.norm() < 1e-14 * (1.0 + tau.norm()) {
                break;
            }
        }
        let (f, scale) = self.value(tau).ok()?;
        (f.norm() < ZERO_TOL * scale).then_some(tau)
    }

    fn local_winding(&self, tau: C, half: f64) -> Result<i32> {
        self.winding(&TauRegion {
            re0: tau.re - half,
            re1: tau.re + half,
            im0: tau.im - half,
            im1: tau.im + half,
        })
    }

    /// Zeros inside one cell, subdividing when Newton does not account for
    /// the winding number.
    fn resolve(&self, cell: TauRegion, depth: u32) -> (Vec<(C, i32)>, Vec<UnresolvedRegion>) {
        let subdivide = |reason: String, winding: Option<i32>| {
            if depth < MAX_DEPTH {
                let (mut zs, mut un) = (Vec::new(), Vec::new());
                for sub in cell.split(2, 2, (0.0, 0.0)) {
                    let (z, u) = self.resolve(sub, depth + 1);
                    zs.extend(z);
                    un.extend(u);
                }
                (zs, un)
            } else {
                (
                    Vec::new(),
                    vec![UnresolvedRegion {
                        region: cell,
                        winding,
                        reason,
                    }],
                )
            }
        };
        let w = match self.winding(&cell) {
            Ok(w) => w,
            Err(e) => return subdivide(e.to_string(), None),
        };
        if w == 0 {
            return (Vec::new(), Vec::new());
        }
        if w < 0 {
            return (
                Vec::new(),
                vec![UnresolvedRegion {
                    region: cell,
                    winding: Some(w),
                    reason: "negative winding for a holomorphic function".into(),
                }],
            );
        }
        let mut starts = vec![cell.center()];
        for sub in cell.split(3, 3, (0.0, 0.0)) {
            starts.push(sub.center());
        }
        let mut found: Vec<C> = Vec::new();
        for st in starts {
            if let Some(z) = self.newton(st) {
                if cell.contains(z) && found.iter().all(|f| (f - z).norm() > 1e-8) {
                    found.push(z);
                }
            }
        }
        if found.len() != w as usize {
            return subdivide(
                format!("Newton found {} zeros for winding {w}", found.len()),
                Some(w),
            );
        }
        let half = ((cell.re1 - cell.re0).min(cell.im1 - cell.im0) / 8.0).min(1e-3);
        let mut out = Vec::new();
        for z in found {
            match self.local_winding(z, half) {
                Ok(k) => out.push((z, k)),
                Err(e) => return subdivide(e.to_string(), Some(w)),
            }
        }
        (out, Vec::new())
    }

    /// Lower the top edge until the values on it are resolvable.
    fn clip_top(&self, region: &TauRegion) -> Result<f64> {
        let mut top = region.im1;
        loop {
            let ok = (0..=24).try_fold(true, |acc, j| -> Result<bool> {
                let re = region.re0 + (region.re1 - region.re0) * j as f64 / 24.0;
                let v = self.full(C::new(re, top))?;
                Ok(acc && v.relative() >= CLIP_LEVEL)
            })?;
            if ok {
                return Ok(top);
            }
            top -= 0.05;
            if top <= region.im0 + 0.05 {
                return Ok(region.im0);
            }
        }
    }
}

/// Zeros of `tau -> Z_{n; r, s}(tau)` in `region`.
///
/// A grid of cells is scanned by the argument principle; cells with nonzero
/// winding are resolved by Newton's method from several starts and each zero
/// is validated by the winding number of a small box around it. Whatever
/// cannot be resolved is returned in `unresolved`.
pub fn find_zeros(
    ev: &PremodularEvaluator,
    r: &Rational,
    s: &Rational,
    region: TauRegion,
) -> Result<ZeroSearch> {
    let (rf, sf) = (
        r.to_f64().unwrap_or(f64::NAN),
        s.to_f64().unwrap_or(f64::NAN),
    );
    if r.is_integer() && s.is_integer() {
        return Err(Error::Argument(format!("({r}, {s}) is a lattice point")));
    }
    let sampler = Sampler { ev, r: rf, s: sf };
    let top = sampler.clip_top(&region)?;
    let mut unresolved = Vec::new();
    if top < region.im1 {
        unresolved.push(UnresolvedRegion {
            region: TauRegion { im0: top, ..region },
            winding: None,
            reason: "values below double-precision resolution".into(),
        });
    }
    let scanned = TauRegion { im1: top, ..region };
    if top <= region.im0 {
        return Ok(ZeroSearch {
            n: ev.n,
            region,
            scanned,
            total_winding: None,
            zeros: Vec::new(),
            unresolved,
        });
    }
    let total_winding = sampler.winding(&scanned).ok();
    let nx = ((scanned.re1 - scanned.re0) / 0.15).ceil().max(1.0) as usize;
    let ny = ((scanned.im1 - scanned.im0) / 0.2).ceil().max(1.0) as usize;
    let offsets = [(0.0, 0.0), (0.137, 0.211), (-0.283, 0.377)];
    let mut best: Option<Scan> = None;
    for off in offsets {
        let results: Vec<_> = scanned
            .split(nx, ny, off)
            .into_par_iter()
            .map(|cell| sampler.resolve(cell, 0))
            .collect();
        let (mut zs, mut un) = (Vec::new(), Vec::new());
        for (z, u) in results {
            zs.extend(z);
            un.extend(u);
        }
        let clean = un.is_empty();
        if best.as_ref().is_none_or(|(_, u)| un.len() < u.len()) {
            best = Some((zs, un));
        }
        if clean {
            break;
        }
    }
    let (raw, un) = best.unwrap_or_default();
    unresolved.extend(un);
    let mut zeros: Vec<ZeroRecord> = Vec::new();
    for (tau, winding) in raw {
        if zeros.iter().any(|z| (z.tau - tau).norm() < 1e-8) {
            continue;
        }
        let (f, scale) = sampler.value(tau)?;
        let d = sampler.derivative(tau)?;
        zeros.push(ZeroRecord {
            r: r.clone(),
            s: s.clone(),
            tau,
            residual: f.norm() / scale,
            derivative: d.norm() / scale,
            winding,
        });
    }
    zeros.sort_by(|a, b| {
        a.tau
            .im
            .total_cmp(&b.tau.im)
            .then(a.tau.re.total_cmp(&b.tau.re))
    });
    Ok(ZeroSearch {
        n: ev.n,
        region,
        scanned,
        total_winding,
        zeros,
        unresolved,
    })
}
