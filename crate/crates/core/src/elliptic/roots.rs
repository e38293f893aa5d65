use num_complex::Complex64;

use crate::{Error, Result};

const MAX_ITER: usize = 500;

fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    // Value and derivative.
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// `sum |c_k| |x|^k`, the magnitude scale for residuals at `x`.
pub fn eval_scale(coeffs: &[Complex64], x: Complex64) -> f64 {
    let ax = x.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * ax + c.norm())
}

/// All roots of `sum_k coeffs[k] x^k` by Aberth-Ehrlich iteration from a
/// fixed circle of starting points, followed by Newton polishing.
///
/// Every root satisfies `|p(r)| < 1e-10 * sum |c_k| |r|^k`, otherwise a
/// convergence error is returned.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    let lead = *coeffs
        .last()
        .ok_or_else(|| Error::Argument("empty coefficient list".into()))?;
    if lead.norm() == 0.0 {
        return Err(Error::Argument("leading coefficient is zero".into()));
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Geometric mean of root moduli as the starting radius.
    let radius = {
        let r = monic[0].norm().powf(1.0 / deg as f64);
        if r > 0.0 && r.is_finite() {
            r
        } else {
            1.0
        }
    };
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *r);
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            let next = *r - p / dp;
            if horner(&monic, next).0.norm() < p.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    for r in &z {
        let residual = horner(&monic, *r).0.norm();
        if !(residual <= 1e-10 * eval_scale(&monic, *r)) {
            return Err(Error::Convergence(format!(
                "root {r} has residual {residual:e} (iteration converged: {converged})"
            )));
        }
    }
    Ok(z)
}
