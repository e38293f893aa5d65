//! Independent reference computations for the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;

pub type C = Complex64;

/// `sum f(m + n tau)` over the square `max(|m|, |n|) <= r`, origin excluded.
fn box_sum(tau: C, r: i64, f: &impl Fn(C) -> C) -> C {
    let mut total = C::new(0.0, 0.0);
    for m in -r..=r {
        for n in -r..=r {
            if m != 0 || n != 0 {
                total += f(m as f64 + n as f64 * tau);
            }
        }
    }
    total
}

/// Box sums at `r, 2r, 4r, 8r` extrapolated assuming a truncation error
/// `a r^-2 + b r^-3 + c r^-4 + ...`.
fn extrapolated(tau: C, r: i64, f: impl Fn(C) -> C) -> C {
    let mut s: Vec<C> = [r, 2 * r, 4 * r, 8 * r].iter().map(|&k| box_sum(tau, k, &f)).collect();
    for p in 2..=4 {
        let k = 2f64.powi(p);
        s = s.windows(2).map(|w| (k * w[1] - w[0]) / (k - 1.0)).collect();
    }
    s[0]
}

/// `(g2, g3) = (60 G4, 140 G6)` by direct lattice summation.
pub fn lattice_invariants(tau: C) -> (C, C) {
    let g4 = extrapolated(tau, 20, |w| w.powi(-4));
    let g6 = extrapolated(tau, 20, |w| w.powi(-6));
    (60.0 * g4, 140.0 * g6)
}

/// `(wp, wp', zeta)` at `z` by direct lattice summation.
pub fn lattice_weierstrass(z: C, tau: C) -> (C, C, C) {
    let wp = extrapolated(tau, 20, |w| (z - w).powi(-2) - w.powi(-2)) + z.powi(-2);
    let dwp = extrapolated(tau, 20, |w| -2.0 * (z - w).powi(-3)) - 2.0 * z.powi(-3);
    let zeta = extrapolated(tau, 20, |w| 1.0 / (z - w) + 1.0 / w + z / (w * w)) + 1.0 / z;
    (wp, dwp, zeta)
}

pub fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
