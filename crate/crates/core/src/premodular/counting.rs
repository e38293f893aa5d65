use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{rat, ratio, Rational};
use crate::{Error, Result};

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `#{0 <= k1, k2 < N : gcd(k1, k2, N) = 1} = N^2 prod_{p | N} (1 - p^-2)`.
pub fn psi(n: u64) -> u64 {
    let mut result = n * n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result = result / (p * p) * (p * p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / (m * m) * (m * m - 1);
    }
    result
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArithValues {
    pub n: u64,
    pub phi: u64,
    /// `phi(N/2)`, zero for odd `N`.
    pub phi_half: u64,
    pub psi: u64,
}

pub fn arith_functions(n: u64) -> Result<ArithValues> {
    if n < 3 {
        return Err(Error::Argument(format!("N must be at least 3, got {n}")));
    }
    Ok(ArithValues {
        n,
        phi: euler_phi(n),
        phi_half: if n.is_even() { euler_phi(n / 2) } else { 0 },
        psi: psi(n),
    })
}

/// Counting data for `n = 4` at level `N`.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub n: u32,
    #[serde(rename = "N")]
    pub level: u64,
    pub phi: u64,
    pub phi_half: u64,
    pub psi: u64,
    pub nu_infinity: u64,
    /// `1` iff `N = 3`.
    pub epsilon: u64,
    #[serde(serialize_with = "ser_rational")]
    pub u4: Rational,
    /// `U_4(N)` without the `2/3 epsilon` term.
    #[serde(serialize_with = "ser_rational")]
    pub u4_without_epsilon: Rational,
    pub l4: u64,
    pub pl4: u64,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// `(U_4(N), U_4(N) without the epsilon term)`.
fn u4(n: u64) -> Result<(Rational, Rational, ArithValues, u64, u64)> {
    let a = arith_functions(n)?;
    let nu = 3 * a.phi + 4 * a.phi_half;
    let eps = u64::from(n == 3);
    let weight = rat(10) * rat(a.psi as i64);
    let base = (weight / rat(12) - rat(nu as i64)) * ratio(1, 2);
    let full = &base + ratio(2, 3) * rat(eps as i64);
    Ok((full, base, a, nu, eps))
}

fn l4(n: u64) -> Result<u64> {
    let (u, _, _, _, _) = u4(n)?;
    if !u.is_integer() || u < Rational::zero() {
        return Err(Error::Consistency(format!(
            "L_4({n}) = {u} is not a nonnegative integer"
        )));
    }
    u.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Consistency(format!("L_4({n}) overflows")))
}

pub fn counting(n: u32, level: u64) -> Result<CountReport> {
    if n != 4 {
        return Err(Error::Unsupported(format!(
            "counting formulas are implemented for n = 4, got {n}"
        )));
    }
    let (u4_value, without, a, nu, eps) = u4(level)?;
    let l = l4(level)?;
    let pl = if level.is_odd() {
        l + l4(2 * level)?
    } else {
        l4(2 * level)?
    };
    Ok(CountReport {
        n,
        level,
        phi: a.phi,
        phi_half: a.phi_half,
        psi: a.psi,
        nu_infinity: nu,
        epsilon: eps,
        u4: u4_value,
        u4_without_epsilon: without,
        l4: l,
        pl4: pl,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(psi(3), 8);
        assert!(arith_functions(2).is_err());
    }

    #[test]
    fn known_counts() {
        let l: Vec<u64> = (3..=6).map(|n| counting(4, n).unwrap().l4).collect();
        assert_eq!(l, vec![1, 0, 4, 3]);
        assert_eq!(counting(4, 3).unwrap().pl4, 4);
        assert_eq!(counting(4, 3).unwrap().u4_without_epsilon, ratio(1, 3));
    }
}
