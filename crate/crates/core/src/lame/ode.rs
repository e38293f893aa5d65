use num_traits::Zero;

use crate::algebra::{rat, ratio, Grading, MultiPoly, Var};
use crate::{Error, Result};

/// Polynomial in an auxiliary variable `x` (ascending coefficients) whose
/// coefficients are polynomials in the main alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XPoly {
    pub coeffs: Vec<MultiPoly>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<MultiPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    /// `x^m`.
    pub fn monomial(m: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(); m + 1];
        coeffs[m] = MultiPoly::one();
        XPoly { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> XPoly {
        XPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&rat(k as i64)))
                .collect(),
        )
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        XPoly::new((0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return XPoly::default();
        }
        let mut out = vec![MultiPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        XPoly::new(out)
    }

    pub fn scale(&self, c: &MultiPoly) -> XPoly {
        XPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn linear(c0: MultiPoly, c1: MultiPoly) -> XPoly {
        XPoly::new(vec![c0, c1])
    }
}

/// `p(x) = 4x^3 - g2 x - g3` and its derivative.
fn cubic_and_derivative() -> (XPoly, XPoly) {
    let g2 = MultiPoly::var(Var::G2);
    let g3 = MultiPoly::var(Var::G3);
    let p = XPoly::new(vec![-&g3, -&g2, MultiPoly::zero(), MultiPoly::int(4)]);
    let dp = XPoly::new(vec![-g2, MultiPoly::zero(), MultiPoly::int(12)]);
    (p, dp)
}

/// The fourth-order operator `L4` acting on `q(x)`:
///
/// `p^2 q'''' + 3 p p' q''' + (3/4 p'^2 - 2(2(n^2+n-12)x + beta) p) q''
///  - ((2(n^2+n-3)x + beta) p' + 6(n^2+n-2) p) q' + (alpha^2 - n(n+1) p') q`.
pub fn apply_tensor_ode(q: &XPoly, n: u32, alpha: &MultiPoly, beta: &MultiPoly) -> XPoly {
    let (p, dp) = cubic_and_derivative();
    let nn = (n * n + n) as i64;
    let q1 = q.derivative();
    let q2 = q1.derivative();
    let q3 = q2.derivative();
    let q4 = q3.derivative();

    let t1 = p.mul(&p).mul(&q4);
    let t2 = p.mul(&dp).mul(&q3).scale(&MultiPoly::int(3));
    let c2 = dp
        .mul(&dp)
        .scale(&MultiPoly::constant(ratio(3, 4)))
        .add(&XPoly::linear(beta.scale(&rat(-2)), MultiPoly::int(-4 * (nn - 12))).mul(&p));
    let t3 = c2.mul(&q2);
    let c1 = XPoly::linear(beta.clone(), MultiPoly::int(2 * (nn - 3)))
        .mul(&dp)
        .add(&p.scale(&MultiPoly::int(6 * (nn - 2))));
    let t4 = c1.mul(&q1).scale(&MultiPoly::int(-1));
    let c0 = XPoly::new(vec![alpha * alpha]).add(&dp.scale(&MultiPoly::int(-nn)));
    let t5 = c0.mul(q);
    t1.add(&t2).add(&t3).add(&t4).add(&t5)
}

/// Leading coefficient of `L4(x^m)` (the coefficient of `x^{m+2}`).
pub fn leading_factor(m: i64, n: i64) -> i64 {
    4 * (m - n) * (4 * m * m * m + (4 * n + 12) * m * m + (8 * n + 11) * m + 3 * (n + 1))
}

/// Spectral coefficients `s_0 = 1, s_1, ..., s_n` of
/// `q(x) = x^n - s_1 x^{n-1} + ... + (-1)^n s_n`, polynomials in
/// `alpha, beta, g2, g3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralCoeffs {
    pub n: u32,
    pub s: Vec<MultiPoly>,
}

impl SpectralCoeffs {
    /// `s_k`, with `s_k = 0` outside `0..=n`.
    pub fn get(&self, k: i64) -> MultiPoly {
        if k < 0 {
            MultiPoly::zero()
        } else {
            self.s.get(k as usize).cloned().unwrap_or_default()
        }
    }

    pub fn q_poly(&self) -> XPoly {
        let n = self.n as usize;
        let mut coeffs = vec![MultiPoly::zero(); n + 1];
        for (j, s) in self.s.iter().enumerate() {
            coeffs[n - j] = if j % 2 == 0 { s.clone() } else { -s };
        }
        XPoly::new(coeffs)
    }
}

/// Solve the triangular system making the coefficients of
/// `x^{n+1}, ..., x^2` in `L4 q` vanish. Returns the coefficients together with
/// the remaining linear remainder `F1 x + F0`.
fn solve_with_remainder(n: u32) -> Result<(SpectralCoeffs, XPoly)> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let alpha = MultiPoly::var(Var::Alpha);
    let beta = MultiPoly::var(Var::Beta);
    let images: Vec<XPoly> = (0..=n as usize)
        .map(|m| apply_tensor_ode(&XPoly::monomial(m), n, &alpha, &beta))
        .collect();
    let mut s = vec![MultiPoly::one()];
    let mut acc = images[n as usize].clone();
    for i in 1..=n as usize {
        let target = n as usize + 2 - i;
        let m = n as usize - i;
        let lead = leading_factor(m as i64, n as i64);
        if lead == 0 || images[m].coeff(m + 2) != MultiPoly::int(lead) {
            return Err(Error::Internal(format!(
                "unexpected leading coefficient of L4(x^{m}) for n = {n}"
            )));
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        // acc + sign * s_i * images[m] must vanish at x^target.
        let s_i = acc.coeff(target).scale(&ratio(-sign, lead));
        acc = acc.add(&images[m].scale(&s_i.scale(&rat(sign))));
        s.push(s_i);
    }
    for k in 2..acc.coeffs.len() {
        if !acc.coeffs[k].is_zero() {
            return Err(Error::Internal(format!(
                "coefficient of x^{k} in L4 q did not vanish for n = {n}"
            )));
        }
    }
    Ok((SpectralCoeffs { n, s }, acc))
}

pub fn solve_spectral_coeffs(n: u32) -> Result<SpectralCoeffs> {
    Ok(solve_with_remainder(n)?.0)
}

/// `l_n(B) = 4B s_n^2 + 4 g3 s_{n-2} s_n - g2 s_{n-1} s_n - g3 s_{n-1}^2`
/// at `alpha = 0`, `beta = 2B`.
pub fn assemble_ell(n: u32) -> Result<MultiPoly> {
    let coeffs = solve_spectral_coeffs(n)?;
    let two_b = MultiPoly::var(Var::B).scale(&rat(2));
    let at_branch = |k: i64| {
        coeffs
            .get(k)
            .specialize(&[(Var::Alpha, num_rational::BigRational::zero())])
            .substitute(Var::Beta, &two_b)
    };
    let n = n as i64;
    let (sn, sn1, sn2) = (at_branch(n), at_branch(n - 1), at_branch(n - 2));
    let b = MultiPoly::var(Var::B);
    let g2 = MultiPoly::var(Var::G2);
    let g3 = MultiPoly::var(Var::G3);
    let ell = &(&(&(&b * &sn.pow(2)).scale(&rat(4)) + &(&(&g3 * &sn2) * &sn).scale(&rat(4)))
        - &(&(&g2 * &sn1) * &sn))
        - &(&g3 * &sn1.pow(2));
    let report = ell.weighted_degree(Grading::S)?;
    if !report.homogeneous || report.max != 2 * n as u32 + 1 {
        return Err(Error::Internal(format!(
            "spectral polynomial for n = {n} is not homogeneous of weight {}",
            2 * n + 1
        )));
    }
    Ok(ell)
}

/// The compatibility pair: `L4 q = F1 x + F0` with `F1 = alpha^2 G1`,
/// `F0 = alpha^2 G0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyPair {
    pub n: u32,
    pub f1: MultiPoly,
    pub f0: MultiPoly,
    pub g1: MultiPoly,
    pub g0: MultiPoly,
}

pub fn consistency_polys(n: u32) -> Result<ConsistencyPair> {
    if n < 2 {
        return Err(Error::Argument(format!(
            "compatibility equations need n >= 2, got {n}"
        )));
    }
    let (_, rem) = solve_with_remainder(n)?;
    let f1 = rem.coeff(1);
    let f0 = rem.coeff(0);
    let a2 = MultiPoly::var(Var::Alpha).pow(2);
    let divide = |f: &MultiPoly| {
        f.exact_div(&a2)
            .map_err(|e| Error::Internal(format!("F not divisible by alpha^2: {e}")))
    };
    let g1 = divide(&f1)?;
    let g0 = divide(&f0)?;
    Ok(ConsistencyPair { n, f1, f0, g1, g0 })
}
