use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Integer as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced [`Rational`].
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub const NVARS: usize = 11;

/// The fixed variable alphabet. The declaration order is the order used by
/// exponent vectors and by the lexicographic tie-break of the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    B,
    G2,
    G3,
    E1,
    E2,
    E3,
    X0,
    Y0,
    Z,
    Alpha,
    Beta,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::B,
        Var::G2,
        Var::G3,
        Var::E1,
        Var::E2,
        Var::E3,
        Var::X0,
        Var::Y0,
        Var::Z,
        Var::Alpha,
        Var::Beta,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::B => "B",
            Var::G2 => "g2",
            Var::G3 => "g3",
            Var::E1 => "e1",
            Var::E2 => "e2",
            Var::E3 => "e3",
            Var::X0 => "x0",
            Var::Y0 => "y0",
            Var::Z => "z",
            Var::Alpha => "alpha",
            Var::Beta => "beta",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }

    /// The half-period value `e_i` for `i` in `1..=3`.
    pub fn e(i: usize) -> Var {
        match i {
            1 => Var::E1,
            2 => Var::E2,
            3 => Var::E3,
            _ => panic!("half-period index must be 1, 2 or 3, got {i}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Weight gradings on the alphabet.
///
/// `S` is the spectral grading (`B`, `e_i`, `alpha`, `beta` of weight 1, `g2`
/// of weight 2, `g3` of weight 3); `x0`, `y0`, `z` carry weight 0 there.
/// `M` is the modular grading (`z`, `x0`, `y0`, `g2`, `g3` of weight 1, 2, 3,
/// 4, 6); the spectral variables get twice their `S` weight so that the
/// elimination inputs are homogeneous as well.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    S,
    M,
}

impl Grading {
    pub fn weight(self, v: Var) -> u32 {
        match (self, v) {
            (Grading::S, Var::B | Var::E1 | Var::E2 | Var::E3 | Var::Alpha | Var::Beta) => 1,
            (Grading::S, Var::G2) => 2,
            (Grading::S, Var::G3) => 3,
            (Grading::S, Var::X0 | Var::Y0 | Var::Z) => 0,
            (Grading::M, Var::Z) => 1,
            (Grading::M, Var::X0) => 2,
            (Grading::M, Var::Y0) => 3,
            (Grading::M, Var::G2) => 4,
            (Grading::M, Var::G3) => 6,
            (Grading::M, _) => 2,
        }
    }
}

/// Extremal monomial weights of a nonzero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub min: u32,
    pub max: u32,
    pub homogeneous: bool,
}

/// Exponent vector with its cached total degree. The derived ordering compares
/// total degree first and then the exponents lexicographically in alphabet
/// order, i.e. graded lex with `B` most significant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: [u16; NVARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exps(exps: [u16; NVARS]) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { degree, exps }
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut exps = [0; NVARS];
        exps[v.index()] = e;
        Self::from_exps(exps)
    }

    pub fn exps(&self) -> &[u16; NVARS] {
        &self.exps
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn with_exp(&self, v: Var, e: u16) -> Self {
        let mut exps = self.exps;
        exps[v.index()] = e;
        Self::from_exps(exps)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exps,
        })
    }

    pub fn weight(&self, grading: Grading) -> u32 {
        Var::ALL
            .iter()
            .map(|&v| grading.weight(v) * self.exp(v) as u32)
            .sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over `Q` in the fixed alphabet [`Var`].
///
/// Terms live in a `BTreeMap` keyed by [`Monomial`], so the representation is
/// canonical: zero coefficients are never stored and equal polynomials are
/// structurally equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of the monomial `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in the graded lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.first_key_value()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Quotient of an exact division; any nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (dm, dc) = divisor
            .leading_term()
            .ok_or_else(|| Error::Division("division by the zero polynomial".into()))?;
        if dm.is_one() {
            return Ok(self.scale(&dc.recip()));
        }
        let dc_inv = dc.recip();
        let mut rem = self.terms.clone();
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = rem.last_key_value() {
            let qm = m.divide(dm).ok_or_else(|| {
                Error::Division(format!("term {m} is not divisible by {dm}: nonzero remainder"))
            })?;
            let qc = c * &dc_inv;
            for (tm, tc) in divisor.terms.iter() {
                let key = tm.mul(&qm);
                let delta = &qc * tc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= &delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quotient.insert(qm, qc);
        }
        Ok(MultiPoly { terms: quotient })
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Degree in `v`, or `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v) as u32).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Coefficient of `v^k`, a polynomial free of `v`.
    pub fn coeff_of(&self, v: Var, k: u16) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    pub fn as_uni(&self, v: Var) -> UniPolyView {
        UniPolyView::new(self, v)
    }

    /// Replace `v` by the polynomial `value`.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let view = self.as_uni(v);
        // Horner in the substituted value.
        let mut acc = MultiPoly::zero();
        for c in view.coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Substitute rational constants for the listed variables.
    pub fn specialize(&self, values: &[(Var, Rational)]) -> MultiPoly {
        let mut powers: Vec<Vec<Rational>> = vec![Vec::new(); NVARS];
        let mut out: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in self.terms.iter() {
            let mut coeff = c.clone();
            let mut exps = *m.exps();
            for (v, val) in values {
                let e = exps[v.index()] as usize;
                if e == 0 {
                    continue;
                }
                let table = &mut powers[v.index()];
                if table.is_empty() {
                    table.push(Rational::one());
                }
                while table.len() <= e {
                    let next = table.last().unwrap() * val;
                    table.push(next);
                }
                coeff *= &table[e];
                exps[v.index()] = 0;
            }
            *out.entry(Monomial::from_exps(exps)).or_insert_with(Rational::zero) += coeff;
        }
        MultiPoly {
            terms: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Exchange the roles of two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = *m.exps();
                    exps.swap(a.index(), b.index());
                    (Monomial::from_exps(exps), c.clone())
                })
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms.iter() {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), &(c * rat(e as i64)));
            }
        }
        out
    }

    pub fn eval_complex(&self, values: &[Complex64; NVARS]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * monomial_value(m, values))
            .sum()
    }

    /// Sum of absolute values of the evaluated terms; the natural magnitude
    /// scale for residual tests.
    pub fn eval_complex_scale(&self, values: &[Complex64; NVARS]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| (c.to_f64().unwrap_or(f64::NAN) * monomial_value(m, values)).norm())
            .sum()
    }

    /// Weighted degree report; the zero polynomial is rejected.
    pub fn weighted_degree(&self, grading: Grading) -> Result<WeightReport> {
        let mut weights = self.terms.keys().map(|m| m.weight(grading));
        let first = weights
            .next()
            .ok_or_else(|| Error::Argument("weighted degree of the zero polynomial".into()))?;
        let (min, max) = weights.fold((first, first), |(lo, hi), w| (lo.min(w), hi.max(w)));
        Ok(WeightReport {
            min,
            max,
            homogeneous: min == max,
        })
    }

    /// Rewrite `y0^k`, `k >= 2`, through `y0^2 = 4 x0^3 - g2 x0 - g3`.
    pub fn reduce_y0(&self) -> MultiPoly {
        let curve = weierstrass_cubic(Var::X0);
        let mut curve_powers = vec![MultiPoly::one()];
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms.iter() {
            let e = m.exp(Var::Y0);
            if e < 2 {
                out.add_term(*m, c);
                continue;
            }
            let half = (e / 2) as usize;
            while curve_powers.len() <= half {
                let next = curve_powers.last().unwrap() * &curve;
                curve_powers.push(next);
            }
            let rest = m.with_exp(Var::Y0, e % 2);
            out += curve_powers[half].mul_monomial(&rest, c);
        }
        out
    }

    /// Scale to a primitive integer polynomial with positive leading
    /// coefficient. Returns `(factor, factor * self)`.
    pub fn primitive_integer(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), MultiPoly::zero());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = BigRational::new(den, num);
        if self.leading_term().unwrap().1.is_negative() {
            factor = -factor;
        }
        let scaled = self.scale(&factor);
        (factor, scaled)
    }

    /// Convert once to floating coefficients for repeated evaluation.
    pub fn to_numeric(&self) -> NumericPoly {
        NumericPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (c.to_f64().unwrap_or(f64::NAN), *m.exps()))
                .collect(),
        }
    }
}

fn monomial_value(m: &Monomial, values: &[Complex64; NVARS]) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            acc *= values[i].powu(e as u32);
        }
    }
    acc
}

/// `4 t^3 - g2 t - g3` in the variable `t`.
pub(crate) fn weierstrass_cubic(t: Var) -> MultiPoly {
    let t = MultiPoly::var(t);
    &(&t.pow(3).scale(&rat(4)) - &(&MultiPoly::var(Var::G2) * &t)) - &MultiPoly::var(Var::G3)
}

/// Floating-point copy of a polynomial for hot evaluation loops.
#[derive(Clone, Debug)]
pub struct NumericPoly {
    terms: Vec<(f64, [u16; NVARS])>,
}

impl NumericPoly {
    pub fn eval(&self, values: &[Complex64; NVARS]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, e)| *c * monomial_value(&Monomial::from_exps(*e), values))
            .sum()
    }

    pub fn eval_scale(&self, values: &[Complex64; NVARS]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| (*c * monomial_value(&Monomial::from_exps(*e), values)).norm())
            .sum()
    }
}

fn mul_polys(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(a.len() * b.len());
    for (ma, ca) in a.terms.iter() {
        for (mb, cb) in b.terms.iter() {
            let prod = ca * cb;
            match acc.get_mut(&ma.mul(mb)) {
                Some(v) => *v += prod,
                None => {
                    acc.insert(ma.mul(mb), prod);
                }
            }
        }
    }
    MultiPoly {
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

impl<'a> Add<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        mul_polys(self, rhs)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        mul_polys(&self, &rhs)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in rhs.terms.iter() {
            self.add_term(*m, c);
        }
    }
}

impl AddAssign for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in rhs.terms.iter() {
            self.add_term(*m, &-c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending monomial order, e.g. `z^3 - 3*x0*z - y0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// A polynomial viewed as univariate in `var` with polynomial coefficients.
/// `coeffs[k]` multiplies `var^k`; trailing zero coefficients are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPolyView {
    pub var: Var,
    pub coeffs: Vec<MultiPoly>,
}

impl UniPolyView {
    pub fn new(p: &MultiPoly, var: Var) -> Self {
        let deg = p.degree_in(var).map(|d| d as usize + 1).unwrap_or(0);
        let mut coeffs = vec![MultiPoly::zero(); deg];
        for (m, c) in p.terms() {
            let e = m.exp(var) as usize;
            coeffs[e].terms.insert(m.with_exp(var, 0), c.clone());
        }
        UniPolyView { var, coeffs }
    }

    pub fn from_coeffs(var: Var, mut coeffs: Vec<MultiPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPolyView { var, coeffs }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out += c.mul_monomial(&Monomial::var(self.var, k as u16), &Rational::one());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn difference_of_squares() {
        let p = &v(Var::B) + &v(Var::G2);
        let q = &v(Var::B) - &v(Var::G2);
        let expected = &v(Var::B).pow(2) - &v(Var::G2).pow(2);
        assert_eq!(&p * &q, expected);
    }

    #[test]
    fn exact_division_cancels_monomial() {
        let a2 = v(Var::Alpha).pow(2);
        let p = &a2 * &v(Var::Beta);
        assert_eq!(p.exact_div(&a2).unwrap(), v(Var::Beta));
    }

    #[test]
    fn exact_division_rejects_remainder() {
        let p = &v(Var::B).pow(2) + &MultiPoly::one();
        assert!(matches!(p.exact_div(&v(Var::B)), Err(Error::Division(_))));
        assert!(matches!(p.exact_div(&MultiPoly::zero()), Err(Error::Division(_))));
    }

    #[test]
    fn exact_division_multivariate() {
        let a = &(&v(Var::B) + &v(Var::G2).scale(&ratio(3, 7))) - &v(Var::Z);
        let b = &(&v(Var::X0).pow(2) * &v(Var::Y0)) + &MultiPoly::int(-5);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn weighted_degrees() {
        let p = &v(Var::B) + &v(Var::G2);
        let r = p.weighted_degree(Grading::S).unwrap();
        assert_eq!((r.min, r.max, r.homogeneous), (1, 2, false));
        assert!(MultiPoly::zero().weighted_degree(Grading::S).is_err());
    }

    #[test]
    fn y0_reduction() {
        let cubic = weierstrass_cubic(Var::X0);
        assert_eq!(v(Var::Y0).pow(2).reduce_y0(), cubic);
        assert_eq!(v(Var::Y0).pow(3).reduce_y0(), &v(Var::Y0) * &cubic);
        let p = &v(Var::X0) * &v(Var::Z);
        assert_eq!(p.reduce_y0(), p);
    }

    #[test]
    fn display_order() {
        let w2 = &(&v(Var::Z).pow(3) - &(&v(Var::X0) * &v(Var::Z)).scale(&rat(3))) - &v(Var::Y0);
        assert_eq!(w2.to_string(), "z^3 - 3*x0*z - y0");
    }

    #[test]
    fn uni_view_reassembles() {
        let p = &(&v(Var::B).pow(3) * &v(Var::G2)) + &(&v(Var::B) * &v(Var::X0)).scale(&ratio(-1, 2));
        let view = p.as_uni(Var::B);
        assert_eq!(view.degree(), Some(3));
        assert_eq!(view.leading().unwrap(), &v(Var::G2));
        assert_eq!(view.to_poly(), p);
    }

    #[test]
    fn primitive_integer_scaling() {
        let p = &v(Var::B).scale(&ratio(-3, 4)) + &v(Var::G2).scale(&ratio(9, 2));
        let (factor, q) = p.primitive_integer();
        assert_eq!(factor, ratio(-4, 3));
        assert_eq!(q, &v(Var::B) - &v(Var::G2).scale(&rat(6)));
    }
}
