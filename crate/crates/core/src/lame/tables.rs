use crate::algebra::{ratio, symmetric_reduce, Grading, MultiPoly, Rational, Var};
use crate::{Error, Result};

/// Factored data of the spectral polynomial and the twisted Lamé polynomials.
///
/// The species-dependent factors `l_i`, `lt_i` are stored once with the
/// symbolic half-period value written as `e1`; [`SpectralTables::l`] and
/// [`SpectralTables::lt`] instantiate them at `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralTables {
    pub n: u32,
    pub c_sq: Rational,
    pub l0: MultiPoly,
    pub l_e: MultiPoly,
    pub lt0: MultiPoly,
    pub lt_e: MultiPoly,
    pub l_theta: MultiPoly,
}

impl SpectralTables {
    /// `l_i(B)` for `i` in `1..=3`.
    pub fn l(&self, i: usize) -> MultiPoly {
        instantiate(&self.l_e, i)
    }

    /// `lt_i(B)` for `i` in `1..=3`.
    pub fn lt(&self, i: usize) -> MultiPoly {
        instantiate(&self.lt_e, i)
    }

    /// `c_n^2 l_0 l_1 l_2 l_3` with the `e_i` eliminated.
    pub fn ell(&self) -> Result<MultiPoly> {
        factored_product(&self.c_sq, &self.l0, &self.l_e)
    }

    /// All factors, in the order `l0, l1, l2, l3, lt0, lt1, lt2, lt3, l_theta`.
    pub fn factors(&self) -> Vec<MultiPoly> {
        let mut out = vec![self.l0.clone()];
        out.extend((1..=3).map(|i| self.l(i)));
        out.push(self.lt0.clone());
        out.extend((1..=3).map(|i| self.lt(i)));
        out.push(self.l_theta.clone());
        out
    }
}

fn instantiate(p: &MultiPoly, i: usize) -> MultiPoly {
    if i == 1 {
        p.clone()
    } else {
        p.swap_vars(Var::E1, Var::e(i))
    }
}

fn factored_product(c_sq: &Rational, l0: &MultiPoly, l_e: &MultiPoly) -> Result<MultiPoly> {
    let mut prod = l0.scale(c_sq);
    for i in 1..=3 {
        prod = &prod * &instantiate(l_e, i);
    }
    symmetric_reduce(&prod)
}

fn parse(s: &str) -> MultiPoly {
    s.parse().expect("table entries are well formed")
}

/// `(c_n^2, l_0, l_e)` for `1 <= n <= 5`.
fn ordinary_factors(n: u32) -> Result<(Rational, &'static str, &'static str)> {
    let data = match n {
        1 => (ratio(4, 1), "1", "B - e1"),
        2 => (ratio(4, 81), "B^2 - 3*g2", "B + 3*e1"),
        3 => (ratio(4, 50625), "B", "B^2 - 6*e1*B + 15*(3*e1^2 - g2)"),
        4 => (
            ratio(4, 3i64.pow(4) * 5i64.pow(4) * 7i64.pow(4)),
            "B^3 - 52*g2*B + 560*g3",
            "B^2 + 10*e1*B - 7*(5*e1^2 + g2)",
        ),
        5 => (
            ratio(4, 3i64.pow(12) * 5i64.pow(4) * 7i64.pow(4)),
            "B^2 - 27*g2",
            "B^3 - 15*e1*B^2 + (315*e1^2 - 132*g2)*B + e1*(2835*e1^2 - 540*g2)",
        ),
        _ => {
            return Err(Error::Unsupported(format!(
                "factored spectral polynomial is tabulated for n <= 5, got {n}"
            )))
        }
    };
    Ok(data)
}

/// `c_n^2`, fixed so that `c_n^2 l_0 l_1 l_2 l_3` is the spectral polynomial
/// produced by the recursion.
pub fn spectral_constant(n: u32) -> Result<Rational> {
    Ok(ordinary_factors(n)?.0)
}

/// Symmetric-reduced `c_n^2 l_0 l_1 l_2 l_3` from the factor tables, `n <= 5`.
pub fn factored_ell(n: u32) -> Result<MultiPoly> {
    let (c_sq, l0, l_e) = ordinary_factors(n)?;
    factored_product(&c_sq, &parse(l0), &parse(l_e))
}

/// Exact tables for `1 <= n <= 4`.
pub fn load_tables(n: u32) -> Result<SpectralTables> {
    let (lt0, lt_e, l_theta) = match n {
        1 => ("1", "1", "1"),
        2 => ("1", "B - 6*e1", "1"),
        3 => ("B^2 - 75/4*g2", "B^2 - 15*e1*B + 75/4*g2 - 225*e1^2", "1"),
        4 => (
            "B^3 - 343/4*g2*B - 1715/2*g3",
            "B^4 - 55*e1*B^3 + (539/4*g2 - 945*e1^2)*B^2 + (1960*e1*g2 + 2450*g3)*B \
             + 61740*e1^2*g2 - 68600*e1*g3 - 9261*g2^2",
            "B^2 - 196/3*g2",
        ),
        _ => {
            return Err(Error::Unsupported(format!(
                "twisted tables exist for 1 <= n <= 4, got {n}"
            )))
        }
    };
    let (c_sq, l0, l_e) = ordinary_factors(n)?;
    let tables = SpectralTables {
        n,
        c_sq,
        l0: parse(l0),
        l_e: parse(l_e),
        lt0: parse(lt0),
        lt_e: parse(lt_e),
        l_theta: parse(l_theta),
    };
    for f in tables.factors() {
        let monic = f
            .as_uni(Var::B)
            .leading()
            .is_some_and(|c| *c == MultiPoly::one());
        let homogeneous = f.weighted_degree(Grading::S)?.homogeneous;
        if !monic || !homogeneous {
            return Err(Error::Internal(format!(
                "table factor {f} is not monic homogeneous"
            )));
        }
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_range() {
        assert!(matches!(load_tables(5), Err(Error::Unsupported(_))));
        assert!(matches!(load_tables(0), Err(Error::Unsupported(_))));
        assert!(matches!(factored_ell(6), Err(Error::Unsupported(_))));
    }

    #[test]
    fn species_instantiation() {
        let t = load_tables(2).unwrap();
        assert_eq!(t.lt(3), "B - 6*e3".parse().unwrap());
        assert_eq!(t.l(2), "B + 3*e2".parse().unwrap());
    }
}
