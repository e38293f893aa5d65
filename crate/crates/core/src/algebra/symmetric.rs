use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::poly::{ratio, MultiPoly, Rational, Var};
use crate::{Error, Result};

type EExps = [u16; 3];
type EPoly = BTreeMap<EExps, Rational>;

const E_VARS: [Var; 3] = [Var::E1, Var::E2, Var::E3];

/// Eliminate `e1, e2, e3` from a polynomial symmetric in them, using
/// `e1 + e2 + e3 = 0`, `e1 e2 + e1 e3 + e2 e3 = -g2/4`, `e1 e2 e3 = g3/4`.
///
/// Runs the classical leading-term algorithm on the `e`-part; an `e`-exponent
/// that is not weakly decreasing at the leading position proves the input was
/// not symmetric.
pub fn symmetric_reduce(p: &MultiPoly) -> Result<MultiPoly> {
    if !E_VARS.iter().any(|&v| p.contains(v)) {
        return Ok(p.clone());
    }
    let mut parts: BTreeMap<EExps, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let key = [m.exp(Var::E1), m.exp(Var::E2), m.exp(Var::E3)];
        let rest = m
            .with_exp(Var::E1, 0)
            .with_exp(Var::E2, 0)
            .with_exp(Var::E3, 0);
        parts.entry(key).or_default().add_term(rest, c);
    }

    let g2_quarter = MultiPoly::var(Var::G2).scale(&ratio(-1, 4));
    let g3_quarter = MultiPoly::var(Var::G3).scale(&ratio(1, 4));
    let mut elementary = ElementaryCache::default();
    let mut out = MultiPoly::zero();

    while let Some((&key, coeff)) = parts.last_key_value() {
        let coeff = coeff.clone();
        let [a, b, c] = key;
        if a < b || b < c {
            return Err(Error::Symmetry(format!(
                "residual e-monomial e1^{a}*e2^{b}*e3^{c} after reduction"
            )));
        }
        let (k1, k2, k3) = (a - b, b - c, c);
        if k1 == 0 {
            let value = &g2_quarter.pow(k2 as u32) * &g3_quarter.pow(k3 as u32);
            out += &coeff * &value;
        }
        for (exps, r) in elementary.product(k1, k2, k3).iter() {
            let entry = parts.entry(*exps).or_default();
            *entry -= &coeff.scale(r);
        }
        // The leading term cancels by construction; drop any emptied entries.
        parts.retain(|_, v| !v.is_zero());
    }
    Ok(out)
}

/// Expansions of `s1^k1 s2^k2 s3^k3` in the `e`-variables.
#[derive(Default)]
struct ElementaryCache {
    cache: HashMap<(u16, u16, u16), EPoly>,
}

impl ElementaryCache {
    fn product(&mut self, k1: u16, k2: u16, k3: u16) -> &EPoly {
        self.cache.entry((k1, k2, k3)).or_insert_with(|| {
            let s1 = epoly(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
            let s2 = epoly(&[[1, 1, 0], [1, 0, 1], [0, 1, 1]]);
            let s3 = epoly(&[[1, 1, 1]]);
            let mut acc = epoly(&[[0, 0, 0]]);
            for (base, k) in [(&s1, k1), (&s2, k2), (&s3, k3)] {
                for _ in 0..k {
                    acc = emul(&acc, base);
                }
            }
            acc
        })
    }
}

fn epoly(monos: &[EExps]) -> EPoly {
    monos.iter().map(|m| (*m, Rational::one())).collect()
}

fn emul(a: &EPoly, b: &EPoly) -> EPoly {
    let mut out = EPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let key = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
            *out.entry(key).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> MultiPoly {
        MultiPoly::var(Var::e(i))
    }

    #[test]
    fn elementary_values() {
        let s1 = &(&e(1) + &e(2)) + &e(3);
        assert!(symmetric_reduce(&s1).unwrap().is_zero());
        let s2 = &(&(&e(1) * &e(2)) + &(&e(1) * &e(3))) + &(&e(2) * &e(3));
        assert_eq!(
            symmetric_reduce(&s2).unwrap(),
            MultiPoly::var(Var::G2).scale(&ratio(-1, 4))
        );
        let s3 = &(&e(1) * &e(2)) * &e(3);
        assert_eq!(
            symmetric_reduce(&s3).unwrap(),
            MultiPoly::var(Var::G3).scale(&ratio(1, 4))
        );
    }

    #[test]
    fn power_sum() {
        let p2 = &(&e(1).pow(2) + &e(2).pow(2)) + &e(3).pow(2);
        assert_eq!(
            symmetric_reduce(&p2).unwrap(),
            MultiPoly::var(Var::G2).scale(&ratio(1, 2))
        );
    }

    #[test]
    fn product_over_roots() {
        // prod (x0 - e_i) = (4 x0^3 - g2 x0 - g3) / 4
        let x = MultiPoly::var(Var::X0);
        let prod = &(&(&x - &e(1)) * &(&x - &e(2))) * &(&x - &e(3));
        let expected = super::super::poly::weierstrass_cubic(Var::X0).scale(&ratio(1, 4));
        assert_eq!(symmetric_reduce(&prod).unwrap(), expected);
    }

    #[test]
    fn asymmetric_rejected() {
        let p = &e(1) - &e(2);
        assert!(matches!(symmetric_reduce(&p), Err(Error::Symmetry(_))));
    }
}
