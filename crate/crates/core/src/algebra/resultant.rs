use rayon::prelude::*;

use super::poly::{MultiPoly, UniPolyView};
use crate::{Error, Result};

/// Sylvester matrix of `p` and `q` in their common variable: `deg q` shifted
/// rows of `p` coefficients followed by `deg p` shifted rows of `q`, highest
/// power first.
pub fn sylvester(p: &UniPolyView, q: &UniPolyView) -> Result<Vec<Vec<MultiPoly>>> {
    if p.var != q.var {
        return Err(Error::Argument(format!(
            "resultant variables differ: {} vs {}",
            p.var, q.var
        )));
    }
    let dp = positive_degree(p)?;
    let dq = positive_degree(q)?;
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    for (count, poly, deg) in [(dq, p, dp), (dp, q, dq)] {
        for r in 0..count {
            let mut row = vec![MultiPoly::zero(); size];
            for k in 0..=deg {
                row[r + (deg - k)] = poly.coeffs[k].clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

fn positive_degree(p: &UniPolyView) -> Result<usize> {
    match p.degree() {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::Argument(format!(
            "resultant needs positive degree in {}",
            p.var
        ))),
    }
}

/// Determinant by fraction-free Bareiss elimination. Every division is exact;
/// a failing division means the input was not a polynomial matrix over a
/// domain and is reported as an internal error.
pub fn bareiss_det(matrix: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Argument("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    let mut m = matrix;
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        // Prefer the sparsest available pivot to keep intermediate entries small.
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].len());
        let Some(pivot) = pivot else {
            return Ok(MultiPoly::zero());
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pkk = &pivot_row[k];
        rest.par_iter_mut().try_for_each(|row| -> Result<()> {
            let rik = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = &row[j] * pkk;
                if !rik.is_zero() && !pivot_row[j].is_zero() {
                    v -= &(&rik * &pivot_row[j]);
                }
                row[j] = v.exact_div(&prev).map_err(|e| {
                    Error::Internal(format!("Bareiss step {k} lost exactness: {e}"))
                })?;
            }
            Ok(())
        })?;
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Resultant of `p` and `q` in their common variable.
pub fn resultant(p: &UniPolyView, q: &UniPolyView) -> Result<MultiPoly> {
    bareiss_det(sylvester(p, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Var};

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn linear_pair() {
        let p = &v(Var::B) - &v(Var::G2);
        let q = &v(Var::B) - &v(Var::G3);
        let r = resultant(&p.as_uni(Var::B), &q.as_uni(Var::B)).unwrap();
        assert_eq!(r, &v(Var::G2) - &v(Var::G3));
    }

    #[test]
    fn evaluation_identity() {
        let x = v(Var::Z);
        let p = &x.pow(2) - &MultiPoly::one();
        let q = &x - &MultiPoly::int(2);
        let r = resultant(&p.as_uni(Var::Z), &q.as_uni(Var::Z)).unwrap();
        assert_eq!(r, MultiPoly::int(3));
    }

    #[test]
    fn degree_zero_rejected() {
        let p = v(Var::B);
        let q = v(Var::G2);
        assert!(matches!(
            resultant(&p.as_uni(Var::B), &q.as_uni(Var::B)),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn determinant_with_zero_pivot() {
        let m = vec![
            vec![MultiPoly::zero(), MultiPoly::one()],
            vec![MultiPoly::one(), MultiPoly::zero()],
        ];
        assert_eq!(bareiss_det(m).unwrap(), MultiPoly::int(-1));
        let m = vec![
            vec![MultiPoly::int(2), MultiPoly::int(4)],
            vec![MultiPoly::int(1), MultiPoly::int(2)],
        ];
        assert!(bareiss_det(m).unwrap().is_zero());
        let m = vec![vec![v(Var::B).scale(&rat(3))]];
        assert_eq!(bareiss_det(m).unwrap(), v(Var::B).scale(&rat(3)));
    }
}
