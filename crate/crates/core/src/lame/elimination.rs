use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::reference::{reference_lambda, reference_wn};
use super::tables::load_tables;
use crate::algebra::{rat, ratio, resultant, symmetric_reduce, MultiPoly, Rational, Var};
use crate::{Error, Result};

/// The elimination inputs `(f, g)` in `Q[B, g2, g3, x0, y0, z]`.
///
/// Both are scaled to primitive integer polynomials with positive leading
/// coefficient; the scale factor of `Res_B(f, g)` depends on this choice.
pub fn build_fg(n: u32) -> Result<(MultiPoly, MultiPoly)> {
    let t = load_tables(n)?;
    let n = n as i64;
    let k = n * n * (n + 1) * (n + 1);
    let x0 = MultiPoly::var(Var::X0);
    let y0 = MultiPoly::var(Var::Y0);
    let z = MultiPoly::var(Var::Z);
    let base = &t.l0 * &t.lt0.pow(2);

    let mut species_sum = MultiPoly::zero();
    for i in 1..=3 {
        species_sum += &t.l(i) * &t.lt(i).pow(2);
    }
    let f = &species_sum.scale(&ratio(1, 3)) - &(&x0 * &base).scale(&ratio(k, 4));

    let mut twisted = MultiPoly::one();
    for i in 1..=3 {
        twisted = &twisted * &t.lt(i);
    }
    let g = &(&z * &twisted)
        - &(&(&y0 * &base) * &t.l_theta).scale(&ratio(k * (n - 1) * (n + 2), 16));

    let f = symmetric_reduce(&f)?.primitive_integer().1;
    let g = symmetric_reduce(&g)?.primitive_integer().1;
    Ok((f, g))
}

/// Result of the full symbolic elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub n: u32,
    pub f: MultiPoly,
    pub g: MultiPoly,
    /// `Res_B(f, g)` as computed (before using the curve equation).
    pub resultant: MultiPoly,
    /// The `z`-free content, with `y0^2` rewritten through the curve equation.
    pub lambda: MultiPoly,
    /// Monic in `z`, `y0`-degree at most one.
    pub wn: MultiPoly,
}

/// One rational point `(g2, g3, x0, y0)` with `y0^2 = 4x0^3 - g2 x0 - g3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    pub g2: Rational,
    pub g3: Rational,
    pub x0: Rational,
    pub y0: Rational,
}

impl CurvePoint {
    fn assignments(&self) -> [(Var, Rational); 4] {
        [
            (Var::G2, self.g2.clone()),
            (Var::G3, self.g3.clone()),
            (Var::X0, self.x0.clone()),
            (Var::Y0, self.y0.clone()),
        ]
    }

    pub fn discriminant(&self) -> Rational {
        self.g2.pow(3) - self.g3.pow(2) * rat(27)
    }
}

/// Outcome of comparing the specialized resultant with `lambda * W`.
#[derive(Clone, Debug)]
pub struct SpecializationCheck {
    pub point: CurvePoint,
    pub matches: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnMode {
    /// Symbolic resultant in all variables.
    Full,
    /// Check the tabulated `W_n` and scale factor at seeded rational points.
    Specialized { draws: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct WnReport {
    pub n: u32,
    pub wn: MultiPoly,
    pub lambda: MultiPoly,
    pub checks: Vec<SpecializationCheck>,
}

/// Symbolic elimination `Res_B(f, g) = lambda_n W_n(z)`.
pub fn eliminate(n: u32) -> Result<Elimination> {
    let (f, g) = build_fg(n)?;
    if n == 1 {
        // f = B - x0 and g = z: B does not occur in g, the cover is the curve itself.
        return Ok(Elimination {
            n,
            resultant: g.clone(),
            lambda: MultiPoly::one(),
            wn: g.clone(),
            f,
            g,
        });
    }
    let res = resultant(&f.as_uni(Var::B), &g.as_uni(Var::B))?;
    let reduced = res.reduce_y0();
    let view = reduced.as_uni(Var::Z);
    let expected = (n * (n + 1) / 2) as usize;
    if view.degree() != Some(expected) {
        return Err(Error::Elimination(format!(
            "resultant has z-degree {:?}, expected {expected}",
            view.degree()
        )));
    }
    let lambda = view.leading().cloned().unwrap_or_default();
    let wn = reduced
        .exact_div(&lambda)
        .map_err(|e| Error::Elimination(format!("content extraction failed: {e}")))?;
    if wn.degree_in(Var::Y0).unwrap_or(0) > 1 || wn.contains(Var::B) {
        return Err(Error::Elimination("W_n is not reduced in y0".into()));
    }
    Ok(Elimination {
        n,
        f,
        g,
        resultant: res,
        lambda,
        wn,
    })
}

/// Random rational curve point with nonzero discriminant and `y0 != 0`.
pub fn random_curve_point<R: Rng>(rng: &mut R) -> CurvePoint {
    let draw = |rng: &mut R| {
        let num: i64 = rng.gen_range(-30..=30);
        let den: i64 = rng.gen_range(1..=7);
        ratio(num, den)
    };
    loop {
        let x0 = draw(rng);
        let y0 = draw(rng);
        let g2 = draw(rng);
        let g3 = x0.pow(3) * rat(4) - &g2 * &x0 - y0.pow(2);
        let point = CurvePoint { g2, g3, x0, y0 };
        if !point.y0.is_zero() && !point.discriminant().is_zero() {
            return point;
        }
    }
}

/// `Res_B(f, g)` at a point, compared with `lambda * w` at the same point.
pub fn check_specialization(
    f: &MultiPoly,
    g: &MultiPoly,
    w: &MultiPoly,
    lambda: &MultiPoly,
    point: &CurvePoint,
) -> Result<bool> {
    let vals = point.assignments();
    let fs = f.specialize(&vals);
    let gs = g.specialize(&vals);
    let res = resultant(&fs.as_uni(Var::B), &gs.as_uni(Var::B))?;
    let rhs = &lambda.specialize(&vals) * &w.specialize(&vals);
    Ok(res == rhs)
}

/// Seeded specialization checks of a candidate `(w, lambda)`.
pub fn specialization_checks(
    n: u32,
    w: &MultiPoly,
    lambda: &MultiPoly,
    draws: usize,
    seed: u64,
) -> Result<Vec<SpecializationCheck>> {
    let (f, g) = build_fg(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<CurvePoint> = (0..draws).map(|_| random_curve_point(&mut rng)).collect();
    points
        .into_par_iter()
        .map(|point| {
            let matches = check_specialization(&f, &g, w, lambda, &point)?;
            Ok(SpecializationCheck { point, matches })
        })
        .collect()
}

/// `W_n` either by full elimination or by verifying the tabulated polynomial.
pub fn compute_wn(n: u32, mode: WnMode) -> Result<WnReport> {
    if !(1..=4).contains(&n) {
        return Err(Error::Unsupported(format!("W_n is available for 1 <= n <= 4, got {n}")));
    }
    match mode {
        WnMode::Full => {
            let e = eliminate(n)?;
            Ok(WnReport {
                n,
                wn: e.wn,
                lambda: e.lambda,
                checks: Vec::new(),
            })
        }
        WnMode::Specialized { draws, seed } => {
            let wn = reference_wn(n)?.reduce_y0();
            if n == 1 {
                return Ok(WnReport {
                    n,
                    wn,
                    lambda: MultiPoly::one(),
                    checks: Vec::new(),
                });
            }
            let lambda = reference_lambda(n)?.reduce_y0();
            let checks = specialization_checks(n, &wn, &lambda, draws, seed)?;
            if let Some(bad) = checks.iter().find(|c| !c.matches) {
                return Err(Error::Elimination(format!(
                    "specialized resultant differs from lambda*W at {:?}",
                    bad.point
                )));
            }
            Ok(WnReport {
                n,
                wn,
                lambda,
                checks,
            })
        }
    }
}
