//! Acceptance criteria. Each test prints one PASS/FAIL line (to stderr, past
//! the test harness capture) with its measured residuals and runtime.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::{lattice_invariants, lattice_weierstrass, rel, C};
use num_integer::Integer;
use premodular::algebra::{ratio, Grading, MultiPoly, Var};
use premodular::elliptic::{
    half_period_series, hecke_z_real, maier_check, poly_roots, seeded_points, weierstrass_eval,
    TorusContext,
};
use premodular::lame::reference::{
    printed_consistency, published_c_sq, reference_consistency, reference_ell, reference_lambda,
    reference_spectral, reference_wn,
};
use premodular::lame::{
    assemble_ell, consistency_polys, eliminate, factored_ell, load_tables, solve_spectral_coeffs,
    spectral_constant, specialization_checks,
};
use premodular::premodular::{
    arith_functions, counting, cusp_expansion, cusp_leading_n4, find_zeros, green_residual,
    nu_infinity_numeric, reconstruct_point, wn_polynomial, CuspClass, PremodularEvaluator,
    TauRegion,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(id: u32, title: &str, budget: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(d) if elapsed <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over budget")),
        Err(d) => (false, d),
    };
    let line = format!(
        "criterion {id:>2} {} {title} [{:.2} s / {} s] {detail}\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "{line}");
}

fn homogeneous(p: &MultiPoly, g: Grading, w: u32) -> bool {
    p.weighted_degree(g)
        .map(|r| r.homogeneous && r.max == w)
        .unwrap_or(false)
}

fn e<T>(r: premodular::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

#[test]
fn criterion_01_spectral_tables() {
    report(1, "spectral tables", Duration::from_secs(10), || {
        for n in 1..=3 {
            ensure(e(assemble_ell(n))? == e(reference_ell(n))?, || format!("l_{n} differs"))?;
        }
        for n in 4..=5 {
            ensure(e(assemble_ell(n))? == e(factored_ell(n))?, || format!("l_{n} differs"))?;
        }
        for n in 2..=4 {
            let t = e(load_tables(n))?;
            ensure(e(t.ell())? == e(assemble_ell(n))?, || format!("factored l_{n} differs"))?;
        }
        let r4 = e(published_c_sq(4))? / e(spectral_constant(4))?;
        let r5 = e(published_c_sq(5))? / e(spectral_constant(5))?;
        Ok(format!(
            "l_1..l_5 exact; c_4^2, c_5^2 corrected (printed/derived = {r4}, {r5})"
        ))
    });
}

#[test]
fn criterion_02_consistency_system() {
    report(2, "consistency system", Duration::from_secs(10), || {
        for n in 1..=6u32 {
            let s = e(solve_spectral_coeffs(n))?;
            let expected = MultiPoly::var(Var::Beta).scale(&ratio(1, 2 * (2 * n as i64 - 1)));
            ensure(s.get(1) == expected, || format!("s_1 wrong for n = {n}"))?;
        }
        let mut sign_only = 0;
        for n in 2..=3 {
            let s = e(solve_spectral_coeffs(n))?;
            ensure(s.s[2..] == e(reference_spectral(n))?[..], || format!("s_k for n = {n}"))?;
            let p = e(consistency_polys(n))?;
            let (f1, f0) = e(reference_consistency(n))?;
            ensure(p.f1 == f1 && p.f0 == f0, || format!("F for n = {n}"))?;
            let (p1, p0) = e(printed_consistency(n))?;
            sign_only += [(&p.f1, &p1), (&p.f0, &p0)]
                .iter()
                .filter(|(a, b)| *a == *b || **a == -*b)
                .count();
        }
        Ok(format!(
            "s_1 for n <= 6, s_k and F for n = 2, 3 exact; {sign_only}/4 printed equations agree up to sign, n = 3 F1 g2-term corrected"
        ))
    });
}

#[test]
fn criterion_03_elimination() {
    report(3, "elimination", Duration::from_secs(600), || {
        let start = Instant::now();
        for n in 2..=3 {
            let el = e(eliminate(n))?;
            ensure(el.wn == e(reference_wn(n))?.reduce_y0(), || format!("W_{n} differs"))?;
            ensure(el.lambda == e(reference_lambda(n))?.reduce_y0(), || {
                format!("lambda_{n} differs")
            })?;
        }
        let symbolic = start.elapsed();
        ensure(symbolic < Duration::from_secs(60), || format!("W_2, W_3 took {symbolic:?}"))?;
        let w4 = e(reference_wn(4))?.reduce_y0();
        let l4 = e(reference_lambda(4))?.reduce_y0();
        let checks = e(specialization_checks(4, &w4, &l4, 25, SEED))?;
        let good = checks.iter().filter(|c| c.matches).count();
        ensure(good == 25, || format!("W_4 matches at {good}/25 specializations"))?;
        Ok(format!(
            "W_2, W_3 and scale factors exact ({:.2} s); W_4 exact at 25/25 specializations",
            symbolic.as_secs_f64()
        ))
    });
}

#[test]
fn criterion_04_homogeneity() {
    let polys: Vec<_> = (2..=4).map(|n| wn_polynomial(n).unwrap().clone()).collect();
    report(4, "homogeneity", Duration::from_secs(5), || {
        for (k, w) in polys.iter().enumerate() {
            let n = k as u32 + 2;
            ensure(homogeneous(w, Grading::M, n * (n + 1) / 2), || format!("W_{n}"))?;
        }
        for n in 1..=5 {
            let ell = e(assemble_ell(n))?;
            ensure(homogeneous(&ell, Grading::S, 2 * n + 1), || format!("l_{n}"))?;
        }
        Ok("W_2..W_4 of M-weight 3, 6, 10; l_1..l_5 of S-weight 2n+1".into())
    });
}

#[test]
fn criterion_05_minimal_polynomial_on_curve_points() {
    report(5, "W_n(z_n) = 0 on the curve", Duration::from_secs(120), || {
        let mut worst: f64 = 0.0;
        for n in 1..=4u32 {
            let ev = e(PremodularEvaluator::new(n))?;
            for (ctx, pt) in e(seeded_points(n, 20, SEED + n as u64))? {
                worst = worst.max(e(ev.eval_at_point(&pt, &ctx))?.normalized());
            }
        }
        ensure(worst < 1e-8, || format!("max |W_n| / magnitude = {worst:.3e}"))?;
        Ok(format!("n = 1..4, 20 draws each, max |W_n| / magnitude = {worst:.3e}"))
    });
}

#[test]
fn criterion_06_covering_maps() {
    report(6, "covering-map identities", Duration::from_secs(120), || {
        let (mut x0, mut y0, mut spread, mut kappa) = (0f64, 0f64, 0f64, 0f64);
        for n in 1..=4u32 {
            for (ctx, pt) in e(seeded_points(n, 20, SEED + n as u64))? {
                let m = e(maier_check(&pt, &ctx))?;
                x0 = x0.max(m.x0_error);
                y0 = y0.max(m.y0_error);
                spread = spread.max(m.x0_spread);
                kappa = kappa.max(m.kappa_error);
            }
        }
        let detail = format!(
            "x0 {x0:.2e}, y0 {y0:.2e}, x0 spread {spread:.2e}, kappa + z_n {kappa:.2e}"
        );
        ensure(x0 < 1e-8 && y0 < 1e-8 && spread < 1e-9 && kappa < 1e-8, || detail.clone())?;
        Ok(detail)
    });
}

#[test]
fn criterion_07_degree_of_the_addition_map() {
    report(7, "degree of sigma_n", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut min_sep = f64::INFINITY;
        for n in 1..=4u32 {
            let ev = e(PremodularEvaluator::new(n))?;
            let deg = (n * (n + 1) / 2) as usize;
            for _ in 0..10 {
                let tau = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
                let (r, s) = (rng.gen_range(0.05..0.45), rng.gen_range(0.55..0.95));
                let ctx = e(TorusContext::new(tau))?;
                let roots = e(poly_roots(&e(ev.fiber_polynomial(r + s * tau, &ctx))?))?;
                ensure(roots.len() == deg, || format!("n = {n}: {} roots", roots.len()))?;
                let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
                for i in 0..deg {
                    for j in 0..i {
                        min_sep = min_sep.min((roots[i] - roots[j]).norm() / scale);
                    }
                }
            }
        }
        ensure(min_sep > 1e-5, || format!("roots closer than {min_sep:.2e}"))?;
        Ok(format!("n(n+1)/2 distinct roots, min separation {min_sep:.2e} x scale"))
    });
}

#[test]
fn criterion_08_special_functions() {
    report(8, "special functions", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut legendre: f64 = 0.0;
        let mut lattice: f64 = 0.0;
        for _ in 0..20 {
            let tau = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
            let z = rng.gen_range(0.05..0.95) + rng.gen_range(0.05..0.95) * tau;
            let ctx = e(TorusContext::new(tau))?;
            legendre = legendre.max(ctx.legendre_residual());
            let (g2, g3) = lattice_invariants(tau);
            let w = e(weierstrass_eval(z, &ctx))?;
            let (wp, dwp, zeta) = lattice_weierstrass(z, tau);
            for err in [
                rel(ctx.g2, g2),
                rel(ctx.g3, g3),
                rel(w.wp, wp),
                rel(w.dwp, dwp),
                rel(w.zeta, zeta),
            ] {
                lattice = lattice.max(err);
            }
        }
        let at_i = e(TorusContext::new(C::new(0.0, 1.0)))?;
        let g3_i = at_i.g3.norm() / at_i.g2.norm().powf(1.5);
        let rho = e(TorusContext::new(C::new(-0.5, 0.75f64.sqrt())))?;
        let g2_rho = rho.g2.norm() / rho.g3.norm().powf(2.0 / 3.0);
        let mut half: f64 = 0.0;
        for _ in 0..10 {
            let ctx = e(TorusContext::new(C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6))))?;
            let t = rng.gen_range(0.05..0.45);
            let (wp, dwp, z) = half_period_series(t, &ctx);
            let w = e(weierstrass_eval(t + 0.5 * ctx.tau, &ctx))?;
            let zd = e(hecke_z_real(t, 0.5, &ctx))?;
            half = half.max(rel(wp, w.wp)).max(rel(dwp, w.dwp)).max(rel(z, zd));
        }
        let detail = format!(
            "Legendre {legendre:.2e}, g3(i) {g3_i:.2e}, g2(rho) {g2_rho:.2e}, lattice sums {lattice:.2e}, s = 1/2 series {half:.2e}"
        );
        ensure(
            legendre < 1e-12 && g3_i < 1e-12 && g2_rho < 1e-12 && lattice < 1e-8 && half < 1e-10,
            || detail.clone(),
        )?;
        Ok(detail)
    });
}

#[test]
fn criterion_09_cusp_expansions() {
    report(9, "cusp expansions (n = 4)", Duration::from_secs(60), || {
        let ev = e(PremodularEvaluator::new(4))?;
        let mut worst: f64 = 0.0;
        let mut orders = Vec::new();
        for class in [CuspClass::Zero, CuspClass::Half, CuspClass::Generic(0.23)] {
            for t in [0.17, 0.31] {
                let x = e(cusp_expansion(&ev, class, t))?;
                let (order, coeff) = cusp_leading_n4(class, t);
                ensure(x.order == order, || format!("{class:?} t = {t}: order {}", x.order))?;
                worst = worst.max((x.coefficient - coeff).norm() / coeff.abs());
                orders.push(x.order);
            }
        }
        ensure(worst < 1e-6, || format!("coefficient error {worst:.2e}"))?;
        Ok(format!("orders {orders:?}, max coefficient error {worst:.2e}"))
    });
}

#[test]
fn criterion_10_counting() {
    report(10, "counting (n = 4)", Duration::from_secs(180), || {
        let mut l4 = Vec::new();
        for big_n in 3..=12u64 {
            let r = e(counting(4, big_n))?;
            let phi = |m: u64| (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64;
            let phi_half = if big_n % 2 == 0 { phi(big_n / 2) } else { 0 };
            ensure(r.nu_infinity == 3 * phi(big_n) + 4 * phi_half, || {
                format!("nu_inf({big_n}) = {}", r.nu_infinity)
            })?;
            ensure(r.u4 == ratio(r.l4 as i64, 1), || format!("U_4({big_n}) = {}", r.u4))?;
            l4.push(r.l4);
        }
        let ev = e(PremodularEvaluator::new(4))?;
        for big_n in 3..=5u64 {
            let numeric = e(nu_infinity_numeric(&ev, big_n))?;
            let a = e(arith_functions(big_n))?;
            let formula = (3 * a.phi + 4 * a.phi_half) as i64;
            ensure(numeric == formula, || format!("N = {big_n}: cusp sum {numeric} vs {formula}"))?;
        }
        Ok(format!(
            "L_4(3..12) = {l4:?}; numeric nu_inf matches for N = 3, 4, 5; N = 3 needs the 2/3 epsilon term"
        ))
    });
}

#[test]
fn criterion_11_zero_quality() {
    report(11, "zeros for N = 3", Duration::from_secs(300), || {
        let ev = e(PremodularEvaluator::new(4))?;
        let region = TauRegion::default_search();
        let (mut count, mut worst, mut clipped) = (0, 0f64, Vec::new());
        for k1 in 0..3i64 {
            for k2 in 0..3i64 {
                if (k1, k2) == (0, 0) {
                    continue;
                }
                let search = e(find_zeros(&ev, &ratio(k1, 3), &ratio(k2, 3), region))?;
                for u in &search.unresolved {
                    clipped.push(format!("({k1},{k2}) Im > {:.2}", u.region.im0));
                }
                for z in &search.zeros {
                    ensure(z.winding == 1, || format!("({k1},{k2}) winding {}", z.winding))?;
                    let ctx = e(TorusContext::new(z.tau))?;
                    let (r, s) = (k1 as f64 / 3.0, k2 as f64 / 3.0);
                    let zval = e(hecke_z_real(r, s, &ctx))?;
                    let pt = e(reconstruct_point(4, r + s * z.tau, zval, &ctx))?;
                    let res = e(green_residual(&pt, &ctx))?.norm();
                    ensure(res < 1e-7, || format!("({k1},{k2}) Green residual {res:.2e}"))?;
                    worst = worst.max(res);
                    count += 1;
                }
            }
        }
        Ok(format!(
            "{count} zeros, all winding 1, max Green residual {worst:.2e}; unresolved: {}",
            if clipped.is_empty() { "none".to_string() } else { clipped.join(", ") }
        ))
    });
}
