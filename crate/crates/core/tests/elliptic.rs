mod common;

use common::{lattice_invariants, lattice_weierstrass, rel, C};
use premodular::elliptic::{
    half_period_series, hecke_z, hecke_z_real, weierstrass_eval, wp_inverse, TorusContext,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tau(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6))
}

#[test]
fn q_series_match_lattice_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let tau = random_tau(&mut rng);
        let z = rng.gen_range(0.05..0.95) + rng.gen_range(0.05..0.95) * tau;
        let ctx = TorusContext::new(tau).unwrap();
        let (g2, g3) = lattice_invariants(tau);
        let w = weierstrass_eval(z, &ctx).unwrap();
        let (wp, dwp, zeta) = lattice_weierstrass(z, tau);
        for err in [
            rel(ctx.g2, g2),
            rel(ctx.g3, g3),
            rel(w.wp, wp),
            rel(w.dwp, dwp),
            rel(w.zeta, zeta),
        ] {
            worst = worst.max(err);
        }
    }
    assert!(worst < 1e-8, "worst relative error {worst:e}");
}

#[test]
fn legendre_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let tau = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.6..3.0));
        let ctx = TorusContext::new(tau).unwrap();
        assert!(ctx.legendre_residual() < 1e-12, "{tau}: {:e}", ctx.legendre_residual());
    }
}

#[test]
fn invariants_vanish_at_elliptic_points() {
    let ctx = TorusContext::new(C::new(0.0, 1.0)).unwrap();
    assert!(ctx.g3.norm() / ctx.g2.norm().powf(1.5) < 1e-12);
    let rho = TorusContext::new(C::new(-0.5, 0.75f64.sqrt())).unwrap();
    assert!(rho.g2.norm() / rho.g3.norm().powf(2.0 / 3.0) < 1e-12);
}

#[test]
fn half_periods_are_roots_of_the_cubic() {
    let ctx = TorusContext::new(C::new(0.21, 0.93)).unwrap();
    let sum: C = ctx.e.iter().sum();
    assert!(sum.norm() < 1e-12);
    for e in ctx.e {
        let cubic = 4.0 * e * e * e - ctx.g2 * e - ctx.g3;
        assert!(cubic.norm() < 1e-10 * (1.0 + ctx.g2.norm() * e.norm()));
    }
}

#[test]
fn half_period_series_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let ctx = TorusContext::new(random_tau(&mut rng)).unwrap();
        let t = rng.gen_range(0.05..0.45);
        let (wp, dwp, z) = half_period_series(t, &ctx);
        let w = weierstrass_eval(t + 0.5 * ctx.tau, &ctx).unwrap();
        assert!(rel(wp, w.wp) < 1e-10);
        assert!(rel(dwp, w.dwp) < 1e-10);
        assert!(rel(z, hecke_z_real(t, 0.5, &ctx).unwrap()) < 1e-10);
    }
}

#[test]
fn wp_inverse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let ctx = TorusContext::new(random_tau(&mut rng)).unwrap();
        let z0 = rng.gen_range(0.05..0.95) + rng.gen_range(0.05..0.95) * ctx.tau;
        let w0 = weierstrass_eval(z0, &ctx).unwrap();
        let p = wp_inverse(w0.wp, &ctx, Some(w0.dwp)).unwrap();
        let w = weierstrass_eval(p.z, &ctx).unwrap();
        assert!(rel(w.wp, w0.wp) < 1e-10);
        assert!(rel(w.dwp, w0.dwp) < 1e-8, "{} vs {}", w.dwp, w0.dwp);
    }
}

#[test]
fn hecke_function_is_periodic_in_r_and_s() {
    let ctx = TorusContext::new(C::new(0.3, 1.2)).unwrap();
    let z = hecke_z_real(0.27, 0.61, &ctx).unwrap();
    assert!(rel(hecke_z_real(1.27, 0.61, &ctx).unwrap(), z) < 1e-12);
    assert!(rel(hecke_z_real(0.27, 1.61, &ctx).unwrap(), z) < 1e-12);
    assert!(rel(hecke_z_real(-0.73, -0.39, &ctx).unwrap(), z) < 1e-12);
}

#[test]
fn hecke_function_has_weight_one() {
    // Z_{r,s}(-1/tau) = tau Z_{-s,r}(tau)
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..10 {
        let tau = random_tau(&mut rng);
        let (r, s) = (rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
        let ctx = TorusContext::new(tau).unwrap();
        let inv = TorusContext::new(-1.0 / tau).unwrap();
        let lhs = hecke_z_real(r, s, &inv).unwrap();
        let rhs = tau * hecke_z_real(-s, r, &ctx).unwrap();
        assert!(rel(lhs, rhs) < 1e-10, "{lhs} vs {rhs}");
    }
}

#[test]
fn hecke_function_accepts_complex_coordinates() {
    let ctx = TorusContext::new(C::new(-0.2, 1.1)).unwrap();
    let (r, s) = (C::new(0.3, 0.1), C::new(0.4, -0.05));
    let z = r + s * ctx.tau;
    let direct = weierstrass_eval(z, &ctx).unwrap().zeta - r * ctx.eta1 - s * ctx.eta2;
    assert!(rel(hecke_z(r, s, &ctx).unwrap(), direct) < 1e-14);
}

#[test]
fn rejects_lower_half_plane_and_lattice_points() {
    assert!(TorusContext::new(C::new(0.0, -1.0)).is_err());
    let ctx = TorusContext::new(C::new(0.0, 1.0)).unwrap();
    assert!(weierstrass_eval(C::new(1.0, 1.0), &ctx).is_err());
}
