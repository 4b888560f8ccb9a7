use std::f64::consts::PI;

use crlab::phase_plane::*;
use proptest::prelude::*;

/// Half period via the arithmetic–geometric mean:
/// `∫_0^{π/2} dθ / √(A cos²θ + B sin²θ) = π / (2·AGM(√A, √B))`.
fn half_period_agm(x0: f64, s1: f64, s2: f64) -> f64 {
    let (mut a, mut b) = ((s1 - x0).sqrt(), (s2 - x0).sqrt());
    for _ in 0..64 {
        let next = (0.5 * (a + b), (a * b).sqrt());
        a = next.0;
        b = next.1;
    }
    3f64.sqrt() * PI / a
}

fn params(c: f64) -> PhaseParams {
    PhaseParams::new(c).unwrap()
}

#[test]
fn rational_level_conserved() {
    let p = params(7.0 / 18.0);
    let o = integrate_orbit(p, PhaseState::new(1.0 / 3.0, 0.0), 10.0, 1e-3).unwrap();
    assert!((o.f0 + 20.0 / 81.0).abs() < 1e-15);
    assert!(o.f_drift <= 1e-9);
}

#[test]
fn return_time_matches_quadrature() {
    let p = params(7.0 / 18.0);
    let tau = period_quadrature(p, -20.0 / 81.0).unwrap();
    let o = integrate_orbit(p, PhaseState::new(1.0 / 3.0, 0.0), 2.1 * tau, 1e-3).unwrap();
    assert!((o.half_period.unwrap() - tau).abs() <= 1e-6 * tau);
    let [x0, s1, s2] = level_roots(p, -20.0 / 81.0).unwrap();
    assert!((tau - half_period_agm(x0, s1, s2)).abs() < 1e-13);
}

#[test]
fn return_time_from_off_section_start() {
    // start on the upper half of the closed orbit; the period is the gap
    // between two section crossings
    let p = params(0.5);
    let f0 = 0.1;
    let tau = period_quadrature(p, f0).unwrap();
    let (s1, s2) = crossings(p, f0).unwrap();
    let x = 0.5 * (s1 + s2);
    let y = (f0 - x * x * x / 3.0 + 2.0 * p.c * x).sqrt();
    let o = integrate_orbit(p, PhaseState::new(x, y), 4.5 * tau, 1e-3).unwrap();
    assert!((o.half_period.unwrap() - tau).abs() <= 1e-6 * tau);
}

#[test]
fn line_component_has_no_period() {
    let p = params(0.5);
    let [x0, ..] = level_roots(p, 0.0).unwrap();
    let o = integrate_orbit(p, PhaseState::new(x0, 0.0), 1.0, 1e-4).unwrap();
    assert_eq!(o.half_period, None);
}

#[test]
fn small_oscillation_limit() {
    for s in [0.5, 1.0, 2.0] {
        let p = PhaseParams::from_s(s).unwrap();
        let tau = period_quadrature(p, -2.0 * s * s * s / 3.0 + 1e-8).unwrap();
        assert!((tau - PI / s.sqrt()).abs() <= 1e-3, "s = {s}: {tau}");
    }
}

#[test]
fn period_increases_towards_separatrix() {
    let p = params(0.5);
    let (lo, hi) = p.window().unwrap();
    let taus: Vec<f64> =
        (1..40).map(|i| lo + (hi - lo) * i as f64 / 40.0).map(|f0| period_quadrature(p, f0).unwrap()).collect();
    assert!(taus.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn weierstrass_identity_on_trajectory() {
    let p = params(0.9);
    let f0 = -0.3;
    let (wp, wq) = weierstrass_reduce(p, f0);
    let (s1, _) = crossings(p, f0).unwrap();
    let o = integrate_orbit(p, PhaseState::new(s1, 0.0), 8.0, 1e-3).unwrap();
    for (_, s) in &o.samples {
        let (z, dz) = (-s.x / 3.0, -s.y / 3.0);
        assert!((dz * dz - z * z * z - wp * z - wq).abs() <= 1e-8);
    }
}

#[test]
fn quadrature_node_count_is_configurable() {
    let p = params(1.2);
    let f0 = 0.5 * p.window().unwrap().1;
    let [x0, s1, s2] = level_roots(p, f0).unwrap();
    let exact = half_period_agm(x0, s1, s2);
    let coarse = period_quadrature_with(p, f0, 4).unwrap();
    let fine = period_quadrature_with(p, f0, 64).unwrap();
    assert!((fine - exact).abs() < (coarse - exact).abs().max(1e-15));
    assert!((fine - exact).abs() < 1e-13);
}

proptest! {
    #[test]
    fn crossings_satisfy_pole_relation(c in 0.05f64..5.0, frac in -0.999f64..0.999) {
        let p = params(c);
        let f0 = frac * p.window().unwrap().1;
        let s = p.s().unwrap();
        let (s1, s2) = crossings(p, f0).unwrap();
        prop_assert!(s1 > -s && s1 < s && s2 > s && s2 < 2.0 * s);
        prop_assert!((s1 * s1 + s1 * s2 + s2 * s2 - 3.0 * s * s).abs() <= 1e-10 * s * s.max(1.0));
        let f = |x: f64| first_integral(p, PhaseState::new(x, 0.0));
        prop_assert!((f(s1) - f(s2)).abs() <= 1e-10 * s.powi(3).max(1.0));
    }

    #[test]
    fn integrand_factorization(c in 0.05f64..5.0, frac in -0.99f64..0.99, t in 0.0f64..1.0) {
        let p = params(c);
        let f0 = frac * p.window().unwrap().1;
        let [x0, s1, s2] = level_roots(p, f0).unwrap();
        let k = s1 + t * (s2 - s1);
        let lhs = f0 + 2.0 * c * k - k * k * k / 3.0;
        let rhs = (k - x0) * (k - s1) * (s2 - k) / 3.0;
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + c.powf(1.5)));
    }

    #[test]
    fn quadrature_matches_agm(c in 0.05f64..5.0, frac in -0.999f64..0.9) {
        let p = params(c);
        let f0 = frac * p.window().unwrap().1;
        let [x0, s1, s2] = level_roots(p, f0).unwrap();
        let exact = half_period_agm(x0, s1, s2);
        prop_assert!((period_quadrature(p, f0).unwrap() - exact).abs() <= 1e-12 * exact);
    }

    #[test]
    fn time_reversal(c in -1.0f64..2.0, x in -1.0f64..1.5, y in -1.0f64..1.0, t in 0.1f64..2.0) {
        let p = params(c);
        let fwd = integrate_orbit(p, PhaseState::new(x, y), t, 1e-3).unwrap();
        let (_, end) = *fwd.samples.last().unwrap();
        let back = integrate_orbit(p, PhaseState::new(end.x, -end.y), t, 1e-3).unwrap();
        let (_, home) = *back.samples.last().unwrap();
        prop_assert!((home.x - x).abs() < 1e-9 && (home.y + y).abs() < 1e-9);
    }
}

#[test]
fn conservation_and_period_on_grid() {
    for c in [0.2, 0.5, 1.0, 1.7] {
        let p = params(c);
        let hi = p.window().unwrap().1;
        for frac in [-0.9, -0.5, 0.0, 0.4, 0.85] {
            let f0 = frac * hi;
            let (s1, _) = crossings(p, f0).unwrap();
            let tau = period_quadrature(p, f0).unwrap();
            let o = integrate_orbit(p, PhaseState::new(s1, 0.0), 2.05 * tau, tau / 2000.0).unwrap();
            assert!(o.f_drift <= 1e-9 * hi, "c={c} F0={f0}: drift {}", o.f_drift);
            assert!((o.half_period.unwrap() - tau).abs() <= 1e-6 * tau);
        }
    }
}
