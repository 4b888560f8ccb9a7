use std::f64::consts::TAU;

use crlab::orbifold_metric::*;
use crlab::CrError;
use proptest::prelude::*;

fn profile(q1: u32, q2: u32, l: f64) -> MetricProfile {
    construct_profile(&ConeData::new(q1, q2, l).unwrap(), DEFAULT_GRID, DEFAULT_TOL).unwrap()
}

#[test]
fn endpoint_regressions() {
    let cone = ConeData::new(3, 2, 1.0).unwrap();
    let s = solve_s(&cone).unwrap();
    let (s1, s2) = endpoints(&cone, s).unwrap();
    assert!((s1 - 1.0 / 3.0).abs() < 1e-12 && (s2 - 4.0 / 3.0).abs() < 1e-12);
    // s² = 7/9 exactly for (3,2,1)
    assert!((s * s - 7.0 / 9.0).abs() < 1e-14);

    let cone = ConeData::new(3, 1, 1.0).unwrap();
    let (s1, s2) = endpoints(&cone, solve_s(&cone).unwrap()).unwrap();
    assert!((s1 + 1.0 / 3.0).abs() < 1e-12 && (s2 - 5.0 / 3.0).abs() < 1e-12);
}

/// Meridian length from the AGM: with `x0 = -s1 - s2`,
/// `τ = √3·π / AGM(√(s1 - x0), √(s2 - x0))`.
fn tau_agm(s1: f64, s2: f64) -> f64 {
    let x0 = -s1 - s2;
    let (mut a, mut b) = ((s1 - x0).sqrt(), (s2 - x0).sqrt());
    for _ in 0..64 {
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    3f64.sqrt() * std::f64::consts::PI / a
}

#[test]
fn meridian_length_matches_agm() {
    for (q1, q2) in crlab::verify::cone_family() {
        for l in [0.3, 1.0, 4.0] {
            let p = profile(q1, q2, l);
            let want = tau_agm(p.s1, p.s2);
            assert!((p.tau - want).abs() <= 1e-9 * want, "({q1},{q2},{l}): {} vs {want}", p.tau);
        }
    }
}

#[test]
fn equal_cones_have_no_metric() {
    for q in 1..5 {
        for l in [0.1, 1.0, 10.0] {
            let cone = ConeData::new(q, q, l).unwrap();
            assert!(matches!(solve_s(&cone), Err(CrError::NoSolution(_))));
        }
    }
}

#[test]
fn rejects_bad_cone_data() {
    assert!(ConeData::new(2, 3, 1.0).is_err());
    assert!(ConeData::new(4, 2, 1.0).is_err());
    assert!(ConeData::new(3, 2, 0.0).is_err());
    assert!(ConeData::new(3, 2, -1.0).is_err());
    assert!(ConeData::with_real_cones(2.5, 1.5, 1.0).is_ok());
}

#[test]
fn profile_shape() {
    for (q1, q2) in [(2, 1), (3, 2), (7, 3)] {
        let p = profile(q1, q2, 1.0);
        let k = p.k();
        assert!(k.windows(2).all(|w| w[1] > w[0]));
        let r = p.r();
        assert!(r[1..r.len() - 1].iter().all(|&x| x > 0.0));
        assert!((k[0] - p.s1).abs() < 1e-9 && (k[k.len() - 1] - p.s2).abs() < 1e-9);
        assert!((p.r_prime_poles.0 - 1.0 / q1 as f64).abs() < 1e-12);
        assert!((p.r_prime_poles.1 + 1.0 / q2 as f64).abs() < 1e-12);
        assert!(killing_residual(&p) <= 1e-8);
    }
}

#[test]
fn real_cone_angles_interpolate() {
    let cone = ConeData::with_real_cones(2.5, 1.5, 1.0).unwrap();
    let p = construct_profile(&cone, DEFAULT_GRID, DEFAULT_TOL).unwrap();
    let (a1, a2) = cone_angles(&p);
    assert!((a1 - TAU / 2.5).abs() < 1e-8 * a1);
    assert!((a2 - TAU / 1.5).abs() < 1e-8 * a2);
}

#[test]
fn gauss_bonnet_across_family() {
    for (q1, q2) in crlab::verify::cone_family() {
        let p = profile(q1, q2, 1.0);
        let want = 1.0 / q1 as f64 + 1.0 / q2 as f64;
        assert!((gauss_bonnet(&p) - want).abs() < 1e-6, "({q1},{q2})");
    }
}

#[test]
fn curvature_improves_with_refinement() {
    let cone = ConeData::new(3, 2, 1.0).unwrap();
    let res: Vec<f64> = [64, 128, 256, 512]
        .iter()
        .map(|&n| {
            let p = construct_profile(&cone, n, DEFAULT_TOL).unwrap();
            curvature_residual(&p, p.tau / 20.0)
        })
        .collect();
    assert!(res.windows(2).all(|w| w[1] < w[0]), "{res:?}");
}

#[test]
fn impossibility_is_exact() {
    for l in [0.1, 1.0, 10.0] {
        let cert = smooth_impossibility(l, 200).unwrap();
        assert!(cert.certified);
        assert!((cert.algebraic_residual - 4.0 * l * l).abs() <= 1e-15 * l * l);
        assert_eq!(cert.min_residual, cert.algebraic_residual);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn homothety_law(idx in 0usize..20, lam in 0.05f64..20.0) {
        let family = crlab::verify::cone_family();
        let (q1, q2) = family[idx % family.len()];
        let base = ConeData::new(q1, q2, 1.0).unwrap();
        let scaled = ConeData::new(q1, q2, lam).unwrap();
        let (s, s_lam) = (solve_s(&base).unwrap(), solve_s(&scaled).unwrap());
        prop_assert!((s_lam - lam.sqrt() * s).abs() <= 1e-8 * s_lam);
        let tau = construct_profile(&base, 512, DEFAULT_TOL).unwrap().tau;
        let tau_lam = construct_profile(&scaled, 512, DEFAULT_TOL).unwrap().tau;
        // k → √λ·k forces t → t/λ^¼
        prop_assert!((tau_lam - tau / lam.powf(0.25)).abs() <= 1e-8 * tau_lam);
    }

    #[test]
    fn closed_form_agrees_with_bisection(q1 in 2u32..40, q2 in 1u32..40, l in 0.01f64..100.0) {
        prop_assume!(q2 < q1 && num_integer::gcd(q1, q2) == 1);
        let cone = ConeData::new(q1, q2, l).unwrap();
        let s = solve_s(&cone).unwrap();
        prop_assert!((s - uniqueness_root(&cone).unwrap()).abs() <= 1e-10 * s.max(1.0));
    }
}
