use std::f64::consts::TAU;

use crlab::reeb_flow::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(rng: &mut ChaCha8Rng) -> SphereState {
    let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    SphereState::normalized(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))
}

#[test]
fn flow_stays_on_sphere() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let s = random_state(&mut rng);
        let (a, b, t) = (rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0), rng.gen_range(-100.0..100.0));
        let out = flow(a, b, t, s);
        assert!((out.norm_sqr() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn rational_flow_closes_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (p, q, c) in [(1, 1, 2.0), (2, 3, 1.0), (5, 7, 0.3), (1, 4, 3.5)] {
        let w = Weights::rational(p, q, c).unwrap();
        let (a, b) = w.rates();
        let len = classify_weights(&w).lengths.unwrap();
        for _ in 0..20 {
            let s = random_state(&mut rng);
            let back = flow(a, b, len.generic, s);
            assert!((back.x - s.x).norm() < 1e-9 && (back.y - s.y).norm() < 1e-9);
            let on_axis = SphereState::normalized(Complex64::new(0.0, 0.0), s.y);
            let back = flow(a, b, len.x0, on_axis);
            assert!((back.y - on_axis.y).norm() < 1e-9);
            let on_other = SphereState::normalized(s.x, Complex64::new(0.0, 0.0));
            let back = flow(a, b, len.y0, on_other);
            assert!((back.x - on_other.x).norm() < 1e-9);
        }
    }
}

#[test]
fn exceptional_orbits_are_shorter_than_generic() {
    // a generic point is not back after the exceptional periods when p, q > 1
    let w = Weights::rational(2, 3, 1.0).unwrap();
    let (a, b) = w.rates();
    let s = SphereState::normalized(Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0));
    let back = flow(a, b, 3.0, s);
    assert!((back.x - s.x).norm() > 0.1);
    let back = flow(a, b, 2.0, s);
    assert!((back.y - s.y).norm() > 0.1);
}

#[test]
fn wrapping_recovers_all_small_pairs() {
    for p in 1..=20u64 {
        for q in 1..=20u64 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let rep = classify_weights(&Weights::rational(p, q, 1.7).unwrap());
            let l = rep.lengths.unwrap();
            assert_eq!(wrapping_from_lengths(l.x0, l.y0, l.generic).unwrap(), (p, q));
            assert_eq!(rep.class == Regularity::Regular, (p, q) == (1, 1));
        }
    }
}

#[test]
fn torus_gap_examples() {
    assert!((torus_gap(1.0, 2.0, 1) - TORUS_DIAMETER).abs() < 1e-15);
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(torus_gap(1.0, golden, 100_000) < 0.1);
    let closed = [10_000, 100_000].map(|n| torus_gap(2.0, 3.0, n));
    assert!(closed.iter().all(|&g| g > 0.5), "{closed:?}");
}

#[test]
fn dense_orbit_gap_shrinks() {
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let coarse = torus_gap(1.0, golden, 1_000);
    let fine = torus_gap(1.0, golden, 100_000);
    assert!(fine < coarse);
    assert!(TAU > coarse);
}

proptest! {
    #[test]
    fn gap_non_increasing_on_fixed_grid(n in 1usize..4000, extra in 1usize..4000, g in 1usize..40) {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        prop_assert!(torus_gap_on_grid(1.0, golden, n + extra, g) <= torus_gap_on_grid(1.0, golden, n, g));
    }

    #[test]
    fn constructor_reduces_to_lowest_terms(p in 1u64..500, q in 1u64..500, k in 1u64..20) {
        let w = Weights::rational(p * k, q * k, 1.0).unwrap();
        let g = num_integer::gcd(p, q);
        prop_assert_eq!(w.kind(), &WeightKind::RationalPair { p: p / g, q: q / g, c: 1.0 });
    }
}
