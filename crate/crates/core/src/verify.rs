//! Self-check suite behind `crlab verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::orbifold_metric::{
    area, cone_angles, construct_profile, curvature_residual, endpoints, gauss_bonnet, smooth_impossibility, solve_s,
    uniqueness_cross_check, ConeData, DEFAULT_GRID,
};
use crate::phase_plane::{integrate_orbit, level_roots, period_quadrature, PhaseParams, PhaseState};
use crate::reeb_flow::{classify_weights, torus_gap, wrapping_from_lengths, Weights};
use crate::sl2_model::{
    base_curvature, boundedness_probe, bracket_check, curvature_fd_oracle, psi, scan_grid, DeformParam, SL2Matrix,
};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, threshold, pass: value <= threshold }
    }

    fn above(name: &str, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, threshold, pass: value > threshold }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Coprime `(q1, q2)` with `9 >= q1 > q2 >= 1`.
pub fn cone_family() -> Vec<(u32, u32)> {
    use num_integer::Integer;
    (2..=9u32).flat_map(|q1| (1..q1).filter(move |q2| q1.gcd(q2) == 1).map(move |q2| (q1, q2))).collect()
}

/// Random periodic level `(c, F0)` with `c ∈ [0.1, 2]` and `F0` in the
/// inner 90% of the window.
pub fn random_level<R: Rng>(rng: &mut R) -> (PhaseParams, f64) {
    let p = PhaseParams::new(rng.gen_range(0.1..2.0)).expect("finite c");
    let (_, hi) = p.window().expect("c > 0");
    (p, rng.gen_range(-0.9..0.9) * hi)
}

pub fn run_suite(seed: u64, event_tol: f64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut uniq = 0.0f64;
    let mut angle = 0.0f64;
    let mut s12 = 0.0f64;
    for (q1, q2) in cone_family() {
        let cone = ConeData::new(q1, q2, 1.0)?;
        uniq = uniq.max(uniqueness_cross_check(&cone)?);
        let s = solve_s(&cone)?;
        let (a, b) = endpoints(&cone, s)?;
        s12 = s12.max((a * a + a * b + b * b - 3.0 * s * s).abs());
        let prof = construct_profile(&cone, DEFAULT_GRID, event_tol)?;
        let (a1, a2) = cone_angles(&prof);
        let (t1, t2) = (std::f64::consts::TAU / cone.q1, std::f64::consts::TAU / cone.q2);
        angle = angle.max(((a1 - t1) / t1).abs()).max(((a2 - t2) / t2).abs());
    }
    checks.push(Check::at_most("uniqueness_closed_form_vs_bisection", uniq, 1e-10));
    checks.push(Check::at_most("cone_angles_relative", angle, 1e-8));
    checks.push(Check::at_most("pole_relation_residual", s12, 1e-10));

    let mut gb = 0.0f64;
    let mut ar = 0.0f64;
    for (q1, q2) in [(2, 1), (3, 1), (3, 2), (5, 2), (7, 3)] {
        let cone = ConeData::new(q1, q2, 1.0)?;
        let prof = construct_profile(&cone, DEFAULT_GRID, event_tol)?;
        gb = gb.max((gauss_bonnet(&prof) - (1.0 / cone.q1 + 1.0 / cone.q2)).abs());
        ar = ar.max((area(&prof) - std::f64::consts::TAU * (prof.s2 - prof.s1) / cone.l).abs());
    }
    checks.push(Check::at_most("gauss_bonnet", gb, 1e-6));
    checks.push(Check::at_most("area", ar, 1e-6));

    let prof = construct_profile(&ConeData::new(3, 2, 1.0)?, 4096, event_tol)?;
    checks.push(Check::at_most("curvature_residual_4096", curvature_residual(&prof, prof.tau / 20.0), 1e-5));

    let cert = smooth_impossibility(1.0, 100)?;
    checks.push(Check::above("smooth_poles_residual", cert.min_residual, 0.0));

    let mut drift = 0.0f64;
    let mut period = 0.0f64;
    for _ in 0..50 {
        let (p, f0) = random_level(&mut rng);
        let [_, s1, _] = level_roots(p, f0)?;
        let tau = period_quadrature(p, f0)?;
        let orbit = integrate_orbit(p, PhaseState::new(s1, 0.0), 2.05 * tau, tau / 2000.0)?;
        let (_, hi) = p.window().expect("c > 0");
        drift = drift.max(orbit.f_drift / hi);
        let rk = orbit.half_period.unwrap_or(f64::NAN);
        period = period.max(((rk - tau) / tau).abs());
    }
    checks.push(Check::at_most("phase_conservation_relative", drift, 1e-9));
    checks.push(Check::at_most("period_quadrature_vs_rk4", period, 1e-6));

    let p = PhaseParams::new(0.5)?;
    let s = p.s().expect("c > 0");
    let tau = period_quadrature(p, -2.0 * s.powi(3) / 3.0 + 1e-8)?;
    checks.push(Check::at_most("small_oscillation_limit", (tau - std::f64::consts::PI / s.sqrt()).abs(), 1e-3));

    let psi_norm = (0..1000).map(|_| (psi(&SL2Matrix::random(&mut rng)).norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
    checks.push(Check::at_most("psi_unit_norm", psi_norm, 1e-12));
    let br = bracket_check();
    checks.push(Check::at_most("matrix_brackets_exact", if br.matrix_exact() { 0.0 } else { 1.0 }, 0.0));
    checks.push(Check::at_most("field_brackets_fd", br.field_max_residual(), 1e-5));

    let mut oracle = 0.0f64;
    for q in [0.5, 1.0, 2.0] {
        let d = DeformParam::new(q)?;
        for z in scan_grid(2.0, 10) {
            let k = base_curvature(d, z);
            oracle = oracle.max((curvature_fd_oracle(d, z, 1e-3) - k).abs() / k.abs().max(1.0));
        }
    }
    checks.push(Check::at_most("curvature_oracle_relative", oracle, 1e-3));
    let flat = DeformParam::new(1.0)?;
    let flat_dev = [10.0, 100.0, 1000.0]
        .iter()
        .map(|&r| (boundedness_probe(flat, r, 201).sup_abs - 12.0).abs())
        .fold(0.0, f64::max);
    checks.push(Check::at_most("flat_structure_sup_is_12", flat_dev, 0.0));
    let bent = boundedness_probe(DeformParam::new(2.0)?, 100.0, 201).sup_abs;
    checks.push(Check::above("deformed_structure_sup_r100", bent, 1e3));

    let mut wrap_fail = 0.0;
    for p in 1..=20u64 {
        for q in 1..=20u64 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let rep = classify_weights(&Weights::rational(p, q, 1.0)?);
            let l = rep.lengths.expect("rational weights have lengths");
            if wrapping_from_lengths(l.x0, l.y0, l.generic)? != (p, q) {
                wrap_fail += 1.0;
            }
        }
    }
    checks.push(Check::at_most("wrapping_recovery_failures", wrap_fail, 0.0));
    let (a, b) = Weights::golden().rates();
    checks.push(Check::at_most("golden_torus_gap", torus_gap(a, b, 100_000), 0.1));

    Ok(VerificationReport { seed, checks })
}
