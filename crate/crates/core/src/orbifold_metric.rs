//! Rotationally symmetric metrics `dt² + r(t)² dθ²` on the 2-sphere with
//! cone points of angles `2π/q1` and `2π/q2` at the poles, whose curvature
//! `k` satisfies `k' = l·r` and `r'' = -k·r`.
//!
//! Eliminating `r` gives `k'' = (s² - k²)/2`, so the meridian is half of a
//! closed orbit of the phase-plane flow with `c = s²/2`. The cone
//! conditions `|r'| = 1/q_i` at the poles pin `s` uniquely.

use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{CrError, Result};
use crate::ode::{bisect_event, rk4_step};
use crate::phase_plane::{rk4, PhaseParams, PhaseState};

pub const DEFAULT_GRID: usize = 2048;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Cone data `(q1, q2, l)`: pole angles `2π/q1`, `2π/q2` and the homothety scale `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeData {
    pub q1: f64,
    pub q2: f64,
    pub l: f64,
    pub allow_real_cones: bool,
}

fn check_scale(l: f64) -> Result<()> {
    if l.is_finite() && l > 0.0 {
        Ok(())
    } else {
        Err(CrError::InvalidInput(format!("l must be positive, got {l}")))
    }
}

impl ConeData {
    /// Integer cone orders with `q1 >= q2 >= 1`, coprime when both exceed 1.
    ///
    /// `q1 == q2` is accepted here so that [`solve_s`] can report the
    /// absence of a metric.
    pub fn new(q1: u32, q2: u32, l: f64) -> Result<Self> {
        check_scale(l)?;
        if q2 == 0 || q1 < q2 {
            return Err(CrError::InvalidInput(format!("need q1 >= q2 >= 1, got ({q1}, {q2})")));
        }
        if q1 != q2 && q2 > 1 && q1.gcd(&q2) != 1 {
            return Err(CrError::InvalidInput(format!("q1 = {q1} and q2 = {q2} are not coprime")));
        }
        Ok(ConeData { q1: q1 as f64, q2: q2 as f64, l, allow_real_cones: false })
    }

    /// Real cone parameters, `q1 >= q2 > 0`.
    pub fn with_real_cones(q1: f64, q2: f64, l: f64) -> Result<Self> {
        check_scale(l)?;
        if !(q2.is_finite() && q2 > 0.0 && q1.is_finite() && q1 >= q2) {
            return Err(CrError::InvalidInput(format!("need q1 >= q2 > 0, got ({q1}, {q2})")));
        }
        Ok(ConeData { q1, q2, l, allow_real_cones: true })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    pub k: f64,
    pub r: f64,
    pub r_prime: f64,
}

/// Meridian profile on a uniform arc-length grid over `[0, τ]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricProfile {
    pub cone: ConeData,
    pub s: f64,
    pub s1: f64,
    pub s2: f64,
    /// Meridian length.
    pub tau: f64,
    pub samples: Vec<ProfileSample>,
    /// `r'` at `t = 0` and `t = τ`, from `r' = (s² - k²)/(2l)` at the integrated endpoints.
    pub r_prime_poles: (f64, f64),
}

impl MetricProfile {
    pub fn dt(&self) -> f64 {
        self.tau / (self.samples.len() - 1) as f64
    }

    pub fn k(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.k).collect()
    }

    pub fn r(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.r).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub cone_angles: (f64, f64),
    pub gauss_bonnet: f64,
    pub area: f64,
    pub curvature_residual: f64,
    pub killing_residual: f64,
}

/// Closed-form `s` for `q1 > q2`:
/// `s² = l·((2/q2)³ + (2/q1)³) / (3((2/q2)² - (2/q1)²))`.
pub fn solve_s(cone: &ConeData) -> Result<f64> {
    if cone.q1 == cone.q2 {
        return Err(CrError::NoSolution(format!("equal cone orders q1 = q2 = {} force s^4 - 4l^2/q^2 = s^4", cone.q1)));
    }
    let a = 2.0 / cone.q1;
    let b = 2.0 / cone.q2;
    Ok((cone.l * (b * b * b + a * a * a) / (3.0 * (b * b - a * a))).sqrt())
}

/// Pole curvatures `(s1, s2)` from `s² - s1² = 2l/q1`, `s2² - s² = 2l/q2`,
/// with the sign of `s1` fixed by `s1·s2 = 3s² - s1² - s2²`.
pub fn endpoints(cone: &ConeData, s: f64) -> Result<(f64, f64)> {
    let s_sq = s * s;
    let mut s1_sq = s_sq - 2.0 * cone.l / cone.q1;
    if s1_sq < 0.0 {
        if s1_sq > -1e-14 * s_sq {
            s1_sq = 0.0;
        } else {
            return Err(CrError::NoSolution(format!("s1^2 = {s1_sq} < 0")));
        }
    }
    let s2_sq = s_sq + 2.0 * cone.l / cone.q2;
    let s2 = s2_sq.sqrt();
    let product = 3.0 * s_sq - s1_sq - s2_sq;
    let s1 = if product < 0.0 { -s1_sq.sqrt() } else { s1_sq.sqrt() };
    if !(s1 > -s && s1 < s && s2 > s && s2 < 2.0 * s) {
        return Err(CrError::NoSolution(format!("crossings ({s1}, {s2}) do not surround the centre s = {s}")));
    }
    Ok((s1, s2))
}

/// Integrates `k'' = (s² - k²)/2` from `(k, k') = (s1, 0)` to the next
/// zero of `k'` (the second pole) and samples `n_grid + 1` uniform points.
/// `n_grid` is rounded up to an even number of at least 8.
pub fn construct_profile(cone: &ConeData, n_grid: usize, tol: f64) -> Result<MetricProfile> {
    let s = solve_s(cone)?;
    let (s1, s2) = endpoints(cone, s)?;
    let params = PhaseParams::from_s(s)?;
    let n = n_grid.max(8).div_ceil(2) * 2;
    let l = cone.l;

    let horizon = 10.0 * PI / s.sqrt();
    let h = PI / s.sqrt() / n.max(256) as f64;
    let rhs = |z: [f64; 2]| [z[1], params.c - 0.5 * z[0] * z[0]];
    let mut z = [s1, 0.0];
    let mut t = 0.0;
    let mut tau = loop {
        if t > horizon {
            return Err(CrError::EventNotFound { horizon });
        }
        let next = rk4_step(&rhs, z, h);
        if t > 0.0 && z[1] > 0.0 && next[1] <= 0.0 {
            let (d, _) = bisect_event(&rhs, z, h, |w| -w[1], tol);
            break t + d;
        }
        z = next;
        t += h;
    };

    // Newton on the sampling grid itself, so that its last step lands on
    // k' = 0 rather than on the event grid's estimate of it.
    let end_state = |tau: f64| {
        let dt = tau / n as f64;
        (0..n).fold(PhaseState::new(s1, 0.0), |st, _| rk4(params, st, dt))
    };
    for _ in 0..4 {
        let end = end_state(tau);
        let slope = params.c - 0.5 * end.x * end.x;
        let shift = end.y / slope;
        tau -= shift;
        if shift.abs() <= f64::EPSILON * tau {
            break;
        }
    }

    let dt = tau / n as f64;
    let r_prime = |k: f64| (params.c - 0.5 * k * k) / l;
    let mut samples = Vec::with_capacity(n + 1);
    let mut st = PhaseState::new(s1, 0.0);
    for i in 0..=n {
        let r = if i == 0 || i == n { 0.0 } else { st.y / l };
        samples.push(ProfileSample { t: i as f64 * dt, k: st.x, r, r_prime: r_prime(st.x) });
        st = rk4(params, st, dt);
    }
    let r_prime_poles = (samples[0].r_prime, samples[n].r_prime);
    Ok(MetricProfile { cone: *cone, s, s1, s2, tau, samples, r_prime_poles })
}

/// Total angles `2π|r'|` at the two poles, with `r'` taken from one-sided
/// fourth-order differences of the sampled `r`.
pub fn cone_angles(profile: &MetricProfile) -> (f64, f64) {
    let (r, dt) = (profile.r(), profile.dt());
    let n = r.len() - 1;
    let d = |f: [f64; 5]| (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * dt);
    let head = d([r[0], r[1], r[2], r[3], r[4]]);
    let tail = d([r[n], r[n - 1], r[n - 2], r[n - 3], r[n - 4]]);
    (TAU * head.abs(), TAU * tail.abs())
}

fn simpson(dt: f64, f: impl Fn(usize) -> f64, n: usize) -> f64 {
    let mut acc = f(0) + f(n);
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i);
    }
    acc * dt / 3.0
}

/// `∫ k·r dt` over the meridian; equals `1/q1 + 1/q2` for an exact profile.
pub fn gauss_bonnet(profile: &MetricProfile) -> f64 {
    let sm = &profile.samples;
    simpson(profile.dt(), |i| sm[i].k * sm[i].r, sm.len() - 1)
}

/// Area `2π ∫ r dt`; equals `2π(s2 - s1)/l` for an exact profile.
pub fn area(profile: &MetricProfile) -> f64 {
    let sm = &profile.samples;
    TAU * simpson(profile.dt(), |i| sm[i].r, sm.len() - 1)
}

fn second_derivative(f: &[f64], i: usize, dt: f64) -> f64 {
    (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * dt * dt)
}

fn first_derivative(f: &[f64], i: usize, dt: f64) -> f64 {
    (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * dt)
}

/// `max |-r''/r - k|` on `[margin, T - margin]` for uniformly sampled
/// `k`, `r` with spacing `dt`, using fourth-order central differences.
pub fn curvature_residual_samples(dt: f64, k: &[f64], r: &[f64], margin: f64) -> f64 {
    let n = r.len();
    let end = (n - 1) as f64 * dt;
    (2..n.saturating_sub(2))
        .filter(|&i| {
            let t = i as f64 * dt;
            t >= margin && t <= end - margin
        })
        .map(|i| (-second_derivative(r, i, dt) / r[i] - k[i]).abs())
        .fold(0.0, f64::max)
}

pub fn curvature_residual(profile: &MetricProfile, margin: f64) -> f64 {
    curvature_residual_samples(profile.dt(), &profile.k(), &profile.r(), margin)
}

/// `max |k' - l·r|` with `k'` from fourth-order differences of the sampled `k`.
pub fn killing_residual(profile: &MetricProfile) -> f64 {
    let (k, r, dt) = (profile.k(), profile.r(), profile.dt());
    (2..k.len() - 2).map(|i| (first_derivative(&k, i, dt) - profile.cone.l * r[i]).abs()).fold(0.0, f64::max)
}

pub fn construction_report(profile: &MetricProfile) -> ConstructionReport {
    ConstructionReport {
        cone_angles: cone_angles(profile),
        gauss_bonnet: gauss_bonnet(profile),
        area: area(profile),
        curvature_residual: curvature_residual(profile, profile.tau / 20.0),
        killing_residual: killing_residual(profile),
    }
}

/// Solves the pole system by bisection in `s`, without the closed form.
///
/// With `s1² = s² - 2l/q1` and `s2² = s² + 2l/q2`, the relation
/// `s1² + s1·s2 + s2² = 3s²` squared reads
/// `s1²·s2² = (3s² - s1² - s2²)²`; its residual changes sign once on
/// the bracket `[√(2l/q1), 10√l]`.
pub fn uniqueness_root(cone: &ConeData) -> Result<f64> {
    let l = cone.l;
    let residual = |s: f64| {
        let s1_sq = s * s - 2.0 * l / cone.q1;
        let s2_sq = s * s + 2.0 * l / cone.q2;
        let prod = 3.0 * s * s - s1_sq - s2_sq;
        s1_sq * s2_sq - prod * prod
    };
    // nudge the lower end below √(2l/q1) so a root sitting exactly there
    // (q1 = 2·q2) is still bracketed despite rounding
    let mut lo = (2.0 * l / cone.q1).sqrt() * (1.0 - 1e-9);
    let mut hi = 10.0 * l.sqrt();
    let (f_lo, f_hi) = (residual(lo), residual(hi));
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(CrError::NoRootFound(format!("no sign change on [{lo}, {hi}]: residuals {f_lo:e}, {f_hi:e}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `|s_root - solve_s(cone)|` for the bisection root of [`uniqueness_root`].
pub fn uniqueness_cross_check(cone: &ConeData) -> Result<f64> {
    let closed = solve_s(cone)?;
    Ok((uniqueness_root(cone)? - closed).abs())
}

/// Evidence that smooth poles (`q1 = q2 = 1`) admit no solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpossibilityCertificate {
    pub l: f64,
    pub samples: usize,
    /// Smallest `|s1²·s2² - (s1·s2)²|` over the grid, evaluated exactly.
    pub min_residual: f64,
    /// `4l²`, computed exactly from `l`.
    pub algebraic_residual: f64,
    /// Every sampled residual equals `4l²` exactly, and that is nonzero.
    pub certified: bool,
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

/// For smooth poles, `s1² = s² - 2l`, `s2² = s² + 2l` and `s1·s2 = s²`
/// cannot hold together: `s1²·s2² - (s1·s2)² = -4l²` for every `s`.
///
/// Samples `s` log-uniformly on `[2·10⁻³√l, 10³√l]` and evaluates the
/// residual in exact rational arithmetic on the floating-point inputs.
pub fn smooth_impossibility(l: f64, s_grid: usize) -> Result<ImpossibilityCertificate> {
    check_scale(l)?;
    let n = s_grid.max(1);
    let (lo, hi) = ((2e-3 * l.sqrt()).ln(), (1e3 * l.sqrt()).ln());
    let two_l = exact(2.0) * exact(l);
    let four_l_sq = &two_l * &two_l;
    let three = BigRational::from_integer(BigInt::from(3));
    let mut min_res: Option<BigRational> = None;
    let mut all_equal = true;
    for i in 0..n {
        let frac = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
        let s = (lo + frac * (hi - lo)).exp();
        let s_sq = exact(s) * exact(s);
        let s1_sq = &s_sq - &two_l;
        let s2_sq = &s_sq + &two_l;
        let prod = &three * &s_sq - &s1_sq - &s2_sq;
        let res = (&s1_sq * &s2_sq - &prod * &prod).abs();
        all_equal &= res == four_l_sq;
        min_res = Some(match min_res {
            Some(m) if m <= res => m,
            _ => res,
        });
    }
    let min_res = min_res.unwrap_or_else(BigRational::zero);
    Ok(ImpossibilityCertificate {
        l,
        samples: n,
        min_residual: min_res.to_f64().unwrap_or(f64::NAN),
        algebraic_residual: four_l_sq.to_f64().unwrap_or(f64::NAN),
        certified: all_equal && four_l_sq > BigRational::zero(),
    })
}
