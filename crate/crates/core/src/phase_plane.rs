//! The curvature equation `k'' = -k²/2 + c` as the planar flow
//! `Z = (c - x²/2) ∂y + y ∂x`.
//!
//! Orbits lie on level sets of the cubic first integral
//! `F(x, y) = y² + x³/3 - 2c·x`. For `c = s²/2 > 0` the levels in
//! `(-2s³/3, 2s³/3)` carry a closed orbit around the centre `(s, 0)`; its
//! x-axis crossings `s1 < s2` and the third root `x0` of
//! `x³ - 6c·x - 3F0` factor the integrand of the half period.

use std::f64::consts::FRAC_PI_2;

use gauss_quad::GaussLegendre;
use serde::Serialize;

use crate::cubic::depressed_real_roots;
use crate::error::{CrError, Result};
use crate::ode::{bisect_event, rk4_step};

/// Default Gauss–Legendre node count for [`period_quadrature`].
pub const DEFAULT_NODES: usize = 64;

/// Time resolution of return-time bisection.
pub const RETURN_TIME_TOL: f64 = 1e-12;

/// Parameter `c` of the curvature equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseParams {
    pub c: f64,
}

impl PhaseParams {
    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(CrError::InvalidInput(format!("c must be finite, got {c}")));
        }
        Ok(PhaseParams { c })
    }

    /// `c = s²/2`, i.e. the parameters whose centre sits at `(s, 0)`.
    pub fn from_s(s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(CrError::InvalidInput(format!("s must be positive, got {s}")));
        }
        Ok(PhaseParams { c: 0.5 * s * s })
    }

    /// `s = √(2c)` when `c > 0`.
    pub fn s(&self) -> Option<f64> {
        (self.c > 0.0).then(|| (2.0 * self.c).sqrt())
    }

    /// Open interval of levels carrying a periodic orbit.
    pub fn window(&self) -> Option<(f64, f64)> {
        self.s().map(|s| {
            let w = 2.0 * s * s * s / 3.0;
            (-w, w)
        })
    }

    fn rhs(&self) -> impl Fn([f64; 2]) -> [f64; 2] + '_ {
        move |z| [z[1], self.c - 0.5 * z[0] * z[0]]
    }
}

/// A point `(k, k')` of the phase plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseState {
    pub x: f64,
    pub y: f64,
}

impl PhaseState {
    pub fn new(x: f64, y: f64) -> Self {
        PhaseState { x, y }
    }

    fn arr(self) -> [f64; 2] {
        [self.x, self.y]
    }

    fn from_arr(z: [f64; 2]) -> Self {
        PhaseState { x: z[0], y: z[1] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LevelClass {
    /// One connected cubic carrying a single non-periodic orbit.
    SingleLine,
    /// An embedded circle (periodic orbit) plus an embedded line.
    CircleAndLine,
    /// The centre as an isolated point plus an embedded line.
    PointAndLine { point: PhaseState },
    /// A cubic with a double point at the saddle.
    NodalCubic { node: PhaseState },
    /// `c = 0`, `F0 = 0`: the level through the degenerate fixed point
    /// `(0, 0)`, which is its only periodic orbit.
    FixedPointOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelSet {
    pub f0: f64,
    /// Real roots of `x³ - 6c·x - 3F0`, ascending, with multiplicity.
    pub roots: Vec<f64>,
    pub class: LevelClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseOrbit {
    pub params: PhaseParams,
    pub f0: f64,
    pub samples: Vec<(f64, PhaseState)>,
    /// `max |F(sample) - F0|`.
    pub f_drift: f64,
    pub half_period: Option<f64>,
}

pub fn vector_field(p: PhaseParams, s: PhaseState) -> (f64, f64) {
    (s.y, p.c - 0.5 * s.x * s.x)
}

pub fn first_integral(p: PhaseParams, s: PhaseState) -> f64 {
    s.y * s.y + s.x * s.x * s.x / 3.0 - 2.0 * p.c * s.x
}

pub fn fixed_points(p: PhaseParams) -> Vec<PhaseState> {
    match p.s() {
        Some(s) => vec![PhaseState::new(-s, 0.0), PhaseState::new(s, 0.0)],
        None if p.c == 0.0 => vec![PhaseState::new(0.0, 0.0)],
        None => Vec::new(),
    }
}

fn level_roots_raw(p: PhaseParams, f0: f64) -> Vec<f64> {
    depressed_real_roots(-6.0 * p.c, -3.0 * f0)
}

pub fn classify_level(p: PhaseParams, f0: f64) -> LevelSet {
    let roots = level_roots_raw(p, f0);
    let class = match (p.s(), p.window()) {
        (Some(s), Some((lo, hi))) => {
            let tol = 1e-12 * hi.max(1.0);
            if (f0 - lo).abs() <= tol {
                LevelClass::PointAndLine { point: PhaseState::new(s, 0.0) }
            } else if (f0 - hi).abs() <= tol {
                LevelClass::NodalCubic { node: PhaseState::new(-s, 0.0) }
            } else if f0 > lo && f0 < hi {
                LevelClass::CircleAndLine
            } else {
                LevelClass::SingleLine
            }
        }
        _ if p.c == 0.0 && f0 == 0.0 => LevelClass::FixedPointOnly,
        _ => LevelClass::SingleLine,
    };
    LevelSet { f0, roots, class }
}

/// The three real roots `x0 < s1 < s2` of `x³ - 6c·x - 3F0` for a level
/// strictly inside the periodic window.
pub fn level_roots(p: PhaseParams, f0: f64) -> Result<[f64; 3]> {
    let Some((lo, hi)) = p.window() else {
        return Err(CrError::OutsideWindow { f0, lo: f64::NAN, hi: f64::NAN });
    };
    if !(f0 > lo && f0 < hi) {
        return Err(CrError::OutsideWindow { f0, lo, hi });
    }
    let r = level_roots_raw(p, f0);
    match r.as_slice() {
        &[x0, s1, s2] => Ok([x0, s1, s2]),
        _ => Err(CrError::OutsideWindow { f0, lo, hi }),
    }
}

/// Points `(s1, 0)`, `(s2, 0)` where the closed orbit on level `F0`
/// crosses the x-axis; `s1 ∈ (-s, s)`, `s2 ∈ (s, 2s)`.
pub fn crossings(p: PhaseParams, f0: f64) -> Result<(f64, f64)> {
    let [_, s1, s2] = level_roots(p, f0)?;
    Ok((s1, s2))
}

/// Half period τ of the closed orbit on level `F0`, with the default node count.
pub fn period_quadrature(p: PhaseParams, f0: f64) -> Result<f64> {
    period_quadrature_with(p, f0, DEFAULT_NODES)
}

/// Half period `τ = ∫_{s1}^{s2} dk / √((k - x0)(k - s1)(s2 - k)/3)`.
///
/// With `k = s1 + (s2 - s1) sin²θ` the endpoint square roots cancel and
/// `τ = 2√3 ∫_0^{π/2} dθ / √(k(θ) - x0)`, integrated by Gauss–Legendre.
pub fn period_quadrature_with(p: PhaseParams, f0: f64, nodes: usize) -> Result<f64> {
    let [x0, s1, s2] = level_roots(p, f0)?;
    let rule = GaussLegendre::new(nodes.max(2)).map_err(|e| CrError::InvalidInput(format!("quadrature rule: {e}")))?;
    let width = s2 - s1;
    let base = s1 - x0;
    let integral = rule.integrate(0.0, FRAC_PI_2, |theta| {
        let sn = theta.sin();
        1.0 / (base + width * sn * sn).sqrt()
    });
    Ok(2.0 * 3f64.sqrt() * integral)
}

/// Constants `(w_p, w_q)` of the Weierstrass form `(z')² = z³ + w_p z + w_q`
/// satisfied by `z = -k/3` for a solution `k` on level `F0`.
pub fn weierstrass_reduce(p: PhaseParams, f0: f64) -> (f64, f64) {
    (-2.0 * p.c / 3.0, f0 / 9.0)
}

/// Single RK4 step of the flow.
pub fn rk4(p: PhaseParams, s: PhaseState, h: f64) -> PhaseState {
    PhaseState::from_arr(rk4_step(&p.rhs(), s.arr(), h))
}

/// Integrates `Z` with fixed-step RK4 from `start` over `[0, t_end]`.
///
/// The step is shrunk so that a whole number of steps lands on `t_end`.
/// When the start lies on the closed component of a periodic level, the
/// upward crossings of the section `{y = 0, x < s}` are located by
/// bisection and `half_period` is half of the return time.
pub fn integrate_orbit(p: PhaseParams, start: PhaseState, t_end: f64, step: f64) -> Result<PhaseOrbit> {
    if !(step.is_finite() && step > 0.0) {
        return Err(CrError::InvalidInput(format!("step must be positive, got {step}")));
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(CrError::InvalidInput(format!("t_end must be non-negative, got {t_end}")));
    }
    let n = (t_end / step).ceil().max(1.0) as usize;
    let h = t_end / n as f64;
    let f0 = first_integral(p, start);
    let rhs = p.rhs();

    let on_circle = match (classify_level(p, f0).class, level_roots(p, f0)) {
        (LevelClass::CircleAndLine, Ok([x0, s1, _])) => start.x > 0.5 * (x0 + s1),
        _ => false,
    };
    let s = p.s().unwrap_or(0.0);
    let y_scale = f0.abs().max(p.c.abs()).max(1.0).sqrt();
    let starts_on_section = start.y.abs() <= 1e-14 * y_scale && start.x < s;

    let mut samples = Vec::with_capacity(n + 1);
    samples.push((0.0, start));
    let mut drift = 0.0f64;
    let mut section_hits: Vec<f64> = Vec::new();
    let mut z = start.arr();
    for i in 0..n {
        let t = i as f64 * h;
        let next = rk4_step(&rhs, z, h);
        if on_circle && section_hits.len() < 2 && z[1] < 0.0 && next[1] >= 0.0 && next[0] < s {
            let (d, _) = bisect_event(&rhs, z, h, |w| w[1], RETURN_TIME_TOL);
            section_hits.push(t + d);
        }
        z = next;
        let st = PhaseState::from_arr(z);
        drift = drift.max((first_integral(p, st) - f0).abs());
        samples.push(((i + 1) as f64 * h, st));
    }

    let limit = 1e-6 * (1.0 + f0.abs());
    if drift > limit {
        return Err(CrError::StepTooLarge { drift, limit });
    }
    let period = match (starts_on_section, section_hits.as_slice()) {
        (true, [first, ..]) => Some(*first),
        (false, [first, second, ..]) => Some(second - first),
        _ => None,
    };
    Ok(PhaseOrbit { params: p, f0, samples, f_drift: drift, half_period: period.map(|t| t / 2.0) })
}
