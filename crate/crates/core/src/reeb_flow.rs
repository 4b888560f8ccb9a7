//! Weighted Reeb flows `i·a·x ∂x + i·b·y ∂y` on the unit sphere of ℂ².
//!
//! Rational weight ratios give closed orbits (regular or quasi-regular);
//! irrational ones give orbits dense in the invariant tori. Rationality is
//! declared by the caller through the [`Weights`] constructor and never
//! guessed from a float.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{CrError, Result};

/// Tolerance used to decide that a length ratio is an integer.
pub const RATIO_TOL: f64 = 1e-9;

/// Tolerance on `|x|² + |y|² = 1` for [`SphereState`].
pub const SPHERE_TOL: f64 = 1e-12;

/// Time step between torus samples; irrational relative to 2π.
pub const TORUS_SAMPLE_DT: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum WeightKind {
    /// Coprime wrapping data `p, q` and the orbit-length scale `c`.
    RationalPair { p: u64, q: u64, c: f64 },
    /// An irrational ratio of the two weights, flagged as such by the caller.
    IrrationalRatio { value: f64, certificate: String },
}

/// Weights of a Reeb flow on S³.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Weights(WeightKind);

impl Weights {
    /// Rational weights; `p/q` is reduced to lowest terms.
    pub fn rational(p: u64, q: u64, c: f64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(CrError::InvalidInput("p and q must be positive".into()));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(CrError::InvalidInput(format!("scale c must be positive, got {c}")));
        }
        let g = p.gcd(&q);
        Ok(Weights(WeightKind::RationalPair { p: p / g, q: q / g, c }))
    }

    /// Irrational weight ratio. The `certificate` records why the caller
    /// knows the value is irrational (e.g. `"golden"`).
    pub fn irrational(value: f64, certificate: impl Into<String>) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(CrError::InvalidInput(format!("ratio must be positive, got {value}")));
        }
        Ok(Weights(WeightKind::IrrationalRatio { value, certificate: certificate.into() }))
    }

    pub fn golden() -> Self {
        Weights(WeightKind::IrrationalRatio { value: (1.0 + 5f64.sqrt()) / 2.0, certificate: "golden".into() })
    }

    pub fn kind(&self) -> &WeightKind {
        &self.0
    }

    /// Angular speeds `(a, b)` of the flow `(e^{iat}x, e^{ibt}y)`.
    ///
    /// For rational weights these are `(2π/(p·c), 2π/(q·c))`, so the circle
    /// `{y = 0}` has period `p·c`, the circle `{x = 0}` has period `q·c` and a
    /// generic orbit closes after `p·q·c`. Irrational weights map to `(1, value)`.
    pub fn rates(&self) -> (f64, f64) {
        match &self.0 {
            WeightKind::RationalPair { p, q, c } => (TAU / (*p as f64 * c), TAU / (*q as f64 * c)),
            WeightKind::IrrationalRatio { value, .. } => (1.0, *value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Regular,
    QuasiRegular,
    Irregular,
}

/// Lengths of the exceptional orbits in `{x = 0}`, `{y = 0}` and of a generic orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitLengths {
    pub x0: f64,
    pub y0: f64,
    pub generic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub class: Regularity,
    pub lengths: Option<OrbitLengths>,
    pub wrapping: Option<(u64, u64)>,
}

pub fn classify_weights(w: &Weights) -> RegularityReport {
    match w.kind() {
        WeightKind::RationalPair { p, q, c } => {
            let (pf, qf) = (*p as f64, *q as f64);
            let class = if *p == 1 && *q == 1 { Regularity::Regular } else { Regularity::QuasiRegular };
            RegularityReport {
                class,
                lengths: Some(OrbitLengths { x0: qf * c, y0: pf * c, generic: pf * qf * c }),
                wrapping: Some((*p, *q)),
            }
        }
        WeightKind::IrrationalRatio { .. } => {
            RegularityReport { class: Regularity::Irregular, lengths: None, wrapping: None }
        }
    }
}

fn integral_ratio(num: f64, den: f64) -> Result<u64> {
    let ratio = num / den;
    let rounded = ratio.round();
    if rounded < 1.0 || (ratio - rounded).abs() > RATIO_TOL * rounded {
        return Err(CrError::NonIntegerRatio { ratio, tol: RATIO_TOL });
    }
    Ok(rounded as u64)
}

/// Recovers the wrapping numbers `(p, q)` from the three orbit lengths:
/// `p = generic / len_x0`, `q = generic / len_y0`.
pub fn wrapping_from_lengths(len_x0: f64, len_y0: f64, len_generic: f64) -> Result<(u64, u64)> {
    for (name, v) in [("len_x0", len_x0), ("len_y0", len_y0), ("len_generic", len_generic)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CrError::InvalidInput(format!("{name} must be positive, got {v}")));
        }
    }
    let p = integral_ratio(len_generic, len_x0)?;
    let q = integral_ratio(len_generic, len_y0)?;
    if p.gcd(&q) != 1 {
        return Err(CrError::InvalidInput(format!("lengths give non-coprime wrapping numbers ({p}, {q})")));
    }
    Ok((p, q))
}

/// A point of the unit sphere in ℂ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereState {
    pub x: Complex64,
    pub y: Complex64,
}

impl SphereState {
    pub fn new(x: Complex64, y: Complex64) -> Result<Self> {
        let n = x.norm_sqr() + y.norm_sqr();
        if (n - 1.0).abs() > SPHERE_TOL {
            return Err(CrError::InvalidInput(format!("|x|^2 + |y|^2 = {n}, not 1")));
        }
        Ok(SphereState { x, y })
    }

    /// Rescales a nonzero pair onto the sphere.
    pub fn normalized(x: Complex64, y: Complex64) -> Self {
        let n = (x.norm_sqr() + y.norm_sqr()).sqrt();
        SphereState { x: x / n, y: y / n }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x.norm_sqr() + self.y.norm_sqr()
    }
}

/// Time-`t` map of `i·a·x ∂x + i·b·y ∂y`.
pub fn flow(a: f64, b: f64, t: f64, s: SphereState) -> SphereState {
    SphereState { x: Complex64::cis(a * t) * s.x, y: Complex64::cis(b * t) * s.y }
}

/// Density diagnostic for the orbit angles `(a·t, b·t) mod 2π`.
///
/// Uses `G = ⌈√n / 4⌉` cells per side. See [`torus_gap_on_grid`].
pub fn torus_gap(a: f64, b: f64, n_samples: usize) -> f64 {
    let g = ((n_samples.max(1) as f64).sqrt() / 4.0).ceil().max(1.0) as usize;
    torus_gap_on_grid(a, b, n_samples, g)
}

/// Samples `n` orbit points at times `j·Δt` and bins them into a `g × g`
/// grid on the flat torus `[0, 2π)²`.
///
/// Returns `D + ρ`, where `ρ` is the cell circumradius and `D` the largest
/// distance from a cell centre to the nearest occupied cell centre (torus
/// metric). A fully covered grid gives `ρ`; a single sample on a single
/// cell gives `π√2`, the diameter of the flat torus. For a fixed `g` the
/// value cannot increase with `n` because the sample sequence is nested.
pub fn torus_gap_on_grid(a: f64, b: f64, n_samples: usize, g: usize) -> f64 {
    let g = g.max(1);
    let n = n_samples.max(1);
    let side = TAU / g as f64;
    let mut occupied = vec![false; g * g];
    for j in 0..n {
        let t = j as f64 * TORUS_SAMPLE_DT;
        let u = (a * t).rem_euclid(TAU);
        let v = (b * t).rem_euclid(TAU);
        let i = ((u / side) as usize).min(g - 1);
        let k = ((v / side) as usize).min(g - 1);
        occupied[i * g + k] = true;
    }
    let rho = side * std::f64::consts::SQRT_2 / 2.0;
    let filled: Vec<(usize, usize)> = (0..g * g).filter(|&c| occupied[c]).map(|c| (c / g, c % g)).collect();
    let wrap = |d: usize| d.min(g - d) as f64;
    let mut worst = 0.0f64;
    for cell in (0..g * g).filter(|&c| !occupied[c]) {
        let (ci, ck) = (cell / g, cell % g);
        let nearest = filled
            .iter()
            .map(|&(fi, fk)| {
                let di = wrap(ci.abs_diff(fi));
                let dk = wrap(ck.abs_diff(fk));
                di * di + dk * dk
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(nearest);
    }
    debug_assert!(worst.is_finite());
    worst.sqrt() * side + rho
}

/// Diameter of the flat torus `[0, 2π)²`.
pub const TORUS_DIAMETER: f64 = PI * std::f64::consts::SQRT_2;
