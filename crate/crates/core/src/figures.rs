//! Figure builders for the SVG output.

use crate::orbifold_metric::MetricProfile;
use crate::phase_plane::{
    fixed_points, integrate_orbit, level_roots, period_quadrature, PhaseOrbit, PhaseParams, PhaseState,
};
use crate::report::{Figure, Polyline};
use crate::sl2_model::{base_curvature, BasePoint, DeformParam};

const MAX_POINTS: usize = 2000;

fn thin(points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let stride = points.len().div_ceil(MAX_POINTS).max(1);
    let last = points.last().copied();
    let mut out: Vec<(f64, f64)> = points.into_iter().step_by(stride).collect();
    if let Some(p) = last {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    out
}

/// Closed orbits on a few levels of the periodic window, the highlighted
/// orbit if given, and the fixed points as markers.
pub fn phase_portrait(p: PhaseParams, highlight: Option<&PhaseOrbit>) -> Figure {
    let mut lines = Vec::new();
    if let Some((lo, hi)) = p.window() {
        for frac in [-0.8, -0.4, 0.0, 0.4, 0.8] {
            let f0 = lo + (hi - lo) * (frac + 1.0) / 2.0;
            let (Ok([_, s1, _]), Ok(tau)) = (level_roots(p, f0), period_quadrature(p, f0)) else {
                continue;
            };
            if let Ok(orbit) = integrate_orbit(p, PhaseState::new(s1, 0.0), 2.0 * tau, tau / 400.0) {
                let pts = orbit.samples.iter().map(|(_, s)| (s.x, s.y)).collect();
                lines.push(Polyline { points: pts, stroke: "#1f77b4" });
            }
        }
    }
    if let Some(orbit) = highlight {
        let pts = orbit.samples.iter().map(|(_, s)| (s.x, s.y)).collect();
        lines.push(Polyline { points: thin(pts), stroke: "#111111" });
    }
    Figure {
        title: format!("phase portrait, c = {}", p.c),
        lines,
        markers: fixed_points(p).iter().map(|s| (s.x, s.y)).collect(),
    }
}

/// Curvature `k(t)` and radius `r(t)` along the meridian.
pub fn profile_figure(profile: &MetricProfile) -> Figure {
    let k = profile.samples.iter().map(|s| (s.t, s.k)).collect();
    let r = profile.samples.iter().map(|s| (s.t, s.r)).collect();
    Figure {
        title: format!("meridian profile, q1 = {}, q2 = {}, l = {}", profile.cone.q1, profile.cone.q2, profile.cone.l),
        lines: vec![Polyline { points: thin(k), stroke: "#1f77b4" }, Polyline { points: thin(r), stroke: "#ff7f0e" }],
        markers: Vec::new(),
    }
}

/// Base curvature along the `u` axis and along the `v` axis of `[-R, R]`.
pub fn curvature_scan_figure(d: DeformParam, radius: f64, n: usize) -> Figure {
    let n = n.max(2);
    let coord = |i: usize| -radius + 2.0 * radius * i as f64 / (n - 1) as f64;
    let along_u = (0..n).map(|i| (coord(i), base_curvature(d, BasePoint::new(coord(i), 0.0)))).collect();
    let along_v = (0..n).map(|i| (coord(i), base_curvature(d, BasePoint::new(0.0, coord(i))))).collect();
    Figure {
        title: format!("base curvature, qJ = {}", d.value()),
        lines: vec![Polyline { points: along_u, stroke: "#1f77b4" }, Polyline { points: along_v, stroke: "#2ca02c" }],
        markers: Vec::new(),
    }
}
