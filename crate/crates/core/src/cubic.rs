//! Real roots of the depressed cubic `x³ + p·x + q = 0`.
//!
//! Three-real-root case uses the trigonometric form; the single-root case
//! uses the hyperbolic forms. Every root is Newton-polished.

use std::f64::consts::TAU;

const POLISH_ITERS: usize = 8;

fn eval(p: f64, q: f64, x: f64) -> f64 {
    (x * x + p) * x + q
}

fn polish(p: f64, q: f64, mut x: f64) -> f64 {
    for _ in 0..POLISH_ITERS {
        let f = eval(p, q, x);
        let df = 3.0 * x * x + p;
        if f == 0.0 || df == 0.0 {
            break;
        }
        let step = f / df;
        let next = x - step;
        // near a double root Newton can wander; keep only improving steps
        if eval(p, q, next).abs() >= f.abs() {
            break;
        }
        x = next;
        if step.abs() <= 1e-13 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// All real roots of `x³ + p·x + q`, sorted ascending, repeated roots
/// listed with multiplicity whenever the discriminant vanishes.
pub fn depressed_real_roots(p: f64, q: f64) -> Vec<f64> {
    if p == 0.0 {
        return vec![polish(p, q, (-q).cbrt())];
    }
    // sign of 4p³ + 27q² decides the number of real roots
    let disc = 4.0 * p * p * p + 27.0 * q * q;
    let scale = 4.0 * p.abs().powi(3) + 27.0 * q * q;
    if p < 0.0 && disc <= 1e-14 * scale {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = ((3.0 * q) / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let mut roots: Vec<f64> = (0..3).map(|k| polish(p, q, m * (theta - TAU * k as f64 / 3.0).cos())).collect();
        roots.sort_by(|a, b| a.total_cmp(b));
        roots
    } else if p > 0.0 {
        let m = 2.0 * (p / 3.0).sqrt();
        let arg = (3.0 * q) / (p * m);
        vec![polish(p, q, -m * (arg.asinh() / 3.0).sinh())]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (-3.0 * q.abs()) / (p * m);
        vec![polish(p, q, -q.signum() * m * (arg.acosh() / 3.0).cosh())]
    }
}
