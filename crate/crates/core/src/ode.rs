//! Fixed-step classical Runge–Kutta for planar autonomous systems.

/// One RK4 step of `z' = f(z)` with step `h`.
pub fn rk4_step<F>(f: &F, z: [f64; 2], h: f64) -> [f64; 2]
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    let add = |a: [f64; 2], b: [f64; 2], s: f64| [a[0] + s * b[0], a[1] + s * b[1]];
    let k1 = f(z);
    let k2 = f(add(z, k1, h / 2.0));
    let k3 = f(add(z, k2, h / 2.0));
    let k4 = f(add(z, k3, h));
    [
        z[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        z[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Locates, by bisection on the sub-step length, the time in `(0, h]` at
/// which `g(z(δ))` changes sign, where `z(δ)` is a single RK4 step of
/// length `δ` from `z`. Requires `g(z) < 0 <= g(rk4_step(z, h))`.
/// Returns `(δ, z(δ))`.
pub fn bisect_event<F, G>(f: &F, z: [f64; 2], h: f64, g: G, tol: f64) -> (f64, [f64; 2])
where
    F: Fn([f64; 2]) -> [f64; 2],
    G: Fn([f64; 2]) -> f64,
{
    let (mut lo, mut hi) = (0.0, h);
    let mut z_hi = rk4_step(f, z, h);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let z_mid = rk4_step(f, z, mid);
        if g(z_mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
            z_hi = z_mid;
        }
    }
    (hi, z_hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_quarter_period() {
        // x' = y, y' = -x from (1, 0): x crosses zero at t = π/2
        let f = |z: [f64; 2]| [z[1], -z[0]];
        let h = 1e-3;
        let mut z = [1.0, 0.0];
        let mut t = 0.0;
        loop {
            let next = rk4_step(&f, z, h);
            if next[0] <= 0.0 {
                let (d, _) = bisect_event(&f, z, h, |w| -w[0], 1e-14);
                t += d;
                break;
            }
            z = next;
            t += h;
        }
        assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
