//! Level sets, periods and a portrait of the curvature phase plane
//! `x' = y`, `y' = c - x²/2`.
//!
//! `cargo run --example phase_portrait -- [c] [out.svg]`

use crlab::figures::phase_portrait;
use crlab::phase_plane::*;
use crlab::report::emit_svg;

fn main() -> crlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let c: f64 = args.next().map(|s| s.parse().expect("c must be a number")).unwrap_or(0.5);
    let svg = args.next();

    let p = PhaseParams::new(c)?;
    let (lo, hi) = p.window().expect("closed orbits need c > 0");
    println!("c = {c}, closed orbits for F0 in ({lo:.6}, {hi:.6})");
    println!("fixed points: {:?}", fixed_points(p));
    println!("\n{:>10} {:>10} {:>10} {:>12} {:>12}", "F0", "s1", "s2", "half period", "rk4");
    for frac in [-0.95, -0.5, 0.0, 0.5, 0.95] {
        let f0 = frac * hi;
        let (s1, s2) = crossings(p, f0)?;
        let tau = period_quadrature(p, f0)?;
        let orbit = integrate_orbit(p, PhaseState::new(s1, 0.0), 2.05 * tau, tau / 2000.0)?;
        let rk = orbit.half_period.unwrap_or(f64::NAN);
        println!("{f0:>10.5} {s1:>10.6} {s2:>10.6} {tau:>12.8} {rk:>12.8}");
    }

    for f0 in [lo, 0.0, hi, 2.0 * hi] {
        println!("level F = {f0:.4}: {:?}", classify_level(p, f0).class);
    }

    if let Some(path) = svg {
        let f0 = 0.3 * hi;
        let (s1, _) = crossings(p, f0)?;
        let tau = period_quadrature(p, f0)?;
        let orbit = integrate_orbit(p, PhaseState::new(s1, 0.0), 2.0 * tau, tau / 500.0)?;
        std::fs::write(&path, emit_svg(&phase_portrait(p, Some(&orbit)))).expect("write svg");
        println!("wrote {path}");
    }
    Ok(())
}
