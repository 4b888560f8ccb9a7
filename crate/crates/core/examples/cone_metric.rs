//! Rotationally symmetric constant-curvature metrics on the sphere with two
//! cone points of angles 2π/q1 and 2π/q2.
//!
//! `cargo run --example cone_metric -- [q1] [q2] [l] [out.svg]`

use std::f64::consts::TAU;

use crlab::figures::profile_figure;
use crlab::orbifold_metric::*;
use crlab::report::emit_svg;

fn main() -> crlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, d: f64| args.get(i).map(|s| s.parse().expect("numeric argument")).unwrap_or(d);
    let (q1, q2, l) = (num(0, 3.0) as u32, num(1, 2.0) as u32, num(2, 1.0));

    let cone = ConeData::new(q1, q2, l)?;
    let profile = construct_profile(&cone, DEFAULT_GRID, DEFAULT_TOL)?;
    let rep = construction_report(&profile);
    println!("(q1, q2, l) = ({q1}, {q2}, {l})");
    println!("s = {:.15}  k ranges over [{:.12}, {:.12}]", profile.s, profile.s1, profile.s2);
    println!("meridian length {:.12}", profile.tau);
    println!("cone angles     {:.12} {:.12}", rep.cone_angles.0, rep.cone_angles.1);
    println!("  expected      {:.12} {:.12}", TAU / q1 as f64, TAU / q2 as f64);
    println!("∫ k r dt        {:.12}  (1/q1 + 1/q2 = {:.12})", rep.gauss_bonnet, 1.0 / q1 as f64 + 1.0 / q2 as f64);
    println!("area            {:.12}  (2π(s2 - s1)/l = {:.12})", rep.area, TAU * (profile.s2 - profile.s1) / l);
    println!("max |-r''/r - k| {:.2e}, max |k' - l r| {:.2e}", rep.curvature_residual, rep.killing_residual);
    println!("bisection check  {:.2e}", uniqueness_cross_check(&cone)?);

    // two smooth poles never work
    match solve_s(&ConeData::new(1, 1, l)?) {
        Err(e) => println!("\n(1, 1): {e}"),
        Ok(s) => println!("\n(1, 1): unexpected s = {s}"),
    }
    let cert = smooth_impossibility(l, 100)?;
    println!("        residual 4l² = {} on all {} samples: {}", cert.algebraic_residual, cert.samples, cert.certified);

    if let Some(path) = args.get(3) {
        std::fs::write(path, emit_svg(&profile_figure(&profile))).expect("write svg");
        println!("wrote {path}");
    }
    Ok(())
}
