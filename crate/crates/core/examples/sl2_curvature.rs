//! The SL(2,ℝ) model of S³: parametrization, vector fields, and the
//! orbit-space curvature of the deformed structures.
//!
//! `cargo run --example sl2_curvature -- [out.svg]`

use crlab::figures::curvature_scan_figure;
use crlab::report::emit_svg;
use crlab::sl2_model::*;

fn main() -> crlab::Result<()> {
    let m = SL2Matrix::new(2.0, 0.0, 0.0, 0.5)?;
    let p = psi(&m);
    println!("psi(diag(2, 1/2)) = ({}, {})", p.x, p.y);

    let br = bracket_check();
    for r in &br.relations {
        println!(
            "[{:?}, {:?}] = {} {:?}   exact: {}  field residual {:.1e}",
            r.left, r.right, r.coeff, r.result, r.matrix_exact, r.field_residual
        );
    }

    let mu_u = left_invariant_field(LeftField::MuU, &p)?;
    let push = left_pushforward(&m, Generator::U, PUSHFORWARD_FD_STEP);
    println!("left-invariant U at psi(m): {:?}\n  finite-difference:        {:?}", mu_u, push);

    println!("\nsup |K| over [-R, R]²");
    println!("{:>6} {:>12} {:>12} {:>12}", "qJ", "R = 10", "R = 100", "R = 1000");
    for q in [0.5, 1.0, 2.0, 3.0] {
        let d = DeformParam::new(q)?;
        let sups: Vec<f64> = [10.0, 100.0, 1000.0].iter().map(|&r| boundedness_probe(d, r, 201).sup_abs).collect();
        println!("{q:>6} {:>12.4e} {:>12.4e} {:>12.4e}", sups[0], sups[1], sups[2]);
    }

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, emit_svg(&curvature_scan_figure(DeformParam::new(2.0)?, 10.0, 101))).expect("write svg");
        println!("wrote {path}");
    }
    Ok(())
}
