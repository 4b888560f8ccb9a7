//! Orbit structure of weighted Reeb flows on S³.
//!
//! `cargo run --example reeb_orbits`

use crlab::reeb_flow::{classify_weights, torus_gap, wrapping_from_lengths, Weights};

fn main() -> crlab::Result<()> {
    println!("{:>3} {:>3}  {:<12} {:>8} {:>8} {:>8}  wrapping", "p", "q", "class", "len x=0", "len y=0", "generic");
    for (p, q) in [(1, 1), (1, 2), (2, 3), (3, 5), (4, 7)] {
        let rep = classify_weights(&Weights::rational(p, q, 1.0)?);
        let l = rep.lengths.expect("rational weights have closed orbits");
        let wrap = wrapping_from_lengths(l.x0, l.y0, l.generic)?;
        println!(
            "{p:>3} {q:>3}  {:<12} {:>8.3} {:>8.3} {:>8.3}  {wrap:?}",
            format!("{:?}", rep.class),
            l.x0,
            l.y0,
            l.generic
        );
    }

    // an irrational slope fills the torus, a rational one does not
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    println!("\nlargest empty disc on the torus |x| = |y| = 1/√2:");
    println!("{:>8} {:>10} {:>10}", "samples", "golden", "2:3");
    for n in [100, 1_000, 10_000, 100_000] {
        println!("{n:>8} {:>10.4} {:>10.4}", torus_gap(1.0, golden, n), torus_gap(2.0, 3.0, n));
    }
    Ok(())
}
