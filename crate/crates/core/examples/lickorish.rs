//! Lickorish's congruence test on lens-space double branched covers.
//!
//! Run with `cargo run --example lickorish`.

use knot_witt::unknotting::{lickorish_solvable, lickorish_witness, LensSurgeryDescription};

pub fn run_example() -> knot_witt::Result<()> {
    for (p, q) in [(15, 4), (25, 9), (15, 2), (7, 2)] {
        let lens = LensSurgeryDescription::new(p, q)?;
        let solvable = lickorish_solvable(&lens, p as u64)?;
        match lickorish_witness(q, p as u64) {
            Some(t) => println!("L({p},{q}): q = ±2·{t}² mod {p}"),
            None => println!("L({p},{q}): no solution, u > 1"),
        }
        assert_eq!(solvable, !matches!((p, q), (15, 4) | (25, 9)));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> knot_witt::Result<()> {
    run_example()
}
