//! The unknotting-number-one test on the bundled knots.
//!
//! Run with `cargo run --example unknotting_one`.

use knot_witt::fixtures;
use knot_witt::unknotting::{u1_obstruction, UnknottingCategory};

pub fn run_example() -> knot_witt::Result<()> {
    for record in fixtures::worked_knots() {
        let knot = record.resolve()?;
        let phi = knot.phi.expect("bundled knots carry matrices");
        let verdict = u1_obstruction(&phi, knot.det, knot.sigma)?;
        println!("{:<6} det {:>3}  σ {:>2}  {verdict}", record.name, knot.det, knot.sigma);
        if let Some(sep) = verdict.witness() {
            println!("        smallest separation {sep}");
        }
    }
    let k = fixtures::knot("11a16").expect("bundled").resolve()?;
    let verdict = u1_obstruction(k.phi.as_ref().expect("matrix"), k.det, k.sigma)?;
    assert_eq!(verdict.category(), UnknottingCategory::AllExcluded);
    assert_eq!(verdict.common_witness().map(|p| p.to_string()).as_deref(), Some("5"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> knot_witt::Result<()> {
    run_example()
}
