//! Which knots L could sit between 1̄0₄₇ and the unknot in a two-step
//! unknotting.
//!
//! Run with `cargo run --example unknotting_two`.

use knot_witt::fixtures::{self, printed};
use knot_witt::report::obstruct_u2_table;
use knot_witt::unknotting::{signature_lower_bound, u2_candidate_filter};

pub fn run_example() -> knot_witt::Result<()> {
    let phi = printed::m10_47();
    println!("φ = {phi}, σ = {}", phi.signature());
    println!("signature bound: u >= {}", signature_lower_bound(phi.signature())?);

    let odd: Vec<u64> = (1..=75).step_by(2).collect();
    let dets = u2_candidate_filter(&phi, 41, -4, &odd)?;
    println!("possible det L: {dets:?}");
    assert_eq!(dets, [3, 7, 11, 15, 19, 27, 35, 47, 55, 63, 67, 71, 75]);

    let knot = fixtures::knot("m10_47").expect("bundled");
    let row = obstruct_u2_table(&knot, &fixtures::candidate_table())?.expect("has a matrix");
    let names = row.survivors.unwrap_or_default();
    println!("possible L up to nine crossings: {}", names.join(", "));
    assert_eq!(names.len(), 12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> knot_witt::Result<()> {
    run_example()
}
