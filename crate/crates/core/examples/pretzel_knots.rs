//! Closed-form classes of pretzel knots and the two family checks.
//!
//! Run with `cargo run --example pretzel_knots`.

use knot_witt::pretzel::{check_pretzel1, check_pretzel2, pretzel3_class, pretzel_class, PretzelParams};

pub fn run_example() -> knot_witt::Result<()> {
    let c = pretzel3_class(7, -3, 14)?;
    println!("P(7,-3,14): φ = {}, σ = {}, det = {}", c.form, c.signature, c.signed_det);
    let check = check_pretzel1(7, 14)?;
    println!("  obstructed: {} ({})", check.obstructed, check.witness().map_or("-".into(), |s| s.to_string()));
    assert!(check.obstructed);

    // Inserting 5, −5 leaves the class alone.
    let longer = PretzelParams::new(vec![7, -3, 14])?.upward_stabilize(5, 0, 2)?;
    assert_eq!(pretzel_class(&longer)?.form, c.form);
    println!("{:?}: det {}", longer.strands(), longer.signed_determinant());

    for p in [21, 59, 363] {
        let check = check_pretzel2(p)?;
        let at19 = check.separation_at(19).map_or("-".into(), |s| s.to_string());
        println!("P({p},{p},{p},{}): obstructed {}, {at19}", -3 * p - 1, check.obstructed);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> knot_witt::Result<()> {
    run_example()
}
