//! How φ changes under a single crossing change: 7̄₄ → 5̄₂ → unknot.
//!
//! Run with `cargo run --example crossing_change`.

use knot_witt::fixtures::printed;
use knot_witt::unknotting::{crossing_change_image, pivot_shift, solve_a, CrossingContext, Direction};
use knot_witt::witt::DiagonalForm;

pub fn run_example() -> knot_witt::Result<()> {
    let m7_4 = printed::m7_4();
    let m5_2 = printed::m5_2();

    // K₋ = 7̄₄ (det 15, σ 2), K₊ = 5̄₂ (det 7, σ 2).
    let first = CrossingContext::new(15, 7, 2, 2)?;
    let a = solve_a(&first)?;
    println!("7̄4 -> 5̄2: a = {a}");
    let shifted = pivot_shift(&m7_4, &a)?;
    assert!(shifted.is_equal(&m5_2));
    assert!(crossing_change_image(&m7_4, &first, Direction::ToPlus).is_equal(&m5_2));
    assert!(crossing_change_image(&m5_2, &first, Direction::ToMinus).is_equal(&m7_4));

    // K₋ = 5̄₂, K₊ = unknot: the signature drops from 2 to 0.
    let second = CrossingContext::new(7, 1, 2, 0)?;
    println!("5̄2 -> unknot: a = {}", solve_a(&second)?);
    let unknot = crossing_change_image(&m5_2, &second, Direction::ToPlus);
    println!("image of φ(5̄2): {unknot}");
    assert!(unknot.is_equal(&DiagonalForm::zero()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> knot_witt::Result<()> {
    run_example()
}
