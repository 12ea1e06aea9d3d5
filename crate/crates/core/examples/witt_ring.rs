//! Arithmetic in W(ℚ): boundary maps, signature and torsion order.
//!
//! Run with `cargo run --example witt_ring`.

use knot_witt::witt::{DiagonalForm, TorsionOrder};

pub fn run_example() -> knot_witt::Result<()> {
    let b: DiagonalForm = "-23/9 7 -3/5 49".parse()?;
    println!("B = {b}");
    println!("signature {}", b.signature());
    for p in [2u64, 3, 5, 7, 23] {
        println!("  ∂{p}(B) = {}", b.boundary(p)?);
    }
    let order = b.torsion_order();
    println!("torsion order {order}");
    assert_eq!(order, TorsionOrder::Finite(4));

    // ⟨a⟩ ⊕ ⟨−a⟩ vanishes, and scaling by a square changes nothing.
    let hyperbolic: DiagonalForm = "3/7 -3/7".parse()?;
    assert!(hyperbolic.is_equal(&DiagonalForm::zero()));
    let scaled: DiagonalForm = "12 5".parse()?;
    assert!(scaled.is_equal(&"3 5".parse()?));

    let c = &b + &scaled;
    println!("B ⊕ ⟨12⟩ ⊕ ⟨5⟩ has invariant {}", c.witt_invariant());
    Ok(())
}

#[allow(dead_code)]
fn main() -> knot_witt::Result<()> {
    run_example()
}
