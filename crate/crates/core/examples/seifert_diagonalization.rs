//! From a Seifert matrix to φ(K), σ(K) and det K.
//!
//! Run with `cargo run --example seifert_diagonalization`.

use knot_witt::fixtures::{self, printed};
use knot_witt::seifert::{SeifertMatrix, SymmetricRationalMatrix};

pub fn run_example() -> knot_witt::Result<()> {
    let trefoil = SeifertMatrix::from_rows_strict(vec![vec![-1, 1], vec![0, -1]])?;
    let phi = trefoil.rational_witt_class()?;
    println!("trefoil: V =\n{trefoil}\nφ = {phi}, σ = {}, det = {}", trefoil.signature()?, trefoil.determinant()?);

    let q = SymmetricRationalMatrix::from_integer_rows(&[
        vec![-2, -1, -1, 0, 0, 1],
        vec![-1, -2, -1, 0, 0, 1],
        vec![-1, -1, 2, 0, 1, -1],
        vec![0, 0, 0, -2, 0, 1],
        vec![0, 0, 1, 0, 2, -1],
        vec![1, 1, -1, 1, -1, 4],
    ])?;
    let d = q.diagonalize()?;
    println!("11a16: in-order diagonal {}", d.form);
    assert!(d.form.is_equal(&printed::k11a16()));
    println!("det Q = {}, σ {}", q.determinant(), d.form.signature());

    // A Seifert lift of the same symmetric form gives the same class.
    let lift = fixtures::knot("11a16_lift").expect("bundled");
    let via_lift = lift.resolve()?.phi.expect("has a matrix");
    assert_eq!(via_lift, d.form);
    Ok(())
}

#[allow(dead_code)]
fn main() -> knot_witt::Result<()> {
    run_example()
}
