//! Smith normal form of a relation matrix and the group it presents.
//!
//! cargo run --example smith_form

use isogenous::abelian::{smith_normal_form, AbelianGroup, IntMatrix};

fn main() -> isogenous::Result<()> {
    // relations of Z^3 / <(2,4,4), (-6,6,12), (10,-4,-16)>
    let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]])?;
    let snf = smith_normal_form(&a)?;
    println!("A = {a:?}");
    println!("S = {:?}", snf.s);
    println!("U = {:?}", snf.u);
    println!("V = {:?}", snf.v);
    assert_eq!(snf.u.checked_mul(&a)?.checked_mul(&snf.v)?, snf.s);
    println!("diagonal: {:?}", snf.diagonal());

    // any presentation as a sum of cyclic groups normalizes the same way
    let g = AbelianGroup::new(vec![6, 4, 10])?;
    println!("{g} has invariant factors {}", g.invariant_factors()?);
    Ok(())
}
