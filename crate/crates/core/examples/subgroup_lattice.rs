//! Sums, intersections, annihilators and quotients in Z4 + Z4 + Z2.
//!
//! cargo run --example subgroup_lattice

use isogenous::abelian::{AbelianGroup, Subgroup};

fn main() -> isogenous::Result<()> {
    let g = AbelianGroup::new(vec![4, 4, 2])?;
    let a = Subgroup::from_exponents(&g, &[[1, 1, 0]])?;
    let b = Subgroup::from_exponents(&g, &[[2, 0, 1], [0, 2, 0]])?;
    println!("G = {g}, |G| = {}", g.order());
    println!("A = {a:?}, |A| = {}", a.order());
    println!("B = {b:?}, |B| = {}", b.order());

    let sum = a.sum(&b)?;
    let meet = a.intersection(&b)?;
    println!("|A + B| = {}, |A n B| = {}", sum.order(), meet.order());
    assert_eq!(sum.order() * meet.order(), a.order() * b.order());

    let perp = a.annihilator()?;
    println!("A^perp has order {} = |G| / |A|", perp.order());
    assert_eq!(perp.annihilator()?, a);

    let q = Subgroup::whole(&g).quotient_by(&a)?;
    println!("G / A = {}", q.factors());
    for (i, x) in q.generators().iter().enumerate() {
        println!("  generator {i}: {x:?}");
    }
    Ok(())
}
