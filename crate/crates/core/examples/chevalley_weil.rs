//! Genus and eigenspace dimensions of a Z6 cover of an elliptic curve.
//!
//! cargo run --example chevalley_weil

use isogenous::abelian::{characters, AbelianGroup};
use isogenous::covering::GeneratingVector;

fn main() -> isogenous::Result<()> {
    let g = AbelianGroup::cyclic(6)?;
    let x = |k: i64| g.element(&[k]);
    // branched over three points with local monodromy 1, 2, 3; the eta
    // pair (1, 0) already generates.
    let v = GeneratingVector::new(g.clone(), 1, vec![x(1)?, x(2)?, x(3)?], vec![x(1)?, x(0)?])?;
    let outcome = v.validate();
    println!("signature {}, violations {:?}", v.signature(), outcome.violations);
    let genus = v.genus()?;
    println!("genus of the cover: {genus}");

    let mut total = 0;
    for chi in characters(&g) {
        let d = v.cw_dimension(&chi)?;
        total += d;
        println!("  d({chi:?}) = {d}");
    }
    assert_eq!(total as i64, genus);
    println!("sum = {total} = genus");
    Ok(())
}
