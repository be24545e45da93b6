//! Hodge diamonds of the first family for a few parameters, with the
//! isotypic pieces behind h^{3,0}.
//!
//! cargo run --example hodge_diamond

use isogenous::builtins::example1;
use isogenous::hodge::{hodge_diamond, isotypic_decomposition};
use isogenous::report::render_diamond;

fn main() -> isogenous::Result<()> {
    for n in [[1, 1, 1], [1, 2, 3], [2, 2, 2]] {
        let d = example1(n)?;
        let h = hodge_diamond(&d)?;
        let inv = d.invariants()?;
        println!("n = {n:?}: genera {:?}, chi(O) = {}, e = {}", inv.genera, inv.chi_o, inv.euler);
        print!("{}", render_diamond(&h.h));
        for c in isotypic_decomposition(&d, 3, 0)? {
            println!("  H^3,0 piece {:?} of dimension {}", c.concatenated(), c.dimension);
        }
        println!();
    }
    Ok(())
}
