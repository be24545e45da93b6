//! Aut_0 for every built-in datum.
//!
//! cargo run --example aut0_examples

use isogenous::aut0::aut0;
use isogenous::builtins::{builtin, Params};

fn main() -> isogenous::Result<()> {
    let cases = [
        ("example1", "n1=1,n2=2,n3=3"),
        ("example2a", "n=2"),
        ("example2b", "n1=3,n2=1,n3=1"),
        ("example3", "n=1"),
        ("example3", "n=3"),
        ("example4", ""),
    ];
    for (name, params) in cases {
        let d = builtin(name, &Params::parse(params)?)?;
        let r = aut0(&d)?;
        println!("{name} {params}: {} ({:?})", r.invariant_factors, r.status);
        for t in &r.generators {
            let parts: Vec<_> = t.iter().map(|x| x.exponents().to_vec()).collect();
            println!("    generated by {parts:?}");
        }
    }
    Ok(())
}
