//! Compare the lattice computations against brute-force enumeration.
//!
//! cargo run --release --example oracle_crosscheck

use isogenous::builtins::{example1, example2a, example3, example4};
use isogenous::oracle::{cross_check, DEFAULT_CAP};

fn main() -> isogenous::Result<()> {
    let data = [
        ("example1 n=1", example1([1, 1, 1])?),
        ("example1 (1,2,1)", example1([1, 2, 1])?),
        ("example2a n=1", example2a([1, 1, 1])?),
        ("example3 n=1", example3(1)?),
        ("example4", example4()?),
    ];
    for (name, d) in &data {
        let a = cross_check(d, DEFAULT_CAP)?;
        println!("{name}: {} {a:?}", if a.all() { "agrees" } else { "DISAGREES" });
    }
    Ok(())
}
