//! Parse a datum document and print its validation report.
//!
//! cargo run --example validate_datum [path.json]

use isogenous::document::parse_datum;
use isogenous::report::{render_validation, ValidationSection};

const SAMPLE: &str = include_str!("../../../docs/samples/example1.json");

fn main() -> isogenous::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    let d = parse_datum(&text)?;
    print!("{}", render_validation(&ValidationSection::new(&d)));

    // breaking the product relation of the first vector is reported per vector
    let broken = text.replacen("[0, 0, 1], [0, 0, 1]", "[0, 0, 1], [0, 1, 0]", 1);
    if broken != text {
        let d = parse_datum(&broken)?;
        println!("\nafter editing the first branch list:");
        print!("{}", render_validation(&ValidationSection::new(&d)));
    }
    Ok(())
}
