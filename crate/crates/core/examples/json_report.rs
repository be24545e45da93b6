//! The machine-readable report, and the text report derived from it.
//!
//! cargo run --example json_report

use isogenous::builtins::example4;
use isogenous::builtins::EXAMPLE4_NOTE;
use isogenous::report::{render_report, to_json, Report};

fn main() -> isogenous::Result<()> {
    let d = example4()?;
    let r = Report::build(&d, Some(EXAMPLE4_NOTE), None)?;
    print!("{}", to_json(&r));
    println!("----");
    print!("{}", render_report(&r));
    Ok(())
}
