//! Survey Aut_0 over Z2^3 with coordinate kernels and up to four branch points.
//!
//! cargo run --release --example survey

use isogenous::search::{survey, KernelPolicy, SearchSpec, DEFAULT_CAP, DEFAULT_SEED};

fn main() -> isogenous::Result<()> {
    let spec = SearchSpec {
        group: vec![2, 2, 2],
        kernels: KernelPolicy::Explicit {
            triples: vec![[vec![vec![1, 0, 0]], vec![vec![0, 1, 0]], vec![vec![0, 0, 1]]]],
        },
        g_prime: [1, 1, 1],
        max_branch: 4,
        max_branch_order: None,
        cap: DEFAULT_CAP,
    };
    let s = survey(&spec, DEFAULT_SEED)?;
    println!("{} candidate triples, {} valid data", s.candidates, s.count);
    for h in &s.histogram {
        println!("  Aut_0 = {:?}: {}", h.factors, h.count);
    }
    for (status, n) in &s.statuses {
        println!("  {status:?}: {n}");
    }
    Ok(())
}
