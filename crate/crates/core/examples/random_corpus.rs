//! Seeded random negative-definite trees with their splice verdicts.
//!
//!     cargo run --example random_corpus [seed] [count]

use sforge::corpus::random_corpus;
use sforge::splice::{semigroup_condition, to_splice_diagram};
use sforge::Error;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2024);
    let count: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);
    for (i, g) in random_corpus(seed, count, 10).iter().enumerate() {
        let d = to_splice_diagram(g)?;
        let verdict = match semigroup_condition(&d) {
            Ok(r) if r.holds => "semigroup holds".to_string(),
            Ok(r) => format!("semigroup fails in {} direction(s)", r.failures.len()),
            Err(Error::NoNodes) => "no nodes".to_string(),
            Err(e) => return Err(e.into()),
        };
        println!("# tree {i}: {} vertices, |det| {}, {verdict}", g.len(), g.determinant().magnitude());
        print!("{g}");
    }
    Ok(())
}
