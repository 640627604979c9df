//! Splice-type equations with their coefficient matrices, and a check that each one is
//! weighted homogeneous and equivariant.
//!
//!     cargo run --example splice_equations [graph]

use sforge::equations::{build_splice_equations, check_equivariance};
use sforge::graph::parse_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graphs/two-node.graph").into());
    let g = parse_graph(&std::fs::read_to_string(&path)?)?;
    let pkg = build_splice_equations(&g)?;
    println!("variables: {}", pkg.variables.join(" "));
    for n in &pkg.nodes {
        println!("\nnode {} of weight {}", n.id, n.weight);
        print!("coefficients:\n{}", n.coefficients);
        for f in &n.equations {
            println!("  {f} = 0");
        }
    }
    println!("\nhomogeneous and equivariant: {}", check_equivariance(&pkg));
    println!("maximal minors nonzero: {}", pkg.minors_nonzero()?);
    Ok(())
}
