//! Collapses a resolution tree to its splice diagram, then prints the weights with
//! edge determinants and linking numbers.
//!
//!     cargo run --example splice_diagram [graph]

use sforge::graph::parse_graph;
use sforge::splice::{is_zhs, linking_number, to_splice_diagram};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graphs/two-node.graph").into());
    let g = parse_graph(&std::fs::read_to_string(&path)?)?;
    let d = to_splice_diagram(&g)?;
    println!("{d}\n");

    let leaves = d.leaves();
    for v in d.nodes() {
        let ls: Vec<String> = leaves
            .iter()
            .map(|&w| linking_number(&d, v, w).map(|l| format!("{}={l}", d.vertex(w).id)))
            .collect::<Result<_, _>>()?;
        println!("linking numbers from {}: {}", d.vertex(v).id, ls.join(" "));
    }
    let c = d.weight_conditions();
    println!("\nintegral homology sphere: {}", is_zhs(&g));
    println!("pairwise coprime: {}", c.pairwise_coprime);
    println!("leaf weights exceed one: {}", c.leaf_weights_exceed_one);
    println!("edge determinants positive: {}", c.edge_determinants_positive);
    Ok(())
}
