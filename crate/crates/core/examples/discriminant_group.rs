//! The discriminant group from the Smith normal form of the intersection matrix,
//! with its diagonal action on the leaf variables.
//!
//!     cargo run --example discriminant_group [graph]

use sforge::discriminant::{discriminant_group, leaf_characters};
use sforge::exact::{rational_string, smith_normal_form};
use sforge::graph::parse_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graphs/quotient-cusp-2-3.graph").into());
    let g = parse_graph(&std::fs::read_to_string(&path)?)?;
    let m = g.intersection_matrix();
    let snf = smith_normal_form(&m);
    println!("intersection matrix:\n{m}");
    println!("invariant factors: {:?}", snf.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>());
    assert_eq!(&(&snf.u * &m) * &snf.v, snf.d);

    let data = discriminant_group(&g)?;
    println!("order: {}", data.order);
    let chars = leaf_characters(&g)?;
    for (leaf, phases) in chars.leaves.iter().zip(&chars.phases) {
        let p: Vec<String> = phases.iter().map(rational_string).collect();
        println!("  {leaf}: ({})", p.join(", "));
    }
    if chars.order() <= sforge::discriminant::ENUMERATION_CAP {
        println!("faithful: {}", chars.is_faithful()?);
    }
    Ok(())
}
