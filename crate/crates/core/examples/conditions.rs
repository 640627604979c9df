//! Semigroup and congruence conditions. The default input passes both; pass
//! `examples/graphs/semigroup-fail.graph` to see a failing direction.
//!
//!     cargo run --example conditions [graph]

use sforge::equations::congruence_condition;
use sforge::graph::parse_graph;
use sforge::poly::Polynomial;
use sforge::splice::{semigroup_condition, to_splice_diagram};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graphs/two-node.graph").into());
    let g = parse_graph(&std::fs::read_to_string(&path)?)?;
    let d = to_splice_diagram(&g)?;
    let vars = d.leaf_ids();
    let report = semigroup_condition(&d)?;
    for w in &report.directions {
        let toward = &d.vertex(d.other_end(w.edge, w.node)).id;
        let mons: Vec<String> = w.monomials.iter().map(|m| Polynomial::monomial_string(&vars, m)).collect();
        println!("{} [{}] toward {toward}: {}", d.vertex(w.node).id, w.node_weight, if mons.is_empty() { "none".into() } else { mons.join(", ") });
    }
    println!("semigroup condition: {}", report.holds);
    if report.holds {
        let c = congruence_condition(&g)?;
        println!("congruence condition: {}", c.holds);
    }
    Ok(())
}
