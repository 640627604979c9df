//! Contracts (-1)-curves of valency at most two until none remain.
//!
//!     cargo run --example blow_down [graph]

use sforge::graph::{blow_down_minimal, parse_graph};

const DEFAULT: &str = "\
vertex a weight=-4
vertex e1 weight=-1
vertex b weight=-3
vertex e2 weight=-1
edge a e1
edge e1 b
edge a e2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let g = parse_graph(&text)?;
    println!("before (|det| = {}):\n{g}", g.determinant().magnitude());
    match blow_down_minimal(&g) {
        Ok(h) if h.is_empty() => println!("every curve contracts: smooth point"),
        Ok(h) => println!("after (|det| = {}):\n{h}", h.determinant().magnitude()),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
