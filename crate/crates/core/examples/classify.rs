//! Runs the classification on every bundled graph.
//!
//!     cargo run --example classify [graph files...]

use std::path::PathBuf;

use sforge::graph::{classify, fundamental_cycle, parse_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut files: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    if files.is_empty() {
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/graphs");
        files = std::fs::read_dir(dir)?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|p| p.extension().is_some_and(|x| x == "graph"))
            .collect();
        files.sort();
    }
    println!("{:<26} {:>5} {:<40} {:<20} {:>4} {:>4}", "graph", "|det|", "fundamental cycle", "kind", "mult", "edim");
    for path in files {
        let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let g = parse_graph(&std::fs::read_to_string(&path)?)?;
        if !g.is_negative_definite() {
            println!("{name:<26} not negative definite");
            continue;
        }
        let z = fundamental_cycle(&g)?;
        let c = classify(&g)?;
        let show = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        println!(
            "{:<26} {:>5} {:<40} {:<20} {:>4} {:>4}",
            name,
            g.determinant().magnitude(),
            format!("{:?}", z.coefficients),
            format!("{:?}", c.kind),
            show(c.multiplicity),
            show(c.embedding_dimension)
        );
    }
    Ok(())
}
