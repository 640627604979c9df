//! The E7 quotient computation: invariant generators of the Z/2 action, the toric
//! relation among them, and a certificate that the quotient equation follows from
//! x^2 + y^3 + z^4.
//!
//!     cargo run --example invariant_ring

use sforge::discriminant::leaf_characters;
use sforge::equations::build_splice_equations;
use sforge::graph::parse_graph;
use sforge::invariants::{invariant_generators, membership_bounded, toric_relations};
use sforge::poly::Polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph(include_str!("graphs/e7.graph"))?;
    let chars = leaf_characters(&g)?;
    let basis = invariant_generators(&chars)?;
    // name them A = x^2, B = xz, C = z^2, D = y
    let basis = basis.reordered(&[vec![2, 0, 0], vec![1, 0, 1], vec![0, 0, 2], vec![0, 1, 0]])?;
    for (name, p) in basis.names.iter().zip(basis.parametrization()) {
        println!("{name} = {p}");
    }
    for r in toric_relations(&basis, 2) {
        println!("relation: {r} = 0");
    }

    let pkg = build_splice_equations(&g)?;
    let ideal: Vec<Polynomial> = pkg.equations().cloned().collect();
    let quotient = Polynomial::parse("B^2 + C*(C^2 + D^3)", &basis.names)?;
    let target = quotient.substitute(&basis.parametrization())?;
    match membership_bounded(&target, &ideal, 2)? {
        Some(cert) => {
            println!("{quotient} = {target}");
            for (q, f) in cert.cofactors.iter().zip(&cert.generators) {
                println!("  = ({q}) * ({f})");
            }
            println!("verified: {}", cert.verify());
        }
        None => println!("no certificate up to degree 2"),
    }
    Ok(())
}
