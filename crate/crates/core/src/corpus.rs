//! Seeded random negative-definite trees for property tests and the bundled corpus.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{ResolutionGraph, Vertex};

/// Weights drawn per vertex; `-2` is repeated so long chains stay common.
const WEIGHTS: [i64; 8] = [-1, -2, -2, -2, -2, -3, -3, -4];

/// Attempts at a random weighting before falling back to a diagonally dominant one.
const ATTEMPTS: usize = 64;

fn tree_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (rng.gen_range(0..i), i)).collect()
}

fn build(weights: &[i64], edges: &[(usize, usize)]) -> ResolutionGraph {
    let vertices = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| Vertex { id: format!("v{i}"), weight: w, genus: 0 })
        .collect();
    ResolutionGraph::new(vertices, edges.to_vec()).expect("generated tree is well formed")
}

/// A random negative-definite tree on exactly `n` vertices.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> ResolutionGraph {
    assert!(n >= 1, "a tree needs a vertex");
    let edges = tree_edges(rng, n);
    for _ in 0..ATTEMPTS {
        let weights: Vec<i64> = (0..n).map(|_| WEIGHTS[rng.gen_range(0..WEIGHTS.len())]).collect();
        let g = build(&weights, &edges);
        if g.is_negative_definite() {
            return g;
        }
    }
    let mut valency = vec![0i64; n];
    for &(a, b) in &edges {
        valency[a] += 1;
        valency[b] += 1;
    }
    let weights: Vec<i64> = valency.iter().map(|v| -(v + 1)).collect();
    build(&weights, &edges)
}

/// `count` trees with between 1 and `max_vertices` vertices, reproducible from `seed`.
pub fn random_corpus(seed: u64, count: usize, max_vertices: usize) -> Vec<ResolutionGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_vertices);
            random_tree(&mut rng, n)
        })
        .collect()
}
