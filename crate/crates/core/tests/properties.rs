//! Oracle and invariance suites over the seeded random corpus and the bundled graphs.

mod common;

use std::collections::BTreeSet;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sforge::corpus::random_corpus;
use sforge::discriminant::{discriminant_group, leaf_characters};
use sforge::equations::congruence_condition;
use sforge::graph::{
    blow_down_minimal, canonical_cycle, classify, contractible_vertex, ResolutionGraph, Vertex,
};
use sforge::splice::{linking_number, node_weight, semigroup_condition, to_splice_diagram};
use sforge::Error;

fn corpus() -> Vec<ResolutionGraph> {
    random_corpus(31337, 150, 10)
}

fn relabel(g: &ResolutionGraph, rng: &mut ChaCha8Rng) -> ResolutionGraph {
    let mut perm: Vec<usize> = (0..g.len()).collect();
    perm.shuffle(rng);
    let mut vertices = vec![g.vertex(0).clone(); g.len()];
    for (old, &new) in perm.iter().enumerate() {
        vertices[new] = Vertex { id: format!("u{new}"), ..g.vertex(old).clone() };
    }
    let edges = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    ResolutionGraph::new(vertices, edges).unwrap()
}

fn node_weights(g: &ResolutionGraph) -> Vec<BigInt> {
    let d = to_splice_diagram(g).unwrap();
    let mut w: Vec<BigInt> = d.nodes().into_iter().map(|v| node_weight(&d, v).unwrap()).collect();
    w.sort();
    w
}

#[test]
fn invariants_do_not_depend_on_vertex_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in corpus() {
        let h = relabel(&g, &mut rng);
        assert_eq!(g.determinant(), h.determinant());
        let (cg, ch) = (classify(&g).unwrap(), classify(&h).unwrap());
        assert_eq!((cg.kind, cg.zsq, cg.zk), (ch.kind, ch.zsq, ch.zk));
        assert_eq!(
            discriminant_group(&g).unwrap().invariant_factors,
            discriminant_group(&h).unwrap().invariant_factors
        );
        assert_eq!(node_weights(&g), node_weights(&h));
        let dg = to_splice_diagram(&g).unwrap();
        if dg.has_nodes() {
            let sg = semigroup_condition(&dg).unwrap().holds;
            assert_eq!(sg, semigroup_condition(&to_splice_diagram(&h).unwrap()).unwrap().holds);
            if sg {
                assert_eq!(congruence_condition(&g).unwrap().holds, congruence_condition(&h).unwrap().holds);
            }
        }
    }
}

#[test]
fn linking_numbers_match_the_inverse_matrix() {
    for g in corpus().iter().chain(bundled().iter().map(|(_, g)| g)) {
        if g.require_qhs_tree().is_err() || !g.is_negative_definite() {
            continue;
        }
        let d = to_splice_diagram(g).unwrap();
        let special: Vec<usize> = d.nodes().into_iter().chain(d.leaves().iter().copied()).collect();
        for &v in &special {
            for &w in &special {
                if v == w && !d.is_node(v) {
                    continue;
                }
                let expected = linking_by_inverse(g, d.vertex(v).source, d.vertex(w).source);
                assert_eq!(linking_number(&d, v, w).unwrap(), expected);
            }
        }
    }
}

#[test]
fn canonical_cycle_satisfies_adjunction() {
    for g in corpus().iter().chain(bundled().iter().map(|(_, g)| g)) {
        if !g.is_negative_definite() {
            continue;
        }
        let k = canonical_cycle(g).unwrap();
        let m = g.intersection_matrix();
        for i in 0..g.len() {
            let ke: BigRational = (0..g.len())
                .map(|j| &k.coefficients[j] * BigRational::from_integer(m[(i, j)].clone()))
                .sum();
            let v = g.vertex(i);
            let rhs = BigRational::from_integer(BigInt::from(2 * v.genus as i64 - 2 - v.weight));
            assert_eq!(ke, rhs);
        }
    }
}

/// Characters reachable at each sum, as bitsets over mixed-radix encoded characters.
fn characters_at_target(target: usize, gens: &[(usize, usize)], order: usize, add: impl Fn(usize, usize) -> usize) -> Vec<bool> {
    let mut reach = vec![vec![false; order]; target + 1];
    reach[0][0] = true;
    for s in 1..=target {
        for &(step, chi) in gens {
            if step == 0 || step > s {
                continue;
            }
            for c in 0..order {
                if reach[s - step][c] {
                    let n = add(c, chi);
                    reach[s][n] = true;
                }
            }
        }
    }
    std::mem::take(&mut reach[target])
}

#[test]
fn congruence_agrees_with_character_enumeration() {
    let mut compared = 0;
    for (i, g) in corpus().iter().enumerate() {
        let d = to_splice_diagram(g).unwrap();
        if !d.has_nodes() {
            continue;
        }
        let sg = semigroup_condition(&d).unwrap();
        if !sg.holds || sg.directions.iter().any(|w| w.truncated) {
            continue;
        }
        let chars = leaf_characters(g).unwrap();
        let order = chars.order() as usize;
        if order > 600 {
            continue;
        }
        let orders: Vec<usize> = chars.generator_orders.iter().map(|&n| n as usize).collect();
        let encode = |r: &[u64]| r.iter().zip(&orders).fold(0, |acc, (&x, &n)| acc * n + x as usize);
        let decode = |mut c: usize| {
            let mut out = vec![0usize; orders.len()];
            for j in (0..orders.len()).rev() {
                out[j] = c % orders[j];
                c /= orders[j];
            }
            out
        };
        let add = |a: usize, b: usize| {
            let (x, y) = (decode(a), decode(b));
            encode(&x.iter().zip(&y).zip(&orders).map(|((p, q), n)| ((p + q) % n) as u64).collect::<Vec<_>>())
        };
        let res = residues(&chars);

        let report = congruence_condition(g).unwrap();
        for v in d.nodes() {
            let src = d.vertex(v).source;
            let dv = linking_by_inverse(g, src, src).to_usize().unwrap();
            let mut common = vec![true; order];
            for e in d.incident_edges(v) {
                let gens: Vec<(usize, usize)> = d
                    .branch_leaves(v, e)
                    .iter()
                    .map(|&p| {
                        let step = linking_by_inverse(g, src, d.vertex(d.leaves()[p]).source).to_usize().unwrap();
                        (step, encode(&res[p]))
                    })
                    .collect();
                let here = characters_at_target(dv, &gens, order, add);
                for c in 0..order {
                    common[c] &= here[c];
                }
            }
            let oracle = common.iter().any(|&b| b);
            assert_eq!(!report.failures.contains(&v), oracle, "tree {i}, node {}", d.vertex(v).id);
        }
        compared += 1;
    }
    assert!(compared > 20, "only {compared} trees compared");
}

#[test]
fn integral_homology_spheres_satisfy_congruence_whenever_semigroup_holds() {
    let mut seen = 0;
    let graphs = random_corpus(77, 400, 9).into_iter().chain(bundled().into_iter().map(|(_, g)| g));
    for g in graphs {
        if g.require_qhs_tree().is_err() || !g.is_negative_definite() || !g.determinant().abs().eq(&BigInt::from(1)) {
            continue;
        }
        let d = to_splice_diagram(&g).unwrap();
        if !d.has_nodes() || !semigroup_condition(&d).unwrap().holds {
            continue;
        }
        assert!(congruence_condition(&g).unwrap().holds);
        seen += 1;
    }
    assert!(seen >= 2);
}

#[test]
fn leaf_characters_are_faithful() {
    for g in corpus() {
        let chars = leaf_characters(&g).unwrap();
        if chars.order() <= 2000 {
            assert!(chars.is_faithful().unwrap());
        }
    }
}

/// Blows up a random edge or vertex of a minimal graph, then blows down again.
#[test]
fn blow_up_then_down_is_identity_on_minimal_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for g in corpus() {
        if contractible_vertex(&g).is_some() {
            continue;
        }
        let mut vertices = g.vertices().to_vec();
        let mut edges = g.edges().to_vec();
        let e = vertices.len();
        vertices.push(Vertex { id: "e".into(), weight: -1, genus: 0 });
        if !edges.is_empty() && rng.gen_bool(0.5) {
            let (a, b) = edges.remove(rng.gen_range(0..edges.len()));
            vertices[a].weight -= 1;
            vertices[b].weight -= 1;
            edges.extend([(a, e), (b, e)]);
        } else {
            let a = rng.gen_range(0..e);
            vertices[a].weight -= 1;
            edges.push((a, e));
        }
        let blown = ResolutionGraph::new(vertices, edges).unwrap();
        assert!(blown.is_negative_definite());
        assert_eq!(blown.determinant().abs(), g.determinant().abs());
        let down = blow_down_minimal(&blown).unwrap();
        assert_eq!(down.len(), g.len());
        let mut want: BTreeSet<(String, String)> = BTreeSet::new();
        let mut got: BTreeSet<(String, String)> = BTreeSet::new();
        for (set, h) in [(&mut want, &g), (&mut got, &down)] {
            for &(a, b) in h.edges() {
                let (x, y) = (h.vertex(a).id.clone(), h.vertex(b).id.clone());
                set.insert(if x < y { (x, y) } else { (y, x) });
            }
        }
        assert_eq!(got, want);
        assert_eq!(down.vertices(), g.vertices());
        checked += 1;
    }
    assert!(checked > 50);
}

#[test]
fn non_minimal_input_reports_the_offending_vertex() {
    let g: ResolutionGraph = "vertex a weight=-2\nvertex e weight=-1\nvertex b weight=-2\nedge a e\nedge e b\n"
        .parse()
        .unwrap();
    assert!(matches!(blow_down_minimal(&g), Err(Error::NonMinimalRepresentable(_))));
}
