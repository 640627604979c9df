//! Splice diagrams derived from resolution trees.
//!
//! Valency-two vertices of the resolution tree are collapsed; what remains are leaves
//! (end curves) and nodes (valency at least three). The weight at node `v` on edge `e`
//! is the absolute determinant of the branch of the resolution tree cut off at `v` in
//! the direction of `e`.

mod semigroup;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::exact::determinant;
use crate::graph::ResolutionGraph;
use crate::{Error, Result};

pub use semigroup::{representations, semigroup_condition, DirectionWitness, SemigroupReport, WITNESS_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpliceVertexKind {
    Leaf,
    Node,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceVertex {
    /// Id of the resolution-graph vertex this came from.
    pub id: String,
    /// Index of that vertex in the resolution graph.
    pub source: usize,
    pub kind: SpliceVertexKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceEdge {
    pub ends: [usize; 2],
    /// Weight at each end; `None` at leaf ends.
    pub weights: [Option<BigInt>; 2],
    /// The resolution-graph path this edge replaces, endpoints included.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceDiagram {
    vertices: Vec<SpliceVertex>,
    edges: Vec<SpliceEdge>,
    leaves: Vec<usize>,
}

/// The three weight conditions satisfied by diagrams of integral homology sphere links.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightConditions {
    pub pairwise_coprime: bool,
    pub leaf_weights_exceed_one: bool,
    pub edge_determinants_positive: bool,
}

impl WeightConditions {
    pub fn all(&self) -> bool {
        self.pairwise_coprime && self.leaf_weights_exceed_one && self.edge_determinants_positive
    }
}

impl SpliceDiagram {
    pub fn vertices(&self) -> &[SpliceVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &SpliceVertex {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[SpliceEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &SpliceEdge {
        &self.edges[e]
    }

    /// Leaves in resolution-graph declaration order; position `i` is variable `z_i`.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn leaf_ids(&self) -> Vec<String> {
        self.leaves.iter().map(|&l| self.vertices[l].id.clone()).collect()
    }

    pub fn leaf_position(&self, v: usize) -> Option<usize> {
        self.leaves.iter().position(|&l| l == v)
    }

    pub fn nodes(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.is_node(v)).collect()
    }

    pub fn has_nodes(&self) -> bool {
        self.vertices.iter().any(|v| v.kind == SpliceVertexKind::Node)
    }

    pub fn is_node(&self, v: usize) -> bool {
        self.vertices[v].kind == SpliceVertexKind::Node
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Incident edges in edge order.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].ends.contains(&v)).collect()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    /// Weight `d_ve`; `None` when `v` is a leaf or not an end of `e`.
    pub fn weight(&self, v: usize, e: usize) -> Option<&BigInt> {
        let edge = &self.edges[e];
        let side = edge.ends.iter().position(|&x| x == v)?;
        edge.weights[side].as_ref()
    }

    fn node_weight_unchecked(&self, v: usize, except: &[usize]) -> BigInt {
        self.incident_edges(v)
            .into_iter()
            .filter(|e| !except.contains(e))
            .map(|e| self.weight(v, e).expect("node ends carry weights").clone())
            .product()
    }

    /// Edges on the path from `from` to `to`, in order.
    pub fn path_edges(&self, from: usize, to: usize) -> Vec<usize> {
        let mut via: Vec<Option<usize>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for e in self.incident_edges(x) {
                let y = self.other_end(e, x);
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = to;
        while cur != from {
            let e = via[cur].expect("splice diagram is connected");
            out.push(e);
            cur = self.other_end(e, cur);
        }
        out.reverse();
        out
    }

    /// Leaves in the branch at `v` that starts with edge `e`, as leaf positions.
    pub fn branch_leaves(&self, v: usize, e: usize) -> Vec<usize> {
        let start = self.other_end(e, v);
        let mut seen = vec![false; self.vertices.len()];
        seen[v] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            if let Some(p) = self.leaf_position(x) {
                out.push(p);
            }
            for f in self.incident_edges(x) {
                let y = self.other_end(f, x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn weight_conditions(&self) -> WeightConditions {
        let mut pairwise_coprime = true;
        let mut leaf_weights_exceed_one = true;
        for v in self.nodes() {
            let es = self.incident_edges(v);
            for (i, &e) in es.iter().enumerate() {
                let w = self.weight(v, e).expect("node weight");
                if !self.is_node(self.other_end(e, v)) && w <= &BigInt::one() {
                    leaf_weights_exceed_one = false;
                }
                for &f in &es[i + 1..] {
                    if !w.gcd(self.weight(v, f).expect("node weight")).is_one() {
                        pairwise_coprime = false;
                    }
                }
            }
        }
        let edge_determinants_positive = (0..self.edges.len())
            .filter(|&e| self.edges[e].ends.iter().all(|&x| self.is_node(x)))
            .all(|e| edge_determinant(self, e).is_ok_and(|d| d.is_positive()));
        WeightConditions { pairwise_coprime, leaf_weights_exceed_one, edge_determinants_positive }
    }
}

/// Collapses valency-two vertices of a negative-definite rational tree.
pub fn to_splice_diagram(g: &ResolutionGraph) -> Result<SpliceDiagram> {
    g.require_qhs_tree()?;
    let m = g.intersection_matrix();
    let keep: Vec<usize> = (0..g.len()).filter(|&i| g.valency(i) != 2).collect();
    let vertices: Vec<SpliceVertex> = keep
        .iter()
        .map(|&i| SpliceVertex {
            id: g.vertex(i).id.clone(),
            source: i,
            kind: if g.valency(i) >= 3 { SpliceVertexKind::Node } else { SpliceVertexKind::Leaf },
        })
        .collect();
    let delta_index = |i: usize| keep.iter().position(|&k| k == i);

    let branch_weight = |v: usize, toward: usize| -> BigInt {
        let comp = g.component_without(&[v], toward);
        determinant(&m.principal(&comp)).expect("principal submatrix is square").abs()
    };

    let mut edges = Vec::new();
    for (a, &v) in keep.iter().enumerate() {
        for u in g.neighbors(v) {
            let mut path = vec![v, u];
            let mut prev = v;
            let mut cur = u;
            while g.valency(cur) == 2 {
                let next = g.neighbors(cur).into_iter().find(|&x| x != prev).expect("valency two");
                prev = cur;
                cur = next;
                path.push(cur);
            }
            let b = delta_index(cur).expect("path ends at a kept vertex");
            if b < a {
                continue;
            }
            let weight_at = |x: usize, first_step: usize| {
                (vertices[delta_index(x).unwrap()].kind == SpliceVertexKind::Node).then(|| branch_weight(x, first_step))
            };
            let wa = weight_at(v, path[1]);
            let wb = weight_at(cur, path[path.len() - 2]);
            edges.push(SpliceEdge { ends: [a, b], weights: [wa, wb], path });
        }
    }
    let leaves = (0..vertices.len()).filter(|&x| vertices[x].kind == SpliceVertexKind::Leaf).collect();
    Ok(SpliceDiagram { vertices, edges, leaves })
}

/// Product of the two weights on an edge between nodes minus the product of the
/// weights adjacent to it.
pub fn edge_determinant(d: &SpliceDiagram, e: usize) -> Result<BigInt> {
    let edge = d.edges.get(e).ok_or_else(|| Error::InvalidArgument(format!("no edge {e}")))?;
    let [a, b] = edge.ends;
    if !d.is_node(a) || !d.is_node(b) {
        return Err(Error::InvalidArgument(format!(
            "edge {}-{} touches a leaf",
            d.vertices[a].id, d.vertices[b].id
        )));
    }
    let on = d.weight(a, e).unwrap() * d.weight(b, e).unwrap();
    let adjacent = d.node_weight_unchecked(a, &[e]) * d.node_weight_unchecked(b, &[e]);
    Ok(on - adjacent)
}

/// Product of the weights adjacent to, but not on, the path from `v` to `w`.
pub fn linking_number(d: &SpliceDiagram, v: usize, w: usize) -> Result<BigInt> {
    if v == w {
        return node_weight(d, v)
            .map_err(|_| Error::InvalidArgument(format!("self-linking of leaf `{}` is undefined", d.vertices[v].id)));
    }
    let path = d.path_edges(v, w);
    let mut x = v;
    let mut on_path = vec![v];
    for &e in &path {
        x = d.other_end(e, x);
        on_path.push(x);
    }
    Ok(on_path
        .into_iter()
        .filter(|&x| d.is_node(x))
        .map(|x| d.node_weight_unchecked(x, &path))
        .product())
}

/// `d_v`: product of the weights around node `v`.
pub fn node_weight(d: &SpliceDiagram, v: usize) -> Result<BigInt> {
    if !d.is_node(v) {
        return Err(Error::InvalidArgument(format!("`{}` is a leaf, not a node", d.vertices[v].id)));
    }
    Ok(d.node_weight_unchecked(v, &[]))
}

/// Integral homology sphere link: `|det| = 1`.
pub fn is_zhs(g: &ResolutionGraph) -> bool {
    g.determinant().abs().is_one()
}

impl fmt::Display for SpliceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.has_nodes() {
            writeln!(f, "no nodes: cyclic quotient case")?;
            return write!(f, "leaves: {}", self.leaf_ids().join(" "));
        }
        let mut first = true;
        for v in self.nodes() {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "node {} [{}]", self.vertices[v].id, self.node_weight_unchecked(v, &[]))?;
            for e in self.incident_edges(v) {
                let w = self.other_end(e, v);
                write!(f, "\n    ({}) {}", self.weight(v, e).unwrap(), self.vertices[w].id)?;
                if self.is_node(w) {
                    write!(f, " det={}", edge_determinant(self, e).unwrap())?;
                }
            }
        }
        Ok(())
    }
}
