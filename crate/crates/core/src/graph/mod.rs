//! Resolution dual graphs and their graph-level invariants.
//!
//! A graph file is line oriented:
//!
//! ```text
//! # comment
//! vertex <id> weight=<int> [genus=<uint>]
//! edge <id> <id>
//! ```
//!
//! Vertices keep their declaration order everywhere, down to the order of leaf
//! variables.

mod blowdown;
mod cycles;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::exact::{determinant, is_negative_definite, IntMatrix};
use crate::{Error, Result};

pub use blowdown::{blow_down_minimal, contract_vertex, contractible_vertex};
pub use cycles::{
    canonical_cycle, classify, fundamental_cycle, is_numerically_gorenstein, Classification, Cycle,
    Kind, RationalCycle,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    /// Self-intersection `E_i . E_i`.
    pub weight: i64,
    pub genus: u32,
}

/// Weighted, genus-decorated dual graph of a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    /// Unordered pairs of vertex indices; repeated pairs are parallel edges.
    edges: Vec<(usize, usize)>,
}

impl ResolutionGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Validates and assembles a graph. An empty vertex list is only accepted through
    /// [`ResolutionGraph::empty`].
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.id.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{}`", v.id)));
            }
            if v.weight >= 0 {
                return Err(Error::InvalidGraph(format!(
                    "vertex `{}` has weight {}; weights must be <= -1",
                    v.id, v.weight
                )));
            }
        }
        for &(a, b) in &edges {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at `{}`", vertices[a].id)));
            }
        }
        let g = ResolutionGraph { vertices, edges: edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect() };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        Ok(g)
    }

    /// The graph of a smooth point: everything blown down.
    pub fn empty() -> Self {
        ResolutionGraph { vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Neighbours with multiplicity, in edge order.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect()
    }

    pub fn valency(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i || b == i).count()
    }

    fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected with `edges = vertices - 1`, so no cycles and no parallel edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.len()
    }

    /// First betti number of the link: independent cycles plus twice the total genus.
    pub fn link_betti_number(&self) -> u64 {
        let cycles = (self.edges.len() + 1).saturating_sub(self.len()) as u64;
        cycles + 2 * self.vertices.iter().map(|v| v.genus as u64).sum::<u64>()
    }

    /// `(E_i . E_j)` in declaration order.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::from_fn(self.len(), self.len(), |i, j| {
            if i == j {
                BigInt::from(self.vertices[i].weight)
            } else {
                BigInt::from(0)
            }
        });
        for &(a, b) in &self.edges {
            m[(a, b)] += 1;
            m[(b, a)] += 1;
        }
        m
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.intersection_matrix()).expect("intersection matrix is square")
    }

    pub fn is_negative_definite(&self) -> bool {
        is_negative_definite(&self.intersection_matrix()).expect("intersection matrix is symmetric")
    }

    pub(crate) fn require_negative_definite(&self) -> Result<()> {
        if self.is_negative_definite() {
            Ok(())
        } else {
            Err(Error::NotNegativeDefinite)
        }
    }

    /// Checks the input shape the splice and discriminant machinery needs: a negative
    /// definite tree of rational curves.
    pub fn require_qhs_tree(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::NotQhsTree("empty graph".into()));
        }
        if !self.is_tree() {
            return Err(Error::NotQhsTree("graph contains a cycle".into()));
        }
        if let Some(v) = self.vertices.iter().find(|v| v.genus > 0) {
            return Err(Error::NotQhsTree(format!("vertex `{}` has genus {}", v.id, v.genus)));
        }
        if !self.is_negative_definite() {
            return Err(Error::NotQhsTree("intersection matrix is not negative definite".into()));
        }
        Ok(())
    }

    /// Connected component of the graph with `removed` deleted that contains `start`.
    pub fn component_without(&self, removed: &[usize], start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        for &r in removed {
            seen[r] = true;
        }
        if seen[start] {
            return Vec::new();
        }
        let mut out = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < out.len() {
            for j in self.neighbors(out[k]) {
                if !seen[j] {
                    seen[j] = true;
                    out.push(j);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Vertex path between two vertices of a tree, endpoints included.
    pub fn tree_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        let mut stack = vec![from];
        parent[from] = from;
        while let Some(i) = stack.pop() {
            if i == to {
                break;
            }
            for j in self.neighbors(i) {
                if parent[j] == usize::MAX {
                    parent[j] = i;
                    stack.push(j);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Graph-file text; vertices in declaration order, then edges.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ResolutionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "vertex {} weight={}", v.id, v.weight)?;
            if v.genus > 0 {
                write!(f, " genus={}", v.genus)?;
            }
            writeln!(f)?;
        }
        for &(a, b) in &self.edges {
            writeln!(f, "edge {} {}", self.vertices[a].id, self.vertices[b].id)?;
        }
        Ok(())
    }
}

/// Incremental construction by vertex id.
#[derive(Default)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String)>,
}

impl GraphBuilder {
    pub fn vertex(self, id: &str, weight: i64) -> Self {
        self.vertex_with_genus(id, weight, 0)
    }

    pub fn vertex_with_genus(mut self, id: &str, weight: i64, genus: u32) -> Self {
        self.vertices.push(Vertex { id: id.to_string(), weight, genus });
        self
    }

    pub fn edge(mut self, a: &str, b: &str) -> Self {
        self.edges.push((a.to_string(), b.to_string()));
        self
    }

    /// Chain of vertices joined in order.
    pub fn chain(mut self, ids: &[&str]) -> Self {
        for w in ids.windows(2) {
            self = self.edge(w[0], w[1]);
        }
        self
    }

    pub fn build(self) -> Result<ResolutionGraph> {
        let index: HashMap<&str, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let mut edges = Vec::new();
        for (a, b) in &self.edges {
            let lookup = |id: &str| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::InvalidGraph(format!("edge refers to undeclared vertex `{id}`")))
            };
            edges.push((lookup(a)?, lookup(b)?));
        }
        ResolutionGraph::new(self.vertices, edges)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && !id.contains('=') && id.chars().all(|c| c.is_alphanumeric() || "_-.'".contains(c))
}

/// Parses the graph-file grammar; see the module docs.
pub fn parse_graph(text: &str) -> Result<ResolutionGraph> {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pending_edges: Vec<(usize, String, String)> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("vertex") => {
                let id = tokens.next().ok_or_else(|| parse_error(line_no, "vertex needs an id"))?;
                if !is_valid_id(id) {
                    return Err(parse_error(line_no, format!("invalid vertex id `{id}`")));
                }
                let mut weight = None;
                let mut genus = None;
                for tok in tokens {
                    let (key, value) = tok
                        .split_once('=')
                        .ok_or_else(|| parse_error(line_no, format!("expected key=value, found `{tok}`")))?;
                    match key {
                        "weight" if weight.is_none() => {
                            weight = Some(value.parse::<i64>().map_err(|_| {
                                parse_error(line_no, format!("weight `{value}` is not an integer"))
                            })?)
                        }
                        "genus" if genus.is_none() => {
                            genus = Some(value.parse::<u32>().map_err(|_| {
                                parse_error(line_no, format!("genus `{value}` is not a nonnegative integer"))
                            })?)
                        }
                        "weight" | "genus" => return Err(parse_error(line_no, format!("repeated `{key}`"))),
                        _ => return Err(parse_error(line_no, format!("unknown attribute `{key}`"))),
                    }
                }
                let weight = weight.ok_or_else(|| parse_error(line_no, format!("vertex `{id}` has no weight")))?;
                if weight >= 0 {
                    return Err(parse_error(line_no, format!("vertex `{id}` has weight {weight}; weights must be <= -1")));
                }
                if index.insert(id.to_string(), vertices.len()).is_some() {
                    return Err(parse_error(line_no, format!("duplicate vertex `{id}`")));
                }
                vertices.push(Vertex { id: id.to_string(), weight, genus: genus.unwrap_or(0) });
            }
            Some("edge") => {
                let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
                    return Err(parse_error(line_no, "edge takes exactly two vertex ids"));
                };
                if a == b {
                    return Err(parse_error(line_no, format!("self-loop at `{a}`")));
                }
                pending_edges.push((line_no, a.to_string(), b.to_string()));
            }
            Some(other) => return Err(parse_error(line_no, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }

    let mut edges = Vec::with_capacity(pending_edges.len());
    for (line_no, a, b) in pending_edges {
        let lookup = |id: &str| {
            index.get(id).copied().ok_or_else(|| parse_error(line_no, format!("edge refers to undeclared vertex `{id}`")))
        };
        edges.push((lookup(&a)?, lookup(&b)?));
    }
    ResolutionGraph::new(vertices, edges)
}

impl FromStr for ResolutionGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}
