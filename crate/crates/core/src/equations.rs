//! The congruence condition over admissible monomials, and the weighted-homogeneous
//! splice system built from generic coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::discriminant::{leaf_characters, Character, CharacterAssignment};
use crate::exact::{determinant, IntMatrix};
use crate::graph::ResolutionGraph;
use crate::poly::{Exponents, Polynomial};
use crate::splice::{linking_number, node_weight, semigroup_condition, to_splice_diagram, SemigroupReport, SpliceDiagram};
use crate::{Error, Result};

/// Witness monomials at `node` toward `edge`, optionally restricted to one character.
pub fn admissible_monomials(
    report: &SemigroupReport,
    node: usize,
    edge: usize,
    filter: Option<(&CharacterAssignment, &Character)>,
) -> Vec<Exponents> {
    let Some(w) = report.direction(node, edge) else {
        return Vec::new();
    };
    match filter {
        None => w.monomials.clone(),
        Some((chars, chi)) => w.monomials.iter().filter(|m| chars.character_of(m) == *chi).cloned().collect(),
    }
}

/// A common character at one node with one monomial per incident edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeChoice {
    pub node: usize,
    pub character: Character,
    /// `(edge, monomial)` in the node's incident-edge order.
    pub monomials: Vec<(usize, Exponents)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub holds: bool,
    pub choices: Vec<NodeChoice>,
    /// Nodes where no character is shared by all directions.
    pub failures: Vec<usize>,
}

fn semigroup_failure(d: &SpliceDiagram, report: &SemigroupReport) -> Option<Error> {
    let &(v, e) = report.failures.first()?;
    Some(Error::SemigroupFailed { node: d.vertex(v).id.clone(), toward: d.vertex(d.other_end(e, v)).id.clone() })
}

/// First character, in the order the first direction's monomials attain them, that every
/// direction at `v` can realise; each direction then takes its lexicographically
/// smallest monomial of that character.
fn choose_at_node(d: &SpliceDiagram, report: &SemigroupReport, chars: &CharacterAssignment, v: usize) -> Option<NodeChoice> {
    let edges = d.incident_edges(v);
    let mut candidates: Vec<Character> = Vec::new();
    for m in admissible_monomials(report, v, edges[0], None) {
        let chi = chars.character_of(&m);
        if !candidates.contains(&chi) {
            candidates.push(chi);
        }
    }
    'outer: for chi in candidates {
        let mut monomials = Vec::with_capacity(edges.len());
        for &e in &edges {
            let found = report
                .direction(v, e)
                .and_then(|w| w.monomials.iter().find(|m| chars.character_of(m) == chi));
            match found {
                Some(m) => monomials.push((e, m.clone())),
                None => continue 'outer,
            }
        }
        return Some(NodeChoice { node: v, character: chi, monomials });
    }
    None
}

struct Prepared {
    diagram: SpliceDiagram,
    semigroup: SemigroupReport,
    chars: CharacterAssignment,
}

fn prepare(g: &ResolutionGraph) -> Result<Prepared> {
    g.require_qhs_tree()?;
    g.require_negative_definite()?;
    let diagram = to_splice_diagram(g)?;
    let semigroup = semigroup_condition(&diagram)?;
    if let Some(err) = semigroup_failure(&diagram, &semigroup) {
        return Err(err);
    }
    let chars = leaf_characters(g)?;
    if chars.leaves != diagram.leaf_ids() {
        return Err(Error::Internal("leaf order differs between diagram and characters".into()));
    }
    Ok(Prepared { diagram, semigroup, chars })
}

fn congruence_of(p: &Prepared) -> CongruenceReport {
    let mut choices = Vec::new();
    let mut failures = Vec::new();
    for v in p.diagram.nodes() {
        match choose_at_node(&p.diagram, &p.semigroup, &p.chars, v) {
            Some(c) => choices.push(c),
            None => failures.push(v),
        }
    }
    CongruenceReport { holds: failures.is_empty(), choices, failures }
}

/// Can the admissible monomials at every node be chosen with one common character?
/// A failing semigroup condition is reported as an error, not a verdict.
pub fn congruence_condition(g: &ResolutionGraph) -> Result<CongruenceReport> {
    Ok(congruence_of(&prepare(g)?))
}

/// `a_ij = j^i` for `i < delta - 2`, `j = 1..=delta`, after checking every maximal minor.
pub fn generic_coefficients(delta: usize) -> Result<IntMatrix> {
    if delta < 3 {
        return Err(Error::InvalidArgument(format!("node valency {delta} is below 3")));
    }
    let m = IntMatrix::from_fn(delta - 2, delta, |i, j| BigInt::from(j + 1).pow(i as u32));
    for cols in combinations(delta, delta - 2) {
        let rows: Vec<usize> = (0..delta - 2).collect();
        if determinant(&m.select(&rows, &cols))?.is_zero() {
            return Err(Error::Internal(format!("vanishing minor at columns {cols:?}")));
        }
    }
    Ok(m)
}

/// All `k`-subsets of `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The equations contributed by one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeEquations {
    /// Splice-diagram index and id of the node.
    pub node: usize,
    pub id: String,
    pub weight: BigInt,
    /// `l_vw` for every leaf `w`.
    pub variable_weights: Vec<BigInt>,
    pub edges: Vec<usize>,
    /// One chosen monomial per edge, aligned with `edges`.
    pub monomials: Vec<Exponents>,
    pub coefficients: IntMatrix,
    pub character: Character,
    pub equations: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationsPackage {
    pub variables: Vec<String>,
    pub nodes: Vec<NodeEquations>,
    pub characters: CharacterAssignment,
}

impl EquationsPackage {
    pub fn equations(&self) -> impl Iterator<Item = &Polynomial> {
        self.nodes.iter().flat_map(|n| n.equations.iter())
    }

    /// Every maximal minor of every coefficient matrix is nonzero.
    pub fn minors_nonzero(&self) -> Result<bool> {
        for n in &self.nodes {
            let (r, c) = (n.coefficients.rows(), n.coefficients.cols());
            let rows: Vec<usize> = (0..r).collect();
            for cols in combinations(c, r) {
                if determinant(&n.coefficients.select(&rows, &cols))?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The weighted-homogeneous splice system: `delta_v - 2` equations per node.
pub fn build_splice_equations(g: &ResolutionGraph) -> Result<EquationsPackage> {
    let p = prepare(g)?;
    let d = &p.diagram;
    if !d.has_nodes() {
        return Err(Error::NoNodes);
    }
    let congruence = congruence_of(&p);
    if let Some(&v) = congruence.failures.first() {
        return Err(Error::CongruenceFailed { node: d.vertex(v).id.clone() });
    }
    let variables = d.leaf_ids();
    let mut nodes = Vec::new();
    for choice in congruence.choices {
        let v = choice.node;
        let coefficients = generic_coefficients(choice.monomials.len())?;
        let monomials: Vec<Exponents> = choice.monomials.iter().map(|(_, m)| m.clone()).collect();
        let equations = (0..coefficients.rows())
            .map(|i| {
                Polynomial::from_terms(
                    &variables,
                    monomials
                        .iter()
                        .enumerate()
                        .map(|(j, m)| (m.clone(), BigRational::from_integer(coefficients[(i, j)].clone()))),
                )
            })
            .collect();
        nodes.push(NodeEquations {
            node: v,
            id: d.vertex(v).id.clone(),
            weight: node_weight(d, v)?,
            variable_weights: d.leaves().iter().map(|&w| linking_number(d, v, w)).collect::<Result<_>>()?,
            edges: choice.monomials.iter().map(|(e, _)| *e).collect(),
            monomials,
            coefficients,
            character: choice.character,
            equations,
        });
    }
    let pkg = EquationsPackage { variables, nodes, characters: p.chars };
    if !check_equivariance(&pkg) {
        return Err(Error::Internal("emitted equation is not homogeneous and equivariant".into()));
    }
    if !pkg.minors_nonzero()? {
        return Err(Error::Internal("coefficient matrix has a vanishing maximal minor".into()));
    }
    Ok(pkg)
}

/// Edge weights of a one-node diagram, in leaf order.
pub fn bci_exponents(g: &ResolutionGraph) -> Result<Vec<BigInt>> {
    g.require_qhs_tree()?;
    let d = to_splice_diagram(g)?;
    let nodes = d.nodes();
    match nodes.len() {
        0 => return Err(Error::NoNodes),
        1 => {}
        n => return Err(Error::InvalidArgument(format!("splice diagram has {n} nodes, not one"))),
    }
    let v = nodes[0];
    d.leaves()
        .iter()
        .map(|&w| {
            let e = d.path_edges(v, w)[0];
            d.weight(v, e).cloned().ok_or_else(|| Error::Internal("node edge without weight".into()))
        })
        .collect()
}

/// One equation has weight `degree` under `weights` and a single monomial character.
pub fn equation_is_equivariant(chars: &CharacterAssignment, weights: &[BigInt], degree: &BigInt, f: &Polynomial) -> bool {
    if f.weighted_degree(weights).ok().flatten().as_ref() != Some(degree) {
        return false;
    }
    let mut seen: Option<Character> = None;
    for (m, _) in f.terms() {
        let chi = chars.character_of(m);
        match &seen {
            None => seen = Some(chi),
            Some(prev) if *prev == chi => {}
            Some(_) => return false,
        }
    }
    true
}

/// Every equation is homogeneous of its node's weight and has one monomial character.
pub fn check_equivariance(pkg: &EquationsPackage) -> bool {
    pkg.nodes.iter().all(|n| {
        n.equations.iter().all(|f| equation_is_equivariant(&pkg.characters, &n.variable_weights, &n.weight, f))
    })
}
