//! Command reports: one structured document per command plus its text rendering.
//!
//! Both renderings are produced from the same computed values in a single pass. Key
//! names are listed in `docs/schema.md`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::discriminant::{discriminant_group, leaf_characters, CharacterAssignment};
use crate::equations::{build_splice_equations, congruence_condition, EquationsPackage};
use crate::exact::{rational_string, IntMatrix};
use crate::graph::{
    blow_down_minimal, canonical_cycle, classify, fundamental_cycle, parse_graph, Classification, Kind, ResolutionGraph,
};
use crate::invariants::{invariant_generators, membership_bounded, toric_relations, InvariantBasis, MembershipCertificate};
use crate::poly::{Exponents, Polynomial};
use crate::splice::{edge_determinant, node_weight, semigroup_condition, to_splice_diagram, SpliceDiagram};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub data: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&self.data).expect("report values serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn header(command: &str, input: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!("sforge"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("input_sha256".into(), json!(sha256_hex(input)));
    m
}

fn finish(mut data: Map<String, Value>, body: Map<String, Value>, text: String) -> Report {
    data.extend(body);
    Report { data: Value::Object(data), text }
}

/// Integers as JSON numbers when they fit in `i64`, otherwise as decimal strings.
fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn rat(x: &BigRational) -> Value {
    json!(rational_string(x))
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(big).collect())).collect())
}

fn exponent_map(vars: &[String], e: &[u32]) -> Value {
    let mut m = Map::new();
    for (v, &k) in vars.iter().zip(e) {
        if k > 0 {
            m.insert(v.clone(), json!(k));
        }
    }
    Value::Object(m)
}

fn poly_json(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({ "coefficient": rational_string(c), "monomial": exponent_map(p.vars(), e) }))
        .collect();
    json!({ "text": p.to_string(), "terms": terms })
}

fn phases_string(p: &[BigRational]) -> String {
    let parts: Vec<String> = p.iter().map(rational_string).collect();
    format!("({})", parts.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn group_name(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        "trivial".to_string()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Rational => "rational",
        Kind::MinimallyElliptic => "minimally elliptic",
        Kind::Other => "neither rational nor minimally elliptic",
    }
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "kind": c.kind,
        "zsq": c.zsq,
        "zk": c.zk,
        "multiplicity": c.multiplicity,
        "embedding_dimension": c.embedding_dimension,
        "numerically_gorenstein": c.numerically_gorenstein,
    })
}

fn classification_text(c: &Classification) -> String {
    let mut s = format!("{} (Z^2 = {}, Z.K = {}", kind_name(c.kind), c.zsq, c.zk);
    if let (Some(m), Some(e)) = (c.multiplicity, c.embedding_dimension) {
        let _ = write!(s, ", multiplicity {m}, embedding dimension {e}");
    }
    s.push(')');
    s
}

fn action_json(chars: &CharacterAssignment) -> Value {
    let mut phases = Map::new();
    for (leaf, p) in chars.leaves.iter().zip(&chars.phases) {
        phases.insert(leaf.clone(), Value::Array(p.iter().map(rat).collect()));
    }
    json!({
        "variables": chars.leaves,
        "generator_orders": chars.generator_orders,
        "phases": Value::Object(phases),
    })
}

fn action_text(chars: &CharacterAssignment, out: &mut String) {
    if chars.generator_orders.is_empty() {
        let _ = writeln!(out, "action: trivial group");
        return;
    }
    let orders: Vec<String> = chars.generator_orders.iter().map(|n| n.to_string()).collect();
    let _ = writeln!(out, "action (phases per generator of orders {}):", orders.join(", "));
    for (leaf, p) in chars.leaves.iter().zip(&chars.phases) {
        let _ = writeln!(out, "  {leaf}: {}", phases_string(p));
    }
}

fn read_graph(input: &str) -> Result<ResolutionGraph> {
    parse_graph(input)
}

/// Graph-level invariants and the discriminant group.
pub fn analyze(input: &str) -> Result<Report> {
    let g = read_graph(input)?;
    let m = g.intersection_matrix();
    g.require_negative_definite()?;
    let det = g.determinant().abs();
    let z = fundamental_cycle(&g)?;
    let k = canonical_cycle(&g)?;
    let class = classify(&g)?;
    let ids: Vec<&str> = g.vertices().iter().map(|v| v.id.as_str()).collect();

    let mut text = String::new();
    let _ = writeln!(
        text,
        "graph: {} vertices, {} edges, {}, link b1 = {}",
        g.len(),
        g.edges().len(),
        if g.is_tree() { "tree" } else { "not a tree" },
        g.link_betti_number()
    );
    let _ = writeln!(text, "vertices: {}", ids.join(" "));
    let _ = write!(text, "intersection matrix:\n{m}");
    let _ = writeln!(text, "negative definite: yes");
    let _ = writeln!(text, "|det|: {det}");
    let zs: Vec<String> = ids.iter().zip(&z.coefficients).map(|(i, c)| format!("{i}={c}")).collect();
    let _ = writeln!(text, "fundamental cycle: {}", zs.join(" "));
    let ks: Vec<String> = ids.iter().zip(k.to_strings()).map(|(i, c)| format!("{i}={c}")).collect();
    let _ = writeln!(text, "canonical cycle: {}", ks.join(" "));
    let _ = writeln!(text, "numerically Gorenstein: {}", yes(class.numerically_gorenstein));
    let _ = writeln!(text, "classification: {}", classification_text(&class));

    let mut body = Map::new();
    body.insert(
        "graph".into(),
        json!({
            "vertices": g.vertices().iter().map(|v| json!({"id": v.id, "weight": v.weight, "genus": v.genus})).collect::<Vec<_>>(),
            "edges": g.edges().iter().map(|&(a, b)| json!([ids[a], ids[b]])).collect::<Vec<_>>(),
            "is_tree": g.is_tree(),
            "link_betti_number": g.link_betti_number(),
        }),
    );
    body.insert("intersection_matrix".into(), matrix(&m));
    body.insert("negative_definite".into(), json!(true));
    body.insert("determinant_abs".into(), big(&det));
    body.insert("fundamental_cycle".into(), json!(z.coefficients));
    body.insert("canonical_cycle".into(), json!(k.to_strings()));
    body.insert("numerically_gorenstein".into(), json!(class.numerically_gorenstein));
    body.insert("classification".into(), classification_json(&class));

    let minimal = if g.is_tree() {
        match blow_down_minimal(&g) {
            Ok(h) if h.len() == g.len() => json!({ "contracted": 0, "classification": Value::Null }),
            Ok(h) if h.is_empty() => {
                let _ = writeln!(text, "minimal resolution: smooth point after contracting every vertex");
                json!({ "contracted": g.len(), "classification": Value::Null, "smooth": true })
            }
            Ok(h) => {
                let c = classify(&h)?;
                let _ = writeln!(text, "minimal resolution: {} vertices, {}", h.len(), classification_text(&c));
                json!({ "contracted": g.len() - h.len(), "classification": classification_json(&c) })
            }
            Err(Error::NonMinimalRepresentable(v)) => {
                let _ = writeln!(text, "minimal resolution: not representable, weight at `{v}` becomes nonnegative");
                json!({ "error": format!("non-minimal-representable at {v}") })
            }
            Err(e) => return Err(e),
        }
    } else {
        Value::Null
    };
    body.insert("minimal_resolution".into(), minimal);

    let disc = match g.require_qhs_tree() {
        Ok(()) => {
            let data = discriminant_group(&g)?;
            let chars = data.characters(&g)?;
            let _ = writeln!(text, "discriminant group: {} (order {})", group_name(&data.invariant_factors), data.order);
            action_text(&chars, &mut text);
            json!({
                "order": big(&data.order),
                "invariant_factors": data.invariant_factors.iter().map(big).collect::<Vec<_>>(),
                "action": action_json(&chars),
            })
        }
        Err(Error::NotQhsTree(why)) => {
            let _ = writeln!(text, "discriminant group: not computed ({why})");
            json!({ "order": big(&det), "skipped": why })
        }
        Err(e) => return Err(e),
    };
    body.insert("discriminant".into(), disc);
    Ok(finish(header("analyze", input), body, text))
}

fn splice_json(d: &SpliceDiagram) -> Result<Value> {
    let mut nodes = Vec::new();
    for v in d.nodes() {
        let mut edges = Vec::new();
        for e in d.incident_edges(v) {
            let w = d.other_end(e, v);
            let det = if d.is_node(w) { big(&edge_determinant(d, e)?) } else { Value::Null };
            edges.push(json!({
                "toward": d.vertex(w).id,
                "weight": d.weight(v, e).map(big),
                "edge_determinant": det,
            }));
        }
        nodes.push(json!({ "id": d.vertex(v).id, "node_weight": big(&node_weight(d, v)?), "edges": edges }));
    }
    Ok(json!({ "nodes": nodes, "leaves": d.leaf_ids() }))
}

/// Splice diagram with the integral-homology-sphere test.
pub fn splice(input: &str) -> Result<Report> {
    let g = read_graph(input)?;
    g.require_negative_definite()?;
    g.require_qhs_tree()?;
    let d = to_splice_diagram(&g)?;
    let det = g.determinant().abs();
    let zhs = det == BigInt::from(1);
    let cond = d.weight_conditions();

    let mut text = format!("{d}\n");
    let _ = writeln!(text, "|det|: {det}");
    let _ = writeln!(text, "integral homology sphere: {}", yes(zhs));
    if d.has_nodes() {
        let _ = writeln!(
            text,
            "weight conditions: pairwise coprime {}, leaf weights > 1 {}, edge determinants positive {}",
            yes(cond.pairwise_coprime),
            yes(cond.leaf_weights_exceed_one),
            yes(cond.edge_determinants_positive)
        );
    }

    let mut body = Map::new();
    body.insert("cyclic_quotient".into(), json!(!d.has_nodes()));
    body.insert("splice_diagram".into(), splice_json(&d)?);
    body.insert("determinant_abs".into(), big(&det));
    body.insert("zhs".into(), json!(zhs));
    body.insert(
        "weight_conditions".into(),
        json!({
            "pairwise_coprime": cond.pairwise_coprime,
            "leaf_weights_exceed_one": cond.leaf_weights_exceed_one,
            "edge_determinants_positive": cond.edge_determinants_positive,
        }),
    );
    Ok(finish(header("splice", input), body, text))
}

fn monomial_text(vars: &[String], e: &[u32]) -> String {
    Polynomial::monomial_string(vars, e)
}

/// Semigroup and congruence conditions with witnesses. A failing verdict is a result.
pub fn conditions(input: &str) -> Result<Report> {
    let g = read_graph(input)?;
    g.require_negative_definite()?;
    g.require_qhs_tree()?;
    let d = to_splice_diagram(&g)?;
    let sg = semigroup_condition(&d)?;
    let vars = d.leaf_ids();
    let id = |v: usize| d.vertex(v).id.clone();
    let toward = |v: usize, e: usize| d.vertex(d.other_end(e, v)).id.clone();

    let mut text = String::new();
    let _ = writeln!(text, "semigroup condition: {}", if sg.holds { "holds" } else { "fails" });
    let mut directions = Vec::new();
    for w in &sg.directions {
        let mons: Vec<String> = w.monomials.iter().map(|m| monomial_text(&vars, m)).collect();
        let linking: Vec<String> = w.leaves.iter().zip(&w.linking).map(|(&p, l)| format!("{}:{l}", vars[p])).collect();
        let _ = writeln!(
            text,
            "  node {} [{}] toward {}: linking numbers {} -> {}{}",
            id(w.node),
            w.node_weight,
            toward(w.node, w.edge),
            linking.join(" "),
            if mons.is_empty() { "none".to_string() } else { mons.join(", ") },
            if w.truncated { " (truncated)" } else { "" }
        );
        directions.push(json!({
            "node": id(w.node),
            "toward": toward(w.node, w.edge),
            "node_weight": big(&w.node_weight),
            "leaves": w.leaves.iter().map(|&p| vars[p].clone()).collect::<Vec<_>>(),
            "linking_numbers": w.linking.iter().map(big).collect::<Vec<_>>(),
            "monomials": w.monomials.iter().map(|m| exponent_map(&vars, m)).collect::<Vec<_>>(),
            "truncated": w.truncated,
        }));
    }
    let failures: Vec<Value> =
        sg.failures.iter().map(|&(v, e)| json!({ "node": id(v), "toward": toward(v, e) })).collect();
    let semigroup = json!({ "holds": sg.holds, "directions": directions, "failures": failures });

    let congruence = if sg.holds {
        let c = congruence_condition(&g)?;
        let chars = leaf_characters(&g)?;
        let _ = writeln!(text, "congruence condition: {}", if c.holds { "holds" } else { "fails" });
        let mut nodes = Vec::new();
        for ch in &c.choices {
            let mons: Vec<String> = ch.monomials.iter().map(|(_, m)| monomial_text(&vars, m)).collect();
            let _ = writeln!(text, "  node {}: character {} with {}", id(ch.node), phases_string(&ch.character), mons.join(", "));
            nodes.push(json!({
                "node": id(ch.node),
                "character": ch.character.iter().map(rat).collect::<Vec<_>>(),
                "monomials": ch.monomials.iter().map(|(e, m)| json!({ "toward": toward(ch.node, *e), "monomial": exponent_map(&vars, m) })).collect::<Vec<_>>(),
            }));
        }
        for &v in &c.failures {
            let _ = writeln!(text, "  node {}: no common character", id(v));
        }
        action_text(&chars, &mut text);
        json!({
            "holds": c.holds,
            "nodes": nodes,
            "failures": c.failures.iter().map(|&v| id(v)).collect::<Vec<_>>(),
            "action": action_json(&chars),
        })
    } else {
        let _ = writeln!(text, "congruence condition: not evaluated");
        Value::Null
    };

    let mut body = Map::new();
    body.insert("semigroup".into(), semigroup);
    body.insert("congruence".into(), congruence);
    Ok(finish(header("conditions", input), body, text))
}

fn equations_json(pkg: &EquationsPackage) -> Value {
    let vars = &pkg.variables;
    let nodes: Vec<Value> = pkg
        .nodes
        .iter()
        .map(|n| {
            json!({
                "node": n.id,
                "weight": big(&n.weight),
                "variable_weights": n.variable_weights.iter().map(big).collect::<Vec<_>>(),
                "monomials": n.monomials.iter().map(|m| exponent_map(vars, m)).collect::<Vec<_>>(),
                "coefficients": matrix(&n.coefficients),
                "character": n.character.iter().map(rat).collect::<Vec<_>>(),
                "equations": n.equations.iter().map(poly_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "variables": vars, "nodes": nodes, "action": action_json(&pkg.characters) })
}

/// The splice-type system with its action table; refused when a condition fails.
pub fn equations(input: &str) -> Result<Report> {
    let g = read_graph(input)?;
    let pkg = build_splice_equations(&g)?;
    let mut text = String::new();
    let _ = writeln!(text, "variables: {}", pkg.variables.join(" "));
    for n in &pkg.nodes {
        let weights: Vec<String> =
            pkg.variables.iter().zip(&n.variable_weights).map(|(v, l)| format!("{v}:{l}")).collect();
        let _ = writeln!(
            text,
            "node {} [weight {}] variable weights {} character {}",
            n.id,
            n.weight,
            weights.join(" "),
            phases_string(&n.character)
        );
        for f in &n.equations {
            let _ = writeln!(text, "  {f} = 0");
        }
    }
    action_text(&pkg.characters, &mut text);
    let mut body = Map::new();
    body.insert("equations".into(), equations_json(&pkg));
    Ok(finish(header("equations", input), body, text))
}

/// Target polynomial for membership checking, written over generator names.
///
/// Lines `NAME = monomial` bind names to invariant monomials in the leaf variables; the
/// remaining non-comment line is the target. Without bindings the computed generator
/// names apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFile {
    pub bindings: Vec<(String, Exponents)>,
    pub target: String,
}

pub fn parse_identity_file(text: &str, leaf_vars: &[String]) -> Result<IdentityFile> {
    let mut bindings = Vec::new();
    let mut target = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: n + 1, message };
        if let Some((name, rhs)) = line.split_once('=') {
            let name = name.trim().to_string();
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(err(format!("invalid name `{name}`")));
            }
            if bindings.iter().any(|(b, _)| *b == name) {
                return Err(err(format!("`{name}` is bound twice")));
            }
            let p = Polynomial::parse(rhs, leaf_vars).map_err(|e| err(e.to_string()))?;
            let mut terms = p.terms();
            match (terms.next(), terms.next()) {
                (Some((e, c)), None) if *c == BigRational::from_integer(1.into()) => bindings.push((name, e.clone())),
                _ => return Err(err(format!("`{name}` must be bound to a single monic monomial"))),
            }
        } else if target.replace(line.to_string()).is_some() {
            return Err(err("more than one target polynomial".into()));
        }
    }
    let target = target.ok_or_else(|| Error::Parse { line: text.lines().count().max(1), message: "no target polynomial".into() })?;
    Ok(IdentityFile { bindings, target })
}

fn certificate_json(cert: &MembershipCertificate, quotient: &Polynomial) -> Value {
    json!({
        "found": true,
        "target": poly_json(quotient),
        "target_in_leaf_variables": poly_json(&cert.target),
        "ideal": cert.generators.iter().map(poly_json).collect::<Vec<_>>(),
        "cofactors": cert.cofactors.iter().map(poly_json).collect::<Vec<_>>(),
        "degree_bound": cert.degree_bound,
        "verified": cert.verify(),
    })
}

/// Invariant generators with toric relations up to `degree_bound`. An identity file
/// adds a membership certificate for a quotient identity against the splice equations.
pub fn invariants(input: &str, degree_bound: u32, identity: Option<&str>) -> Result<Report> {
    let g = read_graph(input)?;
    g.require_negative_definite()?;
    let chars = leaf_characters(&g)?;
    let mut basis: InvariantBasis = invariant_generators(&chars)?;
    let vars = basis.variables.clone();

    let identity = identity.map(|t| parse_identity_file(t, &vars)).transpose()?;
    if let Some(id) = identity.as_ref().filter(|id| !id.bindings.is_empty()) {
        let order: Vec<Exponents> = id.bindings.iter().map(|(_, e)| e.clone()).collect();
        for (name, e) in &id.bindings {
            if !basis.generators.contains(e) {
                return Err(Error::InvalidArgument(format!(
                    "`{name} = {}` is not a minimal invariant monomial",
                    monomial_text(&vars, e)
                )));
            }
        }
        if order.len() != basis.len() {
            return Err(Error::InvalidArgument(format!(
                "identity file binds {} of {} minimal invariant monomials",
                order.len(),
                basis.len()
            )));
        }
        basis = basis.reordered(&order)?;
        basis.names = id.bindings.iter().map(|(n, _)| n.clone()).collect();
    }

    let mut text = String::new();
    let _ = writeln!(text, "group order: {}", chars.order());
    action_text(&chars, &mut text);
    let _ = writeln!(text, "generators:");
    for (n, e) in basis.names.iter().zip(&basis.generators) {
        let _ = writeln!(text, "  {n} = {}", monomial_text(&vars, e));
    }
    let relations = toric_relations(&basis, degree_bound);
    let _ = writeln!(text, "relations up to degree {degree_bound}:");
    if relations.is_empty() {
        let _ = writeln!(text, "  none");
    }
    for r in &relations {
        let _ = writeln!(text, "  {r} = 0");
    }

    let mut body = Map::new();
    body.insert("group_order".into(), json!(chars.order()));
    body.insert("action".into(), action_json(&chars));
    body.insert(
        "generators".into(),
        Value::Array(
            basis
                .names
                .iter()
                .zip(&basis.generators)
                .map(|(n, e)| json!({ "name": n, "monomial": exponent_map(&vars, e), "text": monomial_text(&vars, e) }))
                .collect(),
        ),
    );
    body.insert("degree_bound".into(), json!(degree_bound));
    body.insert(
        "relations".into(),
        Value::Array(
            relations
                .iter()
                .map(|r| {
                    let mut t = r.terms();
                    let (lhs, _) = t.next().expect("binomial");
                    let (rhs, _) = t.next().expect("binomial");
                    json!({ "text": r.to_string(), "lhs": exponent_map(&basis.names, lhs), "rhs": exponent_map(&basis.names, rhs) })
                })
                .collect(),
        ),
    );

    let certificate = match identity {
        None => Value::Null,
        Some(id) => {
            let quotient = Polynomial::parse(&id.target, &basis.names)?;
            let target = quotient.substitute(&basis.parametrization())?;
            let pkg = build_splice_equations(&g)?;
            let ideal: Vec<Polynomial> = pkg.equations().cloned().collect();
            let _ = writeln!(text, "identity: {quotient}");
            let _ = writeln!(text, "  in leaf variables: {target}");
            match membership_bounded(&target, &ideal, degree_bound)? {
                Some(cert) => {
                    let _ = writeln!(text, "  lies in the ideal of the splice equations:");
                    for (q, f) in cert.cofactors.iter().zip(&cert.generators) {
                        if !q.is_zero() {
                            let _ = writeln!(text, "    ({q}) * ({f})");
                        }
                    }
                    certificate_json(&cert, &quotient)
                }
                None => {
                    let _ = writeln!(text, "  no certificate with cofactors of degree <= {degree_bound}");
                    json!({ "found": false, "target": poly_json(&quotient), "degree_bound": degree_bound })
                }
            }
        }
    };
    body.insert("certificate".into(), certificate);
    Ok(finish(header("invariants", input), body, text))
}
