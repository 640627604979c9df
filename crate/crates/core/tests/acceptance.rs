//! Acceptance gate: one PASS/FAIL line per criterion. All comparisons are exact
//! (zero tolerance); no floating point is involved anywhere.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use sforge::corpus::random_corpus;
use sforge::discriminant::{discriminant_group, leaf_characters};
use sforge::equations::{bci_exponents, build_splice_equations, combinations, congruence_condition};
use sforge::exact::{smith_normal_form, IntMatrix};
use sforge::graph::{canonical_cycle, classify, fundamental_cycle, Kind, ResolutionGraph};
use sforge::invariants::{invariant_generators, membership_bounded, toric_relations};
use sforge::poly::{Exponents, Polynomial};
use sforge::splice::{edge_determinant, is_zhs, semigroup_condition, to_splice_diagram, SpliceDiagram};

const SEED: u64 = 2024;
const RANDOM_TREES: usize = 200;
const MAX_VERTICES: usize = 10;
const BRUTE_FORCE_VERTICES: usize = 6;
const BRUTE_FORCE_COEFFICIENT: i64 = 10;
const COMPLETENESS_ORDER: u64 = 200;
const ENUMERATION_BUDGET: u128 = 20_000_000;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn mono(vars: &[&str], text: &str) -> Exponents {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let p = Polynomial::parse(text, &names).unwrap();
    p.support().pop().unwrap()
}

fn random() -> Vec<ResolutionGraph> {
    random_corpus(SEED, RANDOM_TREES, MAX_VERTICES)
}

/// Laplace expansion; only used on small matrices.
fn laplace(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * laplace(&minor);
            if j % 2 == 0 { term } else { -term }
        })
        .sum()
}

fn node_sources(d: &SpliceDiagram) -> Vec<(usize, usize)> {
    d.nodes().into_iter().map(|v| (v, d.vertex(v).source)).collect()
}

fn criterion_1() -> String {
    let g = graph("e7.graph");
    assert_eq!(discriminant_group(&g).unwrap().order, BigInt::from(2));
    assert_eq!(bci_exponents(&g).unwrap(), vec![BigInt::from(2), BigInt::from(3), BigInt::from(4)]);

    let chars = leaf_characters(&g).unwrap();
    assert_eq!(chars.leaves, ["x", "y", "z"]);
    let actions: Vec<Vec<BigRational>> = chars
        .elements()
        .unwrap()
        .into_iter()
        .filter(|e| e.iter().any(|&k| k != 0))
        .map(|e| chars.element_phases(&e))
        .collect();
    assert_eq!(actions, vec![vec![rat(1, 2), rat(0, 1), rat(1, 2)]]);

    let xyz = ["x", "y", "z"];
    let named = [mono(&xyz, "x^2"), mono(&xyz, "x*z"), mono(&xyz, "z^2"), mono(&xyz, "y")];
    let basis = invariant_generators(&chars).unwrap();
    let mut got = basis.generators.clone();
    got.sort();
    let mut want = named.to_vec();
    want.sort();
    assert_eq!(got, want);

    let basis = basis.reordered(&named).unwrap();
    assert_eq!(basis.names, ["A", "B", "C", "D"]);
    let relations: Vec<String> = toric_relations(&basis, 2).iter().map(ToString::to_string).collect();
    assert_eq!(relations, ["A*C - B^2"]);

    let quotient = Polynomial::parse("B^2 + C*(C^2 + D^3)", &basis.names).unwrap();
    let target = quotient.substitute(&basis.parametrization()).unwrap();
    let pkg = build_splice_equations(&g).unwrap();
    let ideal: Vec<Polynomial> = pkg.equations().cloned().collect();
    assert_eq!(ideal.len(), 1);
    assert_eq!(ideal[0].to_string(), "x^2 + y^3 + z^4");
    let cert = membership_bounded(&target, &ideal, 2).unwrap().expect("certificate");
    assert!(cert.verify());
    assert_eq!(cert.cofactors[0], Polynomial::parse("z^2", &pkg.variables).unwrap());
    let product = cert.cofactors[0].try_mul(&ideal[0]).unwrap();
    assert_eq!(product, target);
    format!("cofactor {}", cert.cofactors[0])
}

fn criterion_2() -> String {
    let g = graph("two-node.graph");
    let d = to_splice_diagram(&g).unwrap();
    let l = d.index_of("l").unwrap();
    let r = d.index_of("r").unwrap();
    let weights_at = |v: usize| -> Vec<(String, BigInt)> {
        d.incident_edges(v)
            .into_iter()
            .map(|e| (d.vertex(d.other_end(e, v)).id.clone(), d.weight(v, e).unwrap().clone()))
            .collect()
    };
    let mut wl = weights_at(l);
    wl.sort();
    let mut wr = weights_at(r);
    wr.sort();
    let b = |x: i64| BigInt::from(x);
    assert_eq!(wl, vec![("r".into(), b(7)), ("z1".into(), b(2)), ("z2".into(), b(3))]);
    assert_eq!(wr, vec![("l".into(), b(11)), ("z3".into(), b(5)), ("z4".into(), b(2))]);

    let internal: Vec<usize> = (0..d.edges().len()).filter(|&e| d.edge(e).ends.iter().all(|&v| d.is_node(v))).collect();
    assert_eq!(internal.len(), 1);
    assert_eq!(edge_determinant(&d, internal[0]).unwrap(), b(17));

    let pkg = build_splice_equations(&g).unwrap();
    assert_eq!(pkg.variables, ["z1", "z2", "z3", "z4"]);
    let left = pkg.nodes.iter().find(|n| n.id == "l").unwrap();
    assert_eq!(left.weight, b(42));
    assert_eq!(left.variable_weights, vec![b(21), b(14), b(12), b(30)]);

    let zs = ["z1", "z2", "z3", "z4"];
    let report = semigroup_condition(&d).unwrap();
    assert!(report.holds);
    let witnesses = |v: usize| -> Vec<Exponents> {
        let mut all: Vec<Exponents> =
            report.directions.iter().filter(|w| w.node == v).flat_map(|w| w.monomials.clone()).collect();
        all.sort();
        all
    };
    let set = |ms: &[&str]| -> Vec<Exponents> {
        let mut v: Vec<Exponents> = ms.iter().map(|m| mono(&zs, m)).collect();
        v.sort();
        v
    };
    assert_eq!(witnesses(l), set(&["z1^2", "z2^3", "z3*z4"]));
    assert_eq!(witnesses(r), set(&["z3^5", "z4^2", "z1*z2^4", "z1^3*z2"]));

    let supports: Vec<Vec<Exponents>> = pkg
        .equations()
        .map(|f| {
            let mut s = f.support();
            s.sort();
            s
        })
        .collect();
    assert_eq!(supports, vec![set(&["z1^2", "z2^3", "z3*z4"]), set(&["z3^5", "z4^2", "z1*z2^4"])]);
    "2 equations".into()
}

fn criterion_3() -> String {
    let g = graph("two-node.graph");
    assert_eq!(g.determinant().abs(), BigInt::one());
    assert!(is_zhs(&g));
    let w = to_splice_diagram(&g).unwrap().weight_conditions();
    assert!(w.pairwise_coprime);
    assert!(w.leaf_weights_exceed_one);
    assert!(w.edge_determinants_positive);
    "|det| = 1".into()
}

fn criterion_4() -> String {
    let ade = [
        ("a1.graph", 2),
        ("a2.graph", 3),
        ("a3.graph", 4),
        ("a4.graph", 5),
        ("d4.graph", 4),
        ("d5.graph", 4),
        ("e6.graph", 3),
        ("e7.graph", 2),
        ("e8.graph", 1),
    ];
    for (name, order) in ade {
        let g = graph(name);
        let c = classify(&g).unwrap();
        assert_eq!(c.kind, Kind::Rational, "{name}");
        assert_eq!(c.zsq + c.zk, -2, "{name}");
        assert!(canonical_cycle(&g).unwrap().coefficients.iter().all(Zero::is_zero), "{name}");
        let disc = discriminant_group(&g).unwrap();
        assert_eq!(disc.order, BigInt::from(order), "{name}");
        // independent of the library: the SNF diagonal product
        let snf = smith_normal_form(&g.intersection_matrix());
        let product: BigInt = snf.invariant_factors().iter().map(|x| x.abs()).product();
        assert_eq!(product, BigInt::from(order), "{name}");
    }

    let cusp = graph("quotient-cusp-2-3.graph");
    assert_eq!(classify(&cusp).unwrap().kind, Kind::Rational);
    assert!(semigroup_condition(&to_splice_diagram(&cusp).unwrap()).unwrap().holds);
    assert!(congruence_condition(&cusp).unwrap().holds);
    format!("{} ADE graphs", ade.len())
}

fn criterion_5() -> String {
    let corpus = random();
    assert_eq!(corpus.len(), RANDOM_TREES);
    let mut brute_forced = 0;
    for (i, g) in corpus.iter().enumerate() {
        assert!(g.len() <= MAX_VERTICES && g.is_tree() && g.is_negative_definite(), "tree {i}");

        let m = g.intersection_matrix();
        let snf = smith_normal_form(&m);
        assert_eq!(&(&snf.u * &m) * &snf.v, snf.d, "tree {i}: UMV != D");
        assert!(snf.d.is_diagonal(), "tree {i}");
        assert!(unimodular(&snf.u) && unimodular(&snf.v), "tree {i}: not unimodular");
        let f: Vec<BigInt> = snf.invariant_factors().iter().map(|x| x.abs()).collect();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "tree {i}: divisibility");
        }
        assert_eq!(f.iter().product::<BigInt>(), g.determinant().abs(), "tree {i}");

        if g.len() <= BRUTE_FORCE_VERTICES {
            let brute = brute_force_fundamental(g, BRUTE_FORCE_COEFFICIENT).expect("cycle within bound");
            assert_eq!(fundamental_cycle(g).unwrap().coefficients, brute, "tree {i}");
            brute_forced += 1;
        }

        let d = to_splice_diagram(g).unwrap();
        if !d.has_nodes() {
            continue;
        }
        let report = semigroup_condition(&d).unwrap();
        let mut oracle = true;
        for (v, src) in node_sources(&d) {
            let dv = linking_by_inverse(g, src, src).to_u64().unwrap();
            for e in d.incident_edges(v) {
                let gens: Vec<u64> = d
                    .branch_leaves(v, e)
                    .iter()
                    .map(|&p| linking_by_inverse(g, src, d.vertex(d.leaves()[p]).source).to_u64().unwrap())
                    .collect();
                let ok = coin_dp(dv, &gens);
                assert_eq!(report.direction(v, e).unwrap().holds(), ok, "tree {i}: direction verdict");
                oracle &= ok;
            }
        }
        assert_eq!(report.holds, oracle, "tree {i}: semigroup verdict");

        for e in 0..d.edges().len() {
            if d.edge(e).ends.iter().all(|&v| d.is_node(v)) {
                assert!(edge_determinant(&d, e).unwrap().is_positive(), "tree {i}: edge determinant");
            }
        }
    }
    assert!(brute_forced > 0);
    format!("{} trees, {brute_forced} brute-forced", corpus.len())
}

fn unimodular(m: &IntMatrix) -> bool {
    sforge::exact::determinant(m).unwrap().abs().is_one()
}

/// Bundled graphs plus the seeded random corpus.
fn full_corpus() -> Vec<(String, ResolutionGraph)> {
    let mut all = bundled();
    all.extend(random().into_iter().enumerate().map(|(i, g)| (format!("random {SEED}/{i}"), g)));
    all
}

fn criterion_6() -> String {
    let mut checked = 0;
    for (name, g) in full_corpus() {
        if g.require_qhs_tree().is_err() || !g.is_negative_definite() {
            continue;
        }
        let d = to_splice_diagram(&g).unwrap();
        if !d.has_nodes() || !semigroup_condition(&d).unwrap().holds || !congruence_condition(&g).unwrap().holds {
            continue;
        }
        let pkg = build_splice_equations(&g).unwrap();
        let t = pkg.variables.len();
        assert_eq!(pkg.equations().count(), t - 2, "{name}");
        let res = residues(&pkg.characters);
        let orders = &pkg.characters.generator_orders;
        for node in &pkg.nodes {
            let v = d.index_of(&node.id).unwrap();
            let src = d.vertex(v).source;
            let dv = linking_by_inverse(&g, src, src);
            let ell: Vec<BigInt> =
                d.leaves().iter().map(|&w| linking_by_inverse(&g, src, d.vertex(w).source)).collect();
            let delta = d.incident_edges(v).len();
            assert_eq!(node.equations.len(), delta - 2, "{name}");
            for f in &node.equations {
                let mut chars = Vec::new();
                for (e, c) in f.terms() {
                    assert!(!c.is_zero());
                    let deg: BigInt = e.iter().zip(&ell).map(|(&a, l)| l * BigInt::from(a)).sum();
                    assert_eq!(deg, dv, "{name}: not weighted homogeneous");
                    let chi: Vec<u64> = (0..orders.len())
                        .map(|j| e.iter().enumerate().map(|(w, &a)| res[w][j] * a as u64).sum::<u64>() % orders[j])
                        .collect();
                    chars.push(chi);
                }
                assert!(chars.windows(2).all(|w| w[0] == w[1]), "{name}: not equivariant");
            }
            let a = &node.coefficients;
            let rows: Vec<usize> = (0..a.rows()).collect();
            for cols in combinations(a.cols(), a.rows()) {
                let minor: Vec<Vec<BigInt>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
                assert!(!laplace(&minor).is_zero(), "{name}: vanishing minor");
            }
        }
        checked += 1;
    }
    assert!(checked >= 4, "only {checked} graphs reached the equation stage");
    format!("{checked} graphs")
}

/// Rough count of enumeration steps: degree-bounded prefixes times the last-exponent scan.
fn enumeration_cost(order: u64, variables: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 0..variables.saturating_sub(1) as u128 {
        c = c * (order as u128 + 1 + k) / (k + 1);
    }
    c * order as u128
}

fn criterion_7() -> String {
    let mut bundled_checked = 0;
    for (name, g) in bundled() {
        if g.require_qhs_tree().is_err() || !g.is_negative_definite() {
            continue;
        }
        let chars = leaf_characters(&g).unwrap();
        let order = chars.order();
        if order > COMPLETENESS_ORDER {
            continue;
        }
        let basis = invariant_generators(&chars).unwrap();
        assert!(invariant_monomials_factor(&chars, &basis, order as u32), "{name}: incomplete");
        bundled_checked += 1;
    }
    assert!(bundled_checked >= 10, "only {bundled_checked} actions checked");

    let (mut random_checked, mut over_budget) = (0, 0);
    for (i, g) in random().iter().enumerate() {
        let chars = leaf_characters(g).unwrap();
        let order = chars.order();
        if order > COMPLETENESS_ORDER {
            continue;
        }
        if enumeration_cost(order, chars.variables()) > ENUMERATION_BUDGET {
            over_budget += 1;
            continue;
        }
        let basis = invariant_generators(&chars).unwrap();
        assert!(invariant_monomials_factor(&chars, &basis, order as u32), "random tree {i}: incomplete");
        random_checked += 1;
    }
    format!("{bundled_checked} bundled, {random_checked} random actions; {over_budget} random over budget")
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 E7 pipeline end to end", criterion_1),
        ("2 two-node splice diagram and equations", criterion_2),
        ("3 integral homology sphere detection", criterion_3),
        ("4 classification suite", criterion_4),
        ("5 oracle equivalence on 200 random trees", criterion_5),
        ("6 equation invariants over the corpus", criterion_6),
        ("7 invariant ring completeness, order <= 200", criterion_7),
    ];
    println!("tolerance: exact arithmetic, zero tolerance on every comparison");
    let mut failed = 0;
    for (label, f) in criteria {
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(detail) => println!("PASS criterion {label} ({detail})"),
            Err(_) => {
                println!("FAIL criterion {label}");
                failed += 1;
            }
        }
    }
    println!("EXCLUDED criterion 8 analytic statements (not checkable at desk scale)");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
