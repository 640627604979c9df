#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use sforge::discriminant::CharacterAssignment;
use sforge::exact::invert_rational;
use sforge::graph::{parse_graph, ResolutionGraph};
use sforge::invariants::InvariantBasis;

pub fn graphs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/graphs")
}

pub fn graph(name: &str) -> ResolutionGraph {
    let text = std::fs::read_to_string(graphs_dir().join(name)).expect("bundled graph");
    parse_graph(&text).expect("bundled graph parses")
}

/// Every bundled `.graph` file, sorted by name.
pub fn bundled() -> Vec<(String, ResolutionGraph)> {
    let mut names: Vec<String> = std::fs::read_dir(graphs_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".graph"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), graph(&n))).collect()
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

/// `l_vw = |det G| * |(M^-1)_vw|` on resolution-graph vertices.
pub fn linking_by_inverse(g: &ResolutionGraph, v: usize, w: usize) -> BigInt {
    let inv = invert_rational(&g.intersection_matrix()).unwrap();
    let x = BigRational::from_integer(g.determinant().abs()) * inv[(v, w)].abs();
    assert!(x.is_integer());
    x.to_integer()
}

/// Is `target` a nonnegative combination of `gens`? Plain forward DP.
pub fn coin_dp(target: u64, gens: &[u64]) -> bool {
    let mut ok = vec![false; target as usize + 1];
    ok[0] = true;
    for s in 1..=target as usize {
        ok[s] = gens.iter().any(|&g| g > 0 && g as usize <= s && ok[s - g as usize]);
    }
    ok[target as usize]
}

/// Minimum cycle with coefficients in `[1, bound]` and `Z . E_i <= 0` for all `i`.
pub fn brute_force_fundamental(g: &ResolutionGraph, bound: i64) -> Option<Vec<i64>> {
    let m = g.intersection_matrix();
    let n = g.len();
    let entry = |i: usize, j: usize| m[(i, j)].to_i64().unwrap();
    let mut z = vec![1i64; n];
    let mut p: Vec<i64> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).sum()).collect();
    let mut best: Option<(i64, Vec<i64>)> = None;
    loop {
        if p.iter().all(|&x| x <= 0) {
            let s: i64 = z.iter().sum();
            if best.as_ref().is_none_or(|(b, _)| s < *b) {
                best = Some((s, z.clone()));
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return best.map(|(_, z)| z);
            }
            let delta = if z[k] == bound { 1 - bound } else { 1 };
            z[k] += delta;
            for (i, pi) in p.iter_mut().enumerate() {
                *pi += entry(i, k) * delta;
            }
            if delta == 1 {
                break;
            }
            k += 1;
        }
    }
}

/// Character of each leaf variable as integer residues modulo the generator orders.
pub fn residues(chars: &CharacterAssignment) -> Vec<Vec<u64>> {
    chars
        .phases
        .iter()
        .map(|row| {
            row.iter()
                .zip(&chars.generator_orders)
                .map(|(p, &n)| (p * BigRational::from_integer(n.into())).to_integer().to_u64().unwrap())
                .collect()
        })
        .collect()
}

/// Every invariant monomial of total degree `1..=bound` factors over the basis. The last
/// exponent is solved for, the others enumerated; factorability is decided bottom-up.
pub fn invariant_monomials_factor(chars: &CharacterAssignment, basis: &InvariantBasis, bound: u32) -> bool {
    let t = chars.variables();
    let orders = &chars.generator_orders;
    let res = residues(chars);
    let add = |acc: &mut Vec<u64>, w: usize, k: u64| {
        for ((a, r), n) in acc.iter_mut().zip(&res[w]).zip(orders) {
            *a = (*a + r * k) % n;
        }
    };
    let mut invariant: Vec<Vec<u32>> = Vec::new();
    fn prefixes(i: usize, t: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 >= t {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            prefixes(i + 1, t, left - a, cur, out);
        }
        cur[i] = 0;
    }
    if t == 0 {
        return basis.generators.is_empty();
    }
    let mut pre = Vec::new();
    prefixes(0, t, bound, &mut vec![0; t], &mut pre);
    for p in pre {
        let used: u32 = p.iter().sum();
        let mut chi = vec![0u64; orders.len()];
        for (w, &a) in p.iter().enumerate().take(t - 1) {
            add(&mut chi, w, a as u64);
        }
        for k in 0..=(bound - used) {
            if chi.iter().all(|&x| x == 0) && used + k > 0 {
                let mut m = p.clone();
                m[t - 1] = k;
                invariant.push(m);
            }
            add(&mut chi, t - 1, 1);
        }
    }
    invariant.sort_by_key(|m| m.iter().sum::<u32>());
    let mut factorable: HashSet<Vec<u32>> = HashSet::new();
    for m in invariant {
        let ok = basis.generators.iter().any(|g| {
            g.iter().zip(&m).all(|(a, b)| a <= b) && {
                let rest: Vec<u32> = m.iter().zip(g).map(|(b, a)| b - a).collect();
                rest.iter().all(|&x| x == 0) || factorable.contains(&rest)
            }
        });
        if !ok {
            return false;
        }
        factorable.insert(m);
    }
    true
}

pub fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}
