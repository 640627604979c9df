use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{linking_number, node_weight, SpliceDiagram};
use crate::{Error, Result};

/// Maximum number of monomials listed per (node, edge) direction.
pub const WITNESS_CAP: usize = 10_000;

/// Node weights above this are refused rather than enumerated.
const MAX_TARGET: u64 = 20_000_000;

/// Admissible monomials at one node in the direction of one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionWitness {
    pub node: usize,
    pub edge: usize,
    /// Leaf positions beyond the edge.
    pub leaves: Vec<usize>,
    /// `l_vw` for each of those leaves.
    pub linking: Vec<BigInt>,
    pub node_weight: BigInt,
    /// Exponent vectors over all leaves (zero off the branch), lexicographically ascending.
    pub monomials: Vec<Vec<u32>>,
    /// Enumeration stopped at [`WITNESS_CAP`].
    pub truncated: bool,
}

impl DirectionWitness {
    pub fn holds(&self) -> bool {
        !self.monomials.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupReport {
    pub holds: bool,
    /// One entry per (node, incident edge), nodes in diagram order.
    pub directions: Vec<DirectionWitness>,
    /// (node, edge) pairs with no admissible monomial.
    pub failures: Vec<(usize, usize)>,
}

impl SemigroupReport {
    pub fn direction(&self, node: usize, edge: usize) -> Option<&DirectionWitness> {
        self.directions.iter().find(|w| w.node == node && w.edge == edge)
    }
}

/// All `a` with `sum a_i * gens_i == target`, lexicographically ascending, at most `cap`.
/// The flag reports whether the list was cut short.
pub fn representations(target: u64, gens: &[u64], cap: usize) -> (Vec<Vec<u32>>, bool) {
    let n = gens.len();
    let width = target as usize + 1;
    // reach[k][s]: s is a nonnegative combination of gens[k..]
    let mut reach = vec![false; (n + 1) * width];
    reach[n * width] = true;
    for k in (0..n).rev() {
        let g = gens[k] as usize;
        for s in 0..width {
            reach[k * width + s] = reach[(k + 1) * width + s] || (g > 0 && s >= g && reach[k * width + s - g]);
        }
    }

    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    let mut truncated = false;
    #[allow(clippy::too_many_arguments)]
    fn walk(
        k: usize,
        rem: u64,
        gens: &[u64],
        reach: &[bool],
        width: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        cap: usize,
        truncated: &mut bool,
    ) {
        if k == gens.len() {
            if out.len() == cap {
                *truncated = true;
            } else {
                out.push(cur.clone());
            }
            return;
        }
        let g = gens[k];
        let max = rem.checked_div(g).unwrap_or(0);
        for a in 0..=max {
            if *truncated {
                return;
            }
            let r = rem - a * g;
            if reach[(k + 1) * width + r as usize] {
                cur[k] = a as u32;
                walk(k + 1, r, gens, reach, width, cur, out, cap, truncated);
            }
        }
        cur[k] = 0;
    }
    if reach[target as usize] {
        walk(0, target, gens, &reach, width, &mut cur, &mut out, cap, &mut truncated);
    }
    (out, truncated)
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64()
        .filter(|&v| v <= MAX_TARGET)
        .ok_or_else(|| Error::Overflow(format!("{what} {x} exceeds {MAX_TARGET}")))
}

/// For every node `v` and edge `e` at `v`: is `d_v` a nonnegative combination of the
/// linking numbers `l_vw` over leaves `w` beyond `e`?
pub fn semigroup_condition(d: &SpliceDiagram) -> Result<SemigroupReport> {
    if !d.has_nodes() {
        return Err(Error::NoNodes);
    }
    let t = d.leaves().len();
    let mut directions = Vec::new();
    let mut failures = Vec::new();
    for v in d.nodes() {
        let dv = node_weight(d, v)?;
        let target = to_u64(&dv, "node weight")?;
        for e in d.incident_edges(v) {
            let leaves = d.branch_leaves(v, e);
            let linking: Vec<BigInt> = leaves
                .iter()
                .map(|&p| linking_number(d, v, d.leaves()[p]))
                .collect::<Result<_>>()?;
            // a linking number above d_v can only appear with exponent zero
            let gens: Vec<u64> = linking.iter().map(|l| l.to_u64().filter(|&x| x <= target).unwrap_or(0)).collect();
            let (partial, truncated) = representations(target, &gens, WITNESS_CAP);
            let monomials: Vec<Vec<u32>> = partial
                .into_iter()
                .map(|a| {
                    let mut full = vec![0u32; t];
                    for (&p, x) in leaves.iter().zip(a) {
                        full[p] = x;
                    }
                    full
                })
                .collect();
            if monomials.is_empty() {
                failures.push((v, e));
            }
            directions.push(DirectionWitness {
                node: v,
                edge: e,
                leaves,
                linking,
                node_weight: dv.clone(),
                monomials,
                truncated,
            });
        }
    }
    Ok(SemigroupReport { holds: failures.is_empty(), directions, failures })
}
