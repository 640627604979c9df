//! Invariant theory of the diagonal discriminant-group action on the leaf variables.
//!
//! Invariant monomials are exactly the zero-sum sequences of leaf characters, so the
//! minimal ones are found by growing zero-sum-free sequences one variable at a time.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::discriminant::{CharacterAssignment, ENUMERATION_CAP};
use crate::exact::solve_any;
use crate::poly::{Exponents, Polynomial};
use crate::{Error, Result};

/// Zero-sum-free sequences explored before giving up.
const STATE_CAP: usize = 2_000_000;

/// Minimal invariant monomials, named `A, B, C, ...` in descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasis {
    pub variables: Vec<String>,
    pub names: Vec<String>,
    pub generators: Vec<Exponents>,
}

/// `A..Z` for up to 26 generators, otherwise `G1, G2, ...`.
pub fn generator_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| char::from(b'A' + i as u8).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("G{i}")).collect()
    }
}

impl InvariantBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Each generator as a polynomial in the leaf variables.
    pub fn parametrization(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|e| Polynomial::monomial(&self.variables, e.clone(), BigRational::from_integer(1.into())))
            .collect()
    }

    /// The same generators listed in `order` and renamed `A, B, ...` accordingly.
    pub fn reordered(&self, order: &[Exponents]) -> Result<InvariantBasis> {
        let given: BTreeSet<&Exponents> = order.iter().collect();
        let ours: BTreeSet<&Exponents> = self.generators.iter().collect();
        if given != ours || order.len() != self.generators.len() {
            return Err(Error::InvalidArgument("reordering is not a permutation of the generators".into()));
        }
        Ok(InvariantBasis {
            variables: self.variables.clone(),
            names: generator_names(order.len()),
            generators: order.to_vec(),
        })
    }

    /// Exponents over the generators whose product is `m`, if any.
    pub fn factor(&self, m: &[u32]) -> Option<Vec<u32>> {
        fn go(basis: &InvariantBasis, start: usize, m: &mut Vec<u32>, acc: &mut Vec<u32>) -> bool {
            if m.iter().all(|&x| x == 0) {
                return true;
            }
            for i in start..basis.generators.len() {
                let g = &basis.generators[i];
                if g.iter().zip(m.iter()).all(|(a, b)| a <= b) {
                    for (x, a) in m.iter_mut().zip(g) {
                        *x -= a;
                    }
                    acc[i] += 1;
                    if go(basis, i, m, acc) {
                        return true;
                    }
                    acc[i] -= 1;
                    for (x, a) in m.iter_mut().zip(g) {
                        *x += a;
                    }
                }
            }
            false
        }
        let mut rest = m.to_vec();
        let mut acc = vec![0; self.generators.len()];
        go(self, 0, &mut rest, &mut acc).then_some(acc)
    }
}

/// Group elements as mixed-radix indices so that character sums are table lookups.
struct Encoded {
    order: usize,
    /// `shift[w][x]` is `x + chi(z_w)`.
    shift: Vec<Vec<usize>>,
    /// Index of `-chi(z_w)`.
    negated: Vec<usize>,
}

fn encode(chars: &CharacterAssignment) -> Result<Encoded> {
    let radices: Vec<usize> = chars.generator_orders.iter().map(|&n| n as usize).collect();
    let order: usize = radices.iter().product();
    let decode = |mut x: usize| -> Vec<usize> {
        radices
            .iter()
            .map(|&n| {
                let d = x % n;
                x /= n;
                d
            })
            .collect()
    };
    let index = |digits: &[usize]| -> usize { digits.iter().zip(&radices).rev().fold(0, |acc, (&d, &n)| acc * n + d) };
    let mut shift = Vec::new();
    let mut negated = Vec::new();
    for row in &chars.phases {
        let digits: Vec<usize> = row
            .iter()
            .zip(&radices)
            .map(|(p, &n)| {
                let k = p * BigRational::from_integer(n.into());
                if !k.is_integer() {
                    return Err(Error::Internal(format!("phase {p} has denominator not dividing {n}")));
                }
                k.to_integer().to_usize().ok_or_else(|| Error::Internal("negative phase".into()))
            })
            .collect::<Result<_>>()?;
        let neg: Vec<usize> = digits.iter().zip(&radices).map(|(&d, &n)| (n - d) % n).collect();
        negated.push(index(&neg));
        shift.push(
            (0..order)
                .map(|x| {
                    let s: Vec<usize> = decode(x).iter().zip(&digits).zip(&radices).map(|((a, b), &n)| (a + b) % n).collect();
                    index(&s)
                })
                .collect(),
        );
    }
    Ok(Encoded { order, shift, negated })
}

struct State {
    exponents: Exponents,
    last: usize,
    sum: usize,
    /// Bitset of subsequence sums, the empty one included.
    subsums: Vec<u64>,
}

fn has(bits: &[u64], x: usize) -> bool {
    bits[x / 64] >> (x % 64) & 1 == 1
}

/// Minimal invariant monomials: every invariant monomial is a product of these.
pub fn invariant_generators(chars: &CharacterAssignment) -> Result<InvariantBasis> {
    let order = chars.order();
    if order > ENUMERATION_CAP {
        return Err(Error::OrderTooLarge { order: order.to_string(), cap: ENUMERATION_CAP });
    }
    let enc = encode(chars)?;
    let t = chars.variables();
    let words = enc.order.div_ceil(64);
    let mut start = vec![0u64; words];
    start[0] = 1;
    let mut frontier = vec![State { exponents: vec![0; t], last: 0, sum: 0, subsums: start }];
    let mut found = Vec::new();
    let mut explored = 0usize;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for w in s.last..t {
                let mut e = s.exponents.clone();
                e[w] += 1;
                if s.sum == enc.negated[w] {
                    found.push(e);
                } else if !has(&s.subsums, enc.negated[w]) {
                    let mut subsums = s.subsums.clone();
                    for x in 0..enc.order {
                        if has(&s.subsums, x) {
                            let y = enc.shift[w][x];
                            subsums[y / 64] |= 1 << (y % 64);
                        }
                    }
                    next.push(State { exponents: e, last: w, sum: enc.shift[w][s.sum], subsums });
                }
            }
        }
        explored += next.len();
        if explored > STATE_CAP {
            return Err(Error::Overflow(format!("more than {STATE_CAP} zero-sum-free monomials")));
        }
        frontier = next;
    }
    found.sort_by(|a, b| b.cmp(a));
    Ok(InvariantBasis { variables: chars.leaves.clone(), names: generator_names(found.len()), generators: found })
}

/// All exponent vectors of total degree `1..=bound` in `k` variables.
fn exponent_vectors(k: usize, bound: u32) -> Vec<Exponents> {
    fn go(i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            go(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, bound, &mut vec![0; k], &mut out);
    out
}

/// Binomials `G^a - G^b` of degree at most `bound` with disjoint supports and equal images.
/// The lexicographically larger term comes first.
pub fn toric_relations(basis: &InvariantBasis, bound: u32) -> Vec<Polynomial> {
    let mut by_image: BTreeMap<Exponents, Vec<Exponents>> = BTreeMap::new();
    for a in exponent_vectors(basis.len(), bound) {
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let mut image = vec![0u32; basis.variables.len()];
        for (k, g) in a.iter().zip(&basis.generators) {
            for (x, y) in image.iter_mut().zip(g) {
                *x += k * y;
            }
        }
        by_image.entry(image).or_default().push(a);
    }
    let mut pairs: Vec<(u32, Exponents, Exponents)> = Vec::new();
    for group in by_image.values() {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                if a.iter().zip(b).any(|(&x, &y)| x > 0 && y > 0) {
                    continue;
                }
                let (hi, lo) = if a > b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                pairs.push((hi.iter().sum::<u32>().max(lo.iter().sum()), hi, lo));
            }
        }
    }
    pairs.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)).then_with(|| y.2.cmp(&x.2)));
    pairs.dedup();
    let one = BigRational::from_integer(1.into());
    pairs
        .into_iter()
        .map(|(_, hi, lo)| {
            Polynomial::from_terms(&basis.names, [(hi, one.clone()), (lo, -one.clone())])
        })
        .collect()
}

/// `target = sum q_i g_i`, checked exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub target: Polynomial,
    pub generators: Vec<Polynomial>,
    pub cofactors: Vec<Polynomial>,
    pub degree_bound: u32,
}

impl MembershipCertificate {
    pub fn verify(&self) -> bool {
        let mut sum = Polynomial::zero(self.target.vars());
        for (q, g) in self.cofactors.iter().zip(&self.generators) {
            match q.try_mul(g).and_then(|p| sum.try_add(&p)) {
                Ok(s) => sum = s,
                Err(_) => return false,
            }
        }
        self.cofactors.len() == self.generators.len() && sum == self.target
    }
}

/// Looks for cofactors of degree at most `bound`; `None` means none exist at this bound,
/// not that the target lies outside the ideal.
pub fn membership_bounded(target: &Polynomial, ideal: &[Polynomial], bound: u32) -> Result<Option<MembershipCertificate>> {
    let vars = target.vars().to_vec();
    for g in ideal {
        if g.vars() != vars.as_slice() {
            return Err(Error::IncompatibleVariables);
        }
    }
    let mut basis = vec![vec![0u32; vars.len()]];
    basis.extend(exponent_vectors(vars.len(), bound).into_iter().filter(|e| e.iter().any(|&x| x > 0)));
    let unknowns = ideal.len() * basis.len();

    let mut rows: BTreeMap<Exponents, Vec<BigRational>> = BTreeMap::new();
    for (i, g) in ideal.iter().enumerate() {
        for (j, m) in basis.iter().enumerate() {
            for (e, c) in g.terms() {
                let key: Exponents = e.iter().zip(m).map(|(a, b)| a + b).collect();
                let row = rows.entry(key).or_insert_with(|| vec![BigRational::zero(); unknowns]);
                row[i * basis.len() + j] += c;
            }
        }
    }
    for (e, _) in target.terms() {
        rows.entry(e.clone()).or_insert_with(|| vec![BigRational::zero(); unknowns]);
    }
    let rhs: Vec<BigRational> = rows.keys().map(|e| target.coefficient(e)).collect();
    let Some(x) = solve_any(rows.into_values().collect(), rhs, unknowns) else {
        return Ok(None);
    };
    let cofactors = (0..ideal.len())
        .map(|i| Polynomial::from_terms(&vars, basis.iter().enumerate().map(|(j, m)| (m.clone(), x[i * basis.len() + j].clone()))))
        .collect();
    let cert = MembershipCertificate { target: target.clone(), generators: ideal.to_vec(), cofactors, degree_bound: bound };
    if !cert.verify() {
        return Err(Error::Internal("membership certificate does not verify".into()));
    }
    Ok(Some(cert))
}
