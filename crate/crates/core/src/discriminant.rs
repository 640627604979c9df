//! The discriminant group `coker(E -> E*)` of a resolution tree and its diagonal
//! action on the end-curve variables.
//!
//! Classes of `E*` are written as rational vectors in the `E` basis. The dual basis
//! element `e_i` is row `i` of the inverse intersection matrix, and a class `[e]`
//! multiplies the variable of end curve `w` by `exp(2 pi i (e . e_w))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{frac, invert_rational, smith_normal_form, RatMatrix};
use crate::graph::ResolutionGraph;
use crate::{Error, Result};

/// Groups up to this order are enumerated element by element.
pub const ENUMERATION_CAP: u64 = 2000;

/// A character of the discriminant group: one phase in `[0, 1)` per generator.
pub type Character = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantData {
    /// `|det|` of the intersection matrix.
    pub order: BigInt,
    /// Nontrivial invariant factors `d_1 | d_2 | ...`; also the generator orders.
    pub invariant_factors: Vec<BigInt>,
    /// One representative per generator, as a rational vector in the `E` basis.
    pub generators: Vec<Vec<BigRational>>,
    /// Inverse intersection matrix; row `i` is `e_i`.
    pub dual_basis: RatMatrix,
    /// `g_i . g_j` mod 1 between generators.
    pub pairing: Vec<Vec<BigRational>>,
}

/// Phases of each generator on each end-curve variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterAssignment {
    /// End-curve ids in declaration order.
    pub leaves: Vec<String>,
    /// Their vertex indices in the resolution graph.
    pub leaf_vertices: Vec<usize>,
    pub generator_orders: Vec<u64>,
    /// `phases[w][j]`: generator `j` acts on `z_w` by `exp(2 pi i phases[w][j])`.
    pub phases: Vec<Vec<BigRational>>,
}

fn dot(m: &crate::exact::IntMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let n = x.len();
    let mut acc = BigRational::zero();
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if !m[(i, j)].is_zero() {
                acc += &x[i] * &y[j] * BigRational::from_integer(m[(i, j)].clone());
            }
        }
    }
    acc
}

/// Discriminant group data read off the Smith normal form.
pub fn discriminant_group(g: &ResolutionGraph) -> Result<DiscriminantData> {
    g.require_qhs_tree()?;
    let m = g.intersection_matrix();
    let dual_basis = invert_rational(&m)?;
    let snf = smith_normal_form(&m);
    let order = g.determinant().abs();

    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in snf.invariant_factors().into_iter().enumerate() {
        if d.is_one() {
            continue;
        }
        // M V = U^-1 D, so column i of V divided by d_i pairs integrally with every E_j
        let gen: Vec<BigRational> =
            snf.v.column(i).into_iter().map(|x| BigRational::new(x, d.clone())).collect();
        invariant_factors.push(d);
        generators.push(gen);
    }
    let product: BigInt = invariant_factors.iter().product();
    if product != order {
        return Err(Error::Internal(format!("invariant factors multiply to {product}, not {order}")));
    }
    let pairing = generators
        .iter()
        .map(|x| generators.iter().map(|y| frac(&dot(&m, x, y))).collect())
        .collect();
    Ok(DiscriminantData { order, invariant_factors, generators, dual_basis, pairing })
}

/// End curves: vertices meeting at most one other curve.
fn end_curves(g: &ResolutionGraph) -> Vec<usize> {
    (0..g.len()).filter(|&i| g.valency(i) <= 1).collect()
}

impl DiscriminantData {
    /// Phase of the class `x` on the variable of end curve `w`: `x . e_w`, which in the
    /// `E` basis is just coordinate `w`.
    fn phase_on(x: &[BigRational], w: usize) -> BigRational {
        frac(&x[w])
    }

    pub fn characters(&self, g: &ResolutionGraph) -> Result<CharacterAssignment> {
        let leaf_vertices = end_curves(g);
        let generator_orders = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().ok_or_else(|| Error::Overflow(format!("generator order {d}"))))
            .collect::<Result<Vec<_>>>()?;
        let phases = leaf_vertices
            .iter()
            .map(|&w| self.generators.iter().map(|x| Self::phase_on(x, w)).collect())
            .collect();
        Ok(CharacterAssignment {
            leaves: leaf_vertices.iter().map(|&w| g.vertex(w).id.clone()).collect(),
            leaf_vertices,
            generator_orders,
            phases,
        })
    }
}

/// The diagonal representation on the end-curve variables; faithfulness is checked by
/// enumeration when the group is small enough.
pub fn leaf_characters(g: &ResolutionGraph) -> Result<CharacterAssignment> {
    let data = discriminant_group(g)?;
    let chars = data.characters(g)?;
    if chars.order() <= ENUMERATION_CAP && !chars.is_faithful()? {
        return Err(Error::Internal("end-curve representation is not faithful".into()));
    }
    Ok(chars)
}

/// Order of `[e_i]` in the discriminant group: the lcm of the denominators of `e_i`.
pub fn dual_class_order(g: &ResolutionGraph, i: usize) -> Result<BigInt> {
    g.require_qhs_tree()?;
    if i >= g.len() {
        return Err(Error::InvalidArgument(format!("no vertex {i}")));
    }
    let inv = invert_rational(&g.intersection_matrix())?;
    Ok(inv.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
}

impl CharacterAssignment {
    pub fn order(&self) -> u64 {
        self.generator_orders.iter().product()
    }

    pub fn variables(&self) -> usize {
        self.leaves.len()
    }

    pub fn trivial(&self) -> Character {
        vec![BigRational::zero(); self.generator_orders.len()]
    }

    /// Character of the monomial with the given exponents over the leaf variables.
    pub fn character_of(&self, exponents: &[u32]) -> Character {
        let mut out = self.trivial();
        for (w, &a) in exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, phase) in self.phases[w].iter().enumerate() {
                out[j] += phase * BigRational::from_integer(a.into());
            }
        }
        out.iter().map(frac).collect()
    }

    pub fn is_invariant(&self, exponents: &[u32]) -> bool {
        self.character_of(exponents).iter().all(Zero::is_zero)
    }

    /// Phases of the group element `sum k_j g_j` on each variable.
    pub fn element_phases(&self, element: &[u64]) -> Vec<BigRational> {
        self.phases
            .iter()
            .map(|row| {
                frac(&row.iter().zip(element).fold(BigRational::zero(), |acc, (p, &k)| {
                    acc + p * BigRational::from_integer(k.into())
                }))
            })
            .collect()
    }

    /// Every group element as a coefficient vector over the generators.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        let order = self.order();
        if order > ENUMERATION_CAP {
            return Err(Error::OrderTooLarge { order: order.to_string(), cap: ENUMERATION_CAP });
        }
        let mut out = vec![Vec::new()];
        for &d in &self.generator_orders {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (0..d).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Only the identity acts trivially on every variable.
    pub fn is_faithful(&self) -> Result<bool> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|el| el.iter().any(|&k| k != 0))
            .all(|el| self.element_phases(&el).iter().any(|p| !p.is_zero())))
    }
}
