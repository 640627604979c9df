use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::ResolutionGraph;
use crate::exact::solve_rational;
use crate::{Error, Result};

/// Integral exceptional cycle `sum n_i E_i`, indexed by vertex declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Cycle {
    pub coefficients: Vec<i64>,
}

/// Rational exceptional cycle; the canonical cycle lives here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCycle {
    pub coefficients: Vec<BigRational>,
}

impl Cycle {
    /// `self . E_i` for every vertex.
    pub fn products(&self, g: &ResolutionGraph) -> Vec<i64> {
        let mut out: Vec<i64> = g
            .vertices()
            .iter()
            .zip(&self.coefficients)
            .map(|(v, &c)| v.weight * c)
            .collect();
        for &(a, b) in g.edges() {
            out[a] += self.coefficients[b];
            out[b] += self.coefficients[a];
        }
        out
    }

    pub fn self_intersection(&self, g: &ResolutionGraph) -> i64 {
        self.products(g).iter().zip(&self.coefficients).map(|(p, c)| p * c).sum()
    }
}

impl RationalCycle {
    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(BigRational::is_integer)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(crate::exact::rational_string).collect()
    }
}

/// `K . E_i = 2 g_i - 2 - E_i . E_i`, the right-hand side of the adjunction system.
fn adjunction_rhs(g: &ResolutionGraph) -> Vec<i64> {
    g.vertices().iter().map(|v| 2 * v.genus as i64 - 2 - v.weight).collect()
}

/// Solves the adjunction equations for the canonical cycle.
pub fn canonical_cycle(g: &ResolutionGraph) -> Result<RationalCycle> {
    g.require_negative_definite()?;
    let rhs: Vec<BigInt> = adjunction_rhs(g).into_iter().map(BigInt::from).collect();
    let coefficients = solve_rational(&g.intersection_matrix(), &rhs)?;
    Ok(RationalCycle { coefficients })
}

pub fn is_numerically_gorenstein(g: &ResolutionGraph) -> Result<bool> {
    Ok(canonical_cycle(g)?.is_integral())
}

/// Laufer's computation sequence from the reduced cycle, always adding the
/// lowest-index vertex with positive product.
pub fn fundamental_cycle(g: &ResolutionGraph) -> Result<Cycle> {
    g.require_negative_definite()?;
    let mut z = Cycle { coefficients: vec![1; g.len()] };
    let mut products = z.products(g);
    while let Some(i) = products.iter().position(|&p| p > 0) {
        z.coefficients[i] += 1;
        products[i] += g.vertex(i).weight;
        for j in g.neighbors(i) {
            products[j] += 1;
        }
    }
    Ok(z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Rational,
    MinimallyElliptic,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: Kind,
    /// `Z_o . Z_o`
    pub zsq: i64,
    /// `Z_o . K`
    pub zk: i64,
    pub multiplicity: Option<u64>,
    pub embedding_dimension: Option<u64>,
    pub numerically_gorenstein: bool,
}

/// Rational iff `Z_o . (Z_o + K) = -2`; minimally elliptic iff `Z_o = -K`.
///
/// The minimally elliptic verdict is only meaningful on a minimal resolution graph.
pub fn classify(g: &ResolutionGraph) -> Result<Classification> {
    let z = fundamental_cycle(g)?;
    let k = canonical_cycle(g)?;
    let zsq = z.self_intersection(g);
    let zk: i64 = z.coefficients.iter().zip(adjunction_rhs(g)).map(|(c, r)| c * r).sum();
    let m = u64::try_from(-zsq).map_err(|_| Error::Internal("Z_o . Z_o is positive".into()))?;

    let minus_k_is_z = z
        .coefficients
        .iter()
        .zip(&k.coefficients)
        .all(|(&c, kc)| (-kc).to_integer().to_i64() == Some(c) && kc.is_integer());

    let (kind, multiplicity, embedding_dimension) = if zsq + zk == -2 {
        (Kind::Rational, Some(m), Some(m + 1))
    } else if minus_k_is_z {
        // m = 1, 2: double points; m = 3: triple point in C^3; m >= 4: H(n) = mn.
        let mult = if m <= 2 { 2 } else { m };
        (Kind::MinimallyElliptic, Some(mult), Some(m.max(3)))
    } else {
        (Kind::Other, None, None)
    };
    Ok(Classification {
        kind,
        zsq,
        zk,
        multiplicity,
        embedding_dimension,
        numerically_gorenstein: k.is_integral(),
    })
}
