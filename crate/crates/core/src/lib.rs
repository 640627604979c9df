//! Topology-to-equations toolkit for normal surface singularities whose link is a
//! rational homology sphere.
//!
//! The input is a resolution dual graph (a weighted tree of rational curves, or more
//! generally a weighted graph with genus decorations). From it the crate computes:
//!
//! - graph invariants such as canonical and fundamental cycles, the rational or
//!   minimally elliptic verdict, and (-1)-curve blow-downs ([`graph`]);
//! - the discriminant group with its diagonal character action on the end-curve
//!   variables ([`discriminant`]);
//! - the splice diagram and the semigroup condition with monomial witnesses
//!   ([`splice`]);
//! - the congruence condition and splice-type complete intersection equations
//!   ([`equations`]) over an exact sparse polynomial type ([`poly`]);
//! - invariant monomials of the quotient with their binomial relations, plus bounded
//!   ideal-membership certificates ([`invariants`]).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals throughout.
//!
//! ```
//! use sforge::graph::ResolutionGraph;
//!
//! let e7: ResolutionGraph = "
//!     vertex x weight=-2
//!     vertex c weight=-2
//!     vertex y1 weight=-2
//!     vertex y weight=-2
//!     vertex z2 weight=-2
//!     vertex z1 weight=-2
//!     vertex z weight=-2
//!     edge c x
//!     edge c y1
//!     edge y1 y
//!     edge c z2
//!     edge z2 z1
//!     edge z1 z
//! ".parse().unwrap();
//! let disc = sforge::discriminant::discriminant_group(&e7).unwrap();
//! assert_eq!(disc.order, 2.into());
//! ```

pub mod corpus;
pub mod discriminant;
pub mod equations;
mod error;
pub mod exact;
pub mod graph;
pub mod invariants;
pub mod poly;
pub mod report;
pub mod splice;

pub use error::{Error, Result};
