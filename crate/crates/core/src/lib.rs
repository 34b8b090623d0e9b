//! Tropical decorations and crystal bases for type `D_n`.
//!
//! Points of `Z^N`, `N = n(n-1)`, are indexed by `x_i^(j)` with
//! `1 <= i <= n`, `1 <= j <= n-1`, laid out along the reduced word
//! `(1 2 ... n)^(n-1)`. Two inequality systems cut out the crystal
//! `B(lambda)`: the tropicalized generalized minors ([`minors`]) and the
//! pattern forms ([`patterns`]); [`crystal`] builds the graph and
//! [`oracle`] checks everything against the Weyl dimension formula.

pub mod crystal;
pub mod error;
pub mod lattice;
pub mod minors;
pub mod oracle;
pub mod patterns;
pub mod tropical;

pub use crystal::{Crystal, CrystalGraph, GraphEdge, GraphNode};
pub use error::{Error, Result};
pub use lattice::{DominantWeight, LatticePoint, Rank};
pub use minors::{membership_decoration, DecorationPieces, Triangle};
pub use oracle::{axiom_violations, check_coincidence, check_spin_forms, weyl_dim, CoincidenceReport, SpinFormCheck};
pub use patterns::{membership_polyhedral, AdmissiblePattern, Label, PolyhedralSystem};
pub use tropical::{AffineForm, LaurentPoly, Monomial, TropicalForm, VarIndex};
