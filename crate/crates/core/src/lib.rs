//! Two-variable greedoid polynomials of rooted digraphs.
//!
//! The crate computes `f(D; t, z)` for the directed branching greedoid of a
//! rooted digraph, factorises the results over the integers, and runs an
//! exhaustive census of all rooted digraphs up to a given order.
//!
//! Module map:
//! - [`bipoly`]: exact bivariate polynomials in `t` and `z`.
//! - [`digraph`]: rooted digraphs, rank, minors, separability, canonical forms.
//! - [`greedoid`]: the polynomial by subset expansion and by deletion–contraction.
//! - [`factor`]: factorisation over the integers and GM-factor classification.
//! - [`enumerate`]: unlabelled digraphs and rooted isomorphism classes.
//! - [`families`]: constructors for the infinite GM-factorising families.
//! - [`census`]: the database, summary counts, persistence and tables.

pub mod bipoly;
pub mod census;
pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod families;
pub mod greedoid;

pub use bipoly::{BiPoly, UniPoly};
pub use digraph::{EdgeSubset, RootedDigraph};
pub use error::{Error, Result};
pub use factor::{FactorClass, Factorisation};
