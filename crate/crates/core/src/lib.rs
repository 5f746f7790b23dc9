//! Characteristic polynomials of the left weak order on classical and
//! affine Coxeter groups.
//!
//! The crate has two halves that check each other:
//!
//! - a brute-force oracle: concrete (signed) permutation models of A/B/D
//!   groups ([`model`]), the explicit weak-order poset built by BFS with its
//!   Möbius machinery ([`poset`]);
//! - closed formulas: subset alternating sums, interval decomposition,
//!   descent-class and alternating-permutation product forms, the four
//!   affine recurrences ([`charpoly`]), and exact generating-function
//!   extraction ([`series`]).
//!
//! [`verify`] packages the agreement checks between the two halves.

pub mod charpoly;
pub mod error;
pub mod graph;
pub mod model;
pub mod poly;
pub mod poset;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Component, ComponentKind, CoxeterGraph, Family, GenSet};
pub use model::{longest_element_of_parabolic, GroupElement, Model};
pub use poly::IntPolynomial;
pub use poset::{MobiusTable, RankedPoset, WeakOrderPoset, DEFAULT_ELEMENT_CAP};
pub use series::{BivariatePoly, TruncatedSeries};
