//! Length generating series of pattern-avoiding affine permutations.
//!
//! The affine symmetric group is cut into cells indexed by a bias and a
//! finite flattening. Inside a cell an element is a lattice point `t` of a
//! simplicial cone, and for each way of threading a pattern through the
//! strands the elements containing it form the integer projection of an
//! explicit polyhedron. Counting those points by length and fitting the
//! counts against a denominator read off the polyhedra gives exact
//! rational generating functions.

pub mod abacus;
pub mod acceptance;
pub mod affine;
pub mod enumeration;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod polyhedra;
pub mod series;

pub use affine::{normalize_pattern, AffinePermutation, Pattern, PatternInstance, DEFAULT_PATTERN_GUARD};
pub use error::{Error, Result};
