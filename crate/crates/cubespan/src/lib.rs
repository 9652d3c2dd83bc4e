//! Exact-arithmetic toolkit for the lattice points of a rational lattice
//! containing the integer lattice, restricted to the half-open unit cube.
//!
//! The crate builds the finite quotient group of such a lattice, enumerates
//! the cube points, analyzes their linear span through coordinate projection
//! classes, constructs pairing involutions, computes h*-vectors of lattice
//! simplices, and numerically verifies the supporting harmonic-analysis
//! facts on finite abelian groups and Dirichlet characters.

pub mod arith;
pub mod chars;
pub mod dirichlet;
pub mod error;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod simplex;
pub mod span;
pub mod verify;

pub use error::{Error, Result};
pub use group::{FiniteAbelianGroup, GroupElement, Subgroup};
pub use lattice::{build_quotient, cube_points, CubePoint, LatticeSpec, QuotientGroup};
pub use rational::Rational;
pub use simplex::{h_star, Simplex};
pub use span::{sebo_check, span_dimension, vanishing_functionals, SpanMethod};
