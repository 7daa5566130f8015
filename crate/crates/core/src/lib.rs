//! Exact combinatorial mixed valuations of lattice and rational polytopes.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: exact polytopes (hulls, facets, faces, Minkowski sums, volume);
//! * [`lattice`]: lattice-point enumeration for closed, half-open and relatively
//!   open polytopes;
//! * [`valuation`]: the [`Valuation`](valuation::Valuation) trait, the named
//!   registry of built-ins and the mixed-valuation machinery built on top;
//! * [`dissection`]: half-open operators, dissections into cylinders and
//!   their lattice-count certificates;
//! * [`positivity`]: positivity of discrete mixed volumes via matroid
//!   intersection, plus cylinder lower bounds;
//! * [`verify`]: seeded property suites shared by the CLI and the tests.

pub mod dissection;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod positivity;
pub mod random;
pub mod rational;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{convex_hull, Point, Polytope};
pub use rational::Rational;
