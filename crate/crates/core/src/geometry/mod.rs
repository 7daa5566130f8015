//! Exact polytope primitives over the rationals.
//!
//! Polytopes are stored by their extreme points together with an exact affine
//! frame of their affine hull and the facet inequalities inside that hull.
//! Lower-dimensional polytopes are handled uniformly: every facet normal lies
//! in the linear space parallel to `aff(P)`.

mod faces;
mod frame;
mod placing;
mod polytope;
mod sums;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, Rational};

pub use faces::{Face, FaceLattice};
pub use frame::AffineFrame;
pub use placing::{place_points, Triangulation};
pub use polytope::{convex_hull, Facet, LatticeTag, Polytope};
pub use sums::DilatedSums;

/// A point of `Q^d`, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(#[serde(with = "crate::rational::serde_vec")] pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut p = Self::origin(dim);
        p.0[i] = Rational::one();
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(crate::linalg::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Point) -> Vec<Rational> {
        crate::linalg::sub(&self.0, &other.0)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point(crate::linalg::scale(&self.0, s))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}
