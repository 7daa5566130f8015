use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::rational::{factorial, Rational};

use super::{place_points, AffineFrame, FaceLattice, Point, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeTag {
    #[serde(rename = "Z")]
    Integer,
    #[serde(rename = "Q")]
    Rational,
}

/// Facet inequality `<normal, x> <= offset`, with `normal` a primitive integer
/// vector parallel to the affine hull of its polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vector,
    pub offset: Rational,
}

impl Facet {
    /// `<normal, x> - offset`; negative strictly inside, zero on the facet.
    pub fn slack(&self, x: &Point) -> Rational {
        linalg::dot(&self.normal, x.coords()) - &self.offset
    }
}

/// Nonempty convex polytope in V-representation with derived H-data.
#[derive(Clone)]
pub struct Polytope {
    vertices: Vec<Point>,
    lattice: LatticeTag,
    frame: AffineFrame,
    facets: Vec<Facet>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl std::hash::Hash for Polytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Convex hull of a nonempty point list of common dimension.
pub fn convex_hull(points: &[Point]) -> Result<Polytope> {
    Polytope::hull(points)
}

impl Polytope {
    pub fn hull(points: &[Point]) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("convex hull of no points"))?;
        let d = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();
        let tri = place_points(&pts);
        Ok(Self::from_triangulation(&tri))
    }

    pub fn point(p: Point) -> Self {
        let lattice = if p.is_integral() { LatticeTag::Integer } else { LatticeTag::Rational };
        Polytope { frame: AffineFrame::at(p.clone()), vertices: vec![p], lattice, facets: Vec::new() }
    }

    pub fn origin(dim: usize) -> Self {
        Self::point(Point::origin(dim))
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints<const D: usize>(pts: &[[i64; D]]) -> Self {
        let pts: Vec<Point> = pts.iter().map(|c| Point::from_ints(c)).collect();
        Self::hull(&pts).expect("nonempty point list of common dimension")
    }

    pub(crate) fn from_triangulation(tri: &Triangulation) -> Self {
        let frame = tri.frame.clone();
        let mut facets: Vec<Facet> = tri
            .boundary_faces()
            .into_iter()
            .map(|(face, opp)| {
                let fp: Vec<&Point> = face.iter().map(|&i| &tri.points[i]).collect();
                let (normal, offset) = frame.hyperplane_normal(&fp, &tri.points[opp]);
                Facet { normal, offset }
            })
            .collect();
        facets.sort();
        facets.dedup();
        let used: BTreeSet<usize> = tri.simplices.iter().flatten().copied().collect();
        let k = frame.dim();
        let vertices: Vec<Point> = used
            .into_iter()
            .map(|i| &tri.points[i])
            .filter(|p| {
                if k == 0 {
                    return true;
                }
                let tight: Vec<Vector> =
                    facets.iter().filter(|f| f.slack(p).is_zero()).map(|f| f.normal.clone()).collect();
                linalg::rank(&tight) == k
            })
            .cloned()
            .collect();
        let lattice = if vertices.iter().all(Point::is_integral) {
            LatticeTag::Integer
        } else {
            LatticeTag::Rational
        };
        Polytope { vertices, lattice, frame, facets }
    }

    /// Assembles a polytope from data already known to be consistent: sorted
    /// vertices, a frame of their affine hull and sorted facets.
    pub(crate) fn from_parts(vertices: Vec<Point>, frame: AffineFrame, facets: Vec<Facet>) -> Self {
        let lattice = if vertices.iter().all(Point::is_integral) { LatticeTag::Integer } else { LatticeTag::Rational };
        Polytope { vertices, lattice, frame, facets }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn lattice(&self) -> LatticeTag {
        self.lattice
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice == LatticeTag::Integer
    }

    pub fn frame(&self) -> &AffineFrame {
        &self.frame
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim() + 1
    }

    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::of(self)
    }

    pub fn triangulate(&self) -> Triangulation {
        place_points(&self.vertices)
    }

    pub fn centroid(&self) -> Point {
        let n = Rational::from_integer(self.vertices.len().into());
        let mut acc = Point::origin(self.ambient_dim());
        for v in &self.vertices {
            acc = acc.add(v);
        }
        acc.scale(&(Rational::one() / n))
    }

    /// Membership: in the affine hull and on the inner side of every facet.
    pub fn contains_point(&self, p: &Point) -> bool {
        p.dim() == self.ambient_dim()
            && self.frame.contains(p)
            && self.facets.iter().all(|f| !f.slack(p).is_positive())
    }

    /// Strictly inside every facet and in the affine hull.
    pub fn relint_contains(&self, p: &Point) -> bool {
        p.dim() == self.ambient_dim()
            && self.frame.contains(p)
            && self.facets.iter().all(|f| f.slack(p).is_negative())
    }

    pub fn contains(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains_point(v))
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: other.ambient_dim() });
        }
        if other.vertices.len() == 1 {
            return Ok(self.translate(&other.vertices[0]));
        }
        if self.vertices.len() == 1 {
            return Ok(other.translate(&self.vertices[0]));
        }
        let sums: Vec<Point> =
            self.vertices.iter().flat_map(|a| other.vertices.iter().map(move |b| a.add(b))).collect();
        Polytope::hull(&sums)
    }

    /// Sum of a list of polytopes; the empty sum is `{0}` in dimension `ambient`.
    pub fn sum_all<'a>(ambient: usize, polys: impl IntoIterator<Item = &'a Polytope>) -> Result<Polytope> {
        polys.into_iter().try_fold(Polytope::origin(ambient), |acc, p| acc.minkowski_sum(p))
    }

    pub fn translate(&self, t: &Point) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v.add(t)).collect::<Vec<_>>();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: &f.offset + linalg::dot(&f.normal, t.coords()) })
            .collect();
        let frame = self.frame.moved_to(self.frame.origin().add(t));
        let lattice = if vertices.iter().all(Point::is_integral) { LatticeTag::Integer } else { LatticeTag::Rational };
        Polytope { vertices, lattice, frame, facets }
    }

    /// The dilate `nP`; `0P = {0}`.
    pub fn dilate(&self, n: u64) -> Polytope {
        if n == 0 {
            return Polytope::origin(self.ambient_dim());
        }
        self.scale(&Rational::from_integer(n.into()))
    }

    /// Scaling by a positive rational.
    pub fn scale(&self, s: &Rational) -> Polytope {
        assert!(s.is_positive(), "scale factor must be positive");
        let vertices: Vec<Point> = self.vertices.iter().map(|v| v.scale(s)).collect();
        let facets = self.facets.iter().map(|f| Facet { normal: f.normal.clone(), offset: &f.offset * s }).collect();
        let frame = self.frame.moved_to(self.frame.origin().scale(s));
        let lattice = if vertices.iter().all(Point::is_integral) { LatticeTag::Integer } else { LatticeTag::Rational };
        Polytope { vertices, lattice, frame, facets }
    }

    /// Euclidean volume in the ambient space; zero unless full-dimensional.
    pub fn volume(&self) -> Rational {
        let d = self.ambient_dim();
        if self.dim() < d {
            return Rational::zero();
        }
        let tri = self.triangulate();
        let total = tri.simplices.iter().fold(Rational::zero(), |acc, s| {
            let base = &tri.points[s[0]];
            let m: Vec<Vector> = s[1..].iter().map(|&i| tri.points[i].sub(base)).collect();
            acc + linalg::determinant(&m).abs()
        });
        total / factorial(d as u32)
    }

    /// Intersection with the closed halfspace `<a, x> <= c`, or `None` when
    /// empty.
    pub fn clip(&self, a: &[Rational], c: &Rational) -> Option<Polytope> {
        let val = |p: &Point| linalg::dot(a, p.coords()) - c;
        let mut pts: Vec<Point> = self.vertices.iter().filter(|v| !val(v).is_positive()).cloned().collect();
        for edge in self.face_lattice().faces_of_dim(1) {
            let (u, v) = (&edge.vertices[0], &edge.vertices[1]);
            let (fu, fv) = (val(u), val(v));
            if (fu.is_negative() && fv.is_positive()) || (fu.is_positive() && fv.is_negative()) {
                let t = &fu / (&fu - &fv);
                pts.push(u.add(&Point(linalg::scale(&v.sub(u), &t))));
            }
        }
        if pts.is_empty() {
            None
        } else {
            Some(Polytope::hull(&pts).expect("clipped points share the ambient dimension"))
        }
    }
}
