use num_traits::Zero;

use crate::linalg::{self, Vector};
use crate::rational::{primitive_integer, Rational};

use super::Point;

/// Exact description of an affine subspace: an origin plus a basis of the
/// parallel linear space in reduced row echelon form.
///
/// Because the basis is reduced, the coordinates of a direction `v` in the
/// span are read off as `v[pivots]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFrame {
    origin: Point,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl AffineFrame {
    pub fn at(origin: Point) -> Self {
        AffineFrame { origin, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(points: &[Point]) -> Self {
        let origin = points[0].clone();
        let dirs: Vec<Vector> = points[1..].iter().map(|p| p.sub(&origin)).collect();
        let (basis, pivots) = if dirs.is_empty() { (Vec::new(), Vec::new()) } else { linalg::rref(&dirs) };
        AffineFrame { origin, basis, pivots }
    }

    /// Same linear part, new origin.
    pub fn moved_to(&self, origin: Point) -> Self {
        AffineFrame { origin, basis: self.basis.clone(), pivots: self.pivots.clone() }
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.origin.dim()
    }

    /// Coordinates of a direction with respect to the reduced basis. Only
    /// meaningful when `v` is parallel to the frame.
    pub fn coords(&self, v: &[Rational]) -> Vector {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn combine(&self, coeffs: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.ambient()];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }

    pub fn contains_direction(&self, v: &[Rational]) -> bool {
        self.combine(&self.coords(v)) == v
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.contains_direction(&p.sub(&self.origin))
    }

    /// Adds the direction towards `p`; returns false when `p` already lies in
    /// the subspace.
    pub fn extend(&mut self, p: &Point) -> bool {
        let v = p.sub(&self.origin);
        if self.contains_direction(&v) {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v);
        let (basis, pivots) = linalg::rref(&rows);
        self.basis = basis;
        self.pivots = pivots;
        true
    }

    /// Equations `<c, x> = e` cutting out the subspace, with primitive integer
    /// normals `c`.
    pub fn equations(&self) -> Vec<(Vector, Rational)> {
        linalg::nullspace(&self.basis, self.ambient())
            .into_iter()
            .map(|c| {
                let c = primitive_integer(&c);
                let e = linalg::dot(&c, self.origin.coords());
                (c, e)
            })
            .collect()
    }

    /// Outward normal, within the frame, of the hyperplane through `face`
    /// (`dim` affinely independent points), oriented so that `inside` lies on
    /// the negative side. Returned normal is primitive integral.
    pub fn hyperplane_normal(&self, face: &[&Point], inside: &Point) -> (Vector, Rational) {
        let base = face[0];
        let rows: Vec<Vector> = face[1..]
            .iter()
            .map(|f| {
                let diff = f.sub(base);
                self.basis.iter().map(|b| linalg::dot(b, &diff)).collect()
            })
            .collect();
        let ns = linalg::nullspace(&rows, self.dim());
        debug_assert_eq!(ns.len(), 1, "face points must be affinely independent");
        let mut a = primitive_integer(&self.combine(&ns[0]));
        if linalg::dot(&a, &inside.sub(base)) > Rational::zero() {
            a = a.iter().map(|x| -x).collect();
        }
        let b = linalg::dot(&a, base.coords());
        (a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_of_segment_in_plane() {
        let f = AffineFrame::spanned_by(&[Point::from_ints(&[1, 1]), Point::from_ints(&[3, 2])]);
        assert_eq!(f.dim(), 1);
        assert!(f.contains(&Point::from_ints(&[5, 3])));
        assert!(!f.contains(&Point::from_ints(&[5, 4])));
        let eqs = f.equations();
        assert_eq!(eqs.len(), 1);
        let (c, e) = &eqs[0];
        assert_eq!(linalg::dot(c, Point::from_ints(&[1, 1]).coords()), *e);
    }
}
