use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{self, Vector};
use crate::rational::Rational;

use super::{AffineFrame, Point};

/// A triangulation of the convex hull of `points`, as index sets of
/// affinely independent points spanning the hull's affine frame.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub points: Vec<Point>,
    pub simplices: Vec<Vec<usize>>,
    pub frame: AffineFrame,
}

impl Triangulation {
    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Codimension-one faces lying in exactly one simplex, each paired with
    /// the opposite vertex of that simplex.
    pub fn boundary_faces(&self) -> Vec<(Vec<usize>, usize)> {
        if self.dim() == 0 {
            return Vec::new();
        }
        let mut seen: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
        for s in &self.simplices {
            for (skip, &opp) in s.iter().enumerate() {
                let face: Vec<usize> =
                    s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                seen.entry(face).and_modify(|e| e.0 += 1).or_insert((1, opp));
            }
        }
        seen.into_iter()
            .filter(|(_, (count, _))| *count == 1)
            .map(|(face, (_, opp))| (face, opp))
            .collect()
    }

    pub fn simplex_points(&self, s: &[usize]) -> Vec<Point> {
        s.iter().map(|&i| self.points[i].clone()).collect()
    }
}

type Boundary = BTreeMap<Vec<usize>, (usize, (Vector, Rational))>;

fn facet_plane(frame: &AffineFrame, points: &[Point], face: &[usize], opp: usize) -> (Vector, Rational) {
    let fp: Vec<&Point> = face.iter().map(|&i| &points[i]).collect();
    frame.hyperplane_normal(&fp, &points[opp])
}

/// Placing triangulation: points are inserted in the given order; a point
/// outside the current affine hull is coned over every simplex, a point
/// beyond some boundary faces is coned over exactly those faces, and a point
/// in the current hull is skipped.
pub fn place_points(points: &[Point]) -> Triangulation {
    assert!(!points.is_empty(), "placing needs at least one point");
    let mut frame = AffineFrame::at(points[0].clone());
    let mut tri = Triangulation { points: points.to_vec(), simplices: vec![vec![0]], frame: frame.clone() };
    let mut boundary: Option<Boundary> = None;
    for (idx, p) in points.iter().enumerate().skip(1) {
        if frame.extend(p) {
            for s in tri.simplices.iter_mut() {
                s.push(idx);
            }
            tri.frame = frame.clone();
            boundary = None;
            continue;
        }
        if frame.dim() == 0 {
            continue;
        }
        let faces = boundary.get_or_insert_with(|| {
            tri.boundary_faces()
                .into_iter()
                .map(|(face, opp)| {
                    let hp = facet_plane(&frame, points, &face, opp);
                    (face, (opp, hp))
                })
                .collect()
        });
        let visible: Vec<Vec<usize>> = faces
            .iter()
            .filter(|(_, (_, (a, b)))| linalg::dot(a, p.coords()) - b > Zero::zero())
            .map(|(f, _)| f.clone())
            .collect();
        let mut ridges: BTreeMap<Vec<usize>, (u32, usize)> = BTreeMap::new();
        for face in &visible {
            faces.remove(face);
            let mut s = face.clone();
            s.push(idx);
            s.sort_unstable();
            tri.simplices.push(s);
            for (skip, &opp) in face.iter().enumerate() {
                let mut r: Vec<usize> = face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                r.push(idx);
                r.sort_unstable();
                ridges.entry(r).and_modify(|e| e.0 += 1).or_insert((1, opp));
            }
        }
        for (r, (count, opp)) in ridges {
            if count == 1 {
                let hp = facet_plane(&frame, points, &r, opp);
                faces.insert(r, (opp, hp));
            }
        }
    }
    for s in tri.simplices.iter_mut() {
        s.sort_unstable();
    }
    tri
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_gives_two_triangles() {
        let pts: Vec<Point> =
            [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|c| Point::from_ints(c)).collect();
        let t = place_points(&pts);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.simplices.len(), 2);
        assert_eq!(t.boundary_faces().len(), 4);
    }

    #[test]
    fn interior_and_duplicate_points_skipped() {
        let pts: Vec<Point> = [[0, 0], [0, 0], [4, 0], [0, 4], [1, 1]]
            .iter()
            .map(|c| Point::from_ints(c))
            .collect();
        let t = place_points(&pts);
        assert_eq!(t.simplices, vec![vec![0, 2, 3]]);
    }

    #[test]
    fn collinear_points() {
        let pts: Vec<Point> = [[0, 0], [1, 0], [2, 0]].iter().map(|c| Point::from_ints(c)).collect();
        let t = place_points(&pts);
        assert_eq!(t.dim(), 1);
        assert_eq!(t.simplices.len(), 2);
    }
}
