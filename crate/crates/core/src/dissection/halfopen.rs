//! Half-open operators `H_q` (visibility from a point) and `H_u` (visibility
//! from infinity in direction `u`), genericity certificates, and the
//! summand-wise decomposition used for exact Minkowski sums.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};
use crate::lattice::HalfOpenPolytope;
use crate::linalg::{self, Vector};
use crate::random::Sampler;
use crate::rational::Rational;

/// How a dissection's cells are made half-open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfOpenRule {
    Point(Point),
    Direction(Vector),
}

impl HalfOpenRule {
    pub fn apply(&self, p: &Polytope) -> Result<HalfOpenPolytope> {
        match self {
            HalfOpenRule::Point(q) => half_open_by_point(p, q),
            HalfOpenRule::Direction(u) => half_open_by_direction(p, u),
        }
    }
}

/// `H_q P`: removes the facets with `<a_i, q> > b_i`.
pub fn half_open_by_point(p: &Polytope, q: &Point) -> Result<HalfOpenPolytope> {
    if q.dim() != p.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: q.dim() });
    }
    if !p.frame().contains(q) {
        return Err(Error::NotInAffineHull);
    }
    let mut removed = BTreeSet::new();
    for (i, f) in p.facets().iter().enumerate() {
        let s = f.slack(q);
        if s.is_zero() {
            return Err(Error::NonGeneric(format!("point {q} lies on facet hyperplane {i}")));
        }
        if s.is_positive() {
            removed.insert(i);
        }
    }
    HalfOpenPolytope::new(p.clone(), removed)
}

/// `H_u P`: removes the facets with `<a_i, u> > 0`. `u` must be parallel to
/// `aff(P)` and to no facet hyperplane.
pub fn half_open_by_direction(p: &Polytope, u: &[Rational]) -> Result<HalfOpenPolytope> {
    if u.len() != p.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: u.len() });
    }
    if !p.frame().contains_direction(u) {
        return Err(Error::NonGeneric("direction is not parallel to the affine hull".into()));
    }
    let mut removed = BTreeSet::new();
    for (i, f) in p.facets().iter().enumerate() {
        let s = linalg::dot(&f.normal, u);
        if s.is_zero() {
            return Err(Error::NonGeneric(format!("direction is parallel to facet {i}")));
        }
        if s.is_positive() {
            removed.insert(i);
        }
    }
    HalfOpenPolytope::new(p.clone(), removed)
}

/// For a simplex `S` and a generic `q` outside it, a direction `u` with
/// `H_u S = H_q S`.
///
/// The facet normals of a simplex satisfy one positive linear relation
/// `sum l_i a_i = 0`; prescribing `<a_i, u> = 1` on visible facets and a
/// negative constant on the rest, chosen to respect that relation, yields a
/// consistent system.
pub fn direction_for_point(s: &Polytope, q: &Point) -> Result<Vector> {
    if !s.is_simplex() || s.dim() == 0 {
        return Err(Error::InvalidArgument("direction_for_point needs a simplex of positive dimension".into()));
    }
    let h = half_open_by_point(s, q)?;
    if h.is_closed() {
        return Err(Error::InvalidArgument("q lies inside the simplex; no direction reproduces a closed simplex".into()));
    }
    let frame = s.frame();
    let normals: Vec<Vector> = s.facets().iter().map(|f| frame.coords(&f.normal)).collect();
    // columns are normals: solve sum l_i a_i = 0
    let k = frame.dim();
    let rows: Vec<Vector> = (0..k).map(|r| normals.iter().map(|a| a[r].clone()).collect()).collect();
    let relation = linalg::nullspace(&rows, normals.len()).pop().expect("simplex normals have one relation");
    let sign = if relation[0].is_negative() { -Rational::one() } else { Rational::one() };
    let relation: Vector = relation.iter().map(|x| x * &sign).collect();
    let visible: Rational = h.removed().iter().map(|&i| relation[i].clone()).sum();
    let hidden: Rational =
        (0..normals.len()).filter(|i| !h.removed().contains(i)).map(|i| relation[i].clone()).sum();
    let neg = -(visible / hidden);
    let targets: Vector = (0..normals.len())
        .map(|i| if h.removed().contains(&i) { Rational::one() } else { neg.clone() })
        .collect();
    // <a_i, u> with u = sum c_j basis_j and a_i in the span: Gram system
    let basis = frame.basis();
    let system: Vec<Vector> = s
        .facets()
        .iter()
        .map(|f| basis.iter().map(|b| linalg::dot(&f.normal, b)).collect())
        .collect();
    let c = linalg::solve(&system, &targets).ok_or_else(|| Error::Certificate("inconsistent direction system".into()))?;
    Ok(frame.combine(&c))
}

/// Unique decomposition `x = x_1 + ... + x_r` with `x_j ∈ aff(S_j)` for an
/// exact sum; `None` when `x` is not in the affine hull of the sum.
pub fn decompose(x: &Point, summands: &[Polytope]) -> Option<Vec<Point>> {
    let d = x.dim();
    let mut rhs = x.coords().to_vec();
    for s in summands {
        rhs = linalg::sub(&rhs, s.frame().origin().coords());
    }
    let cols: Vec<&Vector> = summands.iter().flat_map(|s| s.frame().basis()).collect();
    let coeffs = if cols.is_empty() {
        if linalg::is_zero(&rhs) {
            Vec::new()
        } else {
            return None;
        }
    } else {
        let a: Vec<Vector> = (0..d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        linalg::solve(&a, &rhs)?
    };
    let mut out = Vec::with_capacity(summands.len());
    let mut offset = 0;
    for s in summands {
        let k = s.dim();
        let dir = s.frame().combine(&coeffs[offset..offset + k]);
        out.push(Point(linalg::add(s.frame().origin().coords(), &dir)));
        offset += k;
    }
    Some(out)
}

fn on_some_hyperplane(q: &Point, cells: &[&Polytope]) -> bool {
    cells.iter().any(|c| c.facets().iter().any(|f| f.slack(q).is_zero()))
}

/// A point of `relint(target)` off every facet hyperplane of `cells`, drawn
/// from a seeded sequence of perturbations of the centroid with growing
/// denominators.
pub fn generic_interior_point(target: &Polytope, cells: &[&Polytope], seed: u64) -> Result<Point> {
    let c = target.centroid();
    if target.dim() == 0 {
        return Ok(c);
    }
    let mut sampler = Sampler::new(seed);
    let basis = target.frame().basis().to_vec();
    for attempt in 0..10_000u64 {
        let denom = Rational::from_integer((1009 * (attempt / 16 + 1)).into());
        let mut q = c.clone();
        for b in &basis {
            let t = Rational::from_integer((sampler.below(2001) as i64 - 1000).into()) / &denom / Rational::from_integer(997.into());
            q = Point(linalg::add(q.coords(), &linalg::scale(b, &t)));
        }
        if target.relint_contains(&q) && !on_some_hyperplane(&q, cells) {
            return Ok(q);
        }
    }
    Err(Error::NonGeneric("no generic interior point found".into()))
}

/// An integer direction parallel to `aff(target)` and to no facet
/// hyperplane of `cells`, drawn from a seeded sequence with growing entries.
pub fn generic_direction(target: &Polytope, cells: &[&Polytope], seed: u64) -> Result<Vector> {
    let mut sampler = Sampler::new(seed);
    let frame = target.frame();
    let k = frame.dim();
    if k == 0 {
        return Err(Error::NonGeneric("a point has no nonzero parallel direction".into()));
    }
    for attempt in 0..10_000usize {
        let range = 3 + attempt / 8;
        let coeffs: Vector =
            (0..k).map(|_| Rational::from_integer((sampler.below(2 * range + 1) as i64 - range as i64).into())).collect();
        let u = crate::rational::primitive_integer(&frame.combine(&coeffs));
        if linalg::is_zero(&u) {
            continue;
        }
        let ok = cells
            .iter()
            .all(|c| c.facets().iter().all(|f| !linalg::dot(&f.normal, &u).is_zero()))
            && target.facets().iter().all(|f| !linalg::dot(&f.normal, &u).is_zero());
        if ok {
            return Ok(u);
        }
    }
    Err(Error::NonGeneric("no generic direction found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn square() -> Polytope {
        Polytope::from_ints(&[[0, 0], [1, 0], [0, 1], [1, 1]])
    }

    #[test]
    fn by_point() {
        let h = half_open_by_point(&square(), &Point::from_ints(&[2, 2])).unwrap();
        assert_eq!(h.removed().len(), 2);
        assert_eq!(h.count(), 1);
        let inside = Point::new(vec![frac(1, 3), frac(1, 4)]);
        assert!(half_open_by_point(&square(), &inside).unwrap().is_closed());
        assert!(matches!(
            half_open_by_point(&square(), &Point::from_ints(&[1, 3])),
            Err(Error::NonGeneric(_))
        ));
        let seg = Polytope::from_ints(&[[0, 0], [1, 0]]);
        assert!(matches!(half_open_by_point(&seg, &Point::from_ints(&[2, 1])), Err(Error::NotInAffineHull)));
        let seg1 = Polytope::from_ints(&[[0], [1]]);
        let h = half_open_by_point(&seg1, &Point::from_ints(&[2])).unwrap();
        assert_eq!(h.points(), vec![Point::from_ints(&[0])]);
    }

    #[test]
    fn by_direction() {
        let h = half_open_by_direction(&square(), &[int(1), int(1)]).unwrap();
        assert_eq!(h.points(), vec![Point::from_ints(&[0, 0])]);
        let h = half_open_by_direction(&square(), &[int(-1), int(-1)]).unwrap();
        assert_eq!(h.points(), vec![Point::from_ints(&[1, 1])]);
        assert!(half_open_by_direction(&square(), &[int(1), int(0)]).is_err());
        let seg = Polytope::from_ints(&[[0, 0], [1, 0]]);
        assert!(half_open_by_direction(&seg, &[int(1), int(1)]).is_err());
    }

    #[test]
    fn direction_translation_compatible() {
        let tri = Polytope::from_ints(&[[0, 0], [2, 0], [0, 1]]);
        let u = [int(1), int(3)];
        let t = Point::from_ints(&[3, -2]);
        let a = half_open_by_direction(&tri, &u).unwrap();
        let b = half_open_by_direction(&tri.translate(&t), &u).unwrap();
        let shifted: Vec<Point> = a.points().iter().map(|p| p.add(&t)).collect();
        assert_eq!(shifted, b.points());
    }

    #[test]
    fn simplex_point_to_direction() {
        let tri = Polytope::from_ints(&[[0, 0], [1, 0], [0, 1]]);
        for q in [[2, 2], [-1, 5], [3, -1], [-1, -1]] {
            let q = Point::new(vec![int(q[0]) + frac(1, 7), int(q[1]) + frac(1, 5)]);
            let by_q = half_open_by_point(&tri, &q).unwrap();
            let u = direction_for_point(&tri, &q).unwrap();
            let by_u = half_open_by_direction(&tri, &u).unwrap();
            assert_eq!(by_q.removed(), by_u.removed());
        }
    }

    #[test]
    fn decomposition() {
        let a = Polytope::from_ints(&[[0, 0], [1, 0]]);
        let b = Polytope::from_ints(&[[0, 1], [1, 2]]);
        let parts = decompose(&Point::from_ints(&[3, 2]), &[a.clone(), b.clone()]).unwrap();
        assert_eq!(parts, vec![Point::from_ints(&[2, 0]), Point::from_ints(&[1, 2])]);
        let c = Polytope::from_ints(&[[0, 0], [2, 0]]);
        assert!(decompose(&Point::from_ints(&[3, 1]), &[a, c]).is_none());
    }

    #[test]
    fn generic_choices() {
        let sq = square();
        let cells = [&sq];
        let q = generic_interior_point(&sq, &cells, 1).unwrap();
        assert!(sq.relint_contains(&q));
        let u = generic_direction(&sq, &cells, 1).unwrap();
        assert!(half_open_by_direction(&sq, &u).is_ok());
    }
}
