//! Positivity of combinatorial mixed valuations through linearly
//! independent segments, and lower bounds from cylinders.
//!
//! For a combinatorially positive valuation with `phi({0}) > 0`, the mixed
//! value of `P_1, ..., P_r` is positive exactly when there are lattice
//! segments `S_i ⊆ P_i` with linearly independent directions. Edges suffice,
//! so the question is a matroid intersection of the linear matroid on edge
//! directions with the partition matroid by owner.

mod cylinder;
mod matroid;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};
use crate::linalg::Vector;
use crate::rational::primitive_integer;
use crate::valuation::{check_lattice, Valuation};

pub use cylinder::{cylinder_lower_bound, CylinderWitness};
pub use matroid::{matroid_intersection, max_common_independent, LinearMatroid, Matroid, PartitionMatroid};

/// A lattice segment inside `P_owner` with its primitive direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub owner: usize,
    pub endpoints: (Point, Point),
    #[serde(with = "crate::rational::serde_vec")]
    pub direction: Vector,
}

/// One segment per edge of every `P_i`.
pub fn candidate_segments(polys: &[Polytope]) -> Vec<Segment> {
    let mut out = Vec::new();
    for (owner, p) in polys.iter().enumerate() {
        let edges: Vec<Vec<Point>> = match p.dim() {
            0 => Vec::new(),
            1 => vec![p.vertices().to_vec()],
            _ => p.face_lattice().faces_of_dim(1).map(|f| f.vertices.clone()).collect(),
        };
        for e in edges {
            let (a, b) = (e[0].clone(), e[1].clone());
            let direction = primitive_integer(&b.sub(&a));
            out.push(Segment { owner, endpoints: (a, b), direction });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct PositivityDecision {
    pub positive: bool,
    /// One segment per polytope with independent directions, when positive.
    pub witness: Option<Vec<Segment>>,
}

/// Independent segments `S_i ⊆ P_i`, one per polytope, if they exist.
pub fn independent_segments(polys: &[Polytope]) -> Option<Vec<Segment>> {
    let r = polys.len();
    if r == 0 {
        return Some(Vec::new());
    }
    if r > polys[0].ambient_dim() {
        return None;
    }
    let segs = candidate_segments(polys);
    let m1 = LinearMatroid { vectors: segs.iter().map(|s| s.direction.clone()).collect() };
    let m2 = PartitionMatroid { blocks: segs.iter().map(|s| s.owner).collect() };
    let chosen = matroid_intersection(&m1, &m2, r)?;
    let mut witness: Vec<Segment> = chosen.into_iter().map(|i| segs[i].clone()).collect();
    witness.sort_by_key(|s| s.owner);
    Some(witness)
}

/// Decides `CM phi(P_1, ..., P_r) > 0` for a valuation claiming combinatorial
/// positivity with `phi({0}) > 0`. Other valuations are rejected; compute the
/// mixed value directly for those.
pub fn decide_positive(phi: &dyn Valuation, polys: &[Polytope]) -> Result<PositivityDecision> {
    if !phi.claims().combinatorially_positive {
        return Err(Error::InvalidArgument(format!("valuation '{}' does not claim combinatorial positivity", phi.name())));
    }
    let d = polys.first().ok_or(Error::Empty("positivity of an empty tuple"))?.ambient_dim();
    if !phi.eval(&Polytope::origin(d))?.is_positive() {
        return Err(Error::InvalidArgument(format!("valuation '{}' is not positive on a point", phi.name())));
    }
    for p in polys {
        check_lattice(phi, p)?;
        if !p.is_lattice() {
            return Err(Error::LatticeMismatch { valuation: phi.name().to_string(), vertex: p.vertices()[0].to_string() });
        }
    }
    let witness = independent_segments(polys);
    Ok(PositivityDecision { positive: witness.is_some(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::{cm, DiscreteVolume, Volume};

    #[test]
    fn segments_of_basic_shapes() {
        let tri = Polytope::from_ints(&[[0, 0], [1, 0], [0, 1]]);
        let segs = candidate_segments(&[tri]);
        assert_eq!(segs.len(), 3);
        let dirs: std::collections::BTreeSet<Vec<i64>> = segs
            .iter()
            .map(|s| {
                let v: Vec<i64> = s.direction.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
                if v < vec![0; 2] { v.iter().map(|x| -x).collect() } else { v }
            })
            .collect();
        assert_eq!(dirs, [vec![0, 1], vec![1, 0], vec![1, -1]].into_iter().collect());
        assert!(candidate_segments(&[Polytope::from_ints(&[[3, 3]])]).is_empty());
        let sq = Polytope::from_ints(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        let segs = candidate_segments(&[sq]);
        assert_eq!(segs.len(), 4);
        let distinct: std::collections::BTreeSet<_> = segs.iter().map(|s| s.direction.clone()).collect();
        assert_eq!(distinct.len(), 2);
    }

    #[test]
    fn decisions() {
        let tri = Polytope::from_ints(&[[0, 0], [1, 0], [0, 1]]);
        let e1 = Polytope::from_ints(&[[0, 0], [1, 0]]);
        let pt = Polytope::from_ints(&[[1, 1]]);
        let yes = decide_positive(&DiscreteVolume, &[tri.clone(), e1.clone()]).unwrap();
        assert!(yes.positive);
        assert_eq!(yes.witness.unwrap().len(), 2);
        assert_eq!(cm(&DiscreteVolume, &[tri.clone(), e1.clone()]).unwrap(), crate::rational::int(1));
        assert!(!decide_positive(&DiscreteVolume, &[e1.clone(), e1.clone()]).unwrap().positive);
        assert!(!decide_positive(&DiscreteVolume, &[tri.clone(), pt]).unwrap().positive);
        assert!(!decide_positive(&DiscreteVolume, &[tri.clone(), tri.clone(), tri.clone()]).unwrap().positive);
        assert!(decide_positive(&Volume, &[tri, e1]).is_err());
    }
}
