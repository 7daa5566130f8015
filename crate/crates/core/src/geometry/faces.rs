use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{Point, Polytope};

#[derive(Clone, Debug)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<Point>,
    /// Indices into `facets()` of the parent polytope of the facets containing
    /// this face.
    pub facets: BTreeSet<usize>,
    pub polytope: Polytope,
}

/// All nonempty faces of a polytope, including the polytope itself.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
}

impl FaceLattice {
    /// Faces are the nonempty intersections of facet vertex sets, closed
    /// under intersection, plus the polytope itself.
    pub fn of(p: &Polytope) -> Self {
        let verts = p.vertices();
        let incidence: Vec<BTreeSet<usize>> = p
            .facets()
            .iter()
            .map(|f| (0..verts.len()).filter(|&i| f.slack(&verts[i]).is_zero()).collect())
            .collect();
        let all: BTreeSet<usize> = (0..verts.len()).collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        found.insert(all.clone());
        let mut frontier = vec![all];
        while let Some(set) = frontier.pop() {
            for inc in &incidence {
                let next: BTreeSet<usize> = set.intersection(inc).copied().collect();
                if !next.is_empty() && found.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|set| {
                let vertices: Vec<Point> = set.iter().map(|&i| verts[i].clone()).collect();
                let polytope = Polytope::hull(&vertices).expect("face vertices are nonempty");
                let facets = incidence
                    .iter()
                    .enumerate()
                    .filter(|(_, inc)| set.is_subset(inc))
                    .map(|(i, _)| i)
                    .collect();
                Face { dim: polytope.dim(), vertices, facets, polytope }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        FaceLattice { faces }
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    /// Number of faces per dimension, `f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for f in &self.faces {
            *counts.entry(f.dim).or_default() += 1;
        }
        let top = counts.keys().next_back().copied().unwrap_or(0);
        (0..=top).map(|k| counts.get(&k).copied().unwrap_or(0)).collect()
    }

    /// `sum over nonempty faces of (-1)^dim F`.
    pub fn euler_sum(&self) -> i64 {
        self.faces.iter().map(|f| if f.dim % 2 == 0 { 1 } else { -1 }).sum()
    }
}
