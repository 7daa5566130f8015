use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;

use super::{Facet, Point, Polytope};

/// Combinatorial type of `sum of P_i over a support S`: each vertex as a
/// tuple of summand vertices, and the facet normals.
#[derive(Debug)]
struct Shape {
    base: Polytope,
    support: Vec<usize>,
    tuples: Vec<Vec<usize>>,
}

/// The family `n_1 P_1 + ... + n_r P_r` over scaling vectors `n`.
///
/// Sums sharing the support of `n` share their normal fan, so each support is
/// hulled once; later members are read off from vertex tuples and support
/// functions.
pub struct DilatedSums {
    ambient: usize,
    polys: Vec<Polytope>,
    shapes: Mutex<HashMap<u64, std::sync::Arc<Shape>>>,
}

impl DilatedSums {
    pub fn new(ambient: usize, polys: &[Polytope]) -> Result<Self> {
        if polys.len() >= 64 {
            return Err(Error::InvalidArgument("too many summands".into()));
        }
        if let Some(p) = polys.iter().find(|p| p.ambient_dim() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: p.ambient_dim() });
        }
        Ok(DilatedSums { ambient, polys: polys.to_vec(), shapes: Mutex::new(HashMap::new()) })
    }

    fn shape(&self, mask: u64) -> Result<std::sync::Arc<Shape>> {
        if let Some(s) = self.shapes.lock().expect("shape cache").get(&mask) {
            return Ok(s.clone());
        }
        let support: Vec<usize> = (0..self.polys.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let mut current: BTreeMap<Point, Vec<usize>> = BTreeMap::from([(Point::origin(self.ambient), Vec::new())]);
        let mut base = Polytope::origin(self.ambient);
        for &i in &support {
            let mut next = BTreeMap::new();
            for (w, t) in &current {
                for (k, v) in self.polys[i].vertices().iter().enumerate() {
                    let mut t = t.clone();
                    t.push(k);
                    next.insert(w.add(v), t);
                }
            }
            let pts: Vec<Point> = next.keys().cloned().collect();
            base = Polytope::hull(&pts)?;
            current = base.vertices().iter().map(|v| (v.clone(), next.remove(v).expect("vertex among candidates"))).collect();
        }
        let tuples = base.vertices().iter().map(|v| current[v].clone()).collect();
        let shape = std::sync::Arc::new(Shape { base, support, tuples });
        self.shapes.lock().expect("shape cache").insert(mask, shape.clone());
        Ok(shape)
    }

    /// `n_1 P_1 + ... + n_r P_r`.
    pub fn get(&self, n: &[u32]) -> Result<Polytope> {
        if n.len() != self.polys.len() {
            return Err(Error::InvalidArgument("scaling vector must match the summands".into()));
        }
        let mask = n.iter().enumerate().filter(|(_, &k)| k > 0).fold(0u64, |m, (i, _)| m | 1 << i);
        let shape = self.shape(mask)?;
        if shape.support.iter().all(|&i| n[i] == 1) {
            return Ok(shape.base.clone());
        }
        let scale: Vec<Rational> = shape.support.iter().map(|&i| Rational::from_integer(n[i].into())).collect();
        let mut vertices: Vec<Point> = shape
            .tuples
            .iter()
            .map(|t| {
                let mut acc = Point::origin(self.ambient);
                for ((&i, &k), s) in shape.support.iter().zip(t).zip(&scale) {
                    acc = acc.add(&self.polys[i].vertices()[k].scale(s));
                }
                acc
            })
            .collect();
        vertices.sort();
        let facets = shape
            .base
            .facets()
            .iter()
            .map(|f| {
                let offset = shape.support.iter().zip(&scale).fold(Rational::zero(), |acc, (&i, s)| {
                    let h = self.polys[i].vertices().iter().map(|v| linalg::dot(&f.normal, v.coords())).max().expect("nonempty");
                    acc + h * s
                });
                Facet { normal: f.normal.clone(), offset }
            })
            .collect();
        let frame = shape.base.frame().moved_to(vertices[0].clone());
        Ok(Polytope::from_parts(vertices, frame, facets))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    #[test]
    fn matches_direct_sums() {
        let mut s = Sampler::new(9);
        for d in 1..=3 {
            for _ in 0..10 {
                let polys: Vec<Polytope> = (0..3).map(|_| s.lattice_polytope(d, 3, 5)).collect();
                let fam = DilatedSums::new(d, &polys).unwrap();
                for n in [[0, 0, 0], [1, 0, 2], [2, 3, 1], [0, 4, 0], [1, 1, 1]] {
                    let dil: Vec<Polytope> = polys.iter().zip(n).map(|(p, k)| p.dilate(k)).collect();
                    let direct = Polytope::sum_all(d, &dil).unwrap();
                    let got = fam.get(&n.map(|k| k as u32)).unwrap();
                    assert_eq!(got, direct);
                    assert_eq!(got.facets(), direct.facets());
                    assert_eq!(got.frame(), direct.frame());
                }
            }
        }
    }
}
