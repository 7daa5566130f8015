use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{place_points, Point, Polytope};
use crate::rational::int;

use super::{dilated_cell_counts_at, generic_interior_point, Dissection, MixedCell};

/// `conv(P_1 × {e_1} ∪ ... ∪ P_r × {e_r})` in `R^(d+r)`.
#[derive(Clone, Debug)]
pub struct CayleyPolytope {
    pub factors: Vec<Polytope>,
    pub embedding: Polytope,
}

fn lift(p: &Point, i: usize, r: usize) -> Point {
    let mut c = p.coords().to_vec();
    c.extend((0..r).map(|j| int(i64::from(i == j))));
    Point::new(c)
}

fn check_factors(polys: &[Polytope]) -> Result<usize> {
    let d = polys.first().ok_or(Error::Empty("no factors"))?.ambient_dim();
    if let Some(p) = polys.iter().find(|p| p.ambient_dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: p.ambient_dim() });
    }
    Ok(d)
}

pub fn cayley_polytope(polys: &[Polytope]) -> Result<CayleyPolytope> {
    check_factors(polys)?;
    let r = polys.len();
    let pts: Vec<Point> =
        polys.iter().enumerate().flat_map(|(i, p)| p.vertices().iter().map(move |v| lift(v, i, r))).collect();
    Ok(CayleyPolytope { factors: polys.to_vec(), embedding: Polytope::hull(&pts)? })
}

/// Placing triangulation of `p` inserting its vertices in `order`.
pub fn placing_triangulation(p: &Polytope, order: &[Point]) -> Result<Dissection> {
    let given: BTreeSet<&Point> = order.iter().collect();
    let verts: BTreeSet<&Point> = p.vertices().iter().collect();
    if given != verts || order.len() != verts.len() {
        return Err(Error::InvalidArgument("placing order must list every vertex exactly once".into()));
    }
    let tri = place_points(order);
    let cells = tri
        .simplices
        .iter()
        .map(|s| Polytope::hull(&tri.simplex_points(s)).map(MixedCell::plain))
        .collect::<Result<_>>()?;
    Ok(Dissection { target: p.clone(), cells })
}

/// Pulls a full-dimensional simplex of the Cayley polytope back to the mixed
/// cell grouping its vertices by label.
fn pull_back(points: &[(usize, Point)], simplex: &[usize], r: usize) -> Result<MixedCell> {
    let summands: Vec<Polytope> = (0..r)
        .map(|i| {
            let group: Vec<Point> =
                simplex.iter().filter(|&&k| points[k].0 == i).map(|&k| points[k].1.clone()).collect();
            Polytope::hull(&group)
        })
        .collect::<Result<_>>()?;
    let cell = MixedCell::new(summands)?;
    if !cell.is_exact() {
        return Err(Error::Certificate(format!("pulled-back cell {:?} is not an exact sum", cell.cell)));
    }
    Ok(cell)
}

/// Fine mixed dissection of `P_1 + ... + P_r` from the placing triangulation
/// of the Cayley polytope in the order given by `(factor, vertex)` pairs.
pub fn fine_mixed_dissection_ordered(polys: &[Polytope], order: &[(usize, Point)]) -> Result<Dissection> {
    let d = check_factors(polys)?;
    let r = polys.len();
    for (i, v) in order {
        if *i >= r || !polys[*i].vertices().contains(v) {
            return Err(Error::InvalidArgument(format!("{v} is not a vertex of factor {i}")));
        }
    }
    let lifted: Vec<Point> = order.iter().map(|(i, v)| lift(v, *i, r)).collect();
    let tri = place_points(&lifted);
    let target = Polytope::sum_all(d, polys)?;
    if tri.dim() != target.dim() + r - 1 {
        return Err(Error::InvalidArgument("placing order misses vertices of some factor".into()));
    }
    let cells = tri.simplices.iter().map(|s| pull_back(order, s, r)).collect::<Result<_>>()?;
    Ok(Dissection { target, cells })
}

/// [`fine_mixed_dissection_ordered`] in input order: factor by factor, each
/// factor's vertices in sorted order.
pub fn fine_mixed_dissection(polys: &[Polytope]) -> Result<Dissection> {
    let order: Vec<(usize, Point)> =
        polys.iter().enumerate().flat_map(|(i, p)| p.vertices().iter().map(move |v| (i, v.clone()))).collect();
    fine_mixed_dissection_ordered(polys, &order)
}

/// A fine mixed dissection of `sum Q_i` whose first cells form one of
/// `sum P_i`; the remaining cells cover the difference.
#[derive(Clone, Debug)]
pub struct DifferenceCertificate {
    pub inner: Vec<Polytope>,
    pub outer: Vec<Polytope>,
    pub dissection: Dissection,
    pub inner_cells: usize,
    pub point: Point,
}

/// Outcome of the difference certificate at one scaling vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceCheck {
    pub n: Vec<u32>,
    pub difference_count: u64,
    pub outer_count: u64,
    pub inner_count: u64,
}

impl DifferenceCheck {
    pub fn holds(&self) -> bool {
        self.outer_count.checked_sub(self.inner_count) == Some(self.difference_count)
    }
}

/// Places the Cayley vertices of `P` first and the remaining vertices of the
/// Cayley polytope of `Q` after them, so the cells using only `P`-vertices
/// dissect `sum P_i`. Requires `P_i ⊆ Q_i` and equal sum dimensions.
pub fn mixed_difference_certificate(p: &[Polytope], q: &[Polytope], seed: u64) -> Result<DifferenceCertificate> {
    if p.len() != q.len() {
        return Err(Error::InvalidArgument("tuples of different length".into()));
    }
    let d = check_factors(q)?;
    check_factors(p)?;
    for (i, (a, b)) in p.iter().zip(q).enumerate() {
        if !b.contains(a) {
            return Err(Error::NotContained(format!("factor {i}")));
        }
    }
    let sp = Polytope::sum_all(d, p)?;
    let sq = Polytope::sum_all(d, q)?;
    if sp.dim() != sq.dim() {
        return Err(Error::UnequalDimensions(sp.dim(), sq.dim()));
    }
    let mut order: Vec<(usize, Point)> =
        p.iter().enumerate().flat_map(|(i, f)| f.vertices().iter().map(move |v| (i, v.clone()))).collect();
    let n_inner = order.len();
    for (i, f) in q.iter().enumerate() {
        for v in f.vertices() {
            if !p[i].vertices().contains(v) {
                order.push((i, v.clone()));
            }
        }
    }
    let r = q.len();
    let lifted: Vec<Point> = order.iter().map(|(i, v)| lift(v, *i, r)).collect();
    let tri = place_points(&lifted);
    let (mut inner, mut outer) = (Vec::new(), Vec::new());
    for s in &tri.simplices {
        let cell = pull_back(&order, s, r)?;
        if s.iter().all(|&k| k < n_inner) {
            inner.push(cell);
        } else {
            outer.push(cell);
        }
    }
    let inner_cells = inner.len();
    inner.extend(outer);
    let dissection = Dissection { target: sq, cells: inner };
    let all: Vec<&Polytope> = dissection.cell_polytopes();
    let point = generic_interior_point(&sp, &all, seed)?;
    Ok(DifferenceCertificate { inner: p.to_vec(), outer: q.to_vec(), dissection, inner_cells, point })
}

impl DifferenceCertificate {
    pub fn difference_cells(&self) -> &[MixedCell] {
        &self.dissection.cells[self.inner_cells..]
    }

    /// Compares the summed difference-cell counts at `n` with
    /// `E(n Q) - E(n P)` from direct enumeration.
    pub fn check(&self, n: &[u32]) -> Result<DifferenceCheck> {
        let counts = dilated_cell_counts_at(&self.dissection, n, &self.point)?;
        let difference_count = counts.counts[self.inner_cells..].iter().sum();
        let d = self.dissection.target.ambient_dim();
        let dil = |ps: &[Polytope]| -> Result<u64> {
            let parts: Vec<Polytope> = ps.iter().zip(n).map(|(p, &k)| p.dilate(k as u64)).collect();
            Ok(crate::lattice::lattice_count(&Polytope::sum_all(d, &parts)?))
        };
        Ok(DifferenceCheck { n: n.to_vec(), difference_count, outer_count: dil(&self.outer)?, inner_count: dil(&self.inner)? })
    }
}
