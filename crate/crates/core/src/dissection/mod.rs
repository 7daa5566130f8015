//! Dissections into (mixed) cylinders and their lattice-count certificates.
//!
//! A [`Dissection`] is a list of [`MixedCell`]s covering a target polytope.
//! Certificates never trust the construction: a generic point or direction
//! makes every cell half-open, and the lattice points of the target are then
//! checked to be hit by exactly one cell.

mod boxcell;
mod cayley;
mod halfopen;
mod json;
mod staircase;
mod strategy;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};
use crate::lattice::{lattice_points, HalfOpenPolytope};
use crate::linalg;

pub use boxcell::{boxcell_dissection, composition_count, order_simplex, BoxCellInfo, BoxcellDissection};
pub use cayley::{
    cayley_polytope, fine_mixed_dissection, fine_mixed_dissection_ordered, mixed_difference_certificate,
    placing_triangulation, CayleyPolytope, DifferenceCertificate, DifferenceCheck,
};
pub use halfopen::{
    decompose, direction_for_point, generic_direction, generic_interior_point, half_open_by_direction,
    half_open_by_point, HalfOpenRule,
};
pub use json::{CellJson, DissectionJson};
pub use staircase::{staircase_dissection, staircase_refine};
pub use strategy::{
    stored_certificates, Certificate, DissectInput, DissectOutcome, DissectionRegistry, DissectionStrategy,
};

/// A cell `R = R_1 + ... + R_r` with its summands and, once a half-open rule
/// has been applied, the indices of its removed facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCell {
    pub summands: Vec<Polytope>,
    pub cell: Polytope,
    pub removed: BTreeSet<usize>,
}

impl MixedCell {
    pub fn new(summands: Vec<Polytope>) -> Result<Self> {
        let ambient = summands.first().ok_or(Error::Empty("mixed cell without summands"))?.ambient_dim();
        let cell = Polytope::sum_all(ambient, &summands)?;
        Ok(MixedCell { summands, cell, removed: BTreeSet::new() })
    }

    pub fn plain(cell: Polytope) -> Self {
        MixedCell { summands: vec![cell.clone()], cell, removed: BTreeSet::new() }
    }

    /// `dim R = sum of dim R_j`.
    pub fn is_exact(&self) -> bool {
        self.cell.dim() == self.summands.iter().map(Polytope::dim).sum::<usize>()
    }

    pub fn is_cylinder(&self) -> bool {
        self.is_exact() && self.summands.iter().all(Polytope::is_simplex)
    }

    /// Number of positive-dimensional summands (the `k` of a k-cylinder).
    pub fn order(&self) -> usize {
        self.summands.iter().filter(|s| s.dim() > 0).count()
    }

    pub fn half_open(&self) -> HalfOpenPolytope {
        HalfOpenPolytope::new(self.cell.clone(), self.removed.clone()).expect("removed facets index the cell")
    }

    /// The cell `n_1 R_1 + ... + n_r R_r` made half-open by the point whose
    /// summand-wise parts are `q_parts` scaled alongside. Summands with
    /// `n_j = 0` collapse to `{0}` when `q_j ∈ R_j` and empty the cell
    /// otherwise; `None` stands for the empty set.
    pub fn scaled_half_open(&self, q_parts: &[Point], n: &[u32]) -> Result<Option<HalfOpenPolytope>> {
        if n.len() != self.summands.len() || q_parts.len() != self.summands.len() {
            return Err(Error::InvalidArgument("scaling vector must match the summands".into()));
        }
        let ambient = self.cell.ambient_dim();
        let mut parts = Vec::new();
        let mut q = Point::origin(ambient);
        for ((s, qj), &nj) in self.summands.iter().zip(q_parts).zip(n) {
            if nj == 0 {
                if !half_open_by_point(s, qj)?.is_closed() {
                    return Ok(None);
                }
                continue;
            }
            let k = crate::rational::int(nj as i64);
            parts.push(s.dilate(nj as u64));
            q = q.add(&qj.scale(&k));
        }
        let scaled = Polytope::sum_all(ambient, &parts)?;
        Ok(Some(half_open_by_point(&scaled, &q)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dissection {
    pub target: Polytope,
    pub cells: Vec<MixedCell>,
}

/// Outcome of a point-by-point partition check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionReport {
    /// Lattice points of the (half-open) target.
    pub target_points: u64,
    /// Sum of per-cell half-open counts.
    pub cell_sum: u64,
    pub per_cell: Vec<u64>,
    /// Target points covered by more than one cell.
    pub double_counted: Vec<Point>,
    /// Target points covered by no cell.
    pub missing: Vec<Point>,
    /// Cell points lying outside the target.
    pub stray: Vec<Point>,
}

impl PartitionReport {
    pub fn holds(&self) -> bool {
        self.double_counted.is_empty()
            && self.missing.is_empty()
            && self.stray.is_empty()
            && self.cell_sum == self.target_points
    }
}

/// Checks that the half-open `cells` partition the lattice points of the
/// half-open `target`.
pub fn partition_check(target: &HalfOpenPolytope, cells: &[HalfOpenPolytope]) -> PartitionReport {
    let mut report = PartitionReport::default();
    let target_pts: BTreeSet<Point> = target.points().into_iter().collect();
    report.target_points = target_pts.len() as u64;
    let mut hits: std::collections::BTreeMap<Point, u32> = std::collections::BTreeMap::new();
    for c in cells {
        let pts = c.points();
        report.per_cell.push(pts.len() as u64);
        report.cell_sum += pts.len() as u64;
        for p in pts {
            *hits.entry(p).or_default() += 1;
        }
    }
    for p in &target_pts {
        match hits.get(p) {
            None => report.missing.push(p.clone()),
            Some(&k) if k > 1 => report.double_counted.push(p.clone()),
            _ => {}
        }
    }
    report.stray = hits.keys().filter(|p| !target_pts.contains(*p)).cloned().collect();
    report
}

impl Dissection {
    pub fn cell_polytopes(&self) -> Vec<&Polytope> {
        self.cells.iter().map(|c| &c.cell).collect()
    }

    /// Structural checks: cells are full-dimensional in `aff(target)` and
    /// contained in the target.
    pub fn check_structure(&self) -> Result<()> {
        for (i, c) in self.cells.iter().enumerate() {
            if c.cell.dim() != self.target.dim() {
                return Err(Error::Certificate(format!("cell {i} has dimension {} != {}", c.cell.dim(), self.target.dim())));
            }
            if !self.target.contains(&c.cell) {
                return Err(Error::Certificate(format!("cell {i} leaves the target")));
            }
        }
        Ok(())
    }

    /// Sum of cell volumes measured inside `aff(target)` against the
    /// target's own volume, via the frame coordinates.
    pub fn relative_volumes(&self) -> (crate::Rational, crate::Rational) {
        let frame = self.target.frame();
        let project = |p: &Polytope| -> crate::Rational {
            let pts: Vec<Point> =
                p.vertices().iter().map(|v| Point(frame.coords(&v.sub(frame.origin())))).collect();
            Polytope::hull(&pts).expect("projected vertices share a dimension").volume()
        };
        let cells = self.cells.iter().map(|c| project(&c.cell)).sum();
        (cells, project(&self.target))
    }

    /// Applies `rule` to every cell and records the removed facets.
    pub fn make_half_open(&mut self, rule: &HalfOpenRule) -> Result<()> {
        for c in self.cells.iter_mut() {
            c.removed = rule.apply(&c.cell)?.removed().clone();
        }
        Ok(())
    }

    /// Half-open partition certificate for the undilated dissection.
    pub fn certify(&self, rule: &HalfOpenRule) -> Result<PartitionReport> {
        let target = rule.apply(&self.target)?;
        let cells: Vec<HalfOpenPolytope> = self.cells.iter().map(|c| rule.apply(&c.cell)).collect::<Result<_>>()?;
        Ok(partition_check(&target, &cells))
    }

    /// A generic interior point of the target, off all cell hyperplanes.
    pub fn generic_point(&self, seed: u64) -> Result<Point> {
        generic_interior_point(&self.target, &self.cell_polytopes(), seed)
    }

    pub fn generic_direction(&self, seed: u64) -> Result<linalg::Vector> {
        generic_direction(&self.target, &self.cell_polytopes(), seed)
    }

    /// Summand-wise parts of `q` for every cell.
    pub fn point_parts(&self, q: &Point) -> Result<Vec<Vec<Point>>> {
        self.cells
            .iter()
            .map(|c| decompose(q, &c.summands).ok_or_else(|| Error::NonExactSum("point outside a cell's affine hull".into())))
            .collect()
    }
}

/// Per-cell counts of a fine mixed dissection scaled summand-wise by `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCounts {
    pub point: Point,
    pub n: Vec<u32>,
    pub counts: Vec<u64>,
    pub total: u64,
}

/// Scales every cell by `n`, applies the half-open operator of a generic
/// interior point `q` (chosen once from `seed` on the undilated dissection)
/// and counts lattice points per cell. The total equals `E(n_1 P_1 + ... )`.
pub fn dilated_cell_counts(d: &Dissection, n: &[u32], seed: u64) -> Result<CellCounts> {
    let q = d.generic_point(seed)?;
    dilated_cell_counts_at(d, n, &q)
}

pub fn dilated_cell_counts_at(d: &Dissection, n: &[u32], q: &Point) -> Result<CellCounts> {
    let parts = d.point_parts(q)?;
    let mut counts = Vec::with_capacity(d.cells.len());
    for (c, qp) in d.cells.iter().zip(&parts) {
        counts.push(c.scaled_half_open(qp, n)?.map_or(0, |h| h.count()));
    }
    let total = counts.iter().sum();
    Ok(CellCounts { point: q.clone(), n: n.to_vec(), counts, total })
}

/// Point-by-point version of [`dilated_cell_counts`] against the closed
/// dilated target `n_1 P_1 + ... + n_r P_r`.
pub fn dilated_partition_check(d: &Dissection, factors: &[Polytope], n: &[u32], q: &Point) -> Result<PartitionReport> {
    let parts = d.point_parts(q)?;
    let ambient = d.target.ambient_dim();
    let dil: Vec<Polytope> = factors.iter().zip(n).map(|(p, &k)| p.dilate(k as u64)).collect();
    let target = HalfOpenPolytope::closed(Polytope::sum_all(ambient, &dil)?);
    let mut cells = Vec::new();
    for (c, qp) in d.cells.iter().zip(&parts) {
        if let Some(h) = c.scaled_half_open(qp, n)? {
            cells.push(h);
        }
    }
    Ok(partition_check(&target, &cells))
}

/// All lattice points of a polytope, re-exported for certificate consumers.
pub fn target_points(p: &Polytope) -> Vec<Point> {
    lattice_points(p)
}
