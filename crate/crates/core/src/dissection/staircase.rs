use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};

use super::{Dissection, MixedCell};

/// Monotone lattice paths from `(0,0)` to `(k,l)` as vertex-index sequences.
fn monotone_paths(k: usize, l: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut path = vec![(0, 0)];
    fn walk(k: usize, l: usize, path: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (i, j) = *path.last().unwrap();
        if i == k && j == l {
            out.push(path.clone());
            return;
        }
        if i < k {
            path.push((i + 1, j));
            walk(k, l, path, out);
            path.pop();
        }
        if j < l {
            path.push((i, j + 1));
            walk(k, l, path, out);
            path.pop();
        }
    }
    walk(k, l, &mut path, &mut out);
    out
}

/// Staircase triangulation of the exact sum `S1 + S2` of two simplices into
/// `binom(dim S1 + dim S2, dim S1)` simplices.
pub fn staircase_dissection(s1: &Polytope, s2: &Polytope) -> Result<Dissection> {
    if !s1.is_simplex() || !s2.is_simplex() {
        return Err(Error::InvalidArgument("staircase needs two simplices".into()));
    }
    let target = s1.minkowski_sum(s2)?;
    if target.dim() != s1.dim() + s2.dim() {
        return Err(Error::NonExactSum(format!("{s1:?} + {s2:?}")));
    }
    let (v, w) = (s1.vertices(), s2.vertices());
    let cells = monotone_paths(v.len() - 1, w.len() - 1)
        .into_iter()
        .map(|path| {
            let pts: Vec<Point> = path.iter().map(|&(i, j)| v[i].add(&w[j])).collect();
            Polytope::hull(&pts).map(MixedCell::plain)
        })
        .collect::<Result<_>>()?;
    Ok(Dissection { target, cells })
}

/// Splits a cylinder with at least two positive-dimensional summands into
/// cylinders with one fewer, by a staircase of its first two such summands.
pub fn staircase_refine(cell: &MixedCell) -> Result<Vec<MixedCell>> {
    if !cell.is_cylinder() {
        return Err(Error::InvalidArgument("staircase refinement needs a cylinder".into()));
    }
    let positive: Vec<usize> = (0..cell.summands.len()).filter(|&i| cell.summands[i].dim() > 0).collect();
    if positive.len() < 2 {
        return Err(Error::InvalidArgument("cylinder has fewer than two positive-dimensional summands".into()));
    }
    let (a, b) = (positive[0], positive[1]);
    let stair = staircase_dissection(&cell.summands[a], &cell.summands[b])?;
    stair
        .cells
        .into_iter()
        .map(|t| {
            let mut summands = vec![t.cell];
            summands.extend(cell.summands.iter().enumerate().filter(|&(i, _)| i != a && i != b).map(|(_, s)| s.clone()));
            MixedCell::new(summands)
        })
        .collect()
}
