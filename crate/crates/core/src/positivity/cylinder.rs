use std::collections::BTreeMap;

use crate::geometry::{Point, Polytope};
use crate::linalg::{self, Vector};

/// Simplices `S_i ⊆ P_i` (as vertex lists) attaining the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderWitness {
    pub bound: u64,
    pub simplices: Vec<Vec<Point>>,
}

/// Linear spans of affinely independent vertex subsets of `p` of positive
/// dimension, keyed by their reduced basis, with one realizing subset each.
fn spans(p: &Polytope) -> Vec<(Vec<Vector>, Vec<Point>)> {
    let verts = p.vertices();
    let mut found: BTreeMap<Vec<Vector>, Vec<Point>> = BTreeMap::new();
    let mut stack: Vec<usize> = Vec::new();
    fn grow(
        verts: &[Point],
        start: usize,
        stack: &mut Vec<usize>,
        found: &mut BTreeMap<Vec<Vector>, Vec<Point>>,
    ) {
        for i in start..verts.len() {
            stack.push(i);
            let dirs: Vec<Vector> = stack[1..].iter().map(|&j| verts[j].sub(&verts[stack[0]])).collect();
            if linalg::rank(&dirs) == dirs.len() {
                if !dirs.is_empty() {
                    let (basis, _) = linalg::rref(&dirs);
                    found.entry(basis).or_insert_with(|| stack.iter().map(|&j| verts[j].clone()).collect());
                }
                grow(verts, i + 1, stack, found);
            }
            stack.pop();
        }
    }
    grow(verts, 0, &mut stack, &mut found);
    found.into_iter().collect()
}

/// Maximum of `dim S_1 * ... * dim S_r` over simplices `S_i` spanned by
/// vertices of `P_i` whose sum is exact; 0 when no such choice has every
/// `dim S_i >= 1`.
pub fn cylinder_lower_bound(polys: &[Polytope]) -> CylinderWitness {
    let options: Vec<Vec<(Vec<Vector>, Vec<Point>)>> = polys.iter().map(spans).collect();
    let mut best = CylinderWitness { bound: 0, simplices: Vec::new() };
    let mut chosen: Vec<usize> = Vec::new();
    fn search(
        options: &[Vec<(Vec<Vector>, Vec<Point>)>],
        chosen: &mut Vec<usize>,
        rows: &mut Vec<Vector>,
        product: u64,
        best: &mut CylinderWitness,
    ) {
        let i = chosen.len();
        if i == options.len() {
            if product > best.bound {
                best.bound = product;
                best.simplices = chosen.iter().enumerate().map(|(k, &c)| options[k][c].1.clone()).collect();
            }
            return;
        }
        for (c, (basis, _)) in options[i].iter().enumerate() {
            let before = rows.len();
            rows.extend(basis.iter().cloned());
            if linalg::rank(rows) == rows.len() {
                chosen.push(c);
                search(options, chosen, rows, product * basis.len() as u64, best);
                chosen.pop();
            }
            rows.truncate(before);
        }
    }
    if polys.is_empty() || polys.len() > polys[0].ambient_dim() {
        return best;
    }
    search(&options, &mut chosen, &mut Vec::new(), 1, &mut best);
    best
}
