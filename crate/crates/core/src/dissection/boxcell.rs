use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};
use crate::rational::Rational;

use super::{Dissection, MixedCell};

/// Corner `b` and block lengths of one box cell `b + S(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxCellInfo {
    pub corner: Vec<i64>,
    pub blocks: Vec<usize>,
}

impl BoxCellInfo {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Clone, Debug)]
pub struct BoxcellDissection {
    pub d: usize,
    pub n: u32,
    pub dissection: Dissection,
    pub info: Vec<BoxCellInfo>,
}

impl BoxcellDissection {
    /// Number of cells per block count `k`.
    pub fn census(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for i in &self.info {
            *out.entry(i.block_count()).or_insert(0) += 1;
        }
        out
    }
}

/// Compositions of `d` into `k` positive parts.
pub fn composition_count(d: usize, k: usize) -> u64 {
    if k == 0 || k > d {
        return u64::from(d == 0 && k == 0);
    }
    let r = crate::rational::binomial(d as i64 - 1, k as i64 - 1);
    r.to_integer().try_into().expect("small binomial")
}

/// `{0 <= y_lo <= ... <= y_hi <= 1}` in the listed coordinates.
fn block_simplex(d: usize, lo: usize, hi: usize) -> Polytope {
    let mut pts = vec![Point::origin(d)];
    for start in (lo..=hi).rev() {
        let coords: Vec<i64> = (0..d).map(|i| i64::from(i >= start && i <= hi)).collect();
        pts.push(Point::from_ints(&coords));
    }
    Polytope::hull(&pts).expect("block simplex vertices")
}

/// The order simplex `{0 <= x_1 <= ... <= x_d <= n}`.
pub fn order_simplex(d: usize, n: u32) -> Polytope {
    let n = Rational::from_integer(n.into());
    block_simplex(d, 0, d - 1).scale(&n)
}

/// Dissects `{0 <= x_1 <= ... <= x_d <= n}` into the cells `b + S(b)` for
/// weakly increasing `b ∈ {0..n-1}^d`, where `S(b)` is the product of order
/// simplices over the maximal constant blocks of `b`.
pub fn boxcell_dissection(d: usize, n: u32) -> Result<BoxcellDissection> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument("boxcell needs d >= 1 and n >= 1".into()));
    }
    let target = order_simplex(d, n);
    let mut cells = Vec::new();
    let mut info = Vec::new();
    let mut b = vec![0i64; d];
    loop {
        let mut summands = vec![Polytope::point(Point::from_ints(&b))];
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=d {
            if i == d || b[i] != b[start] {
                summands.push(block_simplex(d, start, i - 1));
                blocks.push(i - start);
                start = i;
            }
        }
        cells.push(MixedCell::new(summands)?);
        info.push(BoxCellInfo { corner: b.clone(), blocks });
        // next weakly increasing vector
        let Some(pos) = (0..d).rev().find(|&i| b[i] < n as i64 - 1) else { break };
        let v = b[pos] + 1;
        for x in b.iter_mut().skip(pos) {
            *x = v;
        }
    }
    Ok(BoxcellDissection { d, n, dissection: Dissection { target, cells }, info })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice_count;
    use crate::rational::frac;

    #[test]
    fn small_cases() {
        let bc = boxcell_dissection(2, 2).unwrap();
        assert_eq!(bc.dissection.cells.len(), 3);
        let corners: Vec<Vec<i64>> = bc.info.iter().map(|i| i.corner.clone()).collect();
        assert_eq!(corners, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(bc.census(), BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(lattice_count(&bc.dissection.target), 6);
        let bc = boxcell_dissection(1, 3).unwrap();
        assert_eq!(bc.dissection.cells.len(), 3);
    }

    #[test]
    fn cells_are_cylinders_with_right_volume() {
        let bc = boxcell_dissection(3, 2).unwrap();
        bc.dissection.check_structure().unwrap();
        for c in &bc.dissection.cells {
            assert!(c.is_cylinder());
        }
        let (cells, target) = bc.dissection.relative_volumes();
        assert_eq!(cells, target);
        assert_eq!(target, frac(8, 6));
    }

    #[test]
    fn compositions() {
        assert_eq!(composition_count(3, 1), 1);
        assert_eq!(composition_count(3, 2), 2);
        assert_eq!(composition_count(3, 3), 1);
        assert_eq!(composition_count(3, 4), 0);
    }
}
