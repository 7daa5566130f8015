//! Lattice-point enumeration by exact bounding-box scans.
//!
//! Every facet normal is primitive integral, so for an integer point `x` the
//! test `<a, x> <= b` is equivalent to `<a, x> <= floor(b)` and the strict test
//! `<a, x> < b` to `<a, x> <= ceil(b) - 1`. The scan therefore runs on machine
//! integers once the constraints are prepared.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};
use crate::rational::{ceil_i64, floor_i64, Rational};
use crate::valuation::Valuation;

/// A polytope with some of its facets removed. Membership means: in the base
/// polytope and strictly inside every removed facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenPolytope {
    base: Polytope,
    removed: BTreeSet<usize>,
}

impl HalfOpenPolytope {
    pub fn new(base: Polytope, removed: BTreeSet<usize>) -> Result<Self> {
        let nf = base.facets().len();
        if let Some(&bad) = removed.iter().find(|&&i| i >= nf) {
            return Err(Error::InvalidArgument(format!("facet index {bad} out of range ({nf} facets)")));
        }
        Ok(HalfOpenPolytope { base, removed })
    }

    pub fn closed(base: Polytope) -> Self {
        HalfOpenPolytope { base, removed: BTreeSet::new() }
    }

    pub fn base(&self) -> &Polytope {
        &self.base
    }

    pub fn removed(&self) -> &BTreeSet<usize> {
        &self.removed
    }

    pub fn is_closed(&self) -> bool {
        self.removed.is_empty()
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.base.contains_point(p)
            && self.removed.iter().all(|&i| self.base.facets()[i].slack(p) < Rational::zero())
    }

    pub fn points(&self) -> Vec<Point> {
        half_open_points(self)
    }

    pub fn count(&self) -> u64 {
        Scan::new(&self.base, |i| self.removed.contains(&i)).count()
    }
}

/// Integer form of the constraints of a (half-open) polytope.
struct Scan {
    lo: Vec<i64>,
    hi: Vec<i64>,
    equations: Vec<(Vec<i64>, i64)>,
    inequalities: Vec<(Vec<i64>, i64)>,
    infeasible: bool,
}

fn to_ints(v: &[Rational]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_integer().to_i64().expect("constraint coefficient exceeds i64"))
        .collect()
}

impl Scan {
    fn new(p: &Polytope, strict: impl Fn(usize) -> bool) -> Self {
        let d = p.ambient_dim();
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for v in p.vertices() {
            for (j, c) in v.coords().iter().enumerate() {
                lo[j] = lo[j].min(ceil_i64(c).expect("coordinate exceeds i64"));
                hi[j] = hi[j].max(floor_i64(c).expect("coordinate exceeds i64"));
            }
        }
        let mut infeasible = lo.iter().zip(&hi).any(|(l, h)| l > h);
        let mut equations = Vec::new();
        for (c, e) in p.frame().equations() {
            if !e.is_integer() {
                infeasible = true;
            }
            equations.push((to_ints(&c), e.to_integer().to_i64().unwrap_or(0)));
        }
        let inequalities = p
            .facets()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let bound = if strict(i) {
                    ceil_i64(&f.offset).expect("offset exceeds i64") - 1
                } else {
                    floor_i64(&f.offset).expect("offset exceeds i64")
                };
                (to_ints(&f.normal), bound)
            })
            .collect();
        Scan { lo, hi, equations, inequalities, infeasible }
    }

    fn accepts(&self, x: &[i64]) -> bool {
        let dot = |a: &[i64]| a.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>();
        self.equations.iter().all(|(c, e)| dot(c) == *e as i128)
            && self.inequalities.iter().all(|(a, b)| dot(a) <= *b as i128)
    }

    /// Visits the box slice with first coordinate fixed to `x0`, in
    /// lexicographic order.
    fn scan_slice(&self, x0: i64, mut visit: impl FnMut(&[i64])) {
        let d = self.lo.len();
        let mut x = self.lo.clone();
        x[0] = x0;
        loop {
            if self.accepts(&x) {
                visit(&x);
            }
            let mut j = d;
            loop {
                if j == 1 {
                    return;
                }
                j -= 1;
                if x[j] < self.hi[j] {
                    x[j] += 1;
                    break;
                }
                x[j] = self.lo[j];
            }
        }
    }

    fn firsts(&self) -> Vec<i64> {
        if self.infeasible || self.lo.is_empty() {
            return Vec::new();
        }
        (self.lo[0]..=self.hi[0]).collect()
    }

    fn zero_dim_hit(&self) -> bool {
        !self.infeasible && self.lo.is_empty()
    }

    fn count(&self) -> u64 {
        if self.zero_dim_hit() {
            return 1;
        }
        self.firsts()
            .into_par_iter()
            .map(|x0| {
                let mut n = 0u64;
                self.scan_slice(x0, |_| n += 1);
                n
            })
            .sum()
    }

    fn points(&self) -> Vec<Point> {
        if self.zero_dim_hit() {
            return vec![Point::new(Vec::new())];
        }
        self.firsts()
            .into_par_iter()
            .map(|x0| {
                let mut out = Vec::new();
                self.scan_slice(x0, |x| out.push(Point::from_ints(x)));
                out
            })
            .flatten()
            .collect()
    }
}

/// Integer points of `P`, in lexicographic order.
pub fn lattice_points(p: &Polytope) -> Vec<Point> {
    Scan::new(p, |_| false).points()
}

pub fn lattice_count(p: &Polytope) -> u64 {
    Scan::new(p, |_| false).count()
}

pub fn half_open_points(h: &HalfOpenPolytope) -> Vec<Point> {
    Scan::new(&h.base, |i| h.removed.contains(&i)).points()
}

/// Integer points of the relative interior.
pub fn relint_points(p: &Polytope) -> Vec<Point> {
    Scan::new(p, |_| true).points()
}

pub fn relint_count(p: &Polytope) -> u64 {
    Scan::new(p, |_| true).count()
}

/// All distinct lattice polytopes spanned by nonempty subsets of the lattice
/// points of `q`, ordered by vertex list.
pub fn sub_polytopes(q: &Polytope) -> Vec<Polytope> {
    let pts = lattice_points(q);
    assert!(pts.len() < 20, "subset enumeration over {} points", pts.len());
    let mut seen: BTreeSet<Vec<Point>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << pts.len()) {
        let chosen: Vec<Point> = (0..pts.len()).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
        let p = Polytope::hull(&chosen).expect("nonempty subset");
        if seen.insert(p.vertices().to_vec()) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    out
}

/// `phi(relint P) = sum over nonempty faces F of (-1)^(dim P - dim F) phi(F)`.
pub fn euler_relint_value(phi: &dyn Valuation, p: &Polytope) -> Result<Rational> {
    let top = p.dim();
    p.face_lattice().faces.iter().try_fold(Rational::zero(), |acc, f| {
        let v = phi.eval(&f.polytope)?;
        Ok(if (top - f.dim) % 2 == 0 { acc + v } else { acc - v })
    })
}
