//! Brute-force oracles over small integer coordinates.
//!
//! Nothing here calls into the library's geometry: hulls come from
//! enumerating hyperplanes through point subsets, counts from scanning the
//! bounding box, volumes from cone decompositions over those facets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mixval::rational::{frac, int};
use mixval::{Point, Polytope, Rational};

pub type Pt = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[i64], b: &[i64]) -> Pt {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Pt {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn cross(a: &[i64], b: &[i64]) -> Pt {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn primitive(v: Pt) -> Pt {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(rows: &[Pt]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| {
                    let (mut a, mut b) = (g.abs(), x.abs());
                    while b != 0 {
                        (a, b) = (b, a % b);
                    }
                    a
                });
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// A polytope in `Z^d`, `d <= 3`, as vertices plus equations and facet
/// inequalities `<a, x> <= b` inside its affine hull.
#[derive(Clone, Debug)]
pub struct Hull {
    pub d: usize,
    pub dim: usize,
    pub vertices: Vec<Pt>,
    pub eqs: Vec<(Pt, i64)>,
    pub ineqs: Vec<(Pt, i64)>,
}

fn unit(d: usize, i: usize) -> Pt {
    (0..d).map(|k| i64::from(k == i)).collect()
}

/// Keeps `n` as a supporting inequality when every point lies on one side.
fn supporting(n: Pt, base: &[i64], pts: &[Pt]) -> Option<(Pt, i64)> {
    if n.iter().all(|&x| x == 0) {
        return None;
    }
    let n = primitive(n);
    let b = dot(&n, base);
    let (mut lo, mut hi) = (false, false);
    for p in pts {
        let s = dot(&n, p) - b;
        lo |= s < 0;
        hi |= s > 0;
        if lo && hi {
            return None;
        }
    }
    Some(if hi { (n.iter().map(|x| -x).collect(), -b) } else { (n, b) })
}

pub fn hull(points: &[Pt]) -> Hull {
    let pts: Vec<Pt> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let d = pts[0].len();
    assert!((1..=3).contains(&d), "oracle handles dimensions 1 to 3");
    let p0 = &pts[0];
    let diffs: Vec<Pt> = pts.iter().map(|p| sub(p, p0)).collect();
    let dim = rank(&diffs);
    let mut eq_normals: Vec<Pt> = Vec::new();
    let mut cands: Vec<(Pt, Pt)> = Vec::new();
    match dim {
        0 => eq_normals = (0..d).map(|i| unit(d, i)).collect(),
        1 => {
            let v = diffs.iter().find(|v| v.iter().any(|&x| x != 0)).unwrap().clone();
            match d {
                1 => {}
                2 => eq_normals.push(vec![-v[1], v[0]]),
                _ => eq_normals.extend((0..3).map(|i| cross(&v, &unit(3, i))).filter(|c| c.iter().any(|&x| x != 0))),
            }
            cands.extend(pts.iter().map(|p| (v.clone(), p.clone())));
        }
        _ => {
            let normal = if d == 3 && dim == 2 {
                let a = diffs.iter().find(|v| v.iter().any(|&x| x != 0)).unwrap();
                let n = diffs.iter().map(|b| cross(a, b)).find(|c| c.iter().any(|&x| x != 0)).unwrap();
                eq_normals.push(n.clone());
                Some(n)
            } else {
                None
            };
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let e = sub(&pts[j], &pts[i]);
                    if d == 2 {
                        cands.push((vec![-e[1], e[0]], pts[i].clone()));
                    } else if let Some(n) = &normal {
                        cands.push((cross(n, &e), pts[i].clone()));
                    } else {
                        for k in j + 1..pts.len() {
                            cands.push((cross(&e, &sub(&pts[k], &pts[i])), pts[i].clone()));
                        }
                    }
                }
            }
        }
    }
    let eqs: Vec<(Pt, i64)> = eq_normals
        .into_iter()
        .map(|n| {
            let n = primitive(n);
            let b = dot(&n, p0);
            (n, b)
        })
        .collect();
    let ineqs: Vec<(Pt, i64)> = cands
        .into_iter()
        .filter_map(|(n, base)| supporting(n, &base, &pts))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vertices = pts
        .iter()
        .filter(|p| {
            let tight: Vec<Pt> = ineqs.iter().filter(|(n, b)| dot(n, p) == *b).map(|(n, _)| n.clone()).collect();
            rank(&tight) == dim
        })
        .cloned()
        .collect();
    Hull { d, dim, vertices, eqs, ineqs }
}

impl Hull {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.eqs.iter().all(|(n, b)| dot(n, x) == *b) && self.ineqs.iter().all(|(n, b)| dot(n, x) <= *b)
    }

    pub fn relint_contains(&self, x: &[i64]) -> bool {
        self.eqs.iter().all(|(n, b)| dot(n, x) == *b) && self.ineqs.iter().all(|(n, b)| dot(n, x) < *b)
    }

    /// Closed membership, strict on every facet whose outward normal has
    /// positive product with `u`.
    pub fn half_open_contains(&self, u: &[i64], x: &[i64]) -> bool {
        self.contains(x) && self.ineqs.iter().all(|(n, b)| dot(n, u) <= 0 || dot(n, x) < *b)
    }

    pub fn box_points(&self) -> Vec<Pt> {
        let lo: Pt = (0..self.d).map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap()).collect();
        let hi: Pt = (0..self.d).map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap()).collect();
        let mut out = vec![Vec::new()];
        for i in 0..self.d {
            out = out
                .into_iter()
                .flat_map(|p: Pt| {
                    (lo[i]..=hi[i]).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn points(&self) -> Vec<Pt> {
        self.box_points().into_iter().filter(|x| self.contains(x)).collect()
    }

    pub fn count(&self) -> u64 {
        self.box_points().iter().filter(|x| self.contains(x)).count() as u64
    }

    pub fn relint_count(&self) -> u64 {
        self.box_points().iter().filter(|x| self.relint_contains(x)).count() as u64
    }

    /// `d! * vol` in the ambient space; zero unless full-dimensional.
    pub fn scaled_volume(&self) -> i64 {
        if self.dim < self.d {
            return 0;
        }
        let c = &self.vertices[0];
        let on = |(n, b): &(Pt, i64)| -> Vec<Pt> { self.vertices.iter().filter(|v| dot(n, v) == *b).cloned().collect() };
        let mut total = 0;
        for f in &self.ineqs {
            if dot(&f.0, c) == f.1 {
                continue;
            }
            let fv = on(f);
            match self.d {
                1 => total += (fv[0][0] - c[0]).abs(),
                2 => total += (sub(&fv[0], c)[0] * sub(&fv[1], c)[1] - sub(&fv[0], c)[1] * sub(&fv[1], c)[0]).abs(),
                _ => {
                    let apex = &fv[0];
                    for i in 0..fv.len() {
                        for j in i + 1..fv.len() {
                            let (u, w) = (&fv[i], &fv[j]);
                            if u == apex || w == apex {
                                continue;
                            }
                            let m = cross(&f.0, &sub(w, u));
                            let sides: Vec<i64> = fv.iter().map(|p| dot(&m, &sub(p, u)).signum()).collect();
                            if sides.iter().all(|&s| s <= 0) || sides.iter().all(|&s| s >= 0) {
                                let (a, b, e) = (sub(apex, c), sub(u, c), sub(w, c));
                                total += dot(&a, &cross(&b, &e)).abs();
                            }
                        }
                    }
                }
            }
        }
        total
    }

    pub fn volume(&self) -> Rational {
        let fact: i64 = (1..=self.d as i64).product();
        frac(self.scaled_volume(), fact)
    }

    pub fn scale(&self, k: i64) -> Hull {
        if k == 0 {
            return hull(&[vec![0; self.d]]);
        }
        hull(&self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect::<Vec<_>>())
    }

    pub fn plus(&self, other: &Hull) -> Hull {
        let pts: Vec<Pt> = self.vertices.iter().flat_map(|a| other.vertices.iter().map(move |b| add(a, b))).collect();
        hull(&pts)
    }

    /// Edge directions of the polytope, one per edge.
    pub fn edges(&self) -> Vec<(Pt, Pt)> {
        match self.dim {
            0 => Vec::new(),
            1 => vec![(self.vertices[0].clone(), self.vertices[1].clone())],
            2 if self.d == 2 => self
                .ineqs
                .iter()
                .map(|(n, b)| {
                    let on: Vec<&Pt> = self.vertices.iter().filter(|v| dot(n, v) == *b).collect();
                    (on[0].clone(), on[1].clone())
                })
                .collect(),
            _ => {
                let mut out = Vec::new();
                for i in 0..self.vertices.len() {
                    for j in i + 1..self.vertices.len() {
                        let (a, b) = (&self.vertices[i], &self.vertices[j]);
                        let tight: Vec<Pt> = self
                            .ineqs
                            .iter()
                            .filter(|(n, c)| dot(n, a) == *c && dot(n, b) == *c)
                            .map(|(n, _)| n.clone())
                            .collect();
                        if rank(&tight) == self.dim - 1 {
                            out.push((a.clone(), b.clone()));
                        }
                    }
                }
                out
            }
        }
    }
}

pub fn sum_all(d: usize, hs: &[&Hull]) -> Hull {
    hs.iter().fold(hull(&[vec![0; d]]), |acc, h| acc.plus(h))
}

pub fn ints(p: &Point) -> Pt {
    p.coords()
        .iter()
        .map(|x| {
            assert!(x.is_integer(), "oracle needs lattice points");
            i64::try_from(x.to_integer()).expect("small coordinates")
        })
        .collect()
}

pub fn of(p: &Polytope) -> Hull {
    hull(&p.vertices().iter().map(ints).collect::<Vec<_>>())
}

pub fn to_polytope(h: &Hull) -> Polytope {
    let pts: Vec<Point> = h.vertices.iter().map(|v| Point::from_ints(v)).collect();
    Polytope::hull(&pts).unwrap()
}

/// Oracle valuations, keyed like the library's built-ins.
pub fn eval(name: &str, h: &Hull) -> Rational {
    match name {
        "dvol" => int(h.count() as i64),
        "vol" => h.volume(),
        "euler" => int(1),
        "interior" => {
            let n = h.relint_count() as i64;
            int(if h.dim % 2 == 0 { n } else { -n })
        }
        _ => panic!("no oracle for valuation {name}"),
    }
}

/// Inclusion-exclusion over all subsets, with each summand optionally shifted
/// by a fixed polytope.
pub fn cm(name: &str, d: usize, hs: &[Hull], shift: Option<&Hull>) -> Rational {
    let r = hs.len();
    let mut total = int(0);
    for mask in 0u32..(1 << r) {
        let mut parts: Vec<&Hull> = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| &hs[i]).collect();
        if let Some(q) = shift {
            parts.push(q);
        }
        let v = eval(name, &sum_all(d, &parts));
        if (r - mask.count_ones() as usize) % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

/// `d! MV(P_1, ..., P_d)` from mixed differences of `vol(sum of 2 P_i)`:
/// a homogeneous degree-`d` polynomial has mixed difference `h_1 ... h_d`
/// times its square-free coefficient.
pub fn scaled_mixed_volume(hs: &[Hull]) -> Rational {
    let d = hs[0].d;
    assert_eq!(hs.len(), d);
    let doubled: Vec<Hull> = hs.iter().map(|h| h.scale(2)).collect();
    let fact: i64 = (1..=d as i64).product();
    let mut total = 0i64;
    for mask in 0u32..(1 << d) {
        let parts: Vec<&Hull> = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| &doubled[i]).collect();
        let v = sum_all(d, &parts).scaled_volume();
        total += if (d - mask.count_ones() as usize) % 2 == 0 { v } else { -v };
    }
    // total = d! * 2^d * (d! MV), as scaled_volume carries a factor d!
    frac(total, fact * (1 << d))
}

/// Distinct hulls of nonempty subsets of the lattice points of `[0, k]^d`.
pub fn box_subpolytopes(d: usize, k: i64) -> Vec<Hull> {
    let grid = hull(&(0..1usize << d).map(|m| (0..d).map(|i| if m >> i & 1 == 1 { k } else { 0 }).collect()).collect::<Vec<_>>())
        .points();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u64..(1 << grid.len()) {
        let pts: Vec<Pt> = (0..grid.len()).filter(|i| mask >> i & 1 == 1).map(|i| grid[i].clone()).collect();
        let h = hull(&pts);
        if seen.insert(h.vertices.clone()) {
            out.push(h);
        }
    }
    out
}

/// Largest set of segments with linearly independent directions and at most
/// one per owner, by exhausting owner-respecting choices.
pub fn brute_max_common(dirs: &[Pt], owners: &[usize]) -> usize {
    let blocks: BTreeSet<usize> = owners.iter().copied().collect();
    let blocks: Vec<Vec<usize>> =
        blocks.iter().map(|b| (0..dirs.len()).filter(|&i| owners[i] == *b).collect()).collect();
    fn go(blocks: &[Vec<usize>], dirs: &[Pt], chosen: &mut Vec<Pt>, best: &mut usize) {
        if rank(chosen) < chosen.len() {
            return;
        }
        *best = (*best).max(chosen.len());
        let Some((first, rest)) = blocks.split_first() else { return };
        go(rest, dirs, chosen, best);
        for &e in first {
            chosen.push(dirs[e].clone());
            go(rest, dirs, chosen, best);
            chosen.pop();
        }
    }
    let mut best = 0;
    go(&blocks, dirs, &mut Vec::new(), &mut best);
    best
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Compositions of `d` into `k` positive parts, by enumeration.
pub fn compositions(d: usize, k: usize) -> u64 {
    fn go(left: usize, parts: usize) -> u64 {
        if parts == 0 {
            return u64::from(left == 0);
        }
        (1..=left).map(|p| go(left - p, parts - 1)).sum()
    }
    go(d, k)
}

/// Scales a rational vector to an integer one with the same direction.
pub fn clear_denominators(v: &[Rational]) -> Pt {
    let l = v.iter().fold(1, |acc, x| lcm(acc, i64::try_from(x.denom().clone()).unwrap()));
    v.iter().map(|x| i64::try_from((x * Rational::from_integer(l.into())).to_integer()).unwrap()).collect()
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}
