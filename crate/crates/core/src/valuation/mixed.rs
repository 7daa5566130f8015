use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{DilatedSums, Polytope};
use crate::rational::{binomial, Rational};

use super::{check_lattice, Valuation};

/// One inclusion-exclusion term `(-1)^(r-|I|) phi(P_I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmTerm {
    pub subset: Vec<usize>,
    pub sign: i8,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmTable {
    pub value: Rational,
    pub terms: Vec<CmTerm>,
}

fn check_inputs(phi: &dyn Valuation, ambient: usize, polys: &[Polytope]) -> Result<()> {
    for p in polys {
        if p.ambient_dim() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, found: p.ambient_dim() });
        }
        check_lattice(phi, p)?;
    }
    Ok(())
}

/// `P_I` for every subset `I` of `[r]`, indexed by bitmask.
fn subset_sums(ambient: usize, polys: &[Polytope]) -> Result<Vec<Polytope>> {
    let mut sums = vec![Polytope::origin(ambient)];
    for (i, p) in polys.iter().enumerate() {
        for mask in 0..(1usize << i) {
            let s = sums[mask].minkowski_sum(p)?;
            sums.push(s);
        }
    }
    Ok(sums)
}

/// Full inclusion-exclusion table of `CM_r phi(P_1, ..., P_r)`.
pub fn cm_table(phi: &dyn Valuation, ambient: usize, polys: &[Polytope]) -> Result<CmTable> {
    check_inputs(phi, ambient, polys)?;
    let r = polys.len();
    let sums = subset_sums(ambient, polys)?;
    let values: Vec<Rational> = sums.par_iter().map(|s| phi.eval(s)).collect::<Result<_>>()?;
    let mut value = Rational::zero();
    let mut terms = Vec::with_capacity(values.len());
    for (mask, v) in values.into_iter().enumerate() {
        let subset: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let sign: i8 = if (r - subset.len()) % 2 == 0 { 1 } else { -1 };
        if sign > 0 {
            value += &v;
        } else {
            value -= &v;
        }
        terms.push(CmTerm { subset, sign, value: v });
    }
    Ok(CmTable { value, terms })
}

/// `CM_r phi` in ambient dimension `ambient`; with no polytopes this is
/// `phi({0})`.
pub fn cm_in(phi: &dyn Valuation, ambient: usize, polys: &[Polytope]) -> Result<Rational> {
    Ok(cm_table(phi, ambient, polys)?.value)
}

/// `CM_r phi(P_1, ..., P_r)` for a nonempty list.
pub fn cm(phi: &dyn Valuation, polys: &[Polytope]) -> Result<Rational> {
    let first = polys.first().ok_or(Error::Empty("cm needs at least one polytope; use cm_in for r = 0"))?;
    cm_in(phi, first.ambient_dim(), polys)
}

/// `CM phi(P_1^{a_1}, ..., P_r^{a_r})`: each polytope repeated by its
/// multiplicity.
pub fn cm_multi(phi: &dyn Valuation, polys: &[Polytope], alpha: &[u32]) -> Result<Rational> {
    if polys.len() != alpha.len() {
        return Err(Error::InvalidArgument(format!(
            "{} polytopes but {} multiplicities",
            polys.len(),
            alpha.len()
        )));
    }
    let ambient = polys.first().ok_or(Error::Empty("cm_multi needs polytopes"))?.ambient_dim();
    let expanded: Vec<Polytope> =
        polys.iter().zip(alpha).flat_map(|(p, &a)| std::iter::repeat(p.clone()).take(a as usize)).collect();
    cm_in(phi, ambient, &expanded)
}

/// `CM(P_1..P_r) == CM(P_1+P_2, P_3..) - CM(P_1, P_3..) - CM(P_2, P_3..)`.
pub fn charac_recursion_check(phi: &dyn Valuation, polys: &[Polytope]) -> Result<bool> {
    if polys.len() < 2 {
        return Err(Error::InvalidArgument("recursion check needs at least two polytopes".into()));
    }
    let ambient = polys[0].ambient_dim();
    let lhs = cm_in(phi, ambient, polys)?;
    let rest = &polys[2..];
    let with = |head: Polytope| -> Result<Rational> {
        let mut v = vec![head];
        v.extend_from_slice(rest);
        cm_in(phi, ambient, &v)
    };
    let rhs = with(polys[0].minkowski_sum(&polys[1])?)? - with(polys[0].clone())? - with(polys[1].clone())?;
    Ok(lhs == rhs)
}

/// `phi(n_1 P_1 + ... + n_r P_r)` in the binomial basis:
/// `sum over alpha of c_alpha * prod binom(n_i, alpha_i)` with
/// `c_alpha = Delta^alpha f(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedPolynomial {
    pub arity: usize,
    /// `dim(P_1 + ... + P_r)`; coefficients with `|alpha|` above it vanish.
    pub degree_bound: usize,
    pub coefficients: BTreeMap<Vec<u32>, Rational>,
    /// The sampled values `f(n)` on `{0..D}^r`.
    pub grid: BTreeMap<Vec<u32>, Rational>,
}

impl MixedPolynomial {
    pub fn evaluate(&self, n: &[u32]) -> Rational {
        self.coefficients.iter().fold(Rational::zero(), |acc, (alpha, c)| {
            let basis = alpha
                .iter()
                .zip(n)
                .fold(Rational::one(), |b, (&a, &ni)| b * binomial(ni as i64, a as i64));
            acc + c * basis
        })
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Rational {
        self.coefficients.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    /// True when the binomial expansion reproduces every grid sample.
    pub fn reproduces_grid(&self) -> bool {
        self.grid.iter().all(|(n, v)| self.evaluate(n) == *v)
    }
}

fn grid_points(r: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=max).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn mixed_polynomial(phi: &dyn Valuation, polys: &[Polytope]) -> Result<MixedPolynomial> {
    let ambient = polys.first().ok_or(Error::Empty("mixed polynomial needs polytopes"))?.ambient_dim();
    check_inputs(phi, ambient, polys)?;
    let r = polys.len();
    let d = Polytope::sum_all(ambient, polys)?.dim();
    let points = grid_points(r, d as u32);
    let family = DilatedSums::new(ambient, polys)?;
    let values: Vec<Rational> = points
        .par_iter()
        .map(|n| phi.eval(&family.get(n)?))
        .collect::<Result<_>>()?;
    let grid: BTreeMap<Vec<u32>, Rational> = points.into_iter().zip(values).collect();
    let mut coefficients = BTreeMap::new();
    for alpha in grid.keys().filter(|a| a.iter().sum::<u32>() as usize <= d) {
        let mut c = Rational::zero();
        for beta in grid.keys().filter(|b| b.iter().zip(alpha).all(|(b, a)| b <= a)) {
            let weight = alpha
                .iter()
                .zip(beta)
                .fold(Rational::one(), |w, (&a, &b)| w * binomial(a as i64, b as i64));
            let gap: u32 = alpha.iter().zip(beta).map(|(a, b)| a - b).sum();
            let term = weight * &grid[beta];
            if gap % 2 == 0 {
                c += term;
            } else {
                c -= term;
            }
        }
        coefficients.insert(alpha.clone(), c);
    }
    Ok(MixedPolynomial { arity: r, degree_bound: d, coefficients, grid })
}
