//! Seeded conformance suite for the [`Valuation`] contract.
//!
//! Checks `phi(P + t) = phi(P)` for random integer `t` and the
//! inclusion-exclusion identity on convex-union pairs obtained by cutting a
//! random polytope with an integral hyperplane.

use crate::error::Result;
use crate::geometry::Polytope;
use crate::random::Sampler;
use crate::rational::{format_rational, int, Rational};

use super::{LatticeRequirement, Valuation};

#[derive(Clone, Debug)]
pub struct ContractViolation {
    pub property: &'static str,
    pub polytope: Polytope,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct ConformanceReport {
    pub translation_checks: usize,
    pub additivity_checks: usize,
    pub violations: Vec<ContractViolation>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Splits `p` by `<a, x> = c` into `(P', P'', P' ∩ P'')`, or `None` if the cut
/// misses the interior or, for lattice valuations, creates non-integral
/// vertices.
pub fn hyperplane_split(
    p: &Polytope,
    a: &[i64],
    c: i64,
    lattice_only: bool,
) -> Option<(Polytope, Polytope, Polytope)> {
    let a: Vec<Rational> = a.iter().map(|&x| int(x)).collect();
    let neg: Vec<Rational> = a.iter().map(|x| -x).collect();
    let c = int(c);
    let below = p.clip(&a, &c)?;
    let above = p.clip(&neg, &-c.clone())?;
    let middle = below.clip(&neg, &-c)?;
    if below == *p || above == *p {
        return None;
    }
    if lattice_only && ![&below, &above, &middle].iter().all(|q| q.is_lattice()) {
        return None;
    }
    Some((below, above, middle))
}

pub fn check_valuation(phi: &dyn Valuation, dim: usize, trials: usize, seed: u64) -> Result<ConformanceReport> {
    let mut sampler = Sampler::new(seed);
    let lattice_only = phi.lattice() == LatticeRequirement::Integer;
    let mut report = ConformanceReport::default();
    for _ in 0..trials {
        let p = sampler.lattice_polytope(dim, 3, 6);
        let t = sampler.translation(dim, 5);
        let (before, after) = (phi.eval(&p)?, phi.eval(&p.translate(&t))?);
        report.translation_checks += 1;
        if before != after {
            report.violations.push(ContractViolation {
                property: "translation invariance",
                polytope: p.clone(),
                detail: format!(
                    "phi(P) = {} but phi(P + {t}) = {}",
                    format_rational(&before),
                    format_rational(&after)
                ),
            });
        }
        if p.dim() == 0 {
            continue;
        }
        for _ in 0..20 {
            let a = sampler.direction(dim, 1);
            let values: Vec<i64> = p
                .vertices()
                .iter()
                .map(|v| v.coords().iter().zip(&a).map(|(x, &y)| x.to_integer() * y).sum::<num_bigint::BigInt>())
                .map(|x| i64::try_from(x).expect("small coordinates"))
                .collect();
            let (lo, hi) = (*values.iter().min().unwrap(), *values.iter().max().unwrap());
            if hi - lo < 2 {
                continue;
            }
            let c = lo + 1 + sampler.below((hi - lo - 1) as usize) as i64;
            let Some((below, above, middle)) = hyperplane_split(&p, &a, c, lattice_only) else {
                continue;
            };
            let whole = phi.eval(&p)?;
            let parts = phi.eval(&below)? + phi.eval(&above)? - phi.eval(&middle)?;
            report.additivity_checks += 1;
            if whole != parts {
                report.violations.push(ContractViolation {
                    property: "valuation property",
                    polytope: p.clone(),
                    detail: format!(
                        "cut by {a:?}·x = {c}: phi(P) = {} but phi(P') + phi(P'') - phi(P'∩P'') = {}",
                        format_rational(&whole),
                        format_rational(&parts)
                    ),
                });
            }
            break;
        }
    }
    Ok(report)
}
