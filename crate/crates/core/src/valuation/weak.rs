use num_traits::Signed;

use crate::error::Result;
use crate::geometry::Polytope;
use crate::lattice::euler_relint_value;
use crate::random::Sampler;
use crate::rational::Rational;

use super::Valuation;

/// A simplex `S` and facet `F` (absent for a 0-simplex, whose only facet is
/// empty) with `phi(relint S) + phi(relint F) < 0`.
#[derive(Clone, Debug)]
pub struct WeakWitness {
    pub simplex: Polytope,
    pub facet: Option<Polytope>,
    pub value: Rational,
}

#[derive(Clone, Debug)]
pub struct WeakMonotoneReport {
    pub trials: usize,
    pub violations: Vec<WeakWitness>,
}

impl WeakMonotoneReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Seeded search for violations of weak h*-monotonicity on random lattice
/// simplices of every dimension up to `dim` inside `[0,3]^dim`.
pub fn weak_hstar_monotone_check(
    phi: &dyn Valuation,
    trials: usize,
    dim: usize,
    seed: u64,
) -> Result<WeakMonotoneReport> {
    let mut sampler = Sampler::new(seed);
    let mut violations = Vec::new();
    for _ in 0..trials {
        let k = sampler.below(dim + 1);
        let simplex = sampler.lattice_simplex(dim, k, 3);
        let facet = if k == 0 {
            None
        } else {
            let skip = sampler.below(k + 1);
            let verts: Vec<_> =
                simplex.vertices().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v.clone()).collect();
            Some(Polytope::hull(&verts)?)
        };
        let mut value = euler_relint_value(phi, &simplex)?;
        if let Some(f) = &facet {
            value += euler_relint_value(phi, f)?;
        }
        if value.is_negative() {
            violations.push(WeakWitness { simplex, facet, value });
        }
    }
    Ok(WeakMonotoneReport { trials, violations })
}
