use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::geometry::Polytope;
use crate::lattice::{lattice_count, relint_count};
use crate::rational::Rational;

use super::{check_lattice, Claims, LatticeRequirement, Valuation};

/// Discrete volume `E(P) = |P ∩ Z^d|`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DiscreteVolume;

impl Valuation for DiscreteVolume {
    fn name(&self) -> &str {
        "dvol"
    }

    fn lattice(&self) -> LatticeRequirement {
        LatticeRequirement::Integer
    }

    fn claims(&self) -> Claims {
        Claims { weakly_hstar_monotone: true, combinatorially_positive: true }
    }

    fn eval(&self, p: &Polytope) -> Result<Rational> {
        check_lattice(self, p)?;
        Ok(Rational::from_integer(lattice_count(p).into()))
    }
}

/// Euclidean volume in the ambient space.
#[derive(Clone, Copy, Debug, Default)]
pub struct Volume;

impl Valuation for Volume {
    fn name(&self) -> &str {
        "vol"
    }

    fn claims(&self) -> Claims {
        Claims { weakly_hstar_monotone: true, combinatorially_positive: false }
    }

    fn eval(&self, p: &Polytope) -> Result<Rational> {
        Ok(p.volume())
    }
}

/// Euler characteristic: 1 on every nonempty polytope.
#[derive(Clone, Copy, Debug, Default)]
pub struct EulerCharacteristic;

impl Valuation for EulerCharacteristic {
    fn name(&self) -> &str {
        "euler"
    }

    fn claims(&self) -> Claims {
        Claims { weakly_hstar_monotone: true, combinatorially_positive: false }
    }

    fn eval(&self, _p: &Polytope) -> Result<Rational> {
        Ok(Rational::one())
    }
}

/// Signed interior count `(-1)^dim P · |relint P ∩ Z^d|`.
///
/// The unsigned relative-interior count is not additive (split `[0,2]` at 1);
/// the sign makes it the dual of the discrete volume under the relint
/// expansion, which is a valuation.
#[derive(Clone, Copy, Debug, Default)]
pub struct InteriorCount;

impl Valuation for InteriorCount {
    fn name(&self) -> &str {
        "interior"
    }

    fn lattice(&self) -> LatticeRequirement {
        LatticeRequirement::Integer
    }

    fn eval(&self, p: &Polytope) -> Result<Rational> {
        check_lattice(self, p)?;
        let n = Rational::from_integer(relint_count(p).into());
        Ok(if p.dim() % 2 == 0 { n } else { -n })
    }
}

/// Rational linear combination of valuations.
#[derive(Clone)]
pub struct Combination {
    name: String,
    terms: Vec<(Rational, Arc<dyn Valuation>)>,
    claims: Claims,
}

impl Combination {
    pub fn new(name: impl Into<String>, terms: Vec<(Rational, Arc<dyn Valuation>)>) -> Self {
        Combination { name: name.into(), terms, claims: Claims::default() }
    }

    /// Attaches claims, true or not; used to build negative controls.
    pub fn claiming(mut self, claims: Claims) -> Self {
        self.claims = claims;
        self
    }
}

impl Valuation for Combination {
    fn name(&self) -> &str {
        &self.name
    }

    fn lattice(&self) -> LatticeRequirement {
        if self.terms.iter().any(|(_, v)| v.lattice() == LatticeRequirement::Integer) {
            LatticeRequirement::Integer
        } else {
            LatticeRequirement::Any
        }
    }

    fn claims(&self) -> Claims {
        self.claims
    }

    fn eval(&self, p: &Polytope) -> Result<Rational> {
        self.terms.iter().try_fold(Rational::zero(), |acc, (c, v)| Ok(acc + c * v.eval(p)?))
    }
}
