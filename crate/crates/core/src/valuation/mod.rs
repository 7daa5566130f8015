//! Valuations on polytopes and the combinatorial mixed valuations built from
//! them.
//!
//! A valuation is anything implementing [`Valuation`]; the built-ins live in
//! [`builtin`] and are looked up by name through a [`ValuationRegistry`].
//! Nothing about a valuation is trusted: [`conformance`] checks translation
//! invariance and the inclusion-exclusion property on seeded samples.

pub mod builtin;
pub mod conformance;
mod hstar;
mod mixed;
mod shift;
mod weak;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::rational::Rational;

pub use builtin::{Combination, DiscreteVolume, EulerCharacteristic, InteriorCount, Volume};
pub use hstar::{h_star_vector, HStarVector};
pub use mixed::{
    charac_recursion_check, cm, cm_in, cm_multi, cm_table, mixed_polynomial, CmTable, CmTerm, MixedPolynomial,
};
pub use shift::{shift_valuation, ShiftedValuation};
pub use weak::{weak_hstar_monotone_check, WeakMonotoneReport, WeakWitness};

/// Which polytopes a valuation accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeRequirement {
    /// Only polytopes with integral vertices.
    Integer,
    /// Any rational polytope.
    Any,
}

/// Structural claims a valuation makes about itself. Suites that depend on a
/// claim only run on valuations making it, and a false claim surfaces as a
/// property violation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Claims {
    /// `phi(relint S) + phi(relint F) >= 0` for simplices `S` and facets `F`.
    pub weakly_hstar_monotone: bool,
    /// `phi(relint S) >= 0` for every simplex, and `phi({0}) > 0`.
    pub combinatorially_positive: bool,
}

/// Translation-invariant, finitely additive map from polytopes to exact
/// rationals with `phi(empty) = 0`.
pub trait Valuation: Send + Sync {
    fn name(&self) -> &str;

    fn lattice(&self) -> LatticeRequirement {
        LatticeRequirement::Any
    }

    fn claims(&self) -> Claims {
        Claims::default()
    }

    /// Value on a nonempty polytope.
    fn eval(&self, p: &Polytope) -> Result<Rational>;

    /// Value on a polytope or on the empty set.
    fn eval_set(&self, p: Option<&Polytope>) -> Result<Rational> {
        match p {
            None => Ok(Rational::zero()),
            Some(p) => self.eval(p),
        }
    }
}

impl fmt::Debug for dyn Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation({})", self.name())
    }
}

/// Rejects non-lattice polytopes for valuations defined on lattice polytopes
/// only.
pub fn check_lattice(phi: &dyn Valuation, p: &Polytope) -> Result<()> {
    if phi.lattice() == LatticeRequirement::Integer {
        if let Some(v) = p.vertices().iter().find(|v| !v.is_integral()) {
            return Err(Error::LatticeMismatch { valuation: phi.name().to_string(), vertex: v.to_string() });
        }
    }
    Ok(())
}

/// Named valuations selectable at runtime.
#[derive(Clone, Default)]
pub struct ValuationRegistry {
    entries: BTreeMap<String, Arc<dyn Valuation>>,
}

impl ValuationRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `dvol`, `vol`, `euler` and `interior`.
    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        for v in builtin_valuations() {
            reg.register(v);
        }
        reg
    }

    /// Registers under the valuation's own name, replacing any previous entry.
    pub fn register(&mut self, v: Arc<dyn Valuation>) {
        self.entries.insert(v.name().to_string(), v);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Valuation>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Unknown { kind: "valuation", name: name.to_string() })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Valuation>> {
        self.entries.values()
    }
}

pub fn builtin_valuations() -> Vec<Arc<dyn Valuation>> {
    vec![Arc::new(DiscreteVolume), Arc::new(Volume), Arc::new(EulerCharacteristic), Arc::new(InteriorCount)]
}
