use std::sync::Arc;

use crate::error::Result;
use crate::geometry::Polytope;
use crate::rational::Rational;

use super::{Claims, LatticeRequirement, Valuation};

/// `P -> phi(P + Q)` for a fixed nonempty `Q`.
#[derive(Clone)]
pub struct ShiftedValuation {
    inner: Arc<dyn Valuation>,
    shift: Polytope,
    name: String,
}

pub fn shift_valuation(phi: Arc<dyn Valuation>, q: Polytope) -> ShiftedValuation {
    let name = format!("{}+{:?}", phi.name(), q);
    ShiftedValuation { inner: phi, shift: q, name }
}

impl ShiftedValuation {
    pub fn shift(&self) -> &Polytope {
        &self.shift
    }
}

impl Valuation for ShiftedValuation {
    fn name(&self) -> &str {
        &self.name
    }

    fn lattice(&self) -> LatticeRequirement {
        self.inner.lattice()
    }

    fn claims(&self) -> Claims {
        Claims::default()
    }

    fn eval(&self, p: &Polytope) -> Result<Rational> {
        self.inner.eval(&p.minkowski_sum(&self.shift)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::valuation::{cm, cm_in, DiscreteVolume, EulerCharacteristic};

    #[test]
    fn shift_by_origin_is_identity() {
        let phi = shift_valuation(Arc::new(DiscreteVolume), Polytope::origin(2));
        let tri = Polytope::from_ints(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(phi.eval(&tri).unwrap(), DiscreteVolume.eval(&tri).unwrap());
    }

    #[test]
    fn shift_identity_on_segments() {
        let e1 = Polytope::from_ints(&[[0, 0], [1, 0]]);
        let q = Polytope::from_ints(&[[0, 0], [0, 1]]);
        let shifted = shift_valuation(Arc::new(DiscreteVolume), q.clone());
        let lhs = cm(&shifted, &[e1.clone()]).unwrap();
        assert_eq!(lhs, int(2));
        let rhs = cm(&DiscreteVolume, &[e1.clone(), q]).unwrap() + cm(&DiscreteVolume, &[e1]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_is_shift_invariant() {
        let q = Polytope::from_ints(&[[0, 0], [3, 1]]);
        let shifted = shift_valuation(Arc::new(EulerCharacteristic), q);
        assert_eq!(cm_in(&shifted, 2, &[]).unwrap(), int(1));
    }
}
