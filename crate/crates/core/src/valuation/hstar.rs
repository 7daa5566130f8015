use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::rational::{binomial, format_rational, Rational};

use super::{check_lattice, Valuation};

/// Coefficients `h_0..h_r` with `phi(nP) = sum_i h_i binom(n + r - i, r)`,
/// `r = dim P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarVector {
    pub entries: Vec<Rational>,
}

impl HStarVector {
    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn evaluate(&self, n: u64) -> Rational {
        let r = self.dim() as i64;
        self.entries
            .iter()
            .enumerate()
            .map(|(i, h)| h * binomial(n as i64 + r - i as i64, r))
            .sum()
    }
}

/// Solves the unit lower-triangular system given by `phi(0P), ..., phi(rP)`
/// and checks the reconstruction at `n = r + 1`.
pub fn h_star_vector(phi: &dyn Valuation, p: &Polytope) -> Result<HStarVector> {
    check_lattice(phi, p)?;
    let r = p.dim();
    let values: Vec<Rational> = (0..=r as u64 + 1).map(|n| phi.eval(&p.dilate(n))).collect::<Result<_>>()?;
    let mut entries: Vec<Rational> = Vec::with_capacity(r + 1);
    for n in 0..=r {
        // binom(n + r - i, r) vanishes for i > n and equals 1 for i = n
        let known: Rational = entries
            .iter()
            .enumerate()
            .map(|(i, h)| h * binomial((n + r - i) as i64, r as i64))
            .sum();
        entries.push(&values[n] - known);
    }
    let h = HStarVector { entries };
    let check = h.evaluate(r as u64 + 1);
    if check != values[r + 1] {
        return Err(Error::Certificate(format!(
            "h-vector reconstruction at n = {} gives {} but phi = {}",
            r + 1,
            format_rational(&check),
            format_rational(&values[r + 1])
        )));
    }
    Ok(h)
}
