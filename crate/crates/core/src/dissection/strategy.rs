//! Named dissection constructions behind one trait, so the CLI and the test
//! suites can select them by mode string.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::lattice::{lattice_count, HalfOpenPolytope};
use crate::rational::{binomial, format_rational};

use super::{
    boxcell_dissection, composition_count, dilated_cell_counts_at, fine_mixed_dissection, partition_check,
    staircase_dissection, Dissection, HalfOpenRule,
};

/// Inputs shared by all strategies; each reads what it needs.
#[derive(Clone, Debug)]
pub struct DissectInput {
    pub polytopes: Vec<Polytope>,
    pub dim: usize,
    pub dilate: u32,
    pub seed: u64,
}

/// One checked identity: `expected` against `actual`, both exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl Certificate {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Certificate { name: name.into(), expected: expected.to_string(), actual: actual.to_string() }
    }

    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug)]
pub struct DissectOutcome {
    pub dissection: Dissection,
    pub certificates: Vec<Certificate>,
}

impl DissectOutcome {
    pub fn holds(&self) -> bool {
        self.certificates.iter().all(Certificate::holds)
    }
}

pub trait DissectionStrategy: Send + Sync {
    fn name(&self) -> &str;
    fn build(&self, input: &DissectInput) -> Result<DissectOutcome>;
}

fn volume_certificate(d: &Dissection) -> Certificate {
    let (cells, target) = d.relative_volumes();
    Certificate::new("volume sum", format_rational(&target), format_rational(&cells))
}

/// Makes the cells half-open from a generic interior point and checks the
/// point-by-point partition of the closed target.
fn closed_partition(d: &mut Dissection, seed: u64) -> Result<Vec<Certificate>> {
    let q = d.generic_point(seed)?;
    let rule = HalfOpenRule::Point(q);
    d.make_half_open(&rule)?;
    let report = d.certify(&rule)?;
    Ok(vec![
        Certificate::new("closed count", lattice_count(&d.target), report.cell_sum),
        Certificate::new("double counted", 0, report.double_counted.len()),
        Certificate::new("missing", 0, report.missing.len()),
    ])
}

/// Certificates recomputable from a dissection alone, using the half-open
/// state recorded on its cells: these survive a JSON round trip.
pub fn stored_certificates(d: &Dissection) -> Vec<Certificate> {
    let cells: Vec<HalfOpenPolytope> = d.cells.iter().map(|c| c.half_open()).collect();
    let report = partition_check(&HalfOpenPolytope::closed(d.target.clone()), &cells);
    vec![
        Certificate::new("stored count", report.target_points, report.cell_sum),
        Certificate::new("stored double counted", 0, report.double_counted.len()),
        Certificate::new("stored missing", 0, report.missing.len()),
        volume_certificate(d),
    ]
}

struct Boxcell;

impl DissectionStrategy for Boxcell {
    fn name(&self) -> &str {
        "boxcell"
    }

    fn build(&self, input: &DissectInput) -> Result<DissectOutcome> {
        let (d, n) = (input.dim, input.dilate.max(1));
        let mut bc = boxcell_dissection(d, n)?;
        let mut certificates = vec![Certificate::new(
            "closed total",
            format_rational(&binomial(n as i64 + d as i64, d as i64)),
            lattice_count(&bc.dissection.target),
        )];
        for (k, count) in bc.census() {
            let expected = binomial(n as i64, k as i64).to_integer() * composition_count(d, k);
            certificates.push(Certificate::new(format!("cells with {k} blocks"), expected, count));
        }
        let u = bc.dissection.generic_direction(input.seed)?;
        let rule = HalfOpenRule::Direction(u);
        let report = bc.dissection.certify(&rule)?;
        certificates.push(Certificate::new("half-open count", report.target_points, report.cell_sum));
        certificates.push(Certificate::new("half-open double counted", 0, report.double_counted.len()));
        certificates.push(Certificate::new("half-open missing", 0, report.missing.len()));
        certificates.extend(closed_partition(&mut bc.dissection, input.seed)?);
        certificates.push(volume_certificate(&bc.dissection));
        Ok(DissectOutcome { dissection: bc.dissection, certificates })
    }
}

struct Staircase;

impl DissectionStrategy for Staircase {
    fn name(&self) -> &str {
        "staircase"
    }

    fn build(&self, input: &DissectInput) -> Result<DissectOutcome> {
        let [s1, s2] = input.polytopes.as_slice() else {
            return Err(Error::InvalidArgument("staircase needs exactly two simplices".into()));
        };
        let mut d = staircase_dissection(s1, s2)?;
        let expected = binomial((s1.dim() + s2.dim()) as i64, s1.dim() as i64);
        let mut certificates = vec![Certificate::new("cell count", format_rational(&expected), d.cells.len())];
        certificates.extend(closed_partition(&mut d, input.seed)?);
        certificates.push(volume_certificate(&d));
        Ok(DissectOutcome { dissection: d, certificates })
    }
}

struct Cayley;

impl DissectionStrategy for Cayley {
    fn name(&self) -> &str {
        "cayley"
    }

    fn build(&self, input: &DissectInput) -> Result<DissectOutcome> {
        let mut d = fine_mixed_dissection(&input.polytopes)?;
        let q = d.generic_point(input.seed)?;
        let r = input.polytopes.len();
        let mut certificates = Vec::new();
        let ambient = d.target.ambient_dim();
        for n in [vec![1u32; r], vec![input.dilate; r]] {
            let counts = dilated_cell_counts_at(&d, &n, &q)?;
            let dil: Vec<Polytope> = input.polytopes.iter().map(|p| p.dilate(n[0] as u64)).collect();
            let target = Polytope::sum_all(ambient, &dil)?;
            let label = format!("E at n = {:?}", n);
            certificates.push(Certificate::new(label, lattice_count(&target), counts.total));
        }
        let cylinders = d.cells.iter().filter(|c| c.is_cylinder()).count();
        certificates.push(Certificate::new("cylinder cells", d.cells.len(), cylinders));
        d.make_half_open(&HalfOpenRule::Point(q))?;
        let cells: Vec<HalfOpenPolytope> = d.cells.iter().map(|c| c.half_open()).collect();
        let report = partition_check(&HalfOpenPolytope::closed(d.target.clone()), &cells);
        certificates.push(Certificate::new("double counted", 0, report.double_counted.len()));
        certificates.push(Certificate::new("missing", 0, report.missing.len()));
        certificates.push(volume_certificate(&d));
        Ok(DissectOutcome { dissection: d, certificates })
    }
}

#[derive(Clone)]
pub struct DissectionRegistry {
    entries: BTreeMap<String, Arc<dyn DissectionStrategy>>,
}

impl Default for DissectionRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl DissectionRegistry {
    pub fn new() -> Self {
        DissectionRegistry { entries: BTreeMap::new() }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::new();
        r.register(Arc::new(Boxcell));
        r.register(Arc::new(Staircase));
        r.register(Arc::new(Cayley));
        r
    }

    pub fn register(&mut self, s: Arc<dyn DissectionStrategy>) {
        self.entries.insert(s.name().to_string(), s);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn DissectionStrategy>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Unknown { kind: "dissection mode", name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(polytopes: Vec<Polytope>, dim: usize, dilate: u32) -> DissectInput {
        DissectInput { polytopes, dim, dilate, seed: 42 }
    }

    #[test]
    fn builtins_certify() {
        let reg = DissectionRegistry::with_builtins();
        assert_eq!(reg.names(), vec!["boxcell", "cayley", "staircase"]);
        let out = reg.get("boxcell").unwrap().build(&input(vec![], 2, 2)).unwrap();
        assert_eq!(out.dissection.cells.len(), 3);
        assert!(out.holds(), "{:?}", out.certificates);
        assert_eq!(out.certificates[0].actual, "6");

        let segs = vec![Polytope::from_ints(&[[0, 0], [1, 0]]), Polytope::from_ints(&[[0, 0], [0, 1]])];
        let out = reg.get("staircase").unwrap().build(&input(segs, 2, 1)).unwrap();
        assert_eq!(out.dissection.cells.len(), 2);
        assert!(out.holds(), "{:?}", out.certificates);

        let ts = vec![Polytope::from_ints(&[[0, 0], [1, 0], [0, 1]]), Polytope::from_ints(&[[0, 0], [1, 0]])];
        let out = reg.get("cayley").unwrap().build(&input(ts, 2, 3)).unwrap();
        assert!(out.holds(), "{:?}", out.certificates);
        assert_eq!(out.certificates[0].actual, "5");
        assert!(reg.get("nope").is_err());
        assert!(stored_certificates(&out.dissection).iter().all(Certificate::holds));
    }
}
