//! Seeded property suites shared by the command-line `verify` command and
//! the test targets.
//!
//! Trial `i` of a suite draws from its own random stream, so trials run in
//! parallel and the outcome does not depend on scheduling. A suite reports
//! the first failing trial by index.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::dissection::{
    boxcell_dissection, composition_count, decompose, dilated_cell_counts_at, dilated_partition_check,
    direction_for_point, fine_mixed_dissection, half_open_by_direction, half_open_by_point,
    mixed_difference_certificate, partition_check, placing_triangulation, staircase_dissection, staircase_refine,
    DissectInput, DissectionRegistry, HalfOpenRule, MixedCell,
};
use crate::error::Result;
use crate::geometry::{Point, Polytope};
use crate::lattice::{lattice_count, lattice_points, relint_count};
use crate::linalg;
use crate::positivity::{
    candidate_segments, cylinder_lower_bound, decide_positive, max_common_independent, LinearMatroid, Matroid,
    PartitionMatroid,
};
use crate::random::Sampler;
use crate::rational::{binomial, format_rational, int, Rational};
use crate::valuation::conformance::{check_valuation, hyperplane_split};
use crate::valuation::{
    charac_recursion_check, cm, mixed_polynomial, shift_valuation, weak_hstar_monotone_check, Combination,
    DiscreteVolume, LatticeRequirement, Valuation, ValuationRegistry, Volume,
};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Largest ambient dimension sampled.
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { dim: 3, trials: 200, seed: crate::random::DEFAULT_SEED }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub checks: u64,
    pub counterexample: Option<String>,
    /// Report-only suites never fail; their findings go to `notes`.
    pub report_only: bool,
    pub notes: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.report_only || self.counterexample.is_none()
    }
}

enum Outcome {
    Pass(u64),
    Skip,
    Fail(String),
}

type SuiteFn = fn(&VerifyConfig, &ValuationRegistry) -> Result<SuiteResult>;

const SUITES: &[(&str, SuiteFn)] = &[
    ("mixed-volume-identity", mixed_volume_identity),
    ("vanishing", vanishing),
    ("nonnegative-monotone", nonnegative_monotone),
    ("positivity-equivalence", positivity_equivalence),
    ("cylinder-bound", cylinder_bound),
    ("positivity-monotone", positivity_monotone),
    ("boxcell", boxcell),
    ("fine-mixed", fine_mixed),
    ("difference", difference),
    ("binomial-basis", binomial_basis),
    ("shift-identity", shift_identity),
    ("matroid", matroid),
    ("planar-proportional", planar_proportional),
    ("recursion", recursion),
    ("symmetry", symmetry),
    ("multilinear", multilinear),
    ("valuation-contract", valuation_contract),
    ("relint", relint),
    ("weak-hstar", weak_hstar),
    ("cm-monotone", cm_monotone),
    ("half-open", half_open),
    ("chain", chain),
    ("placing", placing),
    ("staircase", staircase),
    ("monotone-search", monotone_search),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(name: &str, cfg: &VerifyConfig, registry: &ValuationRegistry) -> Result<SuiteResult> {
    let (_, f) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| crate::Error::Unknown { kind: "suite", name: name.to_string() })?;
    f(cfg, registry)
}

pub fn run_all(cfg: &VerifyConfig, registry: &ValuationRegistry) -> Result<Vec<SuiteResult>> {
    SUITES.iter().map(|(_, f)| f(cfg, registry)).collect()
}

fn salt(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn run_trials<F>(name: &str, cfg: &VerifyConfig, trials: usize, f: F) -> SuiteResult
where
    F: Fn(usize, &mut Sampler) -> Result<Outcome> + Sync,
{
    let base = cfg.seed ^ salt(name);
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut s = Sampler::stream(base, i as u64);
            f(i, &mut s).unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")))
        })
        .collect();
    let mut result = SuiteResult {
        name: name.to_string(),
        checks: 0,
        counterexample: None,
        report_only: false,
        notes: Vec::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass(k) => result.checks += k,
            Outcome::Skip => {}
            Outcome::Fail(msg) => {
                result.counterexample = Some(format!("trial {i}: {msg}"));
                break;
            }
        }
    }
    result
}

fn dim_for(cfg: &VerifyConfig, i: usize) -> usize {
    1 + i % cfg.dim.max(1)
}

fn show(polys: &[Polytope]) -> String {
    polys.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(", ")
}

fn fr(r: &Rational) -> String {
    format_rational(r)
}

fn lattice_ok(phi: &dyn Valuation) -> bool {
    phi.lattice() == LatticeRequirement::Integer
}

fn valuations(reg: &ValuationRegistry) -> Vec<Arc<dyn Valuation>> {
    reg.iter().cloned().collect()
}

fn dilated_sum(polys: &[Polytope], n: &[u32]) -> Result<Polytope> {
    let parts: Vec<Polytope> = polys.iter().zip(n).map(|(p, &k)| p.dilate(k as u64)).collect();
    Polytope::sum_all(polys[0].ambient_dim(), &parts)
}

fn mixed_volume_identity(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    let top = cfg.dim.max(2);
    Ok(run_trials("mixed-volume-identity", cfg, cfg.trials, |i, s| {
        let d = 2 + i % (top - 1);
        let polys: Vec<Polytope> = (0..d).map(|_| s.lattice_polytope(d, 3, 5)).collect();
        let discrete = cm(&DiscreteVolume, &polys)?;
        let continuous = cm(&Volume, &polys)?;
        let mv = mixed_polynomial(&Volume, &polys)?.coefficient(&vec![1; d]);
        if discrete != continuous || continuous != mv {
            return Ok(Outcome::Fail(format!(
                "{}: cm(dvol) = {}, cm(vol) = {}, d!·MV = {}",
                show(&polys),
                fr(&discrete),
                fr(&continuous),
                fr(&mv)
            )));
        }
        Ok(Outcome::Pass(1))
    }))
}

fn vanishing(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals = valuations(reg);
    Ok(run_trials("vanishing", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = d + 1 + (i / cfg.dim.max(1)) % 2;
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 3, 4)).collect();
        for phi in &vals {
            let v = cm(phi.as_ref(), &polys)?;
            if !v.is_zero() {
                return Ok(Outcome::Fail(format!("{}: cm_{r} = {} on {}", phi.name(), fr(&v), show(&polys))));
            }
        }
        Ok(Outcome::Pass(vals.len() as u64))
    }))
}

/// Random `P_i ⊆ Q_i` with `r <= d`.
fn nested(s: &mut Sampler, d: usize, r: usize) -> (Vec<Polytope>, Vec<Polytope>) {
    let outer: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 3, 5)).collect();
    let inner: Vec<Polytope> = outer.iter().map(|q| s.lattice_subpolytope(q)).collect();
    (inner, outer)
}

fn nonnegative_monotone(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("nonnegative-monotone", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(d);
        let (p, q) = nested(s, d, r);
        let (a, b) = (cm(&DiscreteVolume, &p)?, cm(&DiscreteVolume, &q)?);
        if a.is_negative() || a > b {
            return Ok(Outcome::Fail(format!(
                "P = [{}] ⊆ Q = [{}] but cm(P) = {}, cm(Q) = {}",
                show(&p),
                show(&q),
                fr(&a),
                fr(&b)
            )));
        }
        Ok(Outcome::Pass(1))
    }))
}

fn positivity_equivalence(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("positivity-equivalence", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(d + 1);
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 2, 4)).collect();
        let decided = decide_positive(&DiscreteVolume, &polys)?.positive;
        let value = cm(&DiscreteVolume, &polys)?;
        if decided != value.is_positive() {
            return Ok(Outcome::Fail(format!("{}: decision {decided} but cm = {}", show(&polys), fr(&value))));
        }
        Ok(Outcome::Pass(1))
    }))
}

fn cylinder_bound(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("cylinder-bound", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(d);
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 2, 5)).collect();
        let value = cm(&DiscreteVolume, &polys)?;
        let bound = cylinder_lower_bound(&polys).bound;
        if value < int(bound as i64) || (value.is_positive() && value < int(1)) {
            return Ok(Outcome::Fail(format!("{}: cm = {} below bound {bound}", show(&polys), fr(&value))));
        }
        Ok(Outcome::Pass(1))
    }))
}

fn positivity_monotone(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("positivity-monotone", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(d);
        let (p, q) = nested(s, d, r);
        if decide_positive(&DiscreteVolume, &p)?.positive && !decide_positive(&DiscreteVolume, &q)?.positive {
            return Ok(Outcome::Fail(format!("positive on [{}] but not on larger [{}]", show(&p), show(&q))));
        }
        Ok(Outcome::Pass(1))
    }))
}

/// Partition, census and binomial structure of the box-cell dissections of
/// the dilated order simplex, `n <= 4`.
pub fn boxcell_report(d: usize, seed: u64) -> Result<std::result::Result<u64, String>> {
    const MAX_N: u32 = 4;
    let reg = DissectionRegistry::with_builtins();
    let strategy = reg.get("boxcell")?;
    let mut checks = 0;
    let largest = boxcell_dissection(d, MAX_N)?;
    let u = largest.dissection.generic_direction(seed)?;
    let mut z: Vec<Option<Rational>> = vec![None; d + 1];
    for n in 1..=MAX_N {
        let out = strategy.build(&DissectInput { polytopes: Vec::new(), dim: d, dilate: n, seed })?;
        if let Some(c) = out.certificates.iter().find(|c| !c.holds()) {
            return Ok(Err(format!("d = {d}, n = {n}: {} expected {} got {}", c.name, c.expected, c.actual)));
        }
        checks += out.certificates.len() as u64;
        let bc = boxcell_dissection(d, n)?;
        let rule = HalfOpenRule::Direction(u.clone());
        let report = bc.dissection.certify(&rule)?;
        if !report.holds() {
            return Ok(Err(format!("d = {d}, n = {n}: half-open partition fails: {report:?}")));
        }
        let mut sums = vec![0u64; d + 1];
        for (info, count) in bc.info.iter().zip(&report.per_cell) {
            sums[info.block_count()] += count;
        }
        for k in 1..=d.min(n as usize) {
            let zk = int(sums[k] as i64) / binomial(n as i64, k as i64);
            match &z[k] {
                None => z[k] = Some(zk),
                Some(prev) if *prev != zk => {
                    return Ok(Err(format!("d = {d}: block count {k} gives {} at n = {n} but {} before", fr(&zk), fr(prev))));
                }
                _ => {}
            }
            checks += 1;
        }
        for (k, count) in bc.census() {
            let expected = binomial(n as i64, k as i64).to_integer() * composition_count(d, k);
            if expected != count.into() {
                return Ok(Err(format!("d = {d}, n = {n}: {count} cells with {k} blocks")));
            }
        }
    }
    Ok(Ok(checks))
}

fn boxcell(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    let dims = cfg.dim.max(1);
    Ok(run_trials("boxcell", cfg, dims, |i, _| {
        Ok(match boxcell_report(i + 1, cfg.seed)? {
            Ok(k) => Outcome::Pass(k),
            Err(msg) => Outcome::Fail(msg),
        })
    }))
}

fn random_scaling(s: &mut Sampler, r: usize) -> Vec<u32> {
    (0..r).map(|_| s.below(4) as u32).collect()
}

fn fine_mixed(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("fine-mixed", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(3);
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 2, 4)).collect();
        let dis = fine_mixed_dissection(&polys)?;
        dis.check_structure()?;
        if let Some(c) = dis.cells.iter().find(|c| !c.is_cylinder()) {
            return Ok(Outcome::Fail(format!("{}: cell {:?} is not a cylinder", show(&polys), c.cell)));
        }
        let q = dis.generic_point(s.below(1 << 30) as u64)?;
        let mut checks = 0;
        for k in 0..3 {
            let n = if k == 0 { vec![1; r] } else { random_scaling(s, r) };
            let counts = dilated_cell_counts_at(&dis, &n, &q)?;
            let expected = lattice_count(&dilated_sum(&polys, &n)?);
            if counts.total != expected {
                return Ok(Outcome::Fail(format!(
                    "{} at n = {n:?}: cells sum to {} but E = {expected}",
                    show(&polys),
                    counts.total
                )));
            }
            checks += 1;
        }
        let n = random_scaling(s, r);
        let report = dilated_partition_check(&dis, &polys, &n, &q)?;
        if !report.holds() {
            return Ok(Outcome::Fail(format!("{} at n = {n:?}: partition fails {report:?}", show(&polys))));
        }
        Ok(Outcome::Pass(checks + 1))
    }))
}

fn difference(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("difference", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(2);
        let (p, q) = nested(s, d, r);
        let (sp, sq) = (Polytope::sum_all(d, &p)?, Polytope::sum_all(d, &q)?);
        if sp.dim() != sq.dim() {
            return Ok(Outcome::Skip);
        }
        let cert = mixed_difference_certificate(&p, &q, s.below(1 << 30) as u64)?;
        for _ in 0..3 {
            let n = random_scaling(s, r);
            let chk = cert.check(&n)?;
            if !chk.holds() {
                return Ok(Outcome::Fail(format!("P = [{}] ⊆ Q = [{}]: {chk:?}", show(&p), show(&q))));
            }
        }
        Ok(Outcome::Pass(3))
    }))
}

fn binomial_basis(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals = valuations(reg);
    Ok(run_trials("binomial-basis", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(2);
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 2, 4)).collect();
        for phi in &vals {
            let mp = mixed_polynomial(phi.as_ref(), &polys)?;
            if !mp.reproduces_grid() {
                return Ok(Outcome::Fail(format!("{}: grid not reproduced on {}", phi.name(), show(&polys))));
            }
            let out = vec![mp.degree_bound as u32 + 1 + s.below(2) as u32; r];
            let direct = phi.eval(&dilated_sum(&polys, &out)?)?;
            if mp.evaluate(&out) != direct {
                return Ok(Outcome::Fail(format!(
                    "{}: extrapolation at {out:?} gives {} but phi = {} on {}",
                    phi.name(),
                    fr(&mp.evaluate(&out)),
                    fr(&direct),
                    show(&polys)
                )));
            }
            if mp.coefficient(&vec![1; r]) != cm(phi.as_ref(), &polys)? {
                return Ok(Outcome::Fail(format!("{}: top coefficient differs from cm on {}", phi.name(), show(&polys))));
            }
            let bound = mp.degree_bound as u32;
            if mp.coefficients.iter().any(|(a, c)| a.iter().sum::<u32>() > bound && !c.is_zero()) {
                return Ok(Outcome::Fail(format!("{}: coefficient above the degree bound on {}", phi.name(), show(&polys))));
            }
        }
        Ok(Outcome::Pass(vals.len() as u64))
    }))
}

fn shift_identity(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals = valuations(reg);
    Ok(run_trials("shift-identity", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(d);
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 2, 4)).collect();
        let q = s.lattice_polytope(d, 2, 4);
        for phi in &vals {
            let shifted = shift_valuation(phi.clone(), q.clone());
            let lhs = cm(&shifted, &polys)?;
            let mut with_q = polys.clone();
            with_q.push(q.clone());
            let rhs = cm(phi.as_ref(), &with_q)? + cm(phi.as_ref(), &polys)?;
            if lhs != rhs {
                return Ok(Outcome::Fail(format!(
                    "{} with Q = {q:?} on {}: {} != {}",
                    phi.name(),
                    show(&polys),
                    fr(&lhs),
                    fr(&rhs)
                )));
            }
        }
        Ok(Outcome::Pass(vals.len() as u64))
    }))
}

/// Size of a largest common independent set by subset enumeration.
pub fn brute_force_common(m1: &dyn Matroid, m2: &dyn Matroid) -> usize {
    let n = m1.ground_size();
    assert!(n <= 20, "brute force over {n} elements");
    (0u32..1 << n)
        .filter_map(|mask| {
            let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            (m1.is_independent(&set) && m2.is_independent(&set)).then_some(set.len())
        })
        .max()
        .unwrap_or(0)
}

fn matroid(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("matroid", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(d + 1);
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 2, 4)).collect();
        let mut segs = candidate_segments(&polys);
        segs.truncate(12);
        let m1 = LinearMatroid { vectors: segs.iter().map(|s| s.direction.clone()).collect() };
        let m2 = PartitionMatroid { blocks: segs.iter().map(|s| s.owner).collect() };
        let fast = max_common_independent(&m1, &m2);
        let slow = brute_force_common(&m1, &m2);
        if fast.len() != slow || !m1.is_independent(&fast) || !m2.is_independent(&fast) {
            return Ok(Outcome::Fail(format!("{}: augmenting paths give {fast:?}, brute force size {slow}", show(&polys))));
        }
        Ok(Outcome::Pass(1))
    }))
}

fn planar_proportional(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("planar-proportional", cfg, cfg.trials, |_, s| {
        let polys = [s.lattice_polytope(2, 3, 5), s.lattice_polytope(2, 3, 5)];
        let (a, b) = (cm(&DiscreteVolume, &polys)?, cm(&Volume, &polys)?);
        if a != b {
            return Ok(Outcome::Fail(format!("{}: cm(dvol) = {}, cm(vol) = {}", show(&polys), fr(&a), fr(&b))));
        }
        Ok(Outcome::Pass(1))
    }))
}

fn recursion(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals = valuations(reg);
    Ok(run_trials("recursion", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 2 + s.below(2);
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 2, 4)).collect();
        for phi in &vals {
            if !charac_recursion_check(phi.as_ref(), &polys)? {
                return Ok(Outcome::Fail(format!("{} on {}", phi.name(), show(&polys))));
            }
        }
        Ok(Outcome::Pass(vals.len() as u64))
    }))
}

fn symmetry(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals = valuations(reg);
    Ok(run_trials("symmetry", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 2 + s.below(2);
        let polys: Vec<Polytope> = (0..r).map(|_| s.lattice_polytope(d, 2, 4)).collect();
        let mut perm = polys.clone();
        for k in (1..r).rev() {
            perm.swap(k, s.below(k + 1));
        }
        for phi in &vals {
            let (a, b) = (cm(phi.as_ref(), &polys)?, cm(phi.as_ref(), &perm)?);
            if a != b {
                return Ok(Outcome::Fail(format!("{}: {} on [{}] but {} on [{}]", phi.name(), fr(&a), show(&polys), fr(&b), show(&perm))));
            }
        }
        Ok(Outcome::Pass(vals.len() as u64))
    }))
}

fn multilinear(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals = valuations(reg);
    Ok(run_trials("multilinear", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(2);
        let first = s.full_dim_polytope(d, 3, 6);
        let rest: Vec<Polytope> = (1..r).map(|_| s.lattice_polytope(d, 2, 4)).collect();
        let mut checks = 0;
        for phi in &vals {
            let split = (0..20).find_map(|_| {
                let a = s.direction(d, 1);
                let c = s.below(4) as i64;
                hyperplane_split(&first, &a, c, lattice_ok(phi.as_ref()))
            });
            let Some((below, above, middle)) = split else { continue };
            let eval = |p: &Polytope| -> Result<Rational> {
                let mut v = vec![p.clone()];
                v.extend(rest.iter().cloned());
                cm(phi.as_ref(), &v)
            };
            let lhs = eval(&first)?;
            let rhs = eval(&below)? + eval(&above)? - eval(&middle)?;
            if lhs != rhs {
                return Ok(Outcome::Fail(format!("{}: split of {first:?} with [{}]", phi.name(), show(&rest))));
            }
            checks += 1;
        }
        Ok(if checks == 0 { Outcome::Skip } else { Outcome::Pass(checks) })
    }))
}

fn valuation_contract(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals = valuations(reg);
    let dims = cfg.dim.max(1);
    let per = (cfg.trials / dims).max(1);
    Ok(run_trials("valuation-contract", cfg, vals.len() * dims, |i, s| {
        let phi = &vals[i / dims];
        let d = 1 + i % dims;
        let report = check_valuation(phi.as_ref(), d, per, s.below(1 << 30) as u64)?;
        if let Some(v) = report.violations.first() {
            return Ok(Outcome::Fail(format!("{}: {} at {:?}: {}", phi.name(), v.property, v.polytope, v.detail)));
        }
        Ok(Outcome::Pass((report.translation_checks + report.additivity_checks) as u64))
    }))
}

fn relint(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    use crate::lattice::euler_relint_value;
    use crate::valuation::EulerCharacteristic;
    Ok(run_trials("relint", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let p = s.lattice_polytope(d, 3, 5);
        let counted = euler_relint_value(&DiscreteVolume, &p)?;
        let direct = int(relint_count(&p) as i64);
        let chi = euler_relint_value(&EulerCharacteristic, &p)?;
        let sign = if p.dim() % 2 == 0 { int(1) } else { int(-1) };
        if counted != direct || chi != sign {
            return Ok(Outcome::Fail(format!("{p:?}: relint dvol {} vs {}, relint euler {}", fr(&counted), fr(&direct), fr(&chi))));
        }
        Ok(Outcome::Pass(2))
    }))
}

fn weak_hstar(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals: Vec<_> = valuations(reg).into_iter().filter(|v| v.claims().weakly_hstar_monotone).collect();
    Ok(run_trials("weak-hstar", cfg, vals.len(), |i, s| {
        let phi = &vals[i];
        let report = weak_hstar_monotone_check(phi.as_ref(), cfg.trials, cfg.dim.max(1), s.below(1 << 30) as u64)?;
        if let Some(w) = report.violations.iter().min_by_key(|w| (w.simplex.dim(), w.simplex.vertices().to_vec())) {
            let facet = w.facet.as_ref().map_or("∅".to_string(), |f| format!("{f:?}"));
            return Ok(Outcome::Fail(format!(
                "{} claims weak h*-monotonicity but S = {:?}, F = {facet} gives {}",
                phi.name(),
                w.simplex,
                fr(&w.value)
            )));
        }
        Ok(Outcome::Pass(report.trials as u64))
    }))
}

fn cm_monotone(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let vals: Vec<_> = valuations(reg).into_iter().filter(|v| v.claims().weakly_hstar_monotone).collect();
    Ok(run_trials("cm-monotone", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let r = 1 + s.below(d);
        let (p, q) = nested(s, d, r);
        for phi in &vals {
            let (a, b) = (cm(phi.as_ref(), &p)?, cm(phi.as_ref(), &q)?);
            if a > b {
                return Ok(Outcome::Fail(format!(
                    "{}: cm = {} on [{}] but {} on larger [{}]",
                    phi.name(),
                    fr(&a),
                    show(&p),
                    fr(&b),
                    show(&q)
                )));
            }
        }
        Ok(Outcome::Pass(vals.len() as u64))
    }))
}

/// Random lattice cylinder in dimension `d` with up to three summands, at
/// least `min_positive` of positive dimension.
fn random_cylinder(s: &mut Sampler, d: usize, min_positive: usize) -> Option<MixedCell> {
    for _ in 0..50 {
        let r = 2 + s.below(2);
        let mut rows: Vec<linalg::Vector> = Vec::new();
        let mut summands = Vec::new();
        for _ in 0..r {
            let room = d - rows.len();
            let k = s.below(room + 1).min(2);
            let simplex = s.lattice_simplex(d, k, 2);
            let v = simplex.vertices();
            let dirs: Vec<_> = v[1..].iter().map(|x| x.sub(&v[0])).collect();
            let mut all = rows.clone();
            all.extend(dirs.iter().cloned());
            if linalg::rank(&all) == all.len() {
                rows = all;
                summands.push(simplex);
            }
        }
        let cell = MixedCell::new(summands).ok()?;
        if cell.order() >= min_positive {
            return Some(cell);
        }
    }
    None
}

/// A rational point of `aff(p)` near `p`, possibly outside it.
fn random_affine_point(s: &mut Sampler, p: &Polytope) -> Point {
    let frame = p.frame();
    let coeffs: Vec<Rational> =
        (0..frame.dim()).map(|_| Rational::new((s.below(61) as i64 - 20).into(), (7 + s.below(5) as i64).into())).collect();
    Point(linalg::add(p.centroid().coords(), &frame.combine(&coeffs)))
}

fn half_open(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("half-open", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let Some(cyl) = random_cylinder(s, d, 1) else { return Ok(Outcome::Skip) };
        let q = random_affine_point(s, &cyl.cell);
        let Ok(whole) = half_open_by_point(&cyl.cell, &q) else { return Ok(Outcome::Skip) };
        let parts = decompose(&q, &cyl.summands).expect("q lies in the affine hull of the cell");
        let mut pieces = Vec::new();
        for (sj, qj) in cyl.summands.iter().zip(&parts) {
            match half_open_by_point(sj, qj) {
                Ok(h) => pieces.push(h),
                Err(_) => return Ok(Outcome::Skip),
            }
        }
        let mut probes = lattice_points(&cyl.cell);
        probes.extend((0..8).map(|_| random_affine_point(s, &cyl.cell)));
        for x in &probes {
            let xs = decompose(x, &cyl.summands).expect("x lies in the affine hull of the cell");
            let factored = pieces.iter().zip(&xs).all(|(h, xj)| h.contains_point(xj));
            if whole.contains_point(x) != factored {
                return Ok(Outcome::Fail(format!("cylinder {:?} at q = {q}, x = {x}: factorization differs", cyl.cell)));
            }
        }
        let mut checks = 1;
        if let Some(simplex) = cyl.summands.iter().find(|s| s.dim() > 0) {
            let q = random_affine_point(s, simplex);
            if let Ok(h) = half_open_by_point(simplex, &q) {
                if !h.is_closed() {
                    let u = direction_for_point(simplex, &q)?;
                    if half_open_by_direction(simplex, &u)?.removed() != h.removed() {
                        return Ok(Outcome::Fail(format!("simplex {simplex:?}: no direction for q = {q}")));
                    }
                    checks += 1;
                }
            }
        }
        Ok(Outcome::Pass(checks))
    }))
}

fn chain(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("chain", cfg, cfg.trials, |i, s| {
        let d = 2 + i % cfg.dim.max(2).saturating_sub(1).max(1);
        let Some(cyl) = random_cylinder(s, d, 2) else { return Ok(Outcome::Skip) };
        let cells = staircase_refine(&cyl)?;
        if cells.iter().any(|c| c.order() + 1 != cyl.order() || !c.is_cylinder()) {
            return Ok(Outcome::Fail(format!("refinement of {:?} does not lower the order", cyl.cell)));
        }
        let q = random_affine_point(s, &cyl.cell);
        let Ok(target) = half_open_by_point(&cyl.cell, &q) else { return Ok(Outcome::Skip) };
        let Ok(halves) = cells.iter().map(|c| half_open_by_point(&c.cell, &q)).collect::<Result<Vec<_>>>() else {
            return Ok(Outcome::Skip);
        };
        let report = partition_check(&target, &halves);
        if !report.holds() {
            return Ok(Outcome::Fail(format!("cylinder {:?} at q = {q}: {report:?}", cyl.cell)));
        }
        Ok(Outcome::Pass(1))
    }))
}

fn placing(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("placing", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let p = s.lattice_polytope(d, 3, 7);
        let mut order = p.vertices().to_vec();
        for k in (1..order.len()).rev() {
            order.swap(k, s.below(k + 1));
        }
        let dis = placing_triangulation(&p, &order)?;
        let (cells, whole) = dis.relative_volumes();
        let verts: BTreeSet<&Point> = p.vertices().iter().collect();
        let bad = dis.cells.iter().any(|c| !c.cell.is_simplex() || c.cell.vertices().iter().any(|v| !verts.contains(v)));
        if cells != whole || bad {
            return Ok(Outcome::Fail(format!("{p:?} in order {order:?}: volumes {} vs {}", fr(&cells), fr(&whole))));
        }
        let q = dis.generic_point(s.below(1 << 30) as u64)?;
        let report = dis.certify(&HalfOpenRule::Point(q))?;
        if !report.holds() {
            return Ok(Outcome::Fail(format!("{p:?}: {report:?}")));
        }
        Ok(Outcome::Pass(2))
    }))
}

fn staircase(cfg: &VerifyConfig, _: &ValuationRegistry) -> Result<SuiteResult> {
    Ok(run_trials("staircase", cfg, cfg.trials, |i, s| {
        let d = dim_for(cfg, i);
        let Some(cyl) = random_cylinder(s, d, 2) else { return Ok(Outcome::Skip) };
        let positive: Vec<&Polytope> = cyl.summands.iter().filter(|p| p.dim() > 0).collect();
        let (s1, s2) = (positive[0], positive[1]);
        let dis = staircase_dissection(s1, s2)?;
        let expected = binomial((s1.dim() + s2.dim()) as i64, s1.dim() as i64);
        let (cells, whole) = dis.relative_volumes();
        let aff_ok = dis.cells.iter().all(|c| c.cell.dim() == dis.target.dim());
        if int(dis.cells.len() as i64) != expected || cells != whole || !aff_ok {
            return Ok(Outcome::Fail(format!("{s1:?} + {s2:?}: {} cells, volumes {} vs {}", dis.cells.len(), fr(&cells), fr(&whole))));
        }
        let q = dis.generic_point(s.below(1 << 30) as u64)?;
        let report = dis.certify(&HalfOpenRule::Point(q))?;
        if !report.holds() {
            return Ok(Outcome::Fail(format!("{s1:?} + {s2:?}: {report:?}")));
        }
        Ok(Outcome::Pass(3))
    }))
}

/// Report-only: random integer combinations of the built-ins that look
/// monotone on samples, and whether their mixed valuations do too.
fn monotone_search(cfg: &VerifyConfig, reg: &ValuationRegistry) -> Result<SuiteResult> {
    let base: Vec<Arc<dyn Valuation>> = ["dvol", "vol", "euler", "interior"].iter().filter_map(|n| reg.get(n).ok()).collect();
    let candidates = (cfg.trials / 10).max(1);
    let mut result = run_trials("monotone-search", cfg, candidates, |_, s| {
        let terms: Vec<(Rational, Arc<dyn Valuation>)> =
            base.iter().map(|v| (int(s.below(7) as i64 - 3), v.clone())).collect();
        let label: Vec<String> = terms.iter().map(|(c, v)| format!("{}·{}", fr(c), v.name())).collect();
        let phi = Combination::new(label.join(" + "), terms);
        for _ in 0..20 {
            let d = 1 + s.below(cfg.dim.max(1));
            let (p, q) = nested(s, d, 1);
            if phi.eval(&p[0])? > phi.eval(&q[0])? {
                return Ok(Outcome::Skip);
            }
        }
        for _ in 0..20 {
            let d = 1 + s.below(cfg.dim.max(1));
            let r = 1 + s.below(d);
            let (p, q) = nested(s, d, r);
            if cm(&phi, &p)? > cm(&phi, &q)? {
                return Ok(Outcome::Fail(format!("{} looks monotone but not CM-monotone: [{}] ⊆ [{}]", phi.name(), show(&p), show(&q))));
            }
        }
        Ok(Outcome::Pass(1))
    });
    result.report_only = true;
    result.notes.push(format!("{} of {candidates} sampled combinations looked monotone and CM-monotone", result.checks));
    if let Some(c) = result.counterexample.take() {
        result.notes.push(format!("candidate against the equivalence: {c}"));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig { dim: 2, trials: 8, seed: 42 }
    }

    #[test]
    fn all_suites_pass_on_builtins() {
        let reg = ValuationRegistry::with_builtins();
        for r in run_all(&small(), &reg).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.name, r.counterexample);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &small(), &ValuationRegistry::with_builtins()).is_err());
    }

    #[test]
    fn deterministic() {
        let reg = ValuationRegistry::with_builtins();
        let a = run_suite("fine-mixed", &small(), &reg).unwrap();
        let b = run_suite("fine-mixed", &small(), &reg).unwrap();
        assert_eq!(a, b);
    }
}
