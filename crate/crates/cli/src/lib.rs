//! Command-line front end: JSON instances in, byte-stable reports out.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a checked property or
//! certificate failed.

mod instance;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use mixval::dissection::{
    mixed_difference_certificate, stored_certificates, Certificate, DissectInput, DissectionJson, DissectionRegistry,
};
use mixval::positivity::{cylinder_lower_bound, decide_positive};
use mixval::rational::{factorial, format_rational, int};
use mixval::valuation::{cm, cm_table, h_star_vector, mixed_polynomial, DiscreteVolume, ValuationRegistry, Volume};
use mixval::verify::{run_all, run_suite, VerifyConfig};
use mixval::{Error, Polytope};

pub use instance::{Instance, PolytopeEntry};
pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mixval", version, about = "Exact combinatorial mixed valuations of lattice polytopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = mixval::random::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Combinatorial mixed valuation with its inclusion-exclusion table.
    Cm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "dvol")]
        valuation: String,
    },
    /// Binomial-basis coefficients of phi(n_1 P_1 + ... + n_r P_r).
    Ehrhart {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "dvol")]
        valuation: String,
        /// Dilation factor for the extrapolation check (default: one past the grid).
        #[arg(long)]
        dilate: Option<u32>,
    },
    /// Mixed volume of exactly d polytopes.
    MixedVolume {
        #[arg(long)]
        input: PathBuf,
    },
    /// Positivity of the discrete mixed volume, with segment witness.
    Positivity {
        #[arg(long)]
        input: PathBuf,
    },
    /// Dissection with lattice-count certificates.
    Dissect {
        /// boxcell | staircase | cayley
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Dimension for boxcell.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Dilation factor: n for boxcell, the uniform scaling checked for cayley.
        #[arg(long, default_value_t = 2)]
        dilate: u32,
        /// Re-certify a previously exported dissection instead of building one.
        #[arg(long)]
        dissection: Option<PathBuf>,
    },
    /// Seeded property suites.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

/// Parses arguments and runs with the built-in registries.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, &ValuationRegistry::with_builtins(), out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = write!(err, "{e}");
            code
        }
    }
}

pub fn run(cli: &Cli, registry: &ValuationRegistry, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = std::time::Instant::now();
    let result = execute(cli, registry);
    let code = match result {
        Ok(report) => {
            let text = if cli.json { report.to_json() } else { report.to_text() };
            let _ = out.write_all(text.as_bytes());
            if report.violated() {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    };
    let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    code
}

fn execute(cli: &Cli, registry: &ValuationRegistry) -> mixval::Result<Report> {
    match &cli.command {
        Command::Cm { input, valuation } => cmd_cm(cli, registry, input, valuation),
        Command::Ehrhart { input, valuation, dilate } => cmd_ehrhart(cli, registry, input, valuation, *dilate),
        Command::MixedVolume { input } => cmd_mixed_volume(cli, input),
        Command::Positivity { input } => cmd_positivity(cli, input),
        Command::Dissect { mode, input, dim, dilate, dissection } => {
            cmd_dissect(cli, mode.as_deref(), input.as_ref(), *dim, *dilate, dissection.as_ref())
        }
        Command::Verify { suite, dim, trials } => cmd_verify(cli, registry, suite, *dim, *trials),
    }
}

fn fr(r: &mixval::Rational) -> String {
    format_rational(r)
}

fn cmd_cm(cli: &Cli, registry: &ValuationRegistry, input: &Path, valuation: &str) -> mixval::Result<Report> {
    let (inst, digest) = Instance::load(input)?;
    let phi = registry.get(valuation)?;
    let polys = inst.polytopes()?;
    let mut report = Report::new("cm", Some(digest), cli.seed);
    let table = cm_table(phi.as_ref(), inst.dim, &polys)?;
    report.result("valuation", json!(phi.name()));
    report.result("r", json!(polys.len()));
    report.result("value", json!(fr(&table.value)));
    let terms: Vec<Value> = table
        .terms
        .iter()
        .map(|t| {
            let names: Vec<&str> = t.subset.iter().map(|&i| inst.polytopes[i].name.as_str()).collect();
            json!({"subset": names, "sign": t.sign, "value": fr(&t.value)})
        })
        .collect();
    report.result("table", Value::Array(terms));
    if polys.len() > inst.dim {
        report.note(format!("r = {} exceeds d = {}: the mixed valuation vanishes identically", polys.len(), inst.dim));
    }
    if phi.claims().combinatorially_positive && !polys.is_empty() {
        let decision = decide_positive(phi.as_ref(), &polys)?;
        report.result("positive", json!(decision.positive));
        report.result("witness", serde_json::to_value(&decision.witness).expect("segments serialize"));
        report.certificate(Certificate::new("positivity matches value", decision.positive, table.value > int(0)));
    }
    Ok(report)
}

fn cmd_ehrhart(
    cli: &Cli,
    registry: &ValuationRegistry,
    input: &Path,
    valuation: &str,
    dilate: Option<u32>,
) -> mixval::Result<Report> {
    let (inst, digest) = Instance::load(input)?;
    let phi = registry.get(valuation)?;
    let polys = inst.polytopes()?;
    if polys.is_empty() {
        return Err(Error::Empty("ehrhart needs at least one polytope"));
    }
    let mut report = Report::new("ehrhart", Some(digest), cli.seed);
    let mp = mixed_polynomial(phi.as_ref(), &polys)?;
    report.result("valuation", json!(phi.name()));
    report.result("degree_bound", json!(mp.degree_bound));
    let coeffs: serde_json::Map<String, Value> = mp
        .coefficients
        .iter()
        .filter(|(_, c)| **c != int(0))
        .map(|(a, c)| (format!("{a:?}"), json!(fr(c))))
        .collect();
    report.result("coefficients", Value::Object(coeffs));
    if polys.len() == 1 {
        let h = h_star_vector(phi.as_ref(), &polys[0])?;
        report.result("h_vector", json!(h.entries.iter().map(fr).collect::<Vec<_>>()));
    }
    let n = dilate.unwrap_or(mp.degree_bound as u32 + 1);
    let ns = vec![n; polys.len()];
    let parts: Vec<Polytope> = polys.iter().map(|p| p.dilate(n as u64)).collect();
    let direct = phi.eval(&Polytope::sum_all(inst.dim, &parts)?)?;
    report.certificate(Certificate::new(format!("extrapolation at n = {n}"), fr(&direct), fr(&mp.evaluate(&ns))));
    report.certificate(Certificate::new("grid reproduced", true, mp.reproduces_grid()));
    Ok(report)
}

fn cmd_mixed_volume(cli: &Cli, input: &Path) -> mixval::Result<Report> {
    let (inst, digest) = Instance::load(input)?;
    let polys = inst.polytopes()?;
    if polys.len() != inst.dim {
        return Err(Error::InvalidArgument(format!("mixed volume needs exactly {} polytopes, got {}", inst.dim, polys.len())));
    }
    let mut report = Report::new("mixed-volume", Some(digest), cli.seed);
    let cv = cm(&Volume, &polys)?;
    report.result("mixed_volume", json!(fr(&(&cv / factorial(inst.dim as u32)))));
    report.result("cm_vol", json!(fr(&cv)));
    if polys.iter().all(Polytope::is_lattice) {
        let cd = cm(&DiscreteVolume, &polys)?;
        report.result("cm_dvol", json!(fr(&cd)));
        report.certificate(Certificate::new("discrete equals continuous", fr(&cv), fr(&cd)));
    }
    Ok(report)
}

fn cmd_positivity(cli: &Cli, input: &Path) -> mixval::Result<Report> {
    let (inst, digest) = Instance::load(input)?;
    let polys = inst.polytopes()?;
    let mut report = Report::new("positivity", Some(digest), cli.seed);
    let decision = decide_positive(&DiscreteVolume, &polys)?;
    let value = cm(&DiscreteVolume, &polys)?;
    let bound = cylinder_lower_bound(&polys);
    report.result("positive", json!(decision.positive));
    report.result("witness", serde_json::to_value(&decision.witness).expect("segments serialize"));
    report.result("cm_dvol", json!(fr(&value)));
    report.result("cylinder_lower_bound", json!(bound.bound));
    report.result("cylinder_witness", serde_json::to_value(&bound.simplices).expect("points serialize"));
    report.certificate(Certificate::new("decision matches value", decision.positive, value > int(0)));
    report.certificate(Certificate::new("value above cylinder bound", true, value >= int(bound.bound as i64)));
    Ok(report)
}

fn cmd_dissect(
    cli: &Cli,
    mode: Option<&str>,
    input: Option<&PathBuf>,
    dim: usize,
    dilate: u32,
    stored: Option<&PathBuf>,
) -> mixval::Result<Report> {
    if let Some(path) = stored {
        let bytes = std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_slice(&bytes).map_err(|e| Error::Parse(e.to_string()))?;
        let raw = value.pointer("/results/dissection").cloned().unwrap_or(value);
        let dj: DissectionJson = serde_json::from_value(raw).map_err(|e| Error::Parse(e.to_string()))?;
        let dis = dj.to_dissection()?;
        let mut report = Report::new("dissect", Some(report::digest(&bytes)), cli.seed);
        report.result("cells", json!(dis.cells.len()));
        for c in stored_certificates(&dis) {
            report.certificate(c);
        }
        return Ok(report);
    }
    let mode = mode.ok_or_else(|| Error::InvalidArgument("--mode or --dissection is required".into()))?;
    let (polytopes, digest, pairs) = match input {
        Some(path) => {
            let (inst, digest) = Instance::load(path)?;
            let pairs = inst.pair_tuples()?;
            (inst.polytopes()?, Some(digest), pairs)
        }
        None => (Vec::new(), None, None),
    };
    let strategy = DissectionRegistry::with_builtins().get(mode)?;
    let dim = polytopes.first().map_or(dim, Polytope::ambient_dim);
    let outcome = strategy.build(&DissectInput { polytopes, dim, dilate, seed: cli.seed })?;
    let mut report = Report::new("dissect", digest, cli.seed);
    report.result("mode", json!(mode));
    report.result("cells", json!(outcome.dissection.cells.len()));
    let orders: Vec<usize> = outcome.dissection.cells.iter().map(|c| c.order()).collect();
    report.result("cell_orders", json!(orders));
    for c in outcome.certificates.iter().cloned().chain(stored_certificates(&outcome.dissection)) {
        report.certificate(c);
    }
    if let Some((inner, outer)) = pairs {
        let cert = mixed_difference_certificate(&inner, &outer, cli.seed)?;
        report.result("difference_cells", json!(cert.difference_cells().len()));
        let r = inner.len() as u32;
        for n in [vec![1; r as usize], vec![dilate; r as usize]] {
            let chk = cert.check(&n)?;
            report.certificate(Certificate::new(
                format!("difference at n = {n:?}"),
                chk.outer_count as i64 - chk.inner_count as i64,
                chk.difference_count,
            ));
        }
    }
    report.result("dissection", serde_json::to_value(DissectionJson::from(&outcome.dissection)).expect("serializable"));
    Ok(report)
}

fn cmd_verify(cli: &Cli, registry: &ValuationRegistry, suite: &str, dim: usize, trials: usize) -> mixval::Result<Report> {
    if dim == 0 {
        return Err(Error::InvalidArgument("--dim must be positive".into()));
    }
    let cfg = VerifyConfig { dim, trials, seed: cli.seed };
    let results = if suite == "all" { run_all(&cfg, registry)? } else { vec![run_suite(suite, &cfg, registry)?] };
    let mut report = Report::new("verify", None, cli.seed);
    report.result("dim", json!(dim));
    report.result("trials", json!(trials));
    let rows: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "suite": r.name,
                "status": if r.report_only { "report" } else if r.passed() { "pass" } else { "FAIL" },
                "checks": r.checks,
                "counterexample": r.counterexample,
                "notes": r.notes,
            })
        })
        .collect();
    report.result("suites", Value::Array(rows));
    for r in &results {
        if !r.passed() {
            report.fail(format!("{}: {}", r.name, r.counterexample.as_deref().unwrap_or("")));
        }
    }
    Ok(report)
}
