//! Argument parsing, command dispatch and exit codes.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lss_core::classify::{classify, Property, Status};
use lss_core::graph::{classify_shape, named_graph, parse_graph, GraphError};
use lss_core::pmd::{pmd_exact, pmd_lower_bound, PmdError};
use lss_core::poly::{export_cas_script, twisted_lss_generators, Dialect};
use lss_core::regularity::{
    cite as reg_cite, koszul_classify, koszul_family, lower_bound_report, reg_power_aci_bounds,
    reg_power_ci_graph, RegError,
};
use lss_core::twisted::{tpmd_exact, TwistedError};
use lss_core::{Graph, Limits};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{self, RunReport};
use crate::verify::{run_suite, Suite};

#[derive(Parser, Debug)]
#[command(name = "lss", version, about = "Invariants, classification and CAS export for LSS ideals of graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Report `timing_ms` as null, for byte-stable output.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Vertex cap for the exact searches; for `verify`, the largest graph size enumerated.
    #[arg(long, global = true, env = "LSS_MAX_N")]
    pub max_n: Option<usize>,
    /// Edge cap for the exact searches.
    #[arg(long, global = true)]
    pub max_edges: Option<usize>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Graph in edge-list format: `n`, then one `i j` per line, `#` comments.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Generated graph: Kn, Km,n, Cn, Pn (case-insensitive).
    #[arg(long, value_name = "SPEC")]
    pub family: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Max degree, shape, pmd and tpmd.
    Invariants {
        #[command(flatten)]
        input: Input,
        /// Include decompositions and weight certificates.
        #[arg(long)]
        witness: bool,
    },
    /// Cited verdict for one property of L_G(d).
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: usize,
        /// One of ci, aci, radical, prime, twisted-ci.
        #[arg(long, value_parser = parse_property)]
        property: Property,
    },
    /// Regularity of S/L_G(d)^s: exact value or bounds.
    Reg {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
        /// Known value of reg(S/L_G(d)), for the upper bounds.
        #[arg(long)]
        reg_base: Option<i64>,
    },
    /// Koszulness of S/L_G(d).
    Koszul {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: usize,
    },
    /// Write a Macaulay2 or Singular script for the (twisted) LSS ideal.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: usize,
        /// Export the twisted ideal (2d layers) instead of L_G(d).
        #[arg(long)]
        twisted: bool,
        /// macaulay2 (alias m2) or singular.
        #[arg(long, default_value = "macaulay2", value_parser = parse_dialect)]
        dialect: Dialect,
        /// Output file; the script goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-oracle verification suites over all small graphs.
    Verify {
        /// matching, pmd, tpmd, leading-terms, classifier or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn parse_property(s: &str) -> Result<Property, String> {
    Property::parse(s).ok_or_else(|| format!("unknown property `{s}` (expected ci, aci, radical, prime or twisted-ci)"))
}

fn parse_dialect(s: &str) -> Result<Dialect, String> {
    s.parse::<Dialect>().map_err(|e| e.to_string())
}

/// Failures, each with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    SizeLimit(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed")]
    VerifyFailed(Box<RunReport>),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::SizeLimit(_) => 3,
            CliError::Io(_) => 4,
            CliError::VerifyFailed(_) => 5,
            CliError::Other(_) => 1,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<PmdError> for CliError {
    fn from(e: PmdError) -> Self {
        match e {
            PmdError::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            PmdError::Graph(g) => g.into(),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<TwistedError> for CliError {
    fn from(e: TwistedError) -> Self {
        match e {
            TwistedError::Pmd(p) => p.into(),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<RegError> for CliError {
    fn from(e: RegError) -> Self {
        match e {
            RegError::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = cli.max_n {
        l = l.with_max_n(n);
    }
    if let Some(m) = cli.max_edges {
        l = l.with_max_edges(m);
    }
    l
}

fn load(input: &Input) -> Result<Graph, CliError> {
    match (&input.graph, &input.family) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(parse_graph(&text)?)
        }
        (None, Some(spec)) => Ok(named_graph(spec)?),
        _ => Err(CliError::Parse("give exactly one of --graph or --family".into())),
    }
}

fn report(command: &str, g: Option<&Graph>, results: Value, citations: Vec<String>) -> RunReport {
    RunReport {
        command: command.into(),
        input_digest: g.map(report::input_digest),
        results,
        citations,
        timing_ms: None,
    }
}

fn cmd_invariants(g: &Graph, witness: bool, limits: &Limits) -> Result<RunReport, CliError> {
    let shape = classify_shape(g, limits.shape_max_n)?;
    let (p, pm) = pmd_exact(g, limits)?;
    let (t, td) = tpmd_exact(g, limits)?;
    let mut results = json!({
        "n": g.n(),
        "edges": g.num_edges(),
        "max_degree": g.max_degree(),
        "shape": report::shape(&shape),
        "pmd": p,
        "pmd_lower_bound": pmd_lower_bound(g),
        "tpmd": t,
        "tpmd_lower_bound": g.max_degree().div_ceil(2),
    });
    if witness {
        results["pmd_witness"] = report::pm_decomposition(&pm);
        results["pmd_certificates"] = report::pm_certificates(&pm);
        results["tpmd_witness"] = report::twisted_decomposition(&td);
    }
    Ok(report(
        "invariants",
        Some(g),
        results,
        vec![
            "pmd: exact search, lower bound max degree".into(),
            "tpmd: exact search, lower bound ceil(max degree / 2)".into(),
        ],
    ))
}

fn cmd_classify(g: &Graph, d: usize, property: Property, limits: &Limits) -> Result<RunReport, CliError> {
    let v = classify(g, d, property, limits)?;
    let mut results = report::verdict(&v);
    results["d"] = json!(d);
    let citations = if v.status == Status::Unknown && v.citation.is_empty() {
        Vec::new()
    } else {
        vec![v.citation.clone()]
    };
    Ok(report("classify", Some(g), results, citations))
}

fn cmd_reg(g: &Graph, d: usize, s: usize, reg_base: Option<i64>, limits: &Limits) -> Result<RunReport, CliError> {
    if s == 0 {
        return Err(CliError::Parse("--s must be at least 1".into()));
    }
    let induced = match lower_bound_report(g, d, s, limits) {
        Ok(r) => Some(r),
        Err(RegError::NotApplicable(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let primary = match reg_power_ci_graph(g, d, s, limits) {
        Ok(r) => Some(r),
        Err(RegError::NotApplicable(_)) => match reg_power_aci_bounds(g, d, s, reg_base, limits) {
            Ok(r) => Some(r),
            Err(RegError::NotApplicable(_)) | Err(RegError::NotACI) => None,
            Err(e) => return Err(e.into()),
        },
        Err(e) => return Err(e.into()),
    };
    let mut citations = Vec::new();
    let mut results = match &primary {
        Some(r) => {
            citations.push(r.citation.clone());
            report::regularity(r)
        }
        None => json!({ "s": s, "value": null, "lower": null, "upper": null }),
    };
    results["d"] = json!(d);
    results["applicable"] = json!(primary.is_some() || induced.is_some());
    if let Some(lb) = &induced {
        citations.push(lb.citation.clone());
        results["induced_lower_bound"] = report::regularity(lb);
    }
    if primary.is_none() && induced.is_none() {
        results["reason"] = json!(
            "no formula or bound applies: needs a tree or connected unicyclic graph with max degree <= d and d >= 3, \
             an almost complete intersection form, or d >= 3 for the induced-subgraph bound"
        );
    }
    if let Some(r) = &primary {
        if r.citation == reg_cite::CI_TREE || r.citation == reg_cite::CI_UNICYCLIC {
            citations.push(reg_cite::CI_GENERIC.into());
        }
    }
    Ok(report("reg", Some(g), results, citations))
}

fn cmd_koszul(g: &Graph, d: usize, limits: &Limits) -> Result<RunReport, CliError> {
    if d == 0 {
        return Err(CliError::Parse("--d must be at least 1".into()));
    }
    let koszul = koszul_classify(g, d);
    let family = koszul_family(g, d, limits).ok();
    let mut citations = vec![if g.num_edges() == 0 {
        "edgeless: the quotient is a polynomial ring".to_string()
    } else {
        "Koszul iff r <= nd or 4r >= n^2 d^2 + 2nd".to_string()
    }];
    if let Some(f) = &family {
        citations.push(f.clause.to_string());
    }
    let results = json!({
        "d": d,
        "n": g.n(),
        "r": g.num_edges(),
        "koszul": koszul,
        "family": family.as_ref().map(report::koszul_family),
    });
    Ok(report("koszul", Some(g), results, citations))
}

fn cmd_export(
    g: &Graph,
    d: usize,
    twisted: bool,
    dialect: Dialect,
    out: Option<&PathBuf>,
) -> Result<Option<RunReport>, CliError> {
    if d == 0 {
        return Err(CliError::Parse("--d must be at least 1".into()));
    }
    let script = export_cas_script(g, d, twisted, dialect);
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(script.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?;
        return Ok(None);
    };
    fs::write(path, &script).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let generators = if twisted {
        twisted_lss_generators(g, d).len()
    } else {
        g.num_edges()
    };
    let results = json!({
        "path": path.display().to_string(),
        "dialect": dialect.name(),
        "d": d,
        "twisted": twisted,
        "generators": generators,
        "bytes": script.len(),
        "script_sha256": hex::encode(<sha2::Sha256 as sha2::Digest>::digest(script.as_bytes())),
    });
    Ok(Some(report(
        "export",
        Some(g),
        results,
        vec!["generators only; Groebner bases and primary decomposition are left to the CAS".into()],
    )))
}

fn cmd_verify(suite: &str, max_n: usize, jobs: Option<usize>, limits: &Limits) -> Result<RunReport, CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(CliError::Parse)?]
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| CliError::Other(e.to_string()))?;
    let results: Vec<_> = pool.install(|| suites.iter().map(|&s| run_suite(s, max_n, limits)).collect());
    let passed = results.iter().all(|r| r.passed());
    let rep = report(
        "verify",
        None,
        json!({
            "passed": passed,
            "suites": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        }),
        suites.iter().map(|s| s.description().to_string()).collect(),
    );
    if passed {
        Ok(rep)
    } else {
        Err(CliError::VerifyFailed(Box::new(rep)))
    }
}

/// Runs the parsed command; `Ok(None)` means the output was already written.
pub fn execute(cli: &Cli) -> Result<Option<RunReport>, CliError> {
    let limits = limits(cli);
    match &cli.command {
        Command::Invariants { input, witness } => cmd_invariants(&load(input)?, *witness, &limits).map(Some),
        Command::Classify { input, d, property } => cmd_classify(&load(input)?, *d, *property, &limits).map(Some),
        Command::Reg { input, d, s, reg_base } => cmd_reg(&load(input)?, *d, *s, *reg_base, &limits).map(Some),
        Command::Koszul { input, d } => cmd_koszul(&load(input)?, *d, &limits).map(Some),
        Command::Export {
            input,
            d,
            twisted,
            dialect,
            out,
        } => cmd_export(&load(input)?, *d, *twisted, *dialect, out.as_ref()),
        Command::Verify { suite, jobs } => cmd_verify(suite, cli.max_n.unwrap_or(6), *jobs, &limits).map(Some),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let stamp = |mut r: RunReport| {
        if !cli.no_timing {
            r.timing_ms = Some(start.elapsed().as_millis());
        }
        r
    };
    match execute(&cli) {
        Ok(Some(r)) => {
            print!("{}", stamp(r).render(cli.pretty));
            0
        }
        Ok(None) => 0,
        Err(CliError::VerifyFailed(r)) => {
            print!("{}", stamp(*r).render(cli.pretty));
            eprintln!("lss: verification failed");
            5
        }
        Err(e) => {
            eprintln!("lss: {e}");
            e.exit_code()
        }
    }
}
