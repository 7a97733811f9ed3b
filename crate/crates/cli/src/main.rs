//! `domcheck`: exact domination numbers, product audits and proof traces.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 budget exhausted,
//! 3 a defect (failed verdict, oracle mismatch, rejected trace).

mod source;
mod sweep;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use domcheck_core::audit::{audit_pair_with, AuditOptions};
use domcheck_core::corpus::{all_graphs_up_to, random_batch, MAX_ENUMERATION_ORDER};
use domcheck_core::domination::{DEFAULT_MAX_NODES, DEFAULT_MAX_ORDER};
use domcheck_core::error::{AuditError, GraphError, SolveError};
use domcheck_core::oracle::{
    brute_force_gamma, brute_force_gamma_roman, brute_force_gamma_roman_by_twos,
    GAMMA_ORACLE_MAX_ORDER, ROMAN_ORACLE_MAX_ORDER, ROMAN_TWOS_ORACLE_MAX_ORDER,
};
use domcheck_core::trace::{verify_trace_with, ProofTrace, VerifyOptions};
use domcheck_core::{gamma_exact, gamma_roman_exact, write_graph6, SolverBudget, TieBreak};
use serde_json::json;

use source::{expand_source, single_source, NamedGraph};

#[derive(Parser, Debug)]
#[command(
    name = "domcheck",
    version,
    about = "Exact domination and Roman domination checks on Cartesian products"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Seed for random families that omit one and for seeded tie-breaking.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search-node budget per solver call.
    #[arg(long, global = true, env = "DOMCHECK_MAX_NODES", default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,
    /// Largest graph order a solver will accept.
    #[arg(long, global = true, env = "DOMCHECK_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_graph_order: usize,
}

impl GlobalArgs {
    fn budget(&self) -> SolverBudget {
        SolverBudget::new(self.max_nodes, self.max_graph_order)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute γ and/or γ_R of one graph.
    Compute(ComputeArgs),
    /// Audit one pair (G, H) and optionally write its proof trace.
    Audit(AuditArgs),
    /// Audit many pairs in parallel and write CSV / summary JSON.
    Sweep(sweep::SweepArgs),
    /// Compare the exact solvers against brute-force oracles.
    OracleDiff(OracleDiffArgs),
    /// Re-check a proof trace from its recorded sets.
    VerifyTrace(VerifyTraceArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Which {
    Gamma,
    #[value(name = "gamma_r", alias = "gamma-r")]
    GammaR,
    Both,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Graph source (family spec, g6:..., file:..., or raw graph6).
    #[arg(long, alias = "family", value_name = "SRC")]
    graph: String,
    #[arg(long, value_enum, default_value_t = Which::Both)]
    which: Which,
    /// Also print an optimal witness.
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long, value_name = "SRC")]
    g: String,
    #[arg(long, value_name = "SRC")]
    h: String,
    /// Where to write the JSON proof trace.
    #[arg(long, value_name = "PATH")]
    trace_out: Option<PathBuf>,
    /// Representative rule for vertices with several dominators:
    /// smallest, largest or seeded[:N] (defaults to --seed).
    #[arg(long, default_value = "smallest")]
    tie_break: String,
    /// Print the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct OracleDiffArgs {
    /// Check every graph up to this order, one per isomorphism class.
    #[arg(long)]
    max_order: Option<usize>,
    /// Also check this many seeded random graphs.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 7)]
    random_min_order: usize,
    #[arg(long, default_value_t = 12)]
    random_max_order: usize,
    /// Specific graphs to check (repeatable).
    #[arg(long = "graph", value_name = "SRC")]
    graphs: Vec<String>,
    /// Print one line per graph.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct VerifyTraceArgs {
    path: PathBuf,
    /// Also re-solve the recorded optima.
    #[arg(long)]
    recheck_optimality: bool,
}

/// Outcome classes mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Budget(anyhow::Error),
    Defect(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Budget(_) => 2,
            Failure::Defect(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) => write!(f, "error: {e:#}"),
            Failure::Budget(e) => write!(f, "budget exhausted: {e:#}"),
            Failure::Defect(msg) => write!(f, "defect: {msg}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

pub fn solve_failure(e: SolveError) -> Failure {
    if e.is_budget() {
        Failure::Budget(anyhow::anyhow!("{e}"))
    } else {
        Failure::Usage(anyhow::anyhow!("{e}"))
    }
}

pub fn is_budget_audit_error(e: &AuditError) -> bool {
    e.is_budget() || matches!(e, AuditError::Graph(GraphError::ProductTooLarge { .. }))
}

pub fn audit_failure(e: AuditError) -> Failure {
    // the Display of both error types already includes the cause
    if is_budget_audit_error(&e) {
        Failure::Budget(anyhow::anyhow!("{e}"))
    } else {
        Failure::Usage(anyhow::anyhow!("{e}"))
    }
}

pub fn parse_tie_break(spec: &str, seed: u64) -> Result<TieBreak> {
    if spec.trim() == "seeded" {
        return Ok(TieBreak::Seeded(seed));
    }
    spec.parse::<TieBreak>().map_err(|e| anyhow::anyhow!("{e}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Compute(args) => compute(&cli.global, args),
        Command::Audit(args) => audit(&cli.global, args),
        Command::Sweep(args) => sweep::run(&cli.global, args),
        Command::OracleDiff(args) => oracle_diff(&cli.global, args),
        Command::VerifyTrace(args) => verify(&cli.global, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.code())
        }
    }
}

fn compute(global: &GlobalArgs, args: &ComputeArgs) -> Result<(), Failure> {
    let NamedGraph { name, graph } = single_source(&args.graph, global.seed)?;
    let budget = global.budget();
    let gamma = match args.which {
        Which::Gamma | Which::Both => Some(gamma_exact(&graph, budget).map_err(solve_failure)?),
        Which::GammaR => None,
    };
    let roman = match args.which {
        Which::GammaR | Which::Both => {
            Some(gamma_roman_exact(&graph, budget).map_err(solve_failure)?)
        }
        Which::Gamma => None,
    };

    if args.json {
        let mut out = json!({
            "graph": name,
            "order": graph.order(),
            "size": graph.size(),
            "graph6": write_graph6(&graph),
        });
        if let Some(r) = &gamma {
            out["gamma"] = json!(r.value);
            if args.witness {
                out["gamma_witness"] = json!(r.witness.to_vec());
            }
        }
        if let Some(r) = &roman {
            out["gamma_r"] = json!(r.value);
            if args.witness {
                out["gamma_r_witness"] = json!({
                    "v0": r.witness.v0().to_vec(),
                    "v1": r.witness.v1().to_vec(),
                    "v2": r.witness.v2().to_vec(),
                });
            }
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("json value")
        );
        return Ok(());
    }

    println!(
        "graph: {name} (n={}, m={}, graph6 {})",
        graph.order(),
        graph.size(),
        write_graph6(&graph)
    );
    if let Some(r) = &gamma {
        println!("gamma = {}", r.value);
        if args.witness {
            println!("gamma witness: {}", r.witness);
        }
    }
    if let Some(r) = &roman {
        println!("gamma_r = {}", r.value);
        if args.witness {
            let f = &r.witness;
            println!("gamma_r witness: V0={} V1={} V2={}", f.v0(), f.v1(), f.v2());
        }
    }
    Ok(())
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn audit(global: &GlobalArgs, args: &AuditArgs) -> Result<(), Failure> {
    let g = single_source(&args.g, global.seed)?;
    let h = single_source(&args.h, global.seed)?;
    let options = AuditOptions {
        tie_break: parse_tie_break(&args.tie_break, global.seed)?,
        ..AuditOptions::default()
    };
    let (mut report, trace) =
        audit_pair_with(&g.graph, &h.graph, global.budget(), &options).map_err(audit_failure)?;
    report.g.label = g.name.clone();
    report.h.label = h.name.clone();
    if let Some(path) = &args.trace_out {
        fs::write(path, trace.to_json()).with_context(|| format!("writing {}", path.display()))?;
        report.trace_ref = Some(path.display().to_string());
    }

    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        let v = &report.verdicts;
        println!(
            "G = {} (n={}), H = {} (n={})",
            g.name, report.g.order, h.name, report.h.order
        );
        println!(
            "gamma(G) = {}, gamma(H) = {}, gamma(GxH) = {}, gamma_R(GxH) = {}",
            report.gamma_g, report.gamma_h, report.gamma_product, report.gamma_r_product
        );
        println!(
            "gamma(G)gamma(H) <= gamma_R(GxH): {} ≤ {} {}",
            report.product_of_gammas,
            report.gamma_r_product,
            pass(v.theorem2)
        );
        println!(
            "gamma(G)gamma(H) <= 2gamma(GxH): {} ≤ {} {}",
            report.product_of_gammas,
            report.clark_suen_bound,
            pass(v.theorem1)
        );
        println!(
            "gamma(GxH) <= gamma_R(GxH) <= 2gamma(GxH): {}",
            pass(v.lemma1_product)
        );
        println!(
            "V2 minimum dominating set of (GxH)[V0 ∪ V2]: {}",
            pass(v.lemma2_product)
        );
        for (name, ok) in trace.checks.named() {
            if !ok {
                println!("  step check {name}: FAIL");
            }
        }
        println!("proof steps: {}", pass(v.trace_checks));
        println!(
            "gap = {}, nodes explored = {}",
            report.gap, report.nodes_explored
        );
        if let Some(path) = &report.trace_ref {
            println!("trace written to {path}");
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Defect(format!(
            "audit of ({}, {}) failed: {:?}",
            g.name, h.name, report.verdicts
        )))
    }
}

fn oracle_diff(global: &GlobalArgs, args: &OracleDiffArgs) -> Result<(), Failure> {
    let budget = global.budget();
    let mut graphs: Vec<NamedGraph> = Vec::new();
    let use_corpus = args.max_order.is_some() || (args.graphs.is_empty() && args.random == 0);
    if use_corpus {
        let max = args.max_order.unwrap_or(6);
        if max == 0 || max > MAX_ENUMERATION_ORDER {
            return Err(Failure::Usage(anyhow::anyhow!(
                "--max-order must be between 1 and {MAX_ENUMERATION_ORDER}"
            )));
        }
        for graph in all_graphs_up_to(max, false).map_err(anyhow::Error::from)? {
            graphs.push(NamedGraph {
                name: write_graph6(&graph),
                graph,
            });
        }
    }
    if args.random > 0 {
        let (lo, hi) = (args.random_min_order, args.random_max_order);
        if lo == 0 || lo > hi || hi > ROMAN_TWOS_ORACLE_MAX_ORDER {
            return Err(Failure::Usage(anyhow::anyhow!(
                "random orders must satisfy 1 <= min <= max <= {ROMAN_TWOS_ORACLE_MAX_ORDER}"
            )));
        }
        for (family, graph) in random_batch(args.random, lo, hi, global.seed) {
            graphs.push(NamedGraph {
                name: family.to_string(),
                graph,
            });
        }
    }
    for spec in &args.graphs {
        graphs.extend(expand_source(spec, global.seed)?);
    }

    let verbose = args.verbose || !args.graphs.is_empty();
    let mut mismatches = 0usize;
    let mut skipped = 0usize;
    for NamedGraph { name, graph } in &graphs {
        let n = graph.order();
        if n > GAMMA_ORACLE_MAX_ORDER.min(ROMAN_TWOS_ORACLE_MAX_ORDER) {
            skipped += 1;
            eprintln!(
                "skipping {name}: order {n} exceeds the oracle limit {GAMMA_ORACLE_MAX_ORDER}"
            );
            continue;
        }
        let gamma = gamma_exact(graph, budget).map_err(solve_failure)?.value;
        let roman = gamma_roman_exact(graph, budget)
            .map_err(solve_failure)?
            .value;
        let gamma_oracle = brute_force_gamma(graph).map_err(solve_failure)?;
        let roman_oracle = if n <= ROMAN_ORACLE_MAX_ORDER {
            brute_force_gamma_roman(graph).map_err(solve_failure)?
        } else {
            brute_force_gamma_roman_by_twos(graph).map_err(solve_failure)?
        };
        let ok = gamma == gamma_oracle && roman == roman_oracle;
        if !ok {
            mismatches += 1;
            println!(
                "MISMATCH {} ({name}): gamma solver={gamma} oracle={gamma_oracle}, gamma_r solver={roman} oracle={roman_oracle}",
                write_graph6(graph)
            );
        } else if verbose {
            println!("ok {name}: gamma={gamma} gamma_r={roman}");
        }
    }
    println!(
        "checked {} graphs, {} mismatches, {} skipped",
        graphs.len() - skipped,
        mismatches,
        skipped
    );
    if mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::Defect(format!(
            "{mismatches} solver/oracle mismatches"
        )))
    }
}

fn verify(global: &GlobalArgs, args: &VerifyTraceArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.path)
        .with_context(|| format!("reading {}", args.path.display()))?;
    let trace =
        ProofTrace::from_json(&text).with_context(|| format!("parsing {}", args.path.display()))?;
    let options = VerifyOptions {
        recheck_optimality: args.recheck_optimality.then(|| global.budget()),
    };
    let verification = verify_trace_with(&trace, options);
    for outcome in &verification.outcomes {
        if outcome.passed {
            println!("PASS {}", outcome.name);
        } else {
            println!("FAIL {}: {}", outcome.name, outcome.detail);
        }
    }
    if verification.passed() {
        println!("trace verified");
        Ok(())
    } else {
        let names: Vec<&str> = verification.failures().map(|o| o.name).collect();
        Err(Failure::Defect(format!(
            "trace rejected: {}",
            names.join(", ")
        )))
    }
}
