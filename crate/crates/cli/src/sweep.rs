//! Batch audits. Pairs are enumerated in a fixed order and results keep that
//! order regardless of `--jobs`, so output is reproducible.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use domcheck_core::audit::{audit_pair_with, AuditOptions, AuditReport};
use domcheck_core::SolverBudget;
use rayon::prelude::*;
use serde::Serialize;

use crate::source::{expand_source, NamedGraph};
use crate::{is_budget_audit_error, parse_tie_break, Failure, GlobalArgs};

pub const SUMMARY_SCHEMA: &str = "domcheck.sweep-summary/v1";

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    /// Every G with every H.
    All,
    /// The k-th G with the k-th H.
    Zipped,
    /// Every G with itself.
    #[value(name = "self")]
    SelfPairs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Sources for G (repeatable; ranges and corpora expand).
    #[arg(long = "g", value_name = "SRC", required = true)]
    g: Vec<String>,
    /// Sources for H; defaults to the G list.
    #[arg(long = "h", value_name = "SRC")]
    h: Vec<String>,
    #[arg(long, value_enum, default_value_t = PairMode::All)]
    pairs: PairMode,
    /// Per-pair CSV output (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    csv: Option<String>,
    /// Aggregate JSON summary output (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    summary: Option<String>,
    /// Directory for one proof trace per completed pair.
    #[arg(long, value_name = "DIR")]
    traces_dir: Option<PathBuf>,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value = "smallest")]
    tie_break: String,
    /// Leave the solve_ms column empty so output is byte-for-byte reproducible.
    #[arg(long)]
    omit_timings: bool,
}

/// One CSV row. Numeric fields are empty when the pair did not complete.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub g: String,
    pub h: String,
    pub g_order: usize,
    pub h_order: usize,
    pub gamma_g: Option<usize>,
    pub gamma_h: Option<usize>,
    pub gamma_product: Option<usize>,
    pub gamma_r_product: Option<usize>,
    pub product_of_gammas: Option<usize>,
    pub clark_suen_bound: Option<usize>,
    pub gap: Option<i64>,
    pub theorem2: Option<bool>,
    pub theorem1: Option<bool>,
    pub lemma1_product: Option<bool>,
    pub lemma2_product: Option<bool>,
    pub trace_checks: Option<bool>,
    /// `ok`, `defect`, `budget_exceeded` or `error`.
    pub status: String,
    pub detail: String,
    pub nodes_explored: Option<u64>,
    pub solve_ms: Option<f64>,
    pub trace_ref: Option<String>,
}

impl SweepRow {
    fn from_report(index: usize, report: &AuditReport, g: &NamedGraph, h: &NamedGraph) -> Self {
        let v = report.verdicts;
        Self {
            index,
            g: g.name.clone(),
            h: h.name.clone(),
            g_order: g.graph.order(),
            h_order: h.graph.order(),
            gamma_g: Some(report.gamma_g),
            gamma_h: Some(report.gamma_h),
            gamma_product: Some(report.gamma_product),
            gamma_r_product: Some(report.gamma_r_product),
            product_of_gammas: Some(report.product_of_gammas),
            clark_suen_bound: Some(report.clark_suen_bound),
            gap: Some(report.gap),
            theorem2: Some(v.theorem2),
            theorem1: Some(v.theorem1),
            lemma1_product: Some(v.lemma1_product),
            lemma2_product: Some(v.lemma2_product),
            trace_checks: Some(v.trace_checks),
            status: if report.passed() { "ok" } else { "defect" }.into(),
            detail: String::new(),
            nodes_explored: Some(report.nodes_explored),
            solve_ms: Some(report.solve_ms),
            trace_ref: report.trace_ref.clone(),
        }
    }

    fn failed(index: usize, g: &NamedGraph, h: &NamedGraph, status: &str, detail: String) -> Self {
        Self {
            index,
            g: g.name.clone(),
            h: h.name.clone(),
            g_order: g.graph.order(),
            h_order: h.graph.order(),
            status: status.into(),
            detail,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub schema: &'static str,
    pub pairs: usize,
    pub completed: usize,
    pub budget_exceeded: usize,
    pub errors: usize,
    pub defects: usize,
    pub min_gap: Option<i64>,
    pub median_gap: Option<f64>,
    /// Pairs with `γ(G)γ(H) = γ_R(G □ H)`.
    pub tight: usize,
    /// Pairs with `γ_R(G □ H) < 2γ(G □ H)`.
    pub strict_improvement: usize,
    pub all_pass: bool,
}

pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let done: Vec<&SweepRow> = rows.iter().filter(|r| r.gap.is_some()).collect();
    let mut gaps: Vec<i64> = done.iter().filter_map(|r| r.gap).collect();
    gaps.sort_unstable();
    let median_gap = match gaps.len() {
        0 => None,
        k if k % 2 == 1 => Some(gaps[k / 2] as f64),
        k => Some((gaps[k / 2 - 1] + gaps[k / 2]) as f64 / 2.0),
    };
    let count = |status: &str| rows.iter().filter(|r| r.status == status).count();
    let defects = count("defect");
    SweepSummary {
        schema: SUMMARY_SCHEMA,
        pairs: rows.len(),
        completed: done.len(),
        budget_exceeded: count("budget_exceeded"),
        errors: count("error"),
        defects,
        min_gap: gaps.first().copied(),
        median_gap,
        tight: gaps.iter().filter(|&&g| g == 0).count(),
        strict_improvement: done
            .iter()
            .filter(|r| r.gamma_r_product < r.clark_suen_bound)
            .count(),
        all_pass: defects == 0 && done.len() == rows.len(),
    }
}

fn expand_all(specs: &[String], seed: u64) -> Result<Vec<NamedGraph>> {
    let mut out = Vec::new();
    for spec in specs {
        out.extend(expand_source(spec, seed)?);
    }
    Ok(out)
}

pub fn make_pairs(
    gs: &[NamedGraph],
    hs: &[NamedGraph],
    mode: PairMode,
) -> Result<Vec<(usize, usize)>> {
    Ok(match mode {
        PairMode::All => (0..gs.len())
            .flat_map(|i| (0..hs.len()).map(move |j| (i, j)))
            .collect(),
        PairMode::Zipped => {
            if gs.len() != hs.len() {
                bail!(
                    "--pairs zipped needs equally long lists ({} vs {})",
                    gs.len(),
                    hs.len()
                );
            }
            (0..gs.len()).map(|i| (i, i)).collect()
        }
        PairMode::SelfPairs => (0..gs.len()).map(|i| (i, i)).collect(),
    })
}

fn audit_one(
    index: usize,
    g: &NamedGraph,
    h: &NamedGraph,
    budget: SolverBudget,
    options: &AuditOptions,
    traces_dir: Option<&Path>,
) -> SweepRow {
    match audit_pair_with(&g.graph, &h.graph, budget, options) {
        Ok((mut report, trace)) => {
            if let Some(dir) = traces_dir {
                let path = dir.join(format!("pair-{index:05}.json"));
                match fs::write(&path, trace.to_json()) {
                    Ok(()) => report.trace_ref = Some(path.display().to_string()),
                    Err(e) => {
                        return SweepRow::failed(
                            index,
                            g,
                            h,
                            "error",
                            format!("writing trace: {e}"),
                        )
                    }
                }
            }
            SweepRow::from_report(index, &report, g, h)
        }
        Err(e) if is_budget_audit_error(&e) => {
            SweepRow::failed(index, g, h, "budget_exceeded", e.to_string())
        }
        Err(e) => SweepRow::failed(index, g, h, "error", e.to_string()),
    }
}

/// Audits every pair on a pool of `jobs` threads; rows come back in pair order.
pub fn run_pairs(
    gs: &[NamedGraph],
    hs: &[NamedGraph],
    pairs: &[(usize, usize)],
    jobs: usize,
    budget: SolverBudget,
    options: &AuditOptions,
    traces_dir: Option<&Path>,
) -> Result<Vec<SweepRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("building thread pool")?;
    Ok(pool.install(|| {
        pairs
            .par_iter()
            .enumerate()
            .map(|(index, &(i, j))| audit_one(index, &gs[i], &hs[j], budget, options, traces_dir))
            .collect()
    }))
}

fn write_csv<W: io::Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

fn emit(target: &str, write: impl FnOnce(&mut dyn io::Write) -> Result<()>) -> Result<()> {
    if target == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        write(&mut lock)
    } else {
        let mut file = fs::File::create(target).with_context(|| format!("creating {target}"))?;
        write(&mut file)
    }
}

pub fn run(global: &GlobalArgs, args: &SweepArgs) -> Result<(), Failure> {
    let gs = expand_all(&args.g, global.seed)?;
    let hs = if args.h.is_empty() {
        gs.clone()
    } else {
        expand_all(&args.h, global.seed)?
    };
    let pairs = make_pairs(&gs, &hs, args.pairs)?;
    let options = AuditOptions {
        tie_break: parse_tie_break(&args.tie_break, global.seed)?,
        ..AuditOptions::default()
    };
    if let Some(dir) = &args.traces_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut rows = run_pairs(
        &gs,
        &hs,
        &pairs,
        jobs,
        global.budget(),
        &options,
        args.traces_dir.as_deref(),
    )?;
    if args.omit_timings {
        for row in &mut rows {
            row.solve_ms = None;
        }
    }
    let summary = summarize(&rows);

    if let Some(target) = &args.csv {
        emit(target, |w| write_csv(w, &rows))?;
    }
    if let Some(target) = &args.summary {
        emit(target, |w| {
            serde_json::to_writer_pretty(&mut *w, &summary)?;
            writeln!(w)?;
            Ok(())
        })?;
    }
    let to_stdout =
        matches!(args.csv.as_deref(), Some("-")) || matches!(args.summary.as_deref(), Some("-"));
    let line = format!(
        "swept {} pairs: {} completed, {} budget exceeded, {} errors, {} defects, {} tight, {} strict improvements",
        summary.pairs,
        summary.completed,
        summary.budget_exceeded,
        summary.errors,
        summary.defects,
        summary.tight,
        summary.strict_improvement
    );
    if to_stdout {
        eprintln!("{line}");
    } else {
        println!("{line}");
    }
    for row in rows.iter().filter(|r| r.status != "ok") {
        eprintln!(
            "pair {} ({}, {}): {} {}",
            row.index, row.g, row.h, row.status, row.detail
        );
    }

    if summary.defects > 0 {
        Err(Failure::Defect(format!(
            "{} pairs failed a verdict",
            summary.defects
        )))
    } else {
        Ok(())
    }
}
