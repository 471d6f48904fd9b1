//! Command-line orchestration for the `pgw` binary.
//!
//! ```text
//! pgw {info|check|construct|count|demo} [<file>] [--with-oracle]
//!     [--budget <sec>] [--jobs <k>] [--report <path>] [--format {text|json}]
//! ```
//!
//! `<file>` is a group file or the name of a built-in group; it defaults to
//! `sg2187_194`. Exit codes: 0 success, 1 hypotheses not applicable, 2 input
//! error, 3 internal contradiction.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::automorphism::{construct_witness, AutError, TheoremWitness, WitnessMode};
use crate::corpus;
use crate::example;
use crate::format::{self, ParseError};
use crate::hypothesis::{check_hypotheses, GroupAnalysis, HypothesisReport};
use crate::oracle::{cross_validate, OracleError, OracleOptions};
use crate::pc::PcGroup;
use crate::report::{self, RunReport};
use crate::structure::StructureError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Order, class, centre, Frattini subgroup, maximal subgroups.
    Info,
    /// Evaluate the hypotheses of the theorem and its corollary.
    Check,
    /// Build and verify the non-inner automorphism.
    Construct,
    /// Count automorphisms by brute force.
    Count,
    /// Full pipeline on SmallGroup(3^7, 194), checking its known facts.
    Demo,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "pgw", version, about = "Non-inner automorphisms of finite p-groups")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Group file, or a built-in name such as h27 or sg2187_194.
    pub input: Option<String>,
    /// Also run the brute-force automorphism count.
    #[arg(long)]
    pub with_oracle: bool,
    /// Abort the automorphism count after this many seconds.
    #[arg(long, value_name = "SEC")]
    pub budget: Option<u64>,
    /// Worker threads.
    #[arg(long, value_name = "K")]
    pub jobs: Option<usize>,
    /// Also write the JSON report here.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no such file or built-in group: {0}")]
    UnknownInput(String),
    #[error("demo runs on the built-in group and takes no input")]
    DemoInput,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Oracle(OracleError),
    #[error("cannot write report to {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// How a command ended, alongside the report it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotApplicable(String),
    Contradiction(String),
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotApplicable(_) => 1,
            Status::Contradiction(_) => 3,
        }
    }

    /// Keeps the more serious of two outcomes.
    fn and(self, other: Status) -> Status {
        if other.exit_code() > self.exit_code() {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub status: Status,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub with_oracle: bool,
    pub budget: Option<Duration>,
}

/// Resolves a path or built-in name; `None` gives the built-in example.
pub fn load_input(input: Option<&str>) -> Result<PcGroup, CliError> {
    let Some(input) = input else {
        return Ok(corpus::example_group());
    };
    let path = Path::new(input);
    if path.exists() {
        return Ok(format::load(path)?.group);
    }
    corpus::by_name(input).ok_or_else(|| CliError::UnknownInput(input.to_string()))
}

fn analyse(group: &PcGroup, report: &mut RunReport) -> Result<GroupAnalysis, CliError> {
    let start = Instant::now();
    let analysis = GroupAnalysis::new(group)?;
    report.group = report::group_section(group, &analysis);
    report.record_time("analysis", start.elapsed());
    Ok(analysis)
}

fn hypotheses(group: &PcGroup, analysis: &GroupAnalysis, report: &mut RunReport) -> HypothesisReport {
    let start = Instant::now();
    let h = check_hypotheses(group, analysis);
    report.hypotheses = report::hypotheses_section(&h);
    report.record_time("hypotheses", start.elapsed());
    h
}

fn construct(group: &PcGroup, analysis: &GroupAnalysis, report: &mut RunReport) -> (Option<TheoremWitness>, Status) {
    let start = Instant::now();
    let result = construct_witness(group, analysis, WitnessMode::Strict);
    report.record_time("construct", start.elapsed());
    match result {
        Ok(w) => {
            report.witness = report::witness_section(group, &w);
            report.verification = report::verification_section(&w);
            (Some(w), Status::Ok)
        }
        Err(e) if e.is_internal_contradiction() => (None, Status::Contradiction(e.to_string())),
        Err(
            e @ (AutError::HypothesesNotSatisfied(_) | AutError::NoEligibleU | AutError::CentralizerNotMaximal { .. }),
        ) => (None, Status::NotApplicable(e.to_string())),
        Err(e) => (None, Status::Contradiction(e.to_string())),
    }
}

fn oracle(group: &PcGroup, options: &RunOptions, report: &mut RunReport) -> Result<Status, CliError> {
    let start = Instant::now();
    let oracle_options = OracleOptions {
        budget: options.budget,
        ..Default::default()
    };
    let result = cross_validate(group, &oracle_options);
    report.record_time("oracle", start.elapsed());
    match result {
        Ok(cv) => {
            let expected_inner = group.order() / crate::structure::center(group).order();
            report.oracle = report::oracle_section(&cv.count, expected_inner, cv.witness_in_bucket);
            Ok(Status::Ok)
        }
        Err(OracleError::Mismatch(m)) => Ok(Status::Contradiction(m)),
        Err(OracleError::Automorphism(e)) => Ok(Status::Contradiction(e.to_string())),
        Err(e) => Err(CliError::Oracle(e)),
    }
}

pub fn run_info(group: &PcGroup) -> Result<Outcome, CliError> {
    let mut report = RunReport::default();
    analyse(group, &mut report)?;
    Ok(Outcome {
        report,
        status: Status::Ok,
    })
}

pub fn run_check(group: &PcGroup, options: &RunOptions) -> Result<Outcome, CliError> {
    let mut report = RunReport::default();
    let analysis = analyse(group, &mut report)?;
    let h = hypotheses(group, &analysis, &mut report);
    let mut status = if h.theorem_applicable {
        Status::Ok
    } else {
        Status::NotApplicable("theorem hypotheses fail".into())
    };
    if options.with_oracle {
        status = status.and(oracle(group, options, &mut report)?);
    }
    Ok(Outcome { report, status })
}

pub fn run_construct(group: &PcGroup, options: &RunOptions) -> Result<Outcome, CliError> {
    let mut report = RunReport::default();
    let analysis = analyse(group, &mut report)?;
    hypotheses(group, &analysis, &mut report);
    let (_, mut status) = construct(group, &analysis, &mut report);
    if options.with_oracle {
        status = status.and(oracle(group, options, &mut report)?);
    }
    Ok(Outcome { report, status })
}

pub fn run_count(group: &PcGroup, options: &RunOptions) -> Result<Outcome, CliError> {
    let mut report = RunReport::default();
    analyse(group, &mut report)?;
    let status = oracle(group, options, &mut report)?;
    Ok(Outcome { report, status })
}

/// The whole pipeline on the built-in `SmallGroup(3^7, 194)`, checking every
/// known fact about it. A failed fact is a contradiction.
pub fn run_demo(options: &RunOptions) -> Result<Outcome, CliError> {
    let group = corpus::example_group();
    let mut report = RunReport::default();
    let analysis = analyse(&group, &mut report)?;
    let h = hypotheses(&group, &analysis, &mut report);
    let (_, mut status) = construct(&group, &analysis, &mut report);

    let start = Instant::now();
    let mut facts: Vec<(String, bool)> = example::check(&group)
        .into_iter()
        .map(|f| (f.name.to_string(), f.holds))
        .collect();
    report.record_time("facts", start.elapsed());
    facts.push(("Z(G) has order 3, so G is monolithic".into(), h.monolithic));
    facts.push(("[Z(M), g] <= Z(G) for every maximal M".into(), h.zm_condition));
    facts.push(("theorem hypotheses hold".into(), h.theorem_applicable));
    if options.with_oracle {
        status = status.and(oracle(&group, options, &mut report)?);
        let total = report.oracle["total"].as_u64();
        let inner = report.oracle["inner"].as_u64();
        facts.push(("|Aut(G)| = 4374".into(), total == Some(example::AUT_ORDER)));
        facts.push(("|Inn(G)| = 729".into(), inner == Some(example::INNER_COUNT)));
    }
    let failed: Vec<&str> = facts.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
    if !failed.is_empty() {
        status = status.and(Status::Contradiction(format!("failed: {}", failed.join("; "))));
    }
    let facts: serde_json::Map<String, Value> = facts.into_iter().map(|(k, v)| (k, Value::Bool(v))).collect();
    if report.verification.is_null() {
        report.verification = json!({});
    }
    report.verification["facts"] = Value::Object(facts);
    Ok(Outcome { report, status })
}

pub fn run(args: &Args) -> Result<Outcome, CliError> {
    let options = RunOptions {
        with_oracle: args.with_oracle,
        budget: args.budget.map(Duration::from_secs),
    };
    let start = Instant::now();
    let mut outcome = match args.command {
        Command::Demo => {
            if args.input.is_some() {
                return Err(CliError::DemoInput);
            }
            run_demo(&options)?
        }
        command => {
            let group = load_input(args.input.as_deref())?;
            match command {
                Command::Info => run_info(&group)?,
                Command::Check => run_check(&group, &options)?,
                Command::Construct => run_construct(&group, &options)?,
                Command::Count => run_count(&group, &options)?,
                Command::Demo => unreachable!(),
            }
        }
    };
    outcome.report.record_time("total", start.elapsed());
    Ok(outcome)
}

/// Runs `args` inside a pool of `--jobs` threads.
pub fn run_with_jobs(args: &Args) -> Result<Outcome, CliError> {
    match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(|| run(args)),
        None => run(args),
    }
}

/// A short human-readable summary of a report.
pub fn render_text(report: &RunReport, status: &Status) -> String {
    let mut out = String::new();
    let g = &report.group;
    if !g.is_null() {
        let _ = writeln!(
            out,
            "group {}: p = {}, n = {}, order {}, class {}, rank {}",
            g["name"].as_str().unwrap_or("?"),
            g["p"],
            g["n"],
            g["order"],
            g["class"],
            g["rank"]
        );
        let _ = writeln!(out, "  Z(G)     = {}", subgroup_text(&g["center"]));
        let _ = writeln!(out, "  Phi(G)   = {}", subgroup_text(&g["frattini"]));
        for (k, m) in g["maximals"].as_array().into_iter().flatten().enumerate() {
            let _ = writeln!(
                out,
                "  M{}       = {}, Z(M{}) = {}",
                k + 1,
                subgroup_text(&m["subgroup"]),
                k + 1,
                subgroup_text(&m["center"])
            );
        }
    }
    if let Some(h) = report.hypotheses.as_object() {
        let _ = writeln!(out, "hypotheses:");
        for key in [
            "p_odd",
            "nonabelian",
            "monolithic",
            "all_maximals_nonabelian",
            "zm_condition",
            "corollary_centralizer_condition",
            "theorem_applicable",
            "corollary_applicable",
        ] {
            let _ = writeln!(out, "  {key:<32} {}", h[key]);
        }
    }
    if let Some(w) = report.witness.as_object() {
        let _ = writeln!(
            out,
            "witness: u = {}, g = {}, M = {}",
            w["u"].as_str().unwrap_or("?"),
            w["g"].as_str().unwrap_or("?"),
            subgroup_text(&w["maximal"])
        );
        for (k, img) in w["images"].as_array().into_iter().flatten().enumerate() {
            let _ = writeln!(out, "  f{} -> {}", k + 1, img.as_str().unwrap_or("?"));
        }
    }
    if let Some(v) = report.verification.as_object() {
        let _ = writeln!(out, "verification:");
        for (key, value) in v {
            if key == "facts" {
                for (fact, ok) in value.as_object().into_iter().flatten() {
                    let _ = writeln!(
                        out,
                        "  [{}] {fact}",
                        if ok.as_bool() == Some(true) { "ok" } else { "FAILED" }
                    );
                }
            } else {
                let _ = writeln!(out, "  {key:<32} {value}");
            }
        }
    }
    if let Some(o) = report.oracle.as_object() {
        let _ = writeln!(out, "oracle:");
        for (key, value) in o {
            let _ = writeln!(out, "  {key:<32} {value}");
        }
    }
    match status {
        Status::Ok => {}
        Status::NotApplicable(why) => {
            let _ = writeln!(out, "not applicable: {why}");
        }
        Status::Contradiction(why) => {
            let _ = writeln!(out, "INTERNAL CONTRADICTION: {why}");
        }
    }
    out
}

fn subgroup_text(v: &Value) -> String {
    let gens: Vec<&str> = v["generators"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(Value::as_str)
        .collect();
    format!("<{}> (order {})", gens.join(", "), v["order"])
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with(args: Args) -> i32 {
    let outcome = match run_with_jobs(&args) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("pgw: {e}");
            return 2;
        }
    };
    if let Some(path) = &args.report {
        if let Err(source) = std::fs::write(path, outcome.report.to_json()) {
            eprintln!(
                "pgw: {}",
                CliError::Write {
                    path: path.display().to_string(),
                    source
                }
            );
            return 2;
        }
    }
    match args.format {
        OutputFormat::Json => print!("{}", outcome.report.to_json()),
        OutputFormat::Text => print!("{}", render_text(&outcome.report, &outcome.status)),
    }
    match &outcome.status {
        Status::Ok => {}
        Status::NotApplicable(why) => eprintln!("pgw: not applicable: {why}"),
        Status::Contradiction(why) => eprintln!("pgw: internal contradiction: {why}"),
    }
    outcome.status.exit_code()
}
