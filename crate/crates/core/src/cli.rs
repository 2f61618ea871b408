//! The `proofscope` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::minimize::{minimize_premises, minimized_problem_text, MinimizeError};
use crate::proof::{analyze, proof_diff, structural_tidy, AnalysisReport};
use crate::report::{
    count, problem_digest, render_diff, EnumerationReport, MinimizationReport, RunManifest, FORMAT_VERSION, TOOL_VERSION,
};
use crate::saturation::{saturate, SaturationResult, SearchConfig, SosPolicy, Status};
use crate::tptp::{clausify, load_problem, ClauseSet, ProblemSpec};

/// At least one proof found; also a successful minimize, analyze or diff.
pub const EXIT_PROOF: i32 = 0;
/// Saturated without a proof.
pub const EXIT_SATURATED: i32 = 1;
/// A limit fired before any proof; for minimize, no proof from the full premise set.
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
/// Unreadable, malformed or unwritable files.
pub const EXIT_INPUT: i32 = 4;
/// Invalid proofs in a report, or reports of different problems.
pub const EXIT_ANALYSIS: i32 = 5;

/// Include root consulted after every `--include-dir`.
pub const INCLUDE_ENV: &str = "PROOFSCOPE_INCLUDE_DIR";

#[derive(Parser, Debug)]
#[command(name = "proofscope", version, about = "Enumerate, measure and compare resolution refutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Collect every refutation within the limits and analyze them.
    Enumerate(SearchArgs),
    /// Stop at the first refutation.
    Prove(SearchArgs),
    /// Greedily drop premises that the conjecture does not need.
    Minimize(MinimizeArgs),
    /// Re-check and re-analyze the proofs stored in a report.
    Analyze(AnalyzeArgs),
    /// Compare two stored proofs.
    Diff(DiffArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SosArg {
    Conjecture,
    All,
}

/// A positive count, or `None` for `unlimited`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct LimitValue(Option<usize>);

fn parse_limit(s: &str) -> Result<LimitValue, String> {
    if s == "unlimited" {
        return Ok(LimitValue(None));
    }
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(LimitValue(Some(n))),
        Err(_) => Err(format!("expected a positive number or 'unlimited', got '{s}'")),
    }
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Stop after this many distinct refutations (default: unlimited).
    #[arg(long, value_name = "N", value_parser = parse_limit)]
    max_proofs: Option<LimitValue>,
    /// Largest clause weight (symbol count) kept.
    #[arg(long, value_name = "N", value_parser = parse_limit)]
    max_weight: Option<LimitValue>,
    /// Given-clause iterations before giving up.
    #[arg(long, value_name = "N", value_parser = parse_limit)]
    max_given: Option<LimitValue>,
    /// Clauses kept across all sets before giving up.
    #[arg(long, value_name = "N", value_parser = parse_limit)]
    max_kept: Option<LimitValue>,
    /// Set of support: negated conjecture clauses, or every input clause.
    #[arg(long, value_enum)]
    sos: Option<SosArg>,
}

impl LimitArgs {
    fn apply(&self, mut c: SearchConfig) -> SearchConfig {
        if let Some(LimitValue(v)) = self.max_proofs {
            c.max_proofs = v;
        }
        if let Some(LimitValue(v)) = self.max_weight {
            c.max_weight = v;
        }
        if let Some(LimitValue(v)) = self.max_given {
            c.max_given = v;
        }
        if let Some(LimitValue(v)) = self.max_kept {
            c.max_kept_clauses = v;
        }
        match self.sos {
            Some(SosArg::Conjecture) => c.sos_policy = SosPolicy::NegatedConjectureOnly,
            Some(SosArg::All) => c.sos_policy = SosPolicy::AllInput,
            None => {}
        }
        c
    }
}

#[derive(Args, Debug)]
struct InputArgs {
    problem: PathBuf,
    /// Extra root for `include` directives; may repeat.
    #[arg(long, value_name = "DIR")]
    include_dir: Vec<PathBuf>,
    /// Directory for report files (default: next to the problem).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    limits: LimitArgs,
    /// Keep every empty-clause occurrence instead of one per identity class.
    #[arg(long)]
    no_dedup: bool,
    /// Also write the derivation log to this file.
    #[arg(long, value_name = "FILE")]
    log: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MinimizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    report: PathBuf,
    /// Tidy every proof before analysis.
    #[arg(long)]
    tidy: bool,
    /// Print the recomputed report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct DiffArgs {
    report: PathBuf,
    /// Second report; without it both proofs come from the first.
    other: Option<PathBuf>,
    /// 1-based proof number in the first report.
    #[arg(long, default_value_t = 1)]
    a: usize,
    /// 1-based proof number in the second report (default 1, or 2 with one report).
    #[arg(long)]
    b: Option<usize>,
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PROOF };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Enumerate(a) => cmd_search("enumerate", &a, SearchConfig::default()),
        Command::Prove(a) => cmd_search("prove", &a, SearchConfig { max_proofs: Some(1), ..SearchConfig::default() }),
        Command::Minimize(a) => cmd_minimize(&a),
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Diff(a) => cmd_diff(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("proofscope: {}", f.message);
            f.code
        }
    }
}

fn include_dirs(args: &InputArgs) -> Vec<PathBuf> {
    let mut dirs = args.include_dir.clone();
    if let Some(env) = std::env::var_os(INCLUDE_ENV) {
        if !env.is_empty() {
            dirs.push(PathBuf::from(env));
        }
    }
    dirs
}

fn load(args: &InputArgs) -> Result<(ProblemSpec, ClauseSet), Failure> {
    let spec = load_problem(&args.problem, &include_dirs(args)).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    let set = clausify(&spec).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    Ok((spec, set))
}

/// `<dir>/<problem file name><suffix>`, with `dir` defaulting to the problem's directory.
fn output_path(args: &InputArgs, suffix: &str) -> PathBuf {
    let name = args.problem.file_name().map_or_else(|| "problem".into(), |n| n.to_string_lossy().into_owned());
    let dir = args.out.clone().unwrap_or_else(|| args.problem.parent().map(Path::to_path_buf).unwrap_or_default());
    dir.join(format!("{name}{suffix}"))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, contents).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write_timing(args: &InputArgs, command: &str, started: Instant) -> Result<(), Failure> {
    let timing = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "command": command,
        "wall_time_ms": started.elapsed().as_secs_f64() * 1000.0,
    });
    write(&output_path(args, ".timing.json"), &format!("{timing:#}\n"))
}

fn manifest(command: &str, args: &InputArgs, spec: &ProblemSpec, set: &ClauseSet, config: &SearchConfig) -> RunManifest {
    RunManifest {
        command: command.to_string(),
        inputs: vec![args.problem.display().to_string()],
        problem: spec.name.clone(),
        problem_digest: problem_digest(set),
        config: config.clone(),
        tool_version: TOOL_VERSION.to_string(),
        status: None,
        limit: None,
        counters: None,
    }
}

fn exit_code(result: &SaturationResult) -> i32 {
    if !result.refutations.is_empty() {
        EXIT_PROOF
    } else if result.status == Status::Saturated {
        EXIT_SATURATED
    } else {
        EXIT_LIMIT
    }
}

fn cmd_search(command: &str, args: &SearchArgs, base: SearchConfig) -> Outcome {
    let started = Instant::now();
    let mut config = args.limits.apply(base);
    if args.no_dedup {
        config.dedup_proofs = false;
    }
    config.validate().map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let (spec, set) = load(&args.input)?;
    if set.clauses.is_empty() {
        return Err(fail(EXIT_INPUT, format!("{}: no clauses to refute", args.input.problem.display())));
    }
    let result = saturate(&set, &config).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let analysis: AnalysisReport =
        analyze(&result.refutations).map_err(|e| fail(EXIT_ANALYSIS, format!("internal proof check failed: {e}")))?;
    let mut m = manifest(command, &args.input, &spec, &set, &config);
    m.status = Some(result.status);
    m.limit = result.limit;
    m.counters = Some(result.counters.clone());
    let report = EnumerationReport::new(m, &result, analysis);
    let text = report.render_text();
    write(&output_path(&args.input, ".report.json"), &report.to_json())?;
    write(&output_path(&args.input, ".report.txt"), &text)?;
    if let Some(log) = &args.log {
        write(log, &result.log.render())?;
    }
    write_timing(&args.input, command, started)?;
    println!("{}, {}", result.status, count(result.refutations.len(), "proof"));
    if !report.spectrum.is_empty() {
        let spectrum: Vec<String> = report.spectrum.iter().map(|(l, n)| format!("{l}:{n}")).collect();
        println!("spectrum (length:count): {}", spectrum.join(" "));
    }
    if command == "prove" {
        if let Some(p) = report.proofs.first() {
            for r in &p.nodes {
                println!("{r}");
            }
        }
    }
    println!("report: {}", output_path(&args.input, ".report.json").display());
    Ok(exit_code(&result))
}

fn cmd_minimize(args: &MinimizeArgs) -> Outcome {
    let started = Instant::now();
    let config = args.limits.apply(SearchConfig::probe());
    config.validate().map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let (spec, set) = load(&args.input)?;
    let result = match minimize_premises(&spec, &config) {
        Ok(r) => r,
        Err(e @ (MinimizeError::NotProvable | MinimizeError::BudgetExhausted)) => return Err(fail(EXIT_LIMIT, e.to_string())),
        Err(MinimizeError::Frontend(e)) => return Err(fail(EXIT_INPUT, e.to_string())),
        Err(MinimizeError::Search(e)) => return Err(fail(EXIT_INPUT, e.to_string())),
    };
    let report = MinimizationReport {
        format_version: FORMAT_VERSION,
        manifest: manifest("minimize", &args.input, &spec, &set, &result.budget_config),
        premises: spec.premise_labels().len(),
        result,
    };
    let minimized = output_path(&args.input, ".min.p");
    write(&minimized, &minimized_problem_text(&spec, &report.result))?;
    write(&output_path(&args.input, ".minimize.json"), &report.to_json())?;
    let text = report.render_text();
    write(&output_path(&args.input, ".minimize.txt"), &text)?;
    write_timing(&args.input, "minimize", started)?;
    print!("{text}");
    println!("minimized problem: {}", minimized.display());
    Ok(EXIT_PROOF)
}

fn read_report(path: &Path) -> Result<EnumerationReport, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    EnumerationReport::from_json(&text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn cmd_analyze(args: &AnalyzeArgs) -> Outcome {
    let stored = read_report(&args.report)?;
    let mut dags = stored.dags();
    if args.tidy {
        dags = dags.iter().map(structural_tidy).collect();
    }
    let analysis = analyze(&dags).map_err(|e| fail(EXIT_ANALYSIS, format!("{}: {e}", args.report.display())))?;
    let mut manifest = stored.manifest.clone();
    manifest.command = if args.tidy { "analyze --tidy" } else { "analyze" }.to_string();
    manifest.inputs = vec![args.report.display().to_string()];
    let mut report = stored;
    report.manifest = manifest;
    report.proofs = dags
        .iter()
        .zip(&analysis.metrics)
        .enumerate()
        .map(|(i, (p, m))| crate::report::ProofRecord::from_dag(i + 1, p, *m))
        .collect();
    report.spectrum = analysis.spectrum;
    report.identity = analysis.identity;
    report.shared = analysis.shared;
    report.common_core = analysis.common_core;
    report.diffs = analysis.diffs;
    report.diffs_truncated = analysis.diffs_truncated;
    if args.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    Ok(EXIT_PROOF)
}

fn pick(report: &EnumerationReport, n: usize, path: &Path) -> Result<crate::proof::ProofDag, Failure> {
    report
        .proofs
        .get(n.wrapping_sub(1))
        .map(|p| p.to_dag())
        .ok_or_else(|| fail(EXIT_USAGE, format!("{} has no proof {n} ({} stored)", path.display(), report.proofs.len())))
}

fn cmd_diff(args: &DiffArgs) -> Outcome {
    let first = read_report(&args.report)?;
    let (second, second_path) = match &args.other {
        Some(p) => (read_report(p)?, p.as_path()),
        None => (first.clone(), args.report.as_path()),
    };
    if first.manifest.problem_digest != second.manifest.problem_digest {
        return Err(fail(
            EXIT_ANALYSIS,
            format!("{} and {} come from different problems", args.report.display(), second_path.display()),
        ));
    }
    let b = args.b.unwrap_or(if args.other.is_some() { 1 } else { 2 });
    let pa = pick(&first, args.a, &args.report)?;
    let pb = pick(&second, b, second_path)?;
    for (p, path) in [(&pa, &args.report), (&pb, &second_path.to_path_buf())] {
        crate::proof::check_proof(p).map_err(|e| fail(EXIT_ANALYSIS, format!("{}: invalid proof: {e}", path.display())))?;
    }
    print!("{}", render_diff(&proof_diff(&pa, &pb), args.a, b));
    Ok(EXIT_PROOF)
}
