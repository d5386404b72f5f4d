//! Command-line workbench for online obstruction-deletion with advice:
//! generate adversarial instance families, solve instances offline, replay
//! advised strategies bit-for-bit, and certify family advice lower bounds.
//!
//! Every subcommand prints machine-readable JSON records (one per line) to
//! stdout, followed by a blank line and a human-readable summary. Exit codes:
//! 0 success, 1 runtime failure, 2 usage error, 3 invalid input, 4 search cap
//! or budget exceeded, 5 verification failure.

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use fdel::advice::AdviceTape;
use fdel::engine::{run as drive, Element, EngineError, OnlineInstance};
use fdel::gadgets::{
    clique_join_family, connected_lb_family, disconnected_lb_family, e_extension, edge_lb_family,
    independent_join_family, Family, FamilyKind, FamilyMember, GadgetError,
};
use fdel::io::{parse_graph, parse_graph6, parse_graph_list, write_graph6, write_text, FormatError};
use fdel::iso::IsoError;
use fdel::obstruction::{
    extremal_remainder, not_sub_h_join_family, not_sub_h_union_family, ramsey_bound, ExtremalMode,
    Mode, ObstructionError, RamseyCertificate,
};
use fdel::offline::{offline_optimum, SearchBudget};
use fdel::strategy::{
    log_budget, naive_budget, naive_index_width, run_with_log, run_with_naive, Greedy,
    StrategyKind,
};
use fdel::verifier::{audit_bits, verify_e_extension, verify_family, VerifierError};
use fdel::{Graph, ObstructionSet};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fdel", version, about = "Workbench for online obstruction deletion with advice")]
struct Cli {
    /// Worker threads for parallel verification (0 uses all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an adversarial instance family and its manifest.
    Gen(GenArgs),
    /// Compute exact offline optima for instance files.
    Solve(SolveArgs),
    /// Replay an online strategy on one instance and audit its advice bits.
    Run(RunArgs),
    /// Re-certify a generated family from its manifest.
    VerifyLb(VerifyLbArgs),
    /// Find the smallest order at which the obstruction set is unavoidable.
    Ramsey(RamseyArgs),
    /// Build the edge extension of a base graph for every base edge.
    Extend(ExtendArgs),
    /// Split a graph into its join factors.
    Decompose(DecomposeArgs),
    /// List the minimal graphs that are not unions (or joins) of base pieces.
    Obstructions(ObstructionsArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family kind: connected, disconnected, edge, clique-join, or independent-join.
    #[arg(long)]
    family: FamilyKind,
    /// Base graph file for the connected, disconnected, and edge kinds.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Obstruction-set file for the join kinds.
    #[arg(long)]
    obstruction: Option<PathBuf>,
    /// Number of gadgets or edge blocks (connected, disconnected, edge kinds).
    #[arg(long)]
    m: Option<usize>,
    /// Deletion budget of every member (join kinds).
    #[arg(long)]
    opt: Option<usize>,
    /// Order cap for the unavoidability-threshold search (join kinds).
    #[arg(long, default_value_t = 8)]
    cap: usize,
    /// Directory for member files and manifest.json.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance files, one graph each, in text or graph6 format.
    #[arg(required = true)]
    instances: Vec<PathBuf>,
    /// Obstruction-set file.
    #[arg(long)]
    obstruction: PathBuf,
    /// Deletion mode: node or edge.
    #[arg(long, default_value = "node")]
    mode: Mode,
    /// Candidate-set cap for the exhaustive search.
    #[arg(long, default_value_t = 10_000_000)]
    cap: u64,
    /// Directory for full per-instance solution files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Instance file in text or graph6 format.
    instance: PathBuf,
    /// Obstruction-set file.
    #[arg(long)]
    obstruction: PathBuf,
    /// Deletion mode: node or edge.
    #[arg(long, default_value = "node")]
    mode: Mode,
    /// Strategy: greedy, naive-node, naive-edge, or log.
    #[arg(long, default_value = "greedy")]
    strategy: StrategyKind,
    /// Seed for the advice tape's random filler bits.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Order cap for the threshold search needed by the log strategy.
    #[arg(long, default_value_t = 8)]
    cap: usize,
    /// File for the full trace JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyLbArgs {
    /// Family manifest produced by gen.
    manifest: PathBuf,
    /// Candidate-set cap for the per-member optimum search.
    #[arg(long, default_value_t = 10_000_000)]
    cap: u64,
    /// File for the certification report (default: report.json next to the manifest).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RamseyArgs {
    /// Obstruction-set file.
    #[arg(long)]
    obstruction: PathBuf,
    /// Largest order to test.
    #[arg(long, default_value_t = 8)]
    cap: usize,
    /// File for the certificate JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtendArgs {
    /// Base graph file; the base must be disconnected without isolated vertices.
    base: PathBuf,
    /// Directory for the extension graphs as text files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Graph file to split into join factors.
    graph: PathBuf,
}

#[derive(Args)]
struct ObstructionsArgs {
    /// Base graph file.
    base: PathBuf,
    /// Which composition to characterize: union, join, or both.
    #[arg(long, default_value = "both")]
    composition: Composition,
    /// Directory for the obstruction families as graph-list text files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Composition {
    Union,
    Join,
    Both,
}

impl std::str::FromStr for Composition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "union" => Ok(Composition::Union),
            "join" => Ok(Composition::Join),
            "both" => Ok(Composition::Both),
            other => Err(format!("unknown composition `{other}` (expected union, join, or both)")),
        }
    }
}

/// Failures raised by the front end itself, tagged with their exit class.
#[derive(Debug)]
enum CliFailure {
    InvalidInput(String),
    CapExceeded(String),
    Verification(String),
}

impl std::fmt::Display for CliFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliFailure::InvalidInput(m)
            | CliFailure::CapExceeded(m)
            | CliFailure::Verification(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliFailure {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    CliFailure::InvalidInput(msg.into()).into()
}

/// Maps an error chain to the documented exit codes.
fn exit_class(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(cli) = cause.downcast_ref::<CliFailure>() {
            return match cli {
                CliFailure::InvalidInput(_) => 3,
                CliFailure::CapExceeded(_) => 4,
                CliFailure::Verification(_) => 5,
            };
        }
        if let Some(iso) = cause.downcast_ref::<IsoError>() {
            return match iso {
                IsoError::CapExceeded(_) => 4,
            };
        }
        if let Some(engine) = cause.downcast_ref::<EngineError>() {
            return match engine {
                EngineError::SearchBudgetExceeded(_) => 4,
                EngineError::InconsistentAdvice(_) => 5,
                _ => 1,
            };
        }
        if let Some(verifier) = cause.downcast_ref::<VerifierError>() {
            return match verifier {
                VerifierError::Engine(EngineError::SearchBudgetExceeded(_)) => 4,
                VerifierError::Engine(_) => 1,
                _ => 5,
            };
        }
        if let Some(gadget) = cause.downcast_ref::<GadgetError>() {
            return match gadget {
                GadgetError::ExtensionAxiom(_) => 5,
                _ => 3,
            };
        }
        if cause.downcast_ref::<FormatError>().is_some()
            || cause.downcast_ref::<ObstructionError>().is_some()
            || cause.downcast_ref::<std::io::Error>().is_some()
            || cause.downcast_ref::<serde_json::Error>().is_some()
        {
            return 3;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        // CAUTION: the global pool can only be built once; a failure here
        // means it is already running, which is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_class(&err))
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Gen(args) => run_gen(args),
        Command::Solve(args) => run_solve(args),
        Command::Run(args) => run_run(args),
        Command::VerifyLb(args) => run_verify_lb(args),
        Command::Ramsey(args) => run_ramsey(args),
        Command::Extend(args) => run_extend(args),
        Command::Decompose(args) => run_decompose(args),
        Command::Obstructions(args) => run_obstructions(args),
    }
}

// ---------------------------------------------------------------- shared io

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graph = parse_graph(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(graph)
}

fn load_obstruction(path: &Path) -> Result<ObstructionSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let members =
        parse_graph_list(&text).with_context(|| format!("parsing {}", path.display()))?;
    let set = ObstructionSet::reduced(members)
        .with_context(|| format!("reducing the obstruction set from {}", path.display()))?;
    Ok(set)
}

fn emit<T: Serialize>(record: &T) -> Result<()> {
    println!("{}", serde_json::to_string(record)?);
    Ok(())
}

/// Prints an aligned two-or-more-column table with a header row.
fn print_table(headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let render = |cells: Vec<String>| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    println!("{}", render(headers.iter().map(|h| h.to_string()).collect()));
    for row in rows {
        println!("{}", render(row.clone()));
    }
}

fn summary_header() {
    println!();
}

/// Finds the unavoidability threshold or fails with the right exit class.
fn require_threshold(f: &ObstructionSet, cap: usize) -> Result<RamseyCertificate> {
    match ramsey_bound(f, cap)? {
        Some(cert) => Ok(cert),
        None => {
            if f.has_complete_member() && f.has_edgeless_member() {
                Err(CliFailure::CapExceeded(format!(
                    "no unavoidability threshold up to order {cap}; raise --cap"
                ))
                .into())
            } else {
                Err(invalid(
                    "a finite unavoidability threshold needs both a complete and an \
                     edgeless member in the obstruction set",
                ))
            }
        }
    }
}

// ------------------------------------------------------------------ manifest

/// On-disk description of a generated family; consumed by verify-lb.
#[derive(Serialize, Deserialize)]
struct Manifest {
    kind: String,
    mode: String,
    /// Expected optimum size of every member.
    opt: usize,
    /// Whether every member's optimum is claimed unique.
    unique_optimum: bool,
    /// Obstruction-set members in graph6.
    obstruction: Vec<String>,
    members: Vec<ManifestMember>,
}

#[derive(Serialize, Deserialize)]
struct ManifestMember {
    /// Choice vector: glue vertices, edge indices, or survivor labels.
    choice: Vec<usize>,
    /// Member file name, relative to the manifest.
    file: String,
    expected_optimum: Vec<Element>,
}

// ----------------------------------------------------------------------- gen

fn run_gen(args: GenArgs) -> Result<()> {
    let (family, f) = build_family(&args)?;
    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;

    let mut members = Vec::new();
    for (i, member) in family.members.iter().enumerate() {
        let file = format!("member-{i:03}.txt");
        fs::write(args.out.join(&file), write_text(&member.instance.graph))
            .with_context(|| format!("writing {file}"))?;
        emit(&json!({
            "member": i,
            "file": file,
            "choice": member.choice,
            "order": member.instance.graph.order(),
            "size": member.instance.graph.size(),
            "expected_optimum": member.expected_optimum,
        }))?;
        members.push(ManifestMember {
            choice: member.choice.clone(),
            file,
            expected_optimum: member.expected_optimum.clone(),
        });
    }

    let obstruction = f
        .members()
        .iter()
        .map(write_graph6)
        .collect::<Result<Vec<_>, _>>()?;
    let manifest = Manifest {
        kind: family.kind.to_string(),
        mode: family.mode.to_string(),
        opt: family.opt,
        unique_optimum: family.unique_optimum,
        obstruction,
        members,
    };
    let manifest_path = args.out.join("manifest.json");
    fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)
        .with_context(|| format!("writing {}", manifest_path.display()))?;

    summary_header();
    print_table(
        &["family", "mode", "members", "optimum", "unique"],
        &[vec![
            manifest.kind.clone(),
            manifest.mode.clone(),
            family.members.len().to_string(),
            family.opt.to_string(),
            family.unique_optimum.to_string(),
        ]],
    );
    println!("wrote {}", manifest_path.display());
    Ok(())
}

fn build_family(args: &GenArgs) -> Result<(Family, ObstructionSet)> {
    match args.family {
        FamilyKind::Connected | FamilyKind::Disconnected | FamilyKind::Edge => {
            let base_path = args
                .base
                .as_ref()
                .ok_or_else(|| invalid("--base is required for this family kind"))?;
            if args.obstruction.is_some() {
                return Err(invalid(
                    "this family kind takes its obstruction set from --base; drop --obstruction",
                ));
            }
            if args.opt.is_some() {
                return Err(invalid(
                    "--opt applies to the join kinds only; this kind sizes its optima from --m",
                ));
            }
            let base = load_graph(base_path)?;
            let m = args.m.unwrap_or(1);
            let family = match args.family {
                FamilyKind::Connected => connected_lb_family(&base, m)?,
                FamilyKind::Disconnected => disconnected_lb_family(&base, m)?,
                FamilyKind::Edge => edge_lb_family(&base, m)?,
                _ => unreachable!("matched above"),
            };
            let f = ObstructionSet::reduced(vec![base])?;
            f.validate_for_mode(family.mode)?;
            Ok((family, f))
        }
        FamilyKind::CliqueJoin | FamilyKind::IndependentJoin => {
            let obstruction_path = args
                .obstruction
                .as_ref()
                .ok_or_else(|| invalid("--obstruction is required for the join kinds"))?;
            if args.base.is_some() {
                return Err(invalid("--base applies to the glued and edge kinds only"));
            }
            if args.m.is_some() {
                return Err(invalid("--m applies to the glued and edge kinds only"));
            }
            let opt = args
                .opt
                .ok_or_else(|| invalid("--opt is required for the join kinds"))?;
            let f = load_obstruction(obstruction_path)?;
            let cert = require_threshold(&f, args.cap)?;
            let extremal = match args.family {
                FamilyKind::CliqueJoin => ExtremalMode::MaxEdges,
                _ => ExtremalMode::MinEdges,
            };
            let d = extremal_remainder(&f, &cert, extremal)?;
            let family = match args.family {
                FamilyKind::CliqueJoin => clique_join_family(&f, &d, opt)?,
                _ => independent_join_family(&f, &d, opt)?,
            };
            Ok((family, f))
        }
    }
}

// --------------------------------------------------------------------- solve

fn run_solve(args: SolveArgs) -> Result<()> {
    let f = load_obstruction(&args.obstruction)?;
    f.validate_for_mode(args.mode)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let budget = SearchBudget { max_candidates: args.cap };

    let mut rows = Vec::new();
    for path in &args.instances {
        let graph = load_graph(path)?;
        let instance = OnlineInstance { graph, mode: args.mode };
        let report = offline_optimum(&instance, &f, budget)
            .with_context(|| format!("solving {}", path.display()))?;
        emit(&json!({
            "file": path.display().to_string(),
            "mode": args.mode,
            "order": instance.graph.order(),
            "size": instance.graph.size(),
            "optimum": report.size,
            "solution_count": report.solutions.len(),
            "smallest": report.smallest(),
        }))?;
        if let Some(dir) = &args.out {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "instance".into());
            let full = json!({
                "file": path.display().to_string(),
                "optimum": report.size,
                "solutions": report.solutions,
            });
            fs::write(dir.join(format!("{stem}.solutions.json")), serde_json::to_string_pretty(&full)?)?;
        }
        rows.push(vec![
            path.display().to_string(),
            instance.graph.order().to_string(),
            instance.graph.size().to_string(),
            report.size.to_string(),
            report.solutions.len().to_string(),
        ]);
    }

    summary_header();
    print_table(&["file", "order", "size", "optimum", "solutions"], &rows);
    Ok(())
}

// ----------------------------------------------------------------------- run

fn run_run(args: RunArgs) -> Result<()> {
    let f = load_obstruction(&args.obstruction)?;
    f.validate_for_mode(args.mode)?;
    let graph = load_graph(&args.instance)?;
    let instance = OnlineInstance { graph, mode: args.mode };
    let budget = SearchBudget::default();

    // The audit target: (optimum, bits the advisor wrote, closed-form bits).
    let (trace, audit) = match args.strategy {
        StrategyKind::Greedy => {
            let mut tape = AdviceTape::from_bits(Vec::new(), args.seed);
            let trace = drive(&instance, &f, &mut Greedy, &mut tape)?;
            (trace, None)
        }
        StrategyKind::NaiveNode | StrategyKind::NaiveEdge => {
            let want = match args.strategy {
                StrategyKind::NaiveNode => Mode::Node,
                _ => Mode::Edge,
            };
            if want != args.mode {
                return Err(invalid(format!(
                    "strategy {} works in {} mode, but --mode is {}",
                    args.strategy, want, args.mode
                )));
            }
            let advised = run_with_naive(&instance, &f, budget, args.seed)?;
            let expected = naive_budget(advised.opt, naive_index_width(&f, args.mode));
            (advised.trace, Some((advised.opt, advised.bits_written, expected)))
        }
        StrategyKind::Log => {
            if args.mode != Mode::Node {
                return Err(invalid("the log strategy works in node mode only"));
            }
            let cert = require_threshold(&f, args.cap)?;
            let advised = run_with_log(&instance, &f, &cert, budget, args.seed)?;
            let survivors = instance.graph.order() - advised.opt;
            let expected = log_budget(advised.opt, survivors, cert.r, f.max_order());
            (advised.trace, Some((advised.opt, advised.bits_written, expected)))
        }
    };

    for step in &trace.steps {
        emit(step)?;
    }

    let (passed, expected_bits) = match &audit {
        Some((_, written, expected)) => {
            (audit_bits(&trace, *expected) && trace.total_bits == *written, *expected)
        }
        None => (trace.total_bits == 0, 0),
    };

    summary_header();
    let mut rows = vec![
        vec!["strategy".into(), args.strategy.to_string()],
        vec!["mode".into(), args.mode.to_string()],
        vec!["order".into(), instance.graph.order().to_string()],
        vec!["deletions".into(), trace.deletions.to_string()],
    ];
    if let Some((opt, _, _)) = &audit {
        rows.push(vec!["optimum".into(), opt.to_string()]);
    }
    rows.push(vec!["bits read".into(), trace.total_bits.to_string()]);
    rows.push(vec!["bits expected".into(), expected_bits.to_string()]);
    rows.push(vec!["audit".into(), if passed { "PASS".into() } else { "FAIL".into() }]);
    print_table(&["field", "value"], &rows);

    if let Some(path) = &args.out {
        fs::write(path, serde_json::to_string_pretty(&trace)?)
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }

    if !passed {
        return Err(CliFailure::Verification(format!(
            "advice audit failed: read {} bits, expected {}",
            trace.total_bits, expected_bits
        ))
        .into());
    }
    Ok(())
}

// ----------------------------------------------------------------- verify-lb

fn run_verify_lb(args: VerifyLbArgs) -> Result<()> {
    let text = fs::read_to_string(&args.manifest)
        .with_context(|| format!("reading {}", args.manifest.display()))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.manifest.display()))?;
    let dir = args.manifest.parent().unwrap_or_else(|| Path::new("."));

    let kind: FamilyKind = manifest.kind.parse().map_err(invalid)?;
    let mode: Mode = manifest.mode.parse().map_err(invalid)?;
    let obstruction = manifest
        .obstruction
        .iter()
        .map(|s| parse_graph6(s))
        .collect::<Result<Vec<_>, _>>()
        .context("decoding the manifest's obstruction set")?;
    let f = ObstructionSet::reduced(obstruction)?;
    f.validate_for_mode(mode)?;

    let mut members = Vec::new();
    for entry in &manifest.members {
        let graph = load_graph(&dir.join(&entry.file))?;
        members.push(FamilyMember {
            choice: entry.choice.clone(),
            instance: OnlineInstance { graph, mode },
            expected_optimum: entry.expected_optimum.clone(),
        });
    }
    let family = Family {
        kind,
        mode,
        opt: manifest.opt,
        unique_optimum: manifest.unique_optimum,
        members,
    };

    let report = verify_family(&family, &f, SearchBudget { max_candidates: args.cap })?;
    let certified = !manifest.unique_optimum || report.leaves == report.family_size;

    emit(&json!({
        "family": manifest.kind,
        "mode": manifest.mode,
        "members": report.family_size,
        "optimum": manifest.opt,
        "leaves": report.leaves,
        "bits": report.bits,
        "divergence": report.divergence,
        "certified": certified,
    }))?;

    let report_path = args.out.clone().unwrap_or_else(|| dir.join("report.json"));
    fs::write(&report_path, serde_json::to_string_pretty(&report)?)
        .with_context(|| format!("writing {}", report_path.display()))?;

    summary_header();
    print_table(
        &["family", "members", "leaves", "bits", "certified"],
        &[vec![
            manifest.kind.clone(),
            report.family_size.to_string(),
            report.leaves.to_string(),
            report.bits.to_string(),
            certified.to_string(),
        ]],
    );
    println!(
        "every optimal strategy needs at least {} advice bits on this family",
        report.bits
    );
    println!("wrote {}", report_path.display());

    if !certified {
        return Err(CliFailure::Verification(format!(
            "only {} of {} members are pairwise distinguishable by forced actions",
            report.leaves, report.family_size
        ))
        .into());
    }
    Ok(())
}

// -------------------------------------------------------------------- ramsey

fn run_ramsey(args: RamseyArgs) -> Result<()> {
    let f = load_obstruction(&args.obstruction)?;
    let found = ramsey_bound(&f, args.cap)?;

    let record = match &found {
        Some(cert) => json!({
            "r": cert.r,
            "witness": write_graph6(&cert.witness)?,
            "witness_order": cert.witness.order(),
            "cap": args.cap,
        }),
        None => json!({
            "r": null,
            "cap": args.cap,
            "reason": if f.has_complete_member() && f.has_edgeless_member() {
                "no threshold up to the cap"
            } else {
                "the set lacks a complete or an edgeless member, so no order forces it"
            },
        }),
    };
    emit(&record)?;

    summary_header();
    match &found {
        Some(cert) => {
            println!("threshold  {}", cert.r);
            println!(
                "witness    free graph of order {} ({} edges)",
                cert.witness.order(),
                cert.witness.size()
            );
        }
        None => println!("no threshold up to order {}", args.cap),
    }

    if let Some(path) = &args.out {
        fs::write(path, serde_json::to_string_pretty(&record)?)
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

// -------------------------------------------------------------------- extend

fn run_extend(args: ExtendArgs) -> Result<()> {
    let base = load_graph(&args.base)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }

    let mut rows = Vec::new();
    for (i, (x, y)) in base.edges().into_iter().enumerate() {
        let ext = e_extension(&base, (x, y))?;
        if !verify_e_extension(&ext, &base) {
            return Err(CliFailure::Verification(format!(
                "extension at edge ({x}, {y}) fails its axioms"
            ))
            .into());
        }
        emit(&json!({
            "edge": [x, y],
            "order": ext.u.order(),
            "size": ext.u.size(),
            "graph6": write_graph6(&ext.u)?,
            "embedding": ext.embedding,
        }))?;
        if let Some(dir) = &args.out {
            fs::write(dir.join(format!("extension-{i:02}.txt")), write_text(&ext.u))?;
        }
        rows.push(vec![
            format!("({x}, {y})"),
            ext.u.order().to_string(),
            ext.u.size().to_string(),
        ]);
    }

    summary_header();
    print_table(&["edge", "order", "size"], &rows);
    Ok(())
}

// ----------------------------------------------------------------- decompose

fn run_decompose(args: DecomposeArgs) -> Result<()> {
    let graph = load_graph(&args.graph)?;
    let parts = graph.join_decomposition();

    let mut rows = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let factor = graph.induced(part);
        emit(&json!({
            "part": i,
            "vertices": part,
            "order": factor.order(),
            "size": factor.size(),
            "graph6": write_graph6(&factor)?,
        }))?;
        rows.push(vec![
            i.to_string(),
            format!("{part:?}"),
            factor.order().to_string(),
            factor.size().to_string(),
        ]);
    }

    summary_header();
    print_table(&["part", "vertices", "order", "size"], &rows);
    if parts.len() == 1 {
        println!("the graph is join-indecomposable");
    } else {
        println!("the graph is the join of {} factors", parts.len());
    }
    Ok(())
}

// -------------------------------------------------------------- obstructions

fn run_obstructions(args: ObstructionsArgs) -> Result<()> {
    let base = load_graph(&args.base)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }

    let mut rows = Vec::new();
    let mut characterize = |composition: &str, family: Vec<Graph>| -> Result<()> {
        for g in &family {
            emit(&json!({
                "composition": composition,
                "order": g.order(),
                "size": g.size(),
                "graph6": write_graph6(g)?,
            }))?;
        }
        if let Some(dir) = &args.out {
            let listing =
                family.iter().map(write_text).collect::<Vec<_>>().join("\n");
            fs::write(dir.join(format!("{composition}.txt")), listing)?;
        }
        rows.push(vec![composition.to_string(), family.len().to_string()]);
        Ok(())
    };

    if matches!(args.composition, Composition::Union | Composition::Both) {
        characterize("union", not_sub_h_union_family(&base)?)?;
    }
    if matches!(args.composition, Composition::Join | Composition::Both) {
        characterize("join", not_sub_h_join_family(&base)?)?;
    }

    summary_header();
    print_table(&["composition", "obstructions"], &rows);
    Ok(())
}
