//! `sublogic`: clone analysis, complexity classification, solving, reductions and generators
//! for Boolean-operator fragments of ALC.

/// Writes a line to stdout, propagating I/O errors such as a closed pipe.
macro_rules! out {
    (@raw $($arg:tt)*) => {{
        use std::io::Write as _;
        write!(std::io::stdout().lock(), $($arg)*)?
    }};
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout().lock(), $($arg)*)?
    }};
}

mod bench;
mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sublogic::boolfun::{identify_clone, CloneDescriptor, OperatorSet};
use sublogic::classifier::{classify_instance, classify_operators, overview_table, ComplexityVerdict};
use sublogic::generators::{
    gen_gap, gen_hgap, gen_one_in_three, gen_random, random_3cnf, Digraph, Hypergraph, Profile,
    SizeParams,
};
use sublogic::limits::Limits;
use sublogic::solvers::{dispatch, Choice, SolveResult, Status};
use sublogic::syntax::{
    parse_operators, parse_with, print, Interpretation, ParseOptions, ProblemInstance, ProblemKind,
    Quantifiers,
};
use sublogic::transforms::{pipeline, DualMode, Transform, TransformName, TransformReport};

#[derive(Parser)]
#[command(name = "sublogic", version, about = "Satisfiability for Boolean fragments of ALC")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Accept `_`-prefixed names in input files, as written by `reduce`.
    #[arg(long, global = true)]
    allow_reserved: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identify the clone generated by an operator file.
    Clone { file: PathBuf },
    /// Complexity of a problem over an operator file, or of an instance file.
    Classify(ClassifyArgs),
    /// Decide an instance.
    Solve(SolveArgs),
    /// Apply satisfiability-preserving transforms and print the result.
    Reduce(ReduceArgs),
    /// Generate an instance.
    Gen(GenArgs),
    /// Solve a directory of instances and print CSV.
    Bench(bench::BenchArgs),
    /// Check clone identification and the classification table.
    Selftest,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    problem: Option<ProblemKind>,
    #[arg(long, default_value = "none")]
    quantifiers: Quantifiers,
    /// Print the full verdict table.
    #[arg(long)]
    table: bool,
    /// Operator file (with --problem) or instance file.
    file: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, default_value = "auto")]
    method: Choice,
    /// Also run type elimination and brute force and compare.
    #[arg(long)]
    cross_check: bool,
    /// Print a model when satisfiable.
    #[arg(long)]
    model: bool,
    /// Print the unsatisfiability certificate.
    #[arg(long)]
    certificate: bool,
    file: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    /// Transforms applied left to right; repeat to build a pipeline.
    #[arg(long = "transform", required = true)]
    transforms: Vec<TransformName>,
    /// Target problem for `lift`.
    #[arg(long)]
    target: Option<ProblemKind>,
    /// Mode for `dualize`; defaults to the instance's problem.
    #[arg(long)]
    mode: Option<DualMode>,
    /// Operator file for `change-base`.
    #[arg(long)]
    target_ops: Option<PathBuf>,
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gap,
    Hgap,
    OneInThree,
    Random,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Append `# expected: sat|unsat`.
    #[arg(long)]
    with_answer: bool,
    /// Nodes of the graph or hypergraph.
    #[arg(long, default_value_t = 10)]
    nodes: usize,
    /// Out-degree (graphs) or in-degree (hypergraphs).
    #[arg(long)]
    degree: Option<usize>,
    /// Source node; defaults to 0.
    #[arg(long)]
    source: Option<usize>,
    /// Start nodes of a hypergraph, comma-separated; defaults to `0,1`.
    #[arg(long, value_delimiter = ',')]
    start: Vec<usize>,
    /// Target node; defaults to the last node.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long, default_value_t = 6)]
    vars: usize,
    #[arg(long, default_value_t = 6)]
    clauses: usize,
    /// `kind/quantifiers/clone`, e.g. `tsat/forall/E`.
    #[arg(long)]
    profile: Option<String>,
    #[command(flatten)]
    size: SizeArgs,
}

#[derive(Args)]
struct SizeArgs {
    #[arg(long, default_value_t = 4)]
    atoms: usize,
    #[arg(long, default_value_t = 2)]
    roles: usize,
    #[arg(long, default_value_t = 5)]
    axioms: usize,
    #[arg(long, default_value_t = 2)]
    individuals: usize,
    #[arg(long, default_value_t = 3)]
    assertions: usize,
    #[arg(long, default_value_t = 2)]
    depth: usize,
}

impl From<&SizeArgs> for SizeParams {
    fn from(s: &SizeArgs) -> Self {
        SizeParams {
            atoms: s.atoms,
            roles: s.roles,
            axioms: s.axioms,
            individuals: s.individuals,
            assertions: s.assertions,
            depth: s.depth,
        }
    }
}

pub(crate) struct Session {
    pub json: bool,
    pub parse: ParseOptions,
    pub limits: Limits,
}

/// How a successful run ends.
pub(crate) enum Outcome {
    Done,
    /// A failed self-test.
    Failed,
    /// No verdict within the limits.
    Undecided,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Ok(Outcome::Undecided) => ExitCode::from(2),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let discrepancy = e
                .downcast_ref::<sublogic::Error>()
                .is_some_and(|e| matches!(e, sublogic::Error::Discrepancy(_)));
            ExitCode::from(if discrepancy { 3 } else { 2 })
        }
    }
}

/// A closed stdout, as when piping into `head`, ends the run quietly.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> Result<Outcome> {
    let limits = match std::env::var("SUBLOGIC_LIMITS") {
        Ok(spec) => Limits::default()
            .with_overrides(&spec)
            .context("invalid SUBLOGIC_LIMITS")?,
        Err(_) => Limits::default(),
    };
    let ctx = Session {
        json: cli.json,
        parse: ParseOptions {
            allow_reserved_names: cli.allow_reserved,
        },
        limits,
    };
    match cli.command {
        Command::Clone { file } => clone_cmd(&ctx, &file),
        Command::Classify(a) => classify_cmd(&ctx, &a),
        Command::Solve(a) => solve_cmd(&ctx, &a),
        Command::Reduce(a) => reduce_cmd(&ctx, &a),
        Command::Gen(a) => gen_cmd(&ctx, &a),
        Command::Bench(a) => bench::run(&ctx, &a),
        Command::Selftest => selftest::run(&ctx),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub(crate) fn load_instance(ctx: &Session, path: &Path) -> Result<ProblemInstance> {
    let text = read(path)?;
    parse_with(&text, &ctx.parse).with_context(|| format!("in {}", path.display()))
}

/// An operator file, or the declared operators of an instance file.
fn load_operators(ctx: &Session, path: &Path) -> Result<OperatorSet> {
    let text = read(path)?;
    match parse_operators(&text) {
        Ok(ops) => Ok(ops),
        Err(first) => match parse_with(&text, &ctx.parse) {
            Ok(inst) => Ok(inst.operators),
            Err(_) => Err(first).with_context(|| format!("in {}", path.display())),
        },
    }
}

fn emit(ctx: &Session, text: &str, value: Value) -> Result<()> {
    if ctx.json {
        out!("{value}");
    } else {
        out!("{text}");
    }
    Ok(())
}

fn names<'a>(it: impl IntoIterator<Item = &'a sublogic::boolfun::CloneName>) -> Vec<String> {
    it.into_iter().map(|c| c.to_string()).collect()
}

pub(crate) fn clone_text(d: &CloneDescriptor) -> String {
    match d.named {
        Some(c) if !d.approximate => c.to_string(),
        _ => format!(
            "unnamed: contains {{{}}}, within {{{}}}{}",
            names(&d.contains).join(","),
            names(&d.within).join(","),
            if d.approximate { " (approximate)" } else { "" }
        ),
    }
}

fn clone_cmd(ctx: &Session, file: &Path) -> Result<Outcome> {
    let ops = load_operators(ctx, file)?;
    let d = identify_clone(&ops.tables())?;
    emit(
        ctx,
        &clone_text(&d),
        json!({
            "clone": d.named.map(|c| c.to_string()),
            "contains": names(&d.contains),
            "within": names(&d.within),
            "approximate": d.approximate,
        }),
    )?;
    Ok(Outcome::Done)
}

pub(crate) fn verdict_json(v: &ComplexityVerdict) -> Value {
    json!({
        "class": v.class.to_string(),
        "bounds": v.open_bounds.map(|b| json!({"lower": b.lower, "upper": b.upper})),
        "provenance": v.provenance,
    })
}

fn classify_cmd(ctx: &Session, a: &ClassifyArgs) -> Result<Outcome> {
    if a.table {
        let t = overview_table();
        emit(ctx, t.trim_end(), json!({ "table": t }))?;
        return Ok(Outcome::Done);
    }
    let Some(file) = &a.file else {
        bail!("classify needs a file, or --table");
    };
    let v = match a.problem {
        Some(kind) => classify_operators(kind, a.quantifiers, &load_operators(ctx, file)?)?,
        None => classify_instance(&load_instance(ctx, file)?)?,
    };
    emit(ctx, &v.to_string(), verdict_json(&v))?;
    Ok(Outcome::Done)
}

fn model_json(m: &Interpretation) -> Value {
    json!({
        "domain": m.domain_size,
        "concepts": m.concepts,
        "roles": m.roles.iter().map(|(r, s)| (r.clone(), s.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>())).collect::<std::collections::BTreeMap<_, _>>(),
        "individuals": m.individuals,
    })
}

fn solve_cmd(ctx: &Session, a: &SolveArgs) -> Result<Outcome> {
    let inst = load_instance(ctx, &a.file)?;
    let r: SolveResult = dispatch(&inst, a.method, a.cross_check, &ctx.limits)?;
    if ctx.json {
        out!(
            "{}",
            json!({
                "status": r.status.to_string(),
                "method": r.method.to_string(),
                "types": r.stats.types,
                "rules": r.stats.rules,
                "model": if a.model { r.model.as_ref().map(model_json) } else { None },
                "certificate": if a.certificate { r.witness.clone() } else { None },
            })
        );
    } else {
        out!("{}", r.status);
        out!("method {}", r.method);
        if a.model {
            if let Some(m) = &r.model {
                out!("{m}");
            }
        }
        if a.certificate {
            for line in r.witness.iter().flatten() {
                out!("# {line}");
            }
        }
    }
    if r.status == Status::Unknown {
        eprintln!("undecided within the current limits; raise them with SUBLOGIC_LIMITS");
        return Ok(Outcome::Undecided);
    }
    Ok(Outcome::Done)
}

fn report_json(r: &TransformReport) -> Value {
    json!({
        "input": r.input_kind.map(|k| k.to_string()),
        "output": r.output_kind.map(|k| k.to_string()),
        "fresh_names": r.fresh_names,
        "axioms_added": r.axioms_added,
        "axioms_rewritten": r.axioms_rewritten,
    })
}

fn reduce_cmd(ctx: &Session, a: &ReduceArgs) -> Result<Outcome> {
    let inst = load_instance(ctx, &a.file)?;
    let mut steps = Vec::new();
    let mut kind = inst.kind;
    for name in &a.transforms {
        let step = match name {
            TransformName::Lift => {
                let target = a.target.context("lift needs --target")?;
                kind = target;
                Transform::Lift(target)
            }
            TransformName::SimulateConstants => Transform::SimulateConstants,
            TransformName::TcsatToTsat => {
                kind = ProblemKind::Tsat;
                Transform::TcsatToTsat
            }
            TransformName::Lewis => {
                kind = ProblemKind::Tcsat;
                Transform::Lewis
            }
            TransformName::Dualize => Transform::Dualize(match a.mode {
                Some(m) => m,
                None if kind == ProblemKind::Tcsat => DualMode::Tcsat,
                None => DualMode::Tsat,
            }),
            TransformName::ChangeBase => {
                let path = a.target_ops.as_ref().context("change-base needs --target-ops")?;
                Transform::ChangeBase(load_operators(ctx, path)?)
            }
            TransformName::Normalize => Transform::Normalize,
            TransformName::Nf7 => Transform::Nf7,
        };
        steps.push(step);
    }
    let out = pipeline(&inst, &steps)?;
    let text = print(&out.instance);
    if ctx.json {
        out!("{}", json!({ "instance": text, "report": report_json(&out.report) }));
    } else {
        out!(@raw "{text}");
        eprintln!("{}", out.report);
    }
    Ok(Outcome::Done)
}

fn gen_cmd(ctx: &Session, a: &GenArgs) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let last = a.nodes.checked_sub(1).context("--nodes must be positive")?;
    let target = a.target.unwrap_or(last);
    let (inst, expected) = match a.family {
        Family::Gap => {
            let g = Digraph::random(a.nodes, a.degree.unwrap_or(2), &mut rng);
            let s = a.source.unwrap_or(0);
            if s >= a.nodes || target >= a.nodes {
                bail!("source and target must be below --nodes");
            }
            (gen_gap(&g, s, target), Some(!g.reaches(s, target)))
        }
        Family::Hgap => {
            let h = Hypergraph::random(a.nodes, a.degree.unwrap_or(1), &mut rng);
            let start = if a.start.is_empty() { vec![0, 1.min(last)] } else { a.start.clone() };
            if start.iter().chain([&target]).any(|&u| u >= a.nodes) {
                bail!("start and target nodes must be below --nodes");
            }
            (gen_hgap(&h, &start, target), Some(!h.closure(&start)[target]))
        }
        Family::OneInThree => {
            if a.vars == 0 || a.clauses == 0 || a.vars > 24 {
                bail!("--vars must be in 1..=24 and --clauses positive");
            }
            let cnf = random_3cnf(a.vars, a.clauses, &mut rng);
            let sat = a.with_answer.then(|| sublogic::generators::one_in_three_satisfiable(&cnf));
            (gen_one_in_three(&cnf), sat)
        }
        Family::Random => {
            let spec = a.profile.as_deref().context("random needs --profile kind/quantifiers/clone")?;
            let profile = Profile::parse(spec)?;
            let seed = rng.gen();
            let inst = gen_random(&profile, seed, &(&a.size).into());
            let sat = if a.with_answer {
                match dispatch(&inst, Choice::Auto, false, &ctx.limits) {
                    Ok(r) if r.status.is_decided() => Some(r.status == Status::Sat),
                    _ => None,
                }
            } else {
                None
            };
            (inst, sat)
        }
    };
    let answer = if a.with_answer {
        expected.map(|sat| if sat { "sat" } else { "unsat" })
    } else {
        None
    };
    let mut text = print(&inst);
    if let Some(ans) = answer {
        text.push_str(&format!("# expected: {ans}\n"));
    }
    if ctx.json {
        out!("{}", json!({ "instance": text, "expected": answer }));
    } else {
        out!(@raw "{text}");
    }
    Ok(Outcome::Done)
}
