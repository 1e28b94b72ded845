use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sigma_core::constructive::{
    path_normalize, rake_normalize, solve_planted_tree, solve_theorem8, solve_tree, PendantPlant, PlantedPartition,
    RakeView, Reference, SolveCertificate,
};
use sigma_core::family::{build_family, FamilyKind, FamilySpec};
use sigma_core::moves::replay;
use sigma_core::search::{gap_profile, ml_litonly, ml_regular, Caps, DEFAULT_RANK_CAP};
use sigma_core::survey::{self, reproduce_example, ExampleId, LoopPolicy, ScanOptions, ScanStatus, SurveyFamily};
use sigma_core::{bits, parse_instance, serialize_instance, Configuration, Error, Graph, MoveSequence};

mod output;

use output::{emit, Format};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_FAIL: u8 = 2;
const EXIT_FINDING: u8 = 3;

#[derive(Parser)]
#[command(name = "sigma", version, about = "Sigma-game and lit-only sigma-game on graphs with loops")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact ML(x) by a coset sweep.
    Ml(QueryArgs),
    /// Exact ML*(x) by lit-only BFS.
    Mlstar(QueryArgs),
    /// Per-configuration and per-graph gaps.
    Gap(QueryArgs),
    /// Certified valid-move solution.
    Solve(SolveArgs),
    /// Normalize a pendant path or a rake.
    Normalize(NormalizeArgs),
    /// Exhaustive bound check over a graph family.
    Scan(ScanArgs),
    /// Recompute a worked example.
    Reproduce(ReproduceArgs),
    /// List a graph family up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Replay a move sequence.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance file.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    instance: Option<PathBuf>,

    /// Built-in family: path:N, rake:N,K, complete:N, tripartite:M, grid:R,C, fig1, fig2, loopy:N.
    #[arg(long)]
    family: Option<String>,

    /// Configuration as a 0/1 string, overriding the input's.
    #[arg(long)]
    config: Option<String>,

    /// Extra loops, as 1-based vertices separated by commas.
    #[arg(long, value_delimiter = ',')]
    add_loops: Vec<usize>,

    /// Cap on the vertex count for state-space searches.
    #[arg(long, default_value_t = 20)]
    cap: usize,

    /// Cap on the neighborhood rank for coset sweeps.
    #[arg(long, default_value_t = DEFAULT_RANK_CAP)]
    rank_cap: usize,
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Include witness move sets and sequences.
    #[arg(long)]
    witness: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Tree,
    Theorem8,
    Planted,
}

#[derive(Clone, Copy, ValueEnum)]
enum RefArg {
    Whole,
    Core,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, value_enum, default_value_t = Method::Tree)]
    method: Method,

    /// Pivot vertex (1-based) for the theorem8 and planted methods.
    #[arg(long)]
    pivot: Option<usize>,

    /// Vertices (1-based, pivot included) of the non-tree part, for the planted method.
    #[arg(long, value_delimiter = ',')]
    core: Vec<usize>,

    /// Reference ML for the theorem8 method.
    #[arg(long, value_enum, default_value_t = RefArg::Whole)]
    reference: RefArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Path,
    Rake,
}

#[derive(Args)]
struct NormalizeArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, value_enum)]
    shape: Shape,

    /// Path order (1-based); defaults to 1..n.
    #[arg(long, value_delimiter = ',')]
    path: Vec<usize>,

    /// Rake top (1-based); the rake spans the whole graph.
    #[arg(long, default_value_t = 1)]
    top: usize,

    /// Regular move set (1-based) to realize on the rake; defaults to an
    /// optimal one when it avoids the top.
    #[arg(long, value_delimiter = ',')]
    moves: Option<Vec<usize>>,
}

#[derive(Args)]
struct ScanArgs {
    /// thm9, thm4, thm5, conj1, conj2, maxdeg, ex24, ex25, re24, rem-thm8, cert.
    #[arg(long)]
    check: String,

    /// trees, unicyclic, grids, all-graphs, rakes, planted, complete.
    #[arg(long)]
    family: Option<String>,

    #[arg(long)]
    max_n: usize,

    #[arg(long, default_value_t = 1)]
    min_n: usize,

    /// Loop masks: none, all or full.
    #[arg(long)]
    loops: Option<String>,

    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,

    #[arg(long, default_value_t = 20)]
    cap: usize,

    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    /// tripartite:M, complete:M, fig1, fig2.
    #[arg(long)]
    example: String,
}

#[derive(Args)]
struct EnumerateArgs {
    /// trees, unicyclic, grids, all-graphs, rakes, planted, complete.
    #[arg(long)]
    family: String,

    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct ReplayArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Move sequence, 1-based vertices separated by commas.
    #[arg(long, value_delimiter = ',', conflicts_with = "certificate")]
    sequence: Option<Vec<usize>>,

    /// JSON output of ml, mlstar or solve; its witness is replayed.
    #[arg(long)]
    certificate: Option<PathBuf>,

    /// Treat the sequence as regular moves.
    #[arg(long)]
    regular: bool,

    /// Reject invalid moves and check the claimed result.
    #[arg(long)]
    verify: bool,

    /// Expected final configuration.
    #[arg(long)]
    expect: Option<String>,
}

/// Outcome of a command: output value and exit status.
struct Outcome {
    value: Value,
    status: u8,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, status: EXIT_OK }
    }
}

enum Failure {
    Usage(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type CmdResult = Result<Outcome, Failure>;

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn load(input: &InputArgs) -> Result<(Graph, Configuration), Failure> {
    let (g, x) = match (&input.instance, &input.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let inst = parse_instance(&text)?;
            (inst.graph, inst.config)
        }
        (None, Some(spec)) => {
            let kind: FamilyKind = spec.parse()?;
            let (g, x) = build_family(&FamilySpec::new(kind))?;
            let n = g.n();
            (g, x.unwrap_or_else(|| Configuration::zeros(n)))
        }
        (None, None) => return Err(usage("one of --instance or --family is required")),
    };
    let mut g = g;
    for &v in &input.add_loops {
        g.set_loop(vertex(v, g.n())?, true)?;
    }
    let x = match &input.config {
        Some(s) => {
            let x = Configuration::from_bitstring(s)?;
            if x.len() != g.n() {
                return Err(Error::LengthMismatch {
                    expected: g.n(),
                    found: x.len(),
                }
                .into());
            }
            x
        }
        None => x,
    };
    Ok((g, x))
}

fn vertex(label: usize, n: usize) -> Result<usize, Failure> {
    if label == 0 || label > n {
        return Err(usage(format!("vertex {label} out of range 1..={n}")));
    }
    Ok(label - 1)
}

fn vertex_mask(labels: &[usize], n: usize) -> Result<u64, Failure> {
    labels.iter().try_fold(0u64, |m, &v| Ok(m | 1 << vertex(v, n)?))
}

fn one_based(mask: u64) -> Vec<usize> {
    bits::ones(mask).map(|v| v + 1).collect()
}

fn caps(input: &InputArgs) -> Caps {
    Caps {
        rank: input.rank_cap,
        states: input.cap,
    }
}

fn cmd_ml(a: &QueryArgs) -> CmdResult {
    let (g, x) = load(&a.input)?;
    let r = ml_regular(&g, &x, a.input.rank_cap)?;
    let mut v = json!({ "config": x, "ml": r.value });
    if a.witness {
        v["witness_config"] = json!(r.witness_config);
        v["move_set"] = json!(one_based(r.move_set));
    }
    Ok(Outcome::ok(v))
}

fn cmd_mlstar(a: &QueryArgs) -> CmdResult {
    let (g, x) = load(&a.input)?;
    let r = ml_litonly(&g, &x, a.input.cap)?;
    let mut v = json!({ "config": x, "mlstar": r.value });
    if a.witness {
        v["witness_config"] = json!(r.witness_config);
        v["sequence"] = json!(r.witness_sequence.labels());
    }
    Ok(Outcome::ok(v))
}

fn cmd_gap(a: &QueryArgs) -> CmdResult {
    let (g, x) = load(&a.input)?;
    let caps = caps(&a.input);
    let p = gap_profile(&g, caps)?;
    let ml = ml_regular(&g, &x, caps.rank)?;
    let star = ml_litonly(&g, &x, caps.states)?;
    let mut v = json!({
        "config": x,
        "ml": ml.value,
        "mlstar": star.value,
        "gap": star.value - ml.value,
        "graph_ml": p.graph_ml,
        "graph_mlstar": p.graph_mlstar,
        "graph_gap": p.graph_gap(),
        "max_config_gap": p.max_config_gap,
        "argmax_gap": p.argmax_gap,
    });
    if a.witness {
        v["ml_witness"] = json!(ml);
        v["mlstar_witness"] = json!(star);
        v["argmax_gap_ml_witness"] = json!(p.gap_ml_witness);
        v["argmax_gap_mlstar_witness"] = json!(p.gap_mlstar_witness);
    }
    Ok(Outcome::ok(v))
}

fn certificate_outcome(r: sigma_core::Result<SolveCertificate>) -> CmdResult {
    match r {
        Ok(c) => Ok(Outcome::ok(json!({ "certificate": c, "status": "pass" }))),
        Err(Error::BoundViolation(c)) => Ok(Outcome {
            value: json!({ "certificate": *c, "status": "fail" }),
            status: EXIT_FAIL,
        }),
        Err(e) => Err(e.into()),
    }
}

fn cmd_solve(a: &SolveArgs) -> CmdResult {
    let (g, x) = load(&a.input)?;
    let n = g.n();
    let r = match a.method {
        Method::Tree => solve_tree(&g, &x),
        Method::Theorem8 => {
            let v = vertex(a.pivot.ok_or_else(|| usage("--pivot is required for theorem8"))?, n)?;
            let plant = PendantPlant::detect(&g, v, &x)?;
            let reference = match a.reference {
                RefArg::Whole => Reference::Whole,
                RefArg::Core => Reference::Core,
            };
            solve_theorem8(&g, &plant, &x, reference)
        }
        Method::Planted => {
            let v = vertex(a.pivot.ok_or_else(|| usage("--pivot is required for planted"))?, n)?;
            let v2 = vertex_mask(&a.core, n)? | 1 << v;
            let part = PlantedPartition {
                v1: (g.vertex_mask() & !v2) | 1 << v,
                v2,
                v,
            };
            solve_planted_tree(&g, &part, &x)
        }
    };
    certificate_outcome(r)
}

fn cmd_normalize(a: &NormalizeArgs) -> CmdResult {
    let (g, x) = load(&a.input)?;
    let n = g.n();
    let (seq, z) = match a.shape {
        Shape::Path => {
            let path: Vec<usize> = if a.path.is_empty() {
                (0..n).collect()
            } else {
                a.path.iter().map(|&v| vertex(v, n)).collect::<Result<_, _>>()?
            };
            path_normalize(&g, &path, &x)?
        }
        Shape::Rake => {
            let top = vertex(a.top, n)?;
            let r = RakeView::detect(&g, top, g.vertex_mask())?;
            if r.mask() != g.vertex_mask() {
                return Err(usage("the rake must span the whole graph"));
            }
            let moves = match &a.moves {
                Some(m) => vertex_mask(m, n)?,
                None => {
                    let m = ml_regular(&g, &x, a.input.rank_cap)?.move_set;
                    if bits::has(m, top) {
                        return Err(usage("the optimal move set uses the top; pass --moves explicitly"));
                    }
                    m
                }
            };
            rake_normalize(&g, &r, &x, moves)?
        }
    };
    Ok(Outcome::ok(json!({
        "config": x,
        "sequence": seq.labels(),
        "final_config": z,
        "final_light": z.light_number(),
    })))
}

fn cmd_scan(a: &ScanArgs) -> CmdResult {
    let check: survey::Check = a.check.parse()?;
    let mut opts = ScanOptions::new(check, a.max_n);
    if let Some(f) = &a.family {
        opts.family = f.parse::<SurveyFamily>()?;
    }
    if let Some(l) = &a.loops {
        opts.loops = l.parse::<LoopPolicy>()?;
    }
    opts.min_n = a.min_n;
    opts.jobs = a.jobs;
    opts.caps.states = a.cap;
    opts.timing = a.timing;
    let report = survey::scan(&opts)?;
    let status = match report.status {
        ScanStatus::Pass => EXIT_OK,
        ScanStatus::Finding => EXIT_FINDING,
        ScanStatus::Fail => EXIT_FAIL,
    };
    Ok(Outcome {
        value: json!(report),
        status,
    })
}

fn cmd_reproduce(a: &ReproduceArgs) -> CmdResult {
    let id: ExampleId = a.example.parse()?;
    let rep = reproduce_example(id)?;
    let status = if rep.pass { EXIT_OK } else { EXIT_FAIL };
    Ok(Outcome {
        value: json!(rep),
        status,
    })
}

fn cmd_enumerate(a: &EnumerateArgs) -> CmdResult {
    let fam: SurveyFamily = a.family.parse()?;
    let graphs: Vec<Graph> = match fam {
        SurveyFamily::Trees => survey::enumerate_trees(a.n)?,
        SurveyFamily::Unicyclic => survey::enumerate_unicyclic(a.n)?,
        SurveyFamily::AllGraphs => survey::enumerate_all_graphs(a.n)?,
        _ => survey::enumerate_family(fam, a.n, a.n)?
            .into_iter()
            .filter(|m| m.graph.n() == a.n)
            .map(|m| m.graph)
            .collect(),
    };
    let instances: Vec<String> = graphs.iter().map(|g| serialize_instance(g, None)).collect();
    Ok(Outcome::ok(json!({
        "family": fam.id(),
        "n": a.n,
        "count": instances.len(),
        "instances": instances,
    })))
}

fn cmd_replay(a: &ReplayArgs) -> CmdResult {
    let (g, x) = load(&a.input)?;
    let n = g.n();
    let mut claimed: Option<Configuration> = None;
    let mut regular = a.regular;
    let labels: Vec<usize> = match (&a.sequence, &a.certificate) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let v = v.get("certificate").unwrap_or(&v);
            let field = |k: &str| v.get(k).and_then(Value::as_str).map(Configuration::from_bitstring);
            claimed = match field("final_config").or_else(|| field("witness_config")) {
                Some(c) => Some(c?),
                None => None,
            };
            let seq = match (v.get("sequence"), v.get("move_set")) {
                (Some(s), _) => s,
                (None, Some(m)) => {
                    regular = true;
                    m
                }
                _ => return Err(usage("certificate has no sequence or move_set")),
            };
            serde_json::from_value(seq.clone()).map_err(|e| usage(format!("bad sequence: {e}")))?
        }
        (None, None) => return Err(usage("one of --sequence or --certificate is required")),
    };
    if let Some(e) = &a.expect {
        claimed = Some(Configuration::from_bitstring(e)?);
    }
    let verts: Vec<usize> = labels.iter().map(|&l| vertex(l, n)).collect::<Result<_, _>>()?;
    let seq = if regular {
        MoveSequence::regular(verts)
    } else {
        MoveSequence::lit_only(verts)
    };
    let fail = |m: String| Outcome {
        value: json!({ "status": "fail", "error": m }),
        status: EXIT_FAIL,
    };
    let z = match replay(&g, &x, &seq, a.verify) {
        Ok(z) => z,
        Err(e @ Error::InvalidMove { .. }) => return Ok(fail(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    if a.verify {
        if let Some(c) = claimed {
            if c != z {
                return Ok(fail(format!("replay gives {z}, claimed {c}")));
            }
        }
    }
    Ok(Outcome::ok(json!({
        "config": x,
        "final_config": z,
        "final_light": z.light_number(),
        "status": if a.verify { "verified" } else { "replayed" },
    })))
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = match &cli.command {
        Command::Ml(a) => cmd_ml(a),
        Command::Mlstar(a) => cmd_mlstar(a),
        Command::Gap(a) => cmd_gap(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Normalize(a) => cmd_normalize(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Reproduce(a) => cmd_reproduce(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Replay(a) => cmd_replay(a),
    };
    match result {
        Ok(out) => match emit(&out.value, cli.format, cli.out.as_deref()) {
            Ok(()) => ExitCode::from(out.status),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
