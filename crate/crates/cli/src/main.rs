//! `tgr`: command-line front end for temporal graph reconfiguration.
//!
//! Exit codes: 0 positive result, 1 negative result, 2 usage, parse or
//! precondition error. Results go to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tgr_core::format::{self, GRAPH_FORMAT_VERSION, SEQUENCE_FORMAT_VERSION};
use tgr_core::hardness::{build_reduction, cover_to_sequence, ReductionOutput};
use tgr_core::oracle::{self, OracleBudget, ShortestOutcome};
use tgr_core::planner::{self, Feasibility, Infeasibility, PlanOutcome};
use tgr_core::{
    compute_change_table, compute_cross, reachability_partition, validate_sequence, Changeability, ReconfigSequence,
    TemporalEdge, TemporalGraph,
};

#[derive(Parser)]
#[command(name = "tgr", about = "Connectivity-preserving temporal graph reconfiguration", disable_version_flag = true)]
struct Cli {
    /// Print a single JSON document on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Print tool and format versions.
    #[arg(long, short = 'V')]
    version: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    g1: PathBuf,
    #[arg(long)]
    g2: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether g1 can be reconfigured into g2.
    Check(Pair),
    /// Build a valid reconfiguration sequence from g1 to g2.
    Plan {
        #[command(flatten)]
        pair: Pair,
        /// Write the sequence here instead of stdout.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Replay a sequence and check that it is valid and ends at g2.
    Validate {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        seq: PathBuf,
    },
    /// Print the changeability level of every temporal edge.
    Classify {
        #[arg(long)]
        g: PathBuf,
        /// Also print every bridge with its partition sizes and crossing edges.
        #[arg(long)]
        dump_cross: bool,
    },
    /// Print the edges only in g1, only in g2, and their count.
    Diff(Pair),
    /// Exhaustive shortest-sequence search.
    Oracle {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = oracle::DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Generate a random always-connected temporal graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// Also write a target reached by this many random valid relabels.
        #[arg(long, requires = "target_out")]
        walk: Option<usize>,
        #[arg(long, requires = "walk")]
        target_out: Option<PathBuf>,
    },
    /// Build the reconfiguration instance for a vertex-cover instance.
    ReduceVc {
        /// Edge list, one `u v` pair per line.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out_prefix: String,
    },
    /// Turn a vertex cover into a reconfiguration sequence for a reduced instance.
    CoverSeq {
        /// Prefix given to `reduce-vc`.
        #[arg(long)]
        prefix: String,
        /// Comma-separated vertex names.
        #[arg(long)]
        cover: String,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

struct Report {
    code: u8,
    text: String,
    json: Value,
}

impl Report {
    fn new(positive: bool, text: String, json: Value) -> Self {
        Report { code: if positive { 0 } else { 1 }, text, json }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<TemporalGraph> {
    format::parse_graph(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_pair(pair: &Pair) -> CliResult<(TemporalGraph, TemporalGraph)> {
    let g1 = load_graph(&pair.g1)?;
    let g2 = load_graph(&pair.g2)?;
    if !g1.is_compatible_with(&g2) {
        return Err(Failure("g1 and g2 differ in vertex names or lifetime".into()));
    }
    for (name, g) in [("g1", &g1), ("g2", &g2)] {
        if let Some(t) = g.first_disconnected_snapshot() {
            return Err(Failure(format!("{name}: snapshot {t} is not connected")));
        }
    }
    Ok((g1, g2))
}

fn edge_json(g: &TemporalGraph, te: TemporalEdge) -> Value {
    let (u, v) = te.edge.endpoints();
    json!([g.vertex_name(u), g.vertex_name(v), te.time])
}

fn seq_json(g: &TemporalGraph, seq: &ReconfigSequence) -> Value {
    seq.ops()
        .iter()
        .map(|op| {
            let (u, v) = op.edge.endpoints();
            json!([g.vertex_name(u), g.vertex_name(v), op.from, op.to])
        })
        .collect()
}

fn infeasible_report(command: &str, g: &TemporalGraph, why: Infeasibility) -> Report {
    let (line, witness) = match why {
        Infeasibility::Unchangeable(te) => {
            (format!("witness {}", g.describe_edge(te)), json!({ "kind": "unchangeable", "edge": edge_json(g, te) }))
        }
        Infeasibility::PairCountMismatch(e) => {
            let (u, v) = e.endpoints();
            (
                format!("count-mismatch {}", g.describe_pair(e)),
                json!({ "kind": "count-mismatch", "pair": [g.vertex_name(u), g.vertex_name(v)] }),
            )
        }
    };
    Report::new(
        false,
        format!("infeasible\n{line}\n"),
        json!({ "command": command, "feasible": false, "witness": witness }),
    )
}

fn check(pair: &Pair) -> CliResult<Report> {
    let (g1, g2) = load_pair(pair)?;
    Ok(match planner::feasible(&g1, &g2)? {
        Feasibility::Feasible => {
            Report::new(true, "feasible\n".into(), json!({ "command": "check", "feasible": true }))
        }
        Feasibility::Infeasible(why) => infeasible_report("check", &g1, why),
    })
}

fn plan(pair: &Pair, out: Option<&Path>) -> CliResult<Report> {
    let (g1, g2) = load_pair(pair)?;
    let plan = match planner::plan(&g1, &g2)? {
        PlanOutcome::Feasible(plan) => plan,
        PlanOutcome::Infeasible(why) => return Ok(infeasible_report("plan", &g1, why)),
    };
    let tgs = format::write_sequence(&plan.sequence, &g1);
    let text = match out {
        Some(path) => {
            write(path, &tgs)?;
            format!("feasible length {} phases {}\n", plan.sequence.len(), plan.phases.len())
        }
        None => tgs,
    };
    Ok(Report::new(
        true,
        text,
        json!({
            "command": "plan",
            "feasible": true,
            "length": plan.sequence.len(),
            "phases": plan.phases.len(),
            "sequence": seq_json(&g1, &plan.sequence),
        }),
    ))
}

fn validate(pair: &Pair, seq_path: &Path) -> CliResult<Report> {
    let (g1, g2) = load_pair(pair)?;
    let seq =
        format::parse_sequence(&read(seq_path)?, &g1).map_err(|e| Failure(format!("{}: {e}", seq_path.display())))?;
    let report = validate_sequence(&g1, &seq, &g2)?;
    let (text, failure) = match (report.ok, report.failure) {
        (true, _) => (format!("valid length {}\n", report.length), Value::Null),
        (false, Some(f)) => (
            format!("invalid step {} {}\n", f.step + 1, f.kind.as_str()),
            json!({ "step": f.step + 1, "kind": f.kind.as_str() }),
        ),
        (false, None) => ("invalid wrong-final-graph\n".to_string(), json!({ "kind": "wrong-final-graph" })),
    };
    Ok(Report::new(
        report.ok,
        text,
        json!({ "command": "validate", "valid": report.ok, "length": report.length, "failure": failure }),
    ))
}

fn classify(path: &Path, dump_cross: bool) -> CliResult<Report> {
    let g = load_graph(path)?;
    if let Some(t) = g.first_disconnected_snapshot() {
        return Err(Failure(format!("snapshot {t} is not connected")));
    }
    let cross = compute_cross(&g)?;
    let table = compute_change_table(&g, &cross)?;

    let mut text = String::new();
    let mut edges = Vec::new();
    for (te, level) in table.iter() {
        let via = table.back_ref(te);
        let via_text = via.map_or_else(|| "-".to_string(), |b| g.describe_edge(b));
        writeln!(text, "{} level={level} via={via_text}", g.describe_edge(te)).unwrap();
        edges.push(json!({
            "edge": edge_json(&g, te),
            "level": match level {
                Changeability::Changeable(k) => json!(k),
                Changeability::Unchangeable => json!("unchangeable"),
            },
            "via": via.map_or(Value::Null, |b| edge_json(&g, b)),
        }));
    }

    let mut doc = json!({ "command": "classify", "edges": edges });
    if dump_cross {
        let mut bridges = Vec::new();
        for bridge in cross.bridges() {
            let part = reachability_partition(&g, bridge)?;
            let crossing: Vec<TemporalEdge> = g.edges().filter(|te| part.is_crossing(te.edge)).collect();
            writeln!(
                text,
                "bridge {} sides {} {} crossing {}",
                g.describe_edge(bridge),
                part.comp_u().len(),
                part.comp_v().len(),
                crossing.len()
            )
            .unwrap();
            for &te in &crossing {
                writeln!(text, "  cross {}", g.describe_edge(te)).unwrap();
            }
            bridges.push(json!({
                "bridge": edge_json(&g, bridge),
                "comp_u": part.comp_u().len(),
                "comp_v": part.comp_v().len(),
                "crossing": crossing.iter().map(|&te| edge_json(&g, te)).collect::<Vec<_>>(),
            }));
        }
        doc["bridges"] = Value::Array(bridges);
    }
    Ok(Report::new(true, text, doc))
}

fn diff(pair: &Pair) -> CliResult<Report> {
    let g1 = load_graph(&pair.g1)?;
    let g2 = load_graph(&pair.g2)?;
    let delta = g1.difference(&g2)?;
    let only1: Vec<_> = g1.edge_set().difference(g2.edge_set()).copied().collect();
    let only2: Vec<_> = g2.edge_set().difference(g1.edge_set()).copied().collect();
    let mut text = String::new();
    for &te in &only1 {
        writeln!(text, "- {}", g1.describe_edge(te)).unwrap();
    }
    for &te in &only2 {
        writeln!(text, "+ {}", g1.describe_edge(te)).unwrap();
    }
    writeln!(text, "delta {delta}").unwrap();
    Ok(Report::new(
        true,
        text,
        json!({
            "command": "diff",
            "only_g1": only1.iter().map(|&te| edge_json(&g1, te)).collect::<Vec<_>>(),
            "only_g2": only2.iter().map(|&te| edge_json(&g1, te)).collect::<Vec<_>>(),
            "delta": delta,
        }),
    ))
}

/// Budget exhaustion exits with 2: it is neither a positive nor a negative answer.
fn run_oracle(pair: &Pair, max_states: usize) -> CliResult<Report> {
    let (g1, g2) = load_pair(pair)?;
    match oracle::oracle_shortest_sequence(&g1, &g2, OracleBudget::states(max_states)) {
        ShortestOutcome::Found(seq) => Ok(Report::new(
            true,
            format!("found {}\n", seq.len()),
            json!({ "command": "oracle", "outcome": "found", "length": seq.len(), "sequence": seq_json(&g1, &seq) }),
        )),
        ShortestOutcome::Unreachable => {
            Ok(Report::new(false, "unreachable\n".into(), json!({ "command": "oracle", "outcome": "unreachable" })))
        }
        ShortestOutcome::NoneWithinDepth | ShortestOutcome::BudgetExceeded => {
            eprintln!("search stopped after {max_states} states");
            Ok(Report {
                code: 2,
                text: "budget\n".into(),
                json: json!({ "command": "oracle", "outcome": "budget", "max_states": max_states }),
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    n: usize,
    t: u32,
    extra: usize,
    seed: u64,
    out: Option<&Path>,
    walk: Option<usize>,
    target_out: Option<&Path>,
) -> CliResult<Report> {
    let g = oracle::generate_random_instance(n, t, extra, seed)?;
    let tg = format::write_graph(&g);
    let mut doc = json!({ "command": "gen", "vertices": n, "lifetime": t, "edges": g.edge_count(), "seed": seed });
    let mut text = match out {
        Some(path) => {
            write(path, &tg)?;
            format!("generated vertices {n} lifetime {t} edges {}\n", g.edge_count())
        }
        None => tg,
    };
    if let (Some(steps), Some(path)) = (walk, target_out) {
        let target = oracle::random_reachable_target(&g, steps, seed);
        write(path, &format::write_graph(&target))?;
        let delta = g.difference(&target)?;
        if out.is_some() {
            writeln!(text, "target delta {delta}").unwrap();
        }
        doc["target_delta"] = json!(delta);
    }
    Ok(Report::new(true, text, doc))
}

fn prefixed(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}.{suffix}"))
}

fn reduce_vc(graph: &Path, k: usize, prefix: &str) -> CliResult<Report> {
    let inst = format::parse_edge_list(&read(graph)?, k).map_err(|e| Failure(format!("{}: {e}", graph.display())))?;
    let red = build_reduction(&inst)?;
    write(&prefixed(prefix, "g1.tg"), &format::write_graph(&red.g1))?;
    write(&prefixed(prefix, "g2.tg"), &format::write_graph(&red.g2))?;
    write(&prefixed(prefix, "vc"), &format::write_edge_list(&inst))?;
    Ok(Report::new(
        true,
        format!("ell {}\n", red.ell),
        json!({
            "command": "reduce-vc",
            "ell": red.ell,
            "vertices": red.g1.vertex_count(),
            "edges": red.g1.edge_count(),
            "delta": red.g1.difference(&red.g2)?,
        }),
    ))
}

fn load_reduction(prefix: &str, k: usize) -> CliResult<ReductionOutput> {
    let vc_path = prefixed(prefix, "vc");
    let inst =
        format::parse_edge_list(&read(&vc_path)?, k).map_err(|e| Failure(format!("{}: {e}", vc_path.display())))?;
    let red = build_reduction(&inst)?;
    for (suffix, expected) in [("g1.tg", &red.g1), ("g2.tg", &red.g2)] {
        let path = prefixed(prefix, suffix);
        if load_graph(&path)? != *expected {
            return Err(Failure(format!("{} does not match the reduction of {}", path.display(), vc_path.display())));
        }
    }
    Ok(red)
}

fn cover_seq(prefix: &str, cover: &str, out: Option<&Path>) -> CliResult<Report> {
    let names: Vec<&str> = cover.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let red = load_reduction(prefix, names.len())?;
    let mut ids = Vec::with_capacity(names.len());
    for name in &names {
        let v = red.instance.index_of(name).ok_or_else(|| Failure(format!("unknown vertex `{name}`")))?;
        ids.push(v);
    }
    let seq = cover_to_sequence(&red, &ids)?;
    let tgs = format::write_sequence(&seq, &red.g1);
    let text = match out {
        Some(path) => {
            write(path, &tgs)?;
            format!("length {} ell {}\n", seq.len(), red.ell)
        }
        None => tgs,
    };
    Ok(Report::new(
        true,
        text,
        json!({ "command": "cover-seq", "length": seq.len(), "ell": red.ell, "sequence": seq_json(&red.g1, &seq) }),
    ))
}

fn dispatch(command: &Command) -> CliResult<Report> {
    match command {
        Command::Check(pair) => check(pair),
        Command::Plan { pair, out } => plan(pair, out.as_deref()),
        Command::Validate { pair, seq } => validate(pair, seq),
        Command::Classify { g, dump_cross } => classify(g, *dump_cross),
        Command::Diff(pair) => diff(pair),
        Command::Oracle { pair, max_states } => run_oracle(pair, *max_states),
        Command::Gen { n, t, extra, seed, out, walk, target_out } => {
            gen(*n, *t, *extra, *seed, out.as_deref(), *walk, target_out.as_deref())
        }
        Command::ReduceVc { graph, k, out_prefix } => reduce_vc(graph, *k, out_prefix),
        Command::CoverSeq { prefix, cover, out } => cover_seq(prefix, cover, out.as_deref()),
    }
}

fn version_text() -> String {
    format!(
        "tgr {}\ngraph format {GRAPH_FORMAT_VERSION}\nsequence format {SEQUENCE_FORMAT_VERSION}\n",
        env!("CARGO_PKG_VERSION")
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    if cli.version {
        if cli.json {
            println!(
                "{}",
                json!({
                    "tool": env!("CARGO_PKG_VERSION"),
                    "graph_format": GRAPH_FORMAT_VERSION,
                    "sequence_format": SEQUENCE_FORMAT_VERSION,
                })
            );
        } else {
            print!("{}", version_text());
        }
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (see `tgr --help`)");
        return ExitCode::from(2);
    };

    match dispatch(&command) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
