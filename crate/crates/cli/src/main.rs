//! `sigcheck`: verify the weight-15 case analysis and build
//! sphere-of-influence graphs from the command line.
//!
//! Exit codes: 0 success, 1 verification refused or a bound violated,
//! 2 usage or structural error, 3 I/O error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sig_core::bounds::Params;
use sig_core::geometry::{
    build_sig_with_tolerance, format_graph, format_points, hex_lattice, lattice_interior,
    out_weight_profile_of, parse_points, run_trial, wsig_from_graph, GeometryError, PointSet,
    Variant,
};
use sig_core::proofcheck::{
    builtin_paper_script, sweep_p, sweep_to_csv, verify_script, ProofError, ProofScript,
};

const DEFAULT_P: f64 = 1.409;
const EDGE_FACTOR: f64 = 14.5;
const MAX_SMALLEST_BALL_DEGREE: usize = 29;

#[derive(Parser)]
#[command(
    name = "sigcheck",
    version,
    about = "Sphere-of-influence graphs and the 14.5n edge bound"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the built-in or a custom proof script.
    Verify(VerifyArgs),
    /// Verify the built-in script over a grid of p values.
    Sweep(SweepArgs),
    /// Build a sphere-of-influence graph from a point file.
    Sig(SigArgs),
    /// Emit a triangular lattice point file, or its degree statistics.
    Lattice(LatticeArgs),
    /// Check the per-vertex bounds on seeded random point sets.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Annulus ratio parameter, greater than 1.
    #[arg(long, default_value_t = DEFAULT_P)]
    p: f64,
    /// JSON proof script; defaults to the built-in one.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Print the built-in script as JSON and exit.
    #[arg(long)]
    dump_script: bool,
    /// Lower every pair bound by 1e-9 degrees.
    /// Lower every pair bound by 1e-9 degrees.
    #[arg(long)]
    paranoid: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SweepArgs {
    /// First p value.
    #[arg(long)]
    from: f64,
    /// Last p value, inclusive.
    #[arg(long)]
    to: f64,
    /// Grid step.
    #[arg(long)]
    step: f64,
    #[arg(long)]
    paranoid: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SigArgs {
    /// Closed graph: touching spheres are joined (default).
    #[arg(long, conflicts_with = "open")]
    closed: bool,
    /// Open graph: sphere interiors must overlap.
    #[arg(long)]
    open: bool,
    /// Point file; reads stdin when absent.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Relative tolerance for treating near-ties as ties.
    #[arg(long, default_value_t = 0.0)]
    tie_tol: f64,
    #[arg(long, default_value_t = DEFAULT_P)]
    p: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct LatticeArgs {
    /// Number of lattice rows.
    #[arg(long)]
    rows: usize,
    /// Number of lattice columns.
    #[arg(long)]
    cols: usize,
    /// Nearest-neighbour distance.
    #[arg(long, default_value_t = 1.0)]
    spacing: f64,
    /// Report closed-graph degree statistics instead of the points.
    #[arg(long)]
    stats: bool,
    /// Boundary rings excluded from the interior statistics.
    #[arg(long, default_value_t = 3)]
    margin: usize,
    /// Relative tie tolerance used for the statistics.
    #[arg(long, default_value_t = 1e-9)]
    tie_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Number of random point sets.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Points per set.
    #[arg(long, default_value_t = 50)]
    n: usize,
    /// Seed; trial i draws from stream i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_P)]
    p: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<ProofError> for Failure {
    fn from(e: ProofError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<sig_core::bounds::BoundsError> for Failure {
    fn from(e: sig_core::bounds::BoundsError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Sig(a) => cmd_sig(a),
        Command::Lattice(a) => cmd_lattice(a),
        Command::Experiment(a) => cmd_experiment(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    if a.dump_script {
        let mut s = builtin_paper_script().to_json();
        s.push('\n');
        emit(&a.out, &s)?;
        return Ok(true);
    }
    let script = match &a.script {
        Some(path) => ProofScript::from_json(&read_text(Some(path))?)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => builtin_paper_script(),
    };
    let params = Params::new(a.p)?.paranoid(a.paranoid);
    let report = verify_script(&script, &params)?;
    let text = match a.format {
        Format::Text => report.to_text(),
        Format::Json => json(&report),
    };
    emit(&a.out, &text)?;
    Ok(report.verified)
}

fn cmd_sweep(a: SweepArgs) -> Outcome {
    let rows = sweep_p(a.from, a.to, a.step, a.paranoid)?;
    let text = match a.format {
        TableFormat::Csv => sweep_to_csv(&rows),
        TableFormat::Json => json(&rows),
    };
    emit(&a.out, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct SigSummary<'a> {
    variant: Variant,
    p: f64,
    tie_tol: f64,
    vertices: usize,
    edges: usize,
    edges_per_vertex: f64,
    degree_histogram: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_out_weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    out_weight: Option<Vec<f64>>,
    edge_bound_holds: bool,
    radii: &'a [f64],
    edge_list: &'a [(usize, usize)],
}

fn histogram(degrees: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for d in degrees {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}

fn fmt_histogram(h: &BTreeMap<usize, usize>) -> String {
    h.iter()
        .map(|(d, n)| format!("{d}:{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_sig(a: SigArgs) -> Outcome {
    let variant = if a.open {
        Variant::Open
    } else {
        Variant::Closed
    };
    let text = read_text(a.input.as_deref())?;
    let ps: PointSet = parse_points(&text).map_err(|e| match &a.input {
        Some(p) => Failure::Usage(format!("{}: {e}", p.display())),
        None => Failure::Usage(format!("stdin: {e}")),
    })?;
    let params = Params::new(a.p)?;
    let graph = build_sig_with_tolerance(&ps, variant, a.tie_tol)?;
    let n = graph.vertex_count();
    let profile = match variant {
        Variant::Closed => Some(out_weight_profile_of(&wsig_from_graph(&graph, &params))),
        Variant::Open => None,
    };
    let holds = graph.edge_count() as f64 <= EDGE_FACTOR * n as f64;
    let summary = SigSummary {
        variant,
        p: a.p,
        tie_tol: a.tie_tol,
        vertices: n,
        edges: graph.edge_count(),
        edges_per_vertex: graph.edge_count() as f64 / n as f64,
        degree_histogram: histogram(graph.degrees()),
        max_out_weight: profile.as_ref().map(|p| p.max),
        out_weight: profile.as_ref().map(|p| p.out_weight.clone()),
        edge_bound_holds: holds,
        radii: &graph.radii,
        edge_list: &graph.edges,
    };
    let out = match a.format {
        Format::Json => json(&summary),
        Format::Text => {
            let mut s = String::new();
            s.push_str(&format!("# vertices {n}\n# edges {}\n", summary.edges));
            s.push_str(&format!(
                "# edges per vertex {:.4}\n",
                summary.edges_per_vertex
            ));
            s.push_str(&format!(
                "# degree histogram {}\n",
                fmt_histogram(&summary.degree_histogram)
            ));
            if let Some(p) = &profile {
                s.push_str(&format!(
                    "# max out-weight {} at vertex {}\n",
                    p.max, p.argmax
                ));
            }
            s.push_str(&format!(
                "# edges <= 14.5 n: {}\n",
                if holds { "PASS" } else { "FAIL" }
            ));
            s.push_str(&format_graph(&ps, &graph));
            s
        }
    };
    emit(&a.out, &out)?;
    Ok(holds)
}

#[derive(Serialize)]
struct LatticeStats {
    rows: usize,
    cols: usize,
    spacing: f64,
    tie_tol: f64,
    margin: usize,
    vertices: usize,
    edges: usize,
    edges_per_vertex: f64,
    interior_vertices: usize,
    interior_degree_histogram: BTreeMap<usize, usize>,
    interior_edges_per_vertex: f64,
    max_out_weight: f64,
}

fn cmd_lattice(a: LatticeArgs) -> Outcome {
    let ps = hex_lattice(a.rows, a.cols, a.spacing)?;
    if !a.stats {
        emit(&a.out, &format_points(&ps))?;
        return Ok(true);
    }
    let graph = build_sig_with_tolerance(&ps, Variant::Closed, a.tie_tol)?;
    let deg = graph.degrees();
    let interior = lattice_interior(a.rows, a.cols, a.margin);
    let interior_sum: usize = interior.iter().map(|&v| deg[v]).sum();
    let profile = out_weight_profile_of(&wsig_from_graph(&graph, &Params::new(DEFAULT_P)?));
    let stats = LatticeStats {
        rows: a.rows,
        cols: a.cols,
        spacing: a.spacing,
        tie_tol: a.tie_tol,
        margin: a.margin,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        edges_per_vertex: graph.edge_count() as f64 / graph.vertex_count() as f64,
        interior_vertices: interior.len(),
        interior_degree_histogram: histogram(interior.iter().map(|&v| deg[v])),
        interior_edges_per_vertex: if interior.is_empty() {
            0.0
        } else {
            interior_sum as f64 / 2.0 / interior.len() as f64
        },
        max_out_weight: profile.max,
    };
    let out = match a.format {
        Format::Json => json(&stats),
        Format::Text => format!(
            "lattice {}x{} spacing {} (tie tolerance {:e})\n\
             vertices {} edges {} edges per vertex {:.4}\n\
             interior vertices {} (margin {})\n\
             interior degree histogram {}\n\
             interior edges per vertex {:.4}\n\
             max out-weight {}\n",
            stats.rows,
            stats.cols,
            stats.spacing,
            stats.tie_tol,
            stats.vertices,
            stats.edges,
            stats.edges_per_vertex,
            stats.interior_vertices,
            stats.margin,
            fmt_histogram(&stats.interior_degree_histogram),
            stats.interior_edges_per_vertex,
            stats.max_out_weight
        ),
    };
    emit(&a.out, &out)?;
    Ok(true)
}

#[derive(Serialize)]
struct ExperimentSummary {
    trials: u64,
    n: usize,
    seed: u64,
    p: f64,
    max_edges: usize,
    max_edges_per_vertex: f64,
    max_out_weight: f64,
    max_out_weight_trial: u64,
    max_smallest_ball_degree: usize,
    reduction_checks_passed: u64,
    open_edges_never_exceed_closed: bool,
    violations: Vec<String>,
    passed: bool,
}

fn cmd_experiment(a: ExperimentArgs) -> Outcome {
    if a.n < 2 {
        return Err(Failure::Usage(format!(
            "--n must be at least 2, got {}",
            a.n
        )));
    }
    let params = Params::new(a.p)?;
    let mut s = ExperimentSummary {
        trials: a.trials,
        n: a.n,
        seed: a.seed,
        p: a.p,
        max_edges: 0,
        max_edges_per_vertex: 0.0,
        max_out_weight: 0.0,
        max_out_weight_trial: 0,
        max_smallest_ball_degree: 0,
        reduction_checks_passed: 0,
        open_edges_never_exceed_closed: true,
        violations: Vec::new(),
        passed: true,
    };
    for t in 0..a.trials {
        let st = run_trial(a.n, a.seed, t, &params)?;
        s.max_edges = s.max_edges.max(st.closed_edges);
        if st.max_out_weight > s.max_out_weight {
            s.max_out_weight = st.max_out_weight;
            s.max_out_weight_trial = t;
        }
        s.max_smallest_ball_degree = s.max_smallest_ball_degree.max(st.smallest_ball_degree);
        if st.reduction_ok {
            s.reduction_checks_passed += 1;
        } else {
            s.violations.push(format!(
                "trial {t}: reduced configuration violates a hypothesis"
            ));
        }
        if st.open_edges > st.closed_edges {
            s.open_edges_never_exceed_closed = false;
            s.violations
                .push(format!("trial {t}: open graph has more edges than closed"));
        }
        if st.closed_edges as f64 > EDGE_FACTOR * a.n as f64 {
            s.violations
                .push(format!("trial {t}: {} edges > 14.5 n", st.closed_edges));
        }
        if st.max_out_weight > EDGE_FACTOR {
            s.violations.push(format!(
                "trial {t}: out-weight {} > 14.5",
                st.max_out_weight
            ));
        }
        if st.smallest_ball_degree > MAX_SMALLEST_BALL_DEGREE {
            s.violations.push(format!(
                "trial {t}: smallest-ball vertex has degree {}",
                st.smallest_ball_degree
            ));
        }
    }
    s.max_edges_per_vertex = s.max_edges as f64 / a.n as f64;
    s.passed = s.violations.is_empty();
    let out = match a.format {
        Format::Json => json(&s),
        Format::Text => {
            let mut t = format!(
                "experiment: {} trials, n = {}, seed = {}, p = {}\n\
                 max closed edges {} ({:.4} per vertex; bound 14.5)\n\
                 max out-weight {} (trial {}; bound 14.5)\n\
                 max smallest-ball degree {} (bound 29)\n\
                 reduction hypotheses hold in {}/{} trials\n",
                s.trials,
                s.n,
                s.seed,
                s.p,
                s.max_edges,
                s.max_edges_per_vertex,
                s.max_out_weight,
                s.max_out_weight_trial,
                s.max_smallest_ball_degree,
                s.reduction_checks_passed,
                s.trials
            );
            for v in &s.violations {
                t.push_str(&format!("VIOLATION {v}\n"));
            }
            t.push_str(if s.passed {
                "result: PASS\n"
            } else {
                "result: FAIL\n"
            });
            t
        }
    };
    emit(&a.out, &out)?;
    Ok(s.passed)
}
