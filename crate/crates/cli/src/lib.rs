//! Command-line front end for `glueconn`.

pub mod report;
pub mod scenario;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use glueconn::bounds::{bridge_report, interface_bound_details};
use glueconn::consensus::stability_bound;
use glueconn::format::{read_graph_file, write_file, write_graph};
use glueconn::spectral::laplacian_spectral_radius;
use glueconn::{
    bridge_bound, compare_scenarios, estimate_time_constant, fiedler, format_comparison,
    remove_bridge_edges, simulate, BoundReport, ErrorCategory, GlueKind, GlueResult, Indexing,
    SimConfig,
};

use report::{num, OutputFormat, Report};
use scenario::{Loaded, Located, Op};

/// Exit status when a verified bound does not hold.
pub const EXIT_VIOLATION: i32 = 1;

pub fn exit_code(category: ErrorCategory) -> i32 {
    match category {
        ErrorCategory::Parse | ErrorCategory::Io => 2,
        ErrorCategory::Domain => 3,
        ErrorCategory::Spec => 4,
        ErrorCategory::Precondition => 5,
        ErrorCategory::Stability => 6,
    }
}

#[derive(Debug, Parser)]
#[command(name = "glueconn", version, about = "Glue agent graphs, bound their algebraic connectivity, simulate consensus")]
pub struct Cli {
    /// Read and write vertex labels starting at 1.
    #[arg(long, global = true)]
    pub one_indexed: bool,
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Laplacian spectrum, λ₂ and Fiedler vector of a graph file.
    Analyze { graph: PathBuf },
    /// Build the combined graph of a scenario.
    Glue {
        #[command(flatten)]
        glue: GlueArgs,
        /// Write the combined graph here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the analytical λ₂ bound for a scenario.
    Bounds {
        #[command(flatten)]
        glue: GlueArgs,
    },
    /// Simulate consensus on the combined graph and fit the time constant.
    Simulate {
        #[command(flatten)]
        glue: GlueArgs,
        /// Directory for trajectory CSV files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Also compare each input graph and every bridge count up to k.
        #[arg(long)]
        compare: bool,
    },
}

#[derive(Debug, Args)]
pub struct GlueArgs {
    pub scenario: PathBuf,
    /// Allow a vertex to anchor several bridge edges.
    #[arg(long)]
    pub relaxed: bool,
    /// Drop this many bridge edges, most recently listed first.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub remove_bridges: usize,
}

/// Outcome of a command: report text plus exit status.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

type CmdResult = Result<Outcome, Located>;

fn ok(stdout: String) -> CmdResult {
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: 0,
    })
}

/// Runs a parsed command line, printing to the given streams; returns the exit status.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let indexing = if cli.one_indexed {
        Indexing::OneBased
    } else {
        Indexing::ZeroBased
    };
    let result = match &cli.command {
        Command::Analyze { graph } => analyze(graph, indexing, cli.format),
        Command::Glue { glue: args, output } => glue(args, output.as_deref(), indexing, cli.format),
        Command::Bounds { glue: args } => bounds(args, indexing, cli.format),
        Command::Simulate {
            glue: args,
            out_dir,
            compare,
        } => simulate_cmd(args, out_dir.as_deref(), *compare, indexing, cli.format),
    };
    match result {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stderr.write_all(outcome.stderr.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(e.error.category())
        }
    }
}

fn analyze(path: &Path, indexing: Indexing, format: OutputFormat) -> CmdResult {
    let g = read_graph_file(path, indexing).map_err(Located::at(path))?;
    let spectrum = fiedler(&g).map_err(Located::at(path))?;
    let mut r = Report::new();
    r.field("vertices", g.vertex_count())
        .field("edges", g.edge_count())
        .field("connected", spectrum.is_connected())
        .field("components", spectrum.zero_multiplicity)
        .numbers("eigenvalues", &spectrum.eigenvalues)
        .number("lambda2", spectrum.fiedler_value)
        .number("lambda_max", spectrum.largest())
        .numbers("fiedler_vector", &spectrum.fiedler_vector);
    ok(r.render(format))
}

fn glued(loaded: &Loaded, args: &GlueArgs) -> Result<GlueResult, Located> {
    let result = loaded.glue(args.relaxed)?;
    if args.remove_bridges == 0 {
        return Ok(result);
    }
    remove_bridge_edges(&result, args.remove_bridges).map_err(Located::at(&loaded.path))
}

fn vertex_map(map: &[usize], indexing: Indexing) -> Vec<String> {
    map.iter()
        .enumerate()
        .map(|(v, &w)| format!("{}:{}", indexing.to_external(v), indexing.to_external(w)))
        .collect()
}

fn describe_glue(r: &mut Report, result: &GlueResult, op: Op, indexing: Indexing) {
    r.field("op", op.as_str())
        .field("n1", result.n1())
        .field("n2", result.n2())
        .field("vertices", result.graph.vertex_count())
        .field("edges", result.graph.edge_count());
    match &result.kind {
        GlueKind::Bridge { edges } => {
            r.field("bridge_count", edges.len()).list(
                "bridges",
                edges
                    .iter()
                    .map(|&(u, v)| format!("{}-{}", indexing.to_external(u), indexing.to_external(v))),
            );
        }
        GlueKind::Interface { y_size, y_edges } => {
            r.field("interface_vertices", y_size).field("interface_edges", y_edges);
        }
    }
    r.list("map_g1", vertex_map(&result.map_g1, indexing))
        .list("map_g2", vertex_map(&result.map_g2, indexing));
}

fn glue(args: &GlueArgs, output: Option<&Path>, indexing: Indexing, format: OutputFormat) -> CmdResult {
    let loaded = Loaded::read(&args.scenario, indexing)?;
    let result = glued(&loaded, args)?;
    let mut r = Report::new();
    describe_glue(&mut r, &result, loaded.scenario.op, indexing);
    let graph_text = write_graph(&result.graph, indexing);
    match output {
        Some(path) => {
            write_file(path, &graph_text).map_err(Located::at(path))?;
            r.field("output", path.display());
            ok(r.render(format))
        }
        None => {
            // the summary rides along as comments so stdout stays a valid graph file
            let mut out: String = r.render(format).lines().map(|l| format!("# {l}\n")).collect();
            out.push_str(&graph_text);
            ok(out)
        }
    }
}

fn describe_bound(r: &mut Report, b: &BoundReport) {
    r.field("bound_kind", b.bound_kind)
        .field("formula", b.bound_kind.formula())
        .number("bound", b.bound_value)
        .number("lambda2", b.fiedler_value)
        .number("slack", b.slack)
        .field("satisfied", b.satisfied);
}

fn bounds(args: &GlueArgs, indexing: Indexing, format: OutputFormat) -> CmdResult {
    let loaded = Loaded::read(&args.scenario, indexing)?;
    let at = Located::at(&loaded.path);
    let mut r = Report::new();
    let (report, graph) = match loaded.scenario.op {
        Op::Bridge => {
            let result = glued(&loaded, args)?;
            r.field("op", "bridge")
                .field("n1", result.n1())
                .field("n2", result.n2())
                .field("k", result.bridge_edges().len());
            (bridge_report(&result).map_err(at)?, result.graph)
        }
        Op::Interface => {
            if args.remove_bridges > 0 {
                glued(&loaded, args)?;
            }
            let spec = loaded.interface_spec().map_err(Located::at(&loaded.path))?;
            let d = interface_bound_details(&loaded.g1, &loaded.g2, &spec).map_err(at)?;
            r.field("op", "interface")
                .field("n1", d.glued.n1())
                .field("n2", d.glued.n2())
                .field("interface_vertices", spec.len())
                .number("grounded_g1", d.grounded_g1)
                .number("grounded_g2", d.grounded_g2);
            (d.report, d.glued.graph)
        }
    };
    describe_bound(&mut r, &report);
    if report.satisfied {
        return ok(r.render(format));
    }
    Ok(Outcome {
        stdout: r.render(format),
        stderr: violation_dump(&report, &graph, indexing),
        code: EXIT_VIOLATION,
    })
}

/// Combined graph and spectrum for a bound that failed to hold.
fn violation_dump(report: &BoundReport, graph: &glueconn::Graph, indexing: Indexing) -> String {
    let mut out = format!("error: {report}\n# combined graph\n");
    out.push_str(&write_graph(graph, indexing));
    if let Ok(s) = fiedler(graph) {
        let values: Vec<String> = s.eigenvalues.iter().map(|&x| num(x)).collect();
        out.push_str(&format!("# eigenvalues {}\n", values.join(" ")));
    }
    out
}

fn sim_config(loaded: &Loaded, g: &glueconn::Graph) -> Result<SimConfig, Located> {
    let at = || Located::at(&loaded.path);
    let mut cfg = SimConfig::recommended(g).map_err(at())?;
    let s = &loaded.scenario;
    if let Some(dt) = s.dt {
        cfg.dt = dt;
    }
    if let Some(horizon) = s.horizon {
        cfg.horizon = horizon;
    }
    if let Some(method) = s.method {
        cfg.method = method;
    }
    Ok(cfg)
}

fn pull_back(x0: &[f64], map: &[usize]) -> Vec<f64> {
    map.iter().map(|&w| x0[w]).collect()
}

fn simulate_cmd(
    args: &GlueArgs,
    out_dir: Option<&Path>,
    compare: bool,
    indexing: Indexing,
    format: OutputFormat,
) -> CmdResult {
    let loaded = Loaded::read(&args.scenario, indexing)?;
    let at = || Located::at(&loaded.path);
    if loaded.scenario.x0.is_empty() {
        let line = loaded.scenario.line_count.max(1);
        return Err(at()(glueconn::Error::parse(line, 1, "missing `x0` line")));
    }
    let result = glued(&loaded, args)?;
    let g = &result.graph;
    let cfg = sim_config(&loaded, g)?;
    let dir = out_dir
        .map(Path::to_path_buf)
        .or_else(|| loaded.scenario.output.clone())
        .unwrap_or_else(|| PathBuf::from(format!("{}_out", loaded.stem())));
    std::fs::create_dir_all(&dir).map_err(|source| {
        Located::from(glueconn::Error::Io {
            path: dir.display().to_string(),
            source,
        })
    })?;

    let lambda_max = laplacian_spectral_radius(g).map_err(at())?;
    let mut r = Report::new();
    r.field("vertices", g.vertex_count())
        .field("edges", g.edge_count())
        .field("method", cfg.method.as_str())
        .number("dt", cfg.dt)
        .number("dt_max", stability_bound(cfg.method, lambda_max))
        .number("horizon", cfg.horizon)
        .field("steps", cfg.steps());

    let many = loaded.scenario.x0.len() > 1;
    for (i, x0) in loaded.scenario.x0.iter().enumerate() {
        let traj = simulate(g, x0, &cfg).map_err(at())?;
        let est = estimate_time_constant(&traj, g).map_err(at())?;
        let name = if many {
            format!("trajectory_{}.csv", i + 1)
        } else {
            "trajectory.csv".to_string()
        };
        let csv = dir.join(&name);
        write_file(&csv, &traj.to_csv()).map_err(Located::at(&csv))?;
        let prefix = if many { format!("run{}.", i + 1) } else { String::new() };
        r.number(format!("{prefix}consensus_value"), traj.consensus_value)
            .number(format!("{prefix}initial_disagreement"), traj.disagreement[0])
            .number(format!("{prefix}final_disagreement"), *traj.disagreement.last().expect("nonempty"))
            .number(format!("{prefix}lambda2"), est.fiedler_value)
            .number(format!("{prefix}tau_predicted"), est.tau_predicted)
            .number(format!("{prefix}tau_measured"), est.tau_measured)
            .number(format!("{prefix}relative_error"), est.relative_error)
            .list(format!("{prefix}fit_window"), [num(est.fit_window.0), num(est.fit_window.1)])
            .field(format!("{prefix}fit_points"), est.fit_points)
            .field(format!("{prefix}csv"), csv.display());
    }

    let mut code = 0;
    if compare {
        code = comparison(&loaded, &result, &dir, &mut r)?;
    }
    Ok(Outcome {
        stdout: r.render(format),
        stderr: String::new(),
        code,
    })
}

/// Rows for each input graph and each glued stage; returns the exit status.
fn comparison(loaded: &Loaded, result: &GlueResult, dir: &Path, r: &mut Report) -> Result<i32, Located> {
    let x0 = &loaded.scenario.x0[0];
    let method = loaded.scenario.method;
    let mut scenarios = vec![
        glueconn::Scenario::new("g1", loaded.g1.clone(), pull_back(x0, &result.map_g1)),
        glueconn::Scenario::new("g2", loaded.g2.clone(), pull_back(x0, &result.map_g2)),
    ];
    match &result.kind {
        GlueKind::Bridge { edges } => {
            let (n1, n2) = (result.n1(), result.n2());
            for k in 1..=edges.len() {
                let stage = remove_bridge_edges(result, edges.len() - k).map_err(Located::at(&loaded.path))?;
                scenarios.push(
                    glueconn::Scenario::new(format!("bridge_k{k}"), stage.graph, x0.clone())
                        .with_bound(bridge_bound(n1, n2, k)),
                );
            }
        }
        GlueKind::Interface { .. } => {
            let mut s = glueconn::Scenario::new("interface", result.graph.clone(), x0.clone());
            let spec = loaded.interface_spec().map_err(Located::at(&loaded.path))?;
            if let Ok(d) = interface_bound_details(&loaded.g1, &loaded.g2, &spec) {
                s = s.with_bound(d.report.bound_value);
            }
            scenarios.push(s);
        }
    }
    for s in &mut scenarios {
        if let Some(m) = method {
            let mut cfg = SimConfig::recommended(&s.graph).map_err(Located::from)?;
            cfg.method = m;
            s.config = Some(cfg);
        }
    }

    let rows = compare_scenarios(&scenarios);
    let mut code = 0;
    for (i, (s, row)) in scenarios.iter().zip(&rows).enumerate() {
        let key = format!("compare{}", i + 1);
        r.field(format!("{key}.label"), &s.label);
        match row {
            Ok(row) => {
                let csv = dir.join(format!("compare_{}_{}.csv", i + 1, s.label));
                write_file(&csv, &row.trajectory.to_csv()).map_err(Located::at(&csv))?;
                r.number(format!("{key}.lambda2"), row.fiedler_value);
                if let Some(b) = row.bound {
                    r.number(format!("{key}.bound"), b);
                }
                r.number(format!("{key}.tau_predicted"), row.tau_predicted)
                    .number(format!("{key}.tau_measured"), row.tau_measured)
                    .number(format!("{key}.consensus_value"), row.consensus_value)
                    .field(format!("{key}.csv"), csv.display());
            }
            Err(e) => {
                r.field(format!("{key}.error"), e);
                if code == 0 {
                    code = exit_code(e.category());
                }
            }
        }
    }
    r.table(format_comparison(&scenarios, &rows));
    Ok(code)
}
