//! The `biplane` command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::augment::{
    augment_to_4conn, augment_tree_2edge, generate_fan, generate_no5conn, generate_wheel, min_augment_3conn,
};
use crate::connectivity::{check_4conn_augmentation, is_k_connected};
use crate::convex::{build_4conn_convex, build_5conn_convex};
use crate::error::{Error, Result};
use crate::gen;
use crate::geom::{format_points, parse_points, PointSet};
use crate::graph::{format_layered_edges, parse_layered_edges, Edge, Layer, LayeredGraph, SimpleGraph};
use crate::insert::{build_5conn_general_traced, Checkpoint};
use crate::render::render_svg;
use crate::report::RunReport;
use crate::triangulation::Triangulation;

#[derive(Debug, Parser)]
#[command(name = "biplane", version, about = "Highly connected biplane geometric graphs")]
pub struct Cli {
    /// Seed for the random generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the graph after every construction step (build --mode general5).
    #[arg(long, global = true)]
    pub trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    /// Regular n-gon.
    Regular,
    /// n random points in general position in [-range, range]^2.
    Random,
    /// n random points on a circle.
    Convex,
    /// Regular n-gon plus `extra` random points around it.
    Mixed,
    /// Wheel triangulation on n points.
    Wheel,
    /// Fan triangulation on n points.
    Fan,
    /// Chord-free 4-connected triangulation with no 5-connecting second layer; n is k.
    No5conn,
    /// Random crossing-free spanning tree on n points.
    Tree,
    /// Random triangulation on n points.
    Triangulation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildMode {
    Convex4,
    Convex5,
    General5,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point set, and an edge list for graph shapes.
    Gen {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 1_000_000)]
        range: i64,
    },
    /// Build a highly connected biplane graph on a point set.
    Build {
        #[arg(long, value_enum)]
        mode: BuildMode,
        points: PathBuf,
    },
    /// Add a crossing-free second layer to a one-layer graph.
    Augment {
        /// 2 for plane trees, 3 or 4 for triangulations.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        target: u8,
        points: PathBuf,
        edges: PathBuf,
    },
    /// Recompute connectivity, layering and cut structures of a graph.
    Verify { points: PathBuf, edges: Option<PathBuf> },
    /// Draw a graph as SVG.
    Render { points: PathBuf, edges: Option<PathBuf> },
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match run(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::pre(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::pre(format!("{}: {e}", path.display())))
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout.write_all(text.as_bytes()).map_err(|e| Error::pre(format!("stdout: {e}")))
}

fn load(points: &Path, edges: Option<&Path>) -> Result<LayeredGraph> {
    let ps = parse_points(&read(points)?)?;
    match edges {
        Some(p) => parse_layered_edges(&read(p)?, ps),
        None => Ok(LayeredGraph::new(ps)),
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn edge_triples(g: &LayeredGraph) -> Vec<[usize; 3]> {
    g.edges().map(|(e, l)| [e.u(), e.v(), l.code() as usize]).collect()
}

/// Writes the graph to `--out` or standard output, then the report.
fn emit_graph(cli: &Cli, stdout: &mut dyn Write, g: &LayeredGraph, report: &RunReport) -> Result<()> {
    let text = format_layered_edges(g);
    match (&cli.out, cli.format) {
        (Some(p), Format::Text) => {
            write_file(p, &text)?;
            emit(stdout, &report.to_text(""))
        }
        (Some(p), Format::Json) => {
            write_file(p, &text)?;
            emit(stdout, &format!("{}\n", serde_json::to_string_pretty(report).unwrap()))
        }
        (None, Format::Text) => emit(stdout, &format!("{text}{}", report.to_text("# "))),
        (None, Format::Json) => {
            let v = json!({ "report": report, "edges": edge_triples(g) });
            emit(stdout, &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Gen { shape, n, extra, range } => cmd_gen(cli, stdout, *shape, *n, *extra, *range),
        Command::Build { mode, points } => {
            let ps = parse_points(&read(points)?)?;
            let (g, report) = cmd_build(cli, *mode, &ps)?;
            emit_graph(cli, stdout, &g, &report)
        }
        Command::Augment { target, points, edges } => {
            let g = cmd_augment(*target, &load(points, Some(edges))?)?;
            let mut report = RunReport::of(&g);
            if *target == 4 {
                let t = first_layer_triangulation(&g)?;
                let added = g.layer_edges(2);
                report.violations.extend(check_4conn_augmentation(&t, &added)?.violations);
            }
            if report.kappa < *target as usize && *target > 2 {
                return Err(Error::internal(format!("augmented graph has connectivity {} < {target}", report.kappa)));
            }
            emit_graph(cli, stdout, &g, &report)
        }
        Command::Verify { points, edges } => {
            let g = load(points, edges.as_deref())?;
            let report = RunReport::of(&g);
            let text = match cli.format {
                Format::Text => report.to_text(""),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
            };
            match &cli.out {
                Some(p) => write_file(p, &text),
                None => emit(stdout, &text),
            }
        }
        Command::Render { points, edges } => {
            let svg = render_svg(&load(points, edges.as_deref())?);
            match &cli.out {
                Some(p) => write_file(p, &svg),
                None => emit(stdout, &svg),
            }
        }
    }
}

fn cmd_gen(cli: &Cli, stdout: &mut dyn Write, shape: Shape, n: usize, extra: usize, range: i64) -> Result<()> {
    let seed = cli.seed;
    let (ps, graph): (PointSet, Option<LayeredGraph>) = match shape {
        Shape::Regular => (gen::regular_polygon(n)?, None),
        Shape::Random => (gen::random_general_position(n, range, seed)?, None),
        Shape::Convex => (gen::random_convex_position(n, seed)?, None),
        Shape::Mixed => (gen::core_with_extras(n, extra, seed)?, None),
        Shape::Tree => {
            let g = gen::random_plane_tree(n, range, seed)?;
            (g.points().clone(), Some(g))
        }
        Shape::Wheel | Shape::Fan | Shape::No5conn | Shape::Triangulation => {
            let t = match shape {
                Shape::Wheel => generate_wheel(n)?,
                Shape::Fan => generate_fan(n)?,
                Shape::No5conn => generate_no5conn(n)?.0,
                _ => gen::random_triangulation(n, range, seed)?,
            };
            let g = t.to_layered(Layer::First);
            (g.points().clone(), Some(g))
        }
    };
    let points_text = format_points(&ps);
    let edges_text = graph.as_ref().map(format_layered_edges);
    match (&cli.out, cli.format) {
        (Some(p), fmt) => {
            write_file(p, &points_text)?;
            let edges_path = sibling(p, ".edges");
            if let Some(t) = &edges_text {
                write_file(&edges_path, t)?;
            }
            let edges_name = edges_text.as_ref().map(|_| edges_path.display().to_string());
            match fmt {
                Format::Text => {
                    let mut s = format!("points {} {}\n", ps.len(), p.display());
                    if let (Some(name), Some(g)) = (&edges_name, &graph) {
                        s += &format!("edges {} {name}\n", g.edge_count());
                    }
                    emit(stdout, &s)
                }
                Format::Json => {
                    let v =
                        json!({ "points": ps.len(), "points_file": p.display().to_string(), "edges_file": edges_name });
                    emit(stdout, &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
                }
            }
        }
        (None, Format::Text) => match edges_text {
            Some(t) => emit(stdout, &format!("{points_text}# edges\n{t}")),
            None => emit(stdout, &points_text),
        },
        (None, Format::Json) => {
            let pts: Vec<[i64; 2]> = ps.points().iter().map(|p| [p.x, p.y]).collect();
            let v = json!({ "points": pts, "edges": graph.as_ref().map(edge_triples) });
            emit(stdout, &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
    }
}

/// Builds the graph for `mode` and checks the claimed connectivity on the
/// recomputed report.
pub fn cmd_build(cli: &Cli, mode: BuildMode, ps: &PointSet) -> Result<(LayeredGraph, RunReport)> {
    let mut checkpoints: Vec<Checkpoint> = Vec::new();
    let (g, claim) = match mode {
        BuildMode::Convex4 => (build_4conn_convex(ps)?, 4),
        BuildMode::Convex5 => (build_5conn_convex(ps)?, 5),
        BuildMode::General5 => {
            let b = build_5conn_general_traced(ps, &mut |c| {
                if cli.trace {
                    checkpoints.push(c.clone());
                }
            })?;
            (b.graph, 5)
        }
    };
    let mut report = RunReport::of(&g);
    if cli.trace && !checkpoints.is_empty() {
        let dir = match &cli.out {
            Some(p) => sibling(p, ".trace"),
            None => PathBuf::from("biplane-trace"),
        };
        std::fs::create_dir_all(&dir).map_err(|e| Error::pre(format!("{}: {e}", dir.display())))?;
        for (i, c) in checkpoints.iter().enumerate() {
            let path = dir.join(format!("{i:03}-{}.edges", c.phase.name()));
            write_file(&path, &format_layered_edges(&c.graph))?;
            report.phase_checkpoints.push(path.display().to_string());
            let vs: Vec<usize> = c
                .graph
                .edges()
                .flat_map(|(e, _)| [e.u(), e.v()])
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let sub = SimpleGraph::induced(&vs, c.graph.edges().map(|(e, _)| e));
            if !is_k_connected(&sub, claim) {
                report.violations.push(format!("checkpoint {i} ({}) is not {claim}-connected", c.phase.name()));
            }
        }
    }
    if report.kappa < claim || !report.violations.is_empty() {
        return Err(Error::internal(format!(
            "built graph fails its own check: kappa {} (claimed {claim}), {} violations",
            report.kappa,
            report.violations.len()
        )));
    }
    Ok((g, report))
}

fn first_layer_triangulation(g: &LayeredGraph) -> Result<Triangulation> {
    let ids: Vec<usize> = (0..g.n()).collect();
    Triangulation::build(g.points(), &ids, g.layer_edges(1).into_iter().collect())
}

/// The input graph in layer one and the added edges in layer two.
pub fn cmd_augment(target: u8, input: &LayeredGraph) -> Result<LayeredGraph> {
    let edges: Vec<Edge> = input.edges().map(|(e, _)| e).collect();
    let one_layer = LayeredGraph::from_layers(input.points().clone(), edges.iter().copied(), []);
    let added = match target {
        2 => augment_tree_2edge(&one_layer)?,
        3 => min_augment_3conn(&first_layer_triangulation(&one_layer)?)?,
        4 => augment_to_4conn(&first_layer_triangulation(&one_layer)?)?.added.into_iter().collect(),
        _ => return Err(Error::pre(format!("unsupported target {target}"))),
    };
    let mut g = one_layer;
    for e in added {
        g.insert(e, Layer::Second);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(std::iter::once("biplane").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn tmp(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("biplane-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn gen_is_deterministic() {
        let a = run_args(&["gen", "--shape", "random", "--n", "20", "--seed", "7"]);
        let b = run_args(&["gen", "--shape", "random", "--n", "20", "--seed", "7"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        assert_eq!(a.1.lines().count(), 20);
    }

    #[test]
    fn build_and_verify_round_trip() {
        let pts = tmp("gon14.txt");
        let edges = tmp("gon14.edges.out");
        assert_eq!(run_args(&["gen", "--shape", "regular", "--n", "14", "--out", pts.to_str().unwrap()]).0, 0);
        let (code, out, _) =
            run_args(&["build", "--mode", "convex5", pts.to_str().unwrap(), "--out", edges.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("kappa 5"));
        let (code, out, _) = run_args(&["verify", pts.to_str().unwrap(), edges.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kappa"], 5);
        assert_eq!(v["biplane"], true);
    }

    #[test]
    fn thirteen_gon_exits_with_two() {
        let pts = tmp("gon13.txt");
        run_args(&["gen", "--shape", "regular", "--n", "13", "--out", pts.to_str().unwrap()]);
        let (code, _, err) = run_args(&["build", "--mode", "convex5", pts.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(err.contains("n = 12 or n >= 14"));
    }

    #[test]
    fn wheel_augment_exits_with_two() {
        let pts = tmp("wheel.txt");
        run_args(&["gen", "--shape", "wheel", "--n", "8", "--out", pts.to_str().unwrap()]);
        let edges = sibling(&pts, ".edges");
        let (code, _, err) = run_args(&["augment", "--target", "4", pts.to_str().unwrap(), edges.to_str().unwrap()]);
        assert_eq!(code, 2, "{err}");
    }

    #[test]
    fn bad_input_exits_with_three() {
        let pts = tmp("collinear.txt");
        std::fs::write(&pts, "0 0\n1 1\n2 2\n").unwrap();
        assert_eq!(run_args(&["verify", pts.to_str().unwrap()]).0, 3);
        assert_eq!(run_args(&["verify", "/nonexistent/points.txt"]).0, 3);
        assert_eq!(run_args(&["frobnicate"]).0, 3);
    }
}
