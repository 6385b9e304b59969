use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use curve_depth::analytics::{depth_field, median_point_grid, rank_curves, BBox, Grid};
use curve_depth::exact::{generate_events, partition_into_invariant_intervals};
use curve_depth::hull::{build_hierarchy, tangent_event_set};
use curve_depth::io::{parse_curve_set, DepthReport, Method};
use curve_depth::monte_carlo::{closeness_bound, estimate_depth, required_samples, McConfig, RNG_NAME};
use curve_depth::{curve_depth, point_depth_raw, DepthError, ExactOptions, Point, Polyline};

const THREADS_VAR: &str = "CURVE_DEPTH_THREADS";

#[derive(Parser)]
#[command(name = "curve-depth", version, about = "Curve stabbing depth of planar polylines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact depth of a query curve.
    Depth {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        hull_prune: bool,
    },
    /// Exact depth of a single point.
    PointDepth {
        #[arg(long)]
        population: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
    /// Monte Carlo estimate of a query's depth.
    Mc {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        normalized: bool,
    },
    /// Rank every population curve by depth; CSV `id,depth`, deepest first.
    Rank {
        #[arg(long)]
        population: PathBuf,
        #[arg(long)]
        include_self: bool,
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        hull_prune: bool,
    },
    /// Deepest node of a grid inside the population hull.
    Median {
        #[arg(long)]
        population: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Normalized point-depth field on a grid, written as CSV.
    Grid {
        #[arg(long)]
        population: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump the event points and invariant intervals of a query.
    Events {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        hull_prune: bool,
        /// Also dump the hull hierarchy and the tangent lines.
        #[arg(long)]
        hulls: bool,
    },
    /// Exact depth against a Monte Carlo estimate.
    Compare {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        normalized: bool,
    },
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    population: PathBuf,
    /// Curve-set file whose first curve is the query.
    #[arg(long, conflicts_with = "query_id", required_unless_present = "query_id")]
    query: Option<PathBuf>,
    /// Id of a population curve to use as the query.
    #[arg(long)]
    query_id: Option<String>,
    /// Keep the `--query-id` curve in the population.
    #[arg(long, requires = "query_id")]
    include_self: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Budget {
    #[arg(long)]
    samples: Option<u64>,
    /// Target accuracy; on the normalized scale with `--normalized`.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, num_args = 4, value_names = ["X0", "Y0", "X1", "Y1"], allow_hyphen_values = true)]
    bbox: Vec<f64>,
    /// Nodes per axis.
    #[arg(long)]
    res: usize,
}

enum CliError {
    Usage(String),
    Io(PathBuf, io::Error),
    Depth(DepthError),
}

impl From<DepthError> for CliError {
    fn from(e: DepthError) -> Self {
        CliError::Depth(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Depth(DepthError::Domain(_)) => 2,
            CliError::Io(..) | CliError::Depth(DepthError::Parse { .. }) => 3,
            CliError::Depth(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Io(p, e) => format!("{}: {e}", p.display()),
            CliError::Depth(e) => e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

struct Population {
    ids: Vec<String>,
    curves: Vec<Polyline>,
}

fn load(path: &Path) -> CliResult<Population> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    let set = parse_curve_set(&bytes).map_err(|e| match e {
        DepthError::Parse { path: p, message } => CliError::Depth(DepthError::Parse {
            path: p,
            message: format!("{message} (in {})", path.display()),
        }),
        other => CliError::Depth(other),
    })?;
    for w in &set.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(Population {
        ids: set.ids,
        curves: set.curves,
    })
}

fn load_population(path: &Path) -> CliResult<Population> {
    let p = load(path)?;
    if p.curves.is_empty() {
        return Err(CliError::Usage(format!("{}: population has no curves", path.display())));
    }
    Ok(p)
}

struct Query {
    label: Value,
    curve: Polyline,
    population: Vec<Polyline>,
}

fn points_value(p: &Polyline) -> Value {
    json!(p.vertices().iter().map(|v| [v.x, v.y]).collect::<Vec<_>>())
}

fn resolve_query(args: &QueryArgs) -> CliResult<Query> {
    let pop = load_population(&args.population)?;
    if let Some(id) = &args.query_id {
        let i = pop
            .ids
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| CliError::Usage(format!("no curve with id {id:?} in the population")))?;
        let curve = pop.curves[i].clone();
        let population = if args.include_self {
            pop.curves
        } else {
            pop.curves
                .into_iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| c)
                .collect()
        };
        return Ok(Query {
            label: json!(id),
            curve,
            population,
        });
    }
    let path = args.query.as_ref().expect("clap requires --query or --query-id");
    let q = load(path)?;
    let curve = q
        .curves
        .into_iter()
        .next()
        .ok_or_else(|| CliError::Usage(format!("{}: query file has no curves", path.display())))?;
    Ok(Query {
        label: points_value(&curve),
        curve,
        population: pop.curves,
    })
}

fn exact_opts(hull_prune: bool) -> ExactOptions {
    ExactOptions {
        hull_prune,
        parallel: true,
    }
}

fn grid_of(args: &GridArgs) -> CliResult<Grid> {
    let [x0, y0, x1, y1] = args.bbox[..] else {
        return Err(CliError::Usage("--bbox takes four numbers".into()));
    };
    Ok(Grid::new(BBox::new(x0, y0, x1, y1)?, args.res, args.res)?)
}

fn print_json<T: Serialize>(v: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(v).expect("reports always serialize");
    let mut out = io::stdout().lock();
    writeln!(out, "{s}").map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))
}

#[derive(Serialize)]
struct McReport {
    #[serde(flatten)]
    report: DepthReport,
    rng: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    /// Lower bound on the probability that the estimate is within `epsilon`.
    #[serde(skip_serializing_if = "Option::is_none")]
    confidence: Option<f64>,
}

struct McRun {
    report: McReport,
    estimate_raw_scale: f64,
}

fn run_mc(q: &Query, budget: &Budget, seed: u64, normalized: bool) -> CliResult<McRun> {
    let n = q.population.len();
    // The sample bound is stated on the un-normalized scale.
    let eps_raw = budget.epsilon.map(|e| if normalized { e * n as f64 } else { e });
    let samples = match (budget.samples, eps_raw) {
        (Some(s), _) => s,
        (None, Some(e)) => required_samples(e, n)?,
        (None, None) => unreachable!("clap requires --samples or --epsilon"),
    };
    let cfg = McConfig {
        parallel: true,
        ..McConfig::new(samples, seed)
    };
    let est = estimate_depth(&q.curve, &q.population, &cfg)?;
    let length = q.curve.arc_length();
    let report = DepthReport {
        query: q.label.clone(),
        n,
        depth_raw: est.d_hat * std::f64::consts::PI * length,
        depth: if normalized { est.d_hat_normalized } else { est.d_hat },
        depth_normalized: est.d_hat_normalized,
        length,
        intervals: 0,
        method: Method::Mc,
        seed: Some(seed),
        samples: Some(samples),
    };
    Ok(McRun {
        report: McReport {
            report,
            rng: RNG_NAME,
            epsilon: budget.epsilon,
            confidence: eps_raw.map(|e| closeness_bound(samples, e, n)),
        },
        estimate_raw_scale: est.d_hat,
    })
}

fn exact_report(q: &Query, normalized: bool, hull_prune: bool) -> CliResult<DepthReport> {
    let r = curve_depth(&q.curve, &q.population, &exact_opts(hull_prune))?;
    Ok(DepthReport {
        query: q.label.clone(),
        n: r.n,
        depth_raw: r.raw,
        depth: if normalized { r.normalized } else { r.depth },
        depth_normalized: r.normalized,
        length: r.length,
        intervals: r.per_interval.len(),
        method: Method::Exact,
        seed: None,
        samples: None,
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Depth {
            query,
            normalized,
            hull_prune,
        } => {
            let q = resolve_query(&query)?;
            print_json(&exact_report(&q, normalized, hull_prune)?)
        }
        Command::PointDepth { population, x, y } => {
            let pop = load_population(&population)?;
            let p = Point::try_new(x, y)?;
            let raw = point_depth_raw(p, &pop.curves);
            let n = pop.curves.len();
            let depth = raw / std::f64::consts::PI;
            print_json(&json!({
                "point": [x, y],
                "n": n,
                "depth_raw": raw,
                "depth": depth,
                "depth_normalized": depth / n as f64,
            }))
        }
        Command::Mc {
            query,
            budget,
            seed,
            normalized,
        } => {
            let q = resolve_query(&query)?;
            print_json(&run_mc(&q, &budget, seed, normalized)?.report)
        }
        Command::Rank {
            population,
            include_self,
            normalized,
            hull_prune,
        } => {
            let pop = load_population(&population)?;
            let r = rank_curves(&pop.curves, include_self, &exact_opts(hull_prune))?;
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            let io_err = |e: csv::Error| CliError::Io(PathBuf::from("<stdout>"), e.into());
            w.write_record(["id", "depth"]).map_err(io_err)?;
            for e in &r.entries {
                let d = if normalized { e.normalized } else { e.depth };
                w.write_record([pop.ids[e.index].as_str(), &d.to_string()])
                    .map_err(io_err)?;
            }
            w.flush().map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))
        }
        Command::Median { population, grid } => {
            let pop = load_population(&population)?;
            let g = grid_of(&grid)?;
            let m = median_point_grid(&pop.curves, &g)?;
            print_json(&json!({
                "kind": "grid median",
                "point": [m.point.x, m.point.y],
                "row": m.row,
                "col": m.col,
                "depth_normalized": m.depth,
                "bbox": grid.bbox,
                "res": grid.res,
            }))
        }
        Command::Grid { population, grid, out } => {
            let pop = load_population(&population)?;
            let g = grid_of(&grid)?;
            let field = depth_field(&pop.curves, &g);
            write_grid_csv(&out, &grid, &g, &field.values)?;
            print_json(&json!({
                "out": out.display().to_string(),
                "rows": g.ny,
                "cols": g.nx,
            }))
        }
        Command::Events {
            query,
            hull_prune,
            hulls,
        } => {
            let q = resolve_query(&query)?;
            let events = generate_events(&q.curve, &q.population, hull_prune);
            let intervals: Vec<Value> = partition_into_invariant_intervals(&q.curve, &q.population, &events)?
                .iter()
                .map(|iv| {
                    json!({
                        "segment_index": iv.segment_index,
                        "t_lo": iv.t_lo,
                        "t_hi": iv.t_hi,
                        "boundaries": iv.arrangement.boundaries().len(),
                        "cells": iv.arrangement.cells(),
                    })
                })
                .collect();
            let mut doc = json!({
                "query": q.label,
                "n": q.population.len(),
                "hull_prune": hull_prune,
                "events": events,
                "intervals": intervals,
            });
            if hulls {
                let h = build_hierarchy(&q.population, &q.curve);
                let s = tangent_event_set(&h, &q.curve);
                doc["hierarchy"] = serde_json::to_value(&h).expect("hierarchy serializes");
                doc["tangents"] = serde_json::to_value(&s).expect("tangents serialize");
            }
            print_json(&doc)
        }
        Command::Compare {
            query,
            budget,
            seed,
            normalized,
        } => {
            let q = resolve_query(&query)?;
            let exact = curve_depth(&q.curve, &q.population, &exact_opts(false))?;
            let mc = run_mc(&q, &budget, seed, normalized)?;
            let n = q.population.len();
            let scale = if normalized && n > 0 { 1.0 / n as f64 } else { 1.0 };
            let (e, m) = (exact.depth * scale, mc.estimate_raw_scale * scale);
            print_json(&json!({
                "query": q.label,
                "n": n,
                "normalized": normalized,
                "exact": e,
                "mc": m,
                "abs_error": (e - m).abs(),
                "samples": mc.report.report.samples,
                "seed": seed,
                "rng": RNG_NAME,
                "epsilon": mc.report.epsilon,
                "confidence": mc.report.confidence,
            }))
        }
    }
}

fn write_grid_csv(out: &Path, args: &GridArgs, g: &Grid, values: &[f64]) -> CliResult<()> {
    let io_err = |e: io::Error| CliError::Io(out.to_path_buf(), e);
    let mut file = io::BufWriter::new(fs::File::create(out).map_err(io_err)?);
    let [x0, y0, x1, y1] = args.bbox[..] else {
        unreachable!("checked by grid_of")
    };
    writeln!(file, "# bbox {x0} {y0} {x1} {y1}").map_err(io_err)?;
    writeln!(file, "# res {}", args.res).map_err(io_err)?;
    let mut w = csv::Writer::from_writer(file);
    let csv_err = |e: csv::Error| CliError::Io(out.to_path_buf(), e.into());
    w.write_record(["row", "col", "x", "y", "depth"]).map_err(csv_err)?;
    for row in 0..g.ny {
        for col in 0..g.nx {
            let p = g.node(row, col);
            w.write_record([
                row.to_string(),
                col.to_string(),
                p.x.to_string(),
                p.y.to_string(),
                values[row * g.nx + col].to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush().map_err(io_err)
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_VAR} must be a non-negative integer, got {v:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(CliError::Usage("x".into()).code(), 2);
        assert_eq!(CliError::Depth(DepthError::Domain("x".into())).code(), 2);
        assert_eq!(CliError::Io("f".into(), io::Error::other("x")).code(), 3);
        let parse = DepthError::Parse {
            path: "$".into(),
            message: "x".into(),
        };
        assert_eq!(CliError::Depth(parse).code(), 3);
        let degenerate = DepthError::Degeneracy {
            segment_index: 1,
            t_lo: 0.25,
            t_hi: 0.5,
        };
        let e = CliError::Depth(degenerate);
        assert_eq!(e.code(), 4);
        assert!(e.message().contains("segment 1"), "{}", e.message());
        assert_eq!(CliError::Depth(DepthError::Consistency("x".into())).code(), 4);
        let quad = DepthError::Quadrature {
            a: 0.0,
            b: 1.0,
            error: 1.0,
        };
        assert_eq!(CliError::Depth(quad).code(), 4);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
