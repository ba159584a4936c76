//! Command-line front end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steinitz::experiment::{csv_string, run_experiment, svg_plot, ExperimentConfig};
use steinitz::generate::{default_facets, generate, InstanceStyle};
use steinitz::io::{oracle_json, parse_polytope, parse_unit_vectors, selection_json, witness_json, write_polytope_v};
use steinitz::oracle::best_subset_radius;
use steinitz::polytope::VPolytope;
use steinitz::scalar::set_tolerance;
use steinitz::steinitz::{certify, finite_subset_cover, radius_bound, select_vertices};
use steinitz::upperbound::{no_ball_certificate, witness};
use steinitz::GeometryError;

const AFTER_HELP: &str = "\
Exit codes: 0 success, 1 input error, 2 certificate violation.

Experiment CSV columns: seed, d, vertex_count, selection_size,
certified_radius, oracle_radius (empty unless --oracle), bound = 1/(5d^2),
runtime_ms (empty unless --timing).

Instances are seeded with SplitMix64 (increment 0x9E3779B97F4A7C15,
multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB, shifts 30/27/31).";

#[derive(Parser)]
#[command(name = "steinitz", version, about = "Few vertices, certified inscribed balls", after_help = AFTER_HELP)]
struct Cli {
    /// Numerical tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = steinitz::scalar::DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Tangent,
    SpherePoints,
}

impl From<Style> for InstanceStyle {
    fn from(s: Style) -> Self {
        match s {
            Style::Tangent => InstanceStyle::Tangent,
            Style::SpherePoints => InstanceStyle::SpherePoints,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Random polytope containing the unit ball, as polytope JSON.
    Gen {
        #[arg(long)]
        dim: usize,
        /// Facets (tangent) or points (sphere-points); default min(4d, 20).
        #[arg(long)]
        facets: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "tangent")]
        style: Style,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pick at most 2d vertices and certify their inscribed radius.
    Select {
        input: PathBuf,
        /// Rational arithmetic throughout.
        #[arg(long)]
        exact: bool,
        /// Treat the input as a point set: first reduce it to a finite subset
        /// whose hull contains (1-eps) times the unit ball.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inscribed radius of the hull of the given input indices.
    Certify {
        input: PathBuf,
        /// Comma-separated input indices.
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        #[arg(long)]
        exact: bool,
        /// Exit with code 2 when the radius is below 1/(5d^2).
        #[arg(long)]
        require_bound: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best inscribed radius over all subsets of at most k vertices.
    Oracle {
        input: PathBuf,
        /// Subset size limit; default 2d.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Obstruction point q for the absolute hull of unit vectors.
    Witness {
        input: PathBuf,
        /// Also report whether the ball of this radius is excluded.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch run; CSV (or JSON) records plus an optional SVG plot.
    Experiment {
        /// Dimensions as "2,3,4" or "2..5" (inclusive); empty for none.
        #[arg(long, default_value = "2,3")]
        dims: String,
        #[arg(long, default_value_t = 10)]
        instances: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        facets: Option<usize>,
        #[arg(long, value_enum, default_value = "tangent")]
        style: Style,
        /// Also compute the oracle radius with k = 2d.
        #[arg(long)]
        oracle: bool,
        /// Record wall times (rows are then not reproducible).
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::CertificateViolated(_)
            | GeometryError::PropositionViolated { .. }
            | GeometryError::CenterVerificationFailed { .. } => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> CmdResult {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    emit(out, &s)
}

fn load_vertices(path: &Path) -> Result<VPolytope<f64>, Failure> {
    Ok(parse_polytope(&read(path)?)?.into_vertices()?)
}

fn parse_dims(s: &str) -> Result<Vec<usize>, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = || Failure::Input(format!("--dims: cannot parse {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn cmd_select(input: &Path, exact: bool, eps: Option<f64>, out: Option<&Path>) -> CmdResult {
    let q = load_vertices(input)?;
    let Some(eps) = eps else {
        let v = if exact {
            selection_json(&select_vertices(&q.to_rational())?)
        } else {
            selection_json(&select_vertices(&q)?)
        };
        return emit_json(out, &v);
    };
    // cover ⊇ (1-ε)B; scale it up to contain B, select, then certify on the input
    let cover = finite_subset_cover(q.points(), eps)?;
    let scaled: Vec<Vec<f64>> = cover
        .points()
        .iter()
        .map(|p| p.iter().map(|x| x / (1.0 - eps)).collect())
        .collect();
    let scaled = VPolytope::new(q.dim(), scaled)?;
    let sel = select_vertices(&scaled)?;
    let mut indices: Vec<usize> = sel
        .indices
        .iter()
        .map(|&i| q.sources()[cover.sources()[i]])
        .collect();
    indices.sort_unstable();
    let cert = certify(&q, &indices, exact)?;
    let bound = (1.0 - eps) * radius_bound(q.dim());
    if cert.radius < bound - 1e3 * steinitz::scalar::tolerance() {
        return Err(Failure::Violation(format!(
            "selected hull has inradius {} below (1-eps)/(5d^2) = {bound}",
            cert.radius
        )));
    }
    emit_json(
        out,
        &json!({
            "indices": indices,
            "certified_radius": cert.radius,
            "bound": bound,
            "cover_size": cover.len(),
        }),
    )
}

fn cmd_certify(input: &Path, indices: &[usize], exact: bool, require: bool, out: Option<&Path>) -> CmdResult {
    let q = load_vertices(input)?;
    let cert = certify(&q, indices, exact)?;
    let bound = radius_bound(q.dim());
    let mut v = json!({
        "indices": indices,
        "radius": cert.radius,
        "bound": bound,
    });
    if let Some(r2) = &cert.radius_sq_exact {
        v["radius_sq_exact"] = Value::from(r2.to_string());
    }
    emit_json(out, &v)?;
    if require {
        let below = match &cert.radius_sq_exact {
            Some(r2) => *r2 < steinitz::steinitz::radius_bound_sq(q.dim()),
            None => cert.radius < bound - steinitz::scalar::tolerance(),
        };
        if below {
            return Err(Failure::Violation(format!("radius {} below 1/(5d^2) = {bound}", cert.radius)));
        }
    }
    Ok(())
}

fn cmd_oracle(input: &Path, k: Option<usize>, exact: bool, out: Option<&Path>) -> CmdResult {
    let q = load_vertices(input)?;
    let k = k.unwrap_or(2 * q.dim());
    let mut v = if exact {
        let r = best_subset_radius(&q.to_rational(), k)?;
        let mut v = oracle_json(&r);
        v["best_radius_sq_exact"] = Value::from(r.best_radius_sq.to_string());
        v
    } else {
        oracle_json(&best_subset_radius(&q, k)?)
    };
    v["k"] = Value::from(k);
    emit_json(out, &v)
}

fn cmd_witness(input: &Path, rho: Option<f64>, out: Option<&Path>) -> CmdResult {
    let u = parse_unit_vectors(&read(input)?)?;
    let mut v = match witness(&u) {
        Ok(w) => witness_json(&w),
        Err(GeometryError::SpanFailure) if rho.is_some() => json!({ "spans": false }),
        Err(e) => return Err(e.into()),
    };
    if let Some(rho) = rho {
        let c = no_ball_certificate(&u, rho)?;
        v["rho"] = Value::from(rho);
        v["excluded"] = Value::from(c.excluded);
        v["direction"] = Value::from(c.direction);
    }
    emit_json(out, &v)
}

fn run(cli: Cli) -> CmdResult {
    if !(cli.tolerance > 0.0 && cli.tolerance < 1e-2) {
        return Err(Failure::Input(format!("--tolerance must lie in (0, 0.01), got {}", cli.tolerance)));
    }
    set_tolerance(cli.tolerance);
    match cli.command {
        Command::Gen {
            dim,
            facets,
            seed,
            style,
            out,
        } => {
            let m = facets.unwrap_or_else(|| default_facets(dim));
            let q = generate(dim, m, style.into(), seed)?;
            emit(out.as_deref(), &write_polytope_v(&q))
        }
        Command::Select { input, exact, eps, out } => cmd_select(&input, exact, eps, out.as_deref()),
        Command::Certify {
            input,
            indices,
            exact,
            require_bound,
            out,
        } => cmd_certify(&input, &indices, exact, require_bound, out.as_deref()),
        Command::Oracle { input, k, exact, out } => cmd_oracle(&input, k, exact, out.as_deref()),
        Command::Witness { input, rho, out } => cmd_witness(&input, rho, out.as_deref()),
        Command::Experiment {
            dims,
            instances,
            seed,
            facets,
            style,
            oracle,
            timing,
            format,
            out,
            svg,
        } => {
            let cfg = ExperimentConfig {
                dims: parse_dims(&dims)?,
                instances,
                seed,
                facets,
                style: style.into(),
                oracle,
                timing,
            };
            let records = run_experiment(&cfg)?;
            if let Some(violating) = records.iter().find(|r| r.certified_radius < r.bound - 1e-9) {
                return Err(Failure::Violation(format!(
                    "seed {} (d = {}): certified radius {} below {}",
                    violating.seed, violating.d, violating.certified_radius, violating.bound
                )));
            }
            if let Some(path) = svg {
                fs::write(&path, svg_plot(&records))
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            match format {
                Format::Csv => emit(out.as_deref(), &csv_string(&records)?),
                Format::Json => {
                    let rows: Vec<Value> = records
                        .iter()
                        .map(|r| {
                            json!({
                                "seed": r.seed,
                                "d": r.d,
                                "vertex_count": r.vertex_count,
                                "selection_size": r.selection_size,
                                "certified_radius": r.certified_radius,
                                "oracle_radius": r.oracle_radius,
                                "bound": r.bound,
                                "runtime_ms": r.runtime_ms,
                            })
                        })
                        .collect();
                    emit_json(out.as_deref(), &Value::from(rows))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("certificate violation: {msg}");
            ExitCode::from(2)
        }
    }
}
