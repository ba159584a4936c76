//! Batch runs over seeded instances, with CSV and SVG output.
//!
//! CSV columns, in order:
//!
//! | column | meaning |
//! |---|---|
//! | `seed` | instance seed (see [`crate::rng::instance_seed`]) |
//! | `d` | dimension |
//! | `vertex_count` | vertices of the instance |
//! | `selection_size` | vertices picked by the pipeline |
//! | `certified_radius` | inscribed radius of the picked hull |
//! | `oracle_radius` | best radius over `≤ 2d`-subsets, empty when skipped |
//! | `bound` | `1/(5d²)` |
//! | `runtime_ms` | pipeline wall time, empty unless timing is enabled |

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::generate::{default_facets, generate, InstanceStyle};
use crate::oracle::{best_subset_radius, ORACLE_CAP};
use crate::polytope::VPolytope;
use crate::rng::instance_seed;
use crate::scalar::binomial;
use crate::steinitz::{radius_bound, select_vertices};

pub const CSV_HEADER: [&str; 8] = [
    "seed",
    "d",
    "vertex_count",
    "selection_size",
    "certified_radius",
    "oracle_radius",
    "bound",
    "runtime_ms",
];

/// Largest vertex count for which the oracle runs in exact arithmetic.
pub const EXACT_ORACLE_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dims: Vec<usize>,
    pub instances: usize,
    pub seed: u64,
    /// Facets (tangent) or points (sphere-points); `None` uses `min(4d, 20)`.
    pub facets: Option<usize>,
    pub style: InstanceStyle,
    pub oracle: bool,
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dims: vec![2, 3],
            instances: 10,
            seed: 42,
            facets: None,
            style: InstanceStyle::Tangent,
            oracle: false,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub seed: u64,
    pub d: usize,
    pub vertex_count: usize,
    pub selection_size: usize,
    pub certified_radius: f64,
    pub oracle_radius: Option<f64>,
    pub bound: f64,
    pub runtime_ms: Option<f64>,
}

/// Oracle radius for `≤ 2d`-subsets: exact for `d ≤ 3` with at most
/// [`EXACT_ORACLE_MAX_VERTICES`] vertices, floating point otherwise, skipped
/// when the subset count exceeds the cap.
pub fn oracle_radius(q: &VPolytope<f64>) -> Result<Option<f64>> {
    let d = q.dim();
    let n = q.len();
    let k = (2 * d).min(n);
    let count: u128 = (1..=k).map(|s| binomial(n, s)).sum();
    if count > ORACLE_CAP {
        return Ok(None);
    }
    let r = if d <= 3 && n <= EXACT_ORACLE_MAX_VERTICES {
        best_subset_radius(&q.to_rational(), k)?.best_radius
    } else {
        best_subset_radius(q, k)?.best_radius
    };
    Ok(Some(r))
}

fn run_one(cfg: &ExperimentConfig, d: usize, index: usize) -> Result<ExperimentRecord> {
    let seed = instance_seed(cfg.seed, d, index);
    let m = cfg.facets.unwrap_or_else(|| default_facets(d));
    let q = generate(d, m, cfg.style, seed)?;
    let start = Instant::now();
    let sel = select_vertices(&q)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let oracle = if cfg.oracle { oracle_radius(&q)? } else { None };
    Ok(ExperimentRecord {
        seed,
        d,
        vertex_count: q.len(),
        selection_size: sel.indices.len(),
        certified_radius: sel.certified_radius,
        oracle_radius: oracle,
        bound: radius_bound(d),
        runtime_ms: cfg.timing.then_some(elapsed),
    })
}

/// One record per instance, ordered by `(d, index)`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    if let Some(&d) = cfg.dims.iter().find(|&&d| d == 0) {
        return Err(GeometryError::InvalidInput(format!("invalid dimension {d}")));
    }
    let jobs: Vec<(usize, usize)> = cfg
        .dims
        .iter()
        .flat_map(|&d| (0..cfg.instances).map(move |i| (d, i)))
        .collect();
    jobs.par_iter().map(|&(d, i)| run_one(cfg, d, i)).collect()
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let io_err = |e: csv::Error| GeometryError::InvalidInput(format!("csv: {e}"));
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER).map_err(io_err)?;
    for r in records {
        w.serialize(r).map_err(io_err)?;
    }
    w.flush()
        .map_err(|e| GeometryError::InvalidInput(format!("csv: {e}")))
}

pub fn csv_string(records: &[ExperimentRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub const SVG_WIDTH: f64 = 1000.0;
pub const SVG_HEIGHT: f64 = 700.0;

/// Scatter of `ρ·d²` and `ρ·√d` against `d`, with the `1/5` line for `ρ·d²`.
pub fn svg_plot(records: &[ExperimentRecord]) -> String {
    let (left, right, top, bottom) = (90.0, 40.0, 60.0, 80.0);
    let pw = SVG_WIDTH - left - right;
    let ph = SVG_HEIGHT - top - bottom;

    let d_min = records.iter().map(|r| r.d).min().unwrap_or(1) as f64;
    let d_max = records.iter().map(|r| r.d).max().unwrap_or(1) as f64;
    let (x_lo, x_hi) = (d_min - 0.5, d_max + 0.5);
    let y_max = records
        .iter()
        .flat_map(|r| {
            let d = r.d as f64;
            [r.certified_radius * d * d, r.certified_radius * d.sqrt()]
        })
        .fold(0.25f64, f64::max);
    let y_hi = (y_max * 1.1 * 10.0).ceil() / 10.0;

    let sx = |x: f64| left + (x - x_lo) / (x_hi - x_lo) * pw;
    let sy = |y: f64| top + ph - y / y_hi * ph;

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = SVG_WIDTH,
        h = SVG_HEIGHT
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str(&format!(
        "<text x=\"{}\" y=\"30\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\">certified radius, scaled</text>\n",
        SVG_WIDTH / 2.0
    ));
    // axes
    s.push_str(&format!(
        "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n<line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"black\"/>\n",
        l = left,
        r = left + pw,
        t = top,
        b = top + ph
    ));
    let mut d = d_min as usize;
    while d as f64 <= d_max {
        let x = sx(d as f64);
        s.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{b}\" x2=\"{x:.1}\" y2=\"{b2}\" stroke=\"black\"/>\n<text x=\"{x:.1}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{d}</text>\n",
            b = top + ph,
            b2 = top + ph + 6.0,
            ty = top + ph + 22.0
        ));
        d += 1;
    }
    for i in 0..=5 {
        let y = y_hi * i as f64 / 5.0;
        let py = sy(y);
        s.push_str(&format!(
            "<line x1=\"{l}\" y1=\"{py:.1}\" x2=\"{l2}\" y2=\"{py:.1}\" stroke=\"black\"/>\n<text x=\"{tx}\" y=\"{ty:.1}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">{y:.2}</text>\n",
            l = left - 6.0,
            l2 = left,
            tx = left - 10.0,
            ty = py + 4.0
        ));
    }
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">dimension d</text>\n",
        left + pw / 2.0,
        SVG_HEIGHT - 25.0
    ));
    s.push_str(&format!(
        "<text x=\"25\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\" transform=\"rotate(-90 25 {y})\">scaled radius</text>\n",
        y = top + ph / 2.0
    ));
    // reference line ρ·d² = 1/5
    let ry = sy(0.2);
    s.push_str(&format!(
        "<line x1=\"{l}\" y1=\"{ry:.1}\" x2=\"{r}\" y2=\"{ry:.1}\" stroke=\"#d62728\" stroke-dasharray=\"6,4\"/>\n<text x=\"{tx}\" y=\"{ty:.1}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\" text-anchor=\"end\">1/5</text>\n",
        l = left,
        r = left + pw,
        tx = left + pw - 4.0,
        ty = ry - 5.0
    ));
    for r in records {
        let d = r.d as f64;
        let jitter = 0.08;
        s.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3.5\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n",
            sx(d - jitter),
            sy(r.certified_radius * d * d)
        ));
        s.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"6\" height=\"6\" fill=\"#2ca02c\" fill-opacity=\"0.6\"/>\n",
            sx(d + jitter) - 3.0,
            sy(r.certified_radius * d.sqrt()) - 3.0
        ));
    }
    // legend
    let lx = left + pw - 200.0;
    s.push_str(&format!(
        "<circle cx=\"{lx}\" cy=\"{y1}\" r=\"4\" fill=\"#1f77b4\"/><text x=\"{tx}\" y=\"{t1}\" font-family=\"sans-serif\" font-size=\"13\">ρ·d²</text>\n<rect x=\"{rx}\" y=\"{y2r}\" width=\"8\" height=\"8\" fill=\"#2ca02c\"/><text x=\"{tx}\" y=\"{t2}\" font-family=\"sans-serif\" font-size=\"13\">ρ·√d</text>\n",
        y1 = top + 15.0,
        t1 = top + 20.0,
        tx = lx + 12.0,
        rx = lx - 4.0,
        y2r = top + 31.0,
        t2 = top + 40.0
    ));
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range_gives_header_only() {
        let cfg = ExperimentConfig {
            dims: vec![],
            ..Default::default()
        };
        let recs = run_experiment(&cfg).unwrap();
        assert!(recs.is_empty());
        assert_eq!(
            csv_string(&recs).unwrap(),
            "seed,d,vertex_count,selection_size,certified_radius,oracle_radius,bound,runtime_ms\n"
        );
    }

    #[test]
    fn small_run_meets_bound_and_is_deterministic() {
        let cfg = ExperimentConfig {
            dims: vec![2, 3],
            instances: 10,
            seed: 42,
            ..Default::default()
        };
        let a = run_experiment(&cfg).unwrap();
        assert_eq!(a.len(), 20);
        for r in &a {
            assert!(r.certified_radius >= r.bound - 1e-9);
            assert!(r.selection_size <= 2 * r.d);
        }
        assert!(a[..10].iter().all(|r| r.d == 2));
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(csv_string(&a).unwrap(), csv_string(&b).unwrap());
        let svg = svg_plot(&a);
        assert!(svg.starts_with("<svg") && svg.contains("width=\"1000\"") && svg.contains("height=\"700\""));
        assert_eq!(svg, svg_plot(&b));
    }
}
