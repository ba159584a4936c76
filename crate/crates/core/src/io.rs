//! JSON formats.
//!
//! Polytopes: `{"dim": d, "rep": "V" | "H", "data": [[...], ...]}`, one row
//! per point (V) or per normal `a` of a halfspace `⟨a, x⟩ ≤ 1` (H). Floats
//! are written with 17 significant digits.
//!
//! Unit-vector systems: `{"dim": d, "vectors": [[...], ...]}`.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{GeometryError, Result};
use crate::oracle::OracleResult;
use crate::polytope::{vertex_enum, HPolytope, VPolytope};
use crate::scalar::{to_f64_point, Point, Scalar};
use crate::sparse::SparseCertificate;
use crate::steinitz::Selection;
use crate::upperbound::{UnitVectorSystem, UpperBoundWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Rep {
    V,
    H,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    dim: usize,
    rep: Rep,
    data: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorsFile {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PolytopeInput {
    V(VPolytope<f64>),
    H(HPolytope<f64>),
}

impl PolytopeInput {
    /// Vertex form; H-input is converted by vertex enumeration.
    pub fn into_vertices(self) -> Result<VPolytope<f64>> {
        match self {
            PolytopeInput::V(p) => Ok(p),
            PolytopeInput::H(h) => {
                if !h.is_bounded() {
                    return Err(GeometryError::Unbounded);
                }
                vertex_enum(&h)
            }
        }
    }
}

/// Deserializes with the JSON path of the first error in the message.
fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            GeometryError::InvalidInput(format!("invalid JSON: {inner}"))
        } else {
            GeometryError::InvalidInput(format!("invalid JSON at `{path}`: {inner}"))
        }
    })
}

fn check_rows(dim: usize, rows: &[Vec<f64>], field: &str) -> Result<()> {
    if dim == 0 {
        return Err(GeometryError::InvalidInput("invalid JSON at `dim`: must be positive".into()));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != dim {
            return Err(GeometryError::InvalidInput(format!(
                "invalid JSON at `{field}[{i}]`: expected {dim} coordinates, found {}",
                r.len()
            )));
        }
        if let Some(j) = r.iter().position(|x| !x.is_finite()) {
            return Err(GeometryError::InvalidInput(format!(
                "invalid JSON at `{field}[{i}][{j}]`: not a finite number"
            )));
        }
    }
    Ok(())
}

pub fn parse_polytope(text: &str) -> Result<PolytopeInput> {
    let f: PolytopeFile = parse(text)?;
    check_rows(f.dim, &f.data, "data")?;
    if f.data.is_empty() {
        return Err(GeometryError::InvalidInput("invalid JSON at `data`: empty".into()));
    }
    match f.rep {
        Rep::V => Ok(PolytopeInput::V(VPolytope::new(f.dim, f.data)?)),
        Rep::H => Ok(PolytopeInput::H(HPolytope::new(f.dim, f.data)?)),
    }
}

pub fn parse_unit_vectors(text: &str) -> Result<UnitVectorSystem> {
    let f: VectorsFile = parse(text)?;
    check_rows(f.dim, &f.vectors, "vectors")?;
    UnitVectorSystem::new(f.dim, f.vectors)
}

fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // avoid "-0"
        "0.0000000000000000e0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn write_rows(dim: usize, rep: &str, rows: &[Point<f64>]) -> String {
    let mut s = format!("{{\n  \"dim\": {dim},\n  \"rep\": \"{rep}\",\n  \"data\": [");
    for (i, r) in rows.iter().enumerate() {
        s.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
        let cells: Vec<String> = r.iter().map(|&x| fmt_f64(x)).collect();
        s.push_str(&cells.join(", "));
        s.push(']');
    }
    if !rows.is_empty() {
        s.push_str("\n  ");
    }
    s.push_str("]\n}\n");
    s
}

pub fn write_polytope_v<S: Scalar>(p: &VPolytope<S>) -> String {
    let rows: Vec<Point<f64>> = p.points().iter().map(|x| to_f64_point(x)).collect();
    write_rows(p.dim(), "V", &rows)
}

pub fn write_polytope_h<S: Scalar>(p: &HPolytope<S>) -> String {
    let rows: Vec<Point<f64>> = p.normals().iter().map(|x| to_f64_point(x)).collect();
    write_rows(p.dim(), "H", &rows)
}

fn points_json<S: Scalar>(pts: &[Point<S>]) -> Value {
    Value::from(pts.iter().map(|p| to_f64_point(p)).collect::<Vec<_>>())
}

/// Selected positions, factor `μ`, and per-vertex margins.
pub fn certificate_json<S: Scalar>(c: &SparseCertificate<S>) -> Value {
    json!({
        "selected": c.selected,
        "simplex": c.simplex.indices,
        "lambda": c.lambda.to_f64(),
        "factor": c.factor.to_f64(),
        "margins": c.margins.iter().map(|m| m.to_f64()).collect::<Vec<_>>(),
        "min_margin": c.min_margin().to_f64(),
    })
}

pub fn selection_json<S: Scalar>(sel: &Selection<S>) -> Value {
    let t = &sel.trail;
    json!({
        "indices": sel.indices,
        "certified_radius": sel.certified_radius,
        "bound": sel.bound,
        "trail": {
            "extreme_indices": t.extreme_indices,
            "k_max_vertex_norm": t.k_max_vertex_norm_sq.to_f64().sqrt(),
            "center": to_f64_point(&t.center),
            "center_margin": t.center_margin.to_f64(),
            "l_vertices": points_json(&t.l_vertices),
            "l_inradius": t.l_inradius_sq.to_f64().max(0.0).sqrt(),
            "sparse": certificate_json(&t.sparse),
            "checks": {
                "l_in_parallelotope": t.sparse_checks.l_in_parallelotope,
                "parallelotope_in_s_prime": t.sparse_checks.parallelotope_in_s_prime,
                "origin_in_selection": t.sparse_checks.origin_in_selection,
                "simplex_mean_in_input": t.sparse_checks.simplex_mean_in_input,
            },
            "selection_polar_max_norm": t.selection_polar_max_norm_sq.to_f64().sqrt(),
        },
    })
}

pub fn witness_json(w: &UpperBoundWitness) -> Value {
    json!({
        "q": w.q,
        "norm_q": w.norm_q,
        "threshold": w.threshold(),
        "bound_d_over_sqrt_n": w.bound,
    })
}

pub fn oracle_json<S: Scalar>(r: &OracleResult<S>) -> Value {
    json!({
        "best_indices": r.best_indices,
        "best_radius": r.best_radius,
        "subsets_evaluated": r.subsets_evaluated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_round_trip() {
        let p = VPolytope::new(2, vec![vec![0.1, -1.0 / 3.0], vec![2.0, 0.0], vec![-1.0, 1.0]]).unwrap();
        let text = write_polytope_v(&p);
        assert!(text.contains("1.0000000000000001e-1"));
        match parse_polytope(&text).unwrap() {
            PolytopeInput::V(q) => assert_eq!(q, p),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn h_input_converts_to_vertices() {
        let text = r#"{"dim": 2, "rep": "H", "data": [[1,0],[-1,0],[0,1],[0,-1]]}"#;
        let v = parse_polytope(text).unwrap().into_vertices().unwrap();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn errors_name_the_field() {
        let e = parse_polytope(r#"{"dim": 2, "rep": "V", "data": [[1, "x"]]}"#).unwrap_err();
        assert!(e.to_string().contains("data[0][1]"), "{e}");
        let e = parse_polytope(r#"{"dim": 2, "rep": "W", "data": []}"#).unwrap_err();
        assert!(e.to_string().contains("rep"), "{e}");
        let e = parse_polytope(r#"{"dim": 3, "rep": "V", "data": [[1, 2]]}"#).unwrap_err();
        assert!(e.to_string().contains("data[0]"), "{e}");
        let e = parse_polytope(r#"{"rep": "V", "data": [[1, 2]]}"#).unwrap_err();
        assert!(e.to_string().contains("dim"), "{e}");
        let e = parse_unit_vectors(r#"{"dim": 2, "vectors": [[1, 0], [0, 2]]}"#).unwrap_err();
        assert!(e.to_string().contains("norm"), "{e}");
    }
}
