//! H→V conversion for bounded normalized H-polytopes.
//!
//! Two independent routes: brute-force enumeration of d-subsets of tight
//! constraints, and the double description method on the homogenized cone
//! `{(x, t) : t ≥ 0, ⟨vᵢ, x⟩ ≤ t}`.

use crate::error::{GeometryError, Result};
use crate::linalg::Matrix;
use crate::scalar::{binomial, dist_inf, dot, Combinations, Point, Scalar};

use super::{HPolytope, VPolytope};

/// Default cap on the number of d-subsets visited by subset enumeration.
pub const ENUMERATION_CAP: u128 = 10_000_000;

/// Above this many d-subsets, [`VertexEnumMethod::Auto`] switches to double
/// description.
const AUTO_SUBSET_LIMIT: u128 = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexEnumMethod {
    /// Solve every d-subset of tight constraints; output in lexicographic
    /// subset order.
    Subsets,
    /// Incremental double description; output sorted lexicographically by
    /// coordinates.
    DoubleDescription,
    #[default]
    Auto,
}

/// Vertex set of a bounded H-polytope.
pub fn vertex_enum<S: Scalar>(p: &HPolytope<S>) -> Result<VPolytope<S>> {
    vertex_enum_with(p, VertexEnumMethod::Auto)
}

pub fn vertex_enum_with<S: Scalar>(p: &HPolytope<S>, method: VertexEnumMethod) -> Result<VPolytope<S>> {
    if !p.is_bounded() {
        return Err(GeometryError::Unbounded);
    }
    let count = binomial(p.len(), p.dim());
    let method = match method {
        VertexEnumMethod::Auto if count <= AUTO_SUBSET_LIMIT => VertexEnumMethod::Subsets,
        VertexEnumMethod::Auto => VertexEnumMethod::DoubleDescription,
        m => m,
    };
    let points = match method {
        VertexEnumMethod::Subsets => {
            if count > ENUMERATION_CAP {
                return Err(GeometryError::EnumerationTooLarge {
                    count,
                    cap: ENUMERATION_CAP,
                });
            }
            by_subsets(p)
        }
        _ => by_double_description(p)?,
    };
    VPolytope::new(p.dim(), points)
}

fn feasibility_bound<S: Scalar>(x: &[S]) -> S {
    if S::EXACT {
        return S::one();
    }
    let scale = x.iter().map(|v| v.abs().to_f64()).fold(1.0, f64::max);
    S::one() + S::from_f64(S::eps().to_f64() * scale)
}

fn push_unique<S: Scalar>(found: &mut Vec<Point<S>>, x: Point<S>) {
    let tol = 10.0 * S::eps().to_f64();
    let dup = found.iter().any(|q| if S::EXACT { *q == x } else { dist_inf(q, &x) <= tol });
    if !dup {
        found.push(x);
    }
}

fn by_subsets<S: Scalar>(p: &HPolytope<S>) -> Vec<Point<S>> {
    let d = p.dim();
    let normals = p.normals();
    let ones = vec![S::one(); d];
    let mut found = Vec::new();
    for subset in Combinations::new(normals.len(), d) {
        let rows: Vec<Point<S>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let Ok(x) = Matrix::from_rows(&rows).solve(&ones) else {
            continue;
        };
        let bound = feasibility_bound(&x);
        if normals.iter().all(|v| dot(v, &x) <= bound) {
            push_unique(&mut found, x);
        }
    }
    found
}

#[derive(Clone)]
struct Ray<S> {
    coords: Vec<S>,
    zeros: BitSet,
}

#[derive(Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_superset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

fn normalize<S: Scalar>(v: &mut [S]) {
    let mut best = S::zero();
    for x in v.iter() {
        if x.abs() > best {
            best = x.abs();
        }
    }
    if best != S::zero() {
        for x in v.iter_mut() {
            *x = x.clone() / best.clone();
        }
    }
}

fn by_double_description<S: Scalar>(p: &HPolytope<S>) -> Result<Vec<Point<S>>> {
    let d = p.dim();
    let n = d + 1;
    // homogenized rows a·(x, t) ≥ 0; row 0 is t ≥ 0, row i+1 is t − ⟨vᵢ, x⟩ ≥ 0
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(p.len() + 1);
    let mut t_row = vec![S::zero(); n];
    t_row[d] = S::one();
    rows.push(t_row);
    for v in p.normals() {
        let mut r: Vec<S> = v.iter().map(|x| -x.clone()).collect();
        r.push(S::one());
        rows.push(r);
    }
    let row_tol: Vec<S> = rows
        .iter()
        .map(|r| {
            if S::EXACT {
                S::zero()
            } else {
                let scale = r.iter().map(|x| x.abs().to_f64()).fold(1.0, f64::max);
                S::from_f64(S::eps().to_f64() * scale)
            }
        })
        .collect();

    // initial basis: greedily pick n independent rows
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<S>> = basis.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if Matrix::from_rows(&trial).rank() == trial.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    if basis.len() < n {
        return Err(GeometryError::Unbounded);
    }
    let a0 = Matrix::from_rows(&basis.iter().map(|&j| rows[j].clone()).collect::<Vec<_>>());
    let mut rays: Vec<Ray<S>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![S::zero(); n];
        e[k] = S::one();
        let mut coords = a0.solve(&e)?;
        normalize(&mut coords);
        let mut zeros = BitSet::new(rows.len());
        for (pos, &row) in basis.iter().enumerate() {
            if pos != k {
                zeros.insert(row);
            }
        }
        rays.push(Ray { coords, zeros });
    }

    let processed: Vec<bool> = {
        let mut v = vec![false; rows.len()];
        for &b in &basis {
            v[b] = true;
        }
        v
    };
    for (i, row) in rows.iter().enumerate() {
        if processed[i] {
            continue;
        }
        let tol = &row_tol[i];
        let values: Vec<S> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for (k, s) in values.iter().enumerate() {
            if *s > *tol {
                pos.push(k);
            } else if *s < -tol.clone() {
                neg.push(k);
            } else {
                zero.push(k);
            }
        }
        if neg.is_empty() {
            for &k in &zero {
                rays[k].zeros.insert(i);
            }
            continue;
        }
        let mut next: Vec<Ray<S>> = Vec::with_capacity(pos.len() + zero.len());
        for &a in &pos {
            for &b in &neg {
                let common = rays[a].zeros.and(&rays[b].zeros);
                if common.count() + 2 < n {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == a || k == b || !r.zeros.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let sa = values[a].clone();
                let sb = values[b].clone();
                let mut coords: Vec<S> = rays[b]
                    .coords
                    .iter()
                    .zip(&rays[a].coords)
                    .map(|(qb, qa)| sa.clone() * qb.clone() - sb.clone() * qa.clone())
                    .collect();
                normalize(&mut coords);
                let mut zeros = common;
                zeros.insert(i);
                next.push(Ray { coords, zeros });
            }
        }
        for &k in &pos {
            next.push(rays[k].clone());
        }
        for &k in &zero {
            let mut r = rays[k].clone();
            r.zeros.insert(i);
            next.push(r);
        }
        rays = next;
    }

    let mut found: Vec<Point<S>> = Vec::with_capacity(rays.len());
    for r in rays {
        let t = r.coords[d].clone();
        if !t.is_pos() {
            return Err(GeometryError::Unbounded);
        }
        let x: Point<S> = r.coords[..d].iter().map(|c| c.clone() / t.clone()).collect();
        push_unique(&mut found, x);
    }
    found.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.to_f64().total_cmp(&y.to_f64()))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(found)
}
