//! V- and H-representations, polar duality, membership, and the
//! origin-centered inscribed radius.
//!
//! H-polytopes are always in the normalized form `{x : ⟨x, v⟩ ≤ 1}`, so the
//! origin is interior by construction and polarity is a representation swap:
//! the polar of `conv(points)` has one halfspace per point, and vice versa.

mod enumerate;

pub use enumerate::{vertex_enum, vertex_enum_with, VertexEnumMethod, ENUMERATION_CAP};

use crate::error::{GeometryError, Result};
use crate::linalg::Matrix;
use crate::lp::{self, LpOutcome};
use crate::scalar::{dist_inf, dot, norm_sq, Point, Rational, Scalar};

/// Polytope given as the convex hull of a finite point list.
///
/// `sources[i]` is the position of `points[i]` in the list the polytope was
/// originally built from; it survives duplicate merging, subsetting, and
/// extreme-point filtering so selections can be reported in input indices.
#[derive(Debug, Clone, PartialEq)]
pub struct VPolytope<S> {
    dim: usize,
    points: Vec<Point<S>>,
    sources: Vec<usize>,
}

impl<S: Scalar> VPolytope<S> {
    /// Builds a V-polytope, merging points that agree within 10·τ.
    pub fn new(dim: usize, points: Vec<Point<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(GeometryError::InvalidInput("dimension must be positive".into()));
        }
        let merge_tol = 10.0 * S::eps().to_f64();
        let mut kept: Vec<Point<S>> = Vec::with_capacity(points.len());
        let mut sources = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            let dup = kept.iter().any(|q| {
                if S::EXACT {
                    *q == p
                } else {
                    dist_inf(q, &p) <= merge_tol
                }
            });
            if !dup {
                kept.push(p);
                sources.push(i);
            }
        }
        Ok(VPolytope {
            dim,
            points: kept,
            sources,
        })
    }

    /// Like [`VPolytope::new`], but rejects inputs without d+1 affinely
    /// independent points.
    pub fn new_full_dim(dim: usize, points: Vec<Point<S>>) -> Result<Self> {
        let p = Self::new(dim, points)?;
        if !p.is_full_dim() {
            return Err(GeometryError::DegenerateBody { volume: 0.0 });
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Affine hull is all of ℝ^d.
    pub fn is_full_dim(&self) -> bool {
        let Some(base) = self.points.first() else {
            return false;
        };
        let diffs: Vec<Point<S>> = self.points[1..]
            .iter()
            .map(|p| crate::scalar::sub(p, base))
            .collect();
        diffs.len() >= self.dim && Matrix::from_rows(&diffs).rank() == self.dim
    }

    /// Sub-polytope on the given positions; sources are carried over.
    pub fn subset(&self, positions: &[usize]) -> Self {
        VPolytope {
            dim: self.dim,
            points: positions.iter().map(|&i| self.points[i].clone()).collect(),
            sources: positions.iter().map(|&i| self.sources[i]).collect(),
        }
    }

    /// Replace the provenance with `0..len`.
    pub fn reindexed(mut self) -> Self {
        self.sources = (0..self.points.len()).collect();
        self
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> VPolytope<T> {
        VPolytope {
            dim: self.dim,
            points: self.points.iter().map(|p| p.iter().map(&f).collect()).collect(),
            sources: self.sources.clone(),
        }
    }

    pub fn to_f64(&self) -> VPolytope<f64> {
        self.map_scalar(Scalar::to_f64)
    }

    pub fn to_rational(&self) -> VPolytope<Rational> {
        self.map_scalar(|x| Rational::from_f64(x.to_f64()))
    }
}

/// Polytope `{x : ⟨x, v⟩ ≤ 1 for every normal v}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope<S> {
    dim: usize,
    normals: Vec<Point<S>>,
}

impl<S: Scalar> HPolytope<S> {
    pub fn new(dim: usize, normals: Vec<Point<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(GeometryError::InvalidInput("dimension must be positive".into()));
        }
        for v in &normals {
            if v.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().all(|x| *x == S::zero()) {
                return Err(GeometryError::InvalidInput("zero halfspace normal".into()));
            }
        }
        Ok(HPolytope { dim, normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Point<S>] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// Membership with slack τ on every constraint.
    pub fn contains(&self, x: &[S]) -> bool {
        let bound = S::one() + S::eps();
        self.normals.iter().all(|v| dot(v, x) <= bound)
    }

    /// Bounded iff the normals positively span ℝ^d.
    pub fn is_bounded(&self) -> bool {
        origin_in_interior(self.dim, &self.normals)
    }
}

/// True iff the origin is an interior point of `conv(points)`.
///
/// Solved as `max t` over convex weights `α ≥ t` with `Σ αᵢ pᵢ = 0`; the
/// origin is interior iff the optimum is positive and the points span ℝ^d.
pub fn origin_in_interior<S: Scalar>(dim: usize, points: &[Point<S>]) -> bool {
    interior_depth(dim, points).is_some_and(|t| t.is_pos())
}

/// Largest uniform weight `t` such that the origin is a convex combination
/// with every weight ≥ t; `None` when the origin is outside the hull or the
/// points do not span.
pub fn interior_depth<S: Scalar>(dim: usize, points: &[Point<S>]) -> Option<S> {
    let n = points.len();
    if n <= dim || Matrix::from_rows(points).rank() < dim {
        return None;
    }
    // variables: β₀..β_{n-1}, t ; αᵢ = t + βᵢ
    let mut a = Matrix::zeros(dim + 1, n + 1);
    for (j, p) in points.iter().enumerate() {
        for i in 0..dim {
            a[(i, j)] = p[i].clone();
            let acc = a[(i, n)].clone() + p[i].clone();
            a[(i, n)] = acc;
        }
        a[(dim, j)] = S::one();
    }
    a[(dim, n)] = S::from_i64(n as i64);
    let mut b = vec![S::zero(); dim + 1];
    b[dim] = S::one();
    let mut c = vec![S::zero(); n + 1];
    c[n] = S::one();
    match lp::maximize(&a, &b, &c) {
        LpOutcome::Optimal(sol) => Some(sol.objective),
        _ => None,
    }
}

/// `(conv P)°` as an H-polytope: one halfspace per point.
pub fn polar_v_to_h<S: Scalar>(p: &VPolytope<S>) -> Result<HPolytope<S>> {
    if !origin_in_interior(p.dim, &p.points) {
        return Err(GeometryError::OriginNotInterior);
    }
    HPolytope::new(p.dim, p.points.clone())
}

/// `P°` as a V-polytope on the halfspace normals.
pub fn polar_h_to_v<S: Scalar>(p: &HPolytope<S>) -> Result<VPolytope<S>> {
    if !p.is_bounded() {
        return Err(GeometryError::Unbounded);
    }
    VPolytope::new(p.dim, p.normals.clone())
}

/// `P − c` in normalized form: each normal `v` becomes `v / (1 − ⟨c, v⟩)`.
/// Positions are preserved.
pub fn translate_h<S: Scalar>(p: &HPolytope<S>, c: &[S]) -> Result<HPolytope<S>> {
    if c.len() != p.dim {
        return Err(GeometryError::DimensionMismatch {
            expected: p.dim,
            found: c.len(),
        });
    }
    let mut normals = Vec::with_capacity(p.normals.len());
    for (index, v) in p.normals.iter().enumerate() {
        let slack = S::one() - dot(c, v);
        if !slack.is_pos() {
            return Err(GeometryError::CenterNotInterior {
                index,
                slack: slack.to_f64(),
            });
        }
        normals.push(v.iter().map(|x| x.clone() / slack.clone()).collect());
    }
    Ok(HPolytope {
        dim: p.dim,
        normals,
    })
}

/// Convex weights expressing `x` over `points`, from a basic solution of the
/// membership LP (at most d+1 nonzero weights). `None` if `x ∉ conv(points)`.
pub fn convex_weights<S: Scalar>(points: &[Point<S>], x: &[S]) -> Option<Vec<S>> {
    let dim = x.len();
    let n = points.len();
    if n == 0 {
        return None;
    }
    let mut a = Matrix::zeros(dim + 1, n);
    for (j, p) in points.iter().enumerate() {
        for i in 0..dim {
            a[(i, j)] = p[i].clone();
        }
        a[(dim, j)] = S::one();
    }
    let mut b: Vec<S> = x.to_vec();
    b.push(S::one());
    lp::minimize(&a, &b, &vec![S::zero(); n]).optimal().map(|s| s.x)
}

/// `x ∈ conv(P)`, decided by LP feasibility.
pub fn is_member_v<S: Scalar>(p: &VPolytope<S>, x: &[S]) -> bool {
    convex_weights(&p.points, x).is_some()
}

/// Smallest `s ≥ 0` with `x ∈ s · conv(points)`, assuming the origin lies in
/// `conv(points)`. `None` if `x` is outside the cone over the points.
pub fn gauge<S: Scalar>(points: &[Point<S>], x: &[S]) -> Option<S> {
    let dim = x.len();
    let n = points.len();
    // variables α (n), s ; Σ αᵢ pᵢ = x, Σ αᵢ − s = 0
    let mut a = Matrix::zeros(dim + 1, n + 1);
    for (j, p) in points.iter().enumerate() {
        for i in 0..dim {
            a[(i, j)] = p[i].clone();
        }
        a[(dim, j)] = S::one();
    }
    a[(dim, n)] = -S::one();
    let mut b: Vec<S> = x.to_vec();
    b.push(S::zero());
    let mut c = vec![S::zero(); n + 1];
    c[n] = S::one();
    lp::minimize(&a, &b, &c).optimal().map(|s| s.objective)
}

/// Minimal subset with the same hull: a point is kept iff it lies outside
/// the hull of the remaining points.
pub fn extreme_points<S: Scalar>(p: &VPolytope<S>) -> VPolytope<S> {
    let keep: Vec<usize> = (0..p.points.len())
        .filter(|&i| {
            let others: Vec<Point<S>> = p
                .points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            convex_weights(&others, &p.points[i]).is_none()
        })
        .collect();
    p.subset(&keep)
}

/// `max ⟨p, dir⟩` over the points.
pub fn support<S: Scalar>(p: &VPolytope<S>, dir: &[S]) -> S {
    let mut best: Option<S> = None;
    for q in &p.points {
        let v = dot(q, dir);
        best = match best {
            Some(b) if b >= v => Some(b),
            _ => Some(v),
        };
    }
    best.unwrap_or_else(S::zero)
}

/// Origin-centered inscribed radius of a hull.
#[derive(Debug, Clone, PartialEq)]
pub struct Inradius<S> {
    /// `r²`; zero when the origin is not interior.
    pub radius_sq: S,
    pub origin_interior: bool,
    /// Largest squared norm among the polar vertices (`1 / r²`).
    pub max_polar_norm_sq: Option<S>,
}

impl<S: Scalar> Inradius<S> {
    pub fn radius(&self) -> f64 {
        self.radius_sq.to_f64().max(0.0).sqrt()
    }
}

/// Largest `r` with `r·Bᵈ ⊂ conv(P)`: `1 / max ‖w‖` over the vertices `w`
/// of the polar. Radius 0 (flagged) when the origin is not interior.
pub fn inscribed_radius_origin<S: Scalar>(p: &VPolytope<S>) -> Result<Inradius<S>> {
    let Ok(polar) = polar_v_to_h(p) else {
        return Ok(Inradius {
            radius_sq: S::zero(),
            origin_interior: false,
            max_polar_norm_sq: None,
        });
    };
    let vertices = vertex_enum(&polar)?;
    let max = max_norm_sq(vertices.points());
    Ok(Inradius {
        radius_sq: S::one() / max.clone(),
        origin_interior: true,
        max_polar_norm_sq: Some(max),
    })
}

pub(crate) fn max_norm_sq<S: Scalar>(points: &[Point<S>]) -> S {
    points.iter().map(|w| norm_sq(w)).fold(S::zero(), |acc, v| if v > acc { v } else { acc })
}
