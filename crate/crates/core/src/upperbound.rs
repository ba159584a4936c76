//! Obstruction to large inscribed balls in absolute convex hulls.
//!
//! For unit vectors `u₁ … u_n` spanning ℝ^d, with `A = Σ uᵢuᵢᵀ`, a vertex `p`
//! of the strip polytope `⋂{x : |⟨x, A^{-1/2}uᵢ⟩| ≤ 1}` maximizing
//! `⟨p, A⁻¹p⟩` gives `q = A^{-1/2}p` with `|⟨q, uᵢ⟩| ≤ 1` for all `i` and
//! `‖q‖² ≥ tr A⁻¹ ≥ d²/n`. The halfspace `⟨q, ·⟩ ≤ 1` then contains the
//! absolute hull but cuts the ball of radius `1/‖q‖ ≤ √n/d`.

use crate::error::{GeometryError, Result};
use crate::linalg::{inv_sqrt_psd, inverse_pd, sym_eig, trace_inverse, Matrix, SymMatrix};
use crate::polytope::{inscribed_radius_origin, VPolytope};
use crate::scalar::{binomial, dot, norm, tolerance, Combinations, Point};

/// Cap on `C(n, d)·2ᵈ` for strip-vertex enumeration.
pub const STRIP_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitVectorSystem {
    dim: usize,
    vectors: Vec<Point<f64>>,
}

impl UnitVectorSystem {
    /// Checks that every vector has unit norm within τ.
    pub fn new(dim: usize, vectors: Vec<Point<f64>>) -> Result<Self> {
        if dim == 0 || vectors.is_empty() {
            return Err(GeometryError::InvalidInput("empty vector system".into()));
        }
        for (i, u) in vectors.iter().enumerate() {
            if u.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: u.len(),
                });
            }
            if (norm(u) - 1.0).abs() > tolerance() {
                return Err(GeometryError::InvalidInput(format!(
                    "vector {i} has norm {}, expected 1",
                    norm(u)
                )));
            }
        }
        Ok(UnitVectorSystem { dim, vectors })
    }

    /// Normalizes each vector first. Zero vectors are rejected.
    pub fn normalized(dim: usize, vectors: Vec<Point<f64>>) -> Result<Self> {
        let mut out = Vec::with_capacity(vectors.len());
        for u in vectors {
            let n = norm(&u);
            if n == 0.0 {
                return Err(GeometryError::InvalidInput("zero vector".into()));
            }
            out.push(u.into_iter().map(|x| x / n).collect());
        }
        Self::new(dim, out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Point<f64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The vectors span ℝ^d: the smallest eigenvalue of `A` exceeds τ.
    pub fn spans(&self) -> Result<bool> {
        let eig = sym_eig(&gram_operator(self))?;
        Ok(eig.values.last().copied().unwrap_or(0.0) > tolerance())
    }

    /// `conv{±u₁, …, ±u_n}`.
    pub fn absolute_hull(&self) -> Result<VPolytope<f64>> {
        let mut pts = Vec::with_capacity(2 * self.vectors.len());
        for u in &self.vectors {
            pts.push(u.clone());
            pts.push(u.iter().map(|x| -x).collect());
        }
        VPolytope::new(self.dim, pts)
    }
}

/// `A = Σ uᵢuᵢᵀ`.
pub fn gram_operator(u: &UnitVectorSystem) -> SymMatrix {
    let d = u.dim;
    let mut a = Matrix::zeros(d, d);
    for v in &u.vectors {
        for i in 0..d {
            for j in 0..d {
                a[(i, j)] += v[i] * v[j];
            }
        }
    }
    SymMatrix::new(a).expect("outer-product sums are symmetric")
}

/// Maximizer of `⟨x, Tx⟩` over the strip polytope `⋂{|⟨vᵢ, x⟩| ≤ 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StripMaximum {
    pub p: Point<f64>,
    pub value: f64,
    pub trace: f64,
    /// `Σ vᵢvᵢᵀ = I` within tolerance; only then is `value ≥ trace` guaranteed.
    pub tight_frame: bool,
}

fn is_identity(m: &SymMatrix, tol: f64) -> bool {
    (0..m.dim()).all(|i| (0..m.dim()).all(|j| (m[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs() <= tol))
}

/// Enumerates the vertices of the strip polytope (solutions of
/// `⟨vᵢ, x⟩ = ±1` on d-subsets, filtered for feasibility) and returns the one
/// maximizing the convex quadratic `⟨x, Tx⟩`; the first maximizer in
/// subset/sign order wins ties.
pub fn strip_vertex_maximize(v: &[Point<f64>], t: &SymMatrix) -> Result<StripMaximum> {
    let d = t.dim();
    let count = binomial(v.len(), d).saturating_mul(1u128 << d);
    if count > STRIP_ENUMERATION_CAP {
        return Err(GeometryError::EnumerationTooLarge {
            count,
            cap: STRIP_ENUMERATION_CAP,
        });
    }
    if v.len() < d || Matrix::from_rows(v).rank() < d {
        return Err(GeometryError::Unbounded);
    }
    let tau = tolerance();
    let mut best: Option<(Point<f64>, f64)> = None;
    for subset in Combinations::new(v.len(), d) {
        let rows: Vec<Point<f64>> = subset.iter().map(|&i| v[i].clone()).collect();
        let m = Matrix::from_rows(&rows);
        // columns of M⁻¹
        let mut inv_cols = Vec::with_capacity(d);
        let mut singular = false;
        for k in 0..d {
            let mut e = vec![0.0; d];
            e[k] = 1.0;
            match m.solve(&e) {
                Ok(c) => inv_cols.push(c),
                Err(_) => {
                    singular = true;
                    break;
                }
            }
        }
        if singular {
            continue;
        }
        for mask in 0..(1u64 << d) {
            let x: Point<f64> = (0..d)
                .map(|j| {
                    (0..d)
                        .map(|k| if mask >> k & 1 == 1 { -inv_cols[k][j] } else { inv_cols[k][j] })
                        .sum()
                })
                .collect();
            let scale = x.iter().fold(1.0f64, |a, b| a.max(b.abs()));
            if v.iter().any(|vi| dot(vi, &x).abs() > 1.0 + tau * scale) {
                continue;
            }
            let value = t.quad_form(&x);
            let better = match &best {
                None => true,
                Some((_, b)) => value > b + tau * b.abs().max(1.0),
            };
            if better {
                best = Some((x, value));
            }
        }
    }
    let (p, value) = best.ok_or(GeometryError::Unbounded)?;
    let trace = t.matrix().trace();
    let mut frame = Matrix::zeros(d, d);
    for vi in v {
        for i in 0..d {
            for j in 0..d {
                frame[(i, j)] += vi[i] * vi[j];
            }
        }
    }
    let tight_frame = is_identity(&SymMatrix::new(frame)?, 1e-8);
    if tight_frame && value < trace - tau * trace.abs().max(1.0) {
        return Err(GeometryError::PropositionViolated { value, trace });
    }
    Ok(StripMaximum {
        p,
        value,
        trace,
        tight_frame,
    })
}

/// Point `q` of the polar of the absolute hull with `‖q‖ ≥ d/√n`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBoundWitness {
    pub p: Point<f64>,
    pub q: Point<f64>,
    pub norm_q: f64,
    /// `d/√n`.
    pub bound: f64,
    /// `tr A⁻¹`.
    pub trace_inverse: f64,
    /// `max |⟨q, uᵢ⟩|`, at most 1.
    pub max_inner: f64,
}

impl UpperBoundWitness {
    /// `1/‖q‖`: balls of larger radius are not inside the absolute hull.
    pub fn threshold(&self) -> f64 {
        1.0 / self.norm_q
    }
}

pub fn witness(u: &UnitVectorSystem) -> Result<UpperBoundWitness> {
    let a = gram_operator(u);
    if !u.spans()? {
        return Err(GeometryError::SpanFailure);
    }
    let half = inv_sqrt_psd(&a)?;
    let t = inverse_pd(&a)?;
    let tr_inv = trace_inverse(&a)?;
    let v: Vec<Point<f64>> = u.vectors.iter().map(|ui| half.matrix().mul_vec(ui)).collect();
    let strip = strip_vertex_maximize(&v, &t)?;
    let q = half.matrix().mul_vec(&strip.p);
    let norm_q = norm(&q);
    let max_inner = u.vectors.iter().map(|ui| dot(&q, ui).abs()).fold(0.0, f64::max);
    let tau = tolerance();
    let (n, d) = (u.len() as f64, u.dim as f64);
    if max_inner > 1.0 + tau {
        return Err(GeometryError::CertificateViolated(format!(
            "q leaves the polar: max |⟨q, u⟩| = {max_inner}"
        )));
    }
    if norm_q * norm_q < tr_inv - tau * tr_inv.max(1.0) || tr_inv < d * d / n - tau {
        return Err(GeometryError::CertificateViolated(format!(
            "‖q‖² = {} below tr A⁻¹ = {tr_inv}",
            norm_q * norm_q
        )));
    }
    Ok(UpperBoundWitness {
        p: strip.p,
        q,
        norm_q,
        bound: d / n.sqrt(),
        trace_inverse: tr_inv,
        max_inner,
    })
}

/// Certificate that `ρ·Bᵈ ⊄ conv{±uᵢ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoBallCertificate {
    pub excluded: bool,
    /// Balls of radius above this are excluded (0 for non-spanning systems).
    pub threshold: f64,
    /// Unit direction in which the ball of radius ρ leaves the hull.
    pub direction: Point<f64>,
}

/// Decides whether the witness excludes `ρ·Bᵈ`: true iff `ρ > 1/‖q‖`.
///
/// Non-spanning systems have a flat absolute hull; every `ρ > 0` is excluded
/// along a direction orthogonal to all `uᵢ`.
pub fn no_ball_certificate(u: &UnitVectorSystem, rho: f64) -> Result<NoBallCertificate> {
    if !u.spans()? {
        let eig = sym_eig(&gram_operator(u))?;
        let direction = eig.vectors.col(u.dim - 1);
        return Ok(NoBallCertificate {
            excluded: rho > 0.0,
            threshold: 0.0,
            direction,
        });
    }
    let w = witness(u)?;
    Ok(NoBallCertificate {
        excluded: rho > w.threshold(),
        threshold: w.threshold(),
        direction: w.q.iter().map(|x| x / w.norm_q).collect(),
    })
}

/// Inscribed radius of the absolute hull.
pub fn absolute_hull_inradius(u: &UnitVectorSystem) -> Result<f64> {
    Ok(inscribed_radius_origin(&u.absolute_hull()?)?.radius())
}
