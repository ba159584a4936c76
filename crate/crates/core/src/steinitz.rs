//! End-to-end selection: from a polytope `Q ⊇ Bᵈ` to at most `2d` of its
//! vertices whose hull contains `(1/(5d²))·Bᵈ`.
//!
//! Steps, each recorded in the [`Trail`]:
//!
//! 1. `K = Q°`, one halfspace `H_v` per vertex `v` of `Q`;
//! 2. a center `c` of `K` with `(K − c) ⊂ −d(K − c)` (the centroid);
//! 3. `L = (K − c)°`, whose vertices are the normals `v / (1 − ⟨c, v⟩)`,
//!    so every vertex of `L` keeps the index of its source vertex of `Q`;
//! 4. a sparse approximation of `L` with `λ = d`;
//! 5. the source vertices of the chosen `w₁ … w_m`, certified by computing
//!    the inscribed radius of their hull.

use crate::centers::steinitz_center_with_vertices;
use crate::error::{GeometryError, Result};
use crate::polytope::{
    convex_weights, extreme_points, inscribed_radius_origin, max_norm_sq, polar_v_to_h, translate_h,
    vertex_enum, Inradius, VPolytope,
};
use crate::scalar::{sub, Point, Rational, Scalar};
use crate::sparse::{intermediate_checks, sparse_approximate, IntermediateChecks, SparseCertificate};

/// The guaranteed radius `1/(5d²)`.
pub fn radius_bound(d: usize) -> f64 {
    1.0 / (5.0 * (d * d) as f64)
}

/// `1/(25d⁴)`, the squared bound, as an exact value.
pub fn radius_bound_sq<S: Scalar>(d: usize) -> S {
    let d2 = (d * d) as i64;
    S::one() / S::from_i64(25 * d2 * d2)
}

/// Outcome of [`check_contains_unit_ball`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnitBallCheck<S> {
    pub contains: bool,
    /// `radius − 1`.
    pub margin: f64,
    pub inradius: Inradius<S>,
}

/// `Bᵈ ⊂ conv(Q)`, i.e. the origin-centered inscribed radius is at least 1.
pub fn check_contains_unit_ball<S: Scalar>(q: &VPolytope<S>) -> Result<UnitBallCheck<S>> {
    let inradius = inscribed_radius_origin(q)?;
    Ok(unit_ball_check(inradius))
}

fn unit_ball_check<S: Scalar>(inradius: Inradius<S>) -> UnitBallCheck<S> {
    let contains = inradius.origin_interior && (inradius.radius_sq.clone() - S::one()).is_nonneg();
    UnitBallCheck {
        contains,
        margin: inradius.radius() - 1.0,
        inradius,
    }
}

/// Intermediate objects of one pipeline run.
#[derive(Debug, Clone)]
pub struct Trail<S> {
    /// Input indices of the vertices of `Q`.
    pub extreme_indices: Vec<usize>,
    /// Normals of `K = Q°` (the vertices of `Q`).
    pub k_normals: Vec<Point<S>>,
    /// Largest norm² among the vertices of `K`; at most 1 when `Q ⊇ Bᵈ`.
    pub k_max_vertex_norm_sq: S,
    pub center: Point<S>,
    pub center_margin: S,
    /// Vertices of `L = (K − c)°`, aligned with `extreme_indices`.
    pub l_vertices: Vec<Point<S>>,
    /// Inscribed radius of `L`; at least ½.
    pub l_inradius_sq: S,
    pub sparse: SparseCertificate<S>,
    pub sparse_checks: IntermediateChecks<S>,
    /// Largest norm² among the polar vertices of the selected hull; at most
    /// `(2(d+2)d + 1)²`.
    pub selection_polar_max_norm_sq: S,
}

/// At most `2d` input indices with a certified inscribed radius.
#[derive(Debug, Clone)]
pub struct Selection<S> {
    /// Input indices into `Q`'s point list, ascending.
    pub indices: Vec<usize>,
    pub certified_radius: f64,
    pub certified_radius_sq: S,
    pub bound: f64,
    pub trail: Trail<S>,
}

fn le_with_tol<S: Scalar>(a: &S, b: &S) -> bool {
    if S::EXACT {
        a <= b
    } else {
        let scale = b.abs().to_f64().max(1.0);
        a.to_f64() <= b.to_f64() + 1e3 * S::eps().to_f64() * scale
    }
}

/// Runs the selection pipeline on `Q`.
pub fn select_vertices<S: Scalar>(q: &VPolytope<S>) -> Result<Selection<S>> {
    let d = q.dim();
    let q_ext = extreme_points(q);
    let Ok(k) = polar_v_to_h(&q_ext) else {
        return Err(GeometryError::InputLacksUnitBall { radius: 0.0 });
    };
    let k_vertices = vertex_enum(&k)?;
    let k_max = max_norm_sq(k_vertices.points());
    let input_check = unit_ball_check(Inradius {
        radius_sq: S::one() / k_max.clone(),
        origin_interior: true,
        max_polar_norm_sq: Some(k_max.clone()),
    });
    if !input_check.contains && !le_with_tol(&k_max, &S::one()) {
        return Err(GeometryError::InputLacksUnitBall {
            radius: input_check.inradius.radius(),
        });
    }

    let centered = steinitz_center_with_vertices(&k, k_vertices)?;
    let c = centered.center.clone();

    let shifted = translate_h(&k, &c)?;
    let l_vertices: Vec<Point<S>> = shifted.normals().to_vec();
    let l = VPolytope::new(d, l_vertices.clone())?;
    if l.len() != q_ext.len() {
        return Err(GeometryError::CertificateViolated(
            "two vertices of Q map to the same vertex of L".into(),
        ));
    }
    let l = extreme_points(&l);
    // L° = K − c, whose vertices are those of K shifted by −c
    let l_polar_max = max_norm_sq(
        &centered
            .vertices
            .points()
            .iter()
            .map(|w| sub(w, &c))
            .collect::<Vec<_>>(),
    );
    let l_inradius_sq = S::one() / l_polar_max.clone();
    // L ⊃ ½Bᵈ ⇔ ‖w − c‖ ≤ 2 on K's vertices
    if !le_with_tol(&l_polar_max, &S::from_i64(4)) {
        return Err(GeometryError::CertificateViolated(format!(
            "L does not contain the half ball (inradius {})",
            1.0 / l_polar_max.to_f64().sqrt()
        )));
    }

    let lambda = S::from_i64(d as i64);
    let sparse = sparse_approximate(&l, &lambda)?;
    let sparse_checks = intermediate_checks(&l, &sparse)?;
    if !sparse_checks.origin_in_selection {
        return Err(GeometryError::CertificateViolated("0 ∉ L′".into()));
    }

    // positions in l → positions in q_ext → input indices
    let mut indices: Vec<usize> = sparse
        .selected
        .iter()
        .map(|&i| q_ext.sources()[l.sources()[i]])
        .collect();
    indices.sort_unstable();
    let chosen_positions: Vec<usize> = sparse
        .selected
        .iter()
        .map(|&i| l.sources()[i])
        .collect();
    let sub_hull = q_ext.subset(&chosen_positions);
    let inradius = inscribed_radius_origin(&sub_hull)?;
    if !inradius.origin_interior {
        return Err(GeometryError::CertificateViolated(
            "origin is not interior to the selected hull".into(),
        ));
    }
    let polar_max = inradius.max_polar_norm_sq.clone().unwrap_or_else(S::zero);
    let chain = S::from_i64((2 * (d + 2) * d + 1) as i64);
    if !le_with_tol(&polar_max, &(chain.clone() * chain)) {
        return Err(GeometryError::CertificateViolated(format!(
            "selected hull has inradius {} below 1/(2(d+2)d+1)",
            inradius.radius()
        )));
    }
    let bound_sq = radius_bound_sq::<S>(d);
    if !le_with_tol(&bound_sq, &inradius.radius_sq) {
        return Err(GeometryError::CertificateViolated(format!(
            "selected hull has inradius {} below 1/(5d²)",
            inradius.radius()
        )));
    }

    Ok(Selection {
        indices,
        certified_radius: inradius.radius(),
        certified_radius_sq: inradius.radius_sq,
        bound: radius_bound(d),
        trail: Trail {
            extreme_indices: q_ext.sources().to_vec(),
            k_normals: k.normals().to_vec(),
            k_max_vertex_norm_sq: k_max,
            center: c,
            center_margin: centered.margin,
            l_vertices,
            l_inradius_sq,
            sparse,
            sparse_checks,
            selection_polar_max_norm_sq: polar_max,
        },
    })
}

/// Result of [`certify`].
#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    pub radius: f64,
    /// Exact `r²` when the computation ran in rational arithmetic.
    pub radius_sq_exact: Option<Rational>,
}

/// Exact arithmetic is used automatically up to this dimension.
pub const EXACT_CERTIFY_MAX_DIM: usize = 3;

/// Inscribed radius of the hull of the given input indices of `Q`.
///
/// Runs in exact arithmetic when `d ≤ 3` or when `force_exact` is set.
pub fn certify(q: &VPolytope<f64>, indices: &[usize], force_exact: bool) -> Result<Certification> {
    let mut positions = Vec::with_capacity(indices.len());
    for &i in indices {
        let pos = q.sources().iter().position(|&s| s == i).ok_or_else(|| {
            GeometryError::InvalidInput(format!("index {i} does not name a distinct input point"))
        })?;
        if !positions.contains(&pos) {
            positions.push(pos);
        }
    }
    let sub_hull = q.subset(&positions);
    if force_exact || q.dim() <= EXACT_CERTIFY_MAX_DIM {
        let exact = sub_hull.to_rational();
        let r = inscribed_radius_origin(&exact)?;
        Ok(Certification {
            radius: r.radius(),
            radius_sq_exact: Some(r.radius_sq),
        })
    } else {
        let r = inscribed_radius_origin(&sub_hull)?;
        Ok(Certification {
            radius: r.radius(),
            radius_sq_exact: None,
        })
    }
}

/// Points of a `δ`-net of the unit sphere, with `δ = √(2ε − ε²)`.
///
/// Grid points on the surface of `[−1, 1]ᵈ` are projected radially; a face
/// grid of spacing `h` gives a net of mesh at most `h·√(d−1)`.
pub fn sphere_net(d: usize, eps: f64) -> Vec<Point<f64>> {
    if d == 1 {
        return vec![vec![-1.0], vec![1.0]];
    }
    let delta = (2.0 * eps - eps * eps).sqrt();
    let h = delta / ((d - 1) as f64).sqrt();
    let steps = (2.0 / h).ceil().max(1.0) as usize;
    let mut out: Vec<Point<f64>> = Vec::new();
    let grid: Vec<f64> = (0..=steps).map(|k| -1.0 + 2.0 * k as f64 / steps as f64).collect();
    for axis in 0..d {
        for side in [-1.0, 1.0] {
            let free = d - 1;
            let total = (steps + 1).pow(free as u32);
            for code in 0..total {
                let mut c = code;
                let mut p = Vec::with_capacity(d);
                for j in 0..d {
                    if j == axis {
                        p.push(side);
                    } else {
                        p.push(grid[c % (steps + 1)]);
                        c /= steps + 1;
                    }
                }
                let n = crate::scalar::norm(&p);
                out.push(p.into_iter().map(|x| x / n).collect());
            }
        }
    }
    // projected cube edges repeat; merge them
    VPolytope::new(d, out).map(|v| v.points().to_vec()).unwrap_or_default()
}

/// Finite subset of `points` whose hull contains `(1 − ε)·Bᵈ`.
///
/// Every point of a sphere net is written as a convex combination of at most
/// `d + 1` input points; the union of those supports is returned, with
/// sources pointing into `points`.
pub fn finite_subset_cover(points: &[Point<f64>], eps: f64) -> Result<VPolytope<f64>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(GeometryError::InvalidInput(format!("ε must lie in (0, 1), got {eps}")));
    }
    let d = points
        .first()
        .map(Vec::len)
        .ok_or_else(|| GeometryError::InvalidInput("empty point set".into()))?;
    let all = VPolytope::new(d, points.to_vec())?;
    let mut chosen: Vec<usize> = Vec::new();
    for u in sphere_net(d, eps) {
        let Some(weights) = convex_weights(all.points(), &u) else {
            let radius = inscribed_radius_origin(&all).map(|r| r.radius()).unwrap_or(0.0);
            return Err(GeometryError::InputLacksUnitBall { radius });
        };
        for (i, w) in weights.iter().enumerate() {
            if *w > crate::scalar::tolerance() && !chosen.contains(&i) {
                chosen.push(i);
            }
        }
    }
    chosen.sort_unstable();
    Ok(all.subset(&chosen))
}

/// Norm² of the largest vertex of `K` not exceeding 1 means `K ⊂ Bᵈ`.
pub fn k_inside_unit_ball<S: Scalar>(trail: &Trail<S>) -> bool {
    le_with_tol(&trail.k_max_vertex_norm_sq, &S::one())
}
