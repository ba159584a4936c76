//! Centroids of polytopes and the runtime check `(K − c) ⊂ −λ(K − c)`.

use std::collections::BTreeSet;

use crate::error::{GeometryError, Result};
use crate::linalg::Matrix;
use crate::lp;
use crate::polytope::{polar_v_to_h, translate_h, vertex_enum, HPolytope, VPolytope};
use crate::scalar::{dot, sub, Point, Rational, Scalar};

/// A body with a verified center.
#[derive(Debug, Clone)]
pub struct CenteredBody<S> {
    pub body: HPolytope<S>,
    pub center: Point<S>,
    /// The verified factor λ (here always `d`).
    pub contraction: S,
    /// Minimal slack reported by [`verify_center`].
    pub margin: S,
    /// Vertices of `body`, as enumerated while computing the centroid.
    pub vertices: VPolytope<S>,
}

/// Outcome of [`verify_center`].
#[derive(Debug, Clone, PartialEq)]
pub struct CenterCheck<S> {
    pub holds: bool,
    /// `min_i (1 − max_{x ∈ K−c} ⟨x, −v′ᵢ/λ⟩)`.
    pub margin: S,
}

fn affine_rank<S: Scalar>(points: &[Point<S>], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let base = &points[idx[0]];
    let diffs: Vec<Point<S>> = idx[1..].iter().map(|&i| sub(&points[i], base)).collect();
    Matrix::from_rows(&diffs).rank()
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Pulling triangulation of the face spanned by `face` (dimension `k`), using
/// the polytope's facet vertex sets to find the face's own facets.
fn triangulate_face<S: Scalar>(
    points: &[Point<S>],
    facets: &[Vec<usize>],
    face: &[usize],
    k: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if face.len() == k + 1 {
        out.push(face.to_vec());
        return;
    }
    let apex = face[0];
    let face_set: BTreeSet<usize> = face.iter().copied().collect();
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for g in facets {
        let sub: Vec<usize> = g.iter().copied().filter(|i| face_set.contains(i)).collect();
        if sub.len() < k || sub.len() == face.len() || sub.contains(&apex) {
            continue;
        }
        if affine_rank(points, &sub) + 1 == k {
            subfaces.insert(sub);
        }
    }
    for sub in subfaces {
        let mut simplices = Vec::new();
        triangulate_face(points, facets, &sub, k - 1, &mut simplices);
        for mut s in simplices {
            s.insert(0, apex);
            out.push(s);
        }
    }
}

/// Volume and centroid of `conv(points)`, given the vertex sets of its
/// facets, by fanning from `seed` over a triangulation of each facet.
fn centroid_from_facets<S: Scalar>(
    points: &[Point<S>],
    facets: &[Vec<usize>],
    seed: &[S],
) -> (S, Point<S>) {
    let d = seed.len();
    let mut volume = S::zero();
    let mut moment = vec![S::zero(); d];
    let denom = S::from_i64(factorial(d));
    let count = S::from_i64(d as i64 + 1);
    for facet in facets {
        if affine_rank(points, facet) + 1 != d {
            continue;
        }
        let mut simplices = Vec::new();
        triangulate_face(points, facets, facet, d - 1, &mut simplices);
        for s in simplices {
            let rows: Vec<Point<S>> = s.iter().map(|&i| sub(&points[i], seed)).collect();
            let vol = Matrix::from_rows(&rows).determinant().abs() / denom.clone();
            for j in 0..d {
                let mut c = seed[j].clone();
                for &i in &s {
                    c = c + points[i][j].clone();
                }
                moment[j] = moment[j].clone() + vol.clone() * c / count.clone();
            }
            volume = volume + vol;
        }
    }
    let centroid = moment.into_iter().map(|m| m / volume.clone()).collect();
    (volume, centroid)
}

fn tight_sets<S: Scalar>(points: &[Point<S>], normals: &[Point<S>], offset: &[S]) -> Vec<Vec<usize>> {
    normals
        .iter()
        .zip(offset)
        .map(|(v, b)| {
            let tol = if S::EXACT {
                S::zero()
            } else {
                let scale = b.abs().to_f64().max(1.0);
                S::from_f64(100.0 * S::eps().to_f64() * scale)
            };
            (0..points.len())
                .filter(|&i| (dot(v, &points[i]) - b.clone()).abs() <= tol)
                .collect()
        })
        .collect()
}

fn mean<S: Scalar>(points: &[Point<S>]) -> Point<S> {
    let d = points[0].len();
    let n = S::from_i64(points.len() as i64);
    (0..d)
        .map(|j| points.iter().fold(S::zero(), |acc, p| acc + p[j].clone()) / n.clone())
        .collect()
}

/// Centroid of the solid `conv(P)`.
pub fn centroid<S: Scalar>(p: &VPolytope<S>) -> Result<Point<S>> {
    if !p.is_full_dim() {
        return Err(GeometryError::DegenerateBody { volume: 0.0 });
    }
    let points = p.points();
    let seed = mean(points);
    let shifted: Vec<Point<S>> = points.iter().map(|q| sub(q, &seed)).collect();
    let shifted = VPolytope::new(p.dim(), shifted)?;
    let polar = polar_v_to_h(&shifted)?;
    let facet_normals = vertex_enum(&polar)?;
    let ones = vec![S::one(); facet_normals.len()];
    let facets = tight_sets(shifted.points(), facet_normals.points(), &ones);
    let (volume, c) = centroid_from_facets(shifted.points(), &facets, &vec![S::zero(); p.dim()]);
    if !volume.is_pos() {
        return Err(GeometryError::DegenerateBody {
            volume: volume.to_f64(),
        });
    }
    Ok(crate::scalar::add(&c, &seed))
}

/// Centroid of a bounded H-polytope whose vertices are already known.
pub fn centroid_h<S: Scalar>(k: &HPolytope<S>, vertices: &VPolytope<S>) -> Result<Point<S>> {
    let points = vertices.points();
    if points.len() <= k.dim() {
        return Err(GeometryError::DegenerateBody { volume: 0.0 });
    }
    let seed = mean(points);
    let offsets: Vec<S> = k.normals().iter().map(|v| S::one() - dot(v, &seed)).collect();
    let shifted: Vec<Point<S>> = points.iter().map(|q| sub(q, &seed)).collect();
    let facets = tight_sets(&shifted, k.normals(), &offsets);
    let (volume, c) = centroid_from_facets(&shifted, &facets, &vec![S::zero(); k.dim()]);
    if !volume.is_pos() {
        return Err(GeometryError::DegenerateBody {
            volume: volume.to_f64(),
        });
    }
    Ok(crate::scalar::add(&c, &seed))
}

/// Checks `(K − c) ⊂ −λ(K − c)` by one LP per constraint of the target.
///
/// With `K − c = {x : ⟨x, v′ᵢ⟩ ≤ 1}`, each target constraint is
/// `⟨x, −v′ᵢ/λ⟩ ≤ 1`; its maximum over `K − c` is computed through the dual
/// `min Σyⱼ s.t. Σ yⱼ v′ⱼ = −v′ᵢ/λ, y ≥ 0`.
pub fn verify_center<S: Scalar>(k: &HPolytope<S>, c: &[S], lambda: &S) -> Result<CenterCheck<S>> {
    let shifted = translate_h(k, c)?;
    let normals = shifted.normals();
    let d = k.dim();
    let m = normals.len();
    let mut a = Matrix::zeros(d, m);
    for (j, v) in normals.iter().enumerate() {
        for i in 0..d {
            a[(i, j)] = v[i].clone();
        }
    }
    let ones = vec![S::one(); m];
    let mut margin: Option<S> = None;
    for v in normals {
        let g: Vec<S> = v.iter().map(|x| -x.clone() / lambda.clone()).collect();
        let max = match lp::minimize(&a, &g, &ones) {
            lp::LpOutcome::Optimal(sol) => sol.objective,
            _ => return Err(GeometryError::Unbounded),
        };
        let slack = S::one() - max;
        margin = match margin {
            Some(m) if m <= slack => Some(m),
            _ => Some(slack),
        };
    }
    let margin = margin.unwrap_or_else(S::one);
    Ok(CenterCheck {
        holds: margin.is_nonneg(),
        margin,
    })
}

/// Centroid of `K`, certified to satisfy `(K − c) ⊂ −d(K − c)`.
///
/// A float failure is retried in exact arithmetic before giving up.
pub fn steinitz_center<S: Scalar>(k: &HPolytope<S>) -> Result<CenteredBody<S>> {
    let vertices = vertex_enum(k)?;
    steinitz_center_with_vertices(k, vertices)
}

/// [`steinitz_center`] for a body whose vertices are already enumerated.
pub fn steinitz_center_with_vertices<S: Scalar>(
    k: &HPolytope<S>,
    vertices: VPolytope<S>,
) -> Result<CenteredBody<S>> {
    let c = centroid_h(k, &vertices)?;
    let lambda = S::from_i64(k.dim() as i64);
    let check = verify_center(k, &c, &lambda)?;
    if check.holds {
        return Ok(CenteredBody {
            body: k.clone(),
            center: c,
            contraction: lambda,
            margin: check.margin,
            vertices,
        });
    }
    if !S::EXACT {
        let exact: HPolytope<Rational> = HPolytope::new(
            k.dim(),
            k.normals()
                .iter()
                .map(|v| v.iter().map(|x| Rational::from_f64(x.to_f64())).collect())
                .collect(),
        )?;
        let body = steinitz_center(&exact)?;
        let center: Point<S> = body.center.iter().map(|x| S::from_f64(x.to_f64())).collect();
        return Ok(CenteredBody {
            body: k.clone(),
            center,
            contraction: lambda,
            margin: S::from_f64(body.margin.to_f64()),
            vertices,
        });
    }
    Err(GeometryError::CenterVerificationFailed {
        margin: check.margin.to_f64(),
    })
}
