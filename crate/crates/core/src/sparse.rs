//! Sparse approximation: at most `2d` vertices `L′` of a polytope `L` with
//! `L ⊂ −λL` such that `L ⊂ −(λ+2)d · L′`.
//!
//! Construction: a volume-maximal simplex `conv{0, v₁, …, v_d}` on the
//! vertices, the boundary point `y` on the ray from the origin in direction
//! `−(v₁ + … + v_d)`, and a Carathéodory support of `y` with at most `d`
//! vertices. The final inclusion is re-verified by one LP per vertex.

use crate::error::{GeometryError, Result};
use crate::linalg::Matrix;
use crate::lp;
use crate::polytope::{convex_weights, gauge, origin_in_interior, VPolytope};
use crate::scalar::{binomial, Combinations, Point, Scalar};

/// Subset count allowed for exhaustive simplex search.
pub const EXACT_SIMPLEX_CAP: u128 = 1_000_000;
/// [`SimplexMode::Auto`] is exhaustive up to this many d-subsets.
const AUTO_EXACT_LIMIT: u128 = 20_000;
const MAX_SWAPS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SimplexMode {
    /// Global maximizer of `|det|` over all d-subsets.
    Exact,
    /// Greedy growth, then single-vertex swaps until no swap grows the volume
    /// by a factor above `1 + τ`.
    Greedy,
    #[default]
    Auto,
}

/// `conv{0, v₁, …, v_d}` on input vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexBasis<S> {
    /// Positions of `v₁ … v_d` in the input list.
    pub indices: Vec<usize>,
    pub vertices: Vec<Point<S>>,
    /// `|det[v₁ … v_d]| / d!`.
    pub volume: S,
}

impl<S: Scalar> SimplexBasis<S> {
    /// Coordinates of `x` in the basis `v₁ … v_d`.
    pub fn coordinates(&self, x: &[S]) -> Result<Vec<S>> {
        Matrix::from_cols(&self.vertices).solve(x)
    }
}

fn factorial<S: Scalar>(d: usize) -> S {
    (1..=d as i64).fold(S::one(), |acc, k| acc * S::from_i64(k))
}

fn abs_det<S: Scalar>(points: &[Point<S>], idx: &[usize]) -> S {
    let cols: Vec<Point<S>> = idx.iter().map(|&i| points[i].clone()).collect();
    Matrix::from_cols(&cols).determinant().abs()
}

fn basis_from<S: Scalar>(points: &[Point<S>], mut indices: Vec<usize>, det: S) -> SimplexBasis<S> {
    indices.sort_unstable();
    let d = points[0].len();
    SimplexBasis {
        vertices: indices.iter().map(|&i| points[i].clone()).collect(),
        indices,
        volume: det / factorial(d),
    }
}

/// Volume-maximal simplex with apex at the origin and `d` vertices from `points`.
pub fn max_volume_simplex<S: Scalar>(points: &[Point<S>], mode: SimplexMode) -> Result<SimplexBasis<S>> {
    let Some(first) = points.first() else {
        return Err(GeometryError::DegenerateInput);
    };
    let d = first.len();
    let count = binomial(points.len(), d);
    let mode = match mode {
        SimplexMode::Auto if count <= AUTO_EXACT_LIMIT => SimplexMode::Exact,
        SimplexMode::Auto => SimplexMode::Greedy,
        m => m,
    };
    match mode {
        SimplexMode::Exact => {
            if count > EXACT_SIMPLEX_CAP {
                return Err(GeometryError::EnumerationTooLarge {
                    count,
                    cap: EXACT_SIMPLEX_CAP,
                });
            }
            let mut best: Option<(Vec<usize>, S)> = None;
            for subset in Combinations::new(points.len(), d) {
                let det = abs_det(points, &subset);
                let better = match &best {
                    None => det.is_pos(),
                    Some((_, b)) => improves(&det, b),
                };
                if better {
                    best = Some((subset, det));
                }
            }
            let (idx, det) = best.ok_or(GeometryError::DegenerateInput)?;
            Ok(basis_from(points, idx, det))
        }
        _ => greedy_with_swaps(points),
    }
}

/// `candidate > best·(1 + τ)`; exact comparison for rationals.
fn improves<S: Scalar>(candidate: &S, best: &S) -> bool {
    if S::EXACT {
        candidate > best
    } else {
        candidate.to_f64() > best.to_f64() * (1.0 + S::eps().to_f64())
    }
}

fn greedy_with_swaps<S: Scalar>(points: &[Point<S>]) -> Result<SimplexBasis<S>> {
    let d = points[0].len();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut ortho: Vec<Point<S>> = Vec::with_capacity(d);
    for _ in 0..d {
        let mut best: Option<(usize, Point<S>, S)> = None;
        for (i, p) in points.iter().enumerate() {
            if chosen.contains(&i) {
                continue;
            }
            let mut r = p.clone();
            for q in &ortho {
                let f = crate::scalar::dot(&r, q) / crate::scalar::norm_sq(q);
                r = r.iter().zip(q).map(|(a, b)| a.clone() - f.clone() * b.clone()).collect();
            }
            let n2 = crate::scalar::norm_sq(&r);
            if best.as_ref().is_none_or(|(_, _, b)| n2 > *b) {
                best = Some((i, r, n2));
            }
        }
        let Some((i, r, n2)) = best else {
            return Err(GeometryError::DegenerateInput);
        };
        if !n2.is_pos() {
            return Err(GeometryError::DegenerateInput);
        }
        chosen.push(i);
        ortho.push(r);
    }
    // single-vertex swaps: replacing column j by w scales |det| by |(B⁻¹w)_j|
    let threshold = S::one() + S::eps();
    for _ in 0..MAX_SWAPS {
        let cols: Vec<Point<S>> = chosen.iter().map(|&i| points[i].clone()).collect();
        let b = Matrix::from_cols(&cols);
        let mut best: Option<(usize, usize, S)> = None;
        for (w, p) in points.iter().enumerate() {
            if chosen.contains(&w) {
                continue;
            }
            let beta = b.solve(p)?;
            for (j, coef) in beta.iter().enumerate() {
                let a = coef.abs();
                if a > threshold && best.as_ref().is_none_or(|(_, _, m)| a > *m) {
                    best = Some((w, j, a));
                }
            }
        }
        match best {
            Some((w, j, _)) => chosen[j] = w,
            None => break,
        }
    }
    let det = abs_det(points, &chosen);
    Ok(basis_from(points, chosen, det))
}

/// Exit point of the ray `{t·dir : t ≥ 0}` from `conv(V)`: maximal `t` with
/// `t·dir ∈ conv(V)`.
pub fn ray_exit<S: Scalar>(v: &VPolytope<S>, dir: &[S]) -> Result<(Point<S>, S)> {
    if !origin_in_interior(v.dim(), v.points()) {
        return Err(GeometryError::OriginNotInterior);
    }
    if dir.iter().all(|x| x.is_zero_tol()) {
        return Err(GeometryError::InvalidInput("ray direction is zero".into()));
    }
    let (t, _) = ray_lp(v.points(), dir).ok_or(GeometryError::Unbounded)?;
    let y = dir.iter().map(|x| x.clone() * t.clone()).collect();
    Ok((y, t))
}

/// `max t s.t. Σ αᵢ pᵢ = t·dir, Σ αᵢ = 1, α ≥ 0, t ≥ 0`, with the weights.
fn ray_lp<S: Scalar>(points: &[Point<S>], dir: &[S]) -> Option<(S, Vec<S>)> {
    let d = dir.len();
    let n = points.len();
    let mut a = Matrix::zeros(d + 1, n + 1);
    for (j, p) in points.iter().enumerate() {
        for i in 0..d {
            a[(i, j)] = p[i].clone();
        }
        a[(d, j)] = S::one();
    }
    for i in 0..d {
        a[(i, n)] = -dir[i].clone();
    }
    let mut b = vec![S::zero(); d + 1];
    b[d] = S::one();
    let mut c = vec![S::zero(); n + 1];
    c[n] = S::one();
    let sol = lp::maximize(&a, &b, &c).optimal()?;
    let mut x = sol.x;
    let t = x.pop()?;
    Some((t, x))
}

/// A point written as a convex combination of few generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<S> {
    /// Positions into the generator list, ascending.
    pub indices: Vec<usize>,
    pub weights: Vec<S>,
}

fn support_of<S: Scalar>(weights: Vec<S>) -> Decomposition<S> {
    let mut indices = Vec::new();
    let mut kept = Vec::new();
    for (i, w) in weights.into_iter().enumerate() {
        if w.is_pos() {
            indices.push(i);
            kept.push(w);
        }
    }
    let total = kept.iter().fold(S::zero(), |acc, w| acc + w.clone());
    let weights = kept.into_iter().map(|w| w / total.clone()).collect();
    Decomposition { indices, weights }
}

/// Carathéodory support of `y ∈ conv(points)`.
///
/// For a boundary point (with the origin in the hull) the support comes from
/// a basic optimum of `max t s.t. t·y ∈ conv(points)`: the basis has `d+1`
/// rows and `t` is basic, so at most `d` weights are nonzero. Interior points
/// fall back to a basic feasible solution of the membership LP (`≤ d+1`).
pub fn caratheodory_vertices<S: Scalar>(points: &[Point<S>], y: &[S]) -> Result<Decomposition<S>> {
    let Some(member) = convex_weights(points, y) else {
        return Err(GeometryError::NotMember);
    };
    if y.iter().any(|x| !x.is_zero_tol()) {
        if let Some((t, alpha)) = ray_lp(points, y) {
            let on_boundary = if S::EXACT {
                t == S::one()
            } else {
                (t.to_f64() - 1.0).abs() <= 1e3 * S::eps().to_f64()
            };
            if on_boundary {
                return Ok(support_of(alpha));
            }
        }
    }
    Ok(support_of(member))
}

/// Certificate for `L ⊂ −μ · conv(selected)` with `μ = (λ+2)d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCertificate<S> {
    /// Positions in the input list: simplex vertices first, then the
    /// Carathéodory vertices not already present.
    pub selected: Vec<usize>,
    pub simplex: SimplexBasis<S>,
    /// Boundary point on the ray in direction `−(v₁ + … + v_d)`.
    pub ray_point: Point<S>,
    pub caratheodory: Decomposition<S>,
    pub lambda: S,
    /// `μ = (λ+2)d`.
    pub factor: S,
    /// `1 − gauge(−w/μ)` for each input vertex `w`, in input order.
    pub margins: Vec<S>,
}

impl<S: Scalar> SparseCertificate<S> {
    pub fn min_margin(&self) -> S {
        self.margins
            .iter()
            .cloned()
            .fold(S::one(), |acc, m| if m < acc { m } else { acc })
    }
}

/// Intermediate inclusions of the construction, checked in the simplex basis.
#[derive(Debug, Clone, PartialEq)]
pub struct IntermediateChecks<S> {
    /// `max_w ‖B⁻¹w‖∞` over the input vertices; `≤ 1` means `L ⊂ P`.
    pub max_basis_coefficient: S,
    pub l_in_parallelotope: bool,
    /// Every vertex of the parallelotope `P` lies in `S′ = −2dS + Σvᵢ`.
    pub parallelotope_in_s_prime: bool,
    /// `0 ∈ conv(selected)`.
    pub origin_in_selection: bool,
    /// `(v₁ + … + v_d)/d ∈ conv(input)`.
    pub simplex_mean_in_input: bool,
}

pub fn sparse_approximate<S: Scalar>(v: &VPolytope<S>, lambda: &S) -> Result<SparseCertificate<S>> {
    sparse_approximate_with(v, lambda, SimplexMode::Auto)
}

pub fn sparse_approximate_with<S: Scalar>(
    v: &VPolytope<S>,
    lambda: &S,
    mode: SimplexMode,
) -> Result<SparseCertificate<S>> {
    let points = v.points();
    let d = v.dim();
    let loose = if S::EXACT {
        S::one()
    } else {
        S::one() + S::from_f64(1e3 * S::eps().to_f64())
    };
    for p in points {
        let target: Point<S> = p.iter().map(|x| -x.clone() / lambda.clone()).collect();
        match gauge(points, &target) {
            Some(g) if g <= loose => {}
            _ => {
                return Err(GeometryError::CertificateViolated(
                    "input is not contained in −λ times itself".into(),
                ))
            }
        }
    }
    let simplex = max_volume_simplex(points, mode)?;
    let dir: Point<S> = (0..d)
        .map(|j| -simplex.vertices.iter().fold(S::zero(), |acc, p| acc + p[j].clone()))
        .collect();
    let (ray_point, _) = ray_exit(v, &dir)?;
    let caratheodory = caratheodory_vertices(points, &ray_point)?;
    let mut selected = simplex.indices.clone();
    for &i in &caratheodory.indices {
        if !selected.contains(&i) {
            selected.push(i);
        }
    }
    let factor = (lambda.clone() + S::from_i64(2)) * S::from_i64(d as i64);
    let chosen: Vec<Point<S>> = selected.iter().map(|&i| points[i].clone()).collect();
    let mut margins = Vec::with_capacity(points.len());
    for p in points {
        let target: Point<S> = p.iter().map(|x| -x.clone() / factor.clone()).collect();
        let g = gauge(&chosen, &target).ok_or_else(|| {
            GeometryError::CertificateViolated("vertex outside the cone over the selection".into())
        })?;
        margins.push(S::one() - g);
    }
    let cert = SparseCertificate {
        selected,
        simplex,
        ray_point,
        caratheodory,
        lambda: lambda.clone(),
        factor,
        margins,
    };
    if cert.selected.len() > 2 * d {
        return Err(GeometryError::CertificateViolated(format!(
            "selection has {} > 2d vertices",
            cert.selected.len()
        )));
    }
    let min = cert.min_margin();
    if min.is_neg() {
        return Err(GeometryError::CertificateViolated(format!(
            "inclusion margin {:e}",
            min.to_f64()
        )));
    }
    Ok(cert)
}

/// Re-derives the intermediate inclusions `L ⊂ P ⊆ S′`, `0 ∈ L′`, and
/// `(v₁ + … + v_d)/d ∈ L` for a certificate.
pub fn intermediate_checks<S: Scalar>(v: &VPolytope<S>, cert: &SparseCertificate<S>) -> Result<IntermediateChecks<S>> {
    let d = v.dim();
    let threshold = S::one() + S::from_f64(1e3 * S::eps().to_f64());
    let mut max_coef = S::zero();
    for p in v.points() {
        for c in cert.simplex.coordinates(p)? {
            if c.abs() > max_coef {
                max_coef = c.abs();
            }
        }
    }
    // corners of P are Σ βᵢvᵢ with β ∈ {±1}ᵈ; S′ = {Σ γᵢvᵢ : γᵢ ≤ 1, Σγᵢ ≥ −d}
    let mut p_in_s_prime = true;
    let neg_d = -S::from_i64(d as i64) - S::eps();
    for mask in 0..(1u64 << d) {
        let corner: Point<S> = (0..d)
            .map(|j| {
                cert.simplex.vertices.iter().enumerate().fold(S::zero(), |acc, (i, vi)| {
                    let sign = if mask >> i & 1 == 1 { S::one() } else { -S::one() };
                    acc + sign * vi[j].clone()
                })
            })
            .collect();
        let gamma = cert.simplex.coordinates(&corner)?;
        let sum = gamma.iter().fold(S::zero(), |acc, g| acc + g.clone());
        if gamma.iter().any(|g| *g > threshold) || sum < neg_d {
            p_in_s_prime = false;
        }
    }
    let chosen: Vec<Point<S>> = cert.selected.iter().map(|&i| v.points()[i].clone()).collect();
    let origin_in_selection = convex_weights(&chosen, &vec![S::zero(); d]).is_some();
    let dd = S::from_i64(d as i64);
    let mean: Point<S> = (0..d)
        .map(|j| cert.simplex.vertices.iter().fold(S::zero(), |acc, p| acc + p[j].clone()) / dd.clone())
        .collect();
    let simplex_mean_in_input = convex_weights(v.points(), &mean).is_some();
    Ok(IntermediateChecks {
        l_in_parallelotope: max_coef <= threshold,
        max_basis_coefficient: max_coef,
        parallelotope_in_s_prime: p_in_s_prime,
        origin_in_selection,
        simplex_mean_in_input,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{dot, Rational};
    use approx::assert_abs_diff_eq;

    fn pts(raw: &[&[f64]]) -> Vec<Point<f64>> {
        raw.iter().map(|p| p.to_vec()).collect()
    }

    fn square() -> Vec<Point<f64>> {
        pts(&[&[-1.0, -1.0], &[-1.0, 1.0], &[1.0, -1.0], &[1.0, 1.0]])
    }

    fn cross(d: usize) -> Vec<Point<f64>> {
        let mut out = Vec::new();
        for i in 0..d {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; d];
                v[i] = s;
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn simplex_on_cross_polytope() {
        let b = max_volume_simplex(&cross(2), SimplexMode::Exact).unwrap();
        assert_abs_diff_eq!(b.volume, 0.5, epsilon = 1e-12);
        assert_eq!(b.indices, vec![0, 2]);
    }

    #[test]
    fn simplex_on_square_tie_break() {
        let b = max_volume_simplex(&square(), SimplexMode::Exact).unwrap();
        assert_abs_diff_eq!(b.volume, 1.0, epsilon = 1e-12);
        assert_eq!(b.vertices, pts(&[&[-1.0, -1.0], &[-1.0, 1.0]]));
    }

    #[test]
    fn simplex_on_basis_vectors() {
        let basis: Vec<Point<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let b = max_volume_simplex(&basis, SimplexMode::Exact).unwrap();
        assert_eq!(b.indices, vec![0, 1, 2, 3]);
        assert_abs_diff_eq!(b.volume, 1.0 / 24.0, epsilon = 1e-15);
        let g = max_volume_simplex(&basis, SimplexMode::Greedy).unwrap();
        assert_eq!(g.indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn degenerate_vectors() {
        let flat = pts(&[&[1.0, 1.0], &[2.0, 2.0], &[-1.0, -1.0]]);
        assert_eq!(max_volume_simplex(&flat, SimplexMode::Exact), Err(GeometryError::DegenerateInput));
        assert_eq!(max_volume_simplex(&flat, SimplexMode::Greedy), Err(GeometryError::DegenerateInput));
    }

    #[test]
    fn greedy_is_swap_local_maximum() {
        // points on a circle: a swap-local maximum puts every point in P
        let ring: Vec<Point<f64>> = (0..11)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / 11.0 + 0.1;
                vec![a.cos() * (1.0 + 0.1 * k as f64), a.sin()]
            })
            .collect();
        let g = max_volume_simplex(&ring, SimplexMode::Greedy).unwrap();
        for p in &ring {
            for c in g.coordinates(p).unwrap() {
                assert!(c.abs() <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn ray_exit_examples() {
        let sq = VPolytope::new(2, square()).unwrap();
        let (y, t) = ray_exit(&sq, &[1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(t, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(y[0], 1.0, epsilon = 1e-12);
        let (y, t) = ray_exit(&sq, &[1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(t, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(y[1], 1.0, epsilon = 1e-12);
        let cr = VPolytope::new(2, cross(2)).unwrap();
        let (y, t) = ray_exit(&cr, &[1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(t, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(y[0], 0.5, epsilon = 1e-12);
        let off = VPolytope::new(2, pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]])).unwrap();
        assert_eq!(ray_exit(&off, &[1.0, 0.0]), Err(GeometryError::OriginNotInterior));
    }

    #[test]
    fn caratheodory_examples() {
        let dec = caratheodory_vertices(&square(), &[1.0, 0.0]).unwrap();
        assert_eq!(dec.indices, vec![2, 3]);
        assert_abs_diff_eq!(dec.weights[0], 0.5, epsilon = 1e-12);
        let dec = caratheodory_vertices(&square(), &[1.0, 1.0]).unwrap();
        assert_eq!(dec.indices, vec![3]);
        assert_abs_diff_eq!(dec.weights[0], 1.0, epsilon = 1e-12);
        let hex: Vec<Point<f64>> = (0..6)
            .map(|k| {
                let a = std::f64::consts::PI * k as f64 / 3.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        let mid = vec![(hex[1][0] + hex[2][0]) / 2.0, (hex[1][1] + hex[2][1]) / 2.0];
        let dec = caratheodory_vertices(&hex, &mid).unwrap();
        assert_eq!(dec.indices, vec![1, 2]);
        assert_abs_diff_eq!(dec.weights[1], 0.5, epsilon = 1e-12);
        assert_eq!(caratheodory_vertices(&square(), &[2.0, 0.0]), Err(GeometryError::NotMember));
    }

    #[test]
    fn caratheodory_interior_point_uses_at_most_d_plus_one() {
        let dec = caratheodory_vertices(&square(), &[0.2, 0.1]).unwrap();
        assert!(dec.indices.len() <= 3);
        let x: f64 = dec.indices.iter().zip(&dec.weights).map(|(&i, w)| w * square()[i][0]).sum();
        assert_abs_diff_eq!(x, 0.2, epsilon = 1e-12);
    }

    #[test]
    fn square_certificate() {
        let v = VPolytope::new(2, square()).unwrap();
        let cert = sparse_approximate(&v, &1.0).unwrap();
        assert!(cert.selected.len() <= 4);
        assert_eq!(cert.factor, 6.0);
        assert!(cert.min_margin() >= -1e-9);
        let checks = intermediate_checks(&v, &cert).unwrap();
        assert!(checks.l_in_parallelotope);
        assert!(checks.parallelotope_in_s_prime);
        assert!(checks.origin_in_selection);
        assert!(checks.simplex_mean_in_input);
    }

    #[test]
    fn cross_polytope_certificate() {
        for d in 2..=4 {
            let v = VPolytope::new(d, cross(d)).unwrap();
            let cert = sparse_approximate(&v, &1.0).unwrap();
            assert!(cert.selected.len() <= 2 * d);
            assert!(cert.margins.iter().all(|m| *m >= 0.0 - 1e-12));
        }
    }

    #[test]
    fn simplex_body_with_lambda_d() {
        // L = conv{e₁, …, e_d, −(e₁+…+e_d)} has centroid 0, so L ⊂ −dL
        for d in 2..=4 {
            let mut p = cross(d).into_iter().step_by(2).collect::<Vec<_>>();
            p.push(vec![-1.0; d]);
            let v = VPolytope::new(d, p).unwrap();
            let cert = sparse_approximate(&v, &(d as f64)).unwrap();
            assert_abs_diff_eq!(cert.factor, ((d + 2) * d) as f64);
            assert!(cert.min_margin() >= -1e-9);
            // a smaller λ is rejected by the entry check
            assert!(sparse_approximate(&v, &(d as f64 - 0.5)).is_err());
        }
    }

    #[test]
    fn exact_certificate_on_hexagon() {
        // hexagon with rational vertices (±2,0), (±1,±2)
        let r = |x: i64| Rational::from_i64(x);
        let p = vec![
            vec![r(2), r(0)],
            vec![r(1), r(2)],
            vec![r(-1), r(2)],
            vec![r(-2), r(0)],
            vec![r(-1), r(-2)],
            vec![r(1), r(-2)],
        ];
        let v = VPolytope::new(2, p).unwrap();
        let cert = sparse_approximate(&v, &r(1)).unwrap();
        assert!(cert.selected.len() <= 4);
        assert!(cert.margins.iter().all(|m| *m >= r(0)));
        let y = &cert.ray_point;
        let rebuilt = cert
            .caratheodory
            .indices
            .iter()
            .zip(&cert.caratheodory.weights)
            .fold(vec![r(0), r(0)], |acc, (&i, w)| {
                vec![acc[0].clone() + w.clone() * v.points()[i][0].clone(), acc[1].clone() + w.clone() * v.points()[i][1].clone()]
            });
        assert_eq!(&rebuilt, y);
        assert!(dot(y, y) > r(0));
    }
}
