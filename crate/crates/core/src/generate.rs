//! Random polytopes containing the unit ball.

use std::fmt;
use std::str::FromStr;

use crate::error::{GeometryError, Result};
use crate::polytope::{vertex_enum, HPolytope, VPolytope};
use crate::rng::InstanceRng;
use crate::scalar::Point;
use crate::steinitz::check_contains_unit_ball;

/// Rejection rounds before giving up.
pub const GENERATION_ROUNDS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InstanceStyle {
    /// `⋂{⟨x, vᵢ⟩ ≤ 1 + sᵢ}` for random unit normals `vᵢ`, `sᵢ ∈ [0, 1)`.
    #[default]
    Tangent,
    /// Random points at radii in `[√d, 2√d]`, kept when their hull covers `Bᵈ`.
    SpherePoints,
}

impl FromStr for InstanceStyle {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tangent" => Ok(InstanceStyle::Tangent),
            "sphere-points" => Ok(InstanceStyle::SpherePoints),
            other => Err(GeometryError::InvalidInput(format!(
                "unknown style {other:?}, expected tangent or sphere-points"
            ))),
        }
    }
}

impl fmt::Display for InstanceStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceStyle::Tangent => "tangent",
            InstanceStyle::SpherePoints => "sphere-points",
        })
    }
}

/// `min(4d, 20)`, but at least `d + 1`.
pub fn default_facets(d: usize) -> usize {
    (4 * d).min(20).max(d + 1)
}

/// Vertices of `⋂{x : ⟨x, vᵢ⟩ ≤ bᵢ}`, all `bᵢ > 0`.
pub fn tangent_polytope(normals: &[Point<f64>], offsets: &[f64]) -> Result<VPolytope<f64>> {
    if normals.is_empty() || normals.len() != offsets.len() {
        return Err(GeometryError::InvalidInput("one offset per normal required".into()));
    }
    if offsets.iter().any(|&b| b.is_nan() || b <= 0.0) {
        return Err(GeometryError::InvalidInput("offsets must be positive".into()));
    }
    let d = normals[0].len();
    let scaled = normals
        .iter()
        .zip(offsets)
        .map(|(v, b)| v.iter().map(|x| x / b).collect())
        .collect();
    let h = HPolytope::new(d, scaled)?;
    if !h.is_bounded() {
        return Err(GeometryError::Unbounded);
    }
    vertex_enum(&h)
}

fn check_shape(d: usize, m: usize) -> Result<()> {
    if d == 0 {
        return Err(GeometryError::InvalidInput("dimension must be positive".into()));
    }
    if m < d + 1 {
        return Err(GeometryError::InvalidInput(format!(
            "need at least d+1 = {} facets or points, got {m}",
            d + 1
        )));
    }
    Ok(())
}

pub fn generate_tangent(d: usize, m: usize, rng: &mut InstanceRng) -> Result<VPolytope<f64>> {
    check_shape(d, m)?;
    for _ in 0..GENERATION_ROUNDS {
        let normals: Vec<Point<f64>> = (0..m).map(|_| rng.unit_vector(d)).collect();
        let offsets: Vec<f64> = (0..m).map(|_| 1.0 + rng.uniform()).collect();
        match tangent_polytope(&normals, &offsets) {
            Ok(q) => return Ok(q),
            Err(GeometryError::Unbounded) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GeometryError::GenerationFailed {
        rounds: GENERATION_ROUNDS,
    })
}

pub fn generate_sphere_points(d: usize, m: usize, rng: &mut InstanceRng) -> Result<VPolytope<f64>> {
    check_shape(d, m)?;
    let root = (d as f64).sqrt();
    for _ in 0..GENERATION_ROUNDS {
        let points: Vec<Point<f64>> = (0..m)
            .map(|_| {
                let u = rng.unit_vector(d);
                let r = root * (1.0 + rng.uniform());
                u.into_iter().map(|x| x * r).collect()
            })
            .collect();
        let q = VPolytope::new(d, points)?;
        if check_contains_unit_ball(&q)?.contains {
            return Ok(q);
        }
    }
    Err(GeometryError::GenerationFailed {
        rounds: GENERATION_ROUNDS,
    })
}

/// A seeded instance; `m` is the number of facets (tangent) or points.
pub fn generate(d: usize, m: usize, style: InstanceStyle, seed: u64) -> Result<VPolytope<f64>> {
    let mut rng = InstanceRng::new(seed);
    match style {
        InstanceStyle::Tangent => generate_tangent(d, m, &mut rng),
        InstanceStyle::SpherePoints => generate_sphere_points(d, m, &mut rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_aligned_tangent_is_the_cube() {
        let normals = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]];
        let q = tangent_polytope(&normals, &[1.0; 4]).unwrap();
        let mut pts = q.points().to_vec();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(
            pts,
            vec![vec![-1.0, -1.0], vec![-1.0, 1.0], vec![1.0, -1.0], vec![1.0, 1.0]]
        );
    }

    #[test]
    fn seeded_instance_contains_ball() {
        let q = generate(3, 10, InstanceStyle::Tangent, 7).unwrap();
        assert!(check_contains_unit_ball(&q).unwrap().contains);
        assert_eq!(q, generate(3, 10, InstanceStyle::Tangent, 7).unwrap());
    }

    #[test]
    fn minimal_facet_count_gives_a_simplex() {
        for d in 1..=4 {
            let q = generate(d, d + 1, InstanceStyle::Tangent, 11).unwrap();
            assert_eq!(q.len(), d + 1);
        }
    }

    #[test]
    fn sphere_points() {
        for d in 2..=4 {
            let q = generate(d, default_facets(d), InstanceStyle::SpherePoints, 3).unwrap();
            assert!(check_contains_unit_ball(&q).unwrap().contains);
        }
    }

    #[test]
    fn rejects_too_few_facets() {
        assert!(generate(3, 3, InstanceStyle::Tangent, 0).is_err());
        assert!("cube".parse::<InstanceStyle>().is_err());
        assert_eq!("sphere-points".parse::<InstanceStyle>().unwrap(), InstanceStyle::SpherePoints);
    }
}
