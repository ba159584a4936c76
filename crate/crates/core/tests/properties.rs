use proptest::prelude::*;

use steinitz::centers::{centroid, centroid_h};
use steinitz::generate::{generate, InstanceStyle};
use steinitz::linalg::{inv_sqrt_psd, Matrix, SymMatrix};
use steinitz::oracle::best_subset_radius;
use steinitz::polytope::{
    convex_weights, extreme_points, gauge, origin_in_interior, polar_v_to_h, vertex_enum, HPolytope, VPolytope,
};
use steinitz::rng::InstanceRng;
use steinitz::scalar::{dot, norm, Point, Rational, Scalar};
use steinitz::sparse::{sparse_approximate, sparse_approximate_with, SimplexMode};
use steinitz::steinitz::select_vertices;
use steinitz::upperbound::{gram_operator, strip_vertex_maximize, witness, UnitVectorSystem};

fn body(seed: u64, max_d: usize) -> Option<VPolytope<f64>> {
    let mut rng = InstanceRng::new(seed);
    let d = 2 + (rng.next_u64() % (max_d as u64 - 1)) as usize;
    let n = d + 1 + (rng.next_u64() % 8) as usize;
    let pts: Vec<Point<f64>> = (0..n)
        .map(|_| {
            let r = 0.5 + 1.5 * rng.uniform();
            rng.unit_vector(d).into_iter().map(|x| x * r).collect()
        })
        .collect();
    let p = VPolytope::new(d, pts).ok()?;
    origin_in_interior(d, p.points()).then(|| extreme_points(&p))
}

/// `P − centroid(P)`, which lies in `−d` times itself.
fn centered<S: Scalar>(p: &VPolytope<S>) -> VPolytope<S> {
    let c = centroid(p).unwrap();
    let pts = p.points().iter().map(|x| x.iter().zip(&c).map(|(a, b)| a.clone() - b.clone()).collect()).collect();
    VPolytope::new(p.dim(), pts).unwrap()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(1.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn centroid_translation_equivariant(seed in any::<u64>(), t in prop::collection::vec(-3.0f64..3.0, 4)) {
        let Some(p) = body(seed, 4) else { return Ok(()) };
        let d = p.dim();
        let shifted: Vec<Point<f64>> = p.points().iter().map(|x| x.iter().zip(&t).map(|(a, b)| a + b).collect()).collect();
        let c = centroid(&p).unwrap();
        let cs = centroid(&VPolytope::new(d, shifted).unwrap()).unwrap();
        let expected: Vec<f64> = c.iter().zip(&t).map(|(a, b)| a + b).collect();
        prop_assert!(close(&cs, &expected, 1e-8), "{cs:?} vs {expected:?}");
    }

    #[test]
    fn centroid_ignores_order_and_duplicates(seed in any::<u64>()) {
        let Some(p) = body(seed, 4) else { return Ok(()) };
        let mut pts = p.points().to_vec();
        pts.reverse();
        pts.push(pts[0].clone());
        pts.push(pts[1].iter().map(|x| x + 1e-12).collect());
        let c = centroid(&p).unwrap();
        let c2 = centroid(&VPolytope::new(p.dim(), pts).unwrap()).unwrap();
        prop_assert!(close(&c, &c2, 1e-8), "{c:?} vs {c2:?}");
    }

    #[test]
    fn inclusion_reversal(seed in any::<u64>(), s in 0.2f64..0.95) {
        // P = s·R ⊂ R, so R° ⊂ P°
        let Some(r) = body(seed, 4) else { return Ok(()) };
        let p = VPolytope::new(r.dim(), r.points().iter().map(|x| x.iter().map(|a| a * s).collect()).collect()).unwrap();
        let p_polar = polar_v_to_h(&p).unwrap();
        let r_polar_vertices = vertex_enum(&polar_v_to_h(&r).unwrap()).unwrap();
        for w in r_polar_vertices.points() {
            prop_assert!(p_polar.contains(w));
        }
    }

    #[test]
    fn polar_vertices_are_tight(seed in any::<u64>()) {
        let Some(p) = body(seed, 4) else { return Ok(()) };
        let h = polar_v_to_h(&p).unwrap();
        for w in vertex_enum(&h).unwrap().points() {
            let tight = h.normals().iter().filter(|v| (dot(v, w) - 1.0).abs() <= 1e-7).count();
            prop_assert!(tight >= p.dim());
            prop_assert!(h.contains(w));
        }
    }

    #[test]
    fn inverse_square_root_round_trip(seed in any::<u64>()) {
        let mut rng = InstanceRng::new(seed);
        let d = 1 + (rng.next_u64() % 6) as usize;
        let b = Matrix::from_rows(&(0..d).map(|_| (0..d).map(|_| rng.gaussian()).collect()).collect::<Vec<_>>());
        let mut m = b.matmul(&b.transpose());
        for i in 0..d {
            m[(i, i)] += 0.1;
        }
        let m = SymMatrix::new(m).unwrap();
        let r = inv_sqrt_psd(&m).unwrap();
        let id = r.matrix().matmul(m.matrix()).matmul(r.matrix());
        for i in 0..d {
            for j in 0..d {
                let e = if i == j { 1.0 } else { 0.0 };
                prop_assert!((id[(i, j)] - e).abs() <= 1e-7, "{:?}", id);
            }
        }
    }

    #[test]
    fn strip_value_permutation_invariant(seed in any::<u64>()) {
        let mut rng = InstanceRng::new(seed);
        let d = 1 + (rng.next_u64() % 4) as usize;
        let n = d + (rng.next_u64() % (d as u64 + 2)) as usize;
        let u = UnitVectorSystem::new(d, (0..n).map(|_| rng.unit_vector(d)).collect()).unwrap();
        let Ok(w) = witness(&u) else { return Ok(()) };
        let mut v = u.vectors().to_vec();
        v.reverse();
        v.rotate_left(n / 2);
        let w2 = witness(&UnitVectorSystem::new(d, v).unwrap()).unwrap();
        prop_assert!((w.norm_q - w2.norm_q).abs() <= 1e-9 * w.norm_q);
        let t = SymMatrix::identity(d);
        let a = strip_vertex_maximize(u.vectors(), &t).unwrap().value;
        let mut shuffled = u.vectors().to_vec();
        shuffled.swap(0, n - 1);
        let b = strip_vertex_maximize(&shuffled, &t).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }

    #[test]
    fn witness_rotation_invariant(seed in any::<u64>(), angle in 0.0f64..std::f64::consts::TAU) {
        let mut rng = InstanceRng::new(seed);
        let n = 2 + (rng.next_u64() % 5) as usize;
        let u = UnitVectorSystem::new(2, (0..n).map(|_| rng.unit_vector(2)).collect()).unwrap();
        let Ok(w) = witness(&u) else { return Ok(()) };
        let (c, s) = (angle.cos(), angle.sin());
        let rotated: Vec<Point<f64>> = u.vectors().iter().map(|x| vec![c * x[0] - s * x[1], s * x[0] + c * x[1]]).collect();
        let w2 = witness(&UnitVectorSystem::normalized(2, rotated).unwrap()).unwrap();
        prop_assert!((w.norm_q - w2.norm_q).abs() <= 1e-9 * w.norm_q);
        prop_assert!((gram_operator(&u).matrix().trace() - n as f64).abs() <= 1e-12);
    }
}

#[test]
fn centroid_matches_monte_carlo() {
    for (i, d) in [2usize, 3, 4, 2, 3].into_iter().enumerate() {
        let q = generate(d, 3 * d, InstanceStyle::Tangent, 500 + i as u64).unwrap();
        // K = Q°: one halfspace per vertex of Q
        let k = HPolytope::new(d, q.points().to_vec()).unwrap();
        let kv = vertex_enum(&k).unwrap();
        let c = centroid_h(&k, &kv).unwrap();
        let lo: Vec<f64> = (0..d).map(|j| kv.points().iter().map(|p| p[j]).fold(f64::INFINITY, f64::min)).collect();
        let hi: Vec<f64> = (0..d).map(|j| kv.points().iter().map(|p| p[j]).fold(f64::NEG_INFINITY, f64::max)).collect();
        let diameter = kv
            .points()
            .iter()
            .flat_map(|a| kv.points().iter().map(move |b| norm(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())))
            .fold(0.0, f64::max);
        let mut rng = InstanceRng::new(i as u64);
        let mut sum = vec![0.0; d];
        let mut accepted = 0;
        while accepted < 100_000 {
            let x: Vec<f64> = (0..d).map(|j| lo[j] + (hi[j] - lo[j]) * rng.uniform()).collect();
            if k.normals().iter().all(|v| dot(v, &x) <= 1.0) {
                for j in 0..d {
                    sum[j] += x[j];
                }
                accepted += 1;
            }
        }
        let mean: Vec<f64> = sum.iter().map(|s| s / accepted as f64).collect();
        let err = norm(&mean.iter().zip(&c).map(|(a, b)| a - b).collect::<Vec<_>>());
        assert!(err <= 0.02 * diameter, "d={d}: sample mean {mean:?}, centroid {c:?}");
    }
}

#[test]
fn sparse_certificate_sound_in_exact_arithmetic() {
    let mut checked = 0;
    let mut seed = 0;
    while checked < 60 {
        seed += 1;
        let Some(p) = body(seed, 3) else { continue };
        let p = centered(&p.to_rational());
        let d = p.dim();
        let lambda = Rational::from_i64(d as i64);
        let cert = sparse_approximate(&p, &lambda).unwrap();
        assert!(cert.selected.len() <= 2 * d);
        let selected: Vec<Point<Rational>> = cert.selected.iter().map(|&i| p.points()[i].clone()).collect();
        let mu = Rational::from_i64(((d + 2) * d) as i64);
        assert!(convex_weights(&selected, &vec![Rational::from_i64(0); d]).is_some(), "seed {seed}: 0 ∉ conv(selected)");
        for w in p.points() {
            let neg: Point<Rational> = w.iter().map(|x| -x.clone()).collect();
            let g = gauge(&selected, &neg).expect("−w in the cone of the selection");
            assert!(g <= mu, "seed {seed}: gauge {g} > {mu}");
        }
        checked += 1;
    }
}

#[test]
fn greedy_and_exact_simplices_both_certify() {
    let mut checked = 0;
    let mut seed = 1000;
    while checked < 200 {
        seed += 1;
        let Some(p) = body(seed, 4) else { continue };
        let p = centered(&p);
        let lambda = p.dim() as f64;
        for mode in [SimplexMode::Exact, SimplexMode::Greedy] {
            let cert = sparse_approximate_with(&p, &lambda, mode).unwrap();
            assert!(cert.min_margin() >= -1e-9, "seed {seed} {mode:?}: {}", cert.min_margin());
            assert!(cert.selected.len() <= 2 * p.dim());
        }
        checked += 1;
    }
}

#[test]
fn oracle_monotone_in_k_and_dominates_pipeline() {
    for seed in 0..20 {
        let q = generate(2, 7, InstanceStyle::Tangent, seed).unwrap();
        let mut last = 0.0;
        for k in 1..=q.len() {
            let r = best_subset_radius(&q, k).unwrap().best_radius;
            assert!(r >= last - 1e-12, "seed {seed}: k={k} radius {r} < {last}");
            last = r;
        }
        let sel = select_vertices(&q).unwrap();
        let best = best_subset_radius(&q, 4).unwrap().best_radius;
        assert!(best >= sel.certified_radius - 1e-9);
    }
}

#[test]
fn pipeline_is_deterministic() {
    for seed in 0..30 {
        let d = 2 + (seed % 3) as usize;
        let q = generate(d, 4 * d, InstanceStyle::Tangent, seed).unwrap();
        let a = select_vertices(&q).unwrap();
        let b = select_vertices(&q.clone()).unwrap();
        assert_eq!(a.indices, b.indices);
        assert_eq!(a.certified_radius, b.certified_radius);
    }
}

#[test]
fn sphere_point_instances_feed_the_pipeline() {
    for seed in 0..20 {
        let d = 2 + (seed % 3) as usize;
        let q = generate(d, 4 * d, InstanceStyle::SpherePoints, seed).unwrap();
        let sel = select_vertices(&q).unwrap();
        assert!(sel.certified_radius >= sel.bound - 1e-9);
    }
}
