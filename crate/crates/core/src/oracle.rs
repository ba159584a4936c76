//! Brute-force ground truth: the best origin-centered inscribed radius over
//! all subsets of at most `k` vertices.

use crate::error::{GeometryError, Result};
use crate::polytope::{extreme_points, inscribed_radius_origin, VPolytope};
use crate::scalar::{binomial, Scalar};

/// Cap on the number of subsets examined.
pub const ORACLE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<S> {
    /// Input indices, ascending.
    pub best_indices: Vec<usize>,
    pub best_radius_sq: S,
    pub best_radius: f64,
    pub subsets_evaluated: u64,
}

/// Relative gap below the floating-point optimum within which subsets are
/// re-evaluated exactly.
pub const SCREEN_MARGIN: f64 = 1e-6;

/// Squared inscribed radius of a subset; 0 when the origin is not interior.
fn subset_score<S: Scalar>(ext: &VPolytope<S>, subset: &[usize], d: usize) -> Result<S> {
    if subset.len() <= d {
        return Ok(S::zero());
    }
    Ok(inscribed_radius_origin(&ext.subset(subset))?.radius_sq)
}

/// Subsets of `{0..n}` with `1 ≤ size ≤ k`, in lexicographic order.
fn lex_subsets(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        for i in start..n {
            cur.push(i);
            visit(cur);
            if cur.len() < k {
                rec(i + 1, n, k, cur, visit);
            }
            cur.pop();
        }
    }
    if k > 0 {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut visit);
    }
}

/// Maximizes the inscribed radius over vertex subsets of size at most `k`.
///
/// Subsets whose hull misses the origin in its interior score 0. The
/// lexicographically first maximizer is returned. In exact arithmetic a
/// floating-point pass first discards subsets more than [`SCREEN_MARGIN`]
/// below the best; the survivors are compared exactly.
pub fn best_subset_radius<S: Scalar>(q: &VPolytope<S>, k: usize) -> Result<OracleResult<S>> {
    let ext = extreme_points(q);
    let n = ext.len();
    let d = q.dim();
    let k = k.min(n);
    let count: u128 = (1..=k).map(|s| binomial(n, s)).sum();
    if count > ORACLE_CAP {
        return Err(GeometryError::EnumerationTooLarge {
            count,
            cap: ORACLE_CAP,
        });
    }
    let all: Vec<Vec<usize>> = {
        let mut v = Vec::with_capacity(count as usize);
        lex_subsets(n, k, |s| v.push(s.to_vec()));
        v
    };
    let evaluated = all.len() as u64;
    let candidates: Vec<&Vec<usize>> = if S::EXACT {
        // floating screen; only near-optimal subsets are evaluated exactly
        let ext_f = ext.to_f64();
        let mut scores = Vec::with_capacity(all.len());
        for subset in &all {
            scores.push(subset_score(&ext_f, subset, d)?);
        }
        let best = scores.iter().cloned().fold(0.0f64, f64::max);
        let cut = best - SCREEN_MARGIN * best.max(1.0);
        all.iter().zip(&scores).filter(|(_, &s)| s >= cut).map(|(s, _)| s).collect()
    } else {
        all.iter().collect()
    };
    let beats = |a: &S, b: &S| -> bool {
        if S::EXACT {
            a > b
        } else {
            a.to_f64() > b.to_f64() + S::eps().to_f64() * b.to_f64().abs().max(1.0)
        }
    };
    let mut best: Option<(Vec<usize>, S)> = None;
    for subset in candidates {
        let score = subset_score(&ext, subset, d)?;
        let replace = match &best {
            None => true,
            Some((_, b)) => beats(&score, b),
        };
        if replace {
            best = Some((subset.clone(), score));
        }
    }
    let (positions, radius_sq) = best.unwrap_or_else(|| (Vec::new(), S::zero()));
    let mut best_indices: Vec<usize> = positions.iter().map(|&i| ext.sources()[i]).collect();
    best_indices.sort_unstable();
    Ok(OracleResult {
        best_indices,
        best_radius: radius_sq.to_f64().max(0.0).sqrt(),
        best_radius_sq: radius_sq,
        subsets_evaluated: evaluated,
    })
}
