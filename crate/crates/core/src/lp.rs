//! Dense two-phase simplex for `min cᵀx  s.t.  Ax = b, x ≥ 0`.
//!
//! Bland's rule is used for both entering and leaving variables, so the
//! method terminates under exact arithmetic and degenerate pivots alike.

use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<S> {
    pub x: Vec<S>,
    pub objective: S,
    /// Basic variable of each constraint row; `None` for redundant rows.
    pub basis: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    Optimal(LpSolution<S>),
    Infeasible,
    Unbounded,
}

impl<S> LpOutcome<S> {
    pub fn optimal(self) -> Option<LpSolution<S>> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

struct Tableau<S> {
    t: Matrix<S>,
    obj: Vec<S>,
    basis: Vec<usize>,
    width: usize,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width + 1;
        let p = self.t[(row, col)].clone();
        for j in 0..w {
            let v = self.t[(row, j)].clone() / p.clone();
            self.t[(row, j)] = v;
        }
        for i in 0..self.t.rows() {
            if i == row {
                continue;
            }
            let f = self.t[(i, col)].clone();
            if f == S::zero() {
                continue;
            }
            for j in 0..w {
                let v = self.t[(i, j)].clone() - f.clone() * self.t[(row, j)].clone();
                self.t[(i, j)] = v;
            }
            if !S::EXACT {
                self.t[(i, col)] = S::zero();
            }
        }
        let f = self.obj[col].clone();
        if f != S::zero() {
            for j in 0..w {
                let v = self.obj[j].clone() - f.clone() * self.t[(row, j)].clone();
                self.obj[j] = v;
            }
            if !S::EXACT {
                self.obj[col] = S::zero();
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland pivots over columns `0..allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let eps = S::eps();
        let neg_eps = -eps.clone();
        let rhs = self.rhs();
        loop {
            let entering = (0..allowed).find(|&j| self.obj[j] < neg_eps);
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.t.rows() {
                let a = self.t[(i, col)].clone();
                if a <= eps {
                    continue;
                }
                let ratio = self.t[(i, rhs)].clone() / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        let diff = ratio.clone() - best.clone();
                        if diff.is_neg() || (diff.is_zero_tol() && self.basis[i] < self.basis[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
            match leave {
                None => return false,
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }
}

/// Solves `min cᵀx s.t. Ax = b, x ≥ 0`.
pub fn minimize<S: Scalar>(a: &Matrix<S>, b: &[S], c: &[S]) -> LpOutcome<S> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);
    let width = n + m;
    let mut t = Matrix::zeros(m, width + 1);
    let mut b_scale = 1.0f64;
    for i in 0..m {
        let flip = b[i] < S::zero();
        for j in 0..n {
            let v = a[(i, j)].clone();
            t[(i, j)] = if flip { -v } else { v };
        }
        t[(i, n + i)] = S::one();
        t[(i, width)] = if flip { -b[i].clone() } else { b[i].clone() };
        b_scale = b_scale.max(b[i].abs().to_f64());
    }
    // phase 1: minimize the sum of artificials
    let mut obj = vec![S::zero(); width + 1];
    for j in n..width {
        obj[j] = S::one();
    }
    for i in 0..m {
        for j in 0..=width {
            if j >= n && j < width {
                continue;
            }
            let v = obj[j].clone() - t[(i, j)].clone();
            obj[j] = v;
        }
    }
    let mut tab = Tableau {
        t,
        obj,
        basis: (n..width).collect(),
        width,
    };
    tab.optimize(width);
    let infeasibility = -tab.obj[width].clone();
    let feas_tol = if S::EXACT {
        S::zero()
    } else {
        S::from_f64(10.0 * S::eps().to_f64() * b_scale)
    };
    if infeasibility > feas_tol {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis
    let mut redundant = vec![false; m];
    for i in 0..m {
        if tab.basis[i] < n {
            continue;
        }
        let col = (0..n).find(|&j| !tab.t[(i, j)].is_zero_tol());
        match col {
            Some(j) => tab.pivot(i, j),
            None => redundant[i] = true,
        }
    }
    // phase 2
    let mut obj = vec![S::zero(); width + 1];
    obj[..n].clone_from_slice(c);
    for i in 0..m {
        let bv = tab.basis[i];
        if bv >= n {
            continue;
        }
        let cb = c[bv].clone();
        if cb == S::zero() {
            continue;
        }
        for j in 0..=width {
            let v = obj[j].clone() - cb.clone() * tab.t[(i, j)].clone();
            obj[j] = v;
        }
    }
    tab.obj = obj;
    if !tab.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![S::zero(); n];
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let bv = tab.basis[i];
        if redundant[i] || bv >= n {
            basis.push(None);
            continue;
        }
        let mut v = tab.t[(i, width)].clone();
        if v < S::zero() && !S::EXACT {
            v = S::zero();
        }
        x[bv] = v;
        basis.push(Some(bv));
    }
    let objective = x
        .iter()
        .zip(c)
        .fold(S::zero(), |acc, (xi, ci)| acc + xi.clone() * ci.clone());
    LpOutcome::Optimal(LpSolution {
        x,
        objective,
        basis,
    })
}

/// Solves `max cᵀx s.t. Ax = b, x ≥ 0`; the returned objective is the maximum.
pub fn maximize<S: Scalar>(a: &Matrix<S>, b: &[S], c: &[S]) -> LpOutcome<S> {
    let neg: Vec<S> = c.iter().map(|v| -v.clone()).collect();
    match minimize(a, b, &neg) {
        LpOutcome::Optimal(mut s) => {
            s.objective = -s.objective;
            LpOutcome::Optimal(s)
        }
        other => other,
    }
}
