//! Dense linear algebra over [`Scalar`]: solves, determinants, ranks, and a
//! cyclic Jacobi eigensolver for symmetric `f64` matrices.

use std::ops::{Index, IndexMut};

use crate::error::{GeometryError, Result};
use crate::scalar::{dot, Scalar};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn diag(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<S>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn matmul(&self, other: &Matrix<S>) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero_tol() && S::EXACT {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Largest absolute entry, as f64.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solves `self · x = b` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>> {
        if self.rows != self.cols {
            return Err(GeometryError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(GeometryError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let threshold = pivot_threshold::<S>(self);
        for k in 0..n {
            let p = pivot_row(&a, k);
            if a[(p, k)].abs() <= threshold {
                return Err(GeometryError::SingularMatrix);
            }
            a.swap_rows(k, p);
            rhs.swap(k, p);
            for i in k + 1..n {
                if a[(i, k)].is_zero_tol() && S::EXACT {
                    continue;
                }
                let f = a[(i, k)].clone() / a[(k, k)].clone();
                for j in k..n {
                    let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
                rhs[i] = rhs[i].clone() - f * rhs[k].clone();
            }
        }
        let mut x = vec![S::zero(); n];
        for i in (0..n).rev() {
            let mut s = rhs[i].clone();
            for j in i + 1..n {
                s = s - a[(i, j)].clone() * x[j].clone();
            }
            x[i] = s / a[(i, i)].clone();
        }
        Ok(x)
    }

    /// Determinant as the signed product of LU pivots.
    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for k in 0..n {
            let p = pivot_row(&a, k);
            if a[(p, k)] == S::zero() {
                return S::zero();
            }
            if p != k {
                a.swap_rows(k, p);
                det = -det;
            }
            det = det * a[(k, k)].clone();
            for i in k + 1..n {
                if a[(i, k)] == S::zero() {
                    continue;
                }
                let f = a[(i, k)].clone() / a[(k, k)].clone();
                for j in k..n {
                    let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Numerical rank: number of pivots above tolerance after row reduction.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let threshold = pivot_threshold::<S>(self);
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let mut best = rank;
            for i in rank..self.rows {
                if a[(i, col)].abs() > a[(best, col)].abs() {
                    best = i;
                }
            }
            if a[(best, col)].abs() <= threshold {
                continue;
            }
            a.swap_rows(rank, best);
            for i in rank + 1..self.rows {
                if a[(i, col)] == S::zero() {
                    continue;
                }
                let f = a[(i, col)].clone() / a[(rank, col)].clone();
                for j in col..self.cols {
                    let v = a[(i, j)].clone() - f.clone() * a[(rank, j)].clone();
                    a[(i, j)] = v;
                }
            }
            rank += 1;
        }
        rank
    }
}

fn pivot_row<S: Scalar>(a: &Matrix<S>, k: usize) -> usize {
    let mut p = k;
    if S::EXACT {
        // first nonzero keeps rational entries small
        for i in k..a.rows {
            if a[(i, k)] != S::zero() {
                return i;
            }
        }
        return k;
    }
    for i in k + 1..a.rows {
        if a[(i, k)].abs() > a[(p, k)].abs() {
            p = i;
        }
    }
    p
}

fn pivot_threshold<S: Scalar>(m: &Matrix<S>) -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::from_f64(S::eps().to_f64() * m.max_abs().max(1.0))
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Solves `m · x = b`.
pub fn solve_linear<S: Scalar>(m: &Matrix<S>, b: &[S]) -> Result<Vec<S>> {
    m.solve(b)
}

pub fn determinant<S: Scalar>(m: &Matrix<S>) -> S {
    m.determinant()
}

/// Symmetric `f64` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(Matrix<f64>);

/// Cap on cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

impl SymMatrix {
    /// Wraps `m` after checking symmetry within τ (relative to its largest entry).
    pub fn new(m: Matrix<f64>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(GeometryError::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        let tol = crate::scalar::tolerance() * m.max_abs().max(1.0);
        for i in 0..m.rows() {
            for j in 0..i {
                if (m[(i, j)] - m[(j, i)]).abs() > tol {
                    return Err(GeometryError::InvalidInput(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let mut m = m;
        for i in 0..m.rows() {
            for j in 0..i {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = avg;
                m[(j, i)] = avg;
            }
        }
        Ok(SymMatrix(m))
    }

    pub fn identity(d: usize) -> Self {
        SymMatrix(Matrix::identity(d))
    }

    pub fn diag(values: &[f64]) -> Self {
        SymMatrix(Matrix::diag(values))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<f64> {
        &self.0
    }

    pub fn quad_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.0.mul_vec(x))
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// Eigendecomposition `M = V diag(λ) Vᵀ`, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    /// Eigenvectors stored as columns.
    pub vectors: Matrix<f64>,
}

/// Cyclic Jacobi eigensolver.
pub fn sym_eig(m: &SymMatrix) -> Result<SymEigen> {
    let n = m.dim();
    let mut a = m.0.clone();
    let mut v = Matrix::<f64>::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(GeometryError::ConvergenceFailure {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, new)] = v[(k, old)];
        }
    }
    Ok(SymEigen { values, vectors })
}

fn positive_definite_eigen(m: &SymMatrix) -> Result<SymEigen> {
    let eig = sym_eig(m)?;
    let min = eig.values.last().copied().unwrap_or(1.0);
    if min <= crate::scalar::tolerance() {
        return Err(GeometryError::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    Ok(eig)
}

fn spectral_function(eig: &SymEigen, f: impl Fn(f64) -> f64) -> SymMatrix {
    let n = eig.values.len();
    let mut out = Matrix::zeros(n, n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let w = f(lambda);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += w * eig.vectors[(i, k)] * eig.vectors[(j, k)];
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (out[(i, j)] + out[(j, i)]);
            out[(i, j)] = avg;
            out[(j, i)] = avg;
        }
    }
    SymMatrix(out)
}

/// `M^{-1/2}` for positive definite `M`.
pub fn inv_sqrt_psd(m: &SymMatrix) -> Result<SymMatrix> {
    let eig = positive_definite_eigen(m)?;
    Ok(spectral_function(&eig, |l| 1.0 / l.sqrt()))
}

/// `M^{-1}` for positive definite `M`, through the eigendecomposition.
pub fn inverse_pd(m: &SymMatrix) -> Result<SymMatrix> {
    let eig = positive_definite_eigen(m)?;
    Ok(spectral_function(&eig, |l| 1.0 / l))
}

/// `tr(M⁻¹) = Σ 1/λᵢ`.
pub fn trace_inverse(m: &SymMatrix) -> Result<f64> {
    let eig = positive_definite_eigen(m)?;
    Ok(eig.values.iter().map(|l| 1.0 / l).sum())
}
