//! Dense symmetric and symmetric-definite eigenvalue problems.
//!
//! `S x = λ M x` is reduced to a standard problem through the Cholesky factor
//! of `M`, tridiagonalised with Householder reflections and diagonalised by
//! implicit QL iterations (the EISPACK `tred2`/`tql2` pair).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use super::SolveError;
use crate::math;

/// Row-major dense square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds from row-major data; `data.len()` must be a perfect square.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self, SolveError> {
        if data.len() != n * n {
            return Err(SolveError::DimensionMismatch { expected: n * n, got: data.len() });
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest `|a_ij - a_ji|` relative to the largest entry.
    pub fn asymmetry(&self) -> f64 {
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(math::abs(*v)));
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max(math::abs(self[(i, j)] - self[(j, i)]));
            }
        }
        worst / scale
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.n, other.n);
        let mut out = Matrix::zeros(a * b);
        for i in 0..a {
            for k in 0..a {
                let s = self[(i, k)];
                if s == 0.0 {
                    continue;
                }
                for j in 0..b {
                    for m in 0..b {
                        out[(i * b + j, k * b + m)] = s * other[(j, m)];
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, alpha: f64, other: &Matrix) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    fn symmetrize(&mut self) {
        for i in 0..self.n {
            for j in 0..i {
                let v = 0.5 * (self[(i, j)] + self[(j, i)]);
                self[(i, j)] = v;
                self[(j, i)] = v;
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Lower Cholesky factor `L` with `M = L Lᵀ`.
pub fn cholesky(m: &Matrix) -> Result<Matrix, SolveError> {
    let n = m.dim();
    let mut l = Matrix::zeros(n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(SolveError::NotPositiveDefinite { size: n, pivot: j });
        }
        let d = math::sqrt(d);
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Solves `L X = B` in place for lower-triangular `L`, column by column.
fn forward_solve(l: &Matrix, b: &mut Matrix) {
    let n = l.dim();
    for c in 0..n {
        for i in 0..n {
            let mut s = b[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * b[(k, c)];
            }
            b[(i, c)] = s / l[(i, i)];
        }
    }
}

/// Solves `Lᵀ x = y` for lower-triangular `L`.
fn backward_solve_transposed(l: &Matrix, y: &[f64]) -> Vec<f64> {
    let n = l.dim();
    let mut x = y.to_vec();
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in (i + 1)..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Eigenpairs of a symmetric matrix: values ascending, `vectors[k]` is the
/// unit eigenvector of `values[k]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

const MAX_QL_SWEEPS: usize = 60;

/// Householder tridiagonalisation + implicit QL for a symmetric matrix.
pub fn symmetric_eigen(a: &Matrix) -> Result<SymmetricEigen, SolveError> {
    let n = a.dim();
    if n == 0 {
        return Ok(SymmetricEigen { values: Vec::new(), vectors: Vec::new() });
    }
    let mut v = a.clone();
    v.symmetrize();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = order
        .iter()
        .map(|&c| (0..n).map(|r| v[(r, c)]).collect())
        .collect();
    Ok(SymmetricEigen { values, vectors })
}

fn tred2(v: &mut Matrix, d: &mut [f64], e: &mut [f64]) {
    let n = v.dim();
    for j in 0..n {
        d[j] = v[(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += math::abs(*dk);
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
                v[(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = math::sqrt(h);
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[(j, i)] = f;
                g = e[j] + v[(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[(k, j)] * d[k];
                    e[k] += v[(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    // accumulate transformations
    for i in 0..(n - 1) {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    v[(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = 0.0;
    }
    v[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

fn tql2(v: &mut Matrix, d: &mut [f64], e: &mut [f64]) -> Result<(), SolveError> {
    let n = v.dim();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(math::abs(d[l]) + math::abs(e[l]));
        let mut m = l;
        while m < n - 1 {
            if math::abs(e[m]) <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_QL_SWEEPS {
                    return Err(SolveError::NoConvergence { index: l });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if math::abs(e[l]) <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Eigenpairs of `S x = λ M x`; vectors are `M`-orthonormal.
#[derive(Debug, Clone)]
pub struct GeneralizedEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl GeneralizedEigen {
    /// `‖S x − λ M x‖` for pair `k`.
    pub fn residual(&self, s: &Matrix, m: &Matrix, k: usize) -> f64 {
        let x = &self.vectors[k];
        let sx = s.mul_vec(x);
        let mx = m.mul_vec(x);
        let lam = self.values[k];
        math::sqrt(sx.iter().zip(&mx).map(|(a, b)| (a - lam * b) * (a - lam * b)).sum())
    }
}

/// Solves the symmetric-definite problem `S x = λ M x`.
pub fn generalized_symmetric_eigen(s: &Matrix, m: &Matrix) -> Result<GeneralizedEigen, SolveError> {
    if s.dim() != m.dim() {
        return Err(SolveError::DimensionMismatch { expected: s.dim(), got: m.dim() });
    }
    let l = cholesky(m)?;
    // C = L⁻¹ S L⁻ᵀ
    let mut y = s.clone();
    forward_solve(&l, &mut y);
    let n = s.dim();
    let mut c = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            c[(i, j)] = y[(j, i)];
        }
    }
    forward_solve(&l, &mut c);
    let eig = symmetric_eigen(&c)?;
    let vectors = eig
        .vectors
        .iter()
        .map(|yv| backward_solve_transposed(&l, yv))
        .collect();
    Ok(GeneralizedEigen { values: eig.values, vectors })
}

/// Eigenvalues of `S x = λ M x`, ascending.
pub fn dense_generalized_symmetric_eig(s: &Matrix, m: &Matrix) -> Result<Vec<f64>, SolveError> {
    Ok(generalized_symmetric_eigen(s, m)?.values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pencil() {
        for n in [1, 2, 7] {
            let i = Matrix::identity(n);
            let vals = dense_generalized_symmetric_eig(&i, &i).unwrap();
            assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-14));
        }
    }

    #[test]
    fn diagonal_pencil() {
        let s = Matrix::from_diag(&[3.0, 1.0, 2.0]);
        let vals = dense_generalized_symmetric_eig(&s, &Matrix::identity(3)).unwrap();
        assert_eq!(vals.len(), 3);
        for (v, e) in vals.iter().zip([1.0, 2.0, 3.0]) {
            assert!((v - e).abs() < 1e-14);
        }
    }

    #[test]
    fn non_pd_mass_rejected() {
        let m = Matrix::from_diag(&[1.0, -1.0]);
        assert_eq!(
            dense_generalized_symmetric_eig(&Matrix::identity(2), &m).unwrap_err(),
            SolveError::NotPositiveDefinite { size: 2, pivot: 1 }
        );
    }

    #[test]
    fn small_known_pencil() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let s = Matrix::from_row_major(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let vals = dense_generalized_symmetric_eig(&s, &Matrix::identity(2)).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn kron_shapes() {
        let a = Matrix::from_row_major(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let k = a.kron(&Matrix::identity(2));
        assert_eq!(k.dim(), 4);
        assert_eq!(k[(0, 2)], 2.0);
        assert_eq!(k[(3, 1)], 3.0);
        assert_eq!(k[(1, 0)], 0.0);
    }
}
