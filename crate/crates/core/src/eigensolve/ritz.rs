//! Rayleigh-Ritz projection onto polynomial trial spaces that satisfy the
//! clamped conditions exactly.
//!
//! On the reference interval `t ∈ [-1, 1]` the trial functions are
//! `φ_j(t) = ((1 - t²)/4)^l · P_j^{(2l,2l)}(t)`, so `φ_j` and its first
//! `l - 1` derivatives vanish at both endpoints. The Jacobi family is
//! orthogonal for the weight `(1 - t²)^{2l}`, which makes the mass matrix
//! diagonal up to rounding. All integrands are polynomials and are
//! integrated exactly by Gauss-Legendre.

use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{dense_generalized_symmetric_eig, Matrix};
use super::quadrature::gauss_legendre;
use super::{Method, SolveError, Spectrum};
use crate::math;

/// Relative change under `N → N + REFINEMENT_STEP` below which a value
/// counts as converged.
pub const CONVERGENCE_REL_TOL: f64 = 1e-6;
pub const REFINEMENT_STEP: usize = 4;

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Jacobi polynomial `P_n^{(a,b)}(t)`.
fn jacobi(n: usize, a: f64, b: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p = (a + 1.0) + (a + b + 2.0) * (t - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c0 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * t + a * a - b * b);
        let c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let next = (c1 * p - c2 * p_prev) / c0;
        p_prev = p;
        p = next;
    }
    p
}

/// `d^k/dt^k P_n^{(a,a)}(t)`.
fn jacobi_symmetric_derivative(n: usize, a: f64, k: usize, t: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    let scale = (1..=k).fold(1.0, |acc, i| acc * (2.0 * a + n as f64 + i as f64) / 2.0);
    scale * jacobi(n - k, a + k as f64, a + k as f64, t)
}

/// `d^m/dt^m ((1 - t²)/4)^l`, expanded in monomials.
fn weight_derivative(l: usize, m: usize, t: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..=l {
        let p = 2 * i;
        if p < m {
            continue;
        }
        let falling = ((p - m + 1)..=p).fold(1.0, |a, q| a * q as f64);
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(l, i) * falling * math::powi(t, (p - m) as i32);
    }
    acc / math::powi(4.0, l as i32)
}

/// `d^m/dt^m φ_j(t)` on the reference interval, by the Leibniz rule.
pub fn clamped_basis_derivative(l: usize, j: usize, m: usize, t: f64) -> f64 {
    let a = 2.0 * l as f64;
    (0..=m)
        .map(|i| binomial(m, i) * weight_derivative(l, i, t) * jacobi_symmetric_derivative(j, a, m - i, t))
        .sum()
}

/// Gram matrices `∫ φ_i^{(p)} φ_j^{(q)} dx` on `[0, length]` for the
/// `M`-normalised basis.
struct Basis1d {
    l: usize,
    size: usize,
    length: f64,
    weights: Vec<f64>,
    /// `tables[m][j][q]`: m-th reference derivative of φ_j at node q
    tables: Vec<Vec<Vec<f64>>>,
    scale: Vec<f64>,
}

impl Basis1d {
    fn new(l: usize, size: usize, length: f64, max_derivative: usize) -> Self {
        let rule = gauss_legendre(2 * l + size + 1);
        let tables: Vec<Vec<Vec<f64>>> = (0..=max_derivative)
            .map(|m| {
                (0..size)
                    .map(|j| rule.nodes.iter().map(|&t| clamped_basis_derivative(l, j, m, t)).collect())
                    .collect()
            })
            .collect();
        let mut basis = Self {
            l,
            size,
            length,
            weights: rule.weights,
            tables,
            scale: vec![1.0; size],
        };
        let raw_mass = basis.gram(0, 0);
        basis.scale = (0..size).map(|j| 1.0 / math::sqrt(raw_mass[(j, j)])).collect();
        basis
    }

    fn gram(&self, p: usize, q: usize) -> Matrix {
        // d/dx = (2/L) d/dt, dx = (L/2) dt
        let jac = math::powi(2.0 / self.length, (p + q) as i32) * self.length / 2.0;
        let mut g = Matrix::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                let s: f64 = self.tables[p][i]
                    .iter()
                    .zip(&self.tables[q][j])
                    .zip(&self.weights)
                    .map(|((a, b), w)| w * a * b)
                    .sum();
                g[(i, j)] = jac * s * self.scale[i] * self.scale[j];
            }
        }
        g
    }
}

/// Stiffness `∫ φ_i^{(l)} φ_j^{(l)}` and mass `∫ φ_i φ_j` on `[0, length]`.
pub fn interval_matrices(l: usize, length: f64, basis_size: usize) -> (Matrix, Matrix) {
    let basis = Basis1d::new(l, basis_size, length, l);
    (basis.gram(basis.l, basis.l), basis.gram(0, 0))
}

/// Tensor-product stiffness and mass on the square `[0, side]²`.
///
/// `l = 1`: `∫ ∇u·∇v = A₁⊗A₀ + A₀⊗A₁`.
/// `l = 2`: `∫ Δu Δv = A₂⊗A₀ + A₀⊗A₂ + B⊗Bᵀ + Bᵀ⊗B` with `B_ik = ∫ φ_i'' φ_k`.
pub fn square_matrices(l: usize, side: f64, per_dim: usize) -> Result<(Matrix, Matrix), SolveError> {
    let basis = Basis1d::new(l, per_dim, side, l);
    let a0 = basis.gram(0, 0);
    let mass = a0.kron(&a0);
    let stiffness = match l {
        1 => {
            let a1 = basis.gram(1, 1);
            let mut s = a1.kron(&a0);
            s.add_scaled(1.0, &a0.kron(&a1));
            s
        }
        2 => {
            let a2 = basis.gram(2, 2);
            let b = basis.gram(2, 0);
            let mut bt = Matrix::zeros(per_dim);
            for i in 0..per_dim {
                for j in 0..per_dim {
                    bt[(i, j)] = b[(j, i)];
                }
            }
            let mut s = a2.kron(&a0);
            s.add_scaled(1.0, &a0.kron(&a2));
            s.add_scaled(1.0, &b.kron(&bt));
            s.add_scaled(1.0, &bt.kron(&b));
            s
        }
        _ => return Err(SolveError::InvalidArgument("square solver supports l in {1, 2}")),
    };
    Ok((stiffness, mass))
}

fn converged_prefix(coarse: &[f64], fine: &[f64]) -> usize {
    coarse
        .iter()
        .zip(fine)
        .take_while(|(c, f)| math::abs(*c - *f) / math::abs(**f) < CONVERGENCE_REL_TOL)
        .count()
}

fn leading(values: Vec<f64>, count: usize) -> Vec<f64> {
    values.into_iter().take(count).collect()
}

/// Rayleigh-Ritz approximation of the first `count` eigenvalues of
/// `(-d²/dx²)^l` on `[0, length]` with clamped ends.
pub fn rayleigh_ritz_interval(
    l: usize,
    length: f64,
    basis_size: usize,
    count: usize,
) -> Result<Spectrum, SolveError> {
    if l == 0 {
        return Err(SolveError::InvalidArgument("order l must be at least 1"));
    }
    if !(length > 0.0) {
        return Err(SolveError::InvalidArgument("length must be positive"));
    }
    if count == 0 {
        return Err(SolveError::InvalidArgument("count must be at least 1"));
    }
    if basis_size < count + 2 {
        return Err(SolveError::BasisTooSmall { basis: basis_size, required: count + 2 });
    }
    let solve = |size: usize| {
        let (s, m) = interval_matrices(l, length, size);
        dense_generalized_symmetric_eig(&s, &m).map(|v| leading(v, count))
    };
    let coarse = solve(basis_size)?;
    let fine = solve(basis_size + REFINEMENT_STEP)?;
    let converged = converged_prefix(&coarse, &fine);
    Spectrum::new(coarse, Method::RayleighRitz, basis_size, converged)
}

/// Rayleigh-Ritz approximation on the square `[0, side]²` for `l ∈ {1, 2}`
/// with `per_dim²` tensor-product trial functions.
pub fn rayleigh_ritz_square(
    l: usize,
    side: f64,
    per_dim: usize,
    count: usize,
) -> Result<Spectrum, SolveError> {
    if !(1..=2).contains(&l) {
        return Err(SolveError::InvalidArgument("square solver supports l in {1, 2}"));
    }
    if !(side > 0.0) {
        return Err(SolveError::InvalidArgument("side must be positive"));
    }
    if count == 0 {
        return Err(SolveError::InvalidArgument("count must be at least 1"));
    }
    if per_dim < 4 {
        return Err(SolveError::BasisTooSmall { basis: per_dim, required: 4 });
    }
    if per_dim * per_dim < count + 2 {
        return Err(SolveError::BasisTooSmall { basis: per_dim * per_dim, required: count + 2 });
    }
    let solve = |n: usize| -> Result<Vec<f64>, SolveError> {
        let (s, m) = square_matrices(l, side, n)?;
        dense_generalized_symmetric_eig(&s, &m).map(|v| leading(v, count))
    };
    let coarse = solve(per_dim)?;
    let fine = solve(per_dim + REFINEMENT_STEP)?;
    let converged = converged_prefix(&coarse, &fine);
    Spectrum::new(coarse, Method::RayleighRitz, per_dim, converged)
}
