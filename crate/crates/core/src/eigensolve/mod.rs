//! Reference spectra for the clamped poly-Laplacian.
//!
//! Exact spectra are available for `l = 1` on boxes (separation of
//! variables) and for `l = 2` on intervals (clamped beam roots). Everything
//! else goes through a Rayleigh-Ritz Galerkin projection whose values are
//! upper approximations of the true eigenvalues.

use alloc::vec::Vec;
use core::fmt;

mod exact;
pub mod linalg;
mod quadrature;
mod ritz;

pub use exact::{clamped_beam_root, clamped_beam_spectrum, exact_box_spectrum_l1};
pub use linalg::{dense_generalized_symmetric_eig, generalized_symmetric_eigen, Matrix};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use ritz::{
    clamped_basis_derivative, interval_matrices, rayleigh_ritz_interval, rayleigh_ritz_square,
    square_matrices, CONVERGENCE_REL_TOL, REFINEMENT_STEP,
};

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    InvalidArgument(&'static str),
    BasisTooSmall { basis: usize, required: usize },
    DimensionMismatch { expected: usize, got: usize },
    NotPositiveDefinite { size: usize, pivot: usize },
    NoConvergence { index: usize },
    BracketFailure { index: usize },
    InvalidSpectrum(&'static str),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Self::BasisTooSmall { basis, required } => {
                write!(f, "basis size {basis} too small, need at least {required}")
            }
            Self::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Self::NotPositiveDefinite { size, pivot } => write!(
                f,
                "mass matrix of size {size} is not positive definite (Cholesky pivot {pivot})"
            ),
            Self::NoConvergence { index } => {
                write!(f, "QL iteration did not converge for eigenvalue {index}")
            }
            Self::BracketFailure { index } => write!(f, "failed to bracket beam root {index}"),
            Self::InvalidSpectrum(msg) => write!(f, "invalid spectrum: {msg}"),
        }
    }
}

impl core::error::Error for SolveError {}

/// How a [`Spectrum`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactBoxL1,
    BeamRoots,
    RayleighRitz,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ExactBoxL1 => "exact-box-l1",
            Method::BeamRoots => "beam-roots",
            Method::RayleighRitz => "rayleigh-ritz",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Nondecreasing list of positive eigenvalue approximations.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    method: Method,
    basis_size: usize,
    converged_count: usize,
}

impl Spectrum {
    pub fn new(
        values: Vec<f64>,
        method: Method,
        basis_size: usize,
        converged_count: usize,
    ) -> Result<Self, SolveError> {
        if values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(SolveError::InvalidSpectrum("eigenvalues must be positive and finite"));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(SolveError::InvalidSpectrum("eigenvalues must be nondecreasing"));
        }
        if converged_count > values.len() {
            return Err(SolveError::InvalidSpectrum("converged_count exceeds length"));
        }
        Ok(Self { values, method, basis_size, converged_count })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// 0 for exact methods.
    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    pub fn converged_count(&self) -> usize {
        self.converged_count
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Leading values that passed the convergence test.
    pub fn converged(&self) -> &[f64] {
        &self.values[..self.converged_count]
    }

    /// `(1/k) Σ_{j≤k} Λ_j` for `k = 1..=len`.
    pub fn running_averages(&self) -> Vec<f64> {
        let mut sum = 0.0;
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                sum += v;
                sum / (i + 1) as f64
            })
            .collect()
    }
}
