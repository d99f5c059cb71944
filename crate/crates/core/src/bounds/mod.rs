//! Closed-form eigenvalue bounds for the clamped poly-Laplacian.
//!
//! The central object is the collar-driven upper bound on the running
//! average `(1/k) Σ_{j≤k} Λ_j` ([`theorem_upper`]), together with an
//! independent re-derivation of the same number by radial quadrature of the
//! cutoff-function energy over the frequency ball ([`theorem_upper_assembled`]).
//! The classical lower and upper bounds live in [`classical`].

use core::fmt;

use crate::geometry::{self, CollarSpec, Domain, GeometryError};
use crate::math::{self, PI};

pub mod classical;
mod coefficients;
mod theorem;

pub use classical::{
    cheng_qi_wei_lower, cheng_wei_clamped_upper, cheng_wei_terms, levine_protter_lower,
    li_yau_lower, polya_tiling_lower, ppw_next_upper, weyl_average, weyl_kth, yang_next_upper,
    LpVariant,
};
pub use coefficients::{
    ball_moment, coeff_a1, coeff_a2, coefficient_case, is_theta_branch, collar_energy_factor, Branch,
    CoefficientCase, Parity,
};
pub use theorem::{
    corollary_alphas, corollary_upper, optimize_sigma0, plate_coefficients, plate_comparison,
    plate_threshold, theorem_upper, theorem_upper_assembled, CorollaryBound, TermComparison,
    TheoremBound, DEFAULT_SIGMA0_GRID,
};

#[derive(Debug, Clone, PartialEq)]
pub enum BoundsError {
    Geometry(GeometryError),
    InvalidOrder(usize),
    InvalidCount(usize),
    DimensionMismatch { spec: usize, domain: usize },
    /// Bound only stated for a particular `l`.
    RequiresOrder { expected: usize, got: usize },
    UndefinedCoefficient { n: usize, l: usize },
    DivergentMoment { n: usize, p: i32 },
    NoAdmissibleSigma0 { k: usize },
    InvalidTheta(f64),
    EmptyPrefix,
    NonPositivePrefix,
    NonMonotonePrefix,
    /// Negative discriminant in the Yang-type quadratic.
    InconsistentPrefix,
    CorollaryPrecondition { k: usize, delta0: f64 },
    InvalidParameter(&'static str),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Geometry(e) => write!(f, "geometry: {e}"),
            Self::InvalidOrder(l) => write!(f, "poly-harmonic order must be >= 1, got {l}"),
            Self::InvalidCount(k) => write!(f, "eigenvalue count k must be >= 1, got {k}"),
            Self::DimensionMismatch { spec, domain } => {
                write!(f, "problem dimension {spec} does not match domain dimension {domain}")
            }
            Self::RequiresOrder { expected, got } => {
                write!(f, "bound requires l = {expected}, got l = {got}")
            }
            Self::UndefinedCoefficient { n, l } => {
                write!(f, "coefficient undefined at n = {n}, l = {l} (zero denominator)")
            }
            Self::DivergentMoment { n, p } => {
                write!(f, "ball moment diverges for n = {n}, p = {p}")
            }
            Self::NoAdmissibleSigma0 { k } => write!(f, "no admissible sigma0 for k = {k}"),
            Self::InvalidTheta(t) => write!(f, "collar ratio must lie in [0, 1), got {t}"),
            Self::EmptyPrefix => write!(f, "spectrum prefix is empty"),
            Self::NonPositivePrefix => write!(f, "spectrum prefix has non-positive entries"),
            Self::NonMonotonePrefix => write!(f, "spectrum prefix is not nondecreasing"),
            Self::InconsistentPrefix => {
                write!(f, "inconsistent prefix: Yang-type quadratic has no real root")
            }
            Self::CorollaryPrecondition { k, delta0 } => write!(
                f,
                "corollary needs delta0/k^(tau/n) < 1 and k >= delta0^n (k = {k}, delta0 = {delta0})"
            ),
            Self::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl core::error::Error for BoundsError {}

impl From<GeometryError> for BoundsError {
    fn from(e: GeometryError) -> Self {
        Self::Geometry(e)
    }
}

/// One eigenvalue problem: dimension `n`, order `l`, domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    n: usize,
    l: usize,
    domain: Domain,
}

impl ProblemSpec {
    pub fn new(l: usize, domain: Domain) -> Result<Self, BoundsError> {
        if l == 0 {
            return Err(BoundsError::InvalidOrder(l));
        }
        Ok(Self { n: domain.dim(), l, domain })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn volume(&self) -> f64 {
        geometry::volume(&self.domain)
    }

    /// `(2π)^m / (B_n V)^{m/n}`, the Weyl-type scale with exponent `m`
    /// (which may be negative).
    pub(crate) fn weyl_scale(&self, m: f64) -> f64 {
        weyl_scale(self.n, self.volume(), m)
    }
}

pub(crate) fn unit_ball(n: usize) -> f64 {
    geometry::unit_ball_volume(n).unwrap_or(f64::NAN)
}

pub(crate) fn weyl_scale(n: usize, volume: f64, m: f64) -> f64 {
    math::powf(2.0 * PI, m) / math::powf(unit_ball(n) * volume, m / n as f64)
}

/// Whether a bound is evaluated at `k` as stated, or at `1 + k` as in the
/// proof (where it bounds the average of the first `k + 1` eigenvalues).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexForm {
    #[default]
    Stated,
    Proof,
}

impl IndexForm {
    /// The `k`-power argument.
    pub fn effective(&self, k: usize) -> f64 {
        match self {
            IndexForm::Stated => k as f64,
            IndexForm::Proof => (k + 1) as f64,
        }
    }
}

/// Free parameters of the collar bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub sigma0: f64,
    /// Collar ratio `θ = V(Ω_{σ₀}) / V(Ω)`.
    pub theta: f64,
    pub delta0: f64,
    pub tau: f64,
    pub k: usize,
}

impl BoundParams {
    /// Params for `spec` at `σ₀`, with `θ` computed from the domain.
    pub fn for_spec(spec: &ProblemSpec, sigma0: f64, k: usize) -> Result<Self, BoundsError> {
        if k == 0 {
            return Err(BoundsError::InvalidCount(k));
        }
        let theta = geometry::collar_ratio(spec.domain(), CollarSpec::new(sigma0)?);
        Ok(Self { sigma0, theta, delta0: 0.0, tau: 1.0, k })
    }

    pub fn with_decay(mut self, delta0: f64, tau: f64) -> Self {
        self.delta0 = delta0;
        self.tau = tau;
        self
    }

    /// `σ₀² > sup |x|²`.
    pub fn sigma_admissible(&self, spec: &ProblemSpec) -> bool {
        self.sigma0 * self.sigma0 > geometry::sup_norm_sq(spec.domain())
    }

    /// `k ≥ V(Ω) σ₀ⁿ`.
    pub fn k_admissible(&self, spec: &ProblemSpec) -> bool {
        self.k as f64 >= spec.volume() * math::powi(self.sigma0, spec.n() as i32)
    }

    pub fn is_degenerate(&self) -> bool {
        self.theta >= 1.0
    }
}
