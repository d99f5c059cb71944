//! Admissible domains and the geometric quantities the bounds depend on.
//!
//! Only intervals, axis-aligned boxes and balls are supported: for these the
//! boundary collar `Ω_σ = {x ∈ Ω : dist(x, ∂Ω) < 1/σ}`, the moment of inertia
//! and `sup |x|²` all have exact closed forms. The Monte Carlo collar
//! estimator exists to cross-check those closed forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::math::{self, PI};

/// Smallest sample count accepted by [`collar_volume_mc`].
pub const MIN_MC_SAMPLES: usize = 1000;

/// Number of points in [`default_sigma_grid`].
pub const DEFAULT_SIGMA_GRID_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    ZeroDimension,
    NonPositiveExtent(f64),
    CenterDimension { expected: usize, got: usize },
    NonPositiveSigma(f64),
    TooFewSamples { samples: usize, min: usize },
    EmptyGrid,
    SigmaBelowThreshold { sigma: f64, threshold: f64 },
    InvalidTau(f64),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroDimension => write!(f, "dimension must be at least 1"),
            Self::NonPositiveExtent(v) => write!(f, "domain extent must be positive, got {v}"),
            Self::CenterDimension { expected, got } => {
                write!(f, "center has {got} coordinates, domain dimension is {expected}")
            }
            Self::NonPositiveSigma(s) => write!(f, "collar scale sigma must be positive, got {s}"),
            Self::TooFewSamples { samples, min } => {
                write!(f, "{samples} Monte Carlo samples requested, at least {min} required")
            }
            Self::EmptyGrid => write!(f, "sigma grid is empty"),
            Self::SigmaBelowThreshold { sigma, threshold } => write!(
                f,
                "sigma = {sigma} does not exceed V^(-1/n) = {threshold}"
            ),
            Self::InvalidTau(t) => write!(f, "decay exponent tau must be >= 1, got {t}"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// The shape of a domain, without its placement.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Interval { length: f64 },
    Box { sides: Vec<f64> },
    Ball { dim: usize, radius: f64 },
}

/// A bounded domain in `ℝⁿ` together with the position of its centroid.
///
/// Placement matters: the collar cutoff `|x|²/σ²` and the admissibility
/// condition `σ₀² > sup |x|²` both depend on where the domain sits. The
/// constructors center the centroid at the origin, which minimises
/// `sup |x|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    shape: Shape,
    center: Vec<f64>,
}

fn check_extent(v: f64) -> Result<f64, GeometryError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(GeometryError::NonPositiveExtent(v))
    }
}

impl Domain {
    pub fn interval(length: f64) -> Result<Self, GeometryError> {
        Ok(Self {
            shape: Shape::Interval { length: check_extent(length)? },
            center: vec![0.0],
        })
    }

    pub fn boxed(sides: &[f64]) -> Result<Self, GeometryError> {
        if sides.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        for &s in sides {
            check_extent(s)?;
        }
        Ok(Self {
            shape: Shape::Box { sides: sides.to_vec() },
            center: vec![0.0; sides.len()],
        })
    }

    /// Cube `[-side/2, side/2]^dim`.
    pub fn cube(dim: usize, side: f64) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        Self::boxed(&vec![side; dim])
    }

    pub fn ball(dim: usize, radius: f64) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        Ok(Self {
            shape: Shape::Ball { dim, radius: check_extent(radius)? },
            center: vec![0.0; dim],
        })
    }

    /// Moves the centroid to `center`.
    pub fn with_center(mut self, center: &[f64]) -> Result<Self, GeometryError> {
        if center.len() != self.dim() {
            return Err(GeometryError::CenterDimension {
                expected: self.dim(),
                got: center.len(),
            });
        }
        self.center = center.to_vec();
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Interval { .. } => 1,
            Shape::Box { sides } => sides.len(),
            Shape::Ball { dim, .. } => *dim,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Half-widths of the axis-aligned bounding box.
    fn half_widths(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Interval { length } => vec![length / 2.0],
            Shape::Box { sides } => sides.iter().map(|s| s / 2.0).collect(),
            Shape::Ball { dim, radius } => vec![*radius; *dim],
        }
    }

    /// Distance from `x` to the boundary, or `None` when `x` lies outside.
    pub fn boundary_distance(&self, x: &[f64]) -> Option<f64> {
        match &self.shape {
            Shape::Ball { radius, .. } => {
                let r2: f64 = x
                    .iter()
                    .zip(&self.center)
                    .map(|(xi, ci)| (xi - ci) * (xi - ci))
                    .sum();
                let r = math::sqrt(r2);
                (r <= *radius).then(|| radius - r)
            }
            _ => {
                let mut dist = f64::INFINITY;
                for ((xi, ci), h) in x.iter().zip(&self.center).zip(self.half_widths()) {
                    let d = h - math::abs(xi - ci);
                    if d < 0.0 {
                        return None;
                    }
                    dist = dist.min(d);
                }
                Some(dist)
            }
        }
    }
}

/// Inverse-length scale `σ` of the boundary collar `Ω_σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollarSpec {
    sigma: f64,
}

impl CollarSpec {
    pub fn new(sigma: f64) -> Result<Self, GeometryError> {
        if sigma > 0.0 && !sigma.is_nan() {
            Ok(Self { sigma })
        } else {
            Err(GeometryError::NonPositiveSigma(sigma))
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Collar width `1/σ`.
    pub fn width(&self) -> f64 {
        1.0 / self.sigma
    }
}

/// Volume `B_n = π^{n/2} / Γ(n/2 + 1)` of the unit ball in `ℝⁿ`.
pub fn unit_ball_volume(n: usize) -> Result<f64, GeometryError> {
    match n {
        0 => Err(GeometryError::ZeroDimension),
        1 => Ok(2.0),
        2 => Ok(PI),
        _ => {
            let half = n as f64 / 2.0;
            Ok(math::powf(PI, half) / math::gamma(half + 1.0))
        }
    }
}

fn ball_volume(dim: usize, radius: f64) -> f64 {
    // dim >= 1 is a Domain invariant
    unit_ball_volume(dim).unwrap_or(f64::NAN) * math::powi(radius, dim as i32)
}

pub fn volume(d: &Domain) -> f64 {
    match d.shape() {
        Shape::Interval { length } => *length,
        Shape::Box { sides } => sides.iter().product(),
        Shape::Ball { dim, radius } => ball_volume(*dim, *radius),
    }
}

/// Exact `V(Ω_σ)`, clamped to `V(Ω)` once the collar swallows the domain.
pub fn collar_volume(d: &Domain, c: CollarSpec) -> f64 {
    let w = c.width();
    match d.shape() {
        Shape::Interval { length } => (2.0 * w).min(*length),
        Shape::Box { sides } => {
            let inner: f64 = sides.iter().map(|s| (s - 2.0 * w).max(0.0)).product();
            volume(d) - inner
        }
        Shape::Ball { dim, radius } => {
            let inner = (radius - w).max(0.0);
            ball_volume(*dim, *radius) - ball_volume(*dim, inner)
        }
    }
}

/// `V(Ω_σ) / V(Ω)`, the collar ratio `θ`.
pub fn collar_ratio(d: &Domain, c: CollarSpec) -> f64 {
    (collar_volume(d, c) / volume(d)).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

#[inline]
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Monte Carlo estimate of `V(Ω_σ)` by uniform sampling of the bounding box.
///
/// Deterministic for a fixed `seed`.
pub fn collar_volume_mc(
    d: &Domain,
    c: CollarSpec,
    samples: usize,
    seed: u64,
) -> Result<McEstimate, GeometryError> {
    if samples < MIN_MC_SAMPLES {
        return Err(GeometryError::TooFewSamples { samples, min: MIN_MC_SAMPLES });
    }
    let half = d.half_widths();
    let box_volume: f64 = half.iter().map(|h| 2.0 * h).product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; d.dim()];
    let mut hits = 0usize;
    for _ in 0..samples {
        for ((xi, ci), h) in x.iter_mut().zip(d.center()).zip(&half) {
            *xi = ci + h * (2.0 * unit_f64(&mut rng) - 1.0);
        }
        if let Some(dist) = d.boundary_distance(&x) {
            if dist < c.width() {
                hits += 1;
            }
        }
    }
    let n = samples as f64;
    let p = hits as f64 / n;
    Ok(McEstimate {
        estimate: box_volume * p,
        std_error: box_volume * math::sqrt(p * (1.0 - p) / (n - 1.0)),
    })
}

/// Radius of the largest inscribed ball. The collar is a proper subset of
/// `Ω` exactly when `1/σ < inradius`.
pub fn inradius(d: &Domain) -> f64 {
    match d.shape() {
        Shape::Interval { length } => length / 2.0,
        Shape::Box { sides } => sides.iter().copied().fold(f64::INFINITY, f64::min) / 2.0,
        Shape::Ball { radius, .. } => *radius,
    }
}

/// `sup_{x ∈ Ω} |x|²` for the placed domain.
pub fn sup_norm_sq(d: &Domain) -> f64 {
    match d.shape() {
        Shape::Ball { radius, .. } => {
            let c = math::sqrt(d.center().iter().map(|x| x * x).sum());
            (c + radius) * (c + radius)
        }
        _ => d
            .center()
            .iter()
            .zip(d.half_widths())
            .map(|(c, h)| {
                let far = math::abs(*c) + h;
                far * far
            })
            .sum(),
    }
}

/// `I(Ω) = min_a ∫_Ω |x - a|² dx`, attained at the centroid.
pub fn moment_of_inertia(d: &Domain) -> f64 {
    match d.shape() {
        Shape::Interval { length } => length * length * length / 12.0,
        Shape::Box { sides } => volume(d) * sides.iter().map(|s| s * s).sum::<f64>() / 12.0,
        Shape::Ball { dim, radius } => {
            let n = *dim as f64;
            ball_volume(*dim, *radius) * radius * radius * n / (n + 2.0)
        }
    }
}

/// Smallest `δ₀` with `V(Ω_σ) ≤ δ₀ V(Ω)^{(n-τ)/n} σ^{-τ}` on every `σ` of
/// the grid.
pub fn collar_decay_delta0(d: &Domain, tau: f64, sigma_grid: &[f64]) -> Result<f64, GeometryError> {
    if !(tau >= 1.0) {
        return Err(GeometryError::InvalidTau(tau));
    }
    if sigma_grid.is_empty() {
        return Err(GeometryError::EmptyGrid);
    }
    let v = volume(d);
    let n = d.dim() as f64;
    let threshold = math::powf(v, -1.0 / n);
    let scale = math::powf(v, (n - tau) / n);
    let mut best = 0.0f64;
    for &sigma in sigma_grid {
        if !(sigma > threshold) {
            return Err(GeometryError::SigmaBelowThreshold { sigma, threshold });
        }
        let vs = collar_volume(d, CollarSpec::new(sigma)?);
        best = best.max(vs * math::powf(sigma, tau) / scale);
    }
    Ok(best)
}

/// Default grid for [`collar_decay_delta0`]: log-spaced from just above
/// `V^{-1/n}` up to `1000 / inradius`.
pub fn default_sigma_grid(d: &Domain) -> Vec<f64> {
    let n = d.dim() as f64;
    let lo = 1.01 * math::powf(volume(d), -1.0 / n);
    let hi = (1000.0 / inradius(d)).max(2.0 * lo);
    math::log_space(lo, hi, DEFAULT_SIGMA_GRID_LEN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn unit_ball_volumes() {
        assert!(close(unit_ball_volume(2).unwrap(), PI, 1e-15));
        assert!(close(unit_ball_volume(3).unwrap(), 4.0 * PI / 3.0, 1e-14));
        assert!(close(unit_ball_volume(4).unwrap(), PI * PI / 2.0, 1e-14));
        assert_eq!(unit_ball_volume(1).unwrap(), 2.0);
        assert_eq!(unit_ball_volume(0), Err(GeometryError::ZeroDimension));
    }

    #[test]
    fn unit_ball_volume_recurrence() {
        for n in 3..40 {
            let lhs = unit_ball_volume(n).unwrap();
            let rhs = unit_ball_volume(n - 2).unwrap() * 2.0 * PI / n as f64;
            assert!(close(lhs, rhs, 1e-12), "n={n}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn four_ball_volume_against_monte_carlo() {
        // Hit-or-miss in [-1,1]^4, independent of the gamma function.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let samples = 400_000;
        let mut hits = 0;
        for _ in 0..samples {
            let r2: f64 = (0..4)
                .map(|_| {
                    let x = 2.0 * unit_f64(&mut rng) - 1.0;
                    x * x
                })
                .sum();
            if r2 <= 1.0 {
                hits += 1;
            }
        }
        let p = hits as f64 / samples as f64;
        let est = 16.0 * p;
        let se = 16.0 * (p * (1.0 - p) / samples as f64).sqrt();
        assert!((est - unit_ball_volume(4).unwrap()).abs() < 4.0 * se);
    }

    #[test]
    fn volumes() {
        assert_eq!(volume(&Domain::cube(2, 1.0).unwrap()), 1.0);
        assert!(close(volume(&Domain::ball(2, 2.0).unwrap()), 4.0 * PI, 1e-15));
        assert_eq!(volume(&Domain::boxed(&[1.0, 2.0, 3.0]).unwrap()), 6.0);
    }

    #[test]
    fn collar_volumes() {
        let sq = Domain::cube(2, 1.0).unwrap();
        assert!(close(collar_volume(&sq, CollarSpec::new(4.0).unwrap()), 0.75, 1e-15));
        assert_eq!(collar_volume(&sq, CollarSpec::new(1.0).unwrap()), 1.0);
        let disk = Domain::ball(2, 1.0).unwrap();
        assert!(close(
            collar_volume(&disk, CollarSpec::new(2.0).unwrap()),
            3.0 * PI / 4.0,
            1e-15
        ));
        let iv = Domain::interval(1.0).unwrap();
        assert_eq!(collar_volume(&iv, CollarSpec::new(4.0).unwrap()), 0.5);
        assert_eq!(collar_volume(&iv, CollarSpec::new(1.5).unwrap()), 1.0);
    }

    #[test]
    fn collar_mc_matches_exact() {
        let sq = Domain::cube(2, 1.0).unwrap();
        let c = CollarSpec::new(4.0).unwrap();
        let mc = collar_volume_mc(&sq, c, 1_000_000, 42).unwrap();
        assert!((mc.estimate - 0.75).abs() < 3.0 * mc.std_error, "{mc:?}");

        let disk = Domain::ball(2, 1.0).unwrap();
        let c = CollarSpec::new(2.0).unwrap();
        let mc = collar_volume_mc(&disk, c, 1_000_000, 3).unwrap();
        assert!((mc.estimate - 0.75 * PI).abs() < 3.0 * mc.std_error, "{mc:?}");
    }

    #[test]
    fn collar_mc_limits() {
        let sq = Domain::cube(2, 1.0).unwrap();
        let thin = collar_volume_mc(&sq, CollarSpec::new(1e6).unwrap(), 100_000, 1).unwrap();
        assert!(thin.estimate < 1e-3);
        let thick = collar_volume_mc(&sq, CollarSpec::new(0.01).unwrap(), 100_000, 1).unwrap();
        assert_eq!(thick.estimate, 1.0);
        assert_eq!(
            collar_volume_mc(&sq, CollarSpec::new(2.0).unwrap(), 999, 1),
            Err(GeometryError::TooFewSamples { samples: 999, min: MIN_MC_SAMPLES })
        );
    }

    #[test]
    fn collar_mc_is_deterministic() {
        let d = Domain::ball(3, 1.5).unwrap().with_center(&[0.2, -0.1, 0.4]).unwrap();
        let c = CollarSpec::new(3.0).unwrap();
        assert_eq!(
            collar_volume_mc(&d, c, 20_000, 9).unwrap(),
            collar_volume_mc(&d, c, 20_000, 9).unwrap()
        );
    }

    #[test]
    fn inradii() {
        assert_eq!(inradius(&Domain::cube(2, 1.0).unwrap()), 0.5);
        assert_eq!(inradius(&Domain::boxed(&[1.0, 2.0, 3.0]).unwrap()), 0.5);
        assert_eq!(inradius(&Domain::ball(3, 2.0).unwrap()), 2.0);
    }

    #[test]
    fn sup_norms() {
        let sq = Domain::cube(2, 1.0).unwrap();
        assert_eq!(sup_norm_sq(&sq), 0.5);
        let corner = sq.with_center(&[0.5, 0.5]).unwrap();
        assert_eq!(sup_norm_sq(&corner), 2.0);
        assert_eq!(sup_norm_sq(&Domain::ball(2, 1.0).unwrap()), 1.0);
    }

    #[test]
    fn moments_of_inertia() {
        assert!(close(moment_of_inertia(&Domain::cube(2, 1.0).unwrap()), 1.0 / 6.0, 1e-15));
        assert!(close(moment_of_inertia(&Domain::interval(1.0).unwrap()), 1.0 / 12.0, 1e-15));
        assert!(close(moment_of_inertia(&Domain::ball(2, 1.0).unwrap()), PI / 2.0, 1e-15));
    }

    #[test]
    fn disk_inertia_against_monte_carlo() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples = 400_000;
        let mut acc = 0.0;
        let mut acc2 = 0.0;
        for _ in 0..samples {
            let x = 2.0 * unit_f64(&mut rng) - 1.0;
            let y = 2.0 * unit_f64(&mut rng) - 1.0;
            let r2 = x * x + y * y;
            let f = if r2 <= 1.0 { 4.0 * r2 } else { 0.0 };
            acc += f;
            acc2 += f * f;
        }
        let mean = acc / samples as f64;
        let se = ((acc2 / samples as f64 - mean * mean) / samples as f64).sqrt();
        assert!((mean - PI / 2.0).abs() < 4.0 * se);
    }

    #[test]
    fn delta0_examples() {
        let sq = Domain::cube(2, 1.0).unwrap();
        let grid = math::log_space(2.0, 100.0, 400);
        let d0 = collar_decay_delta0(&sq, 1.0, &grid).unwrap();
        // sigma * V(Ω_σ) = 4 - 4/sigma on [2, 100]; sup at sigma = 100
        assert!(close(d0, 3.96, 1e-12), "{d0}");
        assert!(d0 < 4.0);

        let iv = Domain::interval(1.0).unwrap();
        assert!(close(collar_decay_delta0(&iv, 1.0, &grid).unwrap(), 2.0, 1e-14));

        // clamped collar: V_σ = V, so δ₀ = V^{τ/n} σ^τ
        let d = Domain::boxed(&[1.0, 2.0]).unwrap();
        let v = volume(&d);
        let d0 = collar_decay_delta0(&d, 1.5, &[1.5]).unwrap();
        assert!(close(d0, v.powf(1.5 / 2.0) * 1.5f64.powf(1.5), 1e-14));
    }

    #[test]
    fn delta0_errors() {
        let sq = Domain::cube(2, 1.0).unwrap();
        assert_eq!(collar_decay_delta0(&sq, 1.0, &[]), Err(GeometryError::EmptyGrid));
        assert!(matches!(
            collar_decay_delta0(&sq, 1.0, &[0.5, 3.0]),
            Err(GeometryError::SigmaBelowThreshold { .. })
        ));
        assert_eq!(collar_decay_delta0(&sq, 0.5, &[3.0]), Err(GeometryError::InvalidTau(0.5)));
    }

    #[test]
    fn default_grid_is_admissible() {
        for d in [
            Domain::cube(2, 1.0).unwrap(),
            Domain::ball(3, 0.3).unwrap(),
            Domain::interval(7.0).unwrap(),
        ] {
            let grid = default_sigma_grid(&d);
            assert_eq!(grid.len(), DEFAULT_SIGMA_GRID_LEN);
            assert!(collar_decay_delta0(&d, 1.0, &grid).is_ok());
        }
    }

    #[test]
    fn constructor_errors() {
        assert!(Domain::interval(0.0).is_err());
        assert!(Domain::boxed(&[]).is_err());
        assert!(Domain::boxed(&[1.0, -1.0]).is_err());
        assert!(Domain::ball(0, 1.0).is_err());
        assert!(Domain::cube(2, 1.0).unwrap().with_center(&[0.0]).is_err());
        assert!(CollarSpec::new(0.0).is_err());
    }
}
