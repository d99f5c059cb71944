//! Previously known bounds: Weyl-type asymptotics, the membrane lower
//! bounds of Pólya and Li-Yau, Levine-Protter, Cheng-Qi-Wei, the Cheng-Wei
//! clamped-plate upper bound and the universal inequalities of PPW and
//! Yang type.

use super::{weyl_scale, BoundsError, ProblemSpec};
use crate::geometry;
use crate::math::{self, PI};

fn check_k(k: usize) -> Result<f64, BoundsError> {
    if k == 0 {
        Err(BoundsError::InvalidCount(k))
    } else {
        Ok(k as f64)
    }
}

fn require_order(spec: &ProblemSpec, l: usize) -> Result<(), BoundsError> {
    if spec.l() != l {
        return Err(BoundsError::RequiresOrder { expected: l, got: spec.l() });
    }
    Ok(())
}

/// Leading asymptotic of `Λ_k`: `(2π)^{2l} / (B_n V)^{2l/n} k^{2l/n}`.
pub fn weyl_kth(spec: &ProblemSpec, k: usize) -> Result<f64, BoundsError> {
    let kf = check_k(k)?;
    let m = 2.0 * spec.l() as f64;
    Ok(spec.weyl_scale(m) * math::powf(kf, m / spec.n() as f64))
}

/// Leading asymptotic of the running average, `n/(n+2l)` times [`weyl_kth`].
pub fn weyl_average(spec: &ProblemSpec, k: usize) -> Result<f64, BoundsError> {
    let (nf, lf) = (spec.n() as f64, spec.l() as f64);
    Ok(nf / (nf + 2.0 * lf) * weyl_kth(spec, k)?)
}

/// Li-Yau: `(1/k) Σ λ_j ≥ n/(n+2) · 4π² / (B_n V)^{2/n} · k^{2/n}`. Membrane only.
pub fn li_yau_lower(spec: &ProblemSpec, k: usize) -> Result<f64, BoundsError> {
    require_order(spec, 1)?;
    let nf = spec.n() as f64;
    Ok(nf / (nf + 2.0) * polya_tiling_lower(spec, k)?)
}

/// Pólya's conjectured bound `λ_k ≥ 4π² / (B_n V)^{2/n} · k^{2/n}`, proven for
/// tiling domains. Membrane only.
pub fn polya_tiling_lower(spec: &ProblemSpec, k: usize) -> Result<f64, BoundsError> {
    require_order(spec, 1)?;
    weyl_kth(spec, k)
}

/// Which printed Levine-Protter constant to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpVariant {
    /// `π^{2l}` numerator, any `l`.
    GeneralL,
    /// `16π⁴` numerator, clamped plate only.
    Clamped16Pi4,
}

pub fn levine_protter_lower(
    spec: &ProblemSpec,
    k: usize,
    variant: LpVariant,
) -> Result<f64, BoundsError> {
    let kf = check_k(k)?;
    let (n, l) = (spec.n(), spec.l());
    let (nf, lf) = (n as f64, l as f64);
    let numerator = match variant {
        LpVariant::GeneralL => math::powf(PI, 2.0 * lf),
        LpVariant::Clamped16Pi4 => {
            require_order(spec, 2)?;
            16.0 * math::powi(PI, 4)
        }
    };
    let denom = math::powf(geometry::unit_ball_volume(n)? * spec.volume(), 2.0 * lf / nf);
    Ok(nf / (nf + 2.0 * lf) * numerator / denom * math::powf(kf, 2.0 * lf / nf))
}

/// Cheng-Qi-Wei: the Weyl-average main term plus `l` positive corrections
/// driven by `V / I(Ω)`, `I` the moment of inertia.
pub fn cheng_qi_wei_lower(spec: &ProblemSpec, k: usize) -> Result<f64, BoundsError> {
    let kf = check_k(k)?;
    let (n, l) = (spec.n(), spec.l());
    let (nf, lf) = (n as f64, l as f64);
    let lead = nf / (nf + 2.0 * lf);
    let inertia_ratio = spec.volume() / geometry::moment_of_inertia(spec.domain());

    let mut total = weyl_average(spec, k)?;
    // ascending product n (n+2) ... (n+2p-2)
    let mut ascending = 1.0;
    for p in 1..=l {
        let pf = p as f64;
        ascending *= nf + 2.0 * pf - 2.0;
        let m = 2.0 * (lf - pf);
        total += lead * (lf + 1.0 - pf) / (math::powi(24.0, p as i32) * ascending)
            * spec.weyl_scale(m)
            * math::powi(inertia_ratio, p as i32)
            * math::powf(kf, m / nf);
    }
    Ok(total)
}

/// The three Cheng-Wei terms bounding the average of the first `k + 1`
/// clamped-plate eigenvalues at collar ratio `θ`.
pub fn cheng_wei_terms(
    n: usize,
    volume: f64,
    theta: f64,
    k: usize,
) -> Result<[f64; 3], BoundsError> {
    check_k(k)?;
    if n == 0 {
        return Err(geometry::GeometryError::ZeroDimension.into());
    }
    if !(0.0..1.0).contains(&theta) {
        return Err(BoundsError::InvalidTheta(theta));
    }
    if !(volume > 0.0) {
        return Err(BoundsError::InvalidParameter("volume must be positive"));
    }
    let nf = n as f64;
    let common = weyl_scale(n, volume, 4.0) / math::powf(1.0 - theta, (nf + 4.0) / nf)
        * math::powf((k + 1) as f64, 4.0 / nf);
    Ok([
        nf / (nf + 4.0) * common,
        24.0 * nf / (nf + 2.0) * theta * common,
        4.0 * nf * nf * theta * common,
    ])
}

pub fn cheng_wei_clamped_upper(
    n: usize,
    volume: f64,
    theta: f64,
    k: usize,
) -> Result<f64, BoundsError> {
    Ok(cheng_wei_terms(n, volume, theta, k)?.iter().sum())
}

fn check_prefix(prefix: &[f64]) -> Result<(), BoundsError> {
    if prefix.is_empty() {
        return Err(BoundsError::EmptyPrefix);
    }
    if prefix.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(BoundsError::NonPositivePrefix);
    }
    if prefix.windows(2).any(|w| w[1] < w[0]) {
        return Err(BoundsError::NonMonotonePrefix);
    }
    Ok(())
}

fn universal_constant(spec: &ProblemSpec) -> f64 {
    let (nf, lf) = (spec.n() as f64, spec.l() as f64);
    4.0 * lf * (nf + 2.0 * lf - 2.0) / (nf * nf)
}

/// PPW-type bound on `Λ_{k+1}` from `Λ_1..Λ_k`.
pub fn ppw_next_upper(spec: &ProblemSpec, prefix: &[f64]) -> Result<f64, BoundsError> {
    check_prefix(prefix)?;
    let lf = spec.l() as f64;
    let kf = prefix.len() as f64;
    let s_low: f64 = prefix.iter().map(|v| math::powf(*v, 1.0 / lf)).sum();
    let s_high: f64 = prefix.iter().map(|v| math::powf(*v, (lf - 1.0) / lf)).sum();
    let last = prefix[prefix.len() - 1];
    Ok(last + universal_constant(spec) / (kf * kf) * s_low * s_high)
}

/// Yang-type bound on `Λ_{k+1}`: the larger root of
/// `k x² − (2 + c) S₁ x + (1 + c) S₂`, where `S₁`, `S₂` are the sums of the
/// prefix and of its squares.
pub fn yang_next_upper(spec: &ProblemSpec, prefix: &[f64]) -> Result<f64, BoundsError> {
    check_prefix(prefix)?;
    let c = universal_constant(spec);
    let kf = prefix.len() as f64;
    let s1: f64 = prefix.iter().sum();
    let s2: f64 = prefix.iter().map(|v| v * v).sum();
    let b = (2.0 + c) * s1;
    let disc = b * b - 4.0 * kf * (1.0 + c) * s2;
    if disc < 0.0 {
        return Err(BoundsError::InconsistentPrefix);
    }
    Ok((b + math::sqrt(disc)) / (2.0 * kf))
}
