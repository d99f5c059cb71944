use alloc::vec::Vec;

use super::{Method, SolveError, Spectrum};
use crate::math::{self, PI};

/// First `count` Dirichlet Laplacian eigenvalues of the box with the given
/// sides: the smallest values of `π² Σ (m_i / s_i)²` over `m_i ≥ 1`.
pub fn exact_box_spectrum_l1(sides: &[f64], count: usize) -> Result<Spectrum, SolveError> {
    if count == 0 {
        return Err(SolveError::InvalidArgument("count must be at least 1"));
    }
    if sides.is_empty() || sides.iter().any(|s| !(*s > 0.0)) {
        return Err(SolveError::InvalidArgument("box sides must be positive"));
    }
    let inv_sq: Vec<f64> = sides.iter().map(|s| PI * PI / (s * s)).collect();
    let ground: f64 = inv_sq.iter().sum();

    let mut cutoff = 4.0 * ground;
    loop {
        let mut found = Vec::new();
        enumerate(&inv_sq, 0, 0.0, cutoff, &mut found);
        if found.len() >= count {
            found.sort_by(f64::total_cmp);
            found.truncate(count);
            return Spectrum::new(found, Method::ExactBoxL1, 0, count);
        }
        cutoff *= 2.0;
    }
}

fn enumerate(inv_sq: &[f64], axis: usize, partial: f64, cutoff: f64, out: &mut Vec<f64>) {
    let rest: f64 = inv_sq[axis + 1..].iter().sum();
    let mut m = 1u64;
    loop {
        let v = partial + inv_sq[axis] * (m * m) as f64;
        if v + rest > cutoff {
            break;
        }
        if axis + 1 == inv_sq.len() {
            out.push(v);
        } else {
            enumerate(inv_sq, axis + 1, v, cutoff, out);
        }
        m += 1;
    }
}

/// `cos μ − 1/cosh μ`; same roots as `cos μ cosh μ = 1` without overflow.
fn beam_characteristic(mu: f64) -> f64 {
    math::cos(mu) - 1.0 / math::cosh(mu)
}

/// `j`-th positive root (1-based) of `cos μ cosh μ = 1`, by bisection on a
/// bracket centred at `(j + 1/2) π`.
pub fn clamped_beam_root(j: usize) -> Result<f64, SolveError> {
    if j == 0 {
        return Err(SolveError::InvalidArgument("beam roots are 1-based"));
    }
    let centre = (j as f64 + 0.5) * PI;
    let (mut lo, mut hi) = (centre - PI / 4.0, centre + PI / 4.0);
    let (mut f_lo, f_hi) = (beam_characteristic(lo), beam_characteristic(hi));
    if f_lo * f_hi > 0.0 {
        return Err(SolveError::BracketFailure { index: j });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = beam_characteristic(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    // rounding of μ itself limits the residual to about ulp(μ)
    if math::abs(beam_characteristic(root)) > 1e-12 * root.max(1.0) {
        return Err(SolveError::BracketFailure { index: j });
    }
    Ok(root)
}

/// Clamped-clamped beam eigenvalues `(μ_j / L)⁴`, i.e. `l = 2`, `n = 1`.
pub fn clamped_beam_spectrum(length: f64, count: usize) -> Result<Spectrum, SolveError> {
    if count == 0 {
        return Err(SolveError::InvalidArgument("count must be at least 1"));
    }
    if !(length > 0.0) {
        return Err(SolveError::InvalidArgument("length must be positive"));
    }
    let values = (1..=count)
        .map(|j| clamped_beam_root(j).map(|mu| math::powi(mu / length, 4)))
        .collect::<Result<Vec<_>, _>>()?;
    Spectrum::new(values, Method::BeamRoots, 0, count)
}
