//! The coefficients `𝒜₁(n,l)`, `𝒜₂(n,l)` and the collar energy constant
//! `C₀(|ξ|, σ)` of the cutoff `ρ_σ = |x|²/σ²`.
//!
//! All three share a four-way case split on the parity of `l` and on the
//! size of `l` relative to `n`. On the zero branch the `|ξ|²/σ²` cross term
//! is dropped from `C₀` and `𝒜₁` vanishes.

use super::{unit_ball, BoundsError};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Cross term kept; `𝒜₁ = Θ` (odd) or the even-l closed form.
    Theta,
    /// Cross term dropped; `𝒜₁ = 0`.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientCase {
    pub parity: Parity,
    pub branch: Branch,
    pub value_a1: f64,
    pub value_a2: f64,
}

/// Odd `l`: `l = 1` or `l ≥ n − 3 − 2/(l−1)`. Even `l`: `l ≥ n − 2`.
pub fn is_theta_branch(n: usize, l: usize) -> bool {
    let (nf, lf) = (n as f64, l as f64);
    if l % 2 == 1 {
        l == 1 || lf >= nf - 3.0 - 2.0 / (lf - 1.0)
    } else {
        lf >= nf - 2.0
    }
}

/// Coefficient of `|ξ|^{2l-2}/σ²` in `C₀` on the theta branch.
fn cross_numerator(n: f64, l: f64, parity: Parity) -> f64 {
    match parity {
        Parity::Odd => 2.0 * l * l + (4.0 - 2.0 * n) * l + 2.0 * n - 2.0,
        Parity::Even => 2.0 * l * l - 2.0 * n * l + 4.0 * l,
    }
}

/// Coefficient of `|ξ|^{2l-4}/σ⁴` in `C₀`.
fn quartic_numerator(n: f64, l: f64, parity: Parity) -> f64 {
    let base = match parity {
        Parity::Odd => (l - 1.0) * (l - 1.0) + n * (l - 1.0),
        Parity::Even => l * (l - 2.0) + n * l,
    };
    base * base
}

fn parity(l: usize) -> Parity {
    if l % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    }
}

pub fn coeff_a1(n: usize, l: usize) -> f64 {
    if !is_theta_branch(n, l) {
        return 0.0;
    }
    let (nf, lf) = (n as f64, l as f64);
    nf * cross_numerator(nf, lf, parity(l)) / (nf + 2.0 * lf - 2.0)
}

/// `𝒜₂(n,l)`. The numerator carries a factor `(l−1)` for odd `l`, so the
/// value is 0 at `l = 1` even where `n + 2l − 4 = 0`.
pub fn coeff_a2(n: usize, l: usize) -> Result<f64, BoundsError> {
    let (nf, lf) = (n as f64, l as f64);
    let num = nf * quartic_numerator(nf, lf, parity(l));
    if num == 0.0 {
        return Ok(0.0);
    }
    let den = nf + 2.0 * lf - 4.0;
    if den == 0.0 {
        return Err(BoundsError::UndefinedCoefficient { n, l });
    }
    Ok(num / den)
}

pub fn coefficient_case(n: usize, l: usize) -> Result<CoefficientCase, BoundsError> {
    Ok(CoefficientCase {
        parity: parity(l),
        branch: if is_theta_branch(n, l) { Branch::Theta } else { Branch::Zero },
        value_a1: coeff_a1(n, l),
        value_a2: coeff_a2(n, l)?,
    })
}

/// Collar energy constant `C₀` with `∫_{Ω_σ} [∇^l w, ∇^l w̄] ≤ C₀ V(Ω_σ)`
/// for `w = e^{i⟨ξ,x⟩} ρ_σ`.
///
/// Evaluated in expanded form `|ξ|^{2l} + a|ξ|^{2l−2}/σ² + b|ξ|^{2l−4}/σ⁴`
/// with vanishing terms skipped, so `l = 1` is finite at `ξ = 0`.
pub fn collar_energy_factor(n: usize, l: usize, xi_norm: f64, sigma: f64) -> f64 {
    let (nf, lf) = (n as f64, l as f64);
    let p = parity(l);
    let s2 = sigma * sigma;
    let mut c = math::powi(xi_norm, 2 * l as i32);
    if is_theta_branch(n, l) {
        let a = cross_numerator(nf, lf, p);
        if a != 0.0 {
            c += a * math::powi(xi_norm, 2 * l as i32 - 2) / s2;
        }
    }
    let b = quartic_numerator(nf, lf, p);
    if b != 0.0 {
        c += b * math::powi(xi_norm, 2 * l as i32 - 4) / (s2 * s2);
    }
    c
}

/// `∫_{|ξ|<σ} |ξ|^{2p} dξ = B_n σ^{n+2p} n/(n+2p)`.
pub fn ball_moment(n: usize, p: i32, sigma: f64) -> Result<f64, BoundsError> {
    let e = n as i32 + 2 * p;
    if n == 0 || e <= 0 {
        return Err(BoundsError::DivergentMoment { n, p });
    }
    Ok(unit_ball(n) * math::powi(sigma, e) * n as f64 / e as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::PI;

    /// Table 1 as printed: rows l = 1, 3, 5; columns n = 1..=12 and "≥ 12"
    /// (checked at n = 13). `true` = Θ, `false` = 0.
    const TABLE1: [(usize, [bool; 13]); 3] = [
        (1, [true; 13]),
        (3, [true, true, true, true, true, true, true, false, false, false, false, false, false]),
        (5, [true, true, true, true, true, true, true, true, false, false, false, false, false]),
    ];

    #[test]
    fn table1_branches() {
        for (l, row) in TABLE1 {
            for (i, &theta) in row.iter().enumerate() {
                let n = i + 1;
                assert_eq!(is_theta_branch(n, l), theta, "n={n} l={l}");
                let (nf, lf) = (n as f64, l as f64);
                let big_theta = nf * (2.0 * lf * lf + (4.0 - 2.0 * nf) * lf + 2.0 * nf - 2.0)
                    / (nf + 2.0 * lf - 2.0);
                let expected = if theta { big_theta } else { 0.0 };
                assert!((coeff_a1(n, l) - expected).abs() < 1e-12, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn a1_l1_is_four() {
        for n in 1..=64 {
            assert!((coeff_a1(n, 1) - 4.0).abs() < 1e-13, "n={n}");
            assert_eq!(coeff_a2(n, 1).unwrap(), 0.0);
        }
    }

    #[test]
    fn a1_examples() {
        assert_eq!(coeff_a1(8, 3), 0.0);
        assert!((coeff_a1(2, 3) - 20.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn a2_examples() {
        for n in 1..=16 {
            assert!((coeff_a2(n, 2).unwrap() - 4.0 * (n * n) as f64).abs() < 1e-12);
        }
        assert!((coeff_a2(3, 3).unwrap() - 60.0).abs() < 1e-13);
        assert_eq!(coeff_a2(2, 1).unwrap(), 0.0);
    }

    #[test]
    fn large_odd_l_rule() {
        // for l >= 5 the odd condition reduces to l >= n - 3
        for l in (5..40).step_by(2) {
            for n in 1..60 {
                assert_eq!(is_theta_branch(n, l), l + 3 >= n, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn case_invariants() {
        for n in 1..20 {
            for l in 1..12 {
                let c = coefficient_case(n, l).unwrap();
                if c.branch == Branch::Zero {
                    assert_eq!(c.value_a1, 0.0);
                }
                if l >= 2 {
                    assert!(c.value_a2 > 0.0);
                }
                assert!(c.value_a1 >= 0.0, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn c0_examples() {
        assert!((collar_energy_factor(2, 2, 1.0, 10.0) - 1.0816).abs() < 1e-14);
        // l = 1: |ξ|² + 4/σ²; at ξ = 0 this is 4/σ²
        assert!((collar_energy_factor(2, 1, 0.0, 5.0) - 4.0 / 25.0).abs() < 1e-15);
        assert!((collar_energy_factor(3, 1, 2.0, 5.0) - (4.0 + 4.0 / 25.0)).abs() < 1e-14);
        let v = collar_energy_factor(10, 3, 2.0, 5.0);
        assert!((v - 4.0 * (16.0 + 576.0 / 625.0)).abs() < 1e-12, "{v}");
    }

    #[test]
    fn ball_moments() {
        assert!((ball_moment(2, 1, 1.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((ball_moment(2, 0, 3.0).unwrap() - 9.0 * PI).abs() < 1e-13);
        assert!((ball_moment(3, 2, 2.0).unwrap() - 512.0 * PI / 7.0).abs() < 1e-11);
        assert!(ball_moment(2, -1, 1.0).is_err());
        assert!(ball_moment(1, 0, 1.0).is_ok());
    }
}
