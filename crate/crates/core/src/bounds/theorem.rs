//! The collar-driven upper bound for `(1/k) Σ Λ_j`, its quadrature
//! re-assembly, the `σ₀` search, the `δ₀`-parameterised corollary and the
//! term-by-term comparison with the Cheng-Wei clamped-plate bound.

use alloc::vec::Vec;

use super::classical::cheng_wei_terms;
use super::coefficients::{coeff_a1, coeff_a2, collar_energy_factor};
use super::{unit_ball, weyl_scale, BoundParams, BoundsError, IndexForm, ProblemSpec};
use crate::eigensolve::gauss_legendre;
use crate::geometry;
use crate::math::{self, PI};

/// Default number of `σ₀` candidates scanned by [`optimize_sigma0`].
pub const DEFAULT_SIGMA0_GRID: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremBound {
    /// Sum of `terms`; `+∞` when degenerate.
    pub value: f64,
    pub terms: [f64; 3],
    /// `σ₀² > sup |x|²` and `k ≥ V σ₀ⁿ`.
    pub valid: bool,
    /// The collar covers the domain (`θ = 1`).
    pub degenerate: bool,
}

/// Three-term upper bound on the average of the first `k` eigenvalues
/// (first `k + 1` in [`IndexForm::Proof`]).
pub fn theorem_upper(spec: &ProblemSpec, params: &BoundParams, form: IndexForm) -> TheoremBound {
    let valid = params.sigma_admissible(spec) && params.k_admissible(spec);
    if params.is_degenerate() {
        return TheoremBound {
            value: f64::INFINITY,
            terms: [f64::INFINITY; 3],
            valid,
            degenerate: true,
        };
    }
    let (n, l) = (spec.n(), spec.l());
    let (nf, lf) = (n as f64, l as f64);
    let kk = form.effective(params.k);
    let theta = params.theta;
    let one_minus = 1.0 - theta;

    let t1 = nf / (nf + 2.0 * lf) * spec.weyl_scale(2.0 * lf)
        / math::powf(one_minus, (nf + 2.0 * lf) / nf)
        * math::powf(kk, 2.0 * lf / nf);
    let correction = |coeff: f64, shift: f64| {
        if coeff == 0.0 || theta == 0.0 {
            return 0.0;
        }
        let m = 2.0 * lf - shift;
        coeff * spec.weyl_scale(m) * theta / math::powf(one_minus, (nf + m) / nf)
            * math::powf(kk, m / nf)
    };
    let t2 = correction(coeff_a1(n, l), 4.0);
    // coeff_a2 only fails where its numerator is nonzero and n+2l-4 = 0,
    // which no integer (n, l) reaches
    let t3 = correction(coeff_a2(n, l).unwrap_or(f64::NAN), 8.0);
    TheoremBound { value: t1 + t2 + t3, terms: [t1, t2, t3], valid, degenerate: false }
}

/// Rebuilds [`theorem_upper`] from its ingredients: integrates
/// `|ξ|^{2l}(V − V_σ) + C₀(|ξ|, σ) V_σ` over the ball `|ξ| < σ` by radial
/// Gauss-Legendre quadrature, with `σ = 2π (K / (B_n (V − V_{σ₀})))^{1/n}`,
/// and divides by `σⁿ B_n (V − V_{σ₀})`. The collar volume at `σ` is
/// majorised by the one at `σ₀`, as in the closed form.
pub fn theorem_upper_assembled(
    spec: &ProblemSpec,
    params: &BoundParams,
    form: IndexForm,
    quad_points: usize,
) -> Result<f64, BoundsError> {
    if quad_points == 0 {
        return Err(BoundsError::InvalidParameter("quad_points must be positive"));
    }
    if params.is_degenerate() {
        return Ok(f64::INFINITY);
    }
    let (n, l) = (spec.n(), spec.l());
    let bn = unit_ball(n);
    let v = spec.volume();
    let v_collar = params.theta * v;
    let v_core = v - v_collar;
    let kk = form.effective(params.k);
    let sigma = 2.0 * PI * math::powf(kk / (bn * v_core), 1.0 / n as f64);

    let rule = gauss_legendre(quad_points);
    // ∫_{B(σ)} f(|ξ|) dξ = n B_n ∫_0^σ f(r) r^{n-1} dr
    let radial = rule.integrate_on(0.0, sigma, |r| {
        let energy = math::powi(r, 2 * l as i32) * v_core + collar_energy_factor(n, l, r, sigma) * v_collar;
        energy * math::powi(r, n as i32 - 1)
    });
    let integral = n as f64 * bn * radial;
    Ok(integral / (math::powi(sigma, n as i32) * bn * v_core))
}

/// Scans `σ₀` log-spaced over `(√sup|x|², (k/V)^{1/n}]` and keeps the
/// smallest non-degenerate [`theorem_upper`] value.
///
/// If every candidate is degenerate, returns the params at the top of the
/// range (where `θ` is smallest); [`theorem_upper`] then flags them.
pub fn optimize_sigma0(
    spec: &ProblemSpec,
    k: usize,
    grid_size: usize,
    form: IndexForm,
) -> Result<BoundParams, BoundsError> {
    if k == 0 {
        return Err(BoundsError::InvalidCount(k));
    }
    if grid_size == 0 {
        return Err(BoundsError::InvalidParameter("grid_size must be positive"));
    }
    let n = spec.n() as i32;
    let v = spec.volume();
    let lo = math::sqrt(geometry::sup_norm_sq(spec.domain()));
    let mut hi = math::powf(k as f64 / v, 1.0 / n as f64);
    while v * math::powi(hi, n) > k as f64 {
        hi = hi.next_down();
    }
    if !(hi > lo) {
        return Err(BoundsError::NoAdmissibleSigma0 { k });
    }

    let ratio = hi / lo;
    let mut best: Option<(f64, BoundParams)> = None;
    for i in 1..=grid_size {
        let sigma0 = if i == grid_size {
            hi
        } else {
            lo * math::powf(ratio, i as f64 / grid_size as f64)
        };
        let params = BoundParams::for_spec(spec, sigma0, k)?;
        let bound = theorem_upper(spec, &params, form);
        if bound.degenerate || !bound.valid {
            continue;
        }
        if best.as_ref().is_none_or(|(v, _)| bound.value < *v) {
            best = Some((bound.value, params));
        }
    }
    match best {
        Some((_, params)) => Ok(params),
        None => BoundParams::for_spec(spec, hi, k),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryBound {
    pub value: f64,
    pub alphas: [f64; 3],
    /// `δ₀ / K^{τ/n}`, the bound on the collar ratio.
    pub theta0: f64,
}

/// Explicit `α₁, α₂, α₃` for a collar-ratio cap `θ₀`.
///
/// Each comes from a mean-value bound `f(θ) − f(0) = f'(ε) θ`, `ε ∈ (0, θ)`,
/// with `f'(ε)` replaced by its supremum over `[0, θ₀]`:
/// `α₁ = (n/(n+2l)) (1 + 2l/n) / (1 − θ₀)^{(2n+2l)/n}`,
/// `α₂ = 𝒜₁ · max(1, 1 + a θ₀) · max(1, (1 − θ₀)^{−b})` with
/// `a = (2l−4)/n`, `b = (2n+2l−4)/n`, and `α₃` likewise from `𝒜₂` with the
/// exponents shifted by `−4/n`.
pub fn corollary_alphas(n: usize, l: usize, theta0: f64) -> Result<[f64; 3], BoundsError> {
    if !(0.0..1.0).contains(&theta0) {
        return Err(BoundsError::InvalidTheta(theta0));
    }
    let (nf, lf) = (n as f64, l as f64);
    let one_minus = 1.0 - theta0;
    let alpha1 = nf / (nf + 2.0 * lf) * (1.0 + 2.0 * lf / nf)
        / math::powf(one_minus, (2.0 * nf + 2.0 * lf) / nf);
    let sup_derivative = |shift: f64| {
        let a = (2.0 * lf - shift) / nf;
        let b = (2.0 * nf + 2.0 * lf - shift) / nf;
        (1.0f64).max(1.0 + a * theta0) * (1.0f64).max(math::powf(one_minus, -b))
    };
    let alpha2 = coeff_a1(n, l) * sup_derivative(4.0);
    let alpha3 = coeff_a2(n, l)? * sup_derivative(8.0);
    Ok([alpha1, alpha2, alpha3])
}

/// Upper bound on `(1/k) Σ Λ_j` in terms of the collar-decay constant `δ₀`
/// (`V(Ω_σ) ≤ δ₀ V^{(n−τ)/n} σ^{−τ}`).
pub fn corollary_upper(
    spec: &ProblemSpec,
    delta0: f64,
    tau: f64,
    k: usize,
    form: IndexForm,
) -> Result<CorollaryBound, BoundsError> {
    if k == 0 {
        return Err(BoundsError::InvalidCount(k));
    }
    if !(tau >= 1.0) {
        return Err(BoundsError::InvalidParameter("tau must be >= 1"));
    }
    if !(delta0 >= 0.0) {
        return Err(BoundsError::InvalidParameter("delta0 must be nonnegative"));
    }
    let (n, l) = (spec.n(), spec.l());
    let (nf, lf) = (n as f64, l as f64);
    let kk = form.effective(k);
    let theta0 = delta0 / math::powf(kk, tau / nf);
    if (k as f64) < math::powi(delta0, n as i32) || theta0 >= 1.0 {
        return Err(BoundsError::CorollaryPrecondition { k, delta0 });
    }
    let alphas = corollary_alphas(n, l, theta0)?;
    let main = nf / (nf + 2.0 * lf) * spec.weyl_scale(2.0 * lf) * math::powf(kk, 2.0 * lf / nf);
    let middle = delta0
        * (alphas[0] * spec.weyl_scale(2.0 * lf) + alphas[1] * spec.weyl_scale(2.0 * lf - 4.0))
        * math::powf(kk, (2.0 * lf - tau) / nf);
    let last = delta0
        * alphas[2]
        * spec.weyl_scale(2.0 * lf - 8.0)
        * math::powf(kk, (2.0 * lf - 4.0 - tau) / nf);
    Ok(CorollaryBound { value: main + middle + last, alphas, theta0 })
}

/// At `l = 2`: `(𝒜₁(n,2), 24n/(n+2), 𝒜₂(n,2), 4n²)`, the second- and
/// third-term coefficients of the collar bound and of Cheng-Wei.
pub fn plate_coefficients(n: usize) -> (f64, f64, f64, f64) {
    let nf = n as f64;
    (
        coeff_a1(n, 2),
        24.0 * nf / (nf + 2.0),
        coeff_a2(n, 2).unwrap_or(f64::NAN),
        4.0 * nf * nf,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermComparison {
    pub theorem: [f64; 3],
    pub cheng_wei: [f64; 3],
    /// `cheng_wei[i] − theorem[i]`; positive where the collar bound is sharper.
    pub deltas: [f64; 3],
}

impl TermComparison {
    pub fn theorem_total(&self) -> f64 {
        self.theorem.iter().sum()
    }

    pub fn cheng_wei_total(&self) -> f64 {
        self.cheng_wei.iter().sum()
    }
}

/// Per-term comparison at `l = 2` of the two upper bounds on the average
/// of the first `k + 1` eigenvalues, both at collar ratio `θ`.
pub fn plate_comparison(
    n: usize,
    volume: f64,
    theta: f64,
    k: usize,
) -> Result<TermComparison, BoundsError> {
    if !(0.0..1.0).contains(&theta) {
        return Err(BoundsError::InvalidTheta(theta));
    }
    if k == 0 {
        return Err(BoundsError::InvalidCount(k));
    }
    let nf = n as f64;
    let kk = (k + 1) as f64;
    let one_minus = 1.0 - theta;
    let t1 = nf / (nf + 4.0) * weyl_scale(n, volume, 4.0) / math::powf(one_minus, (nf + 4.0) / nf)
        * math::powf(kk, 4.0 / nf);
    let t2 = coeff_a1(n, 2) * weyl_scale(n, volume, 0.0) * theta / one_minus;
    let t3 = coeff_a2(n, 2)? * weyl_scale(n, volume, -4.0) * theta
        / math::powf(one_minus, (nf - 4.0) / nf)
        * math::powf(kk, -4.0 / nf);
    let theorem = [t1, t2, t3];
    let cheng_wei = cheng_wei_terms(n, volume, theta, k)?;
    let deltas = [
        cheng_wei[0] - theorem[0],
        cheng_wei[1] - theorem[1],
        cheng_wei[2] - theorem[2],
    ];
    Ok(TermComparison { theorem, cheng_wei, deltas })
}

/// Smallest `k` in `k_range` from which the full collar bound stays at or
/// below the full Cheng-Wei bound for every larger `k` in the range.
pub fn plate_threshold(
    n: usize,
    volume: f64,
    theta: f64,
    k_range: core::ops::RangeInclusive<usize>,
) -> Result<Option<usize>, BoundsError> {
    let ks: Vec<usize> = k_range.collect();
    let mut threshold = None;
    for &k in ks.iter().rev() {
        let c = plate_comparison(n, volume, theta, k)?;
        if c.theorem_total() <= c.cheng_wei_total() {
            threshold = Some(k);
        } else {
            break;
        }
    }
    Ok(threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Domain;

    fn unit_square(l: usize) -> ProblemSpec {
        ProblemSpec::new(l, Domain::cube(2, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn membrane_square_example() {
        let spec = unit_square(1);
        let params = BoundParams::for_spec(&spec, 4.0, 16).unwrap();
        assert!((params.theta - 0.75).abs() < 1e-15);
        let b = theorem_upper(&spec, &params, IndexForm::Stated);
        assert!(b.valid && !b.degenerate);
        assert!((b.terms[0] - 512.0 * PI).abs() < 1e-9, "{:?}", b.terms);
        assert!((b.terms[1] - 0.75 / (16.0 * PI)).abs() < 1e-14);
        assert_eq!(b.terms[2], 0.0);
        assert!(b.value >= 234.0 * PI * PI / 16.0);
    }

    #[test]
    fn degenerate_collar() {
        let spec = unit_square(2);
        let params = BoundParams::for_spec(&spec, 1.0, 4).unwrap();
        assert_eq!(params.theta, 1.0);
        let b = theorem_upper(&spec, &params, IndexForm::Stated);
        assert!(b.degenerate);
        assert_eq!(b.value, f64::INFINITY);
        assert_eq!(
            theorem_upper_assembled(&spec, &params, IndexForm::Stated, 8).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn zero_collar_reduces_to_weyl_average() {
        for l in 1..=3 {
            let spec = unit_square(l);
            let mut params = BoundParams::for_spec(&spec, 4.0, 50).unwrap();
            params.theta = 0.0;
            let b = theorem_upper(&spec, &params, IndexForm::Stated);
            let w = crate::bounds::weyl_average(&spec, 50).unwrap();
            assert!((b.value - w).abs() <= 1e-12 * w);
            let a = theorem_upper_assembled(&spec, &params, IndexForm::Stated, 16).unwrap();
            assert!((a - w).abs() <= 1e-10 * w);
        }
    }

    #[test]
    fn assembled_matches_closed_form() {
        for l in 1..=4 {
            let spec = unit_square(l);
            for form in [IndexForm::Stated, IndexForm::Proof] {
                let params = BoundParams::for_spec(&spec, 4.0, 16).unwrap();
                let closed = theorem_upper(&spec, &params, form).value;
                let assembled = theorem_upper_assembled(&spec, &params, form, 16).unwrap();
                assert!((closed - assembled).abs() <= 1e-10 * closed, "l={l}: {closed} vs {assembled}");
            }
        }
    }

    #[test]
    fn optimizer_examples() {
        let spec = unit_square(1);
        let p = optimize_sigma0(&spec, 10_000, DEFAULT_SIGMA0_GRID, IndexForm::Stated).unwrap();
        let b = theorem_upper(&spec, &p, IndexForm::Stated);
        assert!(b.valid && !b.degenerate);
        // large k pushes σ₀ to the top of its range and θ down
        assert!(p.sigma0 > 50.0, "{p:?}");
        assert!(p.theta < 0.1);

        // k = 1 and k = 4: σ₀ ≤ 2 = 1/inradius, so every candidate has θ = 1
        for k in [1, 4] {
            let p = optimize_sigma0(&spec, k, DEFAULT_SIGMA0_GRID, IndexForm::Stated).unwrap();
            assert!(theorem_upper(&spec, &p, IndexForm::Stated).degenerate);
        }
        // far from the origin sup|x| exceeds (k/V)^{1/n}
        let shifted = Domain::cube(2, 1.0).unwrap().with_center(&[10.0, 10.0]).unwrap();
        let shifted = ProblemSpec::new(1, shifted).unwrap();
        assert_eq!(
            optimize_sigma0(&shifted, 16, DEFAULT_SIGMA0_GRID, IndexForm::Stated),
            Err(BoundsError::NoAdmissibleSigma0 { k: 16 })
        );

        let disk = ProblemSpec::new(2, Domain::ball(2, 1.0).unwrap()).unwrap();
        let p = optimize_sigma0(&disk, 1000, DEFAULT_SIGMA0_GRID, IndexForm::Stated).unwrap();
        let b = theorem_upper(&disk, &p, IndexForm::Stated);
        assert!(b.valid && !b.degenerate && p.theta < 1.0);
    }

    #[test]
    fn corollary_zero_delta() {
        let spec = unit_square(2);
        let c = corollary_upper(&spec, 0.0, 1.0, 100, IndexForm::Stated).unwrap();
        let w = crate::bounds::weyl_average(&spec, 100).unwrap();
        assert!((c.value - w).abs() <= 1e-12 * w);
    }

    #[test]
    fn corollary_preconditions() {
        let spec = unit_square(1);
        assert!(corollary_upper(&spec, 4.0, 1.0, 10, IndexForm::Stated).is_err());
        assert!(corollary_upper(&spec, 4.0, 1.0, 1_000_000, IndexForm::Stated).is_ok());
        assert!(corollary_upper(&spec, 4.0, 0.5, 1_000_000, IndexForm::Stated).is_err());
    }

    #[test]
    fn alpha1_matches_derivative_at_theta0() {
        let (n, l, t0) = (3usize, 2usize, 0.3);
        let a = corollary_alphas(n, l, t0).unwrap();
        let (nf, lf) = (n as f64, l as f64);
        let deriv = (1.0 + 2.0 * lf / nf) / (1.0f64 - t0).powf((2.0 * nf + 2.0 * lf) / nf);
        assert!((a[0] - nf / (nf + 2.0 * lf) * deriv).abs() < 1e-14);
    }

    #[test]
    fn plate_terms() {
        let c = plate_comparison(2, 1.0, 0.75, 16).unwrap();
        // leading terms coincide, corrections are smaller
        assert!((c.deltas[0]).abs() <= 1e-12 * c.theorem[0]);
        assert!(c.deltas[1] > 0.0 && c.deltas[2] > 0.0);
    }
}
