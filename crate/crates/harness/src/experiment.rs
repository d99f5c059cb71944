//! Runs one experiment: spectrum, bound evaluation per `k`, ordering checks.

use std::fmt;
use std::str::FromStr;

use polybound_core::bounds::{self, LpVariant};
use polybound_core::eigensolve::{self, Spectrum};
use polybound_core::geometry::{self, Shape};
use polybound_core::{BoundParams, BoundsError, CollarSpec, IndexForm, ProblemSpec};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Sigma0Policy, SolverMethod};
use crate::error::HarnessError;

/// Relative slack for the ordering checks, to absorb rounding.
pub const CHECK_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    WeylKth,
    WeylAverage,
    LiYau,
    Polya,
    LevineProtterGeneral,
    LevineProtterClamped,
    ChengQiWei,
    TheoremUpper,
    CorollaryUpper,
    ChengWei,
    Ppw,
    Yang,
}

/// What a bound is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Asymptotic reference; never checked.
    Reference,
    LowerAverage,
    UpperAverage,
    LowerKth,
    UpperKth,
}

impl BoundId {
    pub const ALL: [BoundId; 12] = [
        Self::WeylKth,
        Self::WeylAverage,
        Self::LiYau,
        Self::Polya,
        Self::LevineProtterGeneral,
        Self::LevineProtterClamped,
        Self::ChengQiWei,
        Self::TheoremUpper,
        Self::CorollaryUpper,
        Self::ChengWei,
        Self::Ppw,
        Self::Yang,
    ];

    /// Identifier used in configs.
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::WeylKth => "weyl_kth",
            Self::WeylAverage => "weyl_average",
            Self::LiYau => "li_yau",
            Self::Polya => "polya",
            Self::LevineProtterGeneral => "levine_protter:general-l",
            Self::LevineProtterClamped => "levine_protter:clamped-16pi4",
            Self::ChengQiWei => "cheng_qi_wei",
            Self::TheoremUpper => "theorem_upper",
            Self::CorollaryUpper => "corollary_upper",
            Self::ChengWei => "cheng_wei",
            Self::Ppw => "ppw",
            Self::Yang => "yang",
        }
    }

    /// CSV column name.
    pub fn column(&self) -> &'static str {
        match self {
            Self::LevineProtterGeneral => "levine_protter_general_l",
            Self::LevineProtterClamped => "levine_protter_clamped_16pi4",
            other => other.as_str(),
        }
    }

    pub fn from_column(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.column() == name)
    }

    pub fn check(&self) -> Check {
        match self {
            Self::WeylKth | Self::WeylAverage => Check::Reference,
            Self::LiYau | Self::LevineProtterGeneral | Self::LevineProtterClamped | Self::ChengQiWei => {
                Check::LowerAverage
            }
            Self::Polya => Check::LowerKth,
            Self::TheoremUpper | Self::CorollaryUpper | Self::ChengWei => Check::UpperAverage,
            Self::Ppw | Self::Yang => Check::UpperKth,
        }
    }

    /// Depends on the `σ₀` policy.
    pub fn uses_sigma0(&self) -> bool {
        matches!(self, Self::TheoremUpper | Self::ChengWei)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let alias = match s {
            "levine_protter" => Some(Self::LevineProtterGeneral),
            "theorem_upper:optimized" | "theorem_upper:fixed" => Some(Self::TheoremUpper),
            "weyl" => Some(Self::WeylAverage),
            _ => None,
        };
        alias
            .or_else(|| Self::ALL.into_iter().find(|b| b.as_str() == s || b.column() == s))
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|b| b.as_str()).collect();
                HarnessError::Config(format!("unknown bound '{s}' (known: {})", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation,
    /// Not checked: reference curve, invalid or degenerate parameters, or
    /// not applicable at this `k`.
    Skip,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::Violation => "violation",
            Self::Skip => "skip",
        }
    }
}

impl FromStr for Verdict {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ok" => Ok(Self::Ok),
            "violation" => Ok(Self::Violation),
            "skip" => Ok(Self::Skip),
            other => Err(HarnessError::Csv(format!("unknown verdict '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCell {
    /// NaN when the bound is not applicable at this row.
    pub value: f64,
    pub valid: bool,
    pub degenerate: bool,
    pub verdict: Verdict,
}

impl BoundCell {
    fn not_applicable() -> Self {
        Self { value: f64::NAN, valid: false, degenerate: false, verdict: Verdict::Skip }
    }

    /// Bitwise comparison, so NaN cells compare equal.
    pub fn same_as(&self, other: &Self) -> bool {
        self.value.to_bits() == other.value.to_bits()
            && self.valid == other.valid
            && self.degenerate == other.degenerate
            && self.verdict == other.verdict
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub k: usize,
    pub lambda_k: f64,
    pub running_avg: f64,
    /// `σ₀` and collar ratio used by the `σ₀`-dependent bounds.
    pub sigma0: Option<f64>,
    pub theta: Option<f64>,
    /// Seeded Monte Carlo estimate of `theta`.
    pub theta_mc: Option<f64>,
    pub cells: Vec<BoundCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bounds: Vec<BoundId>,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub k: usize,
    pub bound: BoundId,
    pub value: f64,
    pub target: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.bound.check() {
            Check::LowerAverage | Check::LowerKth => ">",
            _ => "<",
        };
        write!(f, "violation k={} {}: {:.10e} {rel} {:.10e}", self.k, self.bound, self.value, self.target)
    }
}

impl BoundReport {
    pub fn has_sigma0(&self) -> bool {
        self.bounds.iter().any(BoundId::uses_sigma0)
    }

    pub fn has_theta_mc(&self) -> bool {
        self.rows.iter().any(|r| r.theta_mc.is_some())
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (b, cell) in self.bounds.iter().zip(&row.cells) {
                if cell.verdict == Verdict::Violation {
                    let target = match b.check() {
                        Check::LowerKth | Check::UpperKth => row.lambda_k,
                        _ => row.running_avg,
                    };
                    out.push(Violation { k: row.k, bound: *b, value: cell.value, target });
                }
            }
        }
        out
    }

    /// Whether some `σ₀`-dependent bound was requested but no row had
    /// usable (valid, non-degenerate) parameters for it.
    pub fn sigma0_unusable(&self) -> bool {
        let cols: Vec<usize> = (0..self.bounds.len()).filter(|&i| self.bounds[i].uses_sigma0()).collect();
        !cols.is_empty()
            && cols.iter().all(|&i| {
                self.rows.iter().all(|r| !r.cells[i].valid || r.cells[i].degenerate)
            })
    }

    /// Equality that treats NaN cells as equal.
    pub fn same_as(&self, other: &Self) -> bool {
        self.bounds == other.bounds
            && self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| {
                let opt = |x: Option<f64>, y: Option<f64>| x.map(f64::to_bits) == y.map(f64::to_bits);
                a.k == b.k
                    && a.lambda_k.to_bits() == b.lambda_k.to_bits()
                    && a.running_avg.to_bits() == b.running_avg.to_bits()
                    && opt(a.sigma0, b.sigma0)
                    && opt(a.theta, b.theta)
                    && opt(a.theta_mc, b.theta_mc)
                    && a.cells.len() == b.cells.len()
                    && a.cells.iter().zip(&b.cells).all(|(x, y)| x.same_as(y))
            })
    }
}

/// The first `count` eigenvalues for the configured problem and solver.
pub fn compute_spectrum(cfg: &ExperimentConfig, count: usize) -> Result<Spectrum, HarnessError> {
    let spec = cfg.spec()?;
    let l = spec.l();
    let domain = spec.domain();
    let sides: Option<Vec<f64>> = match domain.shape() {
        Shape::Interval { length } => Some(vec![*length]),
        Shape::Box { sides } => Some(sides.clone()),
        Shape::Ball { .. } => None,
    };
    let interval_len = match domain.shape() {
        Shape::Interval { length } => Some(*length),
        Shape::Box { sides } if sides.len() == 1 => Some(sides[0]),
        _ => None,
    };
    let square_side = match domain.shape() {
        Shape::Box { sides } if sides.len() == 2 && sides[0] == sides[1] => Some(sides[0]),
        _ => None,
    };
    let unsupported = || {
        HarnessError::Config(format!(
            "solver {:?} has no spectrum for l = {l} on this domain",
            cfg.solver.method
        ))
    };
    let method = match cfg.solver.method {
        SolverMethod::Auto => {
            if l == 1 && sides.is_some() {
                SolverMethod::ExactBoxL1
            } else if l == 2 && interval_len.is_some() {
                SolverMethod::BeamRoots
            } else {
                SolverMethod::RayleighRitz
            }
        }
        m => m,
    };
    let spectrum = match method {
        SolverMethod::ExactBoxL1 => {
            if l != 1 {
                return Err(unsupported());
            }
            eigensolve::exact_box_spectrum_l1(&sides.ok_or_else(unsupported)?, count)?
        }
        SolverMethod::BeamRoots => {
            if l != 2 {
                return Err(unsupported());
            }
            eigensolve::clamped_beam_spectrum(interval_len.ok_or_else(unsupported)?, count)?
        }
        SolverMethod::RayleighRitz | SolverMethod::Auto => {
            let s = if let Some(len) = interval_len {
                let basis = cfg.solver.basis.unwrap_or(count + 8);
                eigensolve::rayleigh_ritz_interval(l, len, basis, count)?
            } else if let Some(side) = square_side {
                let basis = cfg.solver.basis.unwrap_or(12);
                eigensolve::rayleigh_ritz_square(l, side, basis, count)?
            } else {
                return Err(unsupported());
            };
            if s.converged_count() < count {
                return Err(HarnessError::NotConverged {
                    needed: count,
                    converged: s.converged_count(),
                    basis: s.basis_size(),
                });
            }
            s
        }
    };
    Ok(spectrum)
}

struct Context<'a> {
    spec: ProblemSpec,
    form: IndexForm,
    policy: Sigma0Policy,
    values: &'a [f64],
    prefix_sums: Vec<f64>,
    delta0: Option<f64>,
    mc_samples: usize,
    seed: u64,
}

/// Runs the experiment in memory. Rows are computed in parallel and
/// assembled in `k` order, so the result depends only on the config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<BoundReport, HarnessError> {
    cfg.validate()?;
    let bounds = cfg.bound_ids()?;
    let spec = cfg.spec()?;
    let spectrum = compute_spectrum(cfg, cfg.k_range.end)?;
    let mut values = spectrum.values().to_vec();
    if let Some(c) = cfg.corrupt {
        values.iter_mut().for_each(|v| *v *= c.factor);
    }
    let mut prefix_sums = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    for v in &values {
        acc += v;
        prefix_sums.push(acc);
    }
    let delta0 = if bounds.contains(&BoundId::CorollaryUpper) {
        let d = spec.domain();
        Some(geometry::collar_decay_delta0(d, 1.0, &geometry::default_sigma_grid(d))?)
    } else {
        None
    };
    let ctx = Context {
        spec,
        form: cfg.index_form(),
        policy: cfg.sigma0,
        values: &values,
        prefix_sums,
        delta0,
        mc_samples: cfg.mc_samples,
        seed: cfg.seed,
    };
    let ks: Vec<usize> = cfg.k_range.iter().collect();
    let rows = ks
        .par_iter()
        .map(|&k| row_for(&ctx, &bounds, k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BoundReport { bounds, rows })
}

fn sigma_params(ctx: &Context, k_param: usize) -> Result<Option<BoundParams>, HarnessError> {
    let found = match ctx.policy {
        Sigma0Policy::Fixed { value } => BoundParams::for_spec(&ctx.spec, value, k_param),
        Sigma0Policy::Optimized { grid } => bounds::optimize_sigma0(&ctx.spec, k_param, grid, ctx.form),
    };
    match found {
        Ok(p) => Ok(Some(p)),
        Err(BoundsError::NoAdmissibleSigma0 { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn row_for(ctx: &Context, ids: &[BoundId], k: usize) -> Result<ReportRow, HarnessError> {
    let lambda_k = ctx.values[k - 1];
    let running_avg = ctx.prefix_sums[k - 1] / k as f64;
    // proof form bounds the average of k_param + 1 values
    let k_param = match ctx.form {
        IndexForm::Stated => k,
        IndexForm::Proof => k - 1,
    };
    let params = if ids.iter().any(BoundId::uses_sigma0) && k_param >= 1 {
        sigma_params(ctx, k_param)?
    } else {
        None
    };
    let theta_mc = match params {
        Some(p) if ctx.mc_samples > 0 => {
            let c = CollarSpec::new(p.sigma0)?;
            let mc = geometry::collar_volume_mc(ctx.spec.domain(), c, ctx.mc_samples, ctx.seed ^ k as u64)?;
            Some(mc.estimate / ctx.spec.volume())
        }
        _ => None,
    };

    let mut cells = Vec::with_capacity(ids.len());
    for id in ids {
        let cell = match evaluate(ctx, *id, k, k_param, params.as_ref()) {
            Some((value, valid, degenerate)) => {
                let target = match id.check() {
                    Check::LowerKth | Check::UpperKth => lambda_k,
                    _ => running_avg,
                };
                let verdict = if !valid || degenerate {
                    Verdict::Skip
                } else if value.is_nan() {
                    // a valid bound with no value: the inputs contradict it
                    Verdict::Violation
                } else {
                    match id.check() {
                        Check::Reference => Verdict::Skip,
                        Check::LowerAverage | Check::LowerKth => {
                            if value <= target * (1.0 + CHECK_REL_TOL) {
                                Verdict::Ok
                            } else {
                                Verdict::Violation
                            }
                        }
                        Check::UpperAverage | Check::UpperKth => {
                            if value >= target * (1.0 - CHECK_REL_TOL) {
                                Verdict::Ok
                            } else {
                                Verdict::Violation
                            }
                        }
                    }
                };
                BoundCell { value, valid, degenerate, verdict }
            }
            None => BoundCell::not_applicable(),
        };
        cells.push(cell);
    }
    Ok(ReportRow {
        k,
        lambda_k,
        running_avg,
        sigma0: params.map(|p| p.sigma0),
        theta: params.map(|p| p.theta),
        theta_mc,
        cells,
    })
}

/// `(value, valid, degenerate)`, or `None` when the bound does not apply.
fn evaluate(
    ctx: &Context,
    id: BoundId,
    k: usize,
    k_param: usize,
    params: Option<&BoundParams>,
) -> Option<(f64, bool, bool)> {
    let spec = &ctx.spec;
    let plain = |r: Result<f64, BoundsError>| r.ok().map(|v| (v, true, false));
    match id {
        BoundId::WeylKth => plain(bounds::weyl_kth(spec, k)),
        BoundId::WeylAverage => plain(bounds::weyl_average(spec, k)),
        BoundId::LiYau => plain(bounds::li_yau_lower(spec, k)),
        BoundId::Polya => {
            // proven for tiling domains only
            let tiles = !matches!(spec.domain().shape(), Shape::Ball { .. });
            bounds::polya_tiling_lower(spec, k).ok().map(|v| (v, tiles, false))
        }
        BoundId::LevineProtterGeneral => plain(bounds::levine_protter_lower(spec, k, LpVariant::GeneralL)),
        BoundId::LevineProtterClamped => {
            plain(bounds::levine_protter_lower(spec, k, LpVariant::Clamped16Pi4))
        }
        BoundId::ChengQiWei => plain(bounds::cheng_qi_wei_lower(spec, k)),
        BoundId::TheoremUpper => {
            let p = params?;
            let b = bounds::theorem_upper(spec, p, ctx.form);
            Some((b.value, b.valid, b.degenerate))
        }
        BoundId::CorollaryUpper => {
            let delta0 = ctx.delta0?;
            bounds::corollary_upper(spec, delta0, 1.0, k_param.max(1), ctx.form)
                .ok()
                .filter(|_| k_param >= 1)
                .map(|c| (c.value, true, false))
        }
        BoundId::ChengWei => {
            // bounds the average of the first k values through its k - 1 form
            if spec.l() != 2 || k < 2 {
                return None;
            }
            let p = params?;
            if p.is_degenerate() {
                return Some((f64::INFINITY, false, true));
            }
            let v = bounds::cheng_wei_clamped_upper(spec.n(), spec.volume(), p.theta, k - 1).ok()?;
            let valid = p.sigma_admissible(spec)
                && (k - 1) as f64 >= spec.volume() * p.sigma0.powi(spec.n() as i32);
            Some((v, valid, false))
        }
        BoundId::Ppw | BoundId::Yang => {
            if k < 2 {
                return None;
            }
            let prefix = &ctx.values[..k - 1];
            let r = if id == BoundId::Ppw {
                bounds::ppw_next_upper(spec, prefix)
            } else {
                bounds::yang_next_upper(spec, prefix)
            };
            match r {
                Ok(v) => Some((v, true, false)),
                // a prefix that cannot satisfy the inequality is itself a violation
                Err(BoundsError::InconsistentPrefix) => Some((f64::NAN, true, false)),
                Err(_) => None,
            }
        }
    }
}

/// Runs the experiment and maps the outcome to an exit code, printing
/// one line per violation.
pub fn verify(cfg: &ExperimentConfig) -> Result<(BoundReport, i32), HarnessError> {
    let report = run_experiment(cfg)?;
    let violations = report.violations();
    for v in &violations {
        println!("{v}");
    }
    let code = if !violations.is_empty() {
        crate::error::exit::VIOLATIONS
    } else if report.sigma0_unusable() {
        HarnessError::NoUsableSigma0.exit_code()
    } else {
        crate::error::exit::OK
    };
    Ok((report, code))
}
