//! Experiment configuration, read from TOML.
//!
//! ```toml
//! seed = 7
//! proof_form = false
//! mc_samples = 0         # > 0 adds a Monte Carlo collar-ratio column
//! bounds = ["li_yau", "theorem_upper", "weyl_average"]
//!
//! [problem]
//! l = 1
//! domain = { shape = "box", sides = [1.0, 1.0] }
//!
//! [k_range]
//! start = 1
//! end = 100
//!
//! [sigma0]
//! policy = "optimized"   # or: policy = "fixed", value = 4.0
//! grid = 256
//!
//! [solver]
//! method = "auto"        # exact-box-l1 | beam-roots | rayleigh-ritz
//! basis = 16
//!
//! [output]
//! csv = "report.csv"
//! plot = "report.gp"
//! log_log = false
//!
//! [corrupt]              # test fixtures only: scales the spectrum
//! factor = 0.5
//! ```
//!
//! Domains: `{ shape = "interval", length }`, `{ shape = "box", sides }`,
//! `{ shape = "ball", dim, radius }`, each with an optional `center`.

use std::path::Path;
use std::str::FromStr;

use polybound_core::bounds::DEFAULT_SIGMA0_GRID;
use polybound_core::{Domain, IndexForm, ProblemSpec};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::experiment::BoundId;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemConfig,
    pub k_range: KRange,
    #[serde(default)]
    pub bounds: Vec<String>,
    #[serde(default)]
    pub sigma0: Sigma0Policy,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub seed: u64,
    /// Evaluate the collar bound in its `(1 + k)` form.
    #[serde(default)]
    pub proof_form: bool,
    /// Monte Carlo samples for the seeded cross-check of the collar ratio;
    /// 0 disables it.
    #[serde(default)]
    pub mc_samples: usize,
    /// Test fixture: multiplies every computed eigenvalue by `factor`.
    #[serde(default)]
    pub corrupt: Option<Corruption>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub l: usize,
    pub domain: DomainConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainConfig {
    Interval {
        length: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
    Box {
        sides: Vec<f64>,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
    Ball {
        dim: usize,
        radius: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
}

impl DomainConfig {
    pub fn build(&self) -> Result<Domain, HarnessError> {
        let (d, center) = match self {
            Self::Interval { length, center } => (Domain::interval(*length)?, center),
            Self::Box { sides, center } => (Domain::boxed(sides)?, center),
            Self::Ball { dim, radius, center } => (Domain::ball(*dim, *radius)?, center),
        };
        Ok(match center {
            Some(c) => d.with_center(c)?,
            None => d,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KRange {
    pub start: usize,
    pub end: usize,
}

impl KRange {
    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "lowercase", deny_unknown_fields)]
pub enum Sigma0Policy {
    Fixed { value: f64 },
    Optimized {
        #[serde(default = "default_grid")]
        grid: usize,
    },
}

fn default_grid() -> usize {
    DEFAULT_SIGMA0_GRID
}

impl Default for Sigma0Policy {
    fn default() -> Self {
        Self::Optimized { grid: DEFAULT_SIGMA0_GRID }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMethod {
    /// Exact where available, Rayleigh-Ritz otherwise.
    #[default]
    Auto,
    ExactBoxL1,
    BeamRoots,
    RayleighRitz,
}

impl FromStr for SolverMethod {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            "exact-box-l1" => Ok(Self::ExactBoxL1),
            "beam-roots" => Ok(Self::BeamRoots),
            "rayleigh-ritz" => Ok(Self::RayleighRitz),
            other => Err(HarnessError::Config(format!("unknown solver method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default)]
    pub method: SolverMethod,
    /// Trial functions per dimension for Rayleigh-Ritz. `None` picks
    /// `count + 8` on intervals and 12 on squares.
    #[serde(default)]
    pub basis: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { method: SolverMethod::Auto, basis: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_csv")]
    pub csv: String,
    #[serde(default = "default_plot")]
    pub plot: String,
    #[serde(default)]
    pub log_log: bool,
}

fn default_csv() -> String {
    "report.csv".into()
}

fn default_plot() -> String {
    "report.gp".into()
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { csv: default_csv(), plot: default_plot(), log_log: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corruption {
    pub factor: f64,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        let cfg: Self = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.k_range.start == 0 || self.k_range.start > self.k_range.end {
            return Err(HarnessError::Config(format!(
                "k_range must satisfy 1 <= start <= end, got {}..={}",
                self.k_range.start, self.k_range.end
            )));
        }
        self.bound_ids()?;
        self.spec()?;
        if let Sigma0Policy::Optimized { grid: 0 } = self.sigma0 {
            return Err(HarnessError::Config("sigma0 grid must be positive".into()));
        }
        if let Sigma0Policy::Fixed { value } = self.sigma0 {
            if value.is_nan() || value <= 0.0 {
                return Err(HarnessError::Config(format!("fixed sigma0 must be positive, got {value}")));
            }
        }
        if let Some(c) = self.corrupt {
            if c.factor.is_nan() || c.factor <= 0.0 {
                return Err(HarnessError::Config("corrupt.factor must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn bound_ids(&self) -> Result<Vec<BoundId>, HarnessError> {
        let ids = self
            .bounds
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<BoundId>, _>>()?;
        for (i, id) in ids.iter().enumerate() {
            if ids[..i].contains(id) {
                return Err(HarnessError::Config(format!("bound '{id}' listed twice")));
            }
        }
        Ok(ids)
    }

    pub fn spec(&self) -> Result<ProblemSpec, HarnessError> {
        Ok(ProblemSpec::new(self.problem.l, self.problem.domain.build()?)?)
    }

    pub fn index_form(&self) -> IndexForm {
        if self.proof_form {
            IndexForm::Proof
        } else {
            IndexForm::Stated
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
seed = 3
bounds = ["li_yau", "theorem_upper"]
[problem]
l = 1
domain = { shape = "box", sides = [1.0, 1.0] }
[k_range]
start = 1
end = 10
[sigma0]
policy = "fixed"
value = 4.0
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!(cfg.sigma0, Sigma0Policy::Fixed { value: 4.0 });
        assert_eq!(cfg.solver.method, SolverMethod::Auto);
        assert_eq!(cfg.output.csv, "report.csv");
        let again = ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn rejects_bad_configs() {
        let bad_range = SAMPLE.replace("start = 1", "start = 11");
        assert!(matches!(ExperimentConfig::from_toml_str(&bad_range), Err(HarnessError::Config(_))));
        let bad_bound = SAMPLE.replace("\"li_yau\"", "\"nonsense\"");
        assert!(ExperimentConfig::from_toml_str(&bad_bound).is_err());
        let bad_key = format!("{SAMPLE}\nunknown = 1\n");
        assert!(ExperimentConfig::from_toml_str(&bad_key).is_err());
        let bad_domain = SAMPLE.replace("sides = [1.0, 1.0]", "sides = [1.0, -1.0]");
        assert!(ExperimentConfig::from_toml_str(&bad_domain).is_err());
    }
}
