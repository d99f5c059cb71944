use std::path::PathBuf;

use polybound_core::{BoundsError, GeometryError, SolveError};

/// Process exit codes. `verify` returns `VIOLATIONS` when any checked
/// inequality fails; every error class below maps to its own code.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATIONS: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const SOLVER: i32 = 3;
    pub const NO_USABLE_SIGMA0: i32 = 4;
    pub const IO: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("geometry: {0}")]
    Geometry(#[from] GeometryError),
    #[error("bounds: {0}")]
    Bounds(#[from] BoundsError),
    #[error("solver: {0}")]
    Solver(#[from] SolveError),
    #[error("solver: only {converged} of {needed} eigenvalues converged (basis {basis})")]
    NotConverged { needed: usize, converged: usize, basis: usize },
    #[error("no admissible, non-degenerate sigma0 for any k in the range")]
    NoUsableSigma0,
    #[error("io: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Geometry(_) | Self::Bounds(_) => exit::CONFIG,
            Self::Solver(_) | Self::NotConverged { .. } => exit::SOLVER,
            Self::NoUsableSigma0 => exit::NO_USABLE_SIGMA0,
            Self::Io { .. } | Self::Csv(_) => exit::IO,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

impl From<csv::Error> for HarnessError {
    fn from(e: csv::Error) -> Self {
        Self::Csv(e.to_string())
    }
}
