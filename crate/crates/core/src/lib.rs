//! Closed-form eigenvalue bounds and reference spectra for the Dirichlet
//! poly-Laplacian `(-Δ)^l u = Λ u` with clamped boundary conditions.
//!
//! The crate is `no_std` and only needs `alloc`. It is split into three
//! layers:
//!
//! * [`geometry`]: admissible domains (intervals, axis-aligned boxes, balls)
//!   and the geometric quantities the bounds consume: volumes, boundary
//!   collar volumes, moment of inertia, `sup |x|²`.
//! * [`bounds`]: the upper bound for the running average `(1/k) Σ Λ_j`
//!   driven by the boundary collar, its assembly from the radial
//!   `ξ`-integral, and the classical bounds it is compared against
//!   (Weyl, Pólya, Li-Yau, Levine-Protter, Cheng-Qi-Wei, Cheng-Wei,
//!   PPW and Yang-type inequalities).
//! * [`eigensolve`]: exact and Rayleigh-Ritz reference spectra.

#![no_std]
// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
pub mod eigensolve;
pub mod geometry;

mod math;

pub use bounds::{BoundParams, BoundsError, IndexForm, ProblemSpec};
pub use eigensolve::{Method, SolveError, Spectrum};
pub use geometry::{CollarSpec, Domain, GeometryError};
