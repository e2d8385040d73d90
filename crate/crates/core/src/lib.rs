//! Schensted row insertion with bumping-route recording, the closed-form
//! limit curves the routes converge to, Plancherel-random tableau sampling,
//! and seeded Monte Carlo experiments tying the three together.
//!
//! The library is organized bottom-up:
//!
//! * [`tableau`] — increasing tableaux, row insertion, bumping routes;
//! * [`curves`] — the semicircle CDF/quantile, the limit shape `omega`, and
//!   the curve family `beta(alpha, ·)` with its parametrization helpers;
//! * [`plancherel`] — seeded sampling of uniform-entry and Plancherel-random
//!   tableaux, standardization, sublevel restriction;
//! * [`experiments`] — per-trial simulation and aggregated convergence
//!   reports (data-parallel by default, sequential fallback always built);
//! * [`calibration`] — pilot-run reference values used by the verification
//!   checks.
//!
//! All randomness flows through [`plancherel::SeededRng`]; every trial of a
//! larger experiment runs on its own deterministically derived stream, so
//! reports are byte-identical across runs and thread counts.

pub mod calibration;
pub mod curves;
pub mod error;
pub mod experiments;
pub mod plancherel;
pub mod tableau;

pub use error::{Error, Result};
