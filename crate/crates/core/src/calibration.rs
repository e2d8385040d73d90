//! Pilot-run reference values for the verification checks.
//!
//! Convergence of the sup distance has no closed-form finite-`n` rate, so
//! pass thresholds are calibrated empirically: one pilot run of the default
//! grid ([`PILOT_TRIALS`] trials per cell, master seed [`PILOT_MASTER_SEED`])
//! produced the medians recorded in [`PILOT_MEDIAN_SUP`], and a check passes
//! while the observed median stays within [`SUP_SLACK`] times the pilot
//! median. The slack absorbs seed-to-seed fluctuation of the median; a
//! wrong curve or a broken sampler overshoots it by far.
//!
//! The values are reproducible with the bundled CLI:
//!
//! ```text
//! schensted verify --seed 0 --trials 100 --n 1000,10000,100000 \
//!     --alpha 0.3,0.5,0.7 --out pilot --format json
//! ```

/// Master seed of the calibration pilot.
pub const PILOT_MASTER_SEED: u64 = 0;
/// Trials per cell in the calibration pilot.
pub const PILOT_TRIALS: usize = 100;
/// Multiplier applied to pilot medians to obtain pass thresholds.
pub const SUP_SLACK: f64 = 2.0;

/// Median sup distance of one pilot cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PilotCell {
    pub n: usize,
    pub alpha: f64,
    pub median_sup: f64,
}

/// Raw pilot medians (no slack applied), default grid, seed 0. Literals are
/// the pilot report's output verbatim (17 significant digits).
#[allow(clippy::excessive_precision)]
pub const PILOT_MEDIAN_SUP: &[PilotCell] = &[
    PilotCell {
        n: 1_000,
        alpha: 0.3,
        median_sup: 0.112_170_544_447_267_73,
    },
    PilotCell {
        n: 1_000,
        alpha: 0.5,
        median_sup: 0.134_470_325_016_287_42,
    },
    PilotCell {
        n: 1_000,
        alpha: 0.7,
        median_sup: 0.162_906_696_600_082_95,
    },
    PilotCell {
        n: 10_000,
        alpha: 0.3,
        median_sup: 0.063_788_192_233_960_678,
    },
    PilotCell {
        n: 10_000,
        alpha: 0.5,
        median_sup: 0.072_811_009_718_959_43,
    },
    PilotCell {
        n: 10_000,
        alpha: 0.7,
        median_sup: 0.079_129_377_989_591_854,
    },
    PilotCell {
        n: 100_000,
        alpha: 0.3,
        median_sup: 0.035_827_440_994_264_603,
    },
    PilotCell {
        n: 100_000,
        alpha: 0.5,
        median_sup: 0.035_793_630_402_903_62,
    },
    PilotCell {
        n: 100_000,
        alpha: 0.7,
        median_sup: 0.035_754_472_733_673_492,
    },
];

/// Pass threshold for the median sup distance of an `(n, alpha)` cell:
/// pilot median times [`SUP_SLACK`]. `None` for uncalibrated cells (no
/// matching pilot entry), which are then only subject to the
/// monotone-decay check.
pub fn sup_threshold(n: usize, alpha: f64) -> Option<f64> {
    PILOT_MEDIAN_SUP
        .iter()
        .find(|c| c.n == n && (c.alpha - alpha).abs() <= 1e-12)
        .map(|c| c.median_sup * SUP_SLACK)
}

/// Tolerance on the mean of `|k/sqrt(n) - kappa(alpha)|` at large `n`.
pub const KAPPA_MEAN_TOL: f64 = 0.05;
/// Tolerance (Euclidean, rotated coordinates) on the mean scaled endpoint
/// at large `n`.
pub const ENDPOINT_TOL: f64 = 0.05;
/// `n` from which the two tolerances above are enforced; smaller cells are
/// still reported but not gated.
pub const LARGE_N: usize = 100_000;
