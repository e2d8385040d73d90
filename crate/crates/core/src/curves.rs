//! Closed-form limit curves for bumping routes.
//!
//! The scaled shape of a large random tableau is governed by the function
//! `omega` on [-2, 2] (in rotated coordinates `u = x - y`, `v = x + y`) and
//! by the semicircle distribution with CDF `F` on [-2, 2]. For a fixed
//! `alpha` in [0, 1), the bumping route of `alpha` inserted into a large
//! uniform-entry tableau concentrates around an explicit curve: in
//! rotated coordinates it is traced by
//!
//! ```text
//! u_alpha(t) = sqrt(t) * F^{-1}(alpha / t)
//! v_alpha(t) = sqrt(t) * omega(F^{-1}(alpha / t)),    t in [alpha, 1],
//! ```
//!
//! with plane coordinates `x = (v + u) / 2`, `y = (v - u) / 2`. As `t` runs
//! from `alpha` to 1, the height `y_alpha(t)` increases from 0 to
//! `kappa(alpha) = y_alpha(1)` while `x_alpha(t)` decreases; the graph form
//! used everywhere else is `beta(alpha, s) = x_alpha(y_alpha^{-1}(s))` for
//! `s in [0, kappa(alpha)]`. The curve starts at `beta(alpha, 0) =
//! 2 sqrt(alpha)` on the x-axis and ends on the shape boundary at the point
//! with rotated coordinates `(F^{-1}(alpha), omega(F^{-1}(alpha)))`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Absolute tolerance of the bisection behind [`semicircle_quantile`].
pub const QUANTILE_TOL: f64 = 1e-12;
/// Absolute tolerance (in `t`) of the bisection behind [`y_inverse`].
pub const Y_INVERSE_TOL: f64 = 1e-10;
/// Alphas at or above this are treated as degenerate: the curve collapses
/// to its endpoint and `beta` returns the endpoint abscissa.
pub const DEGENERATE_ALPHA: f64 = 1.0 - 1e-12;
/// Default number of grid points for [`sample_curve`].
pub const DEFAULT_CURVE_GRID: usize = 200;

/// Slack allowed when clamping arguments onto closed domains; anything
/// further out is a hard domain error.
const DOMAIN_SLACK: f64 = 1e-15;
/// Slack allowed on `s` at the ends of `[0, kappa]` in [`y_inverse`].
const S_SLACK: f64 = 1e-9;

fn require_finite(x: f64, context: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite { context })
    }
}

/// Clamps `x` onto `[lo, hi]`, tolerating only [`DOMAIN_SLACK`] of overshoot.
fn clamp_domain(x: f64, lo: f64, hi: f64, context: &'static str) -> Result<f64> {
    let x = require_finite(x, context)?;
    if x < lo {
        if lo - x <= DOMAIN_SLACK {
            return Ok(lo);
        }
        return Err(Error::Domain { context, value: x });
    }
    if x > hi {
        if x - hi <= DOMAIN_SLACK {
            return Ok(hi);
        }
        return Err(Error::Domain { context, value: x });
    }
    Ok(x)
}

/// Validates `alpha` in the half-open interval [0, 1).
fn check_alpha(alpha: f64, context: &'static str) -> Result<f64> {
    let alpha = require_finite(alpha, context)?;
    if alpha >= 1.0 {
        return Err(Error::Domain {
            context,
            value: alpha,
        });
    }
    clamp_domain(alpha, 0.0, 1.0, context)
}

// ======================================================================
// The limit shape and the semicircle distribution
// ======================================================================

/// The limit shape in rotated coordinates:
/// `omega(u) = (2/pi) (u asin(u/2) + sqrt(4 - u^2))` on [-2, 2].
///
/// `omega` is even, has `omega(0) = 4/pi`, and meets the lines `v = ±u`
/// exactly at `u = ±2` (`omega(±2) = 2`, evaluated exactly here).
pub fn omega(u: f64) -> Result<f64> {
    let u = clamp_domain(u, -2.0, 2.0, "omega u")?;
    Ok(2.0 * (u * (0.5 * u).asin() + (4.0 - u * u).sqrt()) / PI)
}

/// CDF of the semicircle distribution on [-2, 2]:
/// `F(u) = 1/2 + (u sqrt(4 - u^2) / 4 + asin(u/2)) / pi`.
///
/// `F(-2) = 0`, `F(0) = 1/2`, and `F(2) = 1` hold exactly in floating point.
pub fn semicircle_cdf(u: f64) -> Result<f64> {
    let u = clamp_domain(u, -2.0, 2.0, "semicircle_cdf u")?;
    Ok(0.5 + (0.25 * u * (4.0 - u * u).sqrt() + (0.5 * u).asin()) / PI)
}

/// Quantile `F^{-1}(p)` of the semicircle distribution, found by bisection
/// to absolute tolerance [`QUANTILE_TOL`]; exact CDF hits return early, so
/// `semicircle_quantile(1/2) == 0` exactly.
pub fn semicircle_quantile(p: f64) -> Result<f64> {
    let p = clamp_domain(p, 0.0, 1.0, "semicircle_quantile p")?;
    if p == 0.0 {
        return Ok(-2.0);
    }
    if p == 1.0 {
        return Ok(2.0);
    }
    let mut lo = -2.0f64;
    let mut hi = 2.0f64;
    while hi - lo > QUANTILE_TOL {
        let mid = 0.5 * (lo + hi);
        let fm = semicircle_cdf(mid)?;
        if fm == p {
            return Ok(mid);
        }
        if fm < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

// ======================================================================
// The route curve family
// ======================================================================

/// One point of the route curve for a given `alpha`, in both coordinate
/// systems: rotated `(u, v)` and plane `(x, y)`, at curve time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveParams {
    /// Curve time in `[alpha, 1]`.
    pub t: f64,
    /// Rotated abscissa `x - y`.
    pub u: f64,
    /// Rotated ordinate `x + y`.
    pub v: f64,
    /// Plane abscissa (scaled column direction).
    pub x: f64,
    /// Plane ordinate (scaled row direction).
    pub y: f64,
}

/// Evaluates the parametrized curve for `alpha` at time `t in [alpha, 1]`:
/// `u = sqrt(t) F^{-1}(alpha/t)`, `v = sqrt(t) omega(F^{-1}(alpha/t))`,
/// `x = (v+u)/2`, `y = (v-u)/2`. At `t = alpha` this is the x-axis point
/// `(2 sqrt(alpha), 0)`, evaluated exactly.
pub fn curve_params(alpha: f64, t: f64) -> Result<CurveParams> {
    let alpha = check_alpha(alpha, "curve_params alpha")?;
    let t = clamp_domain(t, alpha, 1.0, "curve_params t")?;
    // t == alpha covers t == 0 as well (only reachable when alpha == 0).
    let ratio = if t == alpha { 1.0 } else { alpha / t };
    let q = semicircle_quantile(ratio)?;
    let scale = t.sqrt();
    let u = scale * q;
    let v = scale * omega(q)?;
    Ok(CurveParams {
        t,
        u,
        v,
        x: 0.5 * (v + u),
        y: 0.5 * (v - u),
    })
}

/// Final height of the route curve: `kappa(alpha) = y_alpha(1)
/// = (omega(F^{-1}(alpha)) - F^{-1}(alpha)) / 2`, strictly decreasing from
/// `kappa(0) = 2` to `kappa(1) = 0`. Unlike the curve itself this is also
/// defined at `alpha = 1`.
pub fn kappa(alpha: f64) -> Result<f64> {
    let alpha = clamp_domain(alpha, 0.0, 1.0, "kappa alpha")?;
    let q = semicircle_quantile(alpha)?;
    Ok(0.5 * (omega(q)? - q))
}

/// Rotated coordinates `(U, V) = (F^{-1}(alpha), omega(F^{-1}(alpha)))` of
/// the point where the route curve meets the limiting shape boundary.
pub fn endpoint(alpha: f64) -> Result<(f64, f64)> {
    let alpha = clamp_domain(alpha, 0.0, 1.0, "endpoint alpha")?;
    let q = semicircle_quantile(alpha)?;
    Ok((q, omega(q)?))
}

/// Inverts the height function: returns the `t in [alpha, 1]` with
/// `y_alpha(t) = s`, by bisection to [`Y_INVERSE_TOL`]. `y_alpha` increases
/// strictly from `y_alpha(alpha) = 0` to `y_alpha(1) = kappa(alpha)`;
/// `s` outside `[0, kappa(alpha)]` (beyond a small slack) is a domain error.
pub fn y_inverse(alpha: f64, s: f64) -> Result<f64> {
    let alpha = check_alpha(alpha, "y_inverse alpha")?;
    let s = require_finite(s, "y_inverse s")?;
    let kap = kappa(alpha)?;
    if s < -S_SLACK || s > kap + S_SLACK {
        return Err(Error::Domain {
            context: "y_inverse s",
            value: s,
        });
    }
    if s <= 0.0 {
        return Ok(alpha);
    }
    if s >= kap {
        return Ok(1.0);
    }
    let mut lo = alpha;
    let mut hi = 1.0;
    while hi - lo > Y_INVERSE_TOL {
        let mid = 0.5 * (lo + hi);
        if curve_params(alpha, mid)?.y < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The route curve in graph form: `beta(alpha, s) = x_alpha(y_inverse(s))`
/// for `s in [0, kappa(alpha)]`.
///
/// `beta(alpha, 0) = 2 sqrt(alpha)` exactly; `beta(0, s) = 0` exactly for
/// every `s` (the route of a minimal value hugs column 1). For `alpha >=`
/// [`DEGENERATE_ALPHA`] the curve collapses and the endpoint abscissa
/// `(U + V) / 2` is returned for every `s`.
pub fn beta(alpha: f64, s: f64) -> Result<f64> {
    let alpha = check_alpha(alpha, "beta alpha")?;
    if alpha >= DEGENERATE_ALPHA {
        let (u, v) = endpoint(alpha)?;
        return Ok(0.5 * (u + v));
    }
    let t = y_inverse(alpha, s)?;
    Ok(curve_params(alpha, t)?.x)
}

// ======================================================================
// Sampled curves
// ======================================================================

/// A route curve sampled on a uniform `s`-grid over `[0, kappa(alpha)]`,
/// for cheap repeated evaluation. Linear interpolation between nodes comes
/// with a conservative error bound so callers can fall back to the exact
/// [`beta`] where the grid is too coarse.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitCurve {
    alpha: f64,
    kappa: f64,
    endpoint_uv: (f64, f64),
    samples: Vec<(f64, f64)>,
    /// Fault-injection multiplier applied by [`scale_beta`](Self::scale_beta);
    /// 1.0 for honest curves. Exact re-evaluation honours it so that a
    /// deliberately corrupted curve stays corrupted.
    beta_scale: f64,
}

impl LimitCurve {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Rotated coordinates of the curve's endpoint on the shape boundary.
    pub fn endpoint_uv(&self) -> (f64, f64) {
        self.endpoint_uv
    }

    /// Grid samples `(s_i, beta(alpha, s_i))`, `s` ascending and uniform.
    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// Linear interpolation at `s` (clamped to `[0, kappa]`), returning the
    /// value together with a conservative bound on the interpolation error.
    /// Node hits are exact (bound 0). The bound is estimated from
    /// neighbouring second differences; where no curvature information
    /// exists the bound is made large to force exact re-evaluation.
    pub fn eval_with_bound(&self, s: f64) -> (f64, f64) {
        let n = self.samples.len();
        debug_assert!(n >= 2);
        let (s_last, b_last) = self.samples[n - 1];
        if self.kappa <= 0.0 || s >= s_last {
            return (b_last, 0.0);
        }
        if s <= self.samples[0].0 {
            return (self.samples[0].1, 0.0);
        }
        let h = self.kappa / (n as f64 - 1.0);
        let idx = ((s / h) as usize).min(n - 2);
        let (sa, ba) = self.samples[idx];
        let (sb, bb) = self.samples[idx + 1];
        if s == sa {
            return (ba, 0.0);
        }
        if s == sb {
            return (bb, 0.0);
        }
        let w = (s - sa) / (sb - sa);
        let val = ba + (bb - ba) * w;
        // Linear interpolation errs by at most h^2 max|beta''| / 8 on the
        // cell; a neighbouring second difference is ~ h^2 |beta''|. Using
        // d2 / 2 instead of d2 / 8 leaves a 4x safety factor.
        let mut d2 = 0.0f64;
        let mut have_curvature = false;
        if idx >= 1 {
            d2 = d2.max((self.samples[idx - 1].1 - 2.0 * ba + bb).abs());
            have_curvature = true;
        }
        if idx + 2 < n {
            d2 = d2.max((ba - 2.0 * bb + self.samples[idx + 2].1).abs());
            have_curvature = true;
        }
        let bound = if have_curvature {
            0.5 * d2
        } else {
            (bb - ba).abs().max(1.0)
        };
        (val, bound)
    }

    /// Exact curve value at `s`, bypassing the grid (but honouring any
    /// fault-injection scaling).
    pub fn eval_exact(&self, s: f64) -> Result<f64> {
        Ok(beta(self.alpha, s.clamp(0.0, self.kappa))? * self.beta_scale)
    }

    /// Multiplies the curve by `factor`. This deliberately corrupts it; the
    /// hook exists so tests can confirm that verification catches a wrong
    /// curve. Honest code never calls it.
    pub fn scale_beta(&mut self, factor: f64) {
        for (_, b) in &mut self.samples {
            *b *= factor;
        }
        self.beta_scale *= factor;
    }
}

/// Samples the route curve for `alpha` on `grid_size >= 2` uniform points
/// spanning `[0, kappa(alpha)]` (endpoints included).
pub fn sample_curve(alpha: f64, grid_size: usize) -> Result<LimitCurve> {
    let alpha = check_alpha(alpha, "sample_curve alpha")?;
    if grid_size < 2 {
        return Err(Error::BadConfig {
            what: "curve grid needs at least two points",
        });
    }
    let kap = kappa(alpha)?;
    let step = kap / (grid_size as f64 - 1.0);
    let mut samples = Vec::with_capacity(grid_size);
    for i in 0..grid_size {
        let s = if i + 1 == grid_size {
            kap
        } else {
            step * i as f64
        };
        samples.push((s, beta(alpha, s)?));
    }
    Ok(LimitCurve {
        alpha,
        kappa: kap,
        endpoint_uv: endpoint(alpha)?,
        samples,
        beta_scale: 1.0,
    })
}
