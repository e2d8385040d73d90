//! Monte Carlo experiments: single trials and aggregated convergence
//! reports.
//!
//! A trial at size `n` and fraction `alpha` draws `n - 1` distinct uniform
//! entries, builds their insertion tableau, row-inserts `alpha`, and
//! compares the bumping route against the limit curve `beta(alpha, ·)`:
//! route box `(b(m), m)` is matched with the curve point at height
//! `s = min(m / sqrt(n), kappa(alpha))`, and the trial records the sup of
//! `|b(m)/sqrt(n) - beta(alpha, s)|` over the whole route. As `n` grows
//! this sup tends to zero in probability, the scaled route length
//! `k / sqrt(n)` tends to `kappa(alpha)`, and the scaled last box tends to
//! the curve's endpoint on the shape boundary.
//!
//! Reports run a grid of `(n, alpha)` cells, each with its own batch of
//! trials. Trial `j` of cell `i` always draws from RNG stream
//! `i << 32 | j` of the master seed, so a report is a pure function of its
//! configuration: runs are byte-identical across repeats, thread counts,
//! and the parallel/sequential feature choice.

use crate::curves::{self, LimitCurve};
use crate::error::{Error, Result};
use crate::plancherel::{sample_distinct_uniforms, SeededRng};
use crate::tableau::{insertion_tableau_unchecked, BumpingRoute, IncreasingTableau};

/// Interpolated curve values whose error bound exceeds this are re-evaluated
/// exactly; see [`route_sup_distance`].
const REFINE_TOL: f64 = 1e-6;

/// Default number of thresholds for [`uniform_t_grid`].
pub const DEFAULT_EXIT_GRID: usize = 64;

/// Default curve grid for reports; finer than the export default so that
/// most route points interpolate instead of triggering exact re-evaluation.
pub const DEFAULT_REPORT_GRID: usize = 512;

// ======================================================================
// Sup distance between a route and the limit curve
// ======================================================================

/// Exact sup over the route of the scaled distance to the limit curve:
/// `max_m |b(m)/sqrt(n) - beta(alpha, min(m/sqrt(n), kappa))|`.
///
/// The curve is first evaluated by interpolation on the sampled grid.
/// Points whose interpolation error bound exceeds `1e-6` fall back to the
/// exact curve immediately; afterwards every point whose distance could
/// still reach the provisional maximum (given its bound) is re-evaluated
/// exactly, so the returned sup carries no interpolation error at all.
pub fn route_sup_distance(
    route: &BumpingRoute,
    alpha: f64,
    n: usize,
    curve: &LimitCurve,
) -> Result<f64> {
    if route.is_empty() {
        return Err(Error::BadConfig {
            what: "route must be non-empty",
        });
    }
    if n == 0 {
        return Err(Error::Domain {
            context: "route_sup_distance n",
            value: 0.0,
        });
    }
    if (curve.alpha() - alpha).abs() > 1e-12 {
        return Err(Error::AlphaMismatch {
            curve_alpha: curve.alpha(),
            requested: alpha,
        });
    }
    let sqrt_n = (n as f64).sqrt();
    let kap = curve.kappa();
    let cols = route.columns();

    // Pass 1: interpolate everywhere, keeping each point's error bound.
    let mut dists = Vec::with_capacity(cols.len());
    for (i, &col) in cols.iter().enumerate() {
        let s = ((i + 1) as f64 / sqrt_n).min(kap);
        let (mut value, mut bound) = curve.eval_with_bound(s);
        if bound > REFINE_TOL {
            value = curve.eval_exact(s)?;
            bound = 0.0;
        }
        let dist = (col as f64 / sqrt_n - value).abs();
        dists.push((dist, bound, s));
    }

    // Pass 2: the true maximum is attained among the points whose distance
    // interval [dist - bound, dist + bound] reaches the best lower bound;
    // re-evaluate exactly those.
    let max_lower = dists
        .iter()
        .map(|&(d, b, _)| d - b)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut best = f64::NEG_INFINITY;
    for (i, &(dist, bound, s)) in dists.iter().enumerate() {
        if dist + bound < max_lower {
            continue;
        }
        let exact = if bound == 0.0 {
            dist
        } else {
            (cols[i] as f64 / sqrt_n - curve.eval_exact(s)?).abs()
        };
        best = best.max(exact);
    }
    Ok(best)
}

// ======================================================================
// Exit points through sublevel tableaux
// ======================================================================

/// Where the route first leaves the sublevel tableau at threshold `t`:
/// the box `(column, row)` (1-based) and its `1/sqrt(n)`-scaled coordinates.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ExitPoint {
    pub t: f64,
    pub column: usize,
    pub row: usize,
    pub x_scaled: f64,
    pub y_scaled: f64,
}

/// Uniform thresholds spanning `[alpha, 1]`, for [`exit_points`].
pub fn uniform_t_grid(alpha: f64, len: usize) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain {
            context: "uniform_t_grid alpha",
            value: alpha,
        });
    }
    if len < 2 {
        return Err(Error::BadConfig {
            what: "threshold grid needs at least two points",
        });
    }
    let step = (1.0 - alpha) / (len as f64 - 1.0);
    Ok((0..len)
        .map(|i| {
            if i + 1 == len {
                1.0
            } else {
                alpha + step * i as f64
            }
        })
        .collect())
}

/// For each threshold `t` of an ascending grid, finds the first route box
/// lying outside the sublevel tableau of `pre` (the tableau *before* the
/// insertion) at `t`: the smallest `m` whose box `(b(m), m)` has
/// `b(m) > #(entries <= t in row m of pre)`. The new box at the end of the
/// route is never part of `pre`, so the exit always exists; it moves weakly
/// up the route as `t` grows, which a single forward pointer exploits.
///
/// At `t = alpha` this is the route's first box; at `t = 1` it is the new
/// box `(b(k), k)`. `n` is the trial size used for coordinate scaling.
pub fn exit_points(
    pre: &IncreasingTableau,
    route: &BumpingRoute,
    n: usize,
    t_grid: &[f64],
) -> Result<Vec<ExitPoint>> {
    if route.is_empty() {
        return Err(Error::BadConfig {
            what: "route must be non-empty",
        });
    }
    if route.len() > pre.row_count() + 1 {
        return Err(Error::BadConfig {
            what: "route is longer than the tableau allows",
        });
    }
    if n == 0 {
        return Err(Error::Domain {
            context: "exit_points n",
            value: 0.0,
        });
    }
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite {
            context: "exit_points t_grid",
        });
    }
    if t_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::BadConfig {
            what: "threshold grid must be ascending",
        });
    }
    let cols = route.columns();
    let rows = pre.rows();
    let sqrt_n = (n as f64).sqrt();
    let mut m = 0; // 0-based index into the route; only ever advances
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        while m + 1 < cols.len() {
            let inside = rows
                .get(m)
                .is_some_and(|row| cols[m] <= row.partition_point(|&e| e <= t));
            if !inside {
                break;
            }
            m += 1;
        }
        let (column, row) = (cols[m], m + 1);
        out.push(ExitPoint {
            t,
            column,
            row,
            x_scaled: column as f64 / sqrt_n,
            y_scaled: row as f64 / sqrt_n,
        });
    }
    Ok(out)
}

// ======================================================================
// Single trials
// ======================================================================

/// Everything recorded about one insertion trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub n: usize,
    pub alpha: f64,
    /// Master seed and stream the trial's RNG was addressed by.
    pub seed: u64,
    pub stream: u64,
    pub route: BumpingRoute,
    /// Route length over `sqrt(n)`; tends to `kappa(alpha)`.
    pub scaled_length: f64,
    /// Sup of the scaled route-to-curve distance; tends to 0.
    pub sup_distance: f64,
    /// Scaled last box in rotated coordinates `((col - row)/sqrt(n),
    /// (col + row)/sqrt(n))`; tends to the curve endpoint.
    pub endpoint_uv_scaled: (f64, f64),
    /// Exit points through sublevel tableaux, when a threshold grid was
    /// supplied.
    pub exit_points: Option<Vec<ExitPoint>>,
}

/// Runs one trial against a pre-sampled curve (`curve.alpha()` must match).
/// Entries are drawn from `rng`, excluding `alpha` itself so the insertion
/// cannot collide. With `exit_grid` set, sublevel exit points are recorded
/// too.
pub fn run_trial_with_curve(
    n: usize,
    alpha: f64,
    rng: &mut SeededRng,
    curve: &LimitCurve,
    exit_grid: Option<&[f64]>,
) -> Result<TrialResult> {
    if n < 2 {
        return Err(Error::Domain {
            context: "run_trial n",
            value: n as f64,
        });
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain {
            context: "run_trial alpha",
            value: alpha,
        });
    }
    let entries = sample_distinct_uniforms(n - 1, rng, Some(alpha));
    let pre = insertion_tableau_unchecked(&entries);
    // Entries are distinct by construction and exclude alpha, so the
    // unchecked insert is safe; cloning is only needed to keep the
    // pre-insertion tableau for exit points.
    let (route, exits) = match exit_grid {
        None => {
            let mut post = pre;
            (post.insert_unchecked(alpha), None)
        }
        Some(grid) => {
            let mut post = pre.clone();
            let route = post.insert_unchecked(alpha);
            let exits = exit_points(&pre, &route, n, grid)?;
            (route, Some(exits))
        }
    };
    let sqrt_n = (n as f64).sqrt();
    let sup_distance = route_sup_distance(&route, alpha, n, curve)?;
    let (col, row) = route.last_box();
    Ok(TrialResult {
        n,
        alpha,
        seed: rng.seed(),
        stream: rng.stream(),
        scaled_length: route.len() as f64 / sqrt_n,
        sup_distance,
        endpoint_uv_scaled: (
            (col as f64 - row as f64) / sqrt_n,
            (col as f64 + row as f64) / sqrt_n,
        ),
        route,
        exit_points: exits,
    })
}

/// One-off trial that samples its own curve at [`DEFAULT_REPORT_GRID`].
/// Batch callers should sample the curve once and use
/// [`run_trial_with_curve`].
pub fn run_trial(n: usize, alpha: f64, rng: &mut SeededRng) -> Result<TrialResult> {
    let curve = curves::sample_curve(alpha, DEFAULT_REPORT_GRID)?;
    run_trial_with_curve(n, alpha, rng, &curve, None)
}

// ======================================================================
// Cells and reports
// ======================================================================

/// One `(n, alpha)` batch of trials inside a report grid.
#[derive(Debug, Clone)]
pub struct CellConfig {
    pub n: usize,
    pub alpha: f64,
    pub trials: usize,
    pub master_seed: u64,
    /// Position of the cell in its grid; part of every trial's stream id.
    pub cell_index: u64,
    pub curve_grid: usize,
}

/// RNG stream for trial `trial` of cell `cell_index`.
fn trial_stream(cell_index: u64, trial: usize) -> u64 {
    (cell_index << 32) | trial as u64
}

fn check_cell(cfg: &CellConfig) -> Result<()> {
    if cfg.trials == 0 {
        return Err(Error::BadConfig {
            what: "a cell needs at least one trial",
        });
    }
    if cfg.trials as u64 >= 1 << 32 {
        return Err(Error::BadConfig {
            what: "trial count must fit in 32 bits",
        });
    }
    Ok(())
}

fn cell_trial(cfg: &CellConfig, curve: &LimitCurve, trial: usize) -> Result<TrialResult> {
    let mut rng = SeededRng::with_stream(cfg.master_seed, trial_stream(cfg.cell_index, trial));
    run_trial_with_curve(cfg.n, cfg.alpha, &mut rng, curve, None)
}

fn run_cell_seq_with(cfg: &CellConfig, curve: &LimitCurve) -> Result<Vec<TrialResult>> {
    check_cell(cfg)?;
    (0..cfg.trials).map(|j| cell_trial(cfg, curve, j)).collect()
}

#[cfg(feature = "parallel")]
fn run_cell_par_with(cfg: &CellConfig, curve: &LimitCurve) -> Result<Vec<TrialResult>> {
    use rayon::prelude::*;
    check_cell(cfg)?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|j| cell_trial(cfg, curve, j))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_cell_par_with(cfg: &CellConfig, curve: &LimitCurve) -> Result<Vec<TrialResult>> {
    run_cell_seq_with(cfg, curve)
}

/// Runs a cell's trials sequentially. Identical output to [`run_cell`].
pub fn run_cell_seq(cfg: &CellConfig) -> Result<Vec<TrialResult>> {
    let curve = curves::sample_curve(cfg.alpha, cfg.curve_grid)?;
    run_cell_seq_with(cfg, &curve)
}

/// Runs a cell's trials, data-parallel when the `parallel` feature is on
/// (sequentially otherwise). Each trial draws from its own RNG stream and
/// results are collected in trial order, so output is identical to
/// [`run_cell_seq`] regardless of thread count.
pub fn run_cell(cfg: &CellConfig) -> Result<Vec<TrialResult>> {
    let curve = curves::sample_curve(cfg.alpha, cfg.curve_grid)?;
    run_cell_par_with(cfg, &curve)
}

/// Five-number summary plus mean of a sample.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Summary {
    pub mean: f64,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

fn quantile_sorted(xs: &[f64], p: f64) -> f64 {
    debug_assert!(!xs.is_empty());
    let h = p * (xs.len() - 1) as f64;
    let lo = h.floor() as usize;
    if lo + 1 >= xs.len() {
        return xs[xs.len() - 1];
    }
    let frac = h - lo as f64;
    xs[lo] + (xs[lo + 1] - xs[lo]) * frac
}

fn summarize(mut xs: Vec<f64>) -> Summary {
    xs.sort_by(f64::total_cmp);
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    Summary {
        mean,
        min: xs[0],
        q25: quantile_sorted(&xs, 0.25),
        median: quantile_sorted(&xs, 0.5),
        q75: quantile_sorted(&xs, 0.75),
        max: xs[xs.len() - 1],
    }
}

/// An exceedance frequency: how often a statistic exceeded `epsilon`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ExceedanceProb {
    pub epsilon: f64,
    pub probability: f64,
}

/// Aggregated statistics of one report cell.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CellStats {
    pub n: usize,
    pub alpha: f64,
    pub trials: usize,
    /// Limit height `kappa(alpha)` the scaled route length converges to.
    pub kappa: f64,
    pub sup_distance: Summary,
    pub scaled_length_mean: f64,
    /// Mean of `|k/sqrt(n) - kappa(alpha)|`.
    pub kappa_abs_dev_mean: f64,
    /// Mean scaled last box in rotated coordinates.
    pub endpoint_mean_uv: (f64, f64),
    /// Euclidean distance from `endpoint_mean_uv` to the curve endpoint.
    pub endpoint_mean_offset: f64,
    /// Fraction of trials with `sup_distance > epsilon`.
    pub sup_exceedance: Vec<ExceedanceProb>,
    /// Fraction of trials with `|k/sqrt(n) - kappa| > epsilon`.
    pub length_exceedance: Vec<ExceedanceProb>,
}

fn summarize_cell(
    cfg: &CellConfig,
    results: &[TrialResult],
    epsilons: &[f64],
) -> Result<CellStats> {
    let kap = curves::kappa(cfg.alpha)?;
    let (endpoint_u, endpoint_v) = curves::endpoint(cfg.alpha)?;
    let trials = results.len();
    let sups: Vec<f64> = results.iter().map(|r| r.sup_distance).collect();
    let devs: Vec<f64> = results
        .iter()
        .map(|r| (r.scaled_length - kap).abs())
        .collect();
    let scaled_length_mean = results.iter().map(|r| r.scaled_length).sum::<f64>() / trials as f64;
    let mean_u = results.iter().map(|r| r.endpoint_uv_scaled.0).sum::<f64>() / trials as f64;
    let mean_v = results.iter().map(|r| r.endpoint_uv_scaled.1).sum::<f64>() / trials as f64;
    let endpoint_mean_offset =
        ((mean_u - endpoint_u).powi(2) + (mean_v - endpoint_v).powi(2)).sqrt();
    let exceed = |xs: &[f64]| -> Vec<ExceedanceProb> {
        epsilons
            .iter()
            .map(|&epsilon| ExceedanceProb {
                epsilon,
                probability: xs.iter().filter(|&&x| x > epsilon).count() as f64 / trials as f64,
            })
            .collect()
    };
    Ok(CellStats {
        n: cfg.n,
        alpha: cfg.alpha,
        trials,
        kappa: kap,
        sup_exceedance: exceed(&sups),
        length_exceedance: exceed(&devs),
        sup_distance: summarize(sups),
        scaled_length_mean,
        kappa_abs_dev_mean: devs.iter().sum::<f64>() / trials as f64,
        endpoint_mean_uv: (mean_u, mean_v),
        endpoint_mean_offset,
    })
}

/// Configuration of a convergence report: the full `(n, alpha)` grid is
/// run with `trials` trials per cell.
#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub n_values: Vec<usize>,
    pub alphas: Vec<f64>,
    pub trials: usize,
    /// Thresholds for the exceedance frequencies.
    pub epsilons: Vec<f64>,
    pub master_seed: u64,
    pub curve_grid: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            n_values: vec![1_000, 10_000, 100_000],
            alphas: vec![0.3, 0.5, 0.7],
            trials: 100,
            epsilons: vec![0.05, 0.1, 0.2],
            master_seed: 0,
            curve_grid: DEFAULT_REPORT_GRID,
        }
    }
}

impl ReportConfig {
    fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::BadConfig {
                what: "report needs at least one n",
            });
        }
        if self.n_values.iter().any(|&n| n < 2) {
            return Err(Error::BadConfig {
                what: "every n must be at least 2",
            });
        }
        if self.alphas.is_empty() {
            return Err(Error::BadConfig {
                what: "report needs at least one alpha",
            });
        }
        if self.epsilons.iter().any(|e| !e.is_finite() || *e < 0.0) {
            return Err(Error::BadConfig {
                what: "epsilons must be finite and non-negative",
            });
        }
        Ok(())
    }

    /// Cells in report order: `n` outer, `alpha` inner.
    fn cells(&self) -> Vec<CellConfig> {
        let mut out = Vec::with_capacity(self.n_values.len() * self.alphas.len());
        for (i, &n) in self.n_values.iter().enumerate() {
            for (j, &alpha) in self.alphas.iter().enumerate() {
                out.push(CellConfig {
                    n,
                    alpha,
                    trials: self.trials,
                    master_seed: self.master_seed,
                    cell_index: (i * self.alphas.len() + j) as u64,
                    curve_grid: self.curve_grid,
                });
            }
        }
        out
    }
}

/// A full convergence report: one [`CellStats`] per grid cell, in
/// configuration order.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ConvergenceReport {
    pub schema_version: u32,
    pub master_seed: u64,
    pub trials_per_cell: usize,
    pub epsilons: Vec<f64>,
    pub curve_grid: usize,
    pub cells: Vec<CellStats>,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

fn report_with(
    cfg: &ReportConfig,
    run: impl Fn(&CellConfig, &LimitCurve) -> Result<Vec<TrialResult>>,
    transform: Option<&dyn Fn(&mut LimitCurve)>,
) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let mut cells = Vec::new();
    for cell_cfg in cfg.cells() {
        let mut curve = curves::sample_curve(cell_cfg.alpha, cell_cfg.curve_grid)?;
        if let Some(f) = transform {
            f(&mut curve);
        }
        let results = run(&cell_cfg, &curve)?;
        cells.push(summarize_cell(&cell_cfg, &results, &cfg.epsilons)?);
    }
    Ok(ConvergenceReport {
        schema_version: REPORT_SCHEMA_VERSION,
        master_seed: cfg.master_seed,
        trials_per_cell: cfg.trials,
        epsilons: cfg.epsilons.clone(),
        curve_grid: cfg.curve_grid,
        cells,
    })
}

/// Runs the whole grid (parallel per cell when the feature is on) and
/// aggregates. Output depends only on the configuration.
pub fn convergence_report(cfg: &ReportConfig) -> Result<ConvergenceReport> {
    report_with(cfg, run_cell_par_with, None)
}

/// Fully sequential version of [`convergence_report`], for comparison and
/// for callers that must not touch a thread pool. Produces identical output.
pub fn convergence_report_seq(cfg: &ReportConfig) -> Result<ConvergenceReport> {
    report_with(cfg, run_cell_seq_with, None)
}

/// Fault-injection variant of [`convergence_report`]: every cell's curve is
/// passed through `transform` before use (e.g. [`LimitCurve::scale_beta`]).
/// Exists so the verification layer can prove it detects a corrupted curve;
/// honest callers never need it.
pub fn convergence_report_injected(
    cfg: &ReportConfig,
    transform: &dyn Fn(&mut LimitCurve),
) -> Result<ConvergenceReport> {
    report_with(cfg, run_cell_par_with, Some(transform))
}
