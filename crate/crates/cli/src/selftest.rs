//! Fast invariant suite behind `schensted selftest`.
//!
//! Five checks, each a few milliseconds to a few seconds: closed-form
//! identities of the curve machinery, the CDF/quantile round trip, the
//! worked insertion example, the exhaustive longest-increasing-subsequence
//! oracle, and curve-sampling self-consistency. Failures name the broken
//! property and exit with code 3.

use std::time::Instant;

use schensted::curves::{beta, kappa, omega, sample_curve, semicircle_cdf, semicircle_quantile};
use schensted::tableau::{insertion_tableau, IncreasingTableau};

use crate::CliError;

type CheckFn = Box<dyn Fn() -> Result<(), String>>;

pub fn run(perm_size: usize, inject_omega_sign_flip: bool) -> Result<(), CliError> {
    let checks: Vec<(&'static str, CheckFn)> = vec![
        (
            "analytic_identities",
            Box::new(move || analytic_identities(inject_omega_sign_flip)),
        ),
        ("cdf_quantile_roundtrip", Box::new(cdf_quantile_roundtrip)),
        ("reference_insertion", Box::new(reference_insertion)),
        (
            "insertion_lis_oracle",
            Box::new(move || insertion_lis_oracle(perm_size)),
        ),
        ("curve_consistency", Box::new(curve_consistency)),
    ];
    let mut failed = Vec::new();
    for (name, check) in &checks {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok(()) => println!("PASS {name} ({ms:.1} ms)"),
            Err(detail) => {
                println!("FAIL {name} — {detail}");
                failed.push(*name);
            }
        }
    }
    println!("selftest: {} checks, {} failed", checks.len(), failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn ensure(cond: bool, what: &str, errs: &mut Vec<String>) {
    if !cond {
        errs.push(what.to_string());
    }
}

/// Closed-form identities, all to 1e-12. The limit shape is routed through
/// a local closure so the fault-injection hook can negate it; a sign flip
/// breaks the very first identity.
fn analytic_identities(flip: bool) -> Result<(), String> {
    let om = |u: f64| -> f64 {
        let v = omega(u).expect("identity arguments are in domain");
        if flip {
            -v
        } else {
            v
        }
    };
    let pi = std::f64::consts::PI;
    let mut errs = Vec::new();
    ensure(
        (om(0.0) - 4.0 / pi).abs() <= 1e-12,
        "omega(0) = 4/pi",
        &mut errs,
    );
    ensure((om(2.0) - 2.0).abs() <= 1e-12, "omega(2) = 2", &mut errs);
    ensure((om(-2.0) - 2.0).abs() <= 1e-12, "omega(-2) = 2", &mut errs);
    ensure(
        (semicircle_cdf(0.0).unwrap() - 0.5).abs() <= 1e-12,
        "F(0) = 1/2",
        &mut errs,
    );
    ensure(semicircle_cdf(-2.0).unwrap() == 0.0, "F(-2) = 0", &mut errs);
    ensure(semicircle_cdf(2.0).unwrap() == 1.0, "F(2) = 1", &mut errs);
    // kappa cross-checked against its defining composition with the shape.
    for &alpha in &[0.0, 0.25, 0.5, 0.75, 1.0] {
        let q = semicircle_quantile(alpha).unwrap();
        let expect = 0.5 * (om(q) - q);
        ensure(
            (kappa(alpha).unwrap() - expect).abs() <= 1e-12,
            &format!("kappa({alpha}) = (omega(F^-1) - F^-1)/2"),
            &mut errs,
        );
    }
    ensure(
        (kappa(0.0).unwrap() - 2.0).abs() <= 1e-12,
        "kappa(0) = 2",
        &mut errs,
    );
    ensure(
        kappa(1.0).unwrap().abs() <= 1e-12,
        "kappa(1) = 0",
        &mut errs,
    );
    ensure(
        (kappa(0.5).unwrap() - 2.0 / pi).abs() <= 1e-12,
        "kappa(1/2) = 2/pi",
        &mut errs,
    );
    for i in 0..10 {
        let alpha = i as f64 / 10.0;
        ensure(
            (beta(alpha, 0.0).unwrap() - 2.0 * alpha.sqrt()).abs() <= 1e-12,
            &format!("beta({alpha}, 0) = 2 sqrt(alpha)"),
            &mut errs,
        );
    }
    for i in 0..=10 {
        let s = 2.0 * i as f64 / 10.0;
        ensure(
            beta(0.0, s).unwrap().abs() <= 1e-12,
            &format!("beta(0, {s}) = 0"),
            &mut errs,
        );
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs.join("; "))
    }
}

fn cdf_quantile_roundtrip() -> Result<(), String> {
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let back = semicircle_cdf(semicircle_quantile(p).unwrap()).unwrap();
        if (back - p).abs() > 1e-10 {
            return Err(format!("F(F^-1({p})) = {back}"));
        }
    }
    Ok(())
}

/// The worked five-row example: inserting 7 produces route (4,3,2,2,2) and
/// a bit-exact result tableau.
fn reference_insertion() -> Result<(), String> {
    let mut t = IncreasingTableau::from_rows(vec![
        vec![1.0, 2.0, 5.0, 8.0, 12.0, 15.0, 21.0],
        vec![3.0, 6.0, 9.0, 16.0, 19.0],
        vec![4.0, 11.0, 13.0, 18.0],
        vec![10.0, 17.0, 20.0],
        vec![14.0],
    ])
    .map_err(|e| e.to_string())?;
    let route = t.insert(7.0).map_err(|e| e.to_string())?;
    if route.columns() != [4, 3, 2, 2, 2] {
        return Err(format!("route {:?}", route.columns()));
    }
    let expected = IncreasingTableau::from_rows(vec![
        vec![1.0, 2.0, 5.0, 7.0, 12.0, 15.0, 21.0],
        vec![3.0, 6.0, 8.0, 16.0, 19.0],
        vec![4.0, 9.0, 13.0, 18.0],
        vec![10.0, 11.0, 20.0],
        vec![14.0, 17.0],
    ])
    .map_err(|e| e.to_string())?;
    if t != expected {
        return Err("result tableau differs from the worked example".into());
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            prefix.push(v);
            rec(remaining, prefix, out);
            prefix.pop();
            remaining.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

fn lis_brute_force(xs: &[f64]) -> usize {
    let n = xs.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let picked: Vec<f64> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| xs[i])
            .collect();
        if picked.windows(2).all(|w| w[0] < w[1]) {
            best = best.max(picked.len());
        }
    }
    best
}

/// Row 1 of the insertion tableau must have the length of the longest
/// increasing subsequence, exhaustively over all permutations up to
/// `max_size`.
fn insertion_lis_oracle(max_size: usize) -> Result<(), String> {
    for n in 1..=max_size {
        for perm in permutations(n) {
            let entries: Vec<f64> = perm.iter().map(|&v| v as f64).collect();
            let t = insertion_tableau(&entries).map_err(|e| e.to_string())?;
            let expect = lis_brute_force(&entries);
            if t.rows()[0].len() != expect {
                return Err(format!(
                    "permutation {perm:?}: row 1 length {} vs LIS {expect}",
                    t.rows()[0].len()
                ));
            }
        }
    }
    Ok(())
}

fn curve_consistency() -> Result<(), String> {
    let curve = sample_curve(0.5, 50).map_err(|e| e.to_string())?;
    let samples = curve.samples();
    if samples[0] != (0.0, 2.0f64.sqrt()) {
        return Err(format!("first sample {:?}", samples[0]));
    }
    let kap = kappa(0.5).unwrap();
    let last = samples[samples.len() - 1];
    if (last.0 - kap).abs() > 1e-15 || (last.1 - 2.0 / std::f64::consts::PI).abs() > 1e-12 {
        return Err(format!("last sample {last:?}"));
    }
    for &(s, b) in samples.iter().step_by(7) {
        let direct = beta(0.5, s).map_err(|e| e.to_string())?;
        if (b - direct).abs() > 1e-12 {
            return Err(format!("sample at s = {s}: {b} vs beta {direct}"));
        }
    }
    Ok(())
}
