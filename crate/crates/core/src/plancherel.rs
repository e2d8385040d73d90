//! Seeded sampling of random tableaux.
//!
//! Inserting `n` i.i.d. uniform values into an empty tableau yields a
//! uniform-entry random tableau `T_n`; replacing each entry by its rank
//! (standardization) yields a standard tableau whose shape follows the
//! Plancherel measure. The sublevel operation keeps the boxes with entries
//! at or below a threshold; for uniform entries the rescaled sublevel
//! tableau is again distributed like a smaller uniform-entry tableau, which
//! is what makes bumping routes self-similar across scales.
//!
//! All sampling goes through [`SeededRng`], a ChaCha8 generator addressed by
//! `(seed, stream)`. Experiments give every trial its own stream derived
//! from the trial's coordinates, so results never depend on scheduling or
//! thread count.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tableau::{insertion_tableau_unchecked, IncreasingTableau};

/// A deterministic random source: ChaCha8 keyed by a 64-bit seed, with the
/// 64-bit stream counter selecting independent substreams of the same seed.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl SeededRng {
    /// Stream 0 of `seed`.
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// An independent substream of `seed`. Streams with different indices
    /// never overlap, so parallel consumers can draw without coordination.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        SeededRng { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// A uniform draw from the open interval (0, 1): zeros are redrawn so
    /// the value is always strictly positive, and 1 is never produced.
    pub fn uniform_open01(&mut self) -> f64 {
        loop {
            let x: f64 = self.rng.random();
            if x > 0.0 {
                return x;
            }
        }
    }
}

/// Draws `count` pairwise distinct values from (0, 1), redrawing on the
/// (astronomically rare) bit-level collision rather than failing. Values in
/// `avoid` are excluded as well, so a later insertion cannot collide.
pub fn sample_distinct_uniforms(count: usize, rng: &mut SeededRng, avoid: Option<f64>) -> Vec<f64> {
    let mut seen: HashSet<u64> = HashSet::with_capacity(count + 1);
    if let Some(a) = avoid {
        seen.insert(a.to_bits());
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.uniform_open01();
        if seen.insert(x.to_bits()) {
            out.push(x);
        }
    }
    out
}

/// Samples the uniform-entry random tableau `T_n`: `n` i.i.d. uniform (0,1)
/// values row-inserted in draw order.
pub fn sample_uniform_tableau(n: usize, rng: &mut SeededRng) -> IncreasingTableau {
    let entries = sample_distinct_uniforms(n, rng, None);
    insertion_tableau_unchecked(&entries)
}

/// Replaces every entry by its rank (1 for the smallest), producing a
/// standard tableau of the same shape. The input must be a valid tableau.
pub fn standardize(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    let violations = t.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidTableau { violations });
    }
    let mut positions: Vec<(f64, usize, usize)> = Vec::with_capacity(t.order());
    for (r, row) in t.rows().iter().enumerate() {
        for (c, &e) in row.iter().enumerate() {
            positions.push((e, r, c));
        }
    }
    positions.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut rows: Vec<Vec<f64>> = t.rows().iter().map(|row| vec![0.0; row.len()]).collect();
    for (rank, &(_, r, c)) in positions.iter().enumerate() {
        rows[r][c] = (rank + 1) as f64;
    }
    Ok(IncreasingTableau::from_rows_unchecked(rows))
}

/// Samples a Plancherel-random standard tableau of order `n`: the
/// standardization of [`sample_uniform_tableau`]. Its shape follows the
/// Plancherel measure (each shape has probability `dim(shape)^2 / n!`).
pub fn sample_plancherel(n: usize, rng: &mut SeededRng) -> IncreasingTableau {
    let t = sample_uniform_tableau(n, rng);
    standardize(&t).expect("sampled tableau is valid by construction")
}

/// The boxes of a tableau whose entries are at or below a threshold. Since
/// rows and columns increase, these boxes form row prefixes and again make
/// a valid tableau.
#[derive(Debug, Clone, PartialEq)]
pub struct SublevelTableau {
    tableau: IncreasingTableau,
    threshold: f64,
    order: usize,
}

impl SublevelTableau {
    pub fn tableau(&self) -> &IncreasingTableau {
        &self.tableau
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Number of boxes retained.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn into_tableau(self) -> IncreasingTableau {
        self.tableau
    }
}

/// Restricts a valid tableau to entries `<= threshold`, `threshold` in
/// (0, 1]. Row prefixes shrink weakly going up, so empty rows can only
/// appear at the top and are dropped.
pub fn sublevel(t: &IncreasingTableau, threshold: f64) -> Result<SublevelTableau> {
    if !threshold.is_finite() {
        return Err(Error::NonFinite {
            context: "sublevel threshold",
        });
    }
    if threshold <= 0.0 || threshold > 1.0 {
        return Err(Error::Domain {
            context: "sublevel threshold",
            value: threshold,
        });
    }
    let violations = t.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidTableau { violations });
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut order = 0;
    for row in t.rows() {
        let len = row.partition_point(|&e| e <= threshold);
        if len == 0 {
            break;
        }
        order += len;
        rows.push(row[..len].to_vec());
    }
    Ok(SublevelTableau {
        tableau: IncreasingTableau::from_rows_unchecked(rows),
        threshold,
        order,
    })
}

/// Divides every entry of a sublevel tableau by its threshold, mapping the
/// entries back into (0, 1]. Dividing by a positive constant preserves the
/// ordering, so the result is again a valid tableau of the same shape.
pub fn rescale_entries(sub: &SublevelTableau) -> IncreasingTableau {
    let rows: Vec<Vec<f64>> = sub
        .tableau
        .rows()
        .iter()
        .map(|row| row.iter().map(|e| e / sub.threshold).collect())
        .collect();
    let out = IncreasingTableau::from_rows_unchecked(rows);
    debug_assert!(out.validate().is_empty());
    out
}
