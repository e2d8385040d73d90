//! Increasing tableaux and Schensted row insertion with bumping-route
//! recording.
//!
//! An increasing tableau here is a left-justified array of real entries with
//! weakly decreasing row lengths, strictly increasing rows (left to right),
//! and strictly increasing columns (bottom to top). Row 1 is the bottom row;
//! all public row and column indices are 1-based.
//!
//! Row insertion of a value `z`: `z` enters row 1; in each row the incoming
//! value either settles in a new box at the end (if it exceeds every entry)
//! or bumps the leftmost entry larger than itself to the row above. The
//! sequence of column indices visited, one per row until the new box is
//! created, is the bumping route; it is always weakly decreasing.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

// ======================================================================
// Shapes
// ======================================================================

/// A partition recording row lengths of a tableau, longest row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct ShapePartition {
    parts: Vec<usize>,
}

impl ShapePartition {
    /// Builds a shape from row lengths, checking that they are positive and
    /// weakly decreasing. The empty shape is allowed.
    pub fn from_parts(parts: Vec<usize>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.contains(&0) {
            return Err(Error::BadConfig {
                what: "shape parts must be positive and weakly decreasing",
            });
        }
        Ok(ShapePartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Number of columns, i.e. the length of the longest row.
    pub fn columns(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Total number of boxes.
    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for ShapePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

// ======================================================================
// Structural violations
// ======================================================================

/// A single structural defect found by [`IncreasingTableau::validate`].
/// Row/column indices are 1-based and point at the offending box.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Entry is NaN or infinite.
    NonFiniteEntry { row: usize, col: usize },
    /// Entry is not strictly larger than its left neighbour.
    RowNotIncreasing { row: usize, col: usize },
    /// Entry is not strictly larger than the entry below it.
    ColumnNotIncreasing { row: usize, col: usize },
    /// Row is longer than the row below it.
    RowLongerThanBelow { row: usize },
    /// The same value occurs in two different boxes.
    DuplicateEntries { value: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFiniteEntry { row, col } => {
                write!(f, "non-finite entry at row {row}, column {col}")
            }
            Violation::RowNotIncreasing { row, col } => {
                write!(f, "row {row} not strictly increasing at column {col}")
            }
            Violation::ColumnNotIncreasing { row, col } => {
                write!(f, "column {col} not strictly increasing at row {row}")
            }
            Violation::RowLongerThanBelow { row } => {
                write!(f, "row {row} is longer than the row below it")
            }
            Violation::DuplicateEntries { value } => {
                write!(f, "value {value} occurs more than once")
            }
        }
    }
}

// ======================================================================
// Bumping routes
// ======================================================================

/// The column indices visited by one row insertion, one per row from the
/// bottom up, ending at the row where the new box was created. Entries are
/// 1-based and weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BumpingRoute {
    columns: Vec<usize>,
}

impl BumpingRoute {
    /// Column visited in each row, bottom row first.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// Number of rows visited; also the row index of the new box.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// `(column, row)` of the box the insertion created, 1-based.
    pub fn last_box(&self) -> (usize, usize) {
        let k = self.columns.len();
        (self.columns[k - 1], k)
    }
}

// ======================================================================
// Tableaux
// ======================================================================

/// An increasing tableau with real entries. See the module docs for the
/// invariants; [`validate`](Self::validate) checks them all.
#[derive(Debug, Clone, PartialEq)]
pub struct IncreasingTableau {
    rows: Vec<Vec<f64>>,
}

impl Default for IncreasingTableau {
    fn default() -> Self {
        Self::new()
    }
}

impl IncreasingTableau {
    /// The empty tableau.
    pub fn new() -> Self {
        IncreasingTableau { rows: Vec::new() }
    }

    /// Builds a tableau from rows (bottom row first), rejecting any input
    /// that fails validation.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let t = IncreasingTableau { rows };
        let violations = t.validate();
        if violations.is_empty() {
            Ok(t)
        } else {
            Err(Error::InvalidTableau { violations })
        }
    }

    /// Builds a tableau from rows without validation. The caller must
    /// guarantee the invariants; use [`from_rows`](Self::from_rows) otherwise.
    pub fn from_rows_unchecked(rows: Vec<Vec<f64>>) -> Self {
        IncreasingTableau { rows }
    }

    /// Rows of the tableau, bottom row first.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Total number of boxes.
    pub fn order(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Entry at 1-based `(row, col)`, or `None` outside the shape.
    pub fn entry(&self, row: usize, col: usize) -> Option<f64> {
        self.rows
            .get(row.checked_sub(1)?)?
            .get(col.checked_sub(1)?)
            .copied()
    }

    /// Row lengths as a partition.
    pub fn shape(&self) -> ShapePartition {
        ShapePartition {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    /// Checks every invariant and returns all violations found (empty for a
    /// valid tableau). Rows are scanned in order, then duplicates are
    /// reported once per offending value.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if !e.is_finite() {
                    out.push(Violation::NonFiniteEntry {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                // `partial_cmp != Less` also flags NaN neighbours, which is
                // wanted: an incomparable pair is not increasing.
                if j > 0 && row[j - 1].partial_cmp(&e) != Some(Ordering::Less) {
                    out.push(Violation::RowNotIncreasing {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if i > 0 {
                    let below = &self.rows[i - 1];
                    if j < below.len() && below[j].partial_cmp(&e) != Some(Ordering::Less) {
                        out.push(Violation::ColumnNotIncreasing {
                            row: i + 1,
                            col: j + 1,
                        });
                    }
                }
            }
            if i > 0 && row.len() > self.rows[i - 1].len() {
                out.push(Violation::RowLongerThanBelow { row: i + 1 });
            }
        }
        let mut all: Vec<f64> = self.rows.iter().flatten().copied().collect();
        all.sort_by(f64::total_cmp);
        for w in all.windows(2) {
            // NaNs are already reported as non-finite; `==` never fires on them.
            if w[0] == w[1] {
                if let Some(Violation::DuplicateEntries { value }) = out.last() {
                    if *value == w[0] {
                        continue;
                    }
                }
                out.push(Violation::DuplicateEntries { value: w[0] });
            }
        }
        out
    }

    /// Returns true if `value` already occurs in the tableau. Each row is
    /// binary-searched, so this is O(rows · log width) on a valid tableau.
    pub fn contains(&self, value: f64) -> bool {
        self.rows.iter().any(|row| {
            row.binary_search_by(|e| e.partial_cmp(&value).unwrap())
                .is_ok()
        })
    }

    /// Row-inserts `z` and returns the bumping route. The tableau must be
    /// valid, `z` finite and distinct from every entry; violations produce an
    /// error and leave the tableau untouched.
    pub fn insert(&mut self, z: f64) -> Result<BumpingRoute> {
        if !z.is_finite() {
            return Err(Error::NonFinite { context: "insert" });
        }
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidTableau { violations });
        }
        if self.contains(z) {
            return Err(Error::DuplicateEntry { value: z });
        }
        Ok(self.insert_unchecked(z))
    }

    /// Row insertion without the validity, finiteness, and duplicate checks.
    /// Used by samplers whose inputs are distinct by construction.
    pub(crate) fn insert_unchecked(&mut self, z: f64) -> BumpingRoute {
        let mut columns = Vec::new();
        let mut incoming = z;
        for row in &mut self.rows {
            // Leftmost entry strictly larger than the incoming value.
            let pos = row.partition_point(|&e| e < incoming);
            columns.push(pos + 1);
            if pos == row.len() {
                row.push(incoming);
                debug_assert!(columns.windows(2).all(|w| w[0] >= w[1]));
                return BumpingRoute { columns };
            }
            incoming = std::mem::replace(&mut row[pos], incoming);
        }
        self.rows.push(vec![incoming]);
        columns.push(1);
        debug_assert!(columns.windows(2).all(|w| w[0] >= w[1]));
        BumpingRoute { columns }
    }
}

/// Builds the insertion tableau of `entries` by row-inserting them in order
/// into an empty tableau. Entries must be finite and pairwise distinct.
pub fn insertion_tableau(entries: &[f64]) -> Result<IncreasingTableau> {
    if entries.iter().any(|e| !e.is_finite()) {
        return Err(Error::NonFinite {
            context: "insertion_tableau",
        });
    }
    let mut sorted: Vec<f64> = entries.to_vec();
    sorted.sort_by(f64::total_cmp);
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateEntry { value: w[0] });
    }
    Ok(insertion_tableau_unchecked(entries))
}

/// [`insertion_tableau`] without the distinctness scan, for entries that are
/// distinct by construction.
pub(crate) fn insertion_tableau_unchecked(entries: &[f64]) -> IncreasingTableau {
    let mut t = IncreasingTableau::new();
    for &z in entries {
        t.insert_unchecked(z);
    }
    t
}
