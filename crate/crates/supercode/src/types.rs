//! Domain types shared by every module: problem parameters, runlength-constrained
//! columns, code matrices and run reports.
//!
//! All types here are immutable after construction and safe to share for
//! concurrent reads. Row and column indices are 0-based throughout.

use std::time::Duration;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A problem instance: build a (k,n,d)-superimposed code over `n` items that
/// identifies any defective set of size up to `k`, with every column's 1's
/// separated by runs of at least `d` zeros.
///
/// `w` (column weight) and `t` (code length) may be left unset; the
/// construction pipeline fills them from the bound calculators in
/// [`crate::bounds`]. `k = 1` is rejected: the 1-row all-ones matrix solves
/// that case trivially and none of the machinery here applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub w: Option<usize>,
    pub t: Option<usize>,
    pub seed: u64,
    /// Safety cap on the number of resampling steps (default `100 * n`).
    pub max_rounds: u64,
}

impl CodeParameters {
    /// Parameters with default seed 0 and the default resampling cap.
    pub fn new(n: usize, k: usize, d: usize) -> Self {
        CodeParameters {
            n,
            k,
            d,
            w: None,
            t: None,
            seed: 0,
            max_rounds: 100 * n as u64,
        }
    }

    pub fn with_weight(mut self, w: usize) -> Self {
        self.w = Some(w);
        self
    }

    pub fn with_length(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_rounds(mut self, max_rounds: u64) -> Self {
        self.max_rounds = max_rounds;
        self
    }

    /// Check the structural invariants: `2 <= k <= n`, positive sizes, and
    /// `t >= (w-1)d + w` whenever both `w` and `t` are given.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameters("n must be positive".into()));
        }
        if self.k < 2 {
            return Err(Error::InvalidParameters(
                "k must be at least 2 (for k = 1 a single all-ones row suffices)".into(),
            ));
        }
        if self.k > self.n {
            return Err(Error::InvalidParameters(format!(
                "k = {} exceeds n = {}",
                self.k, self.n
            )));
        }
        if self.w == Some(0) {
            return Err(Error::InvalidParameters("w must be positive".into()));
        }
        if self.t == Some(0) {
            return Err(Error::InvalidParameters("t must be positive".into()));
        }
        if self.max_rounds == 0 {
            return Err(Error::InvalidParameters("max_rounds must be positive".into()));
        }
        if let (Some(w), Some(t)) = (self.w, self.t) {
            match crate::enumcode::min_length(w, self.d) {
                Some(min_t) if t >= min_t => {}
                _ => {
                    return Err(Error::InvalidParameters(format!(
                        "t = {} is below the minimum (w-1)d + w for w = {}, d = {}",
                        t, w, self.d
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A binary column of some length whose 1-positions (the support) are strictly
/// increasing. Weight-`w` columns whose consecutive 1's sit at least `d+1`
/// apart are the (w,d)-vectors everything else is built from; the gap
/// constraint itself is checked against a given `d` by
/// [`crate::verify::check_runlength`] or [`WdColumn::respects_gap`], since a
/// column does not carry its `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WdColumn {
    length: usize,
    support: Vec<usize>,
}

impl WdColumn {
    /// Build a column from its support. Fails unless the support is strictly
    /// increasing and all indices are below `length`.
    pub fn new(length: usize, support: Vec<usize>) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidColumn("length must be positive".into()));
        }
        for pair in support.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::InvalidColumn(format!(
                    "support is not strictly increasing at {}..{}",
                    pair[0], pair[1]
                )));
            }
        }
        if let Some(&last) = support.last() {
            if last >= length {
                return Err(Error::InvalidColumn(format!(
                    "support index {} out of range for length {}",
                    last, length
                )));
            }
        }
        Ok(WdColumn { length, support })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// True iff every pair of consecutive 1's is separated by at least `d` zeros.
    pub fn respects_gap(&self, d: usize) -> bool {
        self.support.windows(2).all(|p| p[1] - p[0] > d)
    }

    /// Render as a 0/1 string of exactly `length` characters.
    pub fn to_bit_string(&self) -> String {
        let mut bits = vec![b'0'; self.length];
        for &i in &self.support {
            bits[i] = b'1';
        }
        String::from_utf8(bits).expect("ascii")
    }

    /// Parse a 0/1 string back into a column. Inverse of [`to_bit_string`].
    ///
    /// [`to_bit_string`]: WdColumn::to_bit_string
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let mut support = Vec::new();
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => support.push(i),
                '0' => {}
                other => {
                    return Err(Error::InvalidColumn(format!(
                        "unexpected character {:?} in bit string",
                        other
                    )))
                }
            }
        }
        WdColumn::new(s.len(), support)
    }
}

/// Parameters a finished matrix was built for, kept alongside it so files and
/// reports can be emitted without re-deriving anything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeMeta {
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub w: usize,
    pub lambda: usize,
    pub seed: u64,
}

/// A t-by-n binary matrix stored column-wise as supports.
///
/// Columns are stored sparse (weight is far below length in every regime the
/// constructors target); dense bitset views are derived internally where
/// pairwise intersections dominate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMatrix {
    columns: Vec<WdColumn>,
    meta: CodeMeta,
}

impl CodeMatrix {
    /// Build a matrix, checking every column against the declared shape and
    /// the full (w,d) constraints: weight exactly `meta.w`, runs of at least
    /// `meta.d` zeros between consecutive 1's.
    pub fn new(columns: Vec<WdColumn>, meta: CodeMeta) -> Result<Self> {
        let matrix = Self::from_raw_columns(columns, meta)?;
        for (i, col) in matrix.columns.iter().enumerate() {
            if col.weight() != meta.w {
                return Err(Error::InvalidColumn(format!(
                    "column {} has weight {}, expected {}",
                    i,
                    col.weight(),
                    meta.w
                )));
            }
            if !col.respects_gap(meta.d) {
                return Err(Error::InvalidColumn(format!(
                    "column {} violates the d = {} runlength constraint",
                    i, meta.d
                )));
            }
        }
        Ok(matrix)
    }

    /// Build a matrix checking only the shape (`meta.n` columns, every column
    /// of length `meta.t`), not the (w,d) constraints. This is how parsed
    /// files enter the verifier: conformance to the declared `w` and `d` is
    /// exactly what verification decides.
    pub fn from_raw_columns(columns: Vec<WdColumn>, meta: CodeMeta) -> Result<Self> {
        if columns.len() != meta.n {
            return Err(Error::InvalidParameters(format!(
                "expected {} columns, got {}",
                meta.n,
                columns.len()
            )));
        }
        for col in &columns {
            if col.length() != meta.t {
                return Err(Error::LengthMismatch {
                    left: meta.t,
                    right: col.length(),
                });
            }
        }
        Ok(CodeMatrix { columns, meta })
    }

    pub fn t(&self) -> usize {
        self.meta.t
    }

    pub fn n(&self) -> usize {
        self.meta.n
    }

    pub fn columns(&self) -> &[WdColumn] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &WdColumn {
        &self.columns[i]
    }

    pub fn meta(&self) -> &CodeMeta {
        &self.meta
    }

    /// The n-by-n identity matrix: one 1 per column on the diagonal. It is a
    /// (k,n,d)-superimposed code for every k <= n and every d, and is optimal
    /// when k >= (n-1)/(d+1) + 1.
    pub fn identity(n: usize, k: usize, d: usize, seed: u64) -> Result<Self> {
        let columns = (0..n)
            .map(|i| WdColumn::new(n, vec![i]))
            .collect::<Result<Vec<_>>>()?;
        CodeMatrix::new(
            columns,
            CodeMeta {
                t: n,
                n,
                k,
                d,
                w: 1,
                lambda: 0,
                seed,
            },
        )
    }
}

/// Statistics of one Las Vegas construction run.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionReport {
    /// Number of resampling steps performed; each step redraws both columns
    /// of one violated pair.
    pub resample_count: u64,
    /// Number of full-matrix violation scans (the final one always confirms
    /// the output clean).
    pub rounds: u64,
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub w: usize,
    pub lambda: usize,
    pub seed: u64,
    pub elapsed: Duration,
    /// True when the identity-matrix path was taken instead of resampling.
    pub fallback_used: bool,
}

/// Every length bound evaluated for one (n, k, d, w) instance.
///
/// `t_closed_form` and `t_union_bound_closed` drop unspecified O(1) terms and
/// are approximate by nature; everything else is exact or directed-rounded
/// upward so a reported length is never below the true bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsTable {
    /// Maximum pairwise overlap floor((w-1)/(k-1)) used by the constructor.
    pub lambda: usize,
    /// Length from the local-lemma pairwise-overlap analysis; what the
    /// constructor actually uses.
    pub t_pairwise: u64,
    /// Companion fixed-weight form of the same bound (never smaller).
    pub t_fixed_weight: u64,
    /// Closed-form length for the default weight choice, O(1) dropped.
    pub t_closed_form: f64,
    /// Minimal length satisfying the first-moment (union-bound) existence
    /// inequality, solved exactly.
    pub t_union_bound: BigUint,
    /// Closed form of the union-bound length, O(1) dropped.
    pub t_union_bound_closed: f64,
    /// min(n, 1 + (k-1)(d+1)); no code can be shorter.
    pub t_lower_trivial: u64,
    /// True when k >= (n-1)/(d+1) + 1, where length n is forced and the
    /// identity matrix is already optimal.
    pub identity_optimal: bool,
}
