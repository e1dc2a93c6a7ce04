//! Correctness oracles at three strengths: per-column runlength, pairwise
//! overlap, and full brute-force k-separability.
//!
//! The pairwise check is what the constructor guarantees; the brute-force
//! check is the ground-truth property. The pairwise condition is sufficient
//! but not necessary, so a matrix failing it can still be a perfectly good
//! code — the checkers return verdicts with witnesses, never errors, for
//! matrices that merely fail.

use num_bigint::BigUint;

use crate::enumcode::binomial;
use crate::error::{Error, Result};
use crate::lll::{find_violations, PairEvent};
use crate::types::{CodeMatrix, WdColumn};

/// Default cap on elementary tuple-column checks for the brute-force
/// verifier. Exhaustive verification is exponential in k; this keeps it at
/// desk scale unless the caller raises it deliberately.
pub const DEFAULT_BRUTEFORCE_BUDGET: u64 = 10_000_000;

/// True iff every pair of consecutive 1's in the column is separated by at
/// least `d` zeros. Nothing is required before the first or after the last 1.
pub fn check_runlength(column: &WdColumn, d: usize) -> bool {
    column.respects_gap(d)
}

/// Verdict of [`check_lambda_matrix`], listing every offending column or pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaReport {
    /// Columns whose weight differs from the declared w.
    pub wrong_weight: Vec<usize>,
    /// Columns violating the runlength constraint.
    pub runlength_violations: Vec<usize>,
    /// Pairs overlapping in more than lambda rows, in lexicographic order.
    pub overlap_violations: Vec<PairEvent>,
}

impl LambdaReport {
    pub fn passed(&self) -> bool {
        self.wrong_weight.is_empty()
            && self.runlength_violations.is_empty()
            && self.overlap_violations.is_empty()
    }
}

/// Check that every column is a weight-w vector with d-separated 1's and that
/// no pair of columns shares more than `lambda` rows.
pub fn check_lambda_matrix(
    matrix: &CodeMatrix,
    w: usize,
    d: usize,
    lambda: usize,
) -> LambdaReport {
    let mut report = LambdaReport::default();
    for (i, col) in matrix.columns().iter().enumerate() {
        if col.weight() != w {
            report.wrong_weight.push(i);
        }
        if !check_runlength(col, d) {
            report.runlength_violations.push(i);
        }
    }
    report.overlap_violations = find_violations(matrix, lambda);
    report
}

/// Verdict of [`check_superimposed_bruteforce`]; failures carry a concrete
/// witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuperimposedVerdict {
    Pass,
    /// A column violates the runlength constraint.
    RunlengthViolation { column: usize },
    /// No row separates `column` from the union of `others`
    /// (|others| = k - 1).
    MissingSeparator { column: usize, others: Vec<usize> },
}

impl SuperimposedVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SuperimposedVerdict::Pass)
    }
}

fn to_bitset(col: &WdColumn, t: usize) -> Vec<u64> {
    let mut bits = vec![0u64; t.div_ceil(64)];
    for &r in col.support() {
        bits[r / 64] |= 1 << (r % 64);
    }
    bits
}

fn has_one(bits: &[u64], r: usize) -> bool {
    bits[r / 64] >> (r % 64) & 1 == 1
}

/// Lexicographic successor of an r-combination over [0, m); false when done.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let r = idx.len();
    let mut pos = r;
    while pos > 0 {
        pos -= 1;
        if idx[pos] != m - r + pos {
            idx[pos] += 1;
            for q in pos + 1..r {
                idx[q] = idx[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustively decide whether the matrix is a (k,n,d)-superimposed code:
/// every column passes the runlength check, and for every column c and every
/// set S of k-1 other columns some row has a 1 in c and 0 across S.
///
/// Enumerates columns outer and (k-1)-subsets inner with early exit per
/// tuple; only rows in the support of c can separate, so those are the only
/// rows scanned. Refuses with [`Error::BudgetExceeded`] when the instance
/// needs more than `budget` tuple-column checks — that outcome means "cannot
/// verify at this budget", not "fail".
pub fn check_superimposed_bruteforce(
    matrix: &CodeMatrix,
    k: usize,
    d: usize,
    budget: u64,
) -> Result<SuperimposedVerdict> {
    let n = matrix.n();
    if k < 2 || k > n {
        return Err(Error::InvalidParameters(format!(
            "brute-force check requires 2 <= k <= n, got k = {}, n = {}",
            k, n
        )));
    }
    let required = BigUint::from(n) * binomial(n - 1, k - 1) * BigUint::from(k);
    if required > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }

    for (i, col) in matrix.columns().iter().enumerate() {
        if !check_runlength(col, d) {
            return Ok(SuperimposedVerdict::RunlengthViolation { column: i });
        }
    }

    let t = matrix.t();
    let bitsets: Vec<Vec<u64>> = matrix.columns().iter().map(|c| to_bitset(c, t)).collect();
    let r = k - 1;
    for c in 0..n {
        let support = matrix.column(c).support();
        let others: Vec<usize> = (0..n).filter(|&x| x != c).collect();
        let mut idx: Vec<usize> = (0..r).collect();
        loop {
            let separated = support.iter().any(|&row| {
                idx.iter().all(|&pick| !has_one(&bitsets[others[pick]], row))
            });
            if !separated {
                return Ok(SuperimposedVerdict::MissingSeparator {
                    column: c,
                    others: idx.iter().map(|&pick| others[pick]).collect(),
                });
            }
            if !next_combination(&mut idx, others.len()) {
                break;
            }
        }
    }
    Ok(SuperimposedVerdict::Pass)
}
