//! Counting, ranking and exactly-uniform sampling of (w,d)-vectors.
//!
//! A (w,d)-vector of length t is a binary vector of weight w whose consecutive
//! 1's are separated by at least d zeros. Removing exactly d zeros after each
//! 1 but the last maps such vectors bijectively onto plain weight-w vectors of
//! length t - (w-1)d, so there are C(t-(w-1)d, w) of them. Pairing that
//! bijection with an enumerative (combinatorial number system) encoding of
//! weight-w vectors gives O(t)-time uniform sampling: draw an integer rank
//! below the count, decode it, re-insert the gaps.
//!
//! All counting and ranking is exact big-integer arithmetic; the counts
//! overflow 64-bit words in every regime the constructors target.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::types::WdColumn;

/// Exact count of anything enumerated here; arbitrary precision.
pub type BigCount = BigUint;

/// Exact binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// Shortest length that fits w ones with d zeros between consecutive ones:
/// `(w-1)d + w`. None when the product overflows the machine word.
pub fn min_length(w: usize, d: usize) -> Option<usize> {
    w.checked_sub(1)?.checked_mul(d)?.checked_add(w)
}

/// Number of (w,d)-vectors of length `t`: C(t - (w-1)d, w).
///
/// Degenerate inputs (t too short to fit w ones with the required gaps)
/// yield zero rather than an error, so feasibility can be probed uniformly.
pub fn count_wd_vectors(t: usize, w: usize, d: usize) -> BigCount {
    if w == 0 {
        return BigUint::one();
    }
    let Some(min_t) = min_length(w, d) else {
        return BigUint::zero();
    };
    if t < min_t {
        return BigUint::zero();
    }
    binomial(t - (w - 1) * d, w)
}

/// Inflate a plain weight-w support over universe `t' = t - (w-1)d` into a
/// (w,d)-vector of length `t' + (w-1)d` by inserting a run of exactly d zeros
/// after each 1 but the last: entry i moves to `compact[i] + i*d`.
pub fn expand(compact: &[usize], universe: usize, d: usize) -> Result<WdColumn> {
    if let Some(&last) = compact.last() {
        if last >= universe {
            return Err(Error::InvalidColumn(format!(
                "compact support index {} out of range for universe {}",
                last, universe
            )));
        }
    }
    let w = compact.len();
    let length = universe + w.saturating_sub(1) * d;
    let support = compact.iter().enumerate().map(|(i, &p)| p + i * d).collect();
    WdColumn::new(length, support)
}

/// Inverse of [`expand`]: strip exactly d zeros from each internal gap,
/// mapping support entry i to `support[i] - i*d` over universe
/// `length - (w-1)d`. Rejects columns whose gaps are shorter than d.
pub fn contract(column: &WdColumn, d: usize) -> Result<Vec<usize>> {
    if !column.respects_gap(d) {
        return Err(Error::InvalidColumn(format!(
            "column violates the d = {} gap constraint and has no compact form",
            d
        )));
    }
    Ok(column
        .support()
        .iter()
        .enumerate()
        .map(|(i, &p)| p - i * d)
        .collect())
}

/// Rank of a combination in lexicographic order of ascending position
/// sequences, 0-based: a bijection onto [0, C(universe, w) - 1].
pub fn rank_combination(positions: &[usize], universe: usize) -> Result<BigUint> {
    let w = positions.len();
    let mut rank = BigUint::zero();
    let mut next = 0usize;
    for (i, &p) in positions.iter().enumerate() {
        if i > 0 && p < next {
            return Err(Error::InvalidColumn(
                "positions are not strictly increasing".into(),
            ));
        }
        if p >= universe {
            return Err(Error::InvalidColumn(format!(
                "position {} out of range for universe {}",
                p, universe
            )));
        }
        // Combinations that branch off below p at slot i come first.
        for skipped in next..p {
            rank += binomial(universe - skipped - 1, w - i - 1);
        }
        next = p + 1;
    }
    Ok(rank)
}

/// Inverse of [`rank_combination`]. Decodes in one left-to-right sweep over
/// the universe, updating the pending binomial coefficient incrementally, so
/// the big-integer work is linear in the universe size.
pub fn unrank_combination(rank: &BigUint, universe: usize, w: usize) -> Result<Vec<usize>> {
    let total = binomial(universe, w);
    if *rank >= total {
        return Err(Error::InvalidParameters(format!(
            "rank {} out of range: C({}, {}) = {}",
            rank, universe, w, total
        )));
    }
    let mut positions = Vec::with_capacity(w);
    if w == 0 {
        return Ok(positions);
    }
    let mut remaining = rank.clone();
    let mut left = w; // ones still to place
    let mut c = 0usize; // candidate position
    // count = C(m, r): combinations whose smallest unplaced one sits exactly
    // at c, where m = universe - c - 1 and r = left - 1.
    let mut count = binomial(universe - 1, w - 1);
    loop {
        let m = universe - c - 1;
        let r = left - 1;
        if remaining < count {
            positions.push(c);
            left -= 1;
            if left == 0 {
                break;
            }
            // descend: C(m-1, r-1) = C(m, r) * r / m
            count = count * r / m;
        } else {
            debug_assert!(m > 0, "rank validated above, cannot run off the universe");
            remaining -= &count;
            // shift right: C(m-1, r) = C(m, r) * (m - r) / m
            count = count * (m - r) / m;
        }
        c += 1;
    }
    Ok(positions)
}

/// Draw a (w,d)-vector of length t exactly uniformly among all
/// `count_wd_vectors(t, w, d)` of them.
///
/// The rank is drawn by rejection sampling on fixed-width random bit blocks
/// (redraw while >= the count, expected fewer than two draws), then decoded
/// and inflated. Requires `t >= (w-1)d + w`.
pub fn sample_uniform_wd_vector<R: Rng + ?Sized>(
    t: usize,
    w: usize,
    d: usize,
    rng: &mut R,
) -> Result<WdColumn> {
    if w == 0 {
        return Err(Error::InvalidParameters("w must be positive".into()));
    }
    match min_length(w, d) {
        Some(min_t) if t >= min_t => {}
        _ => {
            return Err(Error::InvalidParameters(format!(
                "t = {} below the minimum (w-1)d + w for w = {}, d = {}",
                t, w, d
            )))
        }
    }
    let universe = t - (w - 1) * d;
    let total = binomial(universe, w);
    let rank = rng.gen_biguint_below(&total);
    let compact = unrank_combination(&rank, universe, w)?;
    expand(&compact, universe, d)
}
