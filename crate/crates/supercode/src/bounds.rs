//! Length bounds and parameter choices for (k,n,d)-superimposed codes.
//!
//! The constructor consumes only [`lambda_for`], [`default_weight`] and
//! [`length_pairwise`]; everything else is a calculator for comparing the
//! bounds that hold for these codes. Lengths carrying an unspecified O(1)
//! term are reported as approximate reals and never used to size a
//! construction. All ceiled results are evaluated with directed upward
//! rounding (see [`precise`]) so a reported length is never below the true
//! bound.

mod precise;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumcode::binomial;
use crate::error::{Error, Result};
use crate::types::BoundsTable;
use precise::{ceil_to_u64, e_enclosure, e_enclosure_terms, ln_u64_enclosure, nth_root_enclosure, ROOT_BITS};

fn rat(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat2(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn wide(n: usize) -> u128 {
    n as u128
}

/// Largest admissible pairwise overlap for a weight-w code that must stay
/// k-separable: floor((w-1)/(k-1)).
pub fn lambda_for(w: usize, k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidParameters("k must be at least 2".into()));
    }
    if w < 1 {
        return Err(Error::InvalidParameters("w must be positive".into()));
    }
    Ok((w - 1) / (k - 1))
}

fn check_pairwise_preconditions(n: usize, w: usize, lambda: usize) -> Result<()> {
    if n < 5 {
        return Err(Error::InvalidParameters(format!(
            "pairwise length bound requires n >= 5, got n = {} (below that the identity matrix is the right construction)",
            n
        )));
    }
    if w < 1 {
        return Err(Error::InvalidParameters("w must be positive".into()));
    }
    if lambda > w {
        return Err(Error::InvalidParameters(format!(
            "lambda = {} exceeds the column weight w = {}; overlaps can never exceed w",
            lambda, w
        )));
    }
    Ok(())
}

/// Length that makes the symmetric local-lemma condition hold for the
/// pairwise-overlap events:
///
/// `t = ceil( (w-1)d + lambda/2
///            + (e*w/(lambda+1)) * (w - lambda/2) * (e*(2n-4))^(1/(lambda+1)) )`
///
/// Upward-directed evaluation; the result is the true ceiling or at most one
/// above it, always satisfies [`lll_condition_holds`], and is never below
/// `(w-1)d + w`.
pub fn length_pairwise(n: usize, d: usize, w: usize, lambda: usize) -> Result<u64> {
    check_pairwise_preconditions(n, w, lambda)?;
    let e_hi = &e_enclosure().hi;
    let m = lambda + 1;

    let base_hi = e_hi * BigInt::from(2 * wide(n) - 4);
    let root_hi = nth_root_enclosure(&base_hi, m as u32, ROOT_BITS).hi;
    // (w-1)d + lambda/2
    let lead = rat(wide(w - 1) * wide(d)) + rat2(wide(lambda), 2);
    // (e*w/(lambda+1)) * (w - lambda/2)
    let coeff = e_hi * BigInt::from(w) / BigInt::from(m) * rat2(2 * wide(w) - wide(lambda), 2);
    let value = lead + coeff * root_hi;

    let t = ceil_to_u64(&value).ok_or_else(|| {
        Error::InvalidParameters("pairwise length does not fit in 64 bits".into())
    })?;
    let packed = (wide(w - 1) * wide(d) + wide(w))
        .try_into()
        .map_err(|_| Error::InvalidParameters("(w-1)d + w does not fit in 64 bits".into()))?;
    Ok(t.max(packed))
}

/// The local-lemma condition `e*P*D < 1` for the pairwise-overlap events:
///
/// `e*(2n-4) * (e*w/(lambda+1))^(lambda+1)
///          * ((w - lambda/2) / (t - (w-1)d - lambda/2))^(lambda+1)  <  1`
///
/// Evaluated in the log domain to avoid overflow. Requires
/// `t > (w-1)d + lambda/2`. Strictly monotone in t: once true, true for all
/// larger t.
pub fn lll_condition_holds(n: usize, d: usize, w: usize, lambda: usize, t: usize) -> Result<bool> {
    check_lll_preconditions(n, d, w, lambda, t)?;
    let m = (lambda + 1) as f64;
    let wf = w as f64;
    let half_lambda = lambda as f64 / 2.0;
    let lhs = 1.0
        + (2.0 * n as f64 - 4.0).ln()
        + m * (1.0 + wf.ln() - m.ln())
        + m * ((wf - half_lambda).ln() - ((t - (w - 1) * d) as f64 - half_lambda).ln());
    Ok(lhs < 0.0)
}

/// Same verdict as [`lll_condition_holds`] but decided in exact arbitrary
/// precision arithmetic: after clearing halves and powers the inequality is
/// `e^(lambda+2) < B/A` for explicit integers A, B, decided against a
/// rational enclosure of e (tightened on demand, though the starting width
/// of ~2^-160 is never the deciding factor in practice).
pub fn lll_condition_holds_exact(
    n: usize,
    d: usize,
    w: usize,
    lambda: usize,
    t: usize,
) -> Result<bool> {
    check_lll_preconditions(n, d, w, lambda, t)?;
    let m = (lambda + 1) as u32;
    let a = BigUint::from(2 * wide(n) - 4)
        * BigUint::from(w).pow(m)
        * BigUint::from(2 * wide(w) - wide(lambda)).pow(m);
    let b = BigUint::from(lambda + 1).pow(m)
        * BigUint::from(2 * (wide(t) - wide(w - 1) * wide(d)) - wide(lambda)).pow(m);
    if a.is_zero() {
        // n = 2: no event depends on another, the condition is vacuous.
        return Ok(true);
    }
    let target = BigRational::new(BigInt::from(b), BigInt::from(a));
    let mut terms = 41;
    for _ in 0..6 {
        let e = e_enclosure_terms(terms);
        if e.hi.pow((m + 1) as i32) < target {
            return Ok(true);
        }
        if e.lo.pow((m + 1) as i32) >= target {
            return Ok(false);
        }
        terms *= 2;
    }
    unreachable!("e^(lambda+2) cannot coincide with a rational to 2^-2000");
}

fn check_lll_preconditions(n: usize, d: usize, w: usize, lambda: usize, t: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameters("n must be at least 2".into()));
    }
    if w < 1 {
        return Err(Error::InvalidParameters("w must be positive".into()));
    }
    if lambda > w {
        return Err(Error::InvalidParameters(format!(
            "lambda = {} exceeds the column weight w = {}",
            lambda, w
        )));
    }
    let gap = wide(w - 1) * wide(d);
    if wide(t) <= gap || 2 * (wide(t) - gap) <= wide(lambda) {
        return Err(Error::InvalidParameters(format!(
            "t = {} must exceed (w-1)d + lambda/2",
            t
        )));
    }
    Ok(())
}

/// Column weight used when the caller does not fix one:
/// `w = ceil(1 + (k-1) ln(2 e n))`.
pub fn default_weight(n: usize, k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidParameters("k must be at least 2".into()));
    }
    if n < 1 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    // ln(2 e n) = 1 + ln(2n)
    let doubled = (n as u64)
        .checked_mul(2)
        .ok_or_else(|| Error::InvalidParameters("n too large".into()))?;
    let ln_2n_hi = ln_u64_enclosure(doubled).hi;
    let value = BigRational::one() + (BigRational::one() + ln_2n_hi) * BigInt::from(k - 1);
    let w = ceil_to_u64(&value)
        .ok_or_else(|| Error::InvalidParameters("default weight does not fit in 64 bits".into()))?;
    Ok(w as usize)
}

/// Companion form of [`length_pairwise`] with the floor in lambda replaced by
/// its bounds, so it depends on (n, k, d, w) alone:
///
/// `t <= 1 + (w-1)d + (w-1)/(2(k-1))
///        + (e*w(k-1)/(w-1)) * (w - (w-1)/(2(k-1)) + 1/2) * (e(2n-4))^((k-1)/(w-1))`
///
/// Informational: never smaller than the pairwise bound the constructor uses.
pub fn length_fixed_weight(n: usize, k: usize, d: usize, w: usize) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidParameters("k must be at least 2".into()));
    }
    if w < 2 {
        return Err(Error::InvalidParameters(
            "fixed-weight length bound requires w >= 2".into(),
        ));
    }
    if n < 5 {
        return Err(Error::InvalidParameters(
            "fixed-weight length bound requires n >= 5".into(),
        ));
    }
    let e_hi = &e_enclosure().hi;
    // (e(2n-4))^((k-1)/(w-1)) as ((e(2n-4))^(k-1))^(1/(w-1))
    let base_hi = (e_hi * BigInt::from(2 * wide(n) - 4)).pow((k - 1) as i32);
    let root_hi = nth_root_enclosure(&base_hi, (w - 1) as u32, ROOT_BITS).hi;

    let lead = BigRational::one() + rat(wide(w - 1) * wide(d)) + rat2(wide(w - 1), 2 * wide(k - 1));
    let coeff = e_hi * (BigInt::from(w) * BigInt::from(k - 1)) / BigInt::from(w - 1);
    // w - (w-1)/(2(k-1)) + 1/2 = (2w(k-1) + (k-1) - (w-1)) / (2(k-1))
    let mid_num = BigInt::from(2) * BigInt::from(w) * BigInt::from(k - 1) + BigInt::from(k - 1)
        - BigInt::from(w - 1);
    let mid = BigRational::new(mid_num, BigInt::from(2) * BigInt::from(k - 1));
    let value = lead + coeff * mid * root_hi;

    ceil_to_u64(&value)
        .ok_or_else(|| Error::InvalidParameters("fixed-weight length does not fit in 64 bits".into()))
}

/// Closed-form length for the default weight choice, O(1) term dropped:
///
/// `d(k-1) ln(2en) + ln(n)/2 + e^2 (k-1)^2 ln(2en) + 7 e^2 (k-1)/2 + d`
///
/// Approximate by nature; for comparisons only.
pub fn length_closed_form(n: usize, k: usize, d: usize) -> Result<f64> {
    if k < 2 || n < 2 {
        return Err(Error::InvalidParameters(
            "closed-form length requires k >= 2 and n >= 2".into(),
        ));
    }
    let e = std::f64::consts::E;
    let l = (2.0 * e * n as f64).ln();
    let km1 = (k - 1) as f64;
    let df = d as f64;
    Ok(df * km1 * l + (n as f64).ln() / 2.0 + e * e * km1 * km1 * l + 3.5 * e * e * km1 + df)
}

/// Smallest length t for which the first-moment existence argument goes
/// through, i.e. the minimal integer t with
///
/// `n * C(n-1, k-1) * ( w(k-1) / (t - (2d+1)(w-1)) )^w < 1`.
///
/// Clearing the power turns this into an integer-root computation, solved
/// exactly: a finite answer exists for every valid input.
pub fn union_bound_min_length(n: usize, k: usize, d: usize, w: usize) -> Result<BigUint> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameters(
            "union-bound length requires 2 <= k <= n".into(),
        ));
    }
    if w < 1 {
        return Err(Error::InvalidParameters("w must be positive".into()));
    }
    // Minimal base b = t - (2d+1)(w-1) with b^w > n * C(n-1,k-1) * (w(k-1))^w.
    let threshold = BigUint::from(n)
        * binomial(n - 1, k - 1)
        * (BigUint::from(w) * BigUint::from(k - 1)).pow(w as u32);
    let base = threshold.nth_root(w as u32) + BigUint::one();
    let floor = (BigUint::from(2u32) * BigUint::from(d) + BigUint::one()) * BigUint::from(w - 1);
    Ok(floor + base)
}

/// Closed form of the union-bound length with `w = k ln n`, O(1) dropped:
///
/// `2dk ln(n) + k ln(n) + e^2 k(k-1) ln(n) - 2d`
pub fn union_bound_closed_form(n: usize, k: usize, d: usize) -> Result<f64> {
    if k < 2 || n < 2 {
        return Err(Error::InvalidParameters(
            "closed-form length requires k >= 2 and n >= 2".into(),
        ));
    }
    let e = std::f64::consts::E;
    let ln_n = (n as f64).ln();
    let kf = k as f64;
    let df = d as f64;
    Ok(2.0 * df * kf * ln_n + kf * ln_n + e * e * kf * (kf - 1.0) * ln_n - 2.0 * df)
}

/// No (k,n,d)-superimposed code is shorter than `min(n, 1 + (k-1)(d+1))`.
pub fn lower_bound_trivial(n: usize, k: usize, d: usize) -> u64 {
    let packed = 1u128 + (k as u128 - 1) * (d as u128 + 1);
    packed.min(n as u128) as u64
}

/// True when `k >= (n-1)/(d+1) + 1`: length n is then forced and the identity
/// matrix is already an optimal code.
pub fn identity_optimal(n: usize, k: usize, d: usize) -> bool {
    (k as u128 - 1) * (d as u128 + 1) >= n as u128 - 1
}

/// Evaluate every bound for one instance. Uses [`default_weight`] when `w` is
/// not supplied. Requires n >= 5 and an effective weight >= 2 so that every
/// entry of the table is defined.
pub fn bounds_table(n: usize, k: usize, d: usize, w: Option<usize>) -> Result<BoundsTable> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameters(
            "bounds table requires 2 <= k <= n".into(),
        ));
    }
    let w = match w {
        Some(0) => return Err(Error::InvalidParameters("w must be positive".into())),
        Some(w) => w,
        None => default_weight(n, k)?,
    };
    let lambda = lambda_for(w, k)?;
    Ok(BoundsTable {
        lambda,
        t_pairwise: length_pairwise(n, d, w, lambda)?,
        t_fixed_weight: length_fixed_weight(n, k, d, w)?,
        t_closed_form: length_closed_form(n, k, d)?,
        t_union_bound: union_bound_min_length(n, k, d, w)?,
        t_union_bound_closed: union_bound_closed_form(n, k, d)?,
        t_lower_trivial: lower_bound_trivial(n, k, d),
        identity_optimal: identity_optimal(n, k, d),
    })
}
