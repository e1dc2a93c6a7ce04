//! Directed-rounded rational arithmetic for the bound calculators.
//!
//! Every transcendental quantity (e, ln, real roots) is represented as an
//! exact rational enclosure [lo, hi] whose width is far below 2^-80. Length
//! formulas are then assembled entirely from upper endpoints, so the ceiling
//! taken at the end can overshoot the true bound by at most one and can never
//! undershoot it.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rational interval guaranteed to contain the real value it stands for.
#[derive(Clone, Debug)]
pub(crate) struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Denominator bits used when compacting enclosure endpoints.
const DYADIC_BITS: u32 = 192;
/// Precision of n-th root enclosures.
pub(crate) const ROOT_BITS: u32 = 96;

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

/// Largest dyadic k/2^bits that is <= q.
pub(crate) fn dyadic_lower(q: &BigRational, bits: u32) -> BigRational {
    let scaled = (q.numer() << bits).div_floor(q.denom());
    BigRational::new(scaled, BigInt::one() << bits)
}

/// Smallest dyadic k/2^bits that is >= q.
pub(crate) fn dyadic_upper(q: &BigRational, bits: u32) -> BigRational {
    let scaled = (q.numer() << bits).div_ceil(q.denom());
    BigRational::new(scaled, BigInt::one() << bits)
}

fn dyadic_enclosure(lo: BigRational, hi: BigRational) -> Enclosure {
    Enclosure {
        lo: dyadic_lower(&lo, DYADIC_BITS),
        hi: dyadic_upper(&hi, DYADIC_BITS),
    }
}

/// Enclosure of Euler's number from `terms` factorial-series terms; the
/// truncation remainder is below 2/(terms)!.
pub(crate) fn e_enclosure_terms(terms: usize) -> Enclosure {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one(); // 1/0!
    for i in 1..=terms {
        sum += &term;
        term /= big(i);
    }
    let hi = &sum + term * big(2);
    dyadic_enclosure(sum, hi)
}

/// Cached enclosure of e, width well below 2^-160.
pub(crate) fn e_enclosure() -> &'static Enclosure {
    static CELL: OnceLock<Enclosure> = OnceLock::new();
    CELL.get_or_init(|| e_enclosure_terms(41))
}

/// Enclosure of 2*atanh(z) = ln((1+z)/(1-z)) for rational 0 <= z <= 1/3.
fn atanh2_enclosure(z: &BigRational) -> Enclosure {
    debug_assert!(!z.is_negative() && *z <= BigRational::new(BigInt::one(), big(3)));
    const TERMS: usize = 60;
    let z2 = z * z;
    let mut sum = BigRational::zero();
    let mut pow = z.clone(); // z^(2i+1)
    for i in 0..TERMS {
        sum += &pow / big(2 * i + 1);
        pow *= &z2;
    }
    let partial = sum * big(2);
    // 2 * sum_{i>=TERMS} z^(2i+1)/(2i+1) <= (9/4) z^(2*TERMS+1) / (2*TERMS+1)
    let rem = pow * BigRational::new(big(9), big(4 * (2 * TERMS + 1)));
    let hi = &partial + rem;
    dyadic_enclosure(partial, hi)
}

fn ln2_enclosure() -> &'static Enclosure {
    static CELL: OnceLock<Enclosure> = OnceLock::new();
    CELL.get_or_init(|| atanh2_enclosure(&BigRational::new(BigInt::one(), big(3))))
}

/// Enclosure of ln(m) for an integer m >= 1, via m = y * 2^s with y in [1, 2)
/// and ln(y) = 2*atanh((y-1)/(y+1)).
pub(crate) fn ln_u64_enclosure(m: u64) -> Enclosure {
    assert!(m >= 1, "ln requires a positive argument");
    if m == 1 {
        return Enclosure {
            lo: BigRational::zero(),
            hi: BigRational::zero(),
        };
    }
    let s = 63 - m.leading_zeros() as u64;
    let pow2 = 1u64 << s;
    let z = BigRational::new(BigInt::from(m - pow2), BigInt::from(m + pow2));
    let frac = atanh2_enclosure(&z);
    let ln2 = ln2_enclosure();
    Enclosure {
        lo: &ln2.lo * BigInt::from(s) + frac.lo,
        hi: &ln2.hi * BigInt::from(s) + frac.hi,
    }
}

/// Enclosure of q^(1/m) for rational q > 0, width at most 2^-bits.
///
/// The root is taken on an integer scaled by 2^(m*bits), so both endpoints
/// come from a single exact integer m-th root.
pub(crate) fn nth_root_enclosure(q: &BigRational, m: u32, bits: u32) -> Enclosure {
    assert!(m >= 1 && q.is_positive());
    // Compact q first so the scaled integer stays small.
    let q = dyadic_upper(q, 2 * bits);
    let a = q.numer().to_biguint().expect("positive");
    let b = q.denom().to_biguint().expect("positive");
    let scale = BigUint::one() << bits;
    let scaled = &a * b.pow(m - 1) * scale.pow(m);
    let root = scaled.nth_root(m);
    let denom = BigInt::from(b * scale);
    Enclosure {
        lo: BigRational::new(BigInt::from(root.clone()), denom.clone()),
        hi: BigRational::new(BigInt::from(root + BigUint::one()), denom),
    }
}

/// Ceiling of a rational, as u64.
pub(crate) fn ceil_to_u64(q: &BigRational) -> Option<u64> {
    q.ceil().to_integer().to_u64()
}
