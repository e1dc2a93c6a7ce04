//! JSON views of construction reports and bounds tables.
//!
//! Flat objects, numbers as JSON integers wherever they fit in 64 bits and as
//! decimal strings beyond that, booleans as booleans. Round-trips losslessly.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use supercode::types::{BoundsTable, ConstructionReport};

/// One construction run plus (when computable for the requested instance)
/// the full bounds table, as a single flat object. The table's own lambda is
/// `bounds_lambda`: under an identity fallback the constructed matrix's
/// lambda differs from the one the table is computed for.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub resample_count: u64,
    pub rounds: u64,
    pub t: u64,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub w: u64,
    pub lambda: u64,
    pub seed: u64,
    pub elapsed_ms: f64,
    pub fallback_used: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds_lambda: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_pairwise: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_fixed_weight: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_closed_form: Option<f64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_big_value"
    )]
    pub t_union_bound: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_union_bound_closed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_lower_trivial: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_optimal: Option<bool>,
}

impl ReportJson {
    pub fn new(report: &ConstructionReport, bounds: Option<&BoundsTable>) -> Self {
        ReportJson {
            resample_count: report.resample_count,
            rounds: report.rounds,
            t: report.t as u64,
            n: report.n as u64,
            k: report.k as u64,
            d: report.d as u64,
            w: report.w as u64,
            lambda: report.lambda as u64,
            seed: report.seed,
            elapsed_ms: report.elapsed.as_secs_f64() * 1e3,
            fallback_used: report.fallback_used,
            bounds_lambda: bounds.map(|b| b.lambda as u64),
            t_pairwise: bounds.map(|b| b.t_pairwise),
            t_fixed_weight: bounds.map(|b| b.t_fixed_weight),
            t_closed_form: bounds.map(|b| b.t_closed_form),
            t_union_bound: bounds.map(|b| b.t_union_bound.clone()),
            t_union_bound_closed: bounds.map(|b| b.t_union_bound_closed),
            t_lower_trivial: bounds.map(|b| b.t_lower_trivial),
            identity_optimal: bounds.map(|b| b.identity_optimal),
        }
    }
}

/// Standalone JSON view of a bounds table (the `bounds --json` output).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub lambda: u64,
    pub t_pairwise: u64,
    pub t_fixed_weight: u64,
    pub t_closed_form: f64,
    #[serde(with = "big_value")]
    pub t_union_bound: BigUint,
    pub t_union_bound_closed: f64,
    pub t_lower_trivial: u64,
    pub identity_optimal: bool,
}

impl From<&BoundsTable> for BoundsJson {
    fn from(table: &BoundsTable) -> Self {
        BoundsJson {
            lambda: table.lambda as u64,
            t_pairwise: table.t_pairwise,
            t_fixed_weight: table.t_fixed_weight,
            t_closed_form: table.t_closed_form,
            t_union_bound: table.t_union_bound.clone(),
            t_union_bound_closed: table.t_union_bound_closed,
            t_lower_trivial: table.t_lower_trivial,
            identity_optimal: table.identity_optimal,
        }
    }
}

mod big_value {
    use num_bigint::BigUint;
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(value) {
            Ok(small) => ser.serialize_u64(small),
            Err(_) => ser.serialize_str(&value.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
        struct BigVisitor;
        impl Visitor<'_> for BigVisitor {
            type Value = BigUint;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an unsigned integer or a decimal string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigUint, E> {
                Ok(BigUint::from(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigUint, E> {
                v.parse().map_err(|_| E::custom("not a decimal integer"))
            }
        }
        de.deserialize_any(BigVisitor)
    }
}

mod opt_big_value {
    use num_bigint::BigUint;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<BigUint>, ser: S) -> Result<S::Ok, S::Error> {
        super::big_value::serialize(value.as_ref().expect("skipped when None"), ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<BigUint>, D::Error> {
        super::big_value::deserialize(de).map(Some)
    }
}
