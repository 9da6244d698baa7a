//! Big integers serialize as decimal strings so JSON consumers never lose
//! precision.

use num_bigint::BigInt;
use serde::Serializer;

pub(crate) fn bigint<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub(crate) fn bigint_vec<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}
