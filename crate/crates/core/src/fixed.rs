//! Serde helpers that write floats with six decimals, so plan files and
//! logs are byte-stable across runs and platforms.

use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

pub(crate) fn raw(v: f64) -> Result<Box<RawValue>, String> {
    if !v.is_finite() {
        return Err(format!("cannot write non-finite value {v}"));
    }
    let v = if v == 0.0 { 0.0 } else { v };
    RawValue::from_string(format!("{v:.6}")).map_err(|e| e.to_string())
}

pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*v).map_err(S::Error::custom)?.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    f64::deserialize(d)
}
