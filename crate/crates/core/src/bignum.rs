//! JSON encoding for big integers: plain numbers while they are exactly
//! representable as IEEE doubles, decimal strings beyond 2^53.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

const SAFE: u64 = 1 << 53;

pub fn biguint_to_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) if x <= SAFE => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn bigint_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.unsigned_abs() <= SAFE => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

/// Integers as numbers or strings, non-integral rationals as `"num/den"`.
pub fn rational_to_json(v: &BigRational) -> Value {
    if v.is_integer() {
        bigint_to_json(v.numer())
    } else {
        Value::String(format!("{}/{}", v.numer(), v.denom()))
    }
}

pub fn biguint_from_json(v: &Value) -> Result<BigUint, String> {
    match v {
        Value::Number(n) => n.as_u64().map(BigUint::from).ok_or_else(|| format!("not a natural number: {n}")),
        Value::String(s) => s.parse().map_err(|_| format!("not a natural number: {s}")),
        other => Err(format!("expected integer, found {other}")),
    }
}

pub fn rational_from_json(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::String(s) if s.contains('/') => {
            let (a, b) = s.split_once('/').unwrap();
            let a: BigInt = a.parse().map_err(|_| format!("bad numerator in {s}"))?;
            let b: BigInt = b.parse().map_err(|_| format!("bad denominator in {s}"))?;
            if b.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(a, b))
        }
        Value::Number(n) => n
            .as_i64()
            .map(|x| BigRational::from_integer(BigInt::from(x)))
            .ok_or_else(|| format!("not an integer: {n}")),
        Value::String(s) => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| format!("not an integer: {s}")),
        other => Err(format!("expected number, found {other}")),
    }
}

/// `#[serde(with = "crate::bignum::biguint_vec")]`
pub mod biguint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(biguint_to_json).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let raw = Vec::<Value>::deserialize(d)?;
        raw.iter().map(|v| biguint_from_json(v).map_err(serde::de::Error::custom)).collect()
    }
}

/// `#[serde(with = "crate::bignum::rational")]`
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        rational_to_json(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = Value::deserialize(d)?;
        rational_from_json(&raw).map_err(serde::de::Error::custom)
    }
}
