//! Exact scalar helpers and their canonical JSON encoding.
//!
//! Integers encode as JSON numbers when they fit in an `i64` and as decimal
//! strings otherwise. Rationals encode as `[numerator, denominator]` in lowest
//! terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(v.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("expected an integer, found {n}")),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|e| format!("bad integer string {s:?}: {e}")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

pub fn rational_to_json(v: &Q) -> Value {
    // BigRational is always kept reduced with a positive denominator.
    Value::Array(vec![int_to_json(v.numer()), int_to_json(v.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<Q, String> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| format!("expected [numerator, denominator], found {v}"))?;
    let num = int_from_json(&arr[0])?;
    let den = int_from_json(&arr[1])?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Q::new(num, den))
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        rational_to_json(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_json(&v).map_err(D::Error::custom)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        Value::Array(v.iter().map(rational_to_json).collect()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        v.iter()
            .map(|x| rational_from_json(x).map_err(D::Error::custom))
            .collect()
    }
}

pub mod rational_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        Value::Array(
            v.iter()
                .map(|row| Value::Array(row.iter().map(rational_to_json).collect()))
                .collect(),
        )
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let v = Vec::<Vec<Value>>::deserialize(d)?;
        v.iter()
            .map(|row| {
                row.iter()
                    .map(|x| rational_from_json(x).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        assert_eq!(rational_to_json(&q_frac(-3, 6)).to_string(), "[-1,2]");
        assert_eq!(rational_to_json(&q_frac(3, -6)).to_string(), "[-1,2]");
        assert_eq!(rational_from_json(&serde_json::json!([2, 4])).unwrap(), q_frac(1, 2));
        assert!(rational_from_json(&serde_json::json!([1, 0])).is_err());
    }

    #[test]
    fn big_integers_use_strings() {
        let big = BigInt::from(i64::MAX) * 4;
        let v = int_to_json(&big);
        assert!(v.is_string());
        assert_eq!(int_from_json(&v).unwrap(), big);
    }
}
