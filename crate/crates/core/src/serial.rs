//! JSON helpers. Integers travel as decimal strings so that consumers with
//! 64-bit number types cannot truncate them.

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Accepts a decimal string or a JSON integer.
pub fn big_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n
            .to_string()
            .parse()
            .expect("serde_json integers are decimal")),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

pub fn big_to_json(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn vector_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_to_json).collect())
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected array, got {v}")))?
        .iter()
        .map(big_from_json)
        .collect()
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected array of rows, got {v}")))?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn strings_and_numbers() {
        assert_eq!(big_from_json(&json!("-12")).unwrap(), BigInt::from(-12));
        assert_eq!(big_from_json(&json!(7)).unwrap(), BigInt::from(7));
        assert!(big_from_json(&json!(1.5)).is_err());
        assert!(big_from_json(&json!("x")).is_err());
        let huge = "123456789012345678901234567890";
        assert_eq!(big_from_json(&json!(huge)).unwrap().to_string(), huge);
    }

    #[test]
    fn matrix_json() {
        let m = IntMatrix::from_i64_rows(&[&[1, -2], &[3, 4]]);
        let j = matrix_to_json(&m);
        assert_eq!(j, json!([["1", "-2"], ["3", "4"]]));
        assert_eq!(matrix_from_json(&j).unwrap(), m);
    }
}
