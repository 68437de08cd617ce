use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{Map, Number, Value};
use shiftdim::dimgroup::EssentialMatrix;
use shiftdim::graph::parse_adjacency;
use shiftdim::linalg::{IntMatrix, RatVec};
use shiftdim::Error;

/// A failed job: exit code plus a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 66;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DATA, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::data(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

pub fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })
}

/// A matrix file: either the graph text formats or a JSON array of rows.
pub fn load_matrix(path: &Path) -> Outcome<IntMatrix> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('[') {
        let value: Value =
            serde_json::from_str(&text).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
        matrix_from_json(&value, "matrix")
    } else {
        parse_adjacency(&text).map_err(Failure::from)
    };
    parsed.map_err(|f| Failure { code: f.code, message: format!("{}: {}", path.display(), f.message) })
}

pub fn load_essential(path: &Path) -> Outcome<EssentialMatrix> {
    let m = load_matrix(path)?;
    EssentialMatrix::new(m).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

pub fn load_json(path: &Path) -> Outcome<Map<String, Value>> {
    let text = read(path)?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(Failure::data(format!("{}: expected a JSON object", path.display()))),
        Err(e) => Err(Failure::data(format!("{}: {e}", path.display()))),
    }
}

pub fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Outcome<&'a Value> {
    obj.get(name).ok_or_else(|| Failure::data(format!("missing field `{name}`")))
}

pub fn int_from_json(v: &Value, what: &str) -> Outcome<BigInt> {
    match v {
        Value::Number(n) => {
            n.to_string().parse().map_err(|_| Failure::data(format!("{what}: `{n}` is not an integer")))
        }
        _ => Err(Failure::data(format!("{what}: expected an integer"))),
    }
}

pub fn u32_from_json(v: &Value, what: &str) -> Outcome<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Failure::data(format!("{what}: expected a nonnegative integer")))
}

pub fn vec_from_json(v: &Value, what: &str) -> Outcome<Vec<BigInt>> {
    let Value::Array(items) = v else {
        return Err(Failure::data(format!("{what}: expected an array of integers")));
    };
    items.iter().map(|x| int_from_json(x, what)).collect()
}

pub fn matrix_from_json(v: &Value, what: &str) -> Outcome<IntMatrix> {
    let Value::Array(rows) = v else {
        return Err(Failure::data(format!("{what}: expected an array of rows")));
    };
    let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| vec_from_json(r, what)).collect::<Outcome<_>>()?;
    IntMatrix::from_rows(&rows).map_err(|e| Failure::data(format!("{what}: {e}")))
}

pub fn essential_from_json(obj: &Map<String, Value>, name: &str) -> Outcome<EssentialMatrix> {
    let m = matrix_from_json(field(obj, name)?, name)?;
    EssentialMatrix::new(m).map_err(|e| Failure::data(format!("{name}: {e}")))
}

/// `1,-2,3` or `[1, -2, 3]`
pub fn parse_int_list(s: &str) -> Outcome<Vec<BigInt>> {
    split_list(s).map(|x| x.parse::<BigInt>().map_err(|_| Failure::usage(format!("`{x}` is not an integer")))).collect()
}

/// Like [`parse_int_list`], entries may be fractions `p/q`.
pub fn parse_rat_list(s: &str) -> Outcome<RatVec> {
    split_list(s)
        .map(|x| {
            let bad = || Failure::usage(format!("`{x}` is not a rational number"));
            let (num, den) = match x.split_once('/') {
                Some((n, d)) => {
                    (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?)
                }
                None => (x.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
            };
            if den.is_zero() {
                return Err(bad());
            }
            Ok(num_rational::BigRational::new(num, den))
        })
        .collect()
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.trim().trim_start_matches('[').trim_end_matches(']').split(',').map(str::trim).filter(|x| !x.is_empty())
}

pub fn int_json(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

pub fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vec_json(m.row_slice(r))).collect())
}

/// Rationals as strings, `"1/2"` or `"3"`.
pub fn rat_vec_json(v: &[num_rational::BigRational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn rat_matrix_json(m: &shiftdim::RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| rat_vec_json(m.row_slice(r))).collect())
}

pub fn class_json(c: &shiftdim::dimgroup::DimClass) -> Value {
    let mut m = Map::new();
    m.insert("v".into(), vec_json(c.vector()));
    m.insert("k".into(), Value::from(c.level()));
    Value::Object(m)
}

/// Result of one CLI job. Keys serialize sorted, so output is stable.
pub struct JobResult {
    pub exit: i32,
    fields: BTreeMap<String, Value>,
}

impl JobResult {
    pub fn new(command: &str, verdict: &str, exit: i32) -> Self {
        let mut fields = BTreeMap::new();
        fields.insert("command".into(), Value::String(command.into()));
        fields.insert("verdict".into(), Value::String(verdict.into()));
        JobResult { exit, fields }
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.insert(key.into(), value);
        self
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.set(key, value);
        self
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.fields.clone().into_iter().collect();
        serde_json::to_string_pretty(&Value::Object(map)).expect("values serialize")
    }

    pub fn to_text(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_int_list("[1, -2,3]").unwrap(), vec![BigInt::from(1), BigInt::from(-2), BigInt::from(3)]);
        assert!(parse_int_list("1,x").is_err());
        let r = parse_rat_list("1/2, 3").unwrap();
        assert_eq!((r[0].to_string(), r[1].to_string()), ("1/2".to_string(), "3".to_string()));
        assert!(parse_rat_list("1/0").is_err());
    }

    #[test]
    fn big_integers_round_trip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let json = serde_json::to_string(&int_json(&big)).unwrap();
        assert_eq!(json, "123456789012345678901234567890");
        let back: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(int_from_json(&back, "x").unwrap(), big);
    }

    #[test]
    fn job_keys_are_sorted() {
        let job = JobResult::new("eq", "Equal", 0).with("zeta", Value::from(1)).with("alpha", Value::from(2));
        let json = job.to_json();
        let order: Vec<usize> = ["alpha", "command", "verdict", "zeta"].iter().map(|k| json.find(k).unwrap()).collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }
}
