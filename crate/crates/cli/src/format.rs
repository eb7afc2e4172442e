//! Newform and override files.
//!
//! Both are JSON. Integers may be written as JSON numbers or, outside the
//! 64-bit range, as decimal strings. Parsing walks a `serde_json::Value` by
//! hand so each kind of malformed input gets its own diagnostic.

use hmfdef_core::image::{Override, OverrideKind};
use hmfdef_core::newform::{Basis, EigenRow, Nebentypus};
use hmfdef_core::{Error, FieldElement, NewformRecord, PrimeIdeal, QuadField};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: missing field")]
    Missing { path: String },
    #[error("{path}: expected {expected}")]
    Type { path: String, expected: &'static str },
    #[error("{path}: malformed number {text:?}")]
    MalformedNumber { path: String, text: String },
    #[error("{path}: not a prime ideal of O_F: {detail}")]
    NonPrimeKey { path: String, detail: String },
    #[error("duplicate eigenvalue row for prime {0}")]
    DuplicateKey(String),
    #[error("nebentypus {0:?} is unsupported (only \"trivial\")")]
    UnsupportedNebentypus(String),
    #[error("{path}: unknown basis {value:?} (expected \"sqrtD\" or \"omega\")")]
    UnknownBasis { path: String, value: String },
    #[error("{path}: unknown override kind {value:?}")]
    UnknownOverrideKind { path: String, value: String },
    #[error("{path}: {source}")]
    Invalid { path: String, source: Error },
}

type Result<T> = std::result::Result<T, FormatError>;

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| FormatError::Missing {
        path: format!("{path}.{key}"),
    })
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| FormatError::Type {
        path: path.to_string(),
        expected: "an object",
    })
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| FormatError::Type {
        path: path.to_string(),
        expected: "an array",
    })
}

fn integer(v: &Value, path: &str) -> Result<BigInt> {
    let malformed = |text: String| FormatError::MalformedNumber {
        path: path.to_string(),
        text,
    };
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(malformed(n.to_string()))
            }
        }
        Value::String(s) => {
            let t = s.trim();
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed(s.clone()));
            }
            t.parse().map_err(|_| malformed(s.clone()))
        }
        other => Err(malformed(other.to_string())),
    }
}

fn small<T: TryFrom<i128>>(v: &Value, path: &str) -> Result<T> {
    let n = integer(v, path)?;
    n.to_i128()
        .and_then(|x| T::try_from(x).ok())
        .ok_or_else(|| FormatError::MalformedNumber {
            path: path.to_string(),
            text: n.to_string(),
        })
}

fn pair(v: &Value, path: &str) -> Result<(BigInt, BigInt)> {
    match array(v, path)?.as_slice() {
        [a, b] => Ok((integer(a, &format!("{path}[0]"))?, integer(b, &format!("{path}[1]"))?)),
        _ => Err(FormatError::Type {
            path: path.to_string(),
            expected: "a pair [a, b]",
        }),
    }
}

fn field(v: &Value, path: &str) -> Result<QuadField> {
    let d = small::<i64>(get(object(v, path)?, "D", path)?, &format!("{path}.D"))?;
    QuadField::new(d).map_err(|source| FormatError::Invalid {
        path: path.to_string(),
        source,
    })
}

/// `{p, degree, root?}` or `{gen: [a, b]}` (meaning `a + bω`).
pub fn parse_prime(field: &QuadField, v: &Value, path: &str) -> Result<PrimeIdeal> {
    let obj = object(v, path)?;
    let non_prime = |e: Error| FormatError::NonPrimeKey {
        path: path.to_string(),
        detail: e.to_string(),
    };
    if let Some(g) = obj.get("gen") {
        let (a, b) = pair(g, &format!("{path}.gen"))?;
        return field.prime_of_generator(&FieldElement::new(a, b)).map_err(non_prime);
    }
    let p = small::<u64>(get(obj, "p", path)?, &format!("{path}.p"))?;
    let degree = small::<u8>(get(obj, "degree", path)?, &format!("{path}.degree"))?;
    let root = match obj.get("root") {
        None | Some(Value::Null) => None,
        Some(r) => Some(small::<u64>(r, &format!("{path}.root"))?),
    };
    field.prime_ideal(p, degree, root).map_err(non_prime)
}

pub fn prime_to_json(prime: &PrimeIdeal) -> Value {
    let mut obj = Map::new();
    obj.insert("p".into(), json!(prime.p));
    obj.insert("degree".into(), json!(prime.degree));
    if let Some(r) = prime.root {
        obj.insert("root".into(), json!(r));
    }
    Value::Object(obj)
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => Value::String(n.to_string()),
    }
}

pub fn parse_newform(bytes: &[u8]) -> Result<NewformRecord> {
    let root: Value = serde_json::from_slice(bytes)?;
    let top = object(&root, "$")?;
    let base = field(get(top, "base_field", "$")?, "$.base_field")?;
    let coeff = field(get(top, "coeff_field", "$")?, "$.coeff_field")?;
    let weight: Vec<i64> = array(get(top, "weight", "$")?, "$.weight")?
        .iter()
        .enumerate()
        .map(|(i, k)| small::<i64>(k, &format!("$.weight[{i}]")))
        .collect::<Result<_>>()?;
    let level_obj = object(get(top, "level", "$")?, "$.level")?;
    let (a, b) = pair(get(level_obj, "gen", "$.level")?, "$.level.gen")?;
    let nebentypus = match get(top, "nebentypus", "$")? {
        Value::String(s) if s == "trivial" => Nebentypus::Trivial,
        Value::String(s) => return Err(FormatError::UnsupportedNebentypus(s.clone())),
        other => return Err(FormatError::UnsupportedNebentypus(other.to_string())),
    };
    let mut rows = Vec::new();
    for (i, row) in array(get(top, "eigenvalues", "$")?, "$.eigenvalues")?
        .iter()
        .enumerate()
    {
        let path = format!("$.eigenvalues[{i}]");
        let obj = object(row, &path)?;
        let prime = parse_prime(&base, get(obj, "prime", &path)?, &format!("{path}.prime"))?;
        let (x, y) = pair(get(obj, "c", &path)?, &format!("{path}.c"))?;
        let basis = match obj.get("basis") {
            None => Basis::SqrtD,
            Some(Value::String(s)) if s == "sqrtD" => Basis::SqrtD,
            Some(Value::String(s)) if s == "omega" => Basis::Omega,
            Some(other) => {
                return Err(FormatError::UnknownBasis {
                    path: format!("{path}.basis"),
                    value: other.as_str().map_or_else(|| other.to_string(), str::to_string),
                })
            }
        };
        rows.push(EigenRow::new(&coeff, prime, x, y, basis));
    }
    NewformRecord::new(base, coeff, &weight, FieldElement::new(a, b), nebentypus, rows).map_err(|e| match e {
        Error::DuplicatePrime(p) => FormatError::DuplicateKey(p),
        Error::UnsupportedNebentypus(s) => FormatError::UnsupportedNebentypus(s),
        source => FormatError::Invalid {
            path: "$".into(),
            source,
        },
    })
}

pub fn newform_to_json(form: &NewformRecord) -> Value {
    let rows: Vec<Value> = form
        .eigenvalues()
        .iter()
        .map(|r| {
            json!({
                "prime": prime_to_json(&r.prime),
                "c": [int_to_json(&r.x), int_to_json(&r.y)],
                "basis": match r.basis { Basis::SqrtD => "sqrtD", Basis::Omega => "omega" },
            })
        })
        .collect();
    json!({
        "base_field": {"D": form.base_field.d()},
        "coeff_field": {"D": form.coeff_field.d()},
        "weight": form.weight,
        "level": {"gen": [int_to_json(&form.level.a), int_to_json(&form.level.b)]},
        "nebentypus": "trivial",
        "eigenvalues": rows,
    })
}

pub fn serialize_newform(form: &NewformRecord) -> String {
    let mut s = serde_json::to_string_pretty(&newform_to_json(form)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Overrides name primes of the coefficient field.
pub fn parse_overrides(coeff_field: &QuadField, bytes: &[u8]) -> Result<Vec<Override>> {
    let root: Value = serde_json::from_slice(bytes)?;
    let mut out = Vec::new();
    for (i, entry) in array(&root, "$")?.iter().enumerate() {
        let path = format!("$[{i}]");
        let obj = object(entry, &path)?;
        let lambda = parse_prime(coeff_field, get(obj, "lambda", &path)?, &format!("{path}.lambda"))?;
        let kind = match get(obj, "kind", &path)? {
            Value::String(s) if s == "exceptional" => OverrideKind::Exceptional,
            Value::String(s) if s == "principal-series" => OverrideKind::PrincipalSeries,
            other => {
                return Err(FormatError::UnknownOverrideKind {
                    path: format!("{path}.kind"),
                    value: other.as_str().map_or_else(|| other.to_string(), str::to_string),
                })
            }
        };
        let note = match obj.get("note") {
            None => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(_) => {
                return Err(FormatError::Type {
                    path: format!("{path}.note"),
                    expected: "a string",
                })
            }
        };
        out.push(Override { lambda, kind, note });
    }
    Ok(out)
}

pub fn serialize_overrides(overrides: &[Override]) -> String {
    let list: Vec<Value> = overrides
        .iter()
        .map(|o| {
            json!({
                "lambda": prime_to_json(&o.lambda),
                "kind": match o.kind {
                    OverrideKind::Exceptional => "exceptional",
                    OverrideKind::PrincipalSeries => "principal-series",
                },
                "note": o.note,
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&list).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "base_field": {"D": 5}, "coeff_field": {"D": 5}, "weight": [2, 4],
        "level": {"gen": [3, 1]}, "nebentypus": "trivial",
        "eigenvalues": [{"prime": {"gen": [5, 1]}, "c": [-20, 14], "basis": "sqrtD"}]
    }"#;

    fn with(from: &str, to: &str) -> Result<NewformRecord> {
        parse_newform(MINIMAL.replace(from, to).as_bytes())
    }

    #[test]
    fn parses_and_normalizes_generator_keys() {
        let f = parse_newform(MINIMAL.as_bytes()).unwrap();
        assert_eq!(f.k0(), 4);
        let row = &f.eigenvalues()[0];
        assert_eq!((row.prime.p, row.prime.root), (29, Some(24)));
        let json = serialize_newform(&f);
        assert!(json.contains("\"root\": 24"));
        assert_eq!(parse_newform(json.as_bytes()).unwrap(), f);
    }

    #[test]
    fn distinct_diagnostics() {
        assert!(matches!(
            with("[2, 4]", "[2, 3]"),
            Err(FormatError::Invalid {
                source: Error::WeightParity { .. },
                ..
            })
        ));
        assert!(matches!(
            with("[2, 4]", "[1, 3]"),
            Err(FormatError::Invalid {
                source: Error::WeightTooSmall(1),
                ..
            })
        ));
        assert!(matches!(
            with("[5, 1]}", "[5, 5]}"),
            Err(FormatError::NonPrimeKey { .. })
        ));
        assert!(matches!(
            with("[-20, 14]", "[\"-2x0\", 14]"),
            Err(FormatError::MalformedNumber { .. })
        ));
        assert!(matches!(
            with("[-20, 14]", "[1.5, 14]"),
            Err(FormatError::MalformedNumber { .. })
        ));
        assert!(matches!(
            with("\"trivial\"", "\"quadratic\""),
            Err(FormatError::UnsupportedNebentypus(_))
        ));
        assert!(matches!(
            with("\"sqrtD\"", "\"sqrt5\""),
            Err(FormatError::UnknownBasis { .. })
        ));
        let dup = MINIMAL.replace(
            "\"basis\": \"sqrtD\"}",
            "\"basis\": \"sqrtD\"}, {\"prime\": {\"p\": 29, \"degree\": 1, \"root\": 24}, \"c\": [0, 0]}",
        );
        assert!(matches!(
            parse_newform(dup.as_bytes()),
            Err(FormatError::DuplicateKey(_))
        ));
        assert!(matches!(with("\"level\"", "\"lvl\""), Err(FormatError::Missing { .. })));
        assert!(matches!(parse_newform(b"{"), Err(FormatError::Json(_))));
    }

    #[test]
    fn big_numbers_use_strings() {
        let big = "123456789012345678901234567890";
        let f = with("[-20, 14]", &format!("[\"{big}\", \"-{big}\"]")).unwrap();
        let json = serialize_newform(&f);
        assert!(json.contains(&format!("\"-{big}\"")));
        assert_eq!(parse_newform(json.as_bytes()).unwrap(), f);
    }

    #[test]
    fn overrides_round_trip() {
        let k = QuadField::new(5).unwrap();
        let text = r#"[{"lambda": {"p": 11, "degree": 1, "root": 4}, "kind": "exceptional", "note": "by hand"}]"#;
        let o = parse_overrides(&k, text.as_bytes()).unwrap();
        assert_eq!(o[0].lambda.root, Some(4));
        assert_eq!(parse_overrides(&k, serialize_overrides(&o).as_bytes()).unwrap(), o);
        let bad = text.replace("exceptional", "dihedral");
        assert!(matches!(
            parse_overrides(&k, bad.as_bytes()),
            Err(FormatError::UnknownOverrideKind { .. })
        ));
    }
}
