//! The JSON document schema for Hopf algebroid inputs and the JSON
//! renderings of reports.
//!
//! One document describes a Hopf algebroid over an exact field:
//!
//! ```json
//! {
//!   "field": "rationals",              // or {"prime": 5}
//!   "total": {"dim": 2, "unit": ["1", "0"], "mult": [[["1","0"],["0","1"]], ...]},
//!   "left":  {"base": {...}, "s": [[...]], "t": [[...]],
//!             "gamma_lift": [[...]], "pi": [[...]]},
//!   "right": {...},
//!   "antipode": [[...]]
//! }
//! ```
//!
//! Matrices are arrays of rows (row-major); the coproduct lift has `n^2`
//! rows indexed by `i1 * n + i2`. Rational scalars serialize as reduced
//! strings `"p/q"` with positive denominator and `"/1"` omitted; prime
//! field scalars as integers in `[0, p)`. Emission is canonical, so
//! emit/load round-trips are byte-stable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::FinAlgebra;
use crate::bialgebroid::{verify_left_bialgebroid, verify_right_bialgebroid};
use crate::hopfalgebroid::{verify_hopf_algebroid, HopfAlgebroid};
use crate::linalg::Mat;
use crate::report::AxiomReport;
use crate::scalar::{is_prime, Fp, Scalar};
use crate::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum JsonError {
    Parse(String),
    Schema(String),
}

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JsonError::Parse(s) => write!(f, "cannot parse JSON: {s}"),
            JsonError::Schema(s) => write!(f, "schema error: {s}"),
        }
    }
}

impl std::error::Error for JsonError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldDesc {
    Rationals,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    dim: usize,
    unit: Vec<Value>,
    mult: Vec<Vec<Vec<Value>>>,
}

#[derive(Serialize, Deserialize)]
struct RawSide {
    base: RawAlgebra,
    s: Vec<Vec<Value>>,
    t: Vec<Vec<Value>>,
    gamma_lift: Vec<Vec<Value>>,
    pi: Vec<Vec<Value>>,
}

#[derive(Serialize, Deserialize)]
struct RawDocument {
    field: Value,
    total: RawAlgebra,
    left: RawSide,
    right: RawSide,
    antipode: Vec<Vec<Value>>,
}

fn parse_field(v: &Value) -> Result<FieldDesc, JsonError> {
    match v {
        Value::String(s) if s == "rationals" => Ok(FieldDesc::Rationals),
        Value::Object(m) => match m.get("prime") {
            Some(Value::Number(p)) => {
                let p = p
                    .as_u64()
                    .ok_or_else(|| JsonError::Schema("prime must be a positive integer".into()))?;
                if !is_prime(p) {
                    return Err(JsonError::Schema(format!("{p} is not prime")));
                }
                Ok(FieldDesc::Prime(p))
            }
            _ => Err(JsonError::Schema(
                "field object must be {\"prime\": p}".into(),
            )),
        },
        _ => Err(JsonError::Schema(
            "field must be \"rationals\" or {\"prime\": p}".into(),
        )),
    }
}

fn field_to_json(f: FieldDesc) -> Value {
    match f {
        FieldDesc::Rationals => json!("rationals"),
        FieldDesc::Prime(p) => json!({ "prime": p }),
    }
}

/// Parse one scalar according to the field.
trait JsonScalar: Scalar {
    fn parse(v: &Value, field: FieldDesc) -> Result<Self, JsonError>;
}

impl JsonScalar for Rat {
    fn parse(v: &Value, _field: FieldDesc) -> Result<Self, JsonError> {
        match v {
            Value::String(s) => {
                Rat::from_str(s).map_err(|e| JsonError::Schema(format!("bad rational {s:?}: {e}")))
            }
            Value::Number(x) => {
                let i = x
                    .as_i64()
                    .ok_or_else(|| JsonError::Schema(format!("bad rational literal {x}")))?;
                Ok(Rat::from_integer(i.into()))
            }
            other => Err(JsonError::Schema(format!("bad rational value {other}"))),
        }
    }
}

impl JsonScalar for Fp {
    fn parse(v: &Value, field: FieldDesc) -> Result<Self, JsonError> {
        let FieldDesc::Prime(p) = field else {
            return Err(JsonError::Schema("expected a prime field".into()));
        };
        match v {
            Value::Number(x) => {
                let i = x
                    .as_i64()
                    .ok_or_else(|| JsonError::Schema(format!("bad scalar {x}")))?;
                Ok(Fp::new(i, p))
            }
            other => Err(JsonError::Schema(format!(
                "prime field scalars are integers, got {other}"
            ))),
        }
    }
}

fn parse_vec<K: JsonScalar>(v: &[Value], field: FieldDesc) -> Result<Vec<K>, JsonError> {
    v.iter().map(|x| K::parse(x, field)).collect()
}

fn parse_mat<K: JsonScalar>(rows: &[Vec<Value>], field: FieldDesc) -> Result<Mat<K>, JsonError> {
    let parsed: Result<Vec<Vec<K>>, _> = rows.iter().map(|r| parse_vec(r, field)).collect();
    Ok(Mat::from_rows(parsed?))
}

fn parse_algebra<K: JsonScalar>(
    raw: &RawAlgebra,
    field: FieldDesc,
) -> Result<(usize, Vec<Vec<Vec<K>>>, Vec<K>), JsonError> {
    let mult: Result<Vec<Vec<Vec<K>>>, _> = raw
        .mult
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| parse_vec(v, field))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect();
    Ok((raw.dim, mult?, parse_vec(&raw.unit, field)?))
}

/// A parsed, not yet verified, Hopf algebroid document.
pub struct TypedDocument<K: Scalar> {
    pub field: FieldDesc,
    pub total: (usize, Vec<Vec<Vec<K>>>, Vec<K>),
    pub left: SideData<K>,
    pub right: SideData<K>,
    pub antipode: Mat<K>,
}

pub struct SideData<K: Scalar> {
    pub base: (usize, Vec<Vec<Vec<K>>>, Vec<K>),
    pub s: Mat<K>,
    pub t: Mat<K>,
    pub gamma_lift: Mat<K>,
    pub pi: Mat<K>,
}

pub enum Document {
    Q(TypedDocument<Rat>),
    F(TypedDocument<Fp>),
}

pub fn parse_document(text: &str) -> Result<Document, JsonError> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| JsonError::Parse(e.to_string()))?;
    let field = parse_field(&raw.field)?;
    match field {
        FieldDesc::Rationals => Ok(Document::Q(typed_document(&raw, field)?)),
        FieldDesc::Prime(_) => Ok(Document::F(typed_document(&raw, field)?)),
    }
}

fn typed_document<K: JsonScalar>(
    raw: &RawDocument,
    field: FieldDesc,
) -> Result<TypedDocument<K>, JsonError> {
    let side = |r: &RawSide| -> Result<SideData<K>, JsonError> {
        Ok(SideData {
            base: parse_algebra(&r.base, field)?,
            s: parse_mat(&r.s, field)?,
            t: parse_mat(&r.t, field)?,
            gamma_lift: parse_mat(&r.gamma_lift, field)?,
            pi: parse_mat(&r.pi, field)?,
        })
    };
    Ok(TypedDocument {
        field,
        total: parse_algebra(&raw.total, field)?,
        left: side(&raw.left)?,
        right: side(&raw.right)?,
        antipode: parse_mat(&raw.antipode, field)?,
    })
}

/// Verify everything in a parsed document. Returns the ordered axiom
/// reports (algebras, both bialgebroids, the Hopf axioms) and the verified
/// Hopf algebroid on success.
pub fn verify_document<K: Scalar>(
    doc: &TypedDocument<K>,
) -> (Vec<AxiomReport>, Result<HopfAlgebroid<K>, String>) {
    use crate::report::Check;
    let mut reports = Vec::new();
    let mut alg_checks = Vec::new();
    let build = |name: &str,
                 data: &(usize, Vec<Vec<Vec<K>>>, Vec<K>),
                 checks: &mut Vec<Check>|
     -> Option<FinAlgebra<K>> {
        match FinAlgebra::new(data.0, data.1.clone(), data.2.clone()) {
            Ok(a) => {
                checks.push(Check::pass(name));
                Some(a)
            }
            Err(e) => {
                checks.push(Check::fail(&format!("{name} ({e})"), vec![]));
                None
            }
        }
    };
    let total = build("total-algebra", &doc.total, &mut alg_checks);
    let base_l = build("left-base-algebra", &doc.left.base, &mut alg_checks);
    let base_r = build("right-base-algebra", &doc.right.base, &mut alg_checks);
    reports.push(AxiomReport::new("algebras", alg_checks));
    let (Some(total), Some(base_l), Some(base_r)) = (total, base_l, base_r) else {
        return (reports, Err("structure constants rejected".into()));
    };

    let (rep_l, left) = verify_left_bialgebroid(
        &total,
        &base_l,
        &doc.left.s,
        &doc.left.t,
        &doc.left.gamma_lift,
        &doc.left.pi,
        "left-bialgebroid",
    );
    reports.push(rep_l);
    let (rep_r, right) = verify_right_bialgebroid(
        &total,
        &base_r,
        &doc.right.s,
        &doc.right.t,
        &doc.right.gamma_lift,
        &doc.right.pi,
        "right-bialgebroid",
    );
    reports.push(rep_r);
    let (left, right) = match (left, right) {
        (Ok(l), Ok(r)) => (l, r),
        (l, r) => {
            let mut msgs = Vec::new();
            if let Err(e) = l {
                msgs.push(format!("left bialgebroid: {e}"));
            }
            if let Err(e) = r {
                msgs.push(format!("right bialgebroid: {e}"));
            }
            return (reports, Err(msgs.join("; ")));
        }
    };
    let (rep_h, hopf) = verify_hopf_algebroid(left, right, doc.antipode.clone());
    reports.push(rep_h);
    (reports, hopf.map_err(|e| e.to_string()))
}

// --- emission ---------------------------------------------------------

fn mat_to_json<K: Scalar>(m: &Mat<K>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|x| x.to_json()).collect()))
            .collect(),
    )
}

fn algebra_to_json<K: Scalar>(a: &FinAlgebra<K>) -> Value {
    json!({
        "dim": a.dim(),
        "unit": a.unit().iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "mult": a
            .mult_table()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|x| x.to_json()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    })
}

/// Canonical document for a verified Hopf algebroid.
pub fn emit_algebroid<K: Scalar>(h: &HopfAlgebroid<K>, field: FieldDesc) -> Value {
    let side =
        |total_s: &Mat<K>, total_t: &Mat<K>, gamma: &Mat<K>, pi: &Mat<K>, base: &FinAlgebra<K>| {
            json!({
                "base": algebra_to_json(base),
                "s": mat_to_json(total_s),
                "t": mat_to_json(total_t),
                "gamma_lift": mat_to_json(gamma),
                "pi": mat_to_json(pi),
            })
        };
    json!({
        "field": field_to_json(field),
        "total": algebra_to_json(h.total()),
        "left": side(
            h.left().s().matrix(),
            h.left().t().matrix(),
            h.left().gamma_lift(),
            h.left().pi_mat(),
            h.left().base()
        ),
        "right": side(
            h.right().s().matrix(),
            h.right().t().matrix(),
            h.right().gamma_lift(),
            h.right().pi_mat(),
            h.right().base()
        ),
        "antipode": mat_to_json(h.antipode()),
    })
}

/// Canonical document for a bare algebra.
pub fn emit_algebra<K: Scalar>(a: &FinAlgebra<K>, field: FieldDesc) -> Value {
    let mut v = algebra_to_json(a);
    v.as_object_mut()
        .unwrap()
        .insert("field".into(), field_to_json(field));
    v
}

/// Render a JSON value with stable formatting.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialization cannot fail") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{builtin, Builtin};

    #[test]
    fn round_trip_is_byte_stable() {
        let Builtin::AlgebroidQ(h) = builtin("qc2").unwrap() else {
            panic!()
        };
        let emitted = to_canonical_string(&emit_algebroid(&h, FieldDesc::Rationals));
        let Document::Q(doc) = parse_document(&emitted).unwrap() else {
            panic!()
        };
        let (_, res) = verify_document(&doc);
        let h2 = res.unwrap();
        let emitted2 = to_canonical_string(&emit_algebroid(&h2, FieldDesc::Rationals));
        assert_eq!(emitted, emitted2);
    }

    #[test]
    fn prime_field_round_trip() {
        let Builtin::AlgebroidFp(h) = builtin("f5c5").unwrap() else {
            panic!()
        };
        let emitted = to_canonical_string(&emit_algebroid(&h, FieldDesc::Prime(5)));
        let Document::F(doc) = parse_document(&emitted).unwrap() else {
            panic!()
        };
        let (_, res) = verify_document(&doc);
        assert!(res.is_ok());
    }

    #[test]
    fn schema_errors_are_reported() {
        assert!(matches!(parse_document("{"), Err(JsonError::Parse(_))));
        let bad = r#"{"field": {"prime": 6}, "total": {"dim": 1, "unit": [1], "mult": [[[1]]]},
            "left": {"base": {"dim": 1, "unit": [1], "mult": [[[1]]]}, "s": [[1]], "t": [[1]], "gamma_lift": [[1]], "pi": [[1]]},
            "right": {"base": {"dim": 1, "unit": [1], "mult": [[[1]]]}, "s": [[1]], "t": [[1]], "gamma_lift": [[1]], "pi": [[1]]},
            "antipode": [[1]]}"#;
        assert!(matches!(parse_document(bad), Err(JsonError::Schema(_))));
    }
}
