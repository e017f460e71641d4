//! JSON encodings of matrices and representations.
//!
//! A matrix is `{"ring", "vars", "rows", "cols", "entries"}`. Laurent entries
//! are lists of terms `{"exp": [..], "c0": "p/q", "c1": "r/s"}` with exponents
//! indexed by `vars`; complex entries are `[re, im]`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::representation::{AnyRep, FamilyLabel, Representation};
use crate::scalar::{format_rational, parse_rational, CycRat, Field, GaussRat, Laurent, Scalar, C64};

/// A matrix as read from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Exact(Matrix<Laurent>),
    Numeric(Matrix<C64>),
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn laurent_terms(x: &Laurent, vars: &[String]) -> Value {
    let own = x.vars();
    let idx: Vec<usize> = own
        .iter()
        .map(|v| vars.iter().position(|w| w == v).expect("var listed"))
        .collect();
    let terms: Vec<Value> = x
        .terms()
        .iter()
        .map(|(exp, c)| {
            let mut e = vec![0i32; vars.len()];
            for (k, &j) in idx.iter().enumerate() {
                e[j] = exp[k];
            }
            json!({"exp": e, "c0": format_rational(&c.c0), "c1": format_rational(&c.c1)})
        })
        .collect();
    Value::Array(terms)
}

fn parse_laurent(v: &Value, vars: &[String]) -> Result<Laurent> {
    let terms = v.as_array().ok_or_else(|| bad("Laurent entry must be a list of terms"))?;
    let mut out = BTreeMap::new();
    for t in terms {
        let exp: Vec<i32> = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term lacks `exp`"))?
            .iter()
            .map(|e| {
                e.as_i64()
                    .and_then(|e| i32::try_from(e).ok())
                    .ok_or_else(|| bad("exponent must be a machine integer"))
            })
            .collect::<Result<_>>()?;
        if exp.len() != vars.len() {
            return Err(bad(format!("term has {} exponents for {} vars", exp.len(), vars.len())));
        }
        let coef = |key: &str| -> Result<num_rational::BigRational> {
            match t.get(key) {
                None => Ok(num_rational::BigRational::from_integer(0.into())),
                Some(Value::String(s)) => parse_rational(s),
                Some(Value::Number(n)) => parse_rational(&n.to_string()),
                Some(_) => Err(bad(format!("`{key}` must be a rational string"))),
            }
        };
        let c = CycRat::new(coef("c0")?, coef("c1")?);
        let slot = out.entry(exp).or_insert_with(CycRat::zero);
        *slot = slot.clone() + c;
    }
    Ok(Laurent::from_terms(vars.to_vec(), out))
}

fn parse_complex(v: &Value) -> Result<C64> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            let re = a[0].as_f64().ok_or_else(|| bad("complex part must be a number"))?;
            let im = a[1].as_f64().ok_or_else(|| bad("complex part must be a number"))?;
            Ok(C64(Complex64::new(re, im)))
        }
        Value::Number(n) => Ok(C64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        _ => Err(bad("complex entry must be [re, im]")),
    }
}

pub fn laurent_matrix_to_json(m: &Matrix<Laurent>) -> Value {
    let vars = m.variables();
    let entries: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array(m.row(r).iter().map(|x| laurent_terms(x, &vars)).collect()))
        .collect();
    json!({"ring": "laurent", "vars": vars, "rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn complex_matrix_to_json(m: &Matrix<C64>) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array(m.row(r).iter().map(|z| json!([z.re(), z.im()])).collect()))
        .collect();
    json!({"ring": "complex", "vars": [], "rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn cyc_matrix_to_json(m: &Matrix<CycRat>) -> Value {
    laurent_matrix_to_json(&m.to_laurent())
}

impl AnyMatrix {
    pub fn to_json(&self) -> Value {
        match self {
            AnyMatrix::Exact(m) => laurent_matrix_to_json(m),
            AnyMatrix::Numeric(m) => complex_matrix_to_json(m),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = v.get("ring").and_then(Value::as_str).ok_or_else(|| bad("matrix lacks `ring`"))?;
        let dim = |key: &str| -> Result<usize> {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| bad(format!("matrix lacks `{key}`")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("matrix lacks `entries`"))?;
        if entries.len() != rows {
            return Err(bad(format!("expected {rows} rows, found {}", entries.len())));
        }
        let cells = |r: &Value| -> Result<Vec<Value>> {
            let row = r.as_array().ok_or_else(|| bad("row must be a list"))?;
            if row.len() != cols {
                return Err(bad(format!("expected {cols} columns, found {}", row.len())));
            }
            Ok(row.clone())
        };
        match ring {
            "laurent" => {
                let vars: Vec<String> = match v.get("vars") {
                    None => vec![],
                    Some(x) => serde_json::from_value(x.clone())?,
                };
                let mut sorted = vars.clone();
                sorted.sort();
                sorted.dedup();
                if sorted != vars {
                    return Err(bad("`vars` must be sorted and distinct"));
                }
                let data = entries
                    .iter()
                    .map(|r| cells(r)?.iter().map(|x| parse_laurent(x, &vars)).collect())
                    .collect::<Result<Vec<Vec<Laurent>>>>()?;
                Ok(AnyMatrix::Exact(from_rows(rows, cols, data)))
            }
            "complex" => {
                let data = entries
                    .iter()
                    .map(|r| cells(r)?.iter().map(parse_complex).collect())
                    .collect::<Result<Vec<Vec<C64>>>>()?;
                Ok(AnyMatrix::Numeric(from_rows(rows, cols, data)))
            }
            other => Err(bad(format!("unknown ring `{other}`"))),
        }
    }
}

fn from_rows<R: Scalar>(rows: usize, cols: usize, data: Vec<Vec<R>>) -> Matrix<R> {
    if rows == 0 {
        return Matrix::zeros(0, cols);
    }
    Matrix::from_rows(data).expect("row lengths checked")
}

/// Scalars whose matrices have a JSON encoding.
pub trait JsonScalar: Scalar {
    fn matrix_json(m: &Matrix<Self>) -> Value;
    fn scalar_json(x: &Self) -> Value;
}

impl JsonScalar for Laurent {
    fn matrix_json(m: &Matrix<Self>) -> Value {
        laurent_matrix_to_json(m)
    }
    fn scalar_json(x: &Self) -> Value {
        Value::String(x.to_string())
    }
}

impl JsonScalar for CycRat {
    fn matrix_json(m: &Matrix<Self>) -> Value {
        cyc_matrix_to_json(m)
    }
    fn scalar_json(x: &Self) -> Value {
        Value::String(x.to_string())
    }
}

impl JsonScalar for GaussRat {
    fn matrix_json(m: &Matrix<Self>) -> Value {
        complex_matrix_to_json(&m.map(|x| C64(x.to_c64())))
    }
    fn scalar_json(x: &Self) -> Value {
        Value::String(x.to_string())
    }
}

impl JsonScalar for C64 {
    fn matrix_json(m: &Matrix<Self>) -> Value {
        complex_matrix_to_json(m)
    }
    fn scalar_json(x: &Self) -> Value {
        json!([x.re(), x.im()])
    }
}

fn label_json(l: &Option<FamilyLabel>) -> Value {
    match l {
        Some(l) => serde_json::to_value(l).expect("label serializes"),
        None => Value::Null,
    }
}

fn rep_json_with<R: Scalar>(rep: &Representation<R>, ring: &str, f: impl Fn(&Matrix<R>) -> Value) -> Value {
    json!({
        "n": rep.n,
        "dim": rep.dim,
        "ring": ring,
        "sigma": rep.sigma.iter().map(&f).collect::<Vec<_>>(),
        "alpha": rep.alpha.iter().map(&f).collect::<Vec<_>>(),
        "family": label_json(&rep.label),
    })
}

pub fn rep_to_json(rep: &AnyRep) -> Value {
    match rep {
        AnyRep::Exact(r) => rep_json_with(r, "laurent", laurent_matrix_to_json),
        AnyRep::Numeric(r) => rep_json_with(r, "complex", complex_matrix_to_json),
    }
}

pub fn rep_from_json(v: &Value) -> Result<AnyRep> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("representation lacks `n`"))? as usize;
    let ring = v.get("ring").and_then(Value::as_str).unwrap_or("laurent");
    let mats = |key: &str| -> Result<Vec<AnyMatrix>> {
        match v.get(key) {
            None | Some(Value::Null) => Ok(vec![]),
            Some(Value::Array(a)) => a.iter().map(AnyMatrix::from_json).collect(),
            Some(_) => Err(bad(format!("`{key}` must be a list of matrices"))),
        }
    };
    let label: Option<FamilyLabel> = match v.get("family") {
        None | Some(Value::Null) => None,
        Some(x) => Some(serde_json::from_value(x.clone())?),
    };
    let (sigma, alpha) = (mats("sigma")?, mats("alpha")?);
    if sigma.is_empty() {
        return Err(bad("representation needs sigma images"));
    }
    let rep = match ring {
        "laurent" => {
            let pick = |ms: Vec<AnyMatrix>| -> Result<Vec<Matrix<Laurent>>> {
                ms.into_iter()
                    .map(|m| match m {
                        AnyMatrix::Exact(m) => Ok(m),
                        AnyMatrix::Numeric(_) => Err(Error::RingMismatch("complex matrix in laurent rep".into())),
                    })
                    .collect()
            };
            AnyRep::Exact(Representation::new(n, pick(sigma)?, pick(alpha)?, label)?)
        }
        "complex" => {
            let pick = |ms: Vec<AnyMatrix>| -> Result<Vec<Matrix<C64>>> {
                ms.into_iter()
                    .map(|m| match m {
                        AnyMatrix::Numeric(m) => Ok(m),
                        AnyMatrix::Exact(m) => Ok(m.to_cyc()?.map(|c| C64(c.to_c64()))),
                    })
                    .collect()
            };
            AnyRep::Numeric(Representation::new(n, pick(sigma)?, pick(alpha)?, label)?)
        }
        other => return Err(bad(format!("unknown ring `{other}`"))),
    };
    if let Some(d) = v.get("dim").and_then(Value::as_u64) {
        if d as usize != rep.dim() {
            return Err(bad(format!("`dim` is {d} but images are {}x{}", rep.dim(), rep.dim())));
        }
    }
    Ok(rep)
}

pub fn rep_from_str(s: &str) -> Result<AnyRep> {
    rep_from_json(&serde_json::from_str(s)?)
}

/// Parameter map of a label as JSON strings, for reports.
pub fn params_json(params: &BTreeMap<String, String>) -> Value {
    Value::Object(params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<Map<_, _>>())
}
