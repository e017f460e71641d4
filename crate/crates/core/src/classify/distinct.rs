//! Pairwise (non-)equivalence table over a grid of family instances.

use serde_json::{json, Value};

use crate::analysis::equiv::{are_equivalent, Equivalence};
use crate::analysis::same_matrix;
use crate::error::{Error, Result};
use crate::families::{make_family, psi3_x_root, q_change_of_basis, Family, FamilyParams};
use crate::matrix::Matrix;
use crate::representation::{EvalRep, Representation, Restrict};
use crate::scalar::{tolerance, Field, ParamValue, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct PairOutcome {
    pub i: usize,
    pub j: usize,
    pub expected: bool,
    /// `None` when the numeric decision was indeterminate.
    pub observed: Option<bool>,
    pub intertwiner_dim: Option<usize>,
    pub note: Option<String>,
}

impl PairOutcome {
    pub fn agrees(&self) -> bool {
        self.observed == Some(self.expected)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DistinctnessReport {
    pub labels: Vec<String>,
    pub pairs: Vec<PairOutcome>,
    /// Grid entries that could not be built.
    pub errors: Vec<(usize, String)>,
}

impl DistinctnessReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty() && self.pairs.iter().all(PairOutcome::agrees)
    }

    pub fn mismatches(&self) -> Vec<&PairOutcome> {
        self.pairs.iter().filter(|p| !p.agrees()).collect()
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "i": p.i,
                    "j": p.j,
                    "a": self.labels[p.i],
                    "b": self.labels[p.j],
                    "expected_equivalent": p.expected,
                    "observed_equivalent": p.observed,
                    "intertwiner_dim": p.intertwiner_dim,
                    "agrees": p.agrees(),
                    "note": p.note,
                })
            })
            .collect();
        let errors: Vec<Value> = self
            .errors
            .iter()
            .map(|(i, e)| json!({"index": i, "error": e}))
            .collect();
        json!({"ok": self.ok(), "instances": self.labels, "pairs": pairs, "errors": errors})
    }
}

/// Isomorphism class key: normalized family name and parameter values.
#[derive(Clone, Debug)]
struct Key {
    family: Family,
    n: usize,
    values: Vec<(&'static str, C64)>,
}

fn value(p: &FamilyParams, key: &str) -> Result<Option<C64>> {
    match p.lookup(key) {
        None => Ok(None),
        Some(ParamValue::Sym) => Err(Error::BadParams(format!("`{key}` must be evaluated"))),
        Some(v) => Ok(v.to_c64()),
    }
}

fn near(a: C64, b: C64) -> bool {
    (a.0 - b.0).norm() <= 1e3 * tolerance() * a.0.norm().max(b.0.norm()).max(1.0)
}

fn key_of(p: &FamilyParams) -> Result<Key> {
    let one = C64::new(1.0, 0.0);
    let req = |k: &str| value(p, k)?.ok_or_else(|| Error::BadParams(format!("{} needs `{k}`", p.family)));
    let mut family = p.family;
    let mut vals: Vec<(&'static str, C64)> = vec![("y", value(p, "y")?.unwrap_or(one))];
    if family.is_welded() {
        vals.push(("k", value(p, "k")?.unwrap_or(one)));
    }
    match family {
        Family::X => {}
        Family::Chi | Family::BurauW | Family::Tau | Family::TildeBeta => vals.push(("z", req("t")?)),
        Family::BurauV => {
            family = Family::BurauW;
            vals.push(("z", req("t")?));
        }
        Family::HatBeta => {
            let z = req("t")?;
            if near(z, one) {
                family = Family::TildeBeta;
            }
            vals.push(("z", z));
        }
        Family::TildeTau => {
            vals.push(("z", req("t")?));
            vals.push(("lambda", req("q")?));
        }
        Family::Psi3 => {
            let z = req("z")?;
            let lambda = req("lambda")?;
            let x = match value(p, "x")? {
                Some(x) => x,
                None => psi3_x_root(z, p.x_root.unwrap_or(0)),
            };
            vals.push(("z", z));
            if near(lambda, one) {
                family = Family::TildeTau;
                vals.push(("lambda", x));
            } else {
                vals.push(("lambda", lambda));
                vals.push(("x", x));
            }
        }
    }
    Ok(Key {
        family,
        n: p.n,
        values: vals,
    })
}

fn same_key(a: &Key, b: &Key) -> bool {
    a.family == b.family
        && a.n == b.n
        && a.values.len() == b.values.len()
        && a.values.iter().zip(&b.values).all(|((ka, va), (kb, vb))| ka == kb && near(*va, *vb))
}

fn is_hat_tilde_collapse(a: &FamilyParams, b: &FamilyParams) -> bool {
    matches!(
        (a.family, b.family),
        (Family::TildeBeta, Family::HatBeta) | (Family::HatBeta, Family::TildeBeta)
    )
}

fn is_psi3_tau_collapse(a: &FamilyParams, b: &FamilyParams) -> bool {
    matches!(
        (a.family, b.family),
        (Family::Psi3, Family::TildeTau) | (Family::TildeTau, Family::Psi3)
    )
}

/// Whether `p` is a nonzero multiple of `m`.
fn proportional<F: Field>(p: &Matrix<F>, m: &Matrix<F>) -> bool {
    let Some((r, c)) = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .max_by(|&(r1, c1), &(r2, c2)| m.get(r1, c1).magnitude().total_cmp(&m.get(r2, c2).magnitude()))
    else {
        return false;
    };
    if m.get(r, c).is_zero() || p.get(r, c).is_zero() {
        return false;
    }
    let ratio = p.get(r, c).div(m.get(r, c));
    same_matrix(p, &m.scale(&ratio), 1e3)
}

struct Decision {
    observed: Option<bool>,
    dim: Option<usize>,
    note: Option<String>,
}

fn decide<F: Field>(
    a: &Representation<F>,
    b: &Representation<F>,
    pa: &FamilyParams,
    pb: &FamilyParams,
    expected: bool,
) -> Result<Decision> {
    if is_psi3_tau_collapse(pa, pb) && expected {
        let equal = a
            .images(Restrict::All)
            .iter()
            .zip(b.images(Restrict::All))
            .all(|(x, y)| same_matrix(x, y, 1e3));
        let note = if equal {
            "psi3(z,1;x) and tilde-tau(z,x) are entrywise equal"
        } else {
            "psi3(z,1;x) and tilde-tau(z,x) differ entrywise"
        };
        return Ok(Decision {
            observed: Some(equal),
            dim: None,
            note: Some(note.into()),
        });
    }
    let eq = are_equivalent(a, b)?;
    let mut note = None;
    let (observed, dim) = match &eq {
        Equivalence::Equivalent(p) => {
            if is_hat_tilde_collapse(pa, pb) {
                let q = q_change_of_basis(a.n, &F::one())?;
                let qi = q.inverse()?;
                note = Some(if proportional(p, &q) {
                    "certificate is proportional to Q(1)".to_string()
                } else if proportional(p, &qi) {
                    "certificate is proportional to Q(1)^-1".to_string()
                } else {
                    "certificate is not proportional to Q(1)".to_string()
                });
            }
            (Some(true), Some(1))
        }
        Equivalence::NotEquivalent { intertwiner_dim } => (Some(false), Some(*intertwiner_dim)),
        Equivalence::Indeterminate(msg) => {
            note = Some(msg.clone());
            (None, None)
        }
    };
    Ok(Decision { observed, dim, note })
}

fn label(p: &FamilyParams) -> String {
    let vals: Vec<String> = p.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut s = format!("{}_{}({})", p.family, p.n, vals.join(", "));
    if let Some(j) = p.x_root {
        s.push_str(&format!("[x_root={j}]"));
    }
    s
}

/// Runs the equivalence test on every pair of the grid and compares with the
/// expected table: two instances are equivalent exactly when their normalized
/// parameters agree, with β̃ₙ(1) ≅ β̂ₙ(1) and ψ₃(z,1;x) = τ̃₃(z,x).
pub fn verify_pairwise_distinctness(grid: &[FamilyParams]) -> DistinctnessReport {
    let mut report = DistinctnessReport {
        labels: grid.iter().map(label).collect(),
        ..Default::default()
    };
    let mut built: Vec<Option<(Key, EvalRep)>> = Vec::new();
    for (i, p) in grid.iter().enumerate() {
        let r = key_of(p).and_then(|k| Ok((k, make_family(p)?.evaluated()?)));
        match r {
            Ok(v) => built.push(Some(v)),
            Err(e) => {
                report.errors.push((i, e.to_string()));
                built.push(None);
            }
        }
    }
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let (Some((ka, ra)), Some((kb, rb))) = (&built[i], &built[j]) else { continue };
            let (pa, pb) = (&grid[i], &grid[j]);
            if pa.family.is_welded() != pb.family.is_welded() || pa.n != pb.n {
                report.pairs.push(PairOutcome {
                    i,
                    j,
                    expected: false,
                    observed: Some(false),
                    intertwiner_dim: None,
                    note: Some("representations of different groups".into()),
                });
                continue;
            }
            let expected = same_key(ka, kb);
            let decision = match (ra, rb) {
                (EvalRep::Exact(a), EvalRep::Exact(b)) => decide(a, b, pa, pb, expected),
                _ => {
                    let num = |r: &EvalRep| match r {
                        EvalRep::Exact(x) => x.to_numeric(),
                        EvalRep::Numeric(x) => x.clone(),
                    };
                    decide(&num(ra), &num(rb), pa, pb, expected)
                }
            };
            let outcome = match decision {
                Ok(d) => PairOutcome {
                    i,
                    j,
                    expected,
                    observed: d.observed,
                    intertwiner_dim: d.dim,
                    note: d.note,
                },
                Err(e) => PairOutcome {
                    i,
                    j,
                    expected,
                    observed: None,
                    intertwiner_dim: None,
                    note: Some(e.to_string()),
                },
            };
            report.pairs.push(outcome);
        }
    }
    report
}
