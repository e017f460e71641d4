use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use welded_core::analysis::{
    algebra_dimension, are_equivalent, burnside_irreducible, check_relations, find_invariant_subspace,
    nonfaithful_witness, Equivalence,
};
use welded_core::json::{rep_from_str, rep_to_json, JsonScalar};
use welded_core::scalar::{parse_param, tolerance};
use welded_core::{
    extension_search, identify_extension, make_family, verify_pairwise_distinctness, AnyRep, EvalRep, Family,
    FamilyParams, Field, Laurent, ParamValue, Representation, Restrict, RestrictionKind, Scalar,
    SearchConfig, C64,
};

use crate::report::{exit_code_for, matrix_text, Report};
use crate::{Cli, Command, FamilyArgs, Which};

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Gen(args) => gen(args),
        Command::Verify { rep } => verify(&load(rep)?),
        Command::Irreducible { rep, restrict } => irreducible(&load(rep)?, *restrict),
        Command::Equivalent { a, b } => equivalent(&load(a)?, &load(b)?),
        Command::Identify { rep } => identify(&load(rep)?),
        Command::Search {
            restriction,
            n,
            z,
            starts,
            max_iter,
            json_out,
        } => {
            let mut cfg = SearchConfig::new(*n, RestrictionKind::from_str(restriction)?, complex_arg("z", z)?);
            cfg.starts = *starts;
            cfg.max_iter = *max_iter;
            cfg.seed = cli.seed;
            let report = search(&cfg)?;
            if let Some(path) = json_out {
                let text = serde_json::to_string_pretty(&report.json)?;
                std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(report)
        }
        Command::Distinct { grid } => distinct(grid),
        Command::Witness { rep } => witness(&load(rep)?),
        Command::Specialize { rep, assignments } => specialize(&load(rep)?, assignments),
    }
}

fn load(path: &Path) -> Result<AnyRep> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    rep_from_str(&text).map_err(|e| anyhow!("parsing {}: {e}", path.display()))
}

fn evaluated(rep: &AnyRep) -> Result<EvalRep> {
    rep.evaluated()
        .context("representation has free variables; run `wrep specialize` first")
}

fn complex_arg(name: &str, text: &str) -> Result<C64> {
    parse_param(text)?
        .to_c64()
        .ok_or_else(|| anyhow!("`{name}` needs a value, not `{text}`"))
}

/// Failure report for errors that are answers rather than bad input.
fn semantic_failure(e: anyhow::Error, key: &str) -> Result<Report> {
    if exit_code_for(&e) != 1 {
        return Err(e);
    }
    let msg = format!("{e:#}");
    Ok(Report::new(format!("FAIL: {msg}"), json!({ key: false, "error": msg }), false))
}

fn family_params(args: &FamilyArgs) -> Result<FamilyParams> {
    let family = Family::from_str(&args.family)?;
    let mut p = FamilyParams::new(family, args.n);
    let fields = [
        ("t", &args.t),
        ("q", &args.q),
        ("y", &args.y),
        ("k", &args.k),
        ("z", &args.z),
        ("lambda", &args.lambda),
        ("x", &args.x),
    ];
    for (key, value) in fields {
        if let Some(v) = value {
            p = p.with(key, parse_param(v).with_context(|| format!("--{key} {v}"))?);
        }
    }
    p.x_root = args.x_root;
    Ok(p)
}

fn gen(args: &FamilyArgs) -> Result<Report> {
    let rep = make_family(&family_params(args)?)?;
    let json = rep_to_json(&rep);
    Ok(Report::new(serde_json::to_string_pretty(&json)?, json, true))
}

fn verify(rep: &AnyRep) -> Result<Report> {
    let (report, mode) = match rep {
        AnyRep::Exact(r) if r.variables().is_empty() => (check_relations(r), "exactly".to_string()),
        AnyRep::Exact(r) => (check_relations(r), "symbolically".to_string()),
        AnyRep::Numeric(r) => (check_relations(r), format!("numerically (tol {:e})", tolerance())),
    };
    let mut json = serde_json::to_value(&report)?;
    json["ok"] = json!(report.ok());
    let text = if report.ok() {
        format!("OK: {} relations hold {mode}", report.relations)
    } else {
        let mut s = format!("FAIL: {} of {} relations fail", report.failures.len(), report.relations);
        for f in &report.failures {
            s.push_str(&format!("\n  {}  deviation {:e}", f.id, f.deviation));
        }
        s
    };
    Ok(Report::new(text, json, report.ok()))
}

fn vectors_json<F: JsonScalar>(vs: &[Vec<F>]) -> Value {
    Value::Array(
        vs.iter()
            .map(|v| Value::Array(v.iter().map(F::scalar_json).collect()))
            .collect(),
    )
}

fn irreducible_in<F: Field + JsonScalar + Display>(rep: &Representation<F>, sel: Restrict) -> Result<Report> {
    let d = rep.dim;
    let alg = algebra_dimension(rep, sel)?;
    if burnside_irreducible(rep, sel)? {
        let text = format!("IRREDUCIBLE (algebra dimension {alg} = {d}^2)");
        let json = json!({"irreducible": true, "dim": d, "algebra_dim": alg, "subspace": null});
        return Ok(Report::new(text, json, true));
    }
    let mut text = format!("REDUCIBLE (algebra dimension {alg} < {d}^2)");
    let subspace = match find_invariant_subspace(rep, sel) {
        Ok(Some(vs)) => {
            text.push_str(&format!("\ninvariant subspace of dimension {}:", vs.len()));
            for v in &vs {
                let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
                text.push_str(&format!("\n  ({})", cells.join(", ")));
            }
            vectors_json(&vs)
        }
        Ok(None) => Value::Null,
        Err(e) => {
            text.push_str(&format!("\nno invariant subspace found: {e}"));
            Value::Null
        }
    };
    let json = json!({"irreducible": false, "dim": d, "algebra_dim": alg, "subspace": subspace});
    Ok(Report::new(text, json, true))
}

fn irreducible(rep: &AnyRep, which: Which) -> Result<Report> {
    let sel = match which {
        Which::All => Restrict::All,
        Which::Sigma => Restrict::SigmaOnly,
        Which::Alpha => Restrict::AlphaOnly,
    };
    match evaluated(rep)? {
        EvalRep::Exact(r) => irreducible_in(&r, sel),
        EvalRep::Numeric(r) => irreducible_in(&r, sel),
    }
}

fn equivalent_in<F: Field + JsonScalar + Display>(a: &Representation<F>, b: &Representation<F>) -> Result<Report> {
    Ok(match are_equivalent(a, b)? {
        Equivalence::Equivalent(p) => {
            let text = format!(
                "EQUIVALENT\nintertwiner P with rho_b = P rho_a P^-1:\n{}",
                matrix_text(p.rows(), p.cols(), |r, c| p.get(r, c).clone())
            );
            Report::new(text, json!({"equivalent": true, "intertwiner": F::matrix_json(&p)}), true)
        }
        Equivalence::NotEquivalent { intertwiner_dim } => Report::new(
            format!("NOT EQUIVALENT (intertwiner dim {intertwiner_dim})"),
            json!({"equivalent": false, "intertwiner_dim": intertwiner_dim}),
            true,
        ),
        Equivalence::Indeterminate(msg) => Report::new(
            format!("INDETERMINATE: {msg}"),
            json!({"equivalent": null, "indeterminate": msg}),
            false,
        ),
    })
}

fn equivalent(a: &AnyRep, b: &AnyRep) -> Result<Report> {
    match (evaluated(a)?, evaluated(b)?) {
        (EvalRep::Exact(x), EvalRep::Exact(y)) => equivalent_in(&x, &y),
        _ => equivalent_in(&a.to_numeric()?, &b.to_numeric()?),
    }
}

fn identify_in<F: Field + JsonScalar + Display>(rep: &Representation<F>) -> Result<Report> {
    let c = identify_extension(rep)?;
    let p = &c.certificate;
    let text = format!(
        "{c}\ncertificate P with canonical = P rep P^-1:\n{}",
        matrix_text(p.rows(), p.cols(), |r, col| p.get(r, col).clone())
    );
    let mut json = c.to_json();
    json["classified"] = json!(true);
    Ok(Report::new(text, json, true))
}

fn identify(rep: &AnyRep) -> Result<Report> {
    let r = match evaluated(rep)? {
        EvalRep::Exact(r) => identify_in(&r),
        EvalRep::Numeric(r) => identify_in(&r),
    };
    r.or_else(|e| semantic_failure(e, "classified"))
}

fn search(cfg: &SearchConfig) -> Result<Report> {
    let report = extension_search(cfg)?;
    let mut text = format!(
        "seed {}: {} of {} starts converged for n = {}, {} restriction, z = {}; {} clusters",
        report.seed,
        report.converged,
        report.starts,
        report.n,
        report.restriction,
        report.z,
        report.clusters.len()
    );
    for (i, c) in report.clusters.iter().enumerate() {
        let what = match (&c.classification, &c.error) {
            (Some(k), _) => k.to_string(),
            (None, Some(e)) => format!("unidentified: {e}"),
            (None, None) => "unidentified".to_string(),
        };
        text.push_str(&format!(
            "\n  #{i}: residual {:.2e}, manifold dim {}, {} members, {what}",
            c.residual, c.manifold_dim, c.members
        ));
    }
    for note in &report.notes {
        text.push_str(&format!("\nnote: {note}"));
    }
    Ok(Report::new(text, report.to_json(), report.complete()))
}

fn grid_entry(v: &Value) -> Result<FamilyParams> {
    let obj = v.as_object().ok_or_else(|| anyhow!("grid entries must be objects"))?;
    let family = obj
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| anyhow!("grid entry lacks `family`"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("grid entry lacks `n`"))?;
    let mut p = FamilyParams::new(Family::from_str(family)?, n as usize);
    for (key, value) in obj {
        match key.as_str() {
            "family" | "n" => {}
            "x_root" => {
                let j = value.as_u64().ok_or_else(|| anyhow!("`x_root` must be an integer"))?;
                p.x_root = Some(j as u32);
            }
            _ => {
                let text = match value {
                    Value::String(s) => s.clone(),
                    Value::Number(x) => x.to_string(),
                    other => bail!("`{key}` has unsupported value {other}"),
                };
                p = p.with(key, parse_param(&text).with_context(|| format!("`{key}`"))?);
            }
        }
    }
    Ok(p)
}

fn distinct(path: &Path) -> Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let entries = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("grid")
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("expected a list or an object with `grid`"))?,
        _ => bail!("expected a list of family instances"),
    };
    let grid = entries.iter().map(grid_entry).collect::<Result<Vec<_>>>()?;
    let report = verify_pairwise_distinctness(&grid);
    let mut out = format!(
        "{}: {} instances, {} pairs, {} mismatches",
        if report.ok() { "OK" } else { "FAIL" },
        report.labels.len(),
        report.pairs.len(),
        report.mismatches().len()
    );
    for p in &report.pairs {
        let observed = match p.observed {
            Some(true) => "equivalent",
            Some(false) => "inequivalent",
            None => "undecided",
        };
        let mark = if p.agrees() { "ok" } else { "MISMATCH" };
        out.push_str(&format!(
            "\n  {} vs {}: {observed} [{mark}]",
            report.labels[p.i], report.labels[p.j]
        ));
        if let Some(note) = &p.note {
            out.push_str(&format!(" ({note})"));
        }
    }
    for (i, e) in &report.errors {
        out.push_str(&format!("\n  entry {i}: {e}"));
    }
    Ok(Report::new(out, report.to_json(), report.ok()))
}

fn witness_in<R: Scalar>(rep: &Representation<R>) -> Result<Report> {
    let w = nonfaithful_witness(rep)?;
    let text = format!(
        "{}\nOK: the word is nontrivial in WB_{} and its image is the identity",
        w.text, rep.n
    );
    let json = json!({
        "witness": true,
        "word": w.text,
        "expanded": w.word.to_string(),
        "alpha_index": w.alpha_index,
    });
    Ok(Report::new(text, json, true))
}

fn witness(rep: &AnyRep) -> Result<Report> {
    let r = match rep {
        AnyRep::Exact(r) => witness_in(r),
        AnyRep::Numeric(r) => witness_in(r),
    };
    r.or_else(|e| semantic_failure(e, "witness"))
}

fn specialize(rep: &AnyRep, assignments: &[String]) -> Result<Report> {
    let AnyRep::Exact(rep) = rep else {
        bail!("representation is already numeric");
    };
    let vars = rep.variables();
    let mut values: BTreeMap<String, ParamValue> = BTreeMap::new();
    for a in assignments {
        let (name, value) = a
            .split_once('=')
            .ok_or_else(|| anyhow!("assignment `{a}` must look like NAME=VALUE"))?;
        if !vars.iter().any(|v| v == name) {
            bail!("variable `{name}` does not occur (variables: {})", vars.join(", "));
        }
        values.insert(name.to_string(), parse_param(value).with_context(|| format!("`{a}`"))?);
    }
    values.retain(|_, v| !matches!(v, ParamValue::Sym));
    let relabel = |label: Option<welded_core::FamilyLabel>| {
        label.map(|mut l| {
            for (k, v) in &values {
                l.params.insert(k.clone(), v.to_string());
            }
            l
        })
    };
    let out = if values.values().any(|v| matches!(v, ParamValue::Complex(_))) {
        let assign: BTreeMap<String, C64> = values
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.to_c64().ok_or_else(|| anyhow!("`{k}` has no value"))?)))
            .collect::<Result<_>>()?;
        let mut r = rep.specialize(&assign)?;
        r.label = relabel(r.label.take());
        AnyRep::Numeric(r)
    } else {
        let assign: BTreeMap<String, Laurent> = values
            .iter()
            .map(|(k, v)| match v {
                ParamValue::Exact(c) => (k.clone(), Laurent::constant(c.clone())),
                _ => unreachable!("only exact values remain"),
            })
            .collect();
        let mut r = rep.try_map(|x| x.specialize_partial(&assign))?;
        r.label = relabel(r.label.take());
        AnyRep::Exact(r)
    };
    let json = rep_to_json(&out);
    Ok(Report::new(serde_json::to_string_pretty(&json)?, json, true))
}
