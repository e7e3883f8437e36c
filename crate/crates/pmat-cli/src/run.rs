//! Job execution. Each reduction recomputes its defining identity before the
//! result is serialized; a failed recheck is an internal error, never silent
//! output.

use serde_json::{json, Map, Value};

use pmat::hermite::{det_chains_equal, transform_is_invertible};
use pmat::{
    fitting_ideals, hermite, double_hermite, ideal_eq, ideal_includes, ideal_intersect,
    ideal_inverse, ideal_mul, ideal_quotient, ideal_sum, member, pm_mul, smith_pseudo_dedekind,
    solvable_by_ideals, solve_full, torsion_structure, Domain, Error, Fe, FgIdeal, HermiteConfig,
    PseudoMatrix, Result,
};

use crate::json::{
    parse_fe, parse_ideal, parse_pm, pretty_block, render_basis, render_fe, render_ideal,
    render_pm, show_ideal, show_pm,
};

pub struct Options {
    pub cfg: HermiteConfig,
    pub max_dim: usize,
    pub pretty: bool,
}

/// A finished job: the result document plus the process exit code (0 for a
/// positive result, 2 for a mathematically definite negative verdict).
pub struct Outcome {
    pub doc: Value,
    pub code: i32,
}

fn ok(doc: Value) -> Outcome {
    Outcome { doc, code: 0 }
}

fn negative(doc: Value) -> Outcome {
    Outcome { doc, code: 2 }
}

fn field<'a>(job: &'a Value, key: &str) -> Result<&'a Value> {
    job.get(key)
        .ok_or_else(|| Error::BadInput(format!("job: missing \"{}\"", key)))
}

fn pm_entries_eq(a: &PseudoMatrix, b: &PseudoMatrix) -> bool {
    a.entries == b.entries
}

fn chains_match(a: &[FgIdeal], b: &[FgIdeal]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| ideal_eq(x, y))
}

/// L·A·C against H, bit-exact on entries and up to ideal equality on chains.
fn check_product(
    l: &PseudoMatrix,
    a: &PseudoMatrix,
    c: &PseudoMatrix,
    h: &PseudoMatrix,
) -> Result<bool> {
    let la = pm_mul(l, a)?;
    let lac = pm_mul(&la, c)?;
    Ok(pm_entries_eq(&lac, h)
        && chains_match(&lac.row_ideals, &h.row_ideals)
        && chains_match(&lac.col_ideals, &h.col_ideals))
}

fn reduction_doc(
    opts: &Options,
    a: &PseudoMatrix,
    l: &PseudoMatrix,
    c: &PseudoMatrix,
    form: &PseudoMatrix,
    rank: usize,
    extra: &[(&str, Value)],
) -> Result<Value> {
    let identity = check_product(l, a, c, form)?;
    let invertible = transform_is_invertible(c)?;
    let chains = det_chains_equal(a, form)?;
    if !identity || !invertible || !chains {
        return Err(Error::InvariantViolation(
            "reduction failed its output recheck".into(),
        ));
    }
    let mut m = Map::new();
    m.insert("l".into(), render_pm(l));
    m.insert("c".into(), render_pm(c));
    m.insert("form".into(), render_pm(form));
    m.insert("rank".into(), json!(rank));
    for (k, v) in extra {
        m.insert((*k).into(), v.clone());
    }
    m.insert(
        "verification".into(),
        json!({
            "product_identity": identity,
            "transform_invertible": invertible,
            "det_chains_equal": chains,
        }),
    );
    if opts.pretty {
        m.insert(
            "pretty".into(),
            pretty_block(&a.dom, &[("form", json!(show_pm(form)))]),
        );
    }
    Ok(Value::Object(m))
}

pub fn run_hermite(dom: &Domain, job: &Value, opts: &Options, double: bool) -> Result<Outcome> {
    let a = parse_pm(dom, field(job, "matrix")?, opts.max_dim, "matrix")?;
    let hf = if double {
        double_hermite(&a, &opts.cfg)?
    } else {
        hermite(&a, &opts.cfg)?
    };
    let doc = reduction_doc(opts, &a, &hf.l, &hf.c, &hf.h, hf.rank, &[])?;
    Ok(ok(doc))
}

pub fn run_smith(dom: &Domain, job: &Value, opts: &Options) -> Result<Outcome> {
    let a = parse_pm(dom, field(job, "matrix")?, opts.max_dim, "matrix")?;
    let sf = smith_pseudo_dedekind(&a, &opts.cfg)?;
    let divisors: Vec<Value> = sf.divisors.iter().map(render_ideal).collect();
    let doc = reduction_doc(
        opts,
        &a,
        &sf.l,
        &sf.c,
        &sf.form,
        sf.rank,
        &[("divisors", json!(divisors))],
    )?;
    Ok(ok(doc))
}

pub fn run_solve(dom: &Domain, job: &Value, opts: &Options) -> Result<Outcome> {
    let a = parse_pm(dom, field(job, "matrix")?, opts.max_dim, "matrix")?;
    let rhs_v = field(job, "rhs")?
        .as_array()
        .ok_or_else(|| Error::BadInput("job.rhs: expected an array".into()))?;
    let mut b: Vec<Fe> = Vec::with_capacity(rhs_v.len());
    for (i, e) in rhs_v.iter().enumerate() {
        b.push(parse_fe(dom, e, &format!("rhs[{}]", i))?);
    }
    let bid = match job.get("rhs_ideal") {
        Some(v) => parse_ideal(dom, v, "rhs_ideal")?,
        None => FgIdeal::one(*dom),
    };
    let verdict = solvable_by_ideals(&a, &b, &bid)?;
    let sol = solve_full(&a, &b, &bid, &opts.cfg)?;
    if verdict != sol.solvable {
        return Err(Error::InvariantViolation(
            "determinantal test and solver disagree".into(),
        ));
    }
    let mut m = Map::new();
    m.insert("solvable".into(), json!(sol.solvable));
    if let Some(x) = &sol.particular {
        let xs: Vec<Value> = x.iter().map(|e| render_fe(dom, e)).collect();
        m.insert("particular".into(), json!(xs));
        if opts.pretty {
            let shown: Vec<String> = x.iter().map(|e| dom.fe_show(e)).collect();
            m.insert("pretty".into(), pretty_block(dom, &[("particular", json!(shown))]));
        }
    }
    if let Some(kb) = &sol.kernel {
        m.insert("kernel".into(), render_basis(kb));
    }
    if let Some(row) = sol.failing_row {
        m.insert("failing_row".into(), json!(row));
    }
    let code_ok = sol.solvable;
    let doc = Value::Object(m);
    Ok(if code_ok { ok(doc) } else { negative(doc) })
}

pub fn run_module(dom: &Domain, job: &Value, opts: &Options) -> Result<Outcome> {
    let a = parse_pm(dom, field(job, "matrix")?, opts.max_dim, "matrix")?;
    let ms = torsion_structure(&a)?;
    let fitting = fitting_ideals(&ms, dom)?;
    let mut m = Map::new();
    m.insert("free_rank".into(), json!(ms.free_rank));
    m.insert(
        "invariant_ideals".into(),
        json!(ms.invariant_ideals.iter().map(render_ideal).collect::<Vec<_>>()),
    );
    m.insert(
        "fitting_ideals".into(),
        json!(fitting.iter().map(render_ideal).collect::<Vec<_>>()),
    );
    if opts.pretty {
        let chain: Vec<String> = ms.invariant_ideals.iter().map(show_ideal).collect();
        m.insert("pretty".into(), pretty_block(dom, &[("invariant_chain", json!(chain))]));
    }
    Ok(ok(Value::Object(m)))
}

pub fn run_ideal_op(dom: &Domain, job: &Value, opts: &Options) -> Result<Outcome> {
    let op = field(job, "op")?
        .as_str()
        .ok_or_else(|| Error::BadInput("job.op: expected a string".into()))?;
    let a = parse_ideal(dom, field(job, "a")?, "a")?;
    let second = |key: &str| -> Result<FgIdeal> { parse_ideal(dom, field(job, key)?, key) };
    let ideal_result = |r: FgIdeal| -> Outcome {
        let mut m = Map::new();
        m.insert("result".into(), render_ideal(&r));
        if opts.pretty {
            m.insert("pretty".into(), pretty_block(dom, &[("result", json!(show_ideal(&r)))]));
        }
        ok(Value::Object(m))
    };
    let bool_result = |v: bool| -> Outcome {
        let doc = json!({ "result": v });
        if v {
            ok(doc)
        } else {
            negative(doc)
        }
    };
    Ok(match op {
        "sum" => ideal_result(ideal_sum(&a, &second("b")?)?),
        "intersect" => ideal_result(ideal_intersect(&a, &second("b")?)?),
        "mul" => ideal_result(ideal_mul(&a, &second("b")?)?),
        "quotient" => ideal_result(ideal_quotient(&a, &second("b")?)?),
        "inverse" => ideal_result(ideal_inverse(&a)?),
        "eq" => bool_result(ideal_eq(&a, &second("b")?)),
        "includes" => bool_result(ideal_includes(&a, &second("b")?)),
        "member" => {
            let x = parse_fe(dom, field(job, "x")?, "x")?;
            bool_result(member(&x, &a))
        }
        other => {
            return Err(Error::BadInput(format!("job.op: unknown operation {:?}", other)));
        }
    })
}
