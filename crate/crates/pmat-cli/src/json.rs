//! JSON codec for the job format. All numbers travel as decimal strings so
//! nothing is clipped to machine precision; plain JSON integers are accepted
//! on input for convenience.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use pmat::{pm_validate, Domain, Elt, Error, Fe, FgIdeal, PseudoBasis, PseudoMatrix, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}

pub fn parse_bigint(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| bad(format!("{}: not a decimal integer: {:?}", what, s))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else {
                Err(bad(format!("{}: use a decimal string for large numbers", what)))
            }
        }
        _ => Err(bad(format!("{}: expected a decimal string", what))),
    }
}

/// Element literal: `"5"` for x alone, or `["x", "y"]` for x + y*w.
pub fn parse_elt(dom: &Domain, v: &Value, what: &str) -> Result<Elt> {
    match v {
        Value::Array(parts) => {
            if parts.len() != 2 {
                return Err(bad(format!("{}: element pair needs exactly [x, y]", what)));
            }
            let x = parse_bigint(&parts[0], what)?;
            let y = parse_bigint(&parts[1], what)?;
            if dom.is_int() && !y.is_zero() {
                return Err(bad(format!("{}: nonzero w part over the integers", what)));
            }
            Ok(Elt::new(x, y))
        }
        _ => Ok(Elt::from_int(parse_bigint(v, what)?)),
    }
}

/// Fraction literal: an element (denominator 1) or `{"num": .., "den": ".."}`.
pub fn parse_fe(dom: &Domain, v: &Value, what: &str) -> Result<Fe> {
    if let Value::Object(obj) = v {
        if obj.contains_key("num") {
            let num = parse_elt(dom, &obj["num"], what)?;
            let den = match obj.get("den") {
                Some(d) => parse_bigint(d, what)?,
                None => BigInt::one(),
            };
            return dom.fe_new(num, den);
        }
    }
    Ok(Fe::from_elt(parse_elt(dom, v, what)?))
}

/// Ideal literal: `{"num_gens": [elt, ..], "den": ".."}`; an empty generator
/// list is the zero ideal.
pub fn parse_ideal(dom: &Domain, v: &Value, what: &str) -> Result<FgIdeal> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(format!("{}: expected an ideal object", what)))?;
    let gens_v = obj
        .get("num_gens")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("{}: missing \"num_gens\" array", what)))?;
    let den = match obj.get("den") {
        Some(d) => parse_bigint(d, what)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad(format!("{}: zero denominator", what)));
    }
    let mut gens = Vec::with_capacity(gens_v.len());
    for (k, g) in gens_v.iter().enumerate() {
        let e = parse_elt(dom, g, &format!("{}[{}]", what, k))?;
        gens.push(dom.fe_new(e, den.clone())?);
    }
    FgIdeal::new(*dom, &gens)
}

/// Pseudo-matrix literal with row ideals, column ideals and a dense entry
/// grid; the containment a_ij e_j ⊆ h_i is checked before anything runs.
pub fn parse_pm(dom: &Domain, v: &Value, max_dim: usize, what: &str) -> Result<PseudoMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(format!("{}: expected a pseudo-matrix object", what)))?;
    let rows_v = obj
        .get("row_ideals")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("{}: missing \"row_ideals\"", what)))?;
    let cols_v = obj
        .get("col_ideals")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("{}: missing \"col_ideals\"", what)))?;
    let entries_v = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("{}: missing \"entries\"", what)))?;
    if rows_v.len() > max_dim || cols_v.len() > max_dim {
        return Err(bad(format!(
            "{}: dimension {}x{} exceeds the guard {} (raise with --max-dim)",
            what,
            rows_v.len(),
            cols_v.len(),
            max_dim
        )));
    }
    let mut row_ideals = Vec::with_capacity(rows_v.len());
    for (i, r) in rows_v.iter().enumerate() {
        row_ideals.push(parse_ideal(dom, r, &format!("{}.row_ideals[{}]", what, i))?);
    }
    let mut col_ideals = Vec::with_capacity(cols_v.len());
    for (j, c) in cols_v.iter().enumerate() {
        col_ideals.push(parse_ideal(dom, c, &format!("{}.col_ideals[{}]", what, j))?);
    }
    if entries_v.len() != row_ideals.len() {
        return Err(bad(format!("{}: entry row count != row ideal count", what)));
    }
    let mut entries = Vec::with_capacity(entries_v.len());
    for (i, row) in entries_v.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(format!("{}.entries[{}]: expected an array", what, i)))?;
        if row.len() != col_ideals.len() {
            return Err(bad(format!("{}.entries[{}]: wrong length", what, i)));
        }
        let mut out = Vec::with_capacity(row.len());
        for (j, e) in row.iter().enumerate() {
            out.push(parse_fe(dom, e, &format!("{}.entries[{}][{}]", what, i, j))?);
        }
        entries.push(out);
    }
    let pm = PseudoMatrix::new(*dom, row_ideals, col_ideals, entries)?;
    pm_validate(&pm)?;
    Ok(pm)
}

/// Domain descriptor: `{"type": "int"}` or `{"type": "quadratic", "d": -5}`.
/// The optional `"ring": "sqrt"` pin is honoured only when Z[√d] is already
/// the maximal order; for d ≡ 1 (mod 4) it is rejected rather than silently
/// replaced by Z[(1+√d)/2].
pub fn parse_domain(v: &Value) -> Result<Domain> {
    let obj = v.as_object().ok_or_else(|| bad("domain: expected an object"))?;
    let obj = match obj.get("domain") {
        Some(Value::Object(inner)) => inner,
        Some(_) => return Err(bad("domain: \"domain\" must be an object")),
        None => obj,
    };
    match obj.get("type").and_then(Value::as_str) {
        Some("int") => Ok(Domain::Int),
        Some("quadratic") => {
            let d = parse_bigint(
                obj.get("d").ok_or_else(|| bad("domain: quadratic needs \"d\""))?,
                "domain.d",
            )?;
            let d: i64 = d
                .try_into()
                .map_err(|_| bad("domain.d out of range"))?;
            let dom = Domain::quadratic(d)?;
            if let Some(ring) = obj.get("ring").and_then(Value::as_str) {
                match ring {
                    "sqrt" => {
                        if d.rem_euclid(4) == 1 {
                            return Err(Error::BadDomain(format!(
                                "Z[sqrt({})] is not maximal for d = {} (d ≡ 1 mod 4); \
                                 drop the \"ring\" pin to use the maximal order",
                                d, d
                            )));
                        }
                    }
                    other => return Err(bad(format!("domain.ring: unknown value {:?}", other))),
                }
            }
            Ok(dom)
        }
        Some(other) => Err(bad(format!("domain.type: unknown value {:?}", other))),
        None => Err(bad("domain: missing \"type\"")),
    }
}

pub fn render_bigint(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn render_elt(dom: &Domain, a: &Elt) -> Value {
    if dom.is_int() {
        render_bigint(&a.x)
    } else {
        json!([a.x.to_string(), a.y.to_string()])
    }
}

pub fn render_fe(dom: &Domain, a: &Fe) -> Value {
    json!({ "num": render_elt(dom, &a.num), "den": render_bigint(&a.den) })
}

pub fn render_ideal(a: &FgIdeal) -> Value {
    if a.is_one() {
        return json!({ "num_gens": [render_elt(&a.dom, &Elt::one())], "den": "1" });
    }
    let c = a.compress();
    json!({
        "num_gens": c.num_gens.iter().map(|g| render_elt(&c.dom, g)).collect::<Vec<_>>(),
        "den": render_bigint(&c.den),
    })
}

pub fn render_pm(a: &PseudoMatrix) -> Value {
    json!({
        "row_ideals": a.row_ideals.iter().map(render_ideal).collect::<Vec<_>>(),
        "col_ideals": a.col_ideals.iter().map(render_ideal).collect::<Vec<_>>(),
        "entries": a
            .entries
            .iter()
            .map(|row| row.iter().map(|e| render_fe(&a.dom, e)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn render_basis(b: &PseudoBasis) -> Value {
    json!({
        "vectors": b
            .vectors
            .iter()
            .map(|v| v.iter().map(|e| render_fe(&b.dom, e)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "ideals": b.ideals.iter().map(render_ideal).collect::<Vec<_>>(),
    })
}

fn omega_legend(dom: &Domain) -> Option<String> {
    match dom {
        Domain::Int => None,
        Domain::Quadratic(q) => Some(if q.one_mod_four() {
            format!("w = (1 + sqrt({})) / 2", q.d)
        } else {
            format!("w = sqrt({})", q.d)
        }),
    }
}

pub fn show_ideal(a: &FgIdeal) -> String {
    if a.is_zero() {
        return "<0>".to_string();
    }
    if a.is_one() {
        return "<1>".to_string();
    }
    let c = a.compress();
    let gens: Vec<String> = c.num_gens.iter().map(|g| c.dom.show(g)).collect();
    if c.den.is_one() {
        format!("<{}>", gens.join(", "))
    } else {
        format!("(1/{})<{}>", c.den, gens.join(", "))
    }
}

pub fn show_pm(a: &PseudoMatrix) -> Vec<String> {
    a.entries
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|e| a.dom.fe_show(e)).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect()
}

/// Optional human block appended under `--pretty`.
pub fn pretty_block(dom: &Domain, items: &[(&str, Value)]) -> Value {
    let mut m = Map::new();
    if let Some(legend) = omega_legend(dom) {
        m.insert("omega".into(), Value::String(legend));
    }
    for (k, v) in items {
        m.insert((*k).into(), v.clone());
    }
    Value::Object(m)
}
