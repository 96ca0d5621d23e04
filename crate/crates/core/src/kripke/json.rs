//! JSON form of semiframes.
//!
//! ```json
//! {"domain": ["p1", "neg(p1)"],
//!  "worlds": ["a", "b"],
//!  "order": [["a", "b"]],
//!  "valuation": [{"world": "a", "values": {"p1": false, "neg(p1)": false}}, ...]}
//! ```
//!
//! `order` lists covering pairs; the reflexive-transitive closure is taken on
//! input. Worlds missing from `valuation` and formulas missing from `values`
//! are an error.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::syntax::{is_subformula_closed, parse_formula, Domain, Signature, Theory};

use super::frame::Semiframe;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("frame json: {0}")]
pub struct FrameJsonError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, FrameJsonError> {
    Err(FrameJsonError(msg.into()))
}

pub fn frame_to_json(f: &Semiframe) -> Value {
    let domain: Vec<String> = f.domain.formulas().iter().map(|p| p.to_string()).collect();
    let order: Vec<Value> = f
        .covering_pairs()
        .into_iter()
        .map(|(a, b)| json!([f.labels[a], f.labels[b]]))
        .collect();
    let valuation: Vec<Value> = f
        .worlds()
        .map(|a| {
            let values: Map<String, Value> = domain
                .iter()
                .zip(&f.valuation[a])
                .map(|(p, &v)| (p.clone(), Value::Bool(v)))
                .collect();
            json!({"world": f.labels[a], "values": values})
        })
        .collect();
    json!({"domain": domain, "worlds": f.labels, "order": order, "valuation": valuation})
}

fn strings<'a>(v: &'a Value, key: &str) -> Result<Vec<&'a str>, FrameJsonError> {
    let Some(arr) = v.get(key).and_then(Value::as_array) else {
        return err(format!("`{key}` must be an array"));
    };
    arr.iter()
        .map(|x| x.as_str().ok_or_else(|| FrameJsonError(format!("`{key}` entries must be strings"))))
        .collect()
}

/// Reads a frame. The result is not checked for order axioms or persistence;
/// use [`super::check_semiframe`] for that.
pub fn frame_from_json(sig: &Signature, v: &Value) -> Result<Semiframe, FrameJsonError> {
    let mut set = Theory::new();
    for text in strings(v, "domain")? {
        let phi = parse_formula(text, sig).map_err(|e| FrameJsonError(format!("domain formula `{text}`: {e}")))?;
        set.insert(phi);
    }
    if !is_subformula_closed(&set) {
        return err("domain is not closed under subformulas");
    }
    let domain = Domain::from_closed(set).ok_or_else(|| FrameJsonError("domain is too large".into()))?;

    let labels: Vec<String> = strings(v, "worlds")?.into_iter().map(String::from).collect();
    let n = labels.len();
    let world = |name: &str| {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| FrameJsonError(format!("unknown world `{name}`")))
    };
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return err(format!("duplicate world `{l}`"));
        }
    }

    let mut leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
    let Some(order) = v.get("order").and_then(Value::as_array) else {
        return err("`order` must be an array");
    };
    for pair in order {
        match pair.as_array().map(|p| p.as_slice()) {
            Some([Value::String(a), Value::String(b)]) => {
                let (a, b) = (world(a)?, world(b)?);
                leq[a][b] = true;
            }
            _ => return err("`order` entries must be pairs of world names"),
        }
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if leq[a][k] && leq[k][b] {
                    leq[a][b] = true;
                }
            }
        }
    }

    let mut frame = Semiframe::new(domain, leq);
    frame.labels = labels.clone();
    let mut seen = vec![false; n];
    let Some(rows) = v.get("valuation").and_then(Value::as_array) else {
        return err("`valuation` must be an array");
    };
    for row in rows {
        let Some(name) = row.get("world").and_then(Value::as_str) else {
            return err("valuation entries need a `world` name");
        };
        let a = world(name)?;
        if std::mem::replace(&mut seen[a], true) {
            return err(format!("world `{name}` has two valuation entries"));
        }
        let Some(values) = row.get("values").and_then(Value::as_object) else {
            return err(format!("valuation of `{name}` needs a `values` object"));
        };
        let mut given = vec![false; frame.domain.len()];
        for (text, val) in values {
            let phi = parse_formula(text, sig).map_err(|e| FrameJsonError(format!("formula `{text}`: {e}")))?;
            let Some(i) = frame.domain.index_of(&phi) else {
                return err(format!("`{text}` at `{name}` is not in the domain"));
            };
            let Some(val) = val.as_bool() else {
                return err(format!("value of `{text}` at `{name}` must be a boolean"));
            };
            frame.valuation[a][i] = val;
            given[i] = true;
        }
        if let Some(i) = given.iter().position(|g| !g) {
            return err(format!("no value for `{}` at `{name}`", frame.domain.get(i)));
        }
    }
    if let Some(a) = seen.iter().position(|s| !s) {
        return err(format!("no valuation for world `{}`", labels[a]));
    }
    Ok(frame)
}
