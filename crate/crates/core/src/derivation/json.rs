//! Nested JSON encoding of derivations. Sequents and formulas are written in
//! the text syntax, so golden files stay readable.
//!
//! ```json
//! {"conclusion": "=> imp(p1, p1)", "rule": "apply", "rule_ref": "(=>imp)",
//!  "substitution": {}, "context": [], "succedent_context": null,
//!  "premises": [{"conclusion": "p1 => p1", "rule": "axiom", "premises": []}]}
//! ```

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::rules::CanonicalSystem;
use crate::syntax::{parse_formula, parse_sequent, Formula, Sequent, Substitution, Theory};

use super::{Derivation, Justification};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct ProofJsonError {
    /// JSON-pointer-like location of the offending node.
    pub path: String,
    pub message: String,
}

fn theory_json(t: &Theory) -> Value {
    Value::Array(t.iter().map(|f| Value::String(f.to_string())).collect())
}

pub fn derivation_to_json(g: &CanonicalSystem, d: &Derivation) -> Value {
    let mut m = Map::new();
    m.insert("conclusion".into(), json!(d.conclusion.to_string()));
    m.insert("rule".into(), json!(d.rule_name()));
    match &d.justification {
        Justification::Axiom | Justification::Assumption => {}
        Justification::LeftWeakening { added, .. } => {
            m.insert("added".into(), theory_json(added));
        }
        Justification::RightWeakening { added, .. } => {
            m.insert("added".into(), json!(added.to_string()));
        }
        Justification::Cut { cut_formula, .. } => {
            m.insert("cut_formula".into(), json!(cut_formula.to_string()));
        }
        Justification::RuleApp {
            rule,
            substitution,
            context,
            succedent_context,
            ..
        } => {
            m.insert("rule_ref".into(), json!(g.rule_label(*rule)));
            let sub: Map<String, Value> = substitution
                .iter()
                .map(|(a, f)| (a.to_string(), json!(f.to_string())))
                .collect();
            m.insert("substitution".into(), Value::Object(sub));
            m.insert("context".into(), theory_json(context));
            m.insert(
                "succedent_context".into(),
                succedent_context.as_ref().map_or(Value::Null, |f| json!(f.to_string())),
            );
        }
        Justification::HyperCut1 { nucleus, .. } | Justification::HyperCut2 { nucleus, .. } => {
            m.insert("nucleus".into(), json!(nucleus.to_string()));
        }
    }
    m.insert(
        "premises".into(),
        Value::Array(d.children().into_iter().map(|c| derivation_to_json(g, c)).collect()),
    );
    Value::Object(m)
}

struct Reader<'a> {
    g: &'a CanonicalSystem,
}

impl Reader<'_> {
    fn err(path: &str, message: impl Into<String>) -> ProofJsonError {
        ProofJsonError {
            path: if path.is_empty() { "/".into() } else { path.into() },
            message: message.into(),
        }
    }

    fn str_field<'v>(&self, v: &'v Value, key: &str, path: &str) -> Result<&'v str, ProofJsonError> {
        v.get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| Self::err(path, format!("missing string field `{key}`")))
    }

    fn formula(&self, text: &str, path: &str) -> Result<Formula, ProofJsonError> {
        parse_formula(text, &self.g.signature).map_err(|e| Self::err(path, format!("`{text}`: {e}")))
    }

    fn sequent(&self, text: &str, path: &str) -> Result<Sequent, ProofJsonError> {
        parse_sequent(text, &self.g.signature).map_err(|e| Self::err(path, format!("`{text}`: {e}")))
    }

    fn theory(&self, v: &Value, key: &str, path: &str) -> Result<Theory, ProofJsonError> {
        let arr = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Self::err(path, format!("missing array field `{key}`")))?;
        arr.iter()
            .map(|x| {
                let s = x
                    .as_str()
                    .ok_or_else(|| Self::err(path, format!("`{key}` must hold formula strings")))?;
                self.formula(s, path)
            })
            .collect()
    }

    fn node(&self, v: &Value, path: &str) -> Result<Derivation, ProofJsonError> {
        let conclusion = self.sequent(self.str_field(v, "conclusion", path)?, path)?;
        let rule = self.str_field(v, "rule", path)?;
        let premises = match v.get("premises") {
            None | Some(Value::Null) => Vec::new(),
            Some(Value::Array(a)) => a
                .iter()
                .enumerate()
                .map(|(i, c)| self.node(c, &format!("{path}/premises/{i}")))
                .collect::<Result<Vec<_>, _>>()?,
            Some(_) => return Err(Self::err(path, "`premises` must be an array")),
        };
        let count = premises.len();
        let arity = |n: usize| -> Result<(), ProofJsonError> {
            if count == n {
                Ok(())
            } else {
                Err(Self::err(path, format!("`{rule}` takes {n} premises, found {count}")))
            }
        };
        let mut premises = premises.into_iter();
        let justification = match rule {
            "axiom" => {
                arity(0)?;
                Justification::Axiom
            }
            "assumption" => {
                arity(0)?;
                Justification::Assumption
            }
            "weaken-left" => {
                arity(1)?;
                Justification::LeftWeakening {
                    added: self.theory(v, "added", path)?,
                    child: Box::new(premises.next().unwrap()),
                }
            }
            "weaken-right" => {
                arity(1)?;
                Justification::RightWeakening {
                    added: self.formula(self.str_field(v, "added", path)?, path)?,
                    child: Box::new(premises.next().unwrap()),
                }
            }
            "cut" => {
                arity(2)?;
                Justification::Cut {
                    cut_formula: self.formula(self.str_field(v, "cut_formula", path)?, path)?,
                    left: Box::new(premises.next().unwrap()),
                    right: Box::new(premises.next().unwrap()),
                }
            }
            "apply" => {
                let label = self.str_field(v, "rule_ref", path)?;
                let rule = self
                    .g
                    .rule_by_label(label)
                    .ok_or_else(|| Self::err(path, format!("no rule `{label}` in system `{}`", self.g.name)))?;
                let mut substitution = Substitution::identity();
                if let Some(obj) = v.get("substitution") {
                    let obj = obj
                        .as_object()
                        .ok_or_else(|| Self::err(path, "`substitution` must be an object"))?;
                    for (k, f) in obj {
                        let atom = match self.formula(k, path)? {
                            Formula::Atomic(a) => a,
                            _ => return Err(Self::err(path, format!("substitution key `{k}` is not an atom"))),
                        };
                        let f = f
                            .as_str()
                            .ok_or_else(|| Self::err(path, "substitution values must be formula strings"))?;
                        substitution.insert(atom, self.formula(f, path)?);
                    }
                }
                let succedent_context = match v.get("succedent_context") {
                    None | Some(Value::Null) => None,
                    Some(Value::String(s)) => Some(self.formula(s, path)?),
                    Some(_) => return Err(Self::err(path, "`succedent_context` must be a string or null")),
                };
                Justification::RuleApp {
                    rule,
                    substitution,
                    context: self.theory(v, "context", path)?,
                    succedent_context,
                    children: premises.collect(),
                }
            }
            "hyper-cut-1" => {
                let nucleus = self.sequent(self.str_field(v, "nucleus", path)?, path)?;
                let mut all: Vec<Derivation> = premises.collect();
                let theta = all
                    .pop()
                    .ok_or_else(|| Self::err(path, "`hyper-cut-1` needs at least one premise"))?;
                Justification::HyperCut1 {
                    nucleus,
                    sides: all,
                    theta: Box::new(theta),
                }
            }
            "hyper-cut-2" => Justification::HyperCut2 {
                nucleus: self.sequent(self.str_field(v, "nucleus", path)?, path)?,
                sides: premises.collect(),
            },
            other => return Err(Self::err(path, format!("unknown rule `{other}`"))),
        };
        Ok(Derivation {
            conclusion,
            justification,
        })
    }
}

/// Reads a derivation written by [`derivation_to_json`] (or by hand).
pub fn derivation_from_json(g: &CanonicalSystem, v: &Value) -> Result<Derivation, ProofJsonError> {
    Reader { g }.node(v, "")
}
