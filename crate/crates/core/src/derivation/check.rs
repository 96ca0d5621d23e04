use std::fmt;

use thiserror::Error;

use crate::rules::{instantiate_left, instantiate_right, CanonicalSystem, Side};
use crate::syntax::{Sequent, Theory};

use super::{Derivation, Justification};

/// Child indices from the root down to a node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root")?;
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at {path} ({rule}): {message}{}", expected.as_ref().map(|e| format!("; expected `{e}`")).unwrap_or_default())]
pub struct CheckError {
    pub path: NodePath,
    /// The rule form that was violated: a justification name or a rule label.
    pub rule: String,
    pub message: String,
    /// The sequent the node should have concluded, when it can be computed.
    pub expected: Option<Sequent>,
}

fn fail(path: &[usize], rule: impl Into<String>, message: impl Into<String>, expected: Option<Sequent>) -> CheckError {
    CheckError {
        path: NodePath(path.to_vec()),
        rule: rule.into(),
        message: message.into(),
        expected,
    }
}

/// Checks every node of `d` against `g` and the assumption set.
pub fn check_derivation(g: &CanonicalSystem, assumptions: &[Sequent], d: &Derivation) -> Result<(), CheckError> {
    let mut path = Vec::new();
    check_node(g, assumptions, d, &mut path)
}

fn check_node(
    g: &CanonicalSystem,
    assumptions: &[Sequent],
    d: &Derivation,
    path: &mut Vec<usize>,
) -> Result<(), CheckError> {
    d.conclusion
        .check_signature(&g.signature)
        .map_err(|m| fail(path, d.rule_name(), m, None))?;
    check_local(g, assumptions, d, path)?;
    for (i, c) in d.children().into_iter().enumerate() {
        path.push(i);
        check_node(g, assumptions, c, path)?;
        path.pop();
    }
    Ok(())
}

fn expect_eq(path: &[usize], rule: &str, got: &Sequent, want: Sequent) -> Result<(), CheckError> {
    if *got == want {
        Ok(())
    } else {
        Err(fail(path, rule, format!("conclusion `{got}` does not follow"), Some(want)))
    }
}

/// `lo ⊆ got ⊆ hi`, the slack coming from a cut formula that also occurs in a context.
fn antecedent_between(got: &Theory, lo: &Theory, hi: &Theory) -> bool {
    lo.is_subset(got) && got.is_subset(hi)
}

fn check_local(
    g: &CanonicalSystem,
    assumptions: &[Sequent],
    d: &Derivation,
    path: &[usize],
) -> Result<(), CheckError> {
    let c = &d.conclusion;
    let name = d.rule_name();
    match &d.justification {
        Justification::Axiom => match (&c.succedent, c.antecedent.len()) {
            (Some(f), 1) if c.antecedent.contains(f) => Ok(()),
            _ => Err(fail(path, name, format!("`{c}` is not of the form φ => φ"), None)),
        },
        Justification::Assumption => {
            if assumptions.contains(c) {
                Ok(())
            } else {
                Err(fail(path, name, format!("`{c}` is not an assumption"), None))
            }
        }
        Justification::LeftWeakening { child, added } => {
            let want = Sequent {
                antecedent: child.conclusion.antecedent.union(added).cloned().collect(),
                succedent: child.conclusion.succedent.clone(),
            };
            expect_eq(path, name, c, want)
        }
        Justification::RightWeakening { child, added } => {
            match &child.conclusion.succedent {
                None => {}
                Some(f) if f == added => {}
                Some(f) => {
                    return Err(fail(
                        path,
                        name,
                        format!("premise already has succedent `{f}`; only negative sequents weaken on the right"),
                        None,
                    ))
                }
            }
            let want = Sequent {
                antecedent: child.conclusion.antecedent.clone(),
                succedent: Some(added.clone()),
            };
            expect_eq(path, name, c, want)
        }
        Justification::Cut {
            left,
            right,
            cut_formula,
        } => {
            if left.conclusion.succedent.as_ref() != Some(cut_formula) {
                return Err(fail(
                    path,
                    name,
                    format!("left premise `{}` does not conclude the cut formula `{cut_formula}`", left.conclusion),
                    None,
                ));
            }
            if !right.conclusion.antecedent.contains(cut_formula) {
                return Err(fail(
                    path,
                    name,
                    format!("right premise `{}` does not contain the cut formula `{cut_formula}`", right.conclusion),
                    None,
                ));
            }
            let hi: Theory = left.conclusion.antecedent.union(&right.conclusion.antecedent).cloned().collect();
            let mut lo = hi.clone();
            if !left.conclusion.antecedent.contains(cut_formula) {
                lo.remove(cut_formula);
            }
            let want = Sequent {
                antecedent: lo.clone(),
                succedent: right.conclusion.succedent.clone(),
            };
            if c.succedent != right.conclusion.succedent || !antecedent_between(&c.antecedent, &lo, &hi) {
                return Err(fail(path, name, format!("conclusion `{c}` does not follow"), Some(want)));
            }
            Ok(())
        }
        Justification::RuleApp {
            rule,
            substitution,
            context,
            succedent_context,
            children,
        } => {
            let label = g.rule_label(*rule);
            let (premises, conclusion) = match rule.side {
                Side::Right => {
                    let r = g
                        .right_rule(*rule)
                        .ok_or_else(|| fail(path, name, format!("no rule {label} in `{}`", g.name), None))?;
                    if succedent_context.is_some() {
                        return Err(fail(path, &label, "right rules take no succedent context", None));
                    }
                    instantiate_right(r, substitution, context)
                }
                Side::Left => {
                    let r = g
                        .left_rule(*rule)
                        .ok_or_else(|| fail(path, name, format!("no rule {label} in `{}`", g.name), None))?;
                    instantiate_left(r, substitution, context, succedent_context)
                }
            };
            if children.len() != premises.len() {
                return Err(fail(
                    path,
                    &label,
                    format!("{} premises given, rule has {}", children.len(), premises.len()),
                    None,
                ));
            }
            for (i, (ch, p)) in children.iter().zip(&premises).enumerate() {
                if ch.conclusion != *p {
                    return Err(fail(
                        path,
                        &label,
                        format!("premise {} is `{}`", i + 1, ch.conclusion),
                        Some(p.clone()),
                    ));
                }
            }
            expect_eq(path, &label, c, conclusion)
        }
        Justification::HyperCut1 { .. } | Justification::HyperCut2 { .. } => {
            check_hyper_cut(d, assumptions).map_err(|mut e| {
                e.path = NodePath(path.to_vec());
                e
            })
        }
    }
}

/// Checks a single hyper-cut node (not its subtrees).
pub fn check_hyper_cut(d: &Derivation, assumptions: &[Sequent]) -> Result<(), CheckError> {
    let name = d.rule_name();
    let (nucleus, sides, theta) = match &d.justification {
        Justification::HyperCut1 { nucleus, sides, theta } => (nucleus, sides, Some(theta)),
        Justification::HyperCut2 { nucleus, sides } => (nucleus, sides, None),
        _ => return Err(fail(&[], name, "not a hyper-cut node", None)),
    };
    if !assumptions.contains(nucleus) {
        return Err(fail(&[], name, format!("nucleus `{nucleus}` is not an assumption"), None));
    }
    if nucleus.succedent.is_some() != theta.is_some() {
        let msg = if theta.is_some() {
            "hyper-cut-1 needs a definite nucleus"
        } else {
            "hyper-cut-2 needs a negative nucleus"
        };
        return Err(fail(&[], name, msg, None));
    }
    if sides.len() != nucleus.antecedent.len() {
        return Err(fail(
            &[],
            name,
            format!("{} side premises for a nucleus with {} antecedent formulas", sides.len(), nucleus.antecedent.len()),
            None,
        ));
    }
    let mut lo = Theory::new();
    for (i, (side, psi)) in sides.iter().zip(&nucleus.antecedent).enumerate() {
        if side.conclusion.succedent.as_ref() != Some(psi) {
            return Err(fail(
                &[],
                name,
                format!("side premise {} `{}` does not conclude `{psi}`", i + 1, side.conclusion),
                None,
            ));
        }
        lo.extend(side.conclusion.antecedent.iter().cloned());
    }
    let c = &d.conclusion;
    match theta {
        None => {
            let want = Sequent {
                antecedent: lo,
                succedent: None,
            };
            expect_eq(&[], name, c, want)
        }
        Some(t) => {
            let th = nucleus.succedent.as_ref().unwrap();
            if !t.conclusion.antecedent.contains(th) {
                return Err(fail(
                    &[],
                    name,
                    format!("last premise `{}` does not contain `{th}`", t.conclusion),
                    None,
                ));
            }
            let mut hi = lo.clone();
            hi.extend(t.conclusion.antecedent.iter().cloned());
            lo.extend(t.conclusion.antecedent.iter().filter(|f| *f != th).cloned());
            let want = Sequent {
                antecedent: lo.clone(),
                succedent: t.conclusion.succedent.clone(),
            };
            if c.succedent != t.conclusion.succedent || !antecedent_between(&c.antecedent, &lo, &hi) {
                return Err(fail(&[], name, format!("conclusion `{c}` does not follow"), Some(want)));
            }
            Ok(())
        }
    }
}
