use thiserror::Error;

use crate::rules::{CanonicalSystem, Side};
use crate::syntax::{Formula, Sequent};

use super::{Derivation, Justification};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StrictifyError {
    #[error("goal `{0}` is negative")]
    NegativeGoal(Sequent),
    #[error("negative assumption `{0}` cannot be made definite")]
    NegativeAssumption(Sequent),
    #[error("rule {0} has a negative premise that is not soft")]
    NegativeHardPremise(String),
    #[error("hyper-cut with a negative nucleus `{0}`")]
    NegativeHyperCut(Sequent),
}

/// Rewrites a proof of a definite sequent into one whose every node is definite,
/// by pushing each right weakening `Γ ⇒` / `Γ ⇒ ψ` up through the negative part
/// above it. Cut formulas of the result are a subset of those of `d`.
///
/// Succeeds whenever `g` is definite and every assumption used is definite.
pub fn strictify(g: &CanonicalSystem, d: &Derivation) -> Result<Derivation, StrictifyError> {
    if !d.conclusion.is_definite() {
        return Err(StrictifyError::NegativeGoal(d.conclusion.clone()));
    }
    definite(g, d)
}

fn definite(g: &CanonicalSystem, d: &Derivation) -> Result<Derivation, StrictifyError> {
    let justification = match &d.justification {
        Justification::Axiom | Justification::Assumption => d.justification.clone(),
        Justification::LeftWeakening { child, added } => Justification::LeftWeakening {
            child: Box::new(definite(g, child)?),
            added: added.clone(),
        },
        Justification::RightWeakening { child, added } => {
            if child.conclusion.succedent.is_some() {
                return definite(g, child);
            }
            return push(g, child, added);
        }
        Justification::Cut {
            left,
            right,
            cut_formula,
        } => Justification::Cut {
            left: Box::new(definite(g, left)?),
            right: Box::new(definite(g, right)?),
            cut_formula: cut_formula.clone(),
        },
        Justification::RuleApp {
            rule,
            substitution,
            context,
            succedent_context,
            children,
        } => {
            let label = || g.rule_label(*rule);
            let children = children
                .iter()
                .map(|c| {
                    if c.conclusion.is_definite() {
                        definite(g, c)
                    } else {
                        Err(StrictifyError::NegativeHardPremise(label()))
                    }
                })
                .collect::<Result<_, _>>()?;
            Justification::RuleApp {
                rule: *rule,
                substitution: substitution.clone(),
                context: context.clone(),
                succedent_context: succedent_context.clone(),
                children,
            }
        }
        Justification::HyperCut1 { nucleus, sides, theta } => Justification::HyperCut1 {
            nucleus: nucleus.clone(),
            sides: sides.iter().map(|s| definite(g, s)).collect::<Result<_, _>>()?,
            theta: Box::new(definite(g, theta)?),
        },
        Justification::HyperCut2 { nucleus, .. } => return Err(StrictifyError::NegativeHyperCut(nucleus.clone())),
    };
    Ok(Derivation {
        conclusion: d.conclusion.clone(),
        justification,
    })
}

/// From a proof of `Γ ⇒` builds a strict proof of `Γ ⇒ psi`.
fn push(g: &CanonicalSystem, d: &Derivation, psi: &Formula) -> Result<Derivation, StrictifyError> {
    let conclusion = Sequent {
        antecedent: d.conclusion.antecedent.clone(),
        succedent: Some(psi.clone()),
    };
    let justification = match &d.justification {
        Justification::Assumption => return Err(StrictifyError::NegativeAssumption(d.conclusion.clone())),
        Justification::LeftWeakening { child, added } => Justification::LeftWeakening {
            child: Box::new(push(g, child, psi)?),
            added: added.clone(),
        },
        Justification::Cut {
            left,
            right,
            cut_formula,
        } => Justification::Cut {
            left: Box::new(definite(g, left)?),
            right: Box::new(push(g, right, psi)?),
            cut_formula: cut_formula.clone(),
        },
        Justification::RuleApp {
            rule,
            substitution,
            context,
            children,
            ..
        } if rule.side == Side::Left => {
            let r = g.left_rule(*rule).expect("checked derivation");
            let hard = r.hard.len();
            let children = children
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if i < hard {
                        if c.conclusion.is_definite() {
                            definite(g, c)
                        } else {
                            Err(StrictifyError::NegativeHardPremise(g.rule_label(*rule)))
                        }
                    } else {
                        push(g, c, psi)
                    }
                })
                .collect::<Result<_, _>>()?;
            Justification::RuleApp {
                rule: *rule,
                substitution: substitution.clone(),
                context: context.clone(),
                succedent_context: Some(psi.clone()),
                children,
            }
        }
        Justification::HyperCut1 { nucleus, sides, theta } => Justification::HyperCut1 {
            nucleus: nucleus.clone(),
            sides: sides.iter().map(|s| definite(g, s)).collect::<Result<_, _>>()?,
            theta: Box::new(push(g, theta, psi)?),
        },
        Justification::HyperCut2 { nucleus, .. } => return Err(StrictifyError::NegativeHyperCut(nucleus.clone())),
        // Right rules, axioms and right weakenings conclude definite sequents,
        // so they never sit below a negative node.
        Justification::Axiom | Justification::RightWeakening { .. } | Justification::RuleApp { .. } => {
            unreachable!("negative node justified by {}", d.rule_name())
        }
    };
    Ok(Derivation {
        conclusion,
        justification,
    })
}
