//! Proof objects, the proof checker, the S-proof and strictness predicates,
//! the strictifying rewriter and the JSON encoding of proofs.

mod check;
mod json;
mod strict;

use std::collections::BTreeSet;
use std::fmt;

use crate::rules::RuleRef;
use crate::syntax::{Formula, Sequent, Substitution, Succedent, Theory};

pub use check::{check_derivation, check_hyper_cut, CheckError, NodePath};
pub use json::{derivation_from_json, derivation_to_json, ProofJsonError};
pub use strict::{strictify, StrictifyError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom,
    Assumption,
    LeftWeakening {
        child: Box<Derivation>,
        added: Theory,
    },
    /// From `Γ ⇒` to `Γ ⇒ added`.
    RightWeakening {
        child: Box<Derivation>,
        added: Formula,
    },
    /// `left` concludes `Γ ⇒ φ`, `right` concludes `Δ, φ ⇒ E`.
    Cut {
        left: Box<Derivation>,
        right: Box<Derivation>,
        cut_formula: Formula,
    },
    RuleApp {
        rule: RuleRef,
        substitution: Substitution,
        context: Theory,
        succedent_context: Succedent,
        children: Vec<Derivation>,
    },
    /// Nucleus `ψ1..ψn ⇒ θ`; `sides[i]` concludes `Γi ⇒ ψi` (ψ in antecedent
    /// order) and `theta` concludes `Δ, θ ⇒ F`.
    HyperCut1 {
        nucleus: Sequent,
        sides: Vec<Derivation>,
        theta: Box<Derivation>,
    },
    /// Nucleus `ψ1..ψn ⇒`; `sides[i]` concludes `Γi ⇒ ψi`.
    HyperCut2 {
        nucleus: Sequent,
        sides: Vec<Derivation>,
    },
}

impl Derivation {
    pub fn axiom(f: Formula) -> Self {
        Derivation {
            conclusion: Sequent::axiom(f),
            justification: Justification::Axiom,
        }
    }

    pub fn assumption(s: Sequent) -> Self {
        Derivation {
            conclusion: s,
            justification: Justification::Assumption,
        }
    }

    /// Adds `added` to the antecedent; returns `self` unchanged when nothing is new.
    pub fn weaken_left(self, added: Theory) -> Self {
        let added: Theory = added.difference(&self.conclusion.antecedent).cloned().collect();
        if added.is_empty() {
            return self;
        }
        let conclusion = Sequent {
            antecedent: self.conclusion.antecedent.union(&added).cloned().collect(),
            succedent: self.conclusion.succedent.clone(),
        };
        Derivation {
            conclusion,
            justification: Justification::LeftWeakening {
                child: Box::new(self),
                added,
            },
        }
    }

    /// `self` must be negative.
    pub fn weaken_right(self, added: Formula) -> Self {
        debug_assert!(self.conclusion.succedent.is_none());
        let conclusion = Sequent {
            antecedent: self.conclusion.antecedent.clone(),
            succedent: Some(added.clone()),
        };
        Derivation {
            conclusion,
            justification: Justification::RightWeakening {
                child: Box::new(self),
                added,
            },
        }
    }

    /// Weakens `self` to exactly `target`, which must be reachable by weakenings.
    pub fn weaken_to(self, target: &Sequent) -> Self {
        let d = match (&self.conclusion.succedent, &target.succedent) {
            (None, Some(f)) => self.weaken_right(f.clone()),
            _ => self,
        };
        d.weaken_left(target.antecedent.clone())
    }

    /// Cut of `left: Γ ⇒ φ` against `right: Δ ⇒ E` with `φ ∈ Δ`.
    pub fn cut(left: Derivation, right: Derivation) -> Self {
        let phi = left.conclusion.succedent.clone().expect("left cut premise is definite");
        let mut antecedent = left.conclusion.antecedent.clone();
        antecedent.extend(right.conclusion.antecedent.iter().filter(|f| **f != phi).cloned());
        Derivation {
            conclusion: Sequent {
                antecedent,
                succedent: right.conclusion.succedent.clone(),
            },
            justification: Justification::Cut {
                left: Box::new(left),
                right: Box::new(right),
                cut_formula: phi,
            },
        }
    }

    pub fn children(&self) -> Vec<&Derivation> {
        match &self.justification {
            Justification::Axiom | Justification::Assumption => vec![],
            Justification::LeftWeakening { child, .. } | Justification::RightWeakening { child, .. } => {
                vec![child]
            }
            Justification::Cut { left, right, .. } => vec![left, right],
            Justification::RuleApp { children, .. } => children.iter().collect(),
            Justification::HyperCut1 { sides, theta, .. } => {
                sides.iter().chain(std::iter::once(theta.as_ref())).collect()
            }
            Justification::HyperCut2 { sides, .. } => sides.iter().collect(),
        }
    }

    /// All nodes, pre-order.
    pub fn nodes(&self) -> Vec<&Derivation> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            out.push(d);
            let mut ch = d.children();
            ch.reverse();
            stack.extend(ch);
        }
        out
    }

    pub fn size(&self) -> usize {
        self.nodes().len()
    }

    pub fn height(&self) -> usize {
        1 + self.children().iter().map(|c| c.height()).max().unwrap_or(0)
    }

    pub fn cut_count(&self) -> usize {
        self.nodes()
            .iter()
            .filter(|d| matches!(d.justification, Justification::Cut { .. }))
            .count()
    }

    pub fn cut_formulas(&self) -> BTreeSet<Formula> {
        self.nodes()
            .iter()
            .filter_map(|d| match &d.justification {
                Justification::Cut { cut_formula, .. } => Some(cut_formula.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn rule_name(&self) -> &'static str {
        self.justification.name()
    }
}

impl Justification {
    /// Name used in diagnostics and in the JSON encoding.
    pub fn name(&self) -> &'static str {
        match self {
            Justification::Axiom => "axiom",
            Justification::Assumption => "assumption",
            Justification::LeftWeakening { .. } => "weaken-left",
            Justification::RightWeakening { .. } => "weaken-right",
            Justification::Cut { .. } => "cut",
            Justification::RuleApp { .. } => "apply",
            Justification::HyperCut1 { .. } => "hyper-cut-1",
            Justification::HyperCut2 { .. } => "hyper-cut-2",
        }
    }
}

/// Every formula occurring in an antecedent or succedent of a sequent of `s`.
pub fn occurring_formulas<'a>(s: impl IntoIterator<Item = &'a Sequent>) -> Theory {
    s.into_iter().flat_map(|q| q.formulas().cloned()).collect()
}

/// True iff every cut formula of `d` occurs in some sequent of `s`
/// (as a member of an antecedent or succedent, not as a proper subformula).
pub fn is_s_proof<'a>(d: &Derivation, s: impl IntoIterator<Item = &'a Sequent>) -> bool {
    let occ = occurring_formulas(s);
    d.cut_formulas().is_subset(&occ)
}

/// True iff every node of `d` concludes a definite sequent.
pub fn is_strict_proof(d: &Derivation) -> bool {
    d.nodes().iter().all(|n| n.conclusion.is_definite())
}

impl fmt::Display for Derivation {
    /// Indented tree, conclusion first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(d: &Derivation, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let extra = match &d.justification {
                Justification::Cut { cut_formula, .. } => format!(" on {cut_formula}"),
                Justification::RightWeakening { added, .. } => format!(" {added}"),
                _ => String::new(),
            };
            writeln!(f, "{:indent$}{}   [{}{}]", "", d.conclusion, d.rule_name(), extra, indent = depth * 2)?;
            for c in d.children() {
                go(c, depth + 1, f)?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}
