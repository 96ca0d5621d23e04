use std::fmt;

use crate::syntax::{Signature, SignatureError};

use super::rule::{Clause, LeftRule, RightRule, RuleRef, Side};

/// A canonical system: a signature and its logical rules. Axioms `φ ⇒ φ`,
/// weakening and cut are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSystem {
    pub name: String,
    pub signature: Signature,
    pub right_rules: Vec<RightRule>,
    pub left_rules: Vec<LeftRule>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    UnknownConnective,
    ArityMismatch { declared: usize, rule: usize },
    PremiseAtomOutOfArity { premise: usize, atom: u32 },
    SoftPremiseMustBeNegative { premise: usize },
}

/// One violated rule invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: RuleRef,
    pub label: String,
    pub kind: DiagnosticKind,
}

impl Diagnostic {
    pub fn reason(&self) -> &'static str {
        match self.kind {
            DiagnosticKind::UnknownConnective => "unknown connective",
            DiagnosticKind::ArityMismatch { .. } => "arity mismatch",
            DiagnosticKind::PremiseAtomOutOfArity { .. } => "premise atom out of arity",
            DiagnosticKind::SoftPremiseMustBeNegative { .. } => "soft premise must be negative",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.reason())?;
        match &self.kind {
            DiagnosticKind::UnknownConnective => Ok(()),
            DiagnosticKind::ArityMismatch { declared, rule } => {
                write!(f, " (declared {declared}, rule uses {rule})")
            }
            DiagnosticKind::PremiseAtomOutOfArity { premise, atom } => {
                write!(f, " (premise {}, atom p{atom})", premise + 1)
            }
            DiagnosticKind::SoftPremiseMustBeNegative { premise } => {
                write!(f, " (soft premise {})", premise + 1)
            }
        }
    }
}

impl CanonicalSystem {
    pub fn new(name: &str, signature: Signature) -> Self {
        CanonicalSystem {
            name: name.to_string(),
            signature,
            right_rules: Vec::new(),
            left_rules: Vec::new(),
        }
    }

    pub fn right_rule(&self, r: RuleRef) -> Option<&RightRule> {
        (r.side == Side::Right).then(|| self.right_rules.get(r.index)).flatten()
    }

    pub fn left_rule(&self, r: RuleRef) -> Option<&LeftRule> {
        (r.side == Side::Left).then(|| self.left_rules.get(r.index)).flatten()
    }

    pub fn connective_of(&self, r: RuleRef) -> Option<&str> {
        match r.side {
            Side::Right => self.right_rule(r).map(|x| x.connective.as_str()),
            Side::Left => self.left_rule(r).map(|x| x.connective.as_str()),
        }
    }

    pub fn right_rules_for<'a>(&'a self, c: &'a str) -> impl Iterator<Item = (RuleRef, &'a RightRule)> + 'a {
        self.right_rules
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.connective == c)
            .map(|(i, r)| (RuleRef::right(i), r))
    }

    pub fn left_rules_for<'a>(&'a self, c: &'a str) -> impl Iterator<Item = (RuleRef, &'a LeftRule)> + 'a {
        self.left_rules
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.connective == c)
            .map(|(i, r)| (RuleRef::left(i), r))
    }

    pub fn all_rules(&self) -> impl Iterator<Item = RuleRef> + '_ {
        (0..self.left_rules.len())
            .map(RuleRef::left)
            .chain((0..self.right_rules.len()).map(RuleRef::right))
    }

    /// Printable rule name such as `(imp=>)` or `(=>nand)_2`. The numeric
    /// suffix appears only when a connective has several rules on that side.
    pub fn rule_label(&self, r: RuleRef) -> String {
        let Some(c) = self.connective_of(r) else {
            return format!("<missing rule {:?}>", r);
        };
        let (siblings, position) = match r.side {
            Side::Right => {
                let s: Vec<_> = self.right_rules_for(c).map(|(x, _)| x).collect();
                let p = s.iter().position(|x| *x == r).unwrap();
                (s.len(), p)
            }
            Side::Left => {
                let s: Vec<_> = self.left_rules_for(c).map(|(x, _)| x).collect();
                let p = s.iter().position(|x| *x == r).unwrap();
                (s.len(), p)
            }
        };
        let base = match r.side {
            Side::Right => format!("(=>{c})"),
            Side::Left => format!("({c}=>)"),
        };
        if siblings > 1 {
            format!("{base}_{}", position + 1)
        } else {
            base
        }
    }

    pub fn rule_by_label(&self, label: &str) -> Option<RuleRef> {
        self.all_rules().find(|r| self.rule_label(*r) == label)
    }

    /// Union of two systems; rule lists are concatenated without duplicates.
    pub fn union(&self, other: &CanonicalSystem, name: &str) -> Result<CanonicalSystem, SignatureError> {
        let mut signature = self.signature.clone();
        signature.merge(&other.signature)?;
        let mut out = CanonicalSystem {
            name: name.to_string(),
            signature,
            right_rules: self.right_rules.clone(),
            left_rules: self.left_rules.clone(),
        };
        for r in &other.right_rules {
            if !out.right_rules.contains(r) {
                out.right_rules.push(r.clone());
            }
        }
        for r in &other.left_rules {
            if !out.left_rules.contains(r) {
                out.left_rules.push(r.clone());
            }
        }
        Ok(out)
    }

    /// Restricts the system to the given connectives.
    pub fn restrict(&self, connectives: &[&str], name: &str) -> CanonicalSystem {
        let mut signature = Signature::new();
        for c in self.signature.iter().filter(|c| connectives.contains(&c.name.as_str())) {
            signature.add(&c.name, c.arity).expect("names come from a valid signature");
        }
        CanonicalSystem {
            name: name.to_string(),
            signature,
            right_rules: self
                .right_rules
                .iter()
                .filter(|r| connectives.contains(&r.connective.as_str()))
                .cloned()
                .collect(),
            left_rules: self
                .left_rules
                .iter()
                .filter(|r| connectives.contains(&r.connective.as_str()))
                .cloned()
                .collect(),
        }
    }
}

fn check_clauses(
    out: &mut Vec<Diagnostic>,
    sys: &CanonicalSystem,
    r: RuleRef,
    arity: usize,
    clauses: &[Clause],
    offset: usize,
) {
    for (i, c) in clauses.iter().enumerate() {
        for atom in c.atoms() {
            if atom == 0 || atom as usize > arity {
                out.push(Diagnostic {
                    rule: r,
                    label: sys.rule_label(r),
                    kind: DiagnosticKind::PremiseAtomOutOfArity {
                        premise: offset + i,
                        atom,
                    },
                });
            }
        }
    }
}

fn check_connective(out: &mut Vec<Diagnostic>, sys: &CanonicalSystem, r: RuleRef, c: &str, arity: usize) {
    match sys.signature.arity(c) {
        None => out.push(Diagnostic {
            rule: r,
            label: sys.rule_label(r),
            kind: DiagnosticKind::UnknownConnective,
        }),
        Some(declared) if declared != arity => out.push(Diagnostic {
            rule: r,
            label: sys.rule_label(r),
            kind: DiagnosticKind::ArityMismatch {
                declared,
                rule: arity,
            },
        }),
        Some(_) => {}
    }
}

/// One diagnostic per violated rule invariant; empty when the system is valid.
pub fn validate_system(g: &CanonicalSystem) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (i, r) in g.right_rules.iter().enumerate() {
        let rr = RuleRef::right(i);
        check_connective(&mut out, g, rr, &r.connective, r.arity);
        check_clauses(&mut out, g, rr, r.arity, &r.premises, 0);
    }
    for (i, r) in g.left_rules.iter().enumerate() {
        let rr = RuleRef::left(i);
        check_connective(&mut out, g, rr, &r.connective, r.arity);
        check_clauses(&mut out, g, rr, r.arity, &r.hard, 0);
        check_clauses(&mut out, g, rr, r.arity, &r.soft, r.hard.len());
        for (j, c) in r.soft.iter().enumerate() {
            if c.is_definite() {
                out.push(Diagnostic {
                    rule: rr,
                    label: g.rule_label(rr),
                    kind: DiagnosticKind::SoftPremiseMustBeNegative { premise: j },
                });
            }
        }
    }
    out
}

/// Right-rule premises and left-rule hard premises are all definite.
pub fn is_definite_system(g: &CanonicalSystem) -> bool {
    g.right_rules.iter().all(|r| r.premises.iter().all(Clause::is_definite))
        && g.left_rules.iter().all(|r| r.hard.iter().all(Clause::is_definite))
}
