use std::fmt;

use crate::rules::{CanonicalSystem, DomainRules, MappedClause, RuleInstance, RuleRef, Side};
use crate::syntax::{Formula, Substitution};

use super::frame::Semiframe;

/// A rule fulfilled at a world whose conclusion is not locally satisfied there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub world: usize,
    pub world_label: String,
    pub rule: RuleRef,
    pub rule_label: String,
    pub substitution: Substitution,
    /// `σ(⋄(p1,…,pn))`.
    pub formula: Formula,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let want = if self.rule.side == Side::Right { "t" } else { "f" };
        write!(
            f,
            "{} is fulfilled at {} by {} but `{}` is not {want} there",
            self.rule_label, self.world_label, self.substitution, self.formula
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LegalityReport {
    Legal,
    Violation(Violation),
}

impl LegalityReport {
    pub fn is_legal(&self) -> bool {
        matches!(self, LegalityReport::Legal)
    }
}

impl fmt::Display for LegalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LegalityReport::Legal => write!(f, "legal"),
            LegalityReport::Violation(v) => write!(f, "illegal: {v}"),
        }
    }
}

fn local(f: &Semiframe, a: usize, c: &MappedClause) -> bool {
    let row = &f.valuation[a];
    (0..f.domain.len()).any(|i| c.ante & (1 << i) != 0 && !row[i]) || c.succ.is_some_and(|i| row[i])
}

fn absolute(f: &Semiframe, a: usize, c: &MappedClause) -> bool {
    f.above(a).all(|b| local(f, b, c))
}

/// Whether the rule instance is fulfilled at `a`: right premises and left hard
/// premises absolutely, left soft premises locally.
pub(crate) fn fulfilled(f: &Semiframe, a: usize, inst: &RuleInstance) -> bool {
    inst.premises.iter().all(|c| absolute(f, a, c)) && inst.soft.iter().all(|c| local(f, a, c))
}

fn check_instances(
    f: &Semiframe,
    g: &CanonicalSystem,
    rules: &DomainRules,
    only: Option<RuleRef>,
) -> LegalityReport {
    for a in f.worlds() {
        for (i, phi) in f.domain.formulas().iter().enumerate() {
            let value = f.valuation[a][i];
            let sides = [(&rules.right[i], true), (&rules.left[i], false)];
            for (insts, want) in sides {
                for inst in insts {
                    if only.is_some_and(|r| r != inst.rule) {
                        continue;
                    }
                    if value != want && fulfilled(f, a, inst) {
                        return LegalityReport::Violation(Violation {
                            world: a,
                            world_label: f.labels[a].clone(),
                            rule: inst.rule,
                            rule_label: g.rule_label(inst.rule),
                            substitution: inst.substitution(&f.domain),
                            formula: phi.clone(),
                        });
                    }
                }
            }
        }
    }
    LegalityReport::Legal
}

/// Whether `f` respects rule `r` of `g` at every world and substitution.
pub fn respects(f: &Semiframe, g: &CanonicalSystem, r: RuleRef) -> LegalityReport {
    check_instances(f, g, &DomainRules::new(g, &f.domain), Some(r))
}

/// Whether `f` respects every rule of `g`. Formulas whose connective `g` does
/// not know are unconstrained.
pub fn is_legal(f: &Semiframe, g: &CanonicalSystem) -> LegalityReport {
    check_instances(f, g, &DomainRules::new(g, &f.domain), None)
}
