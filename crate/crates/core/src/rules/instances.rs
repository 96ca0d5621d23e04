use crate::syntax::{Domain, Formula, Substitution};

use super::rule::{Clause, RuleRef};
use super::system::CanonicalSystem;

/// A rule premise with its atoms replaced by domain indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MappedClause {
    pub ante: u64,
    pub succ: Option<usize>,
}

/// A rule whose main formula has been matched against domain formula `formula`
/// (the substitution is `p_i ↦ i-th argument`).
#[derive(Clone, Debug)]
pub struct RuleInstance {
    pub rule: RuleRef,
    pub formula: usize,
    /// Right-rule premises, or left-rule hard premises.
    pub premises: Vec<MappedClause>,
    /// Left-rule soft premises; always empty for right rules.
    pub soft: Vec<MappedClause>,
}

impl RuleInstance {
    pub fn substitution(&self, domain: &Domain) -> Substitution {
        Substitution::positional(domain.get(self.formula).args())
    }
}

/// For every domain formula, the rule instances whose conclusion it is.
#[derive(Clone, Debug)]
pub struct DomainRules {
    pub right: Vec<Vec<RuleInstance>>,
    pub left: Vec<Vec<RuleInstance>>,
}

fn map_clause(c: &Clause, args: &[usize]) -> MappedClause {
    MappedClause {
        ante: c.antecedent.iter().fold(0, |m, &a| m | (1 << args[a as usize - 1])),
        succ: c.succedent.map(|a| args[a as usize - 1]),
    }
}

impl DomainRules {
    /// `g` must be valid.
    pub fn new(g: &CanonicalSystem, domain: &Domain) -> Self {
        let n = domain.len();
        let mut right = vec![Vec::new(); n];
        let mut left = vec![Vec::new(); n];
        for (i, f) in domain.formulas().iter().enumerate() {
            let Formula::Compound(name, fargs) = f else { continue };
            let args = domain.arg_indices(i);
            for (r, rule) in g.right_rules_for(name) {
                if rule.arity != fargs.len() {
                    continue;
                }
                right[i].push(RuleInstance {
                    rule: r,
                    formula: i,
                    premises: rule.premises.iter().map(|c| map_clause(c, &args)).collect(),
                    soft: Vec::new(),
                });
            }
            for (r, rule) in g.left_rules_for(name) {
                if rule.arity != fargs.len() {
                    continue;
                }
                left[i].push(RuleInstance {
                    rule: r,
                    formula: i,
                    premises: rule.hard.iter().map(|c| map_clause(c, &args)).collect(),
                    soft: rule.soft.iter().map(|c| map_clause(c, &args)).collect(),
                });
            }
        }
        DomainRules { right, left }
    }
}
