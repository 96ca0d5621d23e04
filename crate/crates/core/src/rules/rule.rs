use std::collections::BTreeSet;
use std::fmt;


use crate::syntax::{Formula, Sequent, Substitution, Theory};

/// A clause over the schematic atoms `p1..pn`: a sequent of atoms only.
/// Atoms are stored by index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub antecedent: BTreeSet<u32>,
    pub succedent: Option<u32>,
}

impl Clause {
    pub fn new(antecedent: impl IntoIterator<Item = u32>, succedent: Option<u32>) -> Self {
        Clause {
            antecedent: antecedent.into_iter().collect(),
            succedent,
        }
    }

    pub fn is_definite(&self) -> bool {
        self.succedent.is_some()
    }

    pub fn atoms(&self) -> impl Iterator<Item = u32> + '_ {
        self.antecedent.iter().copied().chain(self.succedent)
    }

    pub fn to_sequent(&self) -> Sequent {
        Sequent::new(
            self.antecedent.iter().map(|&i| Formula::atom(i)),
            self.succedent.map(Formula::atom),
        )
    }

    /// `σ(Π) ⇒ σ(E)`.
    pub fn instantiate(&self, s: &Substitution) -> (Theory, Option<Formula>) {
        let seq = s.apply_sequent(&self.to_sequent());
        (seq.antecedent, seq.succedent)
    }

    /// Classical truth under an assignment to `p1..pn` (`assignment[i-1]` is `p_i`),
    /// reading the clause as a disjunction.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        let val = |i: u32| assignment.get(i as usize - 1).copied().unwrap_or(false);
        self.antecedent.iter().any(|&i| !val(i)) || self.succedent.is_some_and(val)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante: Vec<String> = self.antecedent.iter().map(|i| format!("p{i}")).collect();
        let ante = ante.join(", ");
        match (self.succedent, ante.is_empty()) {
            (None, true) => write!(f, "=>"),
            (None, false) => write!(f, "{ante} =>"),
            (Some(s), true) => write!(f, "=> p{s}"),
            (Some(s), false) => write!(f, "{ante} => p{s}"),
        }
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

fn main_formula(connective: &str, arity: usize) -> Formula {
    Formula::compound(connective, (1..=arity as u32).map(Formula::atom).collect())
}

fn as_set(cs: &[Clause]) -> BTreeSet<&Clause> {
    cs.iter().collect()
}

/// `{Πi ⇒ Ei} / ⇒ ⋄(p1,…,pn)`.
#[derive(Clone, Debug)]
pub struct RightRule {
    pub connective: String,
    pub arity: usize,
    pub premises: Vec<Clause>,
}

impl RightRule {
    pub fn new(connective: &str, arity: usize, premises: Vec<Clause>) -> Self {
        RightRule {
            connective: connective.to_string(),
            arity,
            premises,
        }
    }

    pub fn main_formula(&self) -> Formula {
        main_formula(&self.connective, self.arity)
    }
}

impl PartialEq for RightRule {
    fn eq(&self, other: &Self) -> bool {
        self.connective == other.connective
            && self.arity == other.arity
            && as_set(&self.premises) == as_set(&other.premises)
    }
}

impl Eq for RightRule {}

/// `⟨{Πi ⇒ Ei}, {Σj ⇒}⟩ / ⋄(p1,…,pn) ⇒`. Hard premises admit no right
/// context in applications; soft premises inherit the conclusion's succedent.
#[derive(Clone, Debug)]
pub struct LeftRule {
    pub connective: String,
    pub arity: usize,
    pub hard: Vec<Clause>,
    pub soft: Vec<Clause>,
}

impl LeftRule {
    pub fn new(connective: &str, arity: usize, hard: Vec<Clause>, soft: Vec<Clause>) -> Self {
        LeftRule {
            connective: connective.to_string(),
            arity,
            hard,
            soft,
        }
    }

    pub fn main_formula(&self) -> Formula {
        main_formula(&self.connective, self.arity)
    }
}

impl PartialEq for LeftRule {
    fn eq(&self, other: &Self) -> bool {
        self.connective == other.connective
            && self.arity == other.arity
            && as_set(&self.hard) == as_set(&other.hard)
            && as_set(&self.soft) == as_set(&other.soft)
    }
}

impl Eq for LeftRule {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Position of a rule inside a [`CanonicalSystem`](super::CanonicalSystem).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleRef {
    pub side: Side,
    pub index: usize,
}

impl RuleRef {
    pub fn left(index: usize) -> Self {
        RuleRef {
            side: Side::Left,
            index,
        }
    }

    pub fn right(index: usize) -> Self {
        RuleRef {
            side: Side::Right,
            index,
        }
    }
}

/// Premises and conclusion of one application of a right rule.
pub fn instantiate_right(r: &RightRule, s: &Substitution, context: &Theory) -> (Vec<Sequent>, Sequent) {
    let premises = r
        .premises
        .iter()
        .map(|c| {
            let (pi, e) = c.instantiate(s);
            Sequent {
                antecedent: context.union(&pi).cloned().collect(),
                succedent: e,
            }
        })
        .collect();
    let conclusion = Sequent {
        antecedent: context.clone(),
        succedent: Some(s.apply(&r.main_formula())),
    };
    (premises, conclusion)
}

/// Premises (hard first, then soft) and conclusion of one application of a
/// left rule with right context `e`.
pub fn instantiate_left(
    r: &LeftRule,
    s: &Substitution,
    context: &Theory,
    e: &Option<Formula>,
) -> (Vec<Sequent>, Sequent) {
    let hard = r.hard.iter().map(|c| {
        let (pi, ei) = c.instantiate(s);
        Sequent {
            antecedent: context.union(&pi).cloned().collect(),
            succedent: ei,
        }
    });
    let soft = r.soft.iter().map(|c| {
        let (sigma, _) = c.instantiate(s);
        Sequent {
            antecedent: context.union(&sigma).cloned().collect(),
            succedent: e.clone(),
        }
    });
    let premises = hard.chain(soft).collect();
    let mut antecedent = context.clone();
    antecedent.insert(s.apply(&r.main_formula()));
    (
        premises,
        Sequent {
            antecedent,
            succedent: e.clone(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sequent, Signature};

    fn sig() -> Signature {
        Signature::from_pairs([("imp", 2), ("neg", 1), ("waff", 1), ("bot", 0), ("q", 0), ("r", 0)]).unwrap()
    }

    fn seq(t: &str) -> Sequent {
        parse_sequent(t, &sig()).unwrap()
    }

    fn imp_rules() -> (RightRule, LeftRule) {
        (
            RightRule::new("imp", 2, vec![Clause::new([1], Some(2))]),
            LeftRule::new("imp", 2, vec![Clause::new([], Some(1))], vec![Clause::new([2], None)]),
        )
    }

    #[test]
    fn implication_applications() {
        let (right, left) = imp_rules();
        let psi = Formula::constant("q");
        let phi = Formula::constant("r");
        let s = Substitution::positional(&[psi.clone(), phi.clone()]);
        let ctx: Theory = [Formula::atom(5)].into_iter().collect();
        let (prem, concl) = instantiate_right(&right, &s, &ctx);
        assert_eq!(prem, vec![seq("p5, q => r")]);
        assert_eq!(concl, seq("p5 => imp(q, r)"));

        let (prem, concl) = instantiate_left(&left, &s, &ctx, &Some(Formula::atom(9)));
        assert_eq!(prem, vec![seq("p5 => q"), seq("p5, r => p9")]);
        assert_eq!(concl, seq("p5, imp(q, r) => p9"));
    }

    #[test]
    fn negation_right_has_no_succedent() {
        let r = RightRule::new("neg", 1, vec![Clause::new([1], None)]);
        let s = Substitution::positional(&[Formula::constant("q")]);
        let ctx: Theory = [Formula::atom(3)].into_iter().collect();
        let (prem, concl) = instantiate_right(&r, &s, &ctx);
        assert_eq!(prem, vec![seq("p3, q =>")]);
        assert_eq!(concl, seq("p3 => neg(q)"));
    }

    #[test]
    fn nullary_and_hard_negative_left_rules() {
        let bot = LeftRule::new("bot", 0, vec![], vec![]);
        let ctx: Theory = [Formula::atom(1)].into_iter().collect();
        let (prem, concl) = instantiate_left(&bot, &Substitution::identity(), &ctx, &Some(Formula::atom(2)));
        assert!(prem.is_empty());
        assert_eq!(concl, seq("p1, bot => p2"));

        let waff = LeftRule::new("waff", 1, vec![Clause::new([1], None)], vec![]);
        let s = Substitution::positional(&[Formula::constant("q")]);
        let (prem, concl) = instantiate_left(&waff, &s, &ctx, &Some(Formula::atom(2)));
        assert_eq!(prem, vec![seq("p1, q =>")]);
        assert_eq!(concl, seq("p1, waff(q) => p2"));
    }

    #[test]
    fn rule_equality_ignores_premise_order() {
        let a = RightRule::new("x", 2, vec![Clause::new([1], None), Clause::new([], Some(2))]);
        let b = RightRule::new("x", 2, vec![Clause::new([], Some(2)), Clause::new([1], None)]);
        assert_eq!(a, b);
        assert_eq!(a.premises[0], Clause::new([1], None));
    }

    #[test]
    fn clause_truth() {
        let c = Clause::new([1], Some(2));
        assert!(c.satisfied_by(&[false, false]));
        assert!(!c.satisfied_by(&[true, false]));
        assert!(c.satisfied_by(&[true, true]));
        assert!(!Clause::new([], None).satisfied_by(&[]));
    }
}
