//! The coherence criterion for canonical systems and the matching
//! strong-consistency check.
//!
//! A system is coherent when, for every connective and every pair of a left
//! and a right rule for it, the union of their premises (read as classical
//! clauses) is unsatisfiable. Incoherent systems derive the empty sequent from
//! `⇒ p1` and `p2 ⇒`; [`strong_consistency_witness`] builds that derivation.

mod classical;

use std::fmt;

use crate::derivation::{Derivation, Justification};
use crate::rules::{CanonicalSystem, Clause, LeftRule, RightRule, RuleRef};
use crate::syntax::{Formula, Sequent, Substitution, Theory};

pub use classical::{
    classically_inconsistent, cut_saturation, truth_table_model, Assignment, ClauseRef, CutDerivation, CutStep,
    InconsistencyWitness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Coherent,
    Incoherent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Coherent => "coherent",
            Verdict::Incoherent => "incoherent",
        })
    }
}

/// Result for one (left rule, right rule) pair of a connective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub connective: String,
    pub left: RuleRef,
    pub right: RuleRef,
    pub left_label: String,
    pub right_label: String,
    /// Hard premises, soft premises, then right premises.
    pub clauses: Vec<Clause>,
    pub witness: InconsistencyWitness,
}

impl PairResult {
    pub fn is_coherent(&self) -> bool {
        self.witness.is_inconsistent()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub verdict: Verdict,
    pub pairs: Vec<PairResult>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.verdict == Verdict::Coherent
    }

    pub fn offending_pairs(&self) -> impl Iterator<Item = &PairResult> {
        self.pairs.iter().filter(|p| !p.is_coherent())
    }
}

fn pair_clauses(l: &LeftRule, r: &RightRule) -> Vec<Clause> {
    l.hard.iter().chain(&l.soft).chain(&r.premises).cloned().collect()
}

/// Checks every left/right rule pair of every connective of `g` (assumed valid).
pub fn is_coherent(g: &CanonicalSystem) -> CoherenceReport {
    let mut pairs = Vec::new();
    for c in g.signature.iter() {
        for (lr, l) in g.left_rules_for(&c.name) {
            for (rr, r) in g.right_rules_for(&c.name) {
                let clauses = pair_clauses(l, r);
                let witness = classically_inconsistent(&clauses, c.arity);
                pairs.push(PairResult {
                    connective: c.name.clone(),
                    left: lr,
                    right: rr,
                    left_label: g.rule_label(lr),
                    right_label: g.rule_label(rr),
                    clauses,
                    witness,
                });
            }
        }
    }
    let verdict = if pairs.iter().all(PairResult::is_coherent) {
        Verdict::Coherent
    } else {
        Verdict::Incoherent
    };
    CoherenceReport { verdict, pairs }
}

/// `⇒ p1` and `p2 ⇒`.
pub fn strong_consistency_assumptions() -> [Sequent; 2] {
    [
        Sequent::new([], Some(Formula::atom(1))),
        Sequent::new([Formula::atom(2)], None),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongConsistency {
    Coherent,
    /// A derivation of `⇒` from `⇒ p1` and `p2 ⇒`.
    Refuted(Derivation),
}

/// For an incoherent `g`, derives the empty sequent from `⇒ p1` and `p2 ⇒`.
///
/// The satisfying assignment of an offending pair picks the substitution
/// `p_i ↦ p1` for true atoms and `p_i ↦ p2` for false ones. Every premise then
/// follows from one of the two assumptions by weakening, the two rules give
/// `⇒ σ(⋄)` and `σ(⋄) ⇒`, and a cut closes the proof.
pub fn strong_consistency_witness(g: &CanonicalSystem) -> StrongConsistency {
    let report = is_coherent(g);
    let Some(pair) = report.offending_pairs().next() else {
        return StrongConsistency::Coherent;
    };
    let InconsistencyWitness::SatisfyingAssignment(v) = &pair.witness else { unreachable!() };
    let left = g.left_rule(pair.left).unwrap();
    let right = g.right_rule(pair.right).unwrap();

    let image = |i: usize| Formula::atom(if v.0[i] { 1 } else { 2 });
    let sigma = (0..v.0.len()).fold(Substitution::identity(), |s, i| s.with(i as u32 + 1, image(i)));
    let [top, bottom] = strong_consistency_assumptions();

    // Premise σ(Π) ⇒ σ(E) for a clause the assignment satisfies.
    let premise = |c: &Clause, succedent: Option<Formula>| -> Derivation {
        let (ante, _) = c.instantiate(&sigma);
        let target = Sequent {
            antecedent: ante,
            succedent,
        };
        let from_top = target.succedent == top.succedent;
        let base = if from_top {
            top.clone()
        } else {
            debug_assert!(target.antecedent.contains(&Formula::atom(2)));
            bottom.clone()
        };
        Derivation::assumption(base).weaken_to(&target)
    };

    let main = sigma.apply(&right.main_formula());
    let empty = Theory::new();
    let right_children = right
        .premises
        .iter()
        .map(|c| premise(c, c.instantiate(&sigma).1))
        .collect();
    let right_app = Derivation {
        conclusion: Sequent::new([], Some(main.clone())),
        justification: Justification::RuleApp {
            rule: pair.right,
            substitution: sigma.clone(),
            context: empty.clone(),
            succedent_context: None,
            children: right_children,
        },
    };
    let left_children = left
        .hard
        .iter()
        .map(|c| premise(c, c.instantiate(&sigma).1))
        .chain(left.soft.iter().map(|c| premise(c, None)))
        .collect();
    let left_app = Derivation {
        conclusion: Sequent::new([main], None),
        justification: Justification::RuleApp {
            rule: pair.left,
            substitution: sigma,
            context: empty,
            succedent_context: None,
            children: left_children,
        },
    };
    StrongConsistency::Refuted(Derivation::cut(right_app, left_app))
}
