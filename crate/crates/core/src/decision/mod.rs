//! Derivability of sequents from finite assumption sets in coherent systems.
//!
//! Coherent systems admit proofs whose cut formulas all occur in the
//! assumptions, so forward saturation over the subformula closure of the
//! problem, with cuts restricted to those formulas, is a decision procedure.

mod saturation;

use std::fmt;

use thiserror::Error;

use crate::coherence::is_coherent;
use crate::derivation::{occurring_formulas, Derivation};
use crate::kripke::{build_canonical_countermodel, Semiframe};
use crate::rules::{validate_system, CanonicalSystem, Diagnostic};
use crate::syntax::{Domain, Formula, Sequent, Theory};

pub use saturation::{SaturationConfig, SaturationState};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("system is incoherent: {}", .0.join(", "))]
    IncoherentSystem(Vec<String>),
    #[error("invalid system: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSystem(Vec<Diagnostic>),
    #[error("subformula closure has {size} formulas, above the limit of {cap} (raise --max-closure-size)")]
    ClosureTooLarge { size: usize, cap: usize },
    #[error("{0}")]
    Language(String),
}

#[derive(Clone, Debug)]
pub enum DecisionOutcome {
    /// A proof of the goal whose cut formulas all occur in the assumptions.
    Provable(Derivation),
    /// Not derivable; optionally with a countermodel.
    Unprovable(Option<Semiframe>),
}

impl DecisionOutcome {
    pub fn is_provable(&self) -> bool {
        matches!(self, DecisionOutcome::Provable(_))
    }

    pub fn proof(&self) -> Option<&Derivation> {
        match self {
            DecisionOutcome::Provable(d) => Some(d),
            DecisionOutcome::Unprovable(_) => None,
        }
    }

    pub fn countermodel(&self) -> Option<&Semiframe> {
        match self {
            DecisionOutcome::Unprovable(f) => f.as_ref(),
            DecisionOutcome::Provable(_) => None,
        }
    }
}

impl fmt::Display for DecisionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_provable() { "provable" } else { "unprovable" })
    }
}

fn check_inputs(g: &CanonicalSystem, seqs: &[&Sequent], coherence: bool) -> Result<(), DecisionError> {
    let diags = validate_system(g);
    if !diags.is_empty() {
        return Err(DecisionError::InvalidSystem(diags));
    }
    for s in seqs {
        s.check_signature(&g.signature)
            .map_err(|m| DecisionError::Language(format!("`{s}`: {m}")))?;
    }
    if coherence {
        let report = is_coherent(g);
        if !report.is_coherent() {
            let pairs = report
                .offending_pairs()
                .map(|p| format!("{}/{}", p.left_label, p.right_label))
                .collect();
            return Err(DecisionError::IncoherentSystem(pairs));
        }
    }
    Ok(())
}

fn domain_for<'a>(
    seqs: impl IntoIterator<Item = &'a Sequent>,
    extra: impl IntoIterator<Item = &'a Formula>,
    cap: usize,
) -> Result<Domain, DecisionError> {
    let mut set = crate::syntax::subformula_closure(seqs);
    for f in extra {
        set.extend(f.subformulas());
    }
    let size = set.len();
    if size > cap.min(crate::syntax::MAX_DOMAIN) {
        return Err(DecisionError::ClosureTooLarge {
            size,
            cap: cap.min(crate::syntax::MAX_DOMAIN),
        });
    }
    Ok(Domain::from_closed(set).expect("size checked"))
}

fn dedup(assumptions: &[Sequent]) -> Vec<Sequent> {
    let mut v = assumptions.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Saturates over the subformula closure of the assumptions and the goal,
/// cutting only on formulas that occur in the assumptions.
pub fn saturate(g: &CanonicalSystem, assumptions: &[Sequent], goal: &Sequent) -> Result<SaturationState, DecisionError> {
    saturate_with(g, assumptions, goal, &SaturationConfig::default())
}

pub fn saturate_with(
    g: &CanonicalSystem,
    assumptions: &[Sequent],
    goal: &Sequent,
    config: &SaturationConfig,
) -> Result<SaturationState, DecisionError> {
    let mut all: Vec<&Sequent> = assumptions.iter().collect();
    all.push(goal);
    check_inputs(g, &all, config.check_coherence)?;
    let domain = domain_for(all.iter().copied(), [], config.max_closure_size)?;
    let assumptions = dedup(assumptions);
    let assumptions: Vec<Sequent> = if config.definite_only {
        assumptions.into_iter().filter(Sequent::is_definite).collect()
    } else {
        assumptions
    };
    let pool = domain
        .mask_of(&occurring_formulas(&assumptions))
        .expect("assumptions lie in the domain");
    let mut state = SaturationState::new(g, domain, assumptions, pool, config.definite_only);
    state.run(config.round_limit);
    Ok(state)
}

/// Options for [`decide_with`].
#[derive(Clone, Debug, Default)]
pub struct DecideOptions {
    pub saturation: SaturationConfig,
    /// Build the canonical countermodel for unprovable goals.
    pub countermodel: bool,
}

/// Decides the goal, returning a proof or (without a countermodel) a refusal.
pub fn decide(g: &CanonicalSystem, assumptions: &[Sequent], goal: &Sequent) -> Result<DecisionOutcome, DecisionError> {
    decide_with(g, assumptions, goal, &DecideOptions::default())
}

pub fn decide_with(
    g: &CanonicalSystem,
    assumptions: &[Sequent],
    goal: &Sequent,
    options: &DecideOptions,
) -> Result<DecisionOutcome, DecisionError> {
    let state = saturate_with(g, assumptions, goal, &options.saturation)?;
    Ok(outcome_of(&state, goal, options.countermodel))
}

pub(crate) fn outcome_of(state: &SaturationState, goal: &Sequent, countermodel: bool) -> DecisionOutcome {
    match state.proof_of(goal) {
        Some(d) => DecisionOutcome::Provable(d),
        None if countermodel && !state.definite_only => {
            let frame = build_canonical_countermodel(state, goal).expect("goal is not covered");
            DecisionOutcome::Unprovable(Some(frame))
        }
        None => DecisionOutcome::Unprovable(None),
    }
}

/// `T ⊢ E`: the goal `⇒ E` from the assumptions `⇒ ψ`, `ψ ∈ T`.
pub fn entails(g: &CanonicalSystem, theory: &Theory, e: Option<&Formula>) -> Result<bool, DecisionError> {
    let assumptions: Vec<Sequent> = theory.iter().map(|f| Sequent::new([], Some(f.clone()))).collect();
    let goal = Sequent::new([], e.cloned());
    Ok(decide(g, &assumptions, &goal)?.is_provable())
}

#[derive(Clone, Debug)]
pub enum BoundedOutcome {
    Found(Derivation),
    /// Not derivable within the bound; says nothing beyond it.
    NotFound,
}

impl BoundedOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, BoundedOutcome::Found(_))
    }
}

/// Searches for a proof without requiring coherence: cuts on any formula of
/// `cut_pool`, at most `depth` saturation rounds. Sound but incomplete.
pub fn bounded_search_unrestricted(
    g: &CanonicalSystem,
    assumptions: &[Sequent],
    goal: &Sequent,
    cut_pool: &Theory,
    depth: usize,
) -> Result<BoundedOutcome, DecisionError> {
    let mut all: Vec<&Sequent> = assumptions.iter().collect();
    all.push(goal);
    check_inputs(g, &all, false)?;
    for f in cut_pool {
        f.check_signature(&g.signature)
            .map_err(|m| DecisionError::Language(format!("`{f}`: {m}")))?;
    }
    let domain = domain_for(all.iter().copied(), cut_pool, crate::syntax::MAX_DOMAIN)?;
    let pool = domain.mask_of(cut_pool).expect("pool lies in the domain");
    let mut state = SaturationState::new(g, domain, dedup(assumptions), pool, false);
    state.run(Some(depth));
    Ok(match state.proof_of(goal) {
        Some(d) => BoundedOutcome::Found(d),
        None => BoundedOutcome::NotFound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::{check_derivation, is_s_proof};
    use crate::rules::builtin;
    use crate::syntax::parse_sequent;

    fn seq(g: &CanonicalSystem, t: &str) -> Sequent {
        parse_sequent(t, &g.signature).unwrap()
    }

    fn provable(name: &str, assumptions: &[&str], goal: &str) -> bool {
        let g = builtin(name).unwrap();
        let s: Vec<_> = assumptions.iter().map(|t| seq(&g, t)).collect();
        let goal = seq(&g, goal);
        match decide(&g, &s, &goal).unwrap() {
            DecisionOutcome::Provable(d) => {
                check_derivation(&g, &s, &d).unwrap();
                assert!(is_s_proof(&d, &s));
                assert_eq!(d.conclusion, goal);
                true
            }
            DecisionOutcome::Unprovable(_) => false,
        }
    }

    #[test]
    fn small_goldens() {
        assert!(provable("imp", &[], "=> imp(p1, p1)"));
        assert!(!provable("imp", &[], "=> imp(imp(imp(p1, p2), p1), p1)"));
        assert!(provable("neg", &[], "p1, neg(p1) =>"));
        assert!(provable("aff", &[], "aff(p1) => p1"));
        assert!(!provable("waff", &[], "waff(p1) => p1"));
        assert!(!provable("imp", &[], "p1 => p2"));
        assert!(provable("imp", &["=> p1"], "=> imp(p2, p1)"));
        assert!(provable("imp", &["=> p1", "p1 => p2"], "=> p2"));
    }

    #[test]
    fn incoherent_systems_are_refused() {
        let g = builtin("circ").unwrap();
        let goal = seq(&g, "=>");
        assert!(matches!(decide(&g, &[], &goal), Err(DecisionError::IncoherentSystem(_))));
    }

    #[test]
    fn closure_cap() {
        let g = builtin("imp").unwrap();
        let goal = seq(&g, "=> imp(imp(imp(p1, p2), imp(p3, p4)), imp(imp(p5, p6), imp(p7, p8)))");
        let cfg = SaturationConfig {
            max_closure_size: 4,
            ..Default::default()
        };
        assert!(matches!(
            saturate_with(&g, &[], &goal, &cfg),
            Err(DecisionError::ClosureTooLarge { size: 15, cap: 4 })
        ));
    }

    #[test]
    fn bounded_search_on_circle() {
        let g = builtin("circ").unwrap();
        let s = [seq(&g, "p1 =>")];
        let pool: Theory = [Formula::atom(1), crate::syntax::parse_formula("circ(p1)", &g.signature).unwrap()].into();
        let BoundedOutcome::Found(d) = bounded_search_unrestricted(&g, &s, &seq(&g, "=>"), &pool, 6).unwrap() else {
            panic!()
        };
        check_derivation(&g, &s, &d).unwrap();
        assert!(!bounded_search_unrestricted(&g, &[], &seq(&g, "p1 => p2"), &pool, 6).unwrap().is_found());
        assert!(bounded_search_unrestricted(&g, &[], &seq(&g, "circ(circ(p1)) => p1"), &Theory::new(), 6)
            .unwrap()
            .is_found());
    }

    #[test]
    fn entailment() {
        let g = builtin("imp").unwrap();
        let p = Formula::atom(1);
        let q = Formula::atom(2);
        let qp = Formula::compound("imp", vec![q.clone(), p.clone()]);
        assert!(entails(&g, &[p.clone()].into(), Some(&qp)).unwrap());
        assert!(!entails(&g, &[p.clone()].into(), Some(&q)).unwrap());
        assert!(entails(&g, &[p.clone()].into(), Some(&p)).unwrap());
    }
}
