//! The countermodel built from maximal unprovable theories.
//!
//! A theory `T ⊆ U` is E-maximal when no finite part of it derives `E` but every
//! proper extension inside `U` does. Worlds are the E-maximal extensions (for
//! any `E`) of one fixed maximal extension `T0` of the goal's antecedent,
//! ordered by inclusion. Atoms are true where they belong to the theory; a
//! compound is true where a right rule for it is fulfilled, or where it belongs
//! to the theory and no left rule for it is fulfilled in any larger world.

use thiserror::Error;

use crate::decision::SaturationState;
use crate::syntax::{fmt_theory, Sequent};

use super::frame::{check_semiframe, is_model, Semiframe};
use super::legality::{fulfilled, is_legal};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("the goal is derivable, so it has no countermodel")]
    GoalProvable,
    #[error("the goal mentions formulas outside the saturation domain")]
    OutsideDomain,
    #[error("the saturation did not reach its fixpoint")]
    Incomplete,
    #[error("definite-only saturation does not determine negative derivability")]
    DefiniteOnly,
}

fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Builds and validates the canonical countermodel. Panics if the result fails
/// validation, which can only happen through a bug in the prover.
pub fn build_canonical_countermodel(state: &SaturationState, goal: &Sequent) -> Result<Semiframe, CanonicalError> {
    if !state.is_complete() {
        return Err(CanonicalError::Incomplete);
    }
    if state.definite_only {
        return Err(CanonicalError::DefiniteOnly);
    }
    let (ante0, e0) = state.encode(goal).ok_or(CanonicalError::OutsideDomain)?;
    if state.covers_mask(ante0, e0) {
        return Err(CanonicalError::GoalProvable);
    }
    let domain = state.domain();
    let m = domain.len();
    let alive: Vec<(u64, Option<usize>)> = state
        .entries
        .iter()
        .filter(|e| e.alive)
        .map(|e| (e.ante, e.succ))
        .collect();
    let derives = |t: u64, e: Option<usize>| {
        alive
            .iter()
            .any(|&(a, s)| is_subset(a, t) && (s.is_none() || s == e))
    };

    let mut t0 = ante0;
    for i in 0..m {
        let bit = 1u64 << i;
        if t0 & bit == 0 && !derives(t0 | bit, e0) {
            t0 |= bit;
        }
    }

    let full = domain.full_mask();
    let free = full & !t0;
    let mut worlds = Vec::new();
    let mut sub = free;
    loop {
        let t = t0 | sub;
        let succs = std::iter::once(None).chain((0..m).map(Some));
        let maximal = succs.into_iter().any(|e| {
            !derives(t, e) && (0..m).all(|i| t & (1 << i) != 0 || derives(t | (1 << i), e))
        });
        if maximal {
            worlds.push(t);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    worlds.sort_by_key(|t| (t.count_ones(), *t));
    assert_eq!(worlds[0], t0, "the root theory is maximal by construction");

    let n = worlds.len();
    let leq = (0..n)
        .map(|a| (0..n).map(|b| is_subset(worlds[a], worlds[b])).collect())
        .collect();
    let mut frame = Semiframe::new(domain.clone(), leq);
    frame.labels = worlds.iter().map(|&t| format!("{{{}}}", fmt_theory(&domain.theory_of(t)))).collect();

    let rules = &state.rules;
    for i in 0..m {
        let atomic = domain.get(i).is_atomic();
        let values: Vec<bool> = (0..n)
            .map(|a| {
                let member = worlds[a] & (1 << i) != 0;
                if atomic {
                    return member;
                }
                let by_right = rules.right[i].iter().any(|r| fulfilled(&frame, a, r));
                let by_membership = member
                    && !frame
                        .above(a)
                        .any(|b| rules.left[i].iter().any(|r| fulfilled(&frame, b, r)));
                by_right || by_membership
            })
            .collect();
        for (a, v) in values.into_iter().enumerate() {
            frame.valuation[a][i] = v;
        }
    }

    if let Err(diags) = check_semiframe(&frame) {
        panic!("canonical countermodel is not a semiframe: {diags:?}\n{frame}");
    }
    let legal = is_legal(&frame, state.system());
    assert!(legal.is_legal(), "canonical countermodel is not legal: {legal}\n{frame}");
    assert!(
        is_model(&frame, state.assumptions()).expect("assumptions lie in the domain"),
        "canonical countermodel falsifies an assumption\n{frame}"
    );
    assert!(
        !is_model(&frame, [goal]).expect("goal lies in the domain"),
        "canonical countermodel satisfies the goal\n{frame}"
    );
    Ok(frame)
}
