//! Enumeration helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use canonseq_core::syntax::{Atom, Domain, Formula, Sequent, Substitution, Theory};
use canonseq_core::CanonicalSystem;
use itertools::Itertools;

fn closure_size(f: &Formula) -> usize {
    f.subformulas().len()
}

/// Every formula over atoms `p1..p{max}` whose subformula closure has at most
/// `max` members.
pub fn small_formulas(g: &CanonicalSystem, max: usize) -> Vec<Formula> {
    let mut all: BTreeSet<Formula> = (1..=max as u32).map(Formula::atom).collect();
    loop {
        let current: Vec<Formula> = all.iter().cloned().collect();
        let mut grew = false;
        for c in g.signature.iter() {
            let args: Vec<Vec<Formula>> = if c.arity == 0 {
                vec![vec![]]
            } else {
                (0..c.arity).map(|_| current.iter().cloned()).multi_cartesian_product().collect()
            };
            for a in args {
                let f = Formula::compound(&c.name, a);
                if closure_size(&f) <= max && all.insert(f) {
                    grew = true;
                }
            }
        }
        if !grew {
            return all.into_iter().collect();
        }
    }
}

fn rename(t: &Theory, perm: &[u32]) -> Theory {
    let mut s = Substitution::identity();
    for (i, &j) in perm.iter().enumerate() {
        s.insert(Atom::new(i as u32 + 1).unwrap(), Formula::atom(j));
    }
    s.apply_theory(t)
}

/// Subformula-closed sets with at most `max` members, one per class under
/// renaming of atoms, smallest first.
pub fn canonical_domains(g: &CanonicalSystem, max: usize) -> Vec<Domain> {
    let pool = small_formulas(g, max);
    let mut seen: BTreeSet<Vec<Formula>> = BTreeSet::new();
    let mut frontier: Vec<Theory> = vec![Theory::new()];
    let mut out = Vec::new();
    let perms: Vec<Vec<u32>> = (1..=max as u32).permutations(max).collect();
    while let Some(t) = frontier.pop() {
        let key = perms
            .iter()
            .map(|p| rename(&t, p).into_iter().collect::<Vec<_>>())
            .min()
            .unwrap_or_default();
        if !seen.insert(key.clone()) {
            continue;
        }
        out.push(key.into_iter().collect::<Theory>());
        if t.len() == max {
            continue;
        }
        for f in &pool {
            if !t.contains(f) && f.args().iter().all(|a| t.contains(a)) {
                let mut next = t.clone();
                next.insert(f.clone());
                frontier.push(next);
            }
        }
    }
    out.sort_by_key(|t| (t.len(), t.iter().cloned().collect::<Vec<_>>()));
    out.into_iter().map(|t| Domain::from_closed(t).unwrap()).collect()
}

/// All `2^|U| · (|U| + 1)` sequents over the domain.
pub fn sequents_over(d: &Domain) -> Vec<Sequent> {
    let n = d.len();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let ante: Vec<Formula> = d.theory_of(mask).into_iter().collect();
        out.push(Sequent::new(ante.clone(), None));
        for f in d.formulas() {
            out.push(Sequent::new(ante.clone(), Some(f.clone())));
        }
    }
    out
}

/// Subsets of `items` with at most `k` members.
pub fn subsets_upto<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    (0..=k.min(items.len()))
        .flat_map(|m| items.iter().cloned().combinations(m))
        .collect()
}
