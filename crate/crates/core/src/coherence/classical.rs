//! Classical satisfiability of clause sets over `p1..pn`, decided twice: by
//! truth tables and by saturation under cuts.

use std::collections::HashMap;
use std::fmt;

use crate::rules::Clause;

/// Truth values for `p1..pn`; entry `i` is the value of `p{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, atom: u32) -> bool {
        self.0[atom as usize - 1]
    }

    pub fn satisfies(&self, c: &Clause) -> bool {
        c.satisfied_by(&self.0)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(no atoms)");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, v)| format!("p{}={}", i + 1, if *v { "t" } else { "f" }))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// First satisfying assignment in binary counting order, if any.
pub fn truth_table_model(clauses: &[Clause], n: usize) -> Option<Assignment> {
    assert!(n < 32, "arity {n} is too large for a truth table");
    (0u32..1 << n)
        .map(|bits| Assignment((0..n).map(|i| bits & (1 << i) != 0).collect()))
        .find(|a| clauses.iter().all(|c| a.satisfies(c)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseRef {
    Initial(usize),
    Step(usize),
}

impl fmt::Display for ClauseRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseRef::Initial(i) => write!(f, "#{}", i + 1),
            ClauseRef::Step(i) => write!(f, "step {}", i + 1),
        }
    }
}

/// One cut: `left` is `Γ ⇒ p`, `right` is `Δ, p ⇒ E`, `result` is `Γ, Δ ⇒ E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutStep {
    pub left: ClauseRef,
    pub right: ClauseRef,
    pub atom: u32,
    pub result: Clause,
}

/// A sequence of cuts over an initial clause list ending in the empty clause.
/// When the empty clause is itself initial the step list is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutDerivation {
    pub initial: Vec<Clause>,
    pub steps: Vec<CutStep>,
}

impl CutDerivation {
    pub fn cut_count(&self) -> usize {
        self.steps.len()
    }

    fn get(&self, r: ClauseRef, before: usize) -> Result<&Clause, String> {
        match r {
            ClauseRef::Initial(i) => self.initial.get(i).ok_or_else(|| format!("no initial clause {r}")),
            ClauseRef::Step(i) if i < before => Ok(&self.steps[i].result),
            ClauseRef::Step(_) => Err(format!("{r} is not an earlier step")),
        }
    }

    /// Re-checks every step and that the last clause is empty.
    pub fn verify(&self) -> Result<(), String> {
        for (k, s) in self.steps.iter().enumerate() {
            let l = self.get(s.left, k)?;
            let r = self.get(s.right, k)?;
            if l.succedent != Some(s.atom) {
                return Err(format!("step {}: left clause ({l}) does not conclude p{}", k + 1, s.atom));
            }
            if !r.antecedent.contains(&s.atom) {
                return Err(format!("step {}: right clause ({r}) does not contain p{}", k + 1, s.atom));
            }
            if cut(l, r, s.atom) != s.result {
                return Err(format!("step {}: wrong result ({})", k + 1, s.result));
            }
        }
        let last = match self.steps.last() {
            Some(s) => &s.result,
            None => self
                .initial
                .iter()
                .find(|c| c.antecedent.is_empty() && c.succedent.is_none())
                .ok_or("no steps and no empty initial clause")?,
        };
        if last.antecedent.is_empty() && last.succedent.is_none() {
            Ok(())
        } else {
            Err(format!("derivation ends in ({last}), not the empty clause"))
        }
    }
}

impl fmt::Display for CutDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.initial.iter().enumerate() {
            writeln!(f, "#{}  {c}", i + 1)?;
        }
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "{}.  {}   cut on p{} of {} and {}", k + 1, s.result, s.atom, s.left, s.right)?;
        }
        Ok(())
    }
}

fn cut(left: &Clause, right: &Clause, atom: u32) -> Clause {
    let mut ante = left.antecedent.clone();
    ante.extend(right.antecedent.iter().copied().filter(|&a| a != atom));
    Clause {
        antecedent: ante,
        succedent: right.succedent,
    }
}

#[derive(Clone)]
enum Origin {
    Initial(usize),
    Cut(Clause, Clause, u32),
}

/// Saturates under cuts, keeping for every reachable clause the cheapest cut
/// tree. Returns a derivation of the empty clause with the fewest cuts, or
/// `None` when the empty clause is unreachable.
pub fn cut_saturation(clauses: &[Clause]) -> Option<CutDerivation> {
    let mut best: HashMap<Clause, (usize, Origin)> = HashMap::new();
    for (i, c) in clauses.iter().enumerate() {
        best.entry(c.clone()).or_insert((0, Origin::Initial(i)));
    }
    loop {
        let snapshot: Vec<(Clause, usize)> = best.iter().map(|(c, (k, _))| (c.clone(), *k)).collect();
        let mut changed = false;
        for (l, lc) in &snapshot {
            let Some(p) = l.succedent else { continue };
            for (r, rc) in &snapshot {
                if !r.antecedent.contains(&p) {
                    continue;
                }
                let res = cut(l, r, p);
                let cost = lc + rc + 1;
                let better = best.get(&res).map_or(true, |(k, _)| cost < *k);
                if better {
                    best.insert(res, (cost, Origin::Cut(l.clone(), r.clone(), p)));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let empty = Clause::new([], None);
    best.get(&empty)?;
    let mut out = CutDerivation {
        initial: clauses.to_vec(),
        steps: Vec::new(),
    };
    let mut done: HashMap<Clause, ClauseRef> = HashMap::new();
    emit(&empty, &best, &mut out, &mut done);
    Some(out)
}

fn emit(
    c: &Clause,
    best: &HashMap<Clause, (usize, Origin)>,
    out: &mut CutDerivation,
    done: &mut HashMap<Clause, ClauseRef>,
) -> ClauseRef {
    if let Some(r) = done.get(c) {
        return *r;
    }
    let r = match &best[c].1 {
        Origin::Initial(i) => ClauseRef::Initial(*i),
        Origin::Cut(l, r, p) => {
            let lr = emit(l, best, out, done);
            let rr = emit(r, best, out, done);
            out.steps.push(CutStep {
                left: lr,
                right: rr,
                atom: *p,
                result: c.clone(),
            });
            ClauseRef::Step(out.steps.len() - 1)
        }
    };
    done.insert(c.clone(), r);
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InconsistencyWitness {
    CutDerivation(CutDerivation),
    SatisfyingAssignment(Assignment),
}

impl InconsistencyWitness {
    pub fn is_inconsistent(&self) -> bool {
        matches!(self, InconsistencyWitness::CutDerivation(_))
    }
}

/// Decides classical inconsistency of `clauses` over `p1..pn` by truth table and
/// by cut saturation; panics if the two disagree.
pub fn classically_inconsistent(clauses: &[Clause], n: usize) -> InconsistencyWitness {
    debug_assert!(clauses.iter().flat_map(|c| c.atoms()).all(|a| a >= 1 && a as usize <= n));
    let model = truth_table_model(clauses, n);
    let refutation = cut_saturation(clauses);
    match (model, refutation) {
        (Some(a), None) => InconsistencyWitness::SatisfyingAssignment(a),
        (None, Some(d)) => InconsistencyWitness::CutDerivation(d),
        (Some(a), Some(d)) => panic!("clause set satisfied by {a} yet refuted by cuts:\n{d}"),
        (None, None) => panic!("clause set has no model yet the empty clause is not derivable by cuts"),
    }
}
