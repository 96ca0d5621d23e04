//! Forward saturation over a fixed finite domain.
//!
//! Sequents are pairs `(antecedent mask, succedent index)`. Only sequents not
//! covered by another derived sequent are kept alive; `Γ' ⇒ E'` covers
//! `Γ ⇒ E` when `Γ' ⊆ Γ` and `E'` is `E` or empty. Every entry remembers how
//! it was obtained, so proofs can be read back.

use crate::derivation::{Derivation, Justification};
use crate::rules::{CanonicalSystem, DomainRules, MappedClause, RuleInstance};
use crate::syntax::{Domain, Sequent, Substitution};

pub(crate) type EntryId = usize;

#[derive(Clone, Debug)]
pub(crate) enum Just {
    Axiom,
    Assumption(usize),
    Cut {
        left: EntryId,
        right: EntryId,
        formula: usize,
    },
    Right {
        formula: usize,
        instance: usize,
        ctx: u64,
        children: Vec<EntryId>,
    },
    Left {
        formula: usize,
        instance: usize,
        ctx: u64,
        succ: Option<usize>,
        children: Vec<EntryId>,
    },
}

/// Proof cost: cuts first, then tree size.
pub(crate) type Cost = (usize, usize);

#[derive(Clone, Debug)]
pub(crate) struct Entry {
    pub ante: u64,
    pub succ: Option<usize>,
    pub alive: bool,
    pub just: Just,
    pub cost: Cost,
}

#[derive(Clone, Debug)]
pub struct SaturationConfig {
    /// Largest accepted domain.
    pub max_closure_size: usize,
    /// Restrict to definite sequents throughout (no empty succedents).
    pub definite_only: bool,
    /// Stop after this many rounds; `None` runs to the fixpoint.
    pub round_limit: Option<usize>,
    /// Refuse incoherent systems.
    pub check_coherence: bool,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig {
            max_closure_size: 12,
            definite_only: false,
            round_limit: None,
            check_coherence: true,
        }
    }
}

/// The saturated set of sequents over a domain.
#[derive(Clone, Debug)]
pub struct SaturationState {
    pub(crate) system: CanonicalSystem,
    pub(crate) domain: Domain,
    pub(crate) rules: DomainRules,
    pub(crate) assumptions: Vec<Sequent>,
    pub(crate) cut_pool: u64,
    pub(crate) entries: Vec<Entry>,
    pub(crate) rounds: usize,
    pub(crate) complete: bool,
    pub(crate) definite_only: bool,
}

fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// A candidate context together with the entries justifying the premises.
#[derive(Clone)]
struct Choice {
    ctx: u64,
    children: Vec<EntryId>,
    cost: Cost,
}

fn add_cost(a: Cost, b: Cost) -> Cost {
    (a.0 + b.0, a.1 + b.1)
}

/// Keeps only ⊆-minimal contexts, the cheapest for each.
fn minimize(mut v: Vec<Choice>) -> Vec<Choice> {
    v.sort_by(|a, b| a.ctx.count_ones().cmp(&b.ctx.count_ones()).then(a.cost.cmp(&b.cost)));
    let mut out: Vec<Choice> = Vec::new();
    for c in v {
        if !out.iter().any(|o| is_subset(o.ctx, c.ctx)) {
            out.push(c);
        }
    }
    out
}

impl SaturationState {
    pub(crate) fn new(
        g: &CanonicalSystem,
        domain: Domain,
        assumptions: Vec<Sequent>,
        cut_pool: u64,
        definite_only: bool,
    ) -> Self {
        SaturationState {
            system: g.clone(),
            rules: DomainRules::new(g, &domain),
            domain,
            assumptions,
            cut_pool,
            entries: Vec::new(),
            rounds: 0,
            complete: false,
            definite_only,
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn system(&self) -> &CanonicalSystem {
        &self.system
    }

    pub fn assumptions(&self) -> &[Sequent] {
        &self.assumptions
    }

    /// The cut formulas the search may use.
    pub fn cut_pool(&self) -> crate::syntax::Theory {
        self.domain.theory_of(self.cut_pool)
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// True when the fixpoint was reached (not cut short by a round limit).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The subsumption-minimal derived sequents.
    pub fn derived(&self) -> Vec<Sequent> {
        self.entries
            .iter()
            .filter(|e| e.alive)
            .map(|e| self.sequent_of(e.ante, e.succ))
            .collect()
    }

    pub(crate) fn sequent_of(&self, ante: u64, succ: Option<usize>) -> Sequent {
        Sequent {
            antecedent: self.domain.theory_of(ante),
            succedent: succ.map(|i| self.domain.get(i).clone()),
        }
    }

    /// Domain encoding of `s`, or `None` if it mentions formulas outside the domain.
    pub(crate) fn encode(&self, s: &Sequent) -> Option<(u64, Option<usize>)> {
        let ante = self.domain.mask_of(&s.antecedent)?;
        let succ = match &s.succedent {
            None => None,
            Some(f) => Some(self.domain.index_of(f)?),
        };
        Some((ante, succ))
    }

    fn covering(&self, ante: u64, succ: Option<usize>) -> impl Iterator<Item = EntryId> + '_ {
        self.entries.iter().enumerate().filter_map(move |(i, e)| {
            (e.alive && is_subset(e.ante, ante) && (e.succ.is_none() || e.succ == succ)).then_some(i)
        })
    }

    pub(crate) fn covers_mask(&self, ante: u64, succ: Option<usize>) -> bool {
        self.covering(ante, succ).next().is_some()
    }

    /// Whether `s` (over the domain) is derivable up to weakening.
    pub fn covers(&self, s: &Sequent) -> bool {
        self.encode(s).is_some_and(|(a, e)| self.covers_mask(a, e))
    }

    /// A proof of `s`, choosing the cheapest derived sequent that covers it.
    pub fn proof_of(&self, s: &Sequent) -> Option<Derivation> {
        let (ante, succ) = self.encode(s)?;
        let best = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| is_subset(e.ante, ante) && (e.succ.is_none() || e.succ == succ))
            .min_by_key(|(i, e)| (e.cost, !e.alive, *i))
            .map(|(i, _)| i)?;
        Some(self.extract(best).weaken_to(s))
    }

    fn extract(&self, id: EntryId) -> Derivation {
        let e = &self.entries[id];
        let conclusion = self.sequent_of(e.ante, e.succ);
        match &e.just {
            Just::Axiom => Derivation::axiom(conclusion.succedent.unwrap()),
            Just::Assumption(k) => Derivation::assumption(self.assumptions[*k].clone()),
            Just::Cut { left, right, formula } => {
                let d = Derivation::cut(self.extract(*left), self.extract(*right));
                debug_assert_eq!(d.conclusion, conclusion);
                if let Justification::Cut { cut_formula, .. } = &d.justification {
                    debug_assert_eq!(cut_formula, self.domain.get(*formula));
                }
                d
            }
            Just::Right {
                formula,
                instance,
                ctx,
                children,
            } => {
                let inst = &self.rules.right[*formula][*instance];
                let kids = inst
                    .premises
                    .iter()
                    .zip(children)
                    .map(|(p, c)| self.extract(*c).weaken_to(&self.sequent_of(ctx | p.ante, p.succ)))
                    .collect();
                self.rule_node(inst, conclusion, *ctx, None, kids)
            }
            Just::Left {
                formula,
                instance,
                ctx,
                succ,
                children,
            } => {
                let inst = &self.rules.left[*formula][*instance];
                let targets = inst
                    .premises
                    .iter()
                    .map(|p| (p.ante, p.succ))
                    .chain(inst.soft.iter().map(|p| (p.ante, *succ)));
                let kids = targets
                    .zip(children)
                    .map(|((a, s), c)| self.extract(*c).weaken_to(&self.sequent_of(ctx | a, s)))
                    .collect();
                self.rule_node(inst, conclusion, *ctx, *succ, kids)
            }
        }
    }

    fn rule_node(
        &self,
        inst: &RuleInstance,
        conclusion: Sequent,
        ctx: u64,
        succ: Option<usize>,
        children: Vec<Derivation>,
    ) -> Derivation {
        let substitution: Substitution = inst.substitution(&self.domain);
        Derivation {
            conclusion,
            justification: Justification::RuleApp {
                rule: inst.rule,
                substitution,
                context: self.domain.theory_of(ctx),
                succedent_context: succ.map(|i| self.domain.get(i).clone()),
                children,
            },
        }
    }

    /// Adds a candidate; returns true if the state changed.
    fn offer(&mut self, ante: u64, succ: Option<usize>, just: Just, cost: Cost) -> bool {
        if self.definite_only && succ.is_none() {
            return false;
        }
        let mut exact = None;
        for i in self.covering(ante, succ) {
            let e = &self.entries[i];
            if e.ante == ante && e.succ == succ {
                exact = Some(i);
            } else {
                return false;
            }
        }
        if let Some(i) = exact {
            if cost < self.entries[i].cost {
                self.entries[i].just = just;
                self.entries[i].cost = cost;
                return true;
            }
            return false;
        }
        for e in self.entries.iter_mut() {
            if e.alive && is_subset(ante, e.ante) && (succ.is_none() || succ == e.succ) {
                e.alive = false;
            }
        }
        self.entries.push(Entry {
            ante,
            succ,
            alive: true,
            just,
            cost,
        });
        true
    }

    /// Contexts `Γ` for which `Γ, Π ⇒ E` is covered by an alive entry.
    fn premise_choices(&self, alive: &[EntryId], ante: u64, succ: Option<usize>) -> Vec<Choice> {
        let v = alive
            .iter()
            .filter_map(|&i| {
                let e = &self.entries[i];
                (e.succ.is_none() || e.succ == succ).then(|| Choice {
                    ctx: e.ante & !ante,
                    children: vec![i],
                    cost: e.cost,
                })
            })
            .collect();
        minimize(v)
    }

    fn combine(lists: impl IntoIterator<Item = Vec<Choice>>) -> Vec<Choice> {
        let mut acc = vec![Choice {
            ctx: 0,
            children: Vec::new(),
            cost: (0, 1),
        }];
        for list in lists {
            let mut next = Vec::with_capacity(acc.len() * list.len());
            for a in &acc {
                for b in &list {
                    let mut children = a.children.clone();
                    children.extend(&b.children);
                    next.push(Choice {
                        ctx: a.ctx | b.ctx,
                        children,
                        cost: add_cost(a.cost, b.cost),
                    });
                }
            }
            acc = minimize(next);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    fn seed(&mut self) {
        for i in 0..self.domain.len() {
            self.offer(1 << i, Some(i), Just::Axiom, (0, 1));
        }
        for k in 0..self.assumptions.len() {
            let (ante, succ) = self.encode(&self.assumptions[k]).expect("assumptions lie in the domain");
            self.offer(ante, succ, Just::Assumption(k), (0, 1));
        }
    }

    /// One round over every rule; returns true if anything changed.
    fn round(&mut self, rules: &DomainRules) -> bool {
        let alive: Vec<EntryId> = (0..self.entries.len()).filter(|&i| self.entries[i].alive).collect();
        let mut changed = false;

        // cuts
        for &l in &alive {
            let (la, ls, lc) = {
                let e = &self.entries[l];
                (e.ante, e.succ, e.cost)
            };
            let Some(phi) = ls else { continue };
            if self.cut_pool & (1 << phi) == 0 {
                continue;
            }
            for &r in &alive {
                let (ra, rs, rc) = {
                    let e = &self.entries[r];
                    (e.ante, e.succ, e.cost)
                };
                if ra & (1 << phi) == 0 {
                    continue;
                }
                let ante = la | (ra & !(1 << phi));
                let cost = (lc.0 + rc.0 + 1, lc.1 + rc.1 + 1);
                changed |= self.offer(ante, rs, Just::Cut { left: l, right: r, formula: phi }, cost);
            }
        }

        // right rules
        for (f, insts) in rules.right.iter().enumerate() {
            for (k, inst) in insts.iter().enumerate() {
                let lists: Vec<_> = inst
                    .premises
                    .iter()
                    .map(|p| self.premise_choices(&alive, p.ante, p.succ))
                    .collect();
                for c in Self::combine(lists) {
                    let just = Just::Right {
                        formula: f,
                        instance: k,
                        ctx: c.ctx,
                        children: c.children,
                    };
                    changed |= self.offer(c.ctx, Some(f), just, c.cost);
                }
            }
        }

        // left rules
        for (f, insts) in rules.left.iter().enumerate() {
            for (k, inst) in insts.iter().enumerate() {
                let hard: Vec<_> = inst
                    .premises
                    .iter()
                    .map(|p| self.premise_choices(&alive, p.ante, p.succ))
                    .collect();
                if hard.iter().any(Vec::is_empty) {
                    continue;
                }
                for succ in self.left_succedents(&alive, &inst.soft) {
                    let soft = inst.soft.iter().map(|p: &MappedClause| self.premise_choices(&alive, p.ante, succ));
                    let lists: Vec<_> = hard.iter().cloned().chain(soft).collect();
                    for c in Self::combine(lists) {
                        let just = Just::Left {
                            formula: f,
                            instance: k,
                            ctx: c.ctx,
                            succ,
                            children: c.children,
                        };
                        changed |= self.offer(c.ctx | (1 << f), succ, just, c.cost);
                    }
                }
            }
        }
        changed
    }

    /// Right contexts worth trying for a left rule. Without soft premises the
    /// empty succedent already covers every other choice.
    fn left_succedents(&self, alive: &[EntryId], soft: &[MappedClause]) -> Vec<Option<usize>> {
        if soft.is_empty() {
            if self.definite_only {
                return (0..self.domain.len()).map(Some).collect();
            }
            return vec![None];
        }
        let mut out: Vec<Option<usize>> = alive.iter().filter_map(|&i| self.entries[i].succ).map(Some).collect();
        out.sort();
        out.dedup();
        if !self.definite_only {
            out.insert(0, None);
        }
        out
    }

    /// Runs rounds until nothing changes or the round limit is hit.
    pub(crate) fn run(&mut self, round_limit: Option<usize>) {
        let rules = self.rules.clone();
        self.seed();
        loop {
            if round_limit.is_some_and(|l| self.rounds >= l) {
                self.complete = false;
                return;
            }
            self.rounds += 1;
            if !self.round(&rules) {
                self.complete = true;
                return;
            }
        }
    }

    /// Number of alive entries.
    pub fn len(&self) -> usize {
        self.entries.iter().filter(|e| e.alive).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
