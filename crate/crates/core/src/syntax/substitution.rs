use std::collections::BTreeMap;
use std::fmt;

use super::formula::{Atom, Formula, Theory};
use super::sequent::Sequent;

/// A map from atoms to formulas; unmapped atoms are sent to themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    map: BTreeMap<Atom, Formula>,
}

impl Substitution {
    pub fn identity() -> Self {
        Self::default()
    }

    /// `p_i ↦ args[i-1]`, the substitution that instantiates `⋄(p1,…,pn)` to `⋄(args)`.
    pub fn positional(args: &[Formula]) -> Self {
        let map = args
            .iter()
            .enumerate()
            .map(|(i, f)| (Atom::new(i as u32 + 1).unwrap(), f.clone()))
            .collect();
        Substitution { map }
    }

    pub fn insert(&mut self, atom: Atom, f: Formula) {
        if f == Formula::Atomic(atom) {
            self.map.remove(&atom);
        } else {
            self.map.insert(atom, f);
        }
    }

    pub fn with(mut self, atom: u32, f: Formula) -> Self {
        self.insert(Atom::new(atom).expect("atom indices start at 1"), f);
        self
    }

    pub fn get(&self, atom: Atom) -> Formula {
        self.map
            .get(&atom)
            .cloned()
            .unwrap_or(Formula::Atomic(atom))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &Formula)> {
        self.map.iter()
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        match f {
            Formula::Atomic(a) => self.get(*a),
            Formula::Compound(name, args) => {
                Formula::Compound(name.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    pub fn apply_theory(&self, t: &Theory) -> Theory {
        t.iter().map(|f| self.apply(f)).collect()
    }

    pub fn apply_succedent(&self, e: &Option<Formula>) -> Option<Formula> {
        e.as_ref().map(|f| self.apply(f))
    }

    pub fn apply_sequent(&self, s: &Sequent) -> Sequent {
        Sequent {
            antecedent: self.apply_theory(&s.antecedent),
            succedent: self.apply_succedent(&s.succedent),
        }
    }

    /// `self ∘ first`: applying the result equals applying `first`, then `self`.
    pub fn after(&self, first: &Substitution) -> Substitution {
        let mut out = Substitution::identity();
        for (a, f) in &self.map {
            out.insert(*a, f.clone());
        }
        for (a, f) in &first.map {
            out.insert(*a, self.apply(f));
        }
        out
    }
}

pub fn apply_substitution(s: &Substitution, f: &Formula) -> Formula {
    s.apply(f)
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, v)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a} ↦ {v}")?;
        }
        write!(f, "}}")
    }
}
