use std::collections::HashMap;

use super::formula::{Formula, Theory};
use super::sequent::{subformula_closure, Sequent};

/// Upper bound on the size of an indexed domain (formula sets are `u64` masks).
pub const MAX_DOMAIN: usize = 64;

/// A finite, subformula-closed set of formulas with a fixed enumeration order:
/// by complexity, then structurally. Every formula's arguments precede it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl Domain {
    /// Closes `formulas` under subformulas. Returns `None` beyond [`MAX_DOMAIN`].
    pub fn closure_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Option<Domain> {
        let mut set = Theory::new();
        for f in formulas {
            f.collect_subformulas(&mut set);
        }
        Domain::from_closed(set)
    }

    pub fn from_sequents<'a>(seqs: impl IntoIterator<Item = &'a Sequent>) -> Option<Domain> {
        Domain::from_closed(subformula_closure(seqs))
    }

    /// `set` must already be closed under subformulas.
    pub fn from_closed(set: Theory) -> Option<Domain> {
        if set.len() > MAX_DOMAIN {
            return None;
        }
        let mut formulas: Vec<Formula> = set.into_iter().collect();
        formulas.sort_by(|a, b| a.complexity().cmp(&b.complexity()).then_with(|| a.cmp(b)));
        let index = formulas
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        Some(Domain { formulas, index })
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn get(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn mask_of<'a>(&self, fs: impl IntoIterator<Item = &'a Formula>) -> Option<u64> {
        fs.into_iter()
            .try_fold(0u64, |m, f| self.index_of(f).map(|i| m | (1 << i)))
    }

    pub fn theory_of(&self, mask: u64) -> Theory {
        self.formulas
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect()
    }

    /// Argument indices of formula `i`.
    pub fn arg_indices(&self, i: usize) -> Vec<usize> {
        self.formulas[i]
            .args()
            .iter()
            .map(|a| self.index_of(a).expect("domain is subformula-closed"))
            .collect()
    }

    pub fn is_superset_of(&self, other: &Domain) -> bool {
        other.formulas.iter().all(|f| self.contains(f))
    }
}

/// True when every argument of every member is itself a member.
pub fn is_subformula_closed(set: &Theory) -> bool {
    set.iter().all(|f| f.args().iter().all(|a| set.contains(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_arguments_first() {
        let p1 = Formula::atom(1);
        let n = Formula::compound("neg", vec![p1.clone()]);
        let nn = Formula::compound("neg", vec![n.clone()]);
        let d = Domain::closure_of([&nn]).unwrap();
        assert_eq!(d.formulas(), &[p1, n, nn.clone()]);
        assert_eq!(d.arg_indices(2), vec![1]);
        assert_eq!(d.mask_of([&nn]), Some(0b100));
        assert_eq!(d.theory_of(0b100), [nn].into_iter().collect());
    }

    #[test]
    fn closedness() {
        let p1 = Formula::atom(1);
        let n = Formula::compound("neg", vec![p1.clone()]);
        assert!(!is_subformula_closed(&[n.clone()].into_iter().collect()));
        assert!(is_subformula_closed(&[n, p1].into_iter().collect()));
    }
}
