use std::collections::BTreeSet;
use std::fmt;

use super::formula::{fmt_theory, Formula, Signature, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequentKind {
    Definite,
    Negative,
}

/// `Γ ⇒ E` with a finite antecedent set and at most one succedent formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedent: Theory,
    pub succedent: Option<Formula>,
}

impl Sequent {
    pub fn new(antecedent: impl IntoIterator<Item = Formula>, succedent: Option<Formula>) -> Self {
        Sequent {
            antecedent: antecedent.into_iter().collect(),
            succedent,
        }
    }

    /// The empty sequent `⇒`.
    pub fn empty() -> Self {
        Sequent::new([], None)
    }

    /// `φ ⇒ φ`.
    pub fn axiom(f: Formula) -> Self {
        Sequent::new([f.clone()], Some(f))
    }

    pub fn kind(&self) -> SequentKind {
        if self.succedent.is_some() {
            SequentKind::Definite
        } else {
            SequentKind::Negative
        }
    }

    pub fn is_definite(&self) -> bool {
        self.kind() == SequentKind::Definite
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(self.succedent.iter())
    }

    pub fn check_signature(&self, sig: &Signature) -> Result<(), String> {
        self.formulas().try_for_each(|f| f.check_signature(sig))
    }
}

pub fn classify_sequent(s: &Sequent) -> SequentKind {
    s.kind()
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante = fmt_theory(&self.antecedent);
        match (&self.succedent, ante.is_empty()) {
            (None, true) => write!(f, "=>"),
            (None, false) => write!(f, "{ante} =>"),
            (Some(s), true) => write!(f, "=> {s}"),
            (Some(s), false) => write!(f, "{ante} => {s}"),
        }
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Smallest set containing every formula of every sequent and closed under
/// immediate subformulas.
pub fn subformula_closure<'a>(seqs: impl IntoIterator<Item = &'a Sequent>) -> Theory {
    let mut out = BTreeSet::new();
    for s in seqs {
        for f in s.formulas() {
            f.collect_subformulas(&mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn imp(a: Formula, b: Formula) -> Formula {
        Formula::compound("imp", vec![a, b])
    }

    #[test]
    fn classification() {
        let p1 = Formula::atom(1);
        let p2 = Formula::atom(2);
        assert_eq!(classify_sequent(&Sequent::new([p1.clone()], Some(p2.clone()))), SequentKind::Definite);
        assert_eq!(classify_sequent(&Sequent::new([p1], None)), SequentKind::Negative);
        assert_eq!(classify_sequent(&Sequent::new([], Some(p2))), SequentKind::Definite);
    }

    #[test]
    fn closure_examples() {
        let (p1, p2) = (Formula::atom(1), Formula::atom(2));
        let s = Sequent::new([], Some(imp(p1.clone(), p2.clone())));
        let c = subformula_closure([&s]);
        assert_eq!(c, [imp(p1.clone(), p2.clone()), p1.clone(), p2.clone()].into_iter().collect());

        let s = Sequent::new([p1.clone()], None);
        assert_eq!(subformula_closure([&s]), [p1.clone()].into_iter().collect());

        let inner = imp(p1.clone(), p2.clone());
        let outer = imp(inner.clone(), p1.clone());
        let s = Sequent::new([], Some(outer.clone()));
        let expected: Theory = [outer, inner, p1, p2].into_iter().collect();
        assert_eq!(subformula_closure([&s]), expected);
    }

    #[test]
    fn display() {
        let p1 = Formula::atom(1);
        assert_eq!(Sequent::empty().to_string(), "=>");
        assert_eq!(Sequent::new([p1.clone()], None).to_string(), "p1 =>");
        assert_eq!(Sequent::new([], Some(p1.clone())).to_string(), "=> p1");
        assert_eq!(Sequent::axiom(p1).to_string(), "p1 => p1");
    }
}
