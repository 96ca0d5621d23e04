use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A propositional variable `p<index>`, with `index >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub fn new(index: u32) -> Option<Atom> {
        (index >= 1).then_some(Atom(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Connective {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("connective `{0}` declared twice")]
    Duplicate(String),
    #[error("`{0}` is not a valid connective name")]
    InvalidName(String),
}

/// The connectives of a propositional language, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    connectives: Vec<Connective>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(
        pairs: impl IntoIterator<Item = (&'a str, usize)>,
    ) -> Result<Self, SignatureError> {
        let mut sig = Signature::new();
        for (name, arity) in pairs {
            sig.add(name, arity)?;
        }
        Ok(sig)
    }

    pub fn add(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if !is_connective_name(name) {
            return Err(SignatureError::InvalidName(name.to_string()));
        }
        if self.arity(name).is_some() {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        self.connectives.push(Connective {
            name: name.to_string(),
            arity,
        });
        Ok(())
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.connectives
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.arity)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.arity(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Connective> {
        self.connectives.iter()
    }

    pub fn len(&self) -> usize {
        self.connectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.connectives.is_empty()
    }

    /// Adds every connective of `other` not already present. Fails when the
    /// same name is declared with two different arities.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for c in other.iter() {
            match self.arity(&c.name) {
                Some(a) if a == c.arity => {}
                Some(_) => return Err(SignatureError::Duplicate(c.name.clone())),
                None => self.add(&c.name, c.arity)?,
            }
        }
        Ok(())
    }

    /// True when every connective of `self` occurs in `other` with the same arity.
    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.iter().all(|c| other.arity(&c.name) == Some(c.arity))
    }
}

/// Identifiers of the form `p<digits>` are reserved for atoms.
pub(crate) fn is_atom_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('p') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

pub(crate) fn is_connective_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !is_atom_name(name)
}

/// A formula: an atom, or a connective applied to argument formulas.
///
/// Equality and ordering are structural. Atoms sort before compound formulas.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atomic(Atom),
    Compound(Arc<str>, Vec<Formula>),
}

impl Formula {
    /// Panics when `index == 0`.
    pub fn atom(index: u32) -> Formula {
        Formula::Atomic(Atom::new(index).expect("atom indices start at 1"))
    }

    pub fn compound(name: &str, args: Vec<Formula>) -> Formula {
        Formula::Compound(Arc::from(name), args)
    }

    pub fn constant(name: &str) -> Formula {
        Formula::compound(name, Vec::new())
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atomic(_))
    }

    pub fn as_atom(&self) -> Option<Atom> {
        match self {
            Formula::Atomic(a) => Some(*a),
            Formula::Compound(..) => None,
        }
    }

    pub fn connective(&self) -> Option<&str> {
        match self {
            Formula::Atomic(_) => None,
            Formula::Compound(name, _) => Some(name),
        }
    }

    pub fn args(&self) -> &[Formula] {
        match self {
            Formula::Atomic(_) => &[],
            Formula::Compound(_, args) => args,
        }
    }

    /// Number of connective occurrences.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Atomic(_) => 0,
            Formula::Compound(_, args) => 1 + args.iter().map(Formula::complexity).sum::<usize>(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atomic(a) => {
                out.insert(*a);
            }
            Formula::Compound(_, args) => args.iter().for_each(|a| a.collect_atoms(out)),
        }
    }

    /// All subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    pub(crate) fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            for a in self.args() {
                a.collect_subformulas(out);
            }
        }
    }

    /// Checks arities and connective names against `sig`.
    pub fn check_signature(&self, sig: &Signature) -> Result<(), String> {
        match self {
            Formula::Atomic(_) => Ok(()),
            Formula::Compound(name, args) => {
                match sig.arity(name) {
                    None => return Err(format!("unknown connective `{name}`")),
                    Some(a) if a != args.len() => {
                        return Err(format!(
                            "connective `{name}` expects {a} arguments, got {}",
                            args.len()
                        ))
                    }
                    Some(_) => {}
                }
                args.iter().try_for_each(|a| a.check_signature(sig))
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atomic(a) => write!(f, "{a}"),
            Formula::Compound(name, args) if args.is_empty() => write!(f, "{name}"),
            Formula::Compound(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite set of formulas.
pub type Theory = BTreeSet<Formula>;

/// A succedent holds at most one formula.
pub type Succedent = Option<Formula>;

pub(crate) fn fmt_theory(theory: &Theory) -> String {
    theory
        .iter()
        .map(Formula::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
