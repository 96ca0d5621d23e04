//! Formulas, sequents, substitutions and their text syntax.

mod domain;
mod formula;
mod parser;
mod sequent;
mod substitution;

pub use domain::{is_subformula_closed, Domain, MAX_DOMAIN};
pub use formula::{Atom, Connective, Formula, Signature, SignatureError, Succedent, Theory};
pub use parser::{parse_formula, parse_sequent, parse_sequent_list, ParseError, ParseErrorKind};
pub use sequent::{classify_sequent, subformula_closure, Sequent, SequentKind};
pub use substitution::{apply_substitution, Substitution};

pub(crate) use formula::fmt_theory;
