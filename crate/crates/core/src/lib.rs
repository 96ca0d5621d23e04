//! Canonical single-conclusion sequent systems.
//!
//! The crate covers the whole pipeline for systems built from canonical
//! introduction rules over non-strict sequents `Γ ⇒ E` (`E` empty or a
//! singleton):
//!
//! * [`syntax`]: formulas, sequents, substitutions and their text syntax;
//! * [`rules`]: canonical rules, systems, the definition language and a catalog;
//! * [`coherence`]: the coherence criterion, with witnesses either way;
//! * [`derivation`]: proof objects, the proof checker and proof rewriting;
//! * [`decision`]: derivability by forward saturation, with proof extraction;
//! * [`kripke`]: non-deterministic Kripke semiframes, legality, model checking
//!   and countermodel construction.

pub mod coherence;
pub mod decision;
pub mod derivation;
pub mod kripke;
pub mod rules;
pub mod syntax;

pub use rules::{builtin, builtin_systems, parse_system, CanonicalSystem};
pub use syntax::{parse_formula, parse_sequent, Formula, Sequent, Signature, Substitution, Theory};
