//! Canonical left and right introduction rules, whole systems, the system
//! definition language and the built-in catalog.

mod catalog;
mod dsl;
mod instances;
mod rule;
mod system;

pub use catalog::{builtin, builtin_systems, builtin_union, CatalogEntry};
pub use dsl::{parse_system, print_system, DslError};
pub use instances::{DomainRules, MappedClause, RuleInstance};
pub use rule::{instantiate_left, instantiate_right, Clause, LeftRule, RightRule, RuleRef, Side};
pub use system::{is_definite_system, validate_system, CanonicalSystem, Diagnostic, DiagnosticKind};
