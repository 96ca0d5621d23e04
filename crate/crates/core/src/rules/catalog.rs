//! Built-in single-connective systems.

use super::dsl::parse_system;
use super::system::CanonicalSystem;

pub struct CatalogEntry {
    pub name: &'static str,
    pub system: CanonicalSystem,
    /// Standard conjunction/disjunction rules, shipped for convenience rather
    /// than as part of the connective collection proper.
    pub supplementary: bool,
}

const SOURCES: &[(&str, bool, &str)] = &[
    (
        "imp",
        false,
        "system imp
connective imp/2
rule left imp : hard(=> p1) soft(p2 =>) |- (imp =>)
rule right imp : (p1 => p2) |- (=> imp)",
    ),
    (
        "bot",
        false,
        "system bot
connective bot/0
rule left bot : |- (bot =>)",
    ),
    (
        "neg",
        false,
        "system neg
connective neg/1
rule left neg : hard(=> p1) |- (neg =>)
rule right neg : (p1 =>) |- (=> neg)",
    ),
    (
        "simp",
        false,
        "system simp
connective simp/2
rule left simp : hard(=> p1) soft(p2 =>) |- (simp =>)
rule right simp : (=> p2) |- (=> simp)",
    ),
    (
        "aff",
        false,
        "system aff
connective aff/1
rule left aff : soft(p1 =>) |- (aff =>)
rule right aff : (=> p1) |- (=> aff)",
    ),
    (
        "waff",
        false,
        "system waff
connective waff/1
rule left waff : hard(p1 =>) |- (waff =>)
rule right waff : (=> p1) |- (=> waff)",
    ),
    (
        "cni",
        false,
        "system cni
connective cni/2
rule left cni : hard(p2 => p1) |- (cni =>)
rule right cni : (p1 =>) (=> p2) |- (=> cni)",
    ),
    (
        "nand",
        false,
        "system nand
connective nand/2
rule left nand : hard(=> p1) hard(=> p2) |- (nand =>)
rule right nand : (p1 =>) |- (=> nand)
rule right nand : (p2 =>) |- (=> nand)",
    ),
    (
        "circ",
        false,
        "system circ
connective circ/1
rule left circ : soft(p1 =>) |- (circ =>)
rule right circ : (p1 =>) |- (=> circ)",
    ),
    (
        "and",
        true,
        "system and
connective and/2
rule left and : soft(p1, p2 =>) |- (and =>)
rule right and : (=> p1) (=> p2) |- (=> and)",
    ),
    (
        "or",
        true,
        "system or
connective or/2
rule left or : soft(p1 =>) soft(p2 =>) |- (or =>)
rule right or : (=> p1) |- (=> or)
rule right or : (=> p2) |- (=> or)",
    ),
];

/// Every built-in system, in catalog order.
pub fn builtin_systems() -> Vec<CatalogEntry> {
    SOURCES
        .iter()
        .map(|(name, supplementary, src)| CatalogEntry {
            name,
            system: parse_system(src).expect("built-in systems parse"),
            supplementary: *supplementary,
        })
        .collect()
}

pub fn builtin(name: &str) -> Option<CanonicalSystem> {
    SOURCES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, src)| parse_system(src).expect("built-in systems parse"))
}

/// Union of the named built-in systems.
pub fn builtin_union(names: &[&str], system_name: &str) -> Option<CanonicalSystem> {
    let mut out: Option<CanonicalSystem> = None;
    for n in names {
        let g = builtin(n)?;
        out = Some(match out {
            None => g,
            Some(acc) => acc.union(&g, system_name).ok()?,
        });
    }
    out.map(|mut g| {
        g.name = system_name.to_string();
        g
    })
}
