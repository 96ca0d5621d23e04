//! Line-oriented system definition language.
//!
//! ```text
//! system Int
//! connective imp/2
//! connective bot/0
//! rule right imp : (p1 => p2) |- (=> imp)
//! rule left  imp : hard(=> p1) soft(p2 =>) |- (imp =>)
//! rule left  bot : |- (bot =>)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::syntax::{Signature, SignatureError};

use super::rule::{Clause, LeftRule, RightRule};
use super::system::CanonicalSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct DslError {
    pub line: usize,
    pub message: String,
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.s[self.pos..].chars().next() {
            if c.is_whitespace() || c == ',' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), String> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(format!("expected `{lit}` near `{}`", self.rest().trim()))
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn atom(&mut self) -> Result<Option<u32>, String> {
        self.skip_ws();
        if !self.rest().starts_with('p') {
            return Ok(None);
        }
        let w = self.word().unwrap();
        w[1..]
            .parse::<u32>()
            .ok()
            .filter(|&i| i >= 1)
            .map(Some)
            .ok_or_else(|| format!("`{w}` is not a schematic atom"))
    }

    /// `[atom ("," atom)*] "=>" [atom]` up to the closing parenthesis.
    fn clause(&mut self) -> Result<Clause, String> {
        let mut ante = Vec::new();
        while let Some(a) = self.atom()? {
            ante.push(a);
        }
        self.expect("=>")?;
        let succ = self.atom()?;
        Ok(Clause::new(ante, succ))
    }
}

enum Premise {
    Plain(Clause),
    Hard(Clause),
    Soft(Clause),
}

fn parse_premises(text: &str) -> Result<Vec<Premise>, String> {
    let mut c = Cursor { s: text, pos: 0 };
    let mut out = Vec::new();
    loop {
        c.skip_ws();
        if c.rest().is_empty() {
            return Ok(out);
        }
        let p = if c.eat("hard") {
            c.expect("(")?;
            Premise::Hard(c.clause()?)
        } else if c.eat("soft") {
            c.expect("(")?;
            Premise::Soft(c.clause()?)
        } else if c.eat("(") {
            Premise::Plain(c.clause()?)
        } else {
            return Err(format!("unexpected `{}` in premises", c.rest().trim()));
        };
        c.expect(")")?;
        out.push(p);
    }
}

fn strip_parens(text: &str) -> Option<&str> {
    text.trim().strip_prefix('(')?.strip_suffix(')')
}

/// Parses a system definition.
pub fn parse_system(text: &str) -> Result<CanonicalSystem, DslError> {
    let mut name: Option<String> = None;
    let mut sig = Signature::new();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| DslError { line: no + 1, message };
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "system" => {
                if name.is_some() {
                    return Err(err("duplicate `system` declaration".into()));
                }
                if rest.is_empty() {
                    return Err(err("missing system name".into()));
                }
                name = Some(rest.to_string());
            }
            "connective" => {
                let (cname, arity) = rest
                    .split_once('/')
                    .ok_or_else(|| err("expected `connective NAME/ARITY`".into()))?;
                let arity: usize = arity
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad arity `{}`", arity.trim())))?;
                sig.add(cname.trim(), arity).map_err(|e: SignatureError| err(e.to_string()))?;
            }
            "rule" => {
                let (side, rest) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("expected `rule left|right NAME : ...`".into()))?;
                let (cname, body) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected `:` after the connective name".into()))?;
                let cname = cname.trim();
                let arity = sig
                    .arity(cname)
                    .ok_or_else(|| err(format!("connective `{cname}` is not declared")))?;
                let (premises, conclusion) = body
                    .split_once("|-")
                    .ok_or_else(|| err("expected `|-` before the conclusion".into()))?;
                let conclusion: String = strip_parens(conclusion)
                    .ok_or_else(|| err("conclusion must be parenthesised".into()))?
                    .split_whitespace()
                    .collect();
                let premises = parse_premises(premises).map_err(err)?;
                match side {
                    "right" => {
                        if conclusion != format!("=>{cname}") {
                            return Err(err(format!("right rule conclusion must be `(=> {cname})`")));
                        }
                        let mut clauses = Vec::new();
                        for p in premises {
                            match p {
                                Premise::Plain(c) => clauses.push(c),
                                _ => return Err(err("hard/soft premises only occur in left rules".into())),
                            }
                        }
                        right.push(RightRule::new(cname, arity, clauses));
                    }
                    "left" => {
                        if conclusion != format!("{cname}=>") {
                            return Err(err(format!("left rule conclusion must be `({cname} =>)`")));
                        }
                        let (mut hard, mut soft) = (Vec::new(), Vec::new());
                        for p in premises {
                            match p {
                                Premise::Hard(c) => hard.push(c),
                                Premise::Soft(c) if c.is_definite() => {
                                    return Err(err(format!("soft premise ({c}) must be negative")))
                                }
                                Premise::Soft(c) => soft.push(c),
                                Premise::Plain(_) => {
                                    return Err(err("left rule premises must be tagged hard(...) or soft(...)".into()))
                                }
                            }
                        }
                        left.push(LeftRule::new(cname, arity, hard, soft));
                    }
                    other => return Err(err(format!("unknown rule side `{other}`"))),
                }
            }
            other => return Err(err(format!("unknown declaration `{other}`"))),
        }
    }
    Ok(CanonicalSystem {
        name: name.unwrap_or_else(|| "unnamed".into()),
        signature: sig,
        right_rules: right,
        left_rules: left,
    })
}

/// Renders a system in the definition language; `parse_system` reads it back.
pub fn print_system(g: &CanonicalSystem) -> String {
    let mut out = String::new();
    writeln!(out, "system {}", g.name).unwrap();
    for c in g.signature.iter() {
        writeln!(out, "connective {}/{}", c.name, c.arity).unwrap();
    }
    for c in g.signature.iter() {
        for (_, r) in g.left_rules_for(&c.name) {
            let mut prem: Vec<String> = r.hard.iter().map(|c| format!("hard({c})")).collect();
            prem.extend(r.soft.iter().map(|c| format!("soft({c})")));
            let sep = if prem.is_empty() { "" } else { " " };
            writeln!(out, "rule left {} : {}{sep}|- ({} =>)", c.name, prem.join(" "), c.name).unwrap();
        }
        for (_, r) in g.right_rules_for(&c.name) {
            let prem: Vec<String> = r.premises.iter().map(|c| format!("({c})")).collect();
            let sep = if prem.is_empty() { "" } else { " " };
            writeln!(out, "rule right {} : {}{sep}|- (=> {})", c.name, prem.join(" "), c.name).unwrap();
        }
    }
    out
}
