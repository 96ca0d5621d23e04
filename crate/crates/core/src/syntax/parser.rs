//! Text syntax for formulas and sequents.
//!
//! ```text
//! formula ::= "p" INT | NAME | NAME "(" formula ("," formula)* ")"
//! sequent ::= [formula ("," formula)*] "=>" [formula]
//! ```
//!
//! Unicode symbols are accepted as aliases for the ASCII connective names
//! (`⊃` for `imp`, `¬` for `neg`, ...) and `⇒` for `=>`. The printer only
//! emits ASCII.

use thiserror::Error;

use super::formula::{is_atom_name, Atom, Formula, Signature};
use super::sequent::Sequent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("expected {expected}, found `{found}`")]
    Expected {
        expected: &'static str,
        found: String,
    },
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("connective `{name}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid atom `{0}`")]
    InvalidAtom(String),
}

const UNICODE_ALIASES: &[(char, &str)] = &[
    ('⊃', "imp"),
    ('¬', "neg"),
    ('⊥', "bot"),
    ('⇝', "simp"),
    ('▷', "aff"),
    ('▶', "waff"),
    ('⊄', "cni"),
    ('|', "nand"),
    ('∘', "circ"),
    ('∧', "and"),
    ('∨', "or"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    LParen,
    RParen,
    Comma,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => n.clone(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
            Tok::Arrow => "=>".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '⇒' => Tok::Arrow,
            '=' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Tok::Name(chars[start..=i].iter().collect())
            }
            c => match UNICODE_ALIASES.iter().find(|(u, _)| *u == c) {
                Some((_, name)) => Tok::Name((*name).to_string()),
                None => {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnexpectedChar(c),
                    })
                }
            },
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            end: text.chars().count(),
            sig,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(ParseErrorKind::Expected {
                expected: what,
                found: t.describe(),
            })),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd(what))),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let start = self.offset();
        let name = match self.peek() {
            Some(Tok::Name(n)) => n.clone(),
            Some(t) => {
                return Err(self.err(ParseErrorKind::Expected {
                    expected: "a formula",
                    found: t.describe(),
                }))
            }
            None => return Err(self.err(ParseErrorKind::UnexpectedEnd("a formula"))),
        };
        self.pos += 1;
        if is_atom_name(&name) {
            let atom = name[1..]
                .parse::<u32>()
                .ok()
                .and_then(Atom::new)
                .ok_or_else(|| ParseError {
                    position: start,
                    kind: ParseErrorKind::InvalidAtom(name.clone()),
                })?;
            return Ok(Formula::Atomic(atom));
        }
        let arity = self.sig.arity(&name).ok_or_else(|| ParseError {
            position: start,
            kind: ParseErrorKind::UnknownConnective(name.clone()),
        })?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            args.push(self.formula()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.formula()?);
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        if args.len() != arity {
            return Err(ParseError {
                position: start,
                kind: ParseErrorKind::ArityMismatch {
                    name,
                    expected: arity,
                    found: args.len(),
                },
            });
        }
        Ok(Formula::compound(&name, args))
    }

    fn sequent(&mut self) -> Result<Sequent, ParseError> {
        let mut ante = Vec::new();
        if self.peek() != Some(&Tok::Arrow) {
            ante.push(self.formula()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                ante.push(self.formula()?);
            }
        }
        self.expect(Tok::Arrow, "`=>`")?;
        let succ = if self.peek().is_some() {
            Some(self.formula()?)
        } else {
            None
        };
        Ok(Sequent::new(ante, succ))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(ParseErrorKind::Expected {
                expected: "end of input",
                found: t.describe(),
            })),
        }
    }
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sequent(text: &str, sig: &Signature) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

/// One sequent per non-blank line; `#` starts a comment. Errors carry the
/// 1-based line number.
pub fn parse_sequent_list(text: &str, sig: &Signature) -> Result<Vec<Sequent>, (usize, ParseError)> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_sequent(line, sig).map_err(|e| (no + 1, e))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::from_pairs([("imp", 2), ("bot", 0), ("neg", 1), ("circ", 1)]).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let f = parse_formula("imp(p1, p2)", &sig()).unwrap();
        assert_eq!(f, Formula::compound("imp", vec![Formula::atom(1), Formula::atom(2)]));
        assert_eq!(parse_formula("bot", &sig()).unwrap(), Formula::constant("bot"));
        let e = parse_formula("imp(p1)", &sig()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityMismatch { expected: 2, found: 1, .. }));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("imp(p1, foo)", &sig()).unwrap_err();
        assert_eq!(e.position, 8);
        assert_eq!(e.kind, ParseErrorKind::UnknownConnective("foo".into()));
        let e = parse_formula("imp(p1, p2", &sig()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd("`)`"));
        assert_eq!(parse_formula("p0", &sig()).unwrap_err().kind, ParseErrorKind::InvalidAtom("p0".into()));
        assert!(parse_formula("p1 p2", &sig()).is_err());
        assert!(matches!(
            parse_formula("p1 $", &sig()).unwrap_err().kind,
            ParseErrorKind::UnexpectedChar('$')
        ));
    }

    #[test]
    fn unicode_aliases() {
        let f = parse_formula("⊃(¬(p1), ⊥)", &sig()).unwrap();
        assert_eq!(f.to_string(), "imp(neg(p1), bot)");
        let s = parse_sequent("∘(p1) ⇒ p1", &sig()).unwrap();
        assert_eq!(s.to_string(), "circ(p1) => p1");
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("  =>  ", &sig()).unwrap();
        assert_eq!(s, Sequent::empty());
        let s = parse_sequent("p1, p2, p1 =>", &sig()).unwrap();
        assert_eq!(s.antecedent.len(), 2);
        assert!(s.succedent.is_none());
        assert!(parse_sequent("p1 => p2, p3", &sig()).is_err());
        assert!(parse_sequent("p1", &sig()).is_err());
    }

    #[test]
    fn sequent_lists() {
        let list = parse_sequent_list("# assumptions\n=> p1\n\np2 => # trailing\n", &sig()).unwrap();
        assert_eq!(list.len(), 2);
        let (line, _) = parse_sequent_list("=> p1\nimp(p1) =>\n", &sig()).unwrap_err();
        assert_eq!(line, 2);
    }
}
