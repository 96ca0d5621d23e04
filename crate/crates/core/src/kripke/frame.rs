use std::fmt;

use thiserror::Error;

use crate::syntax::{is_subformula_closed, Domain, Formula, Sequent, Theory};

/// A finite poset of worlds with a two-valued valuation over a
/// subformula-closed domain. Worlds are `0..len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semiframe {
    pub domain: Domain,
    /// Display names, one per world.
    pub labels: Vec<String>,
    /// `leq[a][b]` iff `a ≤ b`.
    pub leq: Vec<Vec<bool>>,
    /// `valuation[a][i]` is the value of domain formula `i` at world `a`.
    pub valuation: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrameDiagnostic {
    #[error("the frame has no worlds")]
    NoWorlds,
    #[error("order or valuation rows do not match the number of worlds")]
    Shape,
    #[error("order is not reflexive at {0}")]
    NotReflexive(String),
    #[error("order is not antisymmetric: {0} and {1}")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(String, String, String),
    #[error("domain is not closed under subformulas: `{0}` has a missing argument")]
    NotClosed(Formula),
    #[error("valuation row of {0} has the wrong length")]
    NotTotal(String),
    #[error("persistence fails: `{formula}` is t at {lower} but f at {upper}")]
    Persistence {
        lower: String,
        upper: String,
        formula: Formula,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("formula `{0}` is outside the frame's domain")]
pub struct OutsideDomain(pub Formula);

impl Semiframe {
    /// A frame with all formulas false everywhere.
    pub fn new(domain: Domain, leq: Vec<Vec<bool>>) -> Self {
        let n = leq.len();
        Semiframe {
            labels: (0..n).map(|i| format!("w{i}")).collect(),
            valuation: vec![vec![false; domain.len()]; n],
            domain,
            leq,
        }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn worlds(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn world_named(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Worlds `b ≥ a`.
    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.worlds().filter(move |&b| self.leq[a][b])
    }

    pub fn value(&self, world: usize, f: &Formula) -> Result<bool, OutsideDomain> {
        let i = self.domain.index_of(f).ok_or_else(|| OutsideDomain(f.clone()))?;
        Ok(self.valuation[world][i])
    }

    pub fn set_value(&mut self, world: usize, f: &Formula, value: bool) -> Result<(), OutsideDomain> {
        let i = self.domain.index_of(f).ok_or_else(|| OutsideDomain(f.clone()))?;
        self.valuation[world][i] = value;
        Ok(())
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.worlds() {
            for b in self.worlds() {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let between = self
                    .worlds()
                    .any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The same worlds and order over a smaller domain.
    pub fn restrict(&self, domain: &Domain) -> Result<Semiframe, OutsideDomain> {
        let idx: Vec<usize> = domain
            .formulas()
            .iter()
            .map(|f| self.domain.index_of(f).ok_or_else(|| OutsideDomain(f.clone())))
            .collect::<Result<_, _>>()?;
        Ok(Semiframe {
            domain: domain.clone(),
            labels: self.labels.clone(),
            leq: self.leq.clone(),
            valuation: self
                .valuation
                .iter()
                .map(|row| idx.iter().map(|&i| row[i]).collect())
                .collect(),
        })
    }

    /// The subframe of the worlds above `root`.
    pub fn generated_by(&self, root: usize) -> Semiframe {
        let keep: Vec<usize> = self.above(root).collect();
        Semiframe {
            domain: self.domain.clone(),
            labels: keep.iter().map(|&a| self.labels[a].clone()).collect(),
            leq: keep.iter().map(|&a| keep.iter().map(|&b| self.leq[a][b]).collect()).collect(),
            valuation: keep.iter().map(|&a| self.valuation[a].clone()).collect(),
        }
    }

    fn encode(&self, s: &Sequent) -> Result<(Vec<usize>, Option<usize>), OutsideDomain> {
        let idx = |f: &Formula| self.domain.index_of(f).ok_or_else(|| OutsideDomain(f.clone()));
        let ante = s.antecedent.iter().map(idx).collect::<Result<_, _>>()?;
        let succ = s.succedent.as_ref().map(idx).transpose()?;
        Ok((ante, succ))
    }
}

impl fmt::Display for Semiframe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self
            .covering_pairs()
            .iter()
            .map(|(a, b)| format!("{} < {}", self.labels[*a], self.labels[*b]))
            .collect();
        writeln!(f, "worlds: {}", self.labels.join(", "))?;
        writeln!(f, "order: {}", if order.is_empty() { "(discrete)".into() } else { order.join(", ") })?;
        for a in self.worlds() {
            let vals: Vec<String> = self
                .domain
                .formulas()
                .iter()
                .zip(&self.valuation[a])
                .map(|(phi, v)| format!("{phi}={}", if *v { "t" } else { "f" }))
                .collect();
            writeln!(f, "  {}: {}", self.labels[a], vals.join(", "))?;
        }
        Ok(())
    }
}

/// Verifies the order axioms, closure of the domain, totality and persistence.
pub fn check_semiframe(f: &Semiframe) -> Result<(), Vec<FrameDiagnostic>> {
    let n = f.len();
    if n == 0 {
        return Err(vec![FrameDiagnostic::NoWorlds]);
    }
    if f.leq.iter().any(|r| r.len() != n) || f.valuation.len() != n || f.labels.len() != n {
        return Err(vec![FrameDiagnostic::Shape]);
    }
    let name = |a: usize| f.labels[a].clone();
    let mut out = Vec::new();
    for a in 0..n {
        if !f.leq[a][a] {
            out.push(FrameDiagnostic::NotReflexive(name(a)));
        }
        for b in 0..n {
            if a < b && f.leq[a][b] && f.leq[b][a] {
                out.push(FrameDiagnostic::NotAntisymmetric(name(a), name(b)));
            }
            for c in 0..n {
                if f.leq[a][b] && f.leq[b][c] && !f.leq[a][c] {
                    out.push(FrameDiagnostic::NotTransitive(name(a), name(b), name(c)));
                }
            }
        }
    }
    let set: Theory = f.domain.formulas().iter().cloned().collect();
    if !is_subformula_closed(&set) {
        for phi in f.domain.formulas() {
            if phi.args().iter().any(|x| !set.contains(x)) {
                out.push(FrameDiagnostic::NotClosed(phi.clone()));
            }
        }
    }
    for a in 0..n {
        if f.valuation[a].len() != f.domain.len() {
            out.push(FrameDiagnostic::NotTotal(name(a)));
        }
    }
    if out.iter().any(|d| matches!(d, FrameDiagnostic::NotTotal(_))) {
        return Err(out);
    }
    for a in 0..n {
        for b in 0..n {
            if a == b || !f.leq[a][b] {
                continue;
            }
            for (i, phi) in f.domain.formulas().iter().enumerate() {
                if f.valuation[a][i] && !f.valuation[b][i] {
                    out.push(FrameDiagnostic::Persistence {
                        lower: name(a),
                        upper: name(b),
                        formula: phi.clone(),
                    });
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn local(f: &Semiframe, a: usize, ante: &[usize], succ: Option<usize>) -> bool {
    ante.iter().any(|&i| !f.valuation[a][i]) || succ.is_some_and(|i| f.valuation[a][i])
}

/// Some antecedent formula is f at `world`, or the succedent is t there.
pub fn locally_true(f: &Semiframe, world: usize, s: &Sequent) -> Result<bool, OutsideDomain> {
    let (ante, succ) = f.encode(s)?;
    Ok(local(f, world, &ante, succ))
}

/// Locally true at every world above `world`.
pub fn true_in(f: &Semiframe, world: usize, s: &Sequent) -> Result<bool, OutsideDomain> {
    let (ante, succ) = f.encode(s)?;
    Ok(f.above(world).all(|b| local(f, b, &ante, succ)))
}

/// Every sequent is true at every world. Both readings (locally true
/// everywhere, absolutely true everywhere) are computed and must agree.
pub fn is_model<'a>(f: &Semiframe, seqs: impl IntoIterator<Item = &'a Sequent>) -> Result<bool, OutsideDomain> {
    for s in seqs {
        let (ante, succ) = f.encode(s)?;
        let everywhere_local = f.worlds().all(|a| local(f, a, &ante, succ));
        let everywhere_absolute = f.worlds().all(|a| f.above(a).all(|b| local(f, b, &ante, succ)));
        assert_eq!(
            everywhere_local, everywhere_absolute,
            "local and absolute model-hood disagree on `{s}`"
        );
        if !everywhere_local {
            return Ok(false);
        }
    }
    Ok(true)
}
