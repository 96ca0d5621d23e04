//! Backtracking search for legal valuations.
//!
//! Formulas are assigned in domain order (arguments first). Each formula gets
//! a column: the up-closed set of worlds where it is true. The rules fix part
//! of every compound's column from its arguments: worlds where a right rule is
//! fulfilled must be in it, worlds where a left rule is fulfilled must not.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use thiserror::Error;

use crate::rules::{validate_system, CanonicalSystem, DomainRules, MappedClause};
use crate::syntax::{Domain, Formula, Sequent, MAX_DOMAIN};

use super::frame::Semiframe;

/// Largest number of worlds the search handles.
pub const MAX_WORLDS: usize = 32;

/// Default world bound for a domain of `u` formulas: `2^u`, capped at 16.
/// The flag is true when the cap cut the bound, making the search incomplete.
pub fn default_max_worlds(u: usize) -> (usize, bool) {
    if u >= 4 {
        (16, u > 4)
    } else {
        (1 << u, false)
    }
}

/// A finite poset given by the up-set of every element. Element 0 is least
/// in every rooted poset produced here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    pub up: Vec<u32>,
}

impl Poset {
    pub fn from_leq(leq: &[Vec<bool>]) -> Poset {
        Poset {
            up: leq
                .iter()
                .map(|row| row.iter().enumerate().fold(0, |m, (b, &x)| if x { m | 1 << b } else { m }))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn all(&self) -> u32 {
        if self.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.len()) - 1
        }
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n).map(|a| (0..n).map(|b| self.up[a] & (1 << b) != 0).collect()).collect()
    }

    /// All up-closed sets of elements, in increasing numeric order.
    pub fn upsets(&self) -> Vec<u32> {
        assert!(self.len() <= 20, "too many worlds to list up-sets");
        (0..=self.all())
            .filter(|&s| (0..self.len()).all(|a| s & (1 << a) == 0 || self.up[a] & !s == 0))
            .collect()
    }

    /// Elements whose whole up-set lies in `mask`.
    fn absolute(&self, mask: u32) -> u32 {
        self.up
            .iter()
            .enumerate()
            .fold(0, |m, (a, &u)| if u & !mask == 0 { m | 1 << a } else { m })
    }

    fn down_count(&self, a: usize) -> u32 {
        self.up.iter().filter(|&&u| u & (1 << a) != 0).count() as u32
    }

    /// A representative of the isomorphism class, or `None` if computing it
    /// would take too many permutations.
    fn canonical(&self) -> Option<Vec<u32>> {
        let n = self.len();
        let key = |a: usize| (self.down_count(a), self.up[a].count_ones());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| key(a));
        let blocks: Vec<Vec<usize>> = order
            .into_iter()
            .chunk_by(|&a| key(a))
            .into_iter()
            .map(|(_, g)| g.collect())
            .collect();
        let work: usize = blocks.iter().map(|b| (1..=b.len()).product::<usize>()).product();
        if work > 40_320 {
            return None;
        }
        let mut best: Option<Vec<u32>> = None;
        for choice in blocks
            .iter()
            .map(|b| b.iter().copied().permutations(b.len()))
            .multi_cartesian_product()
        {
            let perm: Vec<usize> = choice.into_iter().flatten().collect();
            let mut pos = vec![0; n];
            for (new, &old) in perm.iter().enumerate() {
                pos[old] = new;
            }
            let image: Vec<u32> = perm
                .iter()
                .map(|&old| (0..n).filter(|&b| self.up[old] & (1 << b) != 0).fold(0, |m, b| m | 1 << pos[b]))
                .collect();
            if best.as_ref().map_or(true, |b| image < *b) {
                best = Some(image);
            }
        }
        best
    }
}

fn dedupe(posets: Vec<Poset>) -> Vec<Poset> {
    let mut seen = HashSet::new();
    posets
        .into_iter()
        .filter(|p| match p.canonical() {
            Some(c) => seen.insert(c),
            None => true,
        })
        .collect()
}

/// Rooted families of subsets of a `u`-element set ordered by inclusion, as
/// posets, up to isomorphism, smallest first.
fn family_shapes(u: usize, max_worlds: usize) -> Vec<Poset> {
    let subsets: Vec<u32> = (0..1u32 << u).collect();
    let mut out = Vec::new();
    for &root in &subsets {
        let above: Vec<u32> = subsets.iter().copied().filter(|&s| s != root && s & root == root).collect();
        if above.len() > 20 {
            continue;
        }
        for pick in 0u32..1 << above.len() {
            if pick.count_ones() as usize + 1 > max_worlds {
                continue;
            }
            let mut fam = vec![root];
            fam.extend(above.iter().enumerate().filter(|(i, _)| pick & (1 << i) != 0).map(|(_, &s)| s));
            let up = fam
                .iter()
                .map(|&a| fam.iter().enumerate().fold(0, |m, (j, &b)| if a & b == a { m | 1 << j } else { m }))
                .collect();
            out.push(Poset { up });
        }
    }
    out.sort_by_key(|p| p.len());
    dedupe(out)
}

/// All rooted posets with at most `max_worlds` elements up to isomorphism,
/// grown by adding maximal elements.
fn rooted_posets(max_worlds: usize) -> Vec<Poset> {
    let mut level = vec![Poset { up: vec![1] }];
    let mut out = level.clone();
    for n in 1..max_worlds {
        let mut next = Vec::new();
        for p in &level {
            // the new element n sits above a nonempty down-closed set
            for d in 1u32..1 << n {
                let down_closed = (0..n).all(|a| d & (1 << a) == 0 || (0..n).all(|b| p.up[b] & (1 << a) == 0 || d & (1 << b) != 0));
                if !down_closed {
                    continue;
                }
                let mut up: Vec<u32> = p.up.iter().enumerate().map(|(a, &u)| if d & (1 << a) != 0 { u | 1 << n } else { u }).collect();
                up.push(1 << n);
                next.push(Poset { up });
            }
        }
        level = dedupe(next);
        out.extend(level.iter().cloned());
    }
    out
}

type ShapeCache = Mutex<HashMap<(usize, usize), Arc<Vec<Poset>>>>;

/// Poset shapes searched for a domain of `u` formulas: rooted inclusion
/// families over `u` elements (all rooted posets when `u > 4`).
pub fn poset_shapes(u: usize, max_worlds: usize) -> Arc<Vec<Poset>> {
    static CACHE: OnceLock<ShapeCache> = OnceLock::new();
    let max_worlds = max_worlds.min(MAX_WORLDS);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(u, max_worlds)) {
        return v.clone();
    }
    let shapes = Arc::new(if u <= 4 {
        family_shapes(u, max_worlds)
    } else {
        rooted_posets(max_worlds.min(8))
    });
    cache.lock().unwrap().insert((u, max_worlds), shapes.clone());
    shapes
}

/// Constraints of one search over a fixed domain.
pub(crate) struct Problem<'a> {
    rules: &'a DomainRules,
    pinned: Vec<Option<u32>>,
    /// Formulas that must be true / false at world 0.
    root_true: u64,
    root_false: u64,
    /// Sequents to check once formula `i` (their largest) is assigned.
    checks: Vec<Vec<MappedClause>>,
    /// Set when the empty sequent is required, which no frame satisfies.
    hopeless: bool,
}

fn clause_local(cols: &[u32], c: &MappedClause, all: u32) -> u32 {
    let mut m = c.succ.map_or(0, |i| cols[i]);
    let mut ante = c.ante;
    while ante != 0 {
        let i = ante.trailing_zeros() as usize;
        m |= !cols[i];
        ante &= ante - 1;
    }
    m & all
}

impl<'a> Problem<'a> {
    pub(crate) fn new(domain: &Domain, rules: &'a DomainRules) -> Self {
        Problem {
            rules,
            pinned: vec![None; domain.len()],
            root_true: 0,
            root_false: 0,
            checks: vec![Vec::new(); domain.len()],
            hopeless: false,
        }
    }

    pub(crate) fn refute_at_root(&mut self, ante: u64, succ: Option<usize>) {
        self.root_true |= ante;
        if let Some(i) = succ {
            self.root_false |= 1 << i;
        }
    }

    /// The sequent must hold at every world.
    pub(crate) fn require(&mut self, ante: u64, succ: Option<usize>) {
        let top = (0..64).rev().find(|&i| ante & (1u64 << i) != 0);
        match top.into_iter().chain(succ).max() {
            Some(i) => self.checks[i].push(MappedClause { ante, succ }),
            None => self.hopeless = true,
        }
    }

    pub(crate) fn pin(&mut self, formula: usize, column: u32) {
        self.pinned[formula] = Some(column);
    }

    /// Calls `visit` on every solution over `poset` until it returns false.
    /// Returns false if stopped early.
    pub(crate) fn solve(&self, poset: &Poset, upsets: &[u32], visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if self.hopeless {
            return true;
        }
        let mut cols = vec![0u32; self.pinned.len()];
        self.assign(0, poset, upsets, &mut cols, visit)
    }

    fn forced(&self, i: usize, poset: &Poset, cols: &[u32]) -> (u32, u32) {
        let all = poset.all();
        let fulfilled = |inst: &crate::rules::RuleInstance| {
            let hard = inst
                .premises
                .iter()
                .fold(all, |m, c| m & poset.absolute(clause_local(cols, c, all)));
            inst.soft.iter().fold(hard, |m, c| m & clause_local(cols, c, all))
        };
        let t = self.rules.right[i].iter().fold(0, |m, r| m | fulfilled(r));
        let f = self.rules.left[i].iter().fold(0, |m, r| m | fulfilled(r));
        (t, f)
    }

    fn assign(
        &self,
        i: usize,
        poset: &Poset,
        upsets: &[u32],
        cols: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if i == cols.len() {
            return visit(cols);
        }
        let all = poset.all();
        let (must, must_not) = self.forced(i, poset, cols);
        if must & must_not != 0 {
            return true;
        }
        let must = must | (self.root_true >> i & 1) as u32;
        let must_not = must_not | (self.root_false >> i & 1) as u32;
        let candidates: Box<dyn Iterator<Item = u32>> = match self.pinned[i] {
            Some(c) => Box::new(std::iter::once(c)),
            None => Box::new(upsets.iter().copied()),
        };
        for c in candidates {
            if c & must != must || c & must_not != 0 {
                continue;
            }
            cols[i] = c;
            if !self.checks[i].iter().all(|q| clause_local(cols, q, all) == all) {
                continue;
            }
            if !self.assign(i + 1, poset, upsets, cols, visit) {
                return false;
            }
        }
        true
    }
}

fn frame_of(domain: &Domain, poset: &Poset, cols: &[u32]) -> Semiframe {
    let mut f = Semiframe::new(domain.clone(), poset.leq_matrix());
    for a in 0..poset.len() {
        for (i, c) in cols.iter().enumerate() {
            f.valuation[a][i] = c & (1 << a) != 0;
        }
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("{0}")]
    Language(String),
    #[error("domain of {0} formulas is too large")]
    DomainTooLarge(usize),
}

fn check_system(g: &CanonicalSystem) -> Result<(), SearchError> {
    let diags = validate_system(g);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(SearchError::InvalidSystem(diags.iter().map(|d| d.to_string()).join("; ")))
    }
}

/// Looks for a legal frame with at most `max_worlds` worlds that models the
/// assumptions and falsifies the goal at its least world.
///
/// Sound for every valid system. Complete for coherent systems when
/// `max_worlds ≥ 2^|U|` and `|U| ≤ 4`.
pub fn countermodel_search(
    g: &CanonicalSystem,
    assumptions: &[Sequent],
    goal: &Sequent,
    max_worlds: usize,
) -> Result<Option<Semiframe>, SearchError> {
    check_system(g)?;
    for s in assumptions.iter().chain([goal]) {
        s.check_signature(&g.signature)
            .map_err(|m| SearchError::Language(format!("`{s}`: {m}")))?;
    }
    let domain = Domain::from_sequents(assumptions.iter().chain([goal]))
        .ok_or(SearchError::DomainTooLarge(MAX_DOMAIN + 1))?;
    let rules = DomainRules::new(g, &domain);
    let enc = |s: &Sequent| {
        (
            domain.mask_of(&s.antecedent).unwrap(),
            s.succedent.as_ref().map(|f| domain.index_of(f).unwrap()),
        )
    };
    let mut problem = Problem::new(&domain, &rules);
    for s in assumptions {
        let (a, e) = enc(s);
        problem.require(a, e);
    }
    let (a, e) = enc(goal);
    problem.refute_at_root(a, e);

    for poset in poset_shapes(domain.len(), max_worlds).iter() {
        let upsets = poset.upsets();
        let mut found = None;
        problem.solve(poset, &upsets, &mut |cols| {
            found = Some(frame_of(&domain, poset, cols));
            false
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Every legal frame over `domain` among the searched poset shapes with at
/// most `max_worlds` worlds.
pub fn legal_frames(g: &CanonicalSystem, domain: &Domain, max_worlds: usize) -> Result<Vec<Semiframe>, SearchError> {
    check_system(g)?;
    let rules = DomainRules::new(g, domain);
    let problem = Problem::new(domain, &rules);
    let mut out = Vec::new();
    for poset in poset_shapes(domain.len(), max_worlds).iter() {
        let upsets = poset.upsets();
        problem.solve(poset, &upsets, &mut |cols| {
            out.push(frame_of(domain, poset, cols));
            true
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("formula `{0}` of the frame is missing from the target domain")]
    NotSuperset(Formula),
    #[error("no legal extension exists (the system is incoherent)")]
    NoExtension,
    #[error("the frame has more than {MAX_WORLDS} worlds")]
    TooManyWorlds,
    #[error("invalid system: {0}")]
    InvalidSystem(String),
}

fn extension_problem<'a>(
    f: &Semiframe,
    u2: &Domain,
    rules: &'a DomainRules,
) -> Result<(Problem<'a>, Poset), ExtendError> {
    if f.len() > MAX_WORLDS {
        return Err(ExtendError::TooManyWorlds);
    }
    let mut p = Problem::new(u2, rules);
    for (j, phi) in f.domain.formulas().iter().enumerate() {
        let i = u2.index_of(phi).ok_or_else(|| ExtendError::NotSuperset(phi.clone()))?;
        let col = (0..f.len()).fold(0u32, |m, a| if f.valuation[a][j] { m | 1 << a } else { m });
        p.pin(i, col);
    }
    Ok((p, Poset::from_leq(&f.leq)))
}

fn relabel(mut out: Semiframe, f: &Semiframe) -> Semiframe {
    out.labels = f.labels.clone();
    out
}

/// Every legal valuation over `u2` on the worlds and order of `f` that agrees
/// with `f` on its domain.
pub fn enumerate_legal_extensions(
    g: &CanonicalSystem,
    f: &Semiframe,
    u2: &Domain,
) -> Result<Vec<Semiframe>, ExtendError> {
    check_system(g).map_err(|e| ExtendError::InvalidSystem(e.to_string()))?;
    let rules = DomainRules::new(g, u2);
    let (problem, poset) = extension_problem(f, u2, &rules)?;
    let upsets = poset.upsets();
    let mut out = Vec::new();
    problem.solve(&poset, &upsets, &mut |cols| {
        out.push(relabel(frame_of(u2, &poset, cols), f));
        true
    });
    Ok(out)
}

/// A legal frame over `u2` with the worlds and order of `f`, agreeing with `f`
/// on its domain.
pub fn extend_semiframe(g: &CanonicalSystem, f: &Semiframe, u2: &Domain) -> Result<Semiframe, ExtendError> {
    check_system(g).map_err(|e| ExtendError::InvalidSystem(e.to_string()))?;
    let rules = DomainRules::new(g, u2);
    let (problem, poset) = extension_problem(f, u2, &rules)?;
    let upsets = poset.upsets();
    let mut found = None;
    problem.solve(&poset, &upsets, &mut |cols| {
        found = Some(relabel(frame_of(u2, &poset, cols), f));
        false
    });
    found.ok_or(ExtendError::NoExtension)
}
