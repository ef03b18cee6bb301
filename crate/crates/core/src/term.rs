//! Process terms for finite MTSs and LTSs and their expansion into
//! transition systems.
//!
//! Expanded states are named by the canonical printed form of the subterm
//! they stand for, so equal subterms collapse into one state and two
//! expansions of the same term are identical.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::action::{Action, Signature};
use crate::error::{Error, Result};
use crate::system::{Lts, Mts, StateId, Transition};

/// `t ::= 0 | w | a.t | a!t | t + t`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MtsTerm {
    Zero,
    Omega,
    May(Action, Box<MtsTerm>),
    Must(Action, Box<MtsTerm>),
    Sum(Box<MtsTerm>, Box<MtsTerm>),
}

/// `t ::= 0 | w | a.t | t + t`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LtsTerm {
    Zero,
    Omega,
    Prefix(Action, Box<LtsTerm>),
    Sum(Box<LtsTerm>, Box<LtsTerm>),
}

impl MtsTerm {
    pub fn may(a: Action, t: MtsTerm) -> MtsTerm {
        MtsTerm::May(a, Box::new(t))
    }

    pub fn must(a: Action, t: MtsTerm) -> MtsTerm {
        MtsTerm::Must(a, Box::new(t))
    }

    pub fn sum(l: MtsTerm, r: MtsTerm) -> MtsTerm {
        MtsTerm::Sum(Box::new(l), Box::new(r))
    }

    pub fn labels(&self) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<Action>) {
        match self {
            MtsTerm::Zero | MtsTerm::Omega => {}
            MtsTerm::May(a, t) | MtsTerm::Must(a, t) => {
                out.insert(a.clone());
                t.collect_labels(out);
            }
            MtsTerm::Sum(l, r) => {
                l.collect_labels(out);
                r.collect_labels(out);
            }
        }
    }

    /// Height of the syntax tree; constants have height 0 and both
    /// prefixes and `+` add one.
    pub fn depth(&self) -> usize {
        match self {
            MtsTerm::Zero | MtsTerm::Omega => 0,
            MtsTerm::May(_, t) | MtsTerm::Must(_, t) => 1 + t.depth(),
            MtsTerm::Sum(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// The non-sum summands of a term, left to right.
    pub fn summands(&self) -> Vec<&MtsTerm> {
        match self {
            MtsTerm::Sum(l, r) => {
                let mut v = l.summands();
                v.extend(r.summands());
                v
            }
            t => vec![t],
        }
    }

    /// May transitions of the universal MTS over `actions` leaving this term.
    pub fn may_steps(&self, actions: &BTreeSet<Action>) -> BTreeSet<(Action, MtsTerm)> {
        let mut out = BTreeSet::new();
        for s in self.summands() {
            match s {
                MtsTerm::Zero | MtsTerm::Sum(..) => {}
                MtsTerm::Omega => {
                    out.extend(actions.iter().map(|a| (a.clone(), MtsTerm::Omega)));
                }
                MtsTerm::May(a, t) | MtsTerm::Must(a, t) => {
                    out.insert((a.clone(), (**t).clone()));
                }
            }
        }
        out
    }

    /// Must transitions of the universal MTS leaving this term.
    pub fn must_steps(&self) -> BTreeSet<(Action, MtsTerm)> {
        self.summands()
            .into_iter()
            .filter_map(|s| match s {
                MtsTerm::Must(a, t) => Some((a.clone(), (**t).clone())),
                _ => None,
            })
            .collect()
    }

    /// Canonical representative modulo associativity and commutativity of
    /// `+`: summands are normalised, sorted and re-associated to the left.
    pub fn normalize_ac(&self) -> MtsTerm {
        match self {
            MtsTerm::Zero | MtsTerm::Omega => self.clone(),
            MtsTerm::May(a, t) => MtsTerm::may(a.clone(), t.normalize_ac()),
            MtsTerm::Must(a, t) => MtsTerm::must(a.clone(), t.normalize_ac()),
            MtsTerm::Sum(..) => {
                let mut parts: Vec<MtsTerm> = self.summands().into_iter().map(|s| s.normalize_ac()).collect();
                parts.sort();
                fold_sum(parts, MtsTerm::sum)
            }
        }
    }

    /// The subterm-closed state space of the universal MTS rooted at this
    /// term, restricted to reachable subterms.
    pub fn expand(&self, actions: &BTreeSet<Action>) -> Result<Mts> {
        let mut m = universal_mts(std::slice::from_ref(self), actions)?;
        m = m.with_name(self.to_string());
        Ok(m)
    }
}

impl LtsTerm {
    pub fn prefix(a: Action, t: LtsTerm) -> LtsTerm {
        LtsTerm::Prefix(a, Box::new(t))
    }

    pub fn sum(l: LtsTerm, r: LtsTerm) -> LtsTerm {
        LtsTerm::Sum(Box::new(l), Box::new(r))
    }

    pub fn labels(&self) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<Action>) {
        match self {
            LtsTerm::Zero | LtsTerm::Omega => {}
            LtsTerm::Prefix(a, t) => {
                out.insert(a.clone());
                t.collect_labels(out);
            }
            LtsTerm::Sum(l, r) => {
                l.collect_labels(out);
                r.collect_labels(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            LtsTerm::Zero | LtsTerm::Omega => 0,
            LtsTerm::Prefix(_, t) => 1 + t.depth(),
            LtsTerm::Sum(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn summands(&self) -> Vec<&LtsTerm> {
        match self {
            LtsTerm::Sum(l, r) => {
                let mut v = l.summands();
                v.extend(r.summands());
                v
            }
            t => vec![t],
        }
    }

    /// Transitions of the universal LTS over `signature`; `w` loops on the
    /// contravariant labels only.
    pub fn steps(&self, signature: &Signature) -> BTreeSet<(Action, LtsTerm)> {
        let mut out = BTreeSet::new();
        for s in self.summands() {
            match s {
                LtsTerm::Zero | LtsTerm::Sum(..) => {}
                LtsTerm::Omega => {
                    out.extend(signature.contravariant.iter().map(|a| (a.clone(), LtsTerm::Omega)));
                }
                LtsTerm::Prefix(a, t) => {
                    out.insert((a.clone(), (**t).clone()));
                }
            }
        }
        out
    }

    pub fn normalize_ac(&self) -> LtsTerm {
        match self {
            LtsTerm::Zero | LtsTerm::Omega => self.clone(),
            LtsTerm::Prefix(a, t) => LtsTerm::prefix(a.clone(), t.normalize_ac()),
            LtsTerm::Sum(..) => {
                let mut parts: Vec<LtsTerm> = self.summands().into_iter().map(|s| s.normalize_ac()).collect();
                parts.sort();
                fold_sum(parts, LtsTerm::sum)
            }
        }
    }

    /// Expansion into the universal LTS. The signature must have an empty
    /// bivariant class and cover every label of the term.
    pub fn expand(&self, signature: &Signature) -> Result<Lts> {
        Ok(universal_lts(std::slice::from_ref(self), signature)?.with_name(self.to_string()))
    }
}

/// The universal MTS over `actions` restricted to `terms` and everything
/// reachable from them. The distinct terms come first, in the given order;
/// the initial state is the first term.
pub fn universal_mts(terms: &[MtsTerm], actions: &BTreeSet<Action>) -> Result<Mts> {
    for t in terms {
        if let Some(a) = t.labels().difference(actions).next() {
            return Err(Error::InvalidLabel(a.clone()));
        }
    }
    let explored = explore(terms, |t| {
        let must = t.must_steps();
        t.may_steps(actions)
            .into_iter()
            .map(|(a, s)| {
                let is_must = must.contains(&(a.clone(), s.clone()));
                (a, s, is_must)
            })
            .collect()
    });
    let may = explored.edges.iter().map(|(t, _)| t.clone()).collect();
    let must = explored.edges.iter().filter(|(_, m)| *m).map(|(t, _)| t.clone()).collect();
    Ok(Mts::from_parts("universal", explored.names, actions.clone(), may, must, 0))
}

/// The universal LTS over `signature` restricted to `terms` and everything
/// reachable from them, laid out as in [`universal_mts`]. The signature
/// must have an empty bivariant class and cover every label.
pub fn universal_lts(terms: &[LtsTerm], signature: &Signature) -> Result<Lts> {
    if !signature.bivariant.is_empty() {
        return Err(Error::BivariantNotAllowed);
    }
    for t in terms {
        if let Some(a) = t.labels().into_iter().find(|a| !signature.contains(a)) {
            return Err(Error::InvalidLabel(a));
        }
    }
    let explored = explore(terms, |t| t.steps(signature).into_iter().map(|(a, s)| (a, s, false)).collect());
    let trans = explored.edges.into_iter().map(|(t, _)| t).collect();
    Ok(Lts::from_parts("universal", explored.names, signature.clone(), trans, 0))
}

fn fold_sum<T>(parts: Vec<T>, sum: fn(T, T) -> T) -> T {
    let mut it = parts.into_iter();
    let first = it.next().expect("a sum has at least one summand");
    it.fold(first, sum)
}

struct Explored {
    names: Vec<String>,
    edges: Vec<(Transition, bool)>,
}

/// Breadth-first exploration from `roots`; the distinct roots are numbered
/// first, further states in discovery order, and successors are visited in
/// `(label, term)` order.
fn explore<T, F>(roots: &[T], steps: F) -> Explored
where
    T: Clone + Ord + fmt::Display,
    F: Fn(&T) -> Vec<(Action, T, bool)>,
{
    let mut index: BTreeMap<T, StateId> = BTreeMap::new();
    let mut names = Vec::new();
    let mut queue = VecDeque::new();
    for r in roots {
        if !index.contains_key(r) {
            index.insert(r.clone(), names.len());
            names.push(r.to_string());
            queue.push_back(r.clone());
        }
    }
    let mut edges = Vec::new();
    while let Some(t) = queue.pop_front() {
        let src = index[&t];
        for (a, s, is_must) in steps(&t) {
            let dst = match index.get(&s) {
                Some(&d) => d,
                None => {
                    let d = names.len();
                    names.push(s.to_string());
                    index.insert(s.clone(), d);
                    queue.push_back(s);
                    d
                }
            };
            edges.push((Transition::new(src, a, dst), is_must));
        }
    }
    Explored { names, edges }
}

impl fmt::Display for MtsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MtsTerm::Zero => f.write_str("0"),
            MtsTerm::Omega => f.write_str("w"),
            MtsTerm::May(a, t) => write!(f, "{a}.{}", PrefixBody(t.as_ref())),
            MtsTerm::Must(a, t) => write!(f, "{a}!{}", PrefixBody(t.as_ref())),
            MtsTerm::Sum(l, r) => match r.as_ref() {
                MtsTerm::Sum(..) => write!(f, "{l} + ({r})"),
                _ => write!(f, "{l} + {r}"),
            },
        }
    }
}

impl fmt::Display for LtsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LtsTerm::Zero => f.write_str("0"),
            LtsTerm::Omega => f.write_str("w"),
            LtsTerm::Prefix(a, t) => match t.as_ref() {
                LtsTerm::Sum(..) => write!(f, "{a}.({t})"),
                _ => write!(f, "{a}.{t}"),
            },
            LtsTerm::Sum(l, r) => match r.as_ref() {
                LtsTerm::Sum(..) => write!(f, "{l} + ({r})"),
                _ => write!(f, "{l} + {r}"),
            },
        }
    }
}

struct PrefixBody<'a>(&'a MtsTerm);

impl fmt::Display for PrefixBody<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            MtsTerm::Sum(..) => write!(f, "({})", self.0),
            t => write!(f, "{t}"),
        }
    }
}

/// All MTS terms over `actions` of height at most `depth`, one
/// representative per class modulo associativity and commutativity of `+`.
pub fn enumerate_mts_terms(actions: &BTreeSet<Action>, depth: usize) -> Vec<MtsTerm> {
    let mut level: BTreeSet<MtsTerm> = [MtsTerm::Zero, MtsTerm::Omega].into();
    for _ in 0..depth {
        let prev: Vec<MtsTerm> = level.iter().cloned().collect();
        for t in &prev {
            for a in actions {
                level.insert(MtsTerm::may(a.clone(), t.clone()));
                level.insert(MtsTerm::must(a.clone(), t.clone()));
            }
        }
        for (i, l) in prev.iter().enumerate() {
            for r in &prev[i..] {
                level.insert(MtsTerm::sum(l.clone(), r.clone()).normalize_ac());
            }
        }
    }
    level.into_iter().collect()
}

/// All LTS terms over the labels of `signature` of height at most `depth`,
/// modulo associativity and commutativity of `+`.
pub fn enumerate_lts_terms(signature: &Signature, depth: usize) -> Vec<LtsTerm> {
    let labels = signature.actions();
    let mut level: BTreeSet<LtsTerm> = [LtsTerm::Zero, LtsTerm::Omega].into();
    for _ in 0..depth {
        let prev: Vec<LtsTerm> = level.iter().cloned().collect();
        for t in &prev {
            for a in &labels {
                level.insert(LtsTerm::prefix(a.clone(), t.clone()));
            }
        }
        for (i, l) in prev.iter().enumerate() {
            for r in &prev[i..] {
                level.insert(LtsTerm::sum(l.clone(), r.clone()).normalize_ac());
            }
        }
    }
    level.into_iter().collect()
}
