//! Finite pointed transition systems.
//!
//! States are dense indices into a name table. Transition sets are ordered
//! by `(source, label, target)`, which makes "all `a`-successors of `s`" a
//! contiguous range and keeps every printed artefact deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Bound;

use serde::Serialize;

use crate::action::{Action, Signature};
use crate::error::{Error, Result};

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Transition {
    pub source: StateId,
    pub label: Action,
    pub target: StateId,
}

impl Transition {
    pub fn new(source: StateId, label: Action, target: StateId) -> Transition {
        Transition { source, label, target }
    }
}

/// A finding reported by [`Mts::validate`] or [`Lts::validate`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Violation {
    DuplicateState(String),
    NoStates,
    InitOutOfRange(StateId),
    DanglingState { source: StateId, label: Action, target: StateId },
    UnknownLabel(Action),
    Overlap(Action),
    MissingMay { source: String, label: Action, target: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateState(s) => write!(f, "duplicate-state({s})"),
            Violation::NoStates => write!(f, "no-states"),
            Violation::InitOutOfRange(i) => write!(f, "init-out-of-range(#{i})"),
            Violation::DanglingState { source, label, target } => {
                write!(f, "dangling-state(#{source},{label},#{target})")
            }
            Violation::UnknownLabel(a) => write!(f, "unknown-label({a})"),
            Violation::Overlap(a) => write!(f, "overlap({a})"),
            Violation::MissingMay { source, label, target } => {
                write!(f, "missing-may({source},{label},{target})")
            }
        }
    }
}

/// A pointed modal transition system: may and must transitions over an
/// action set, with `must ⊆ may`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mts {
    name: String,
    states: Vec<String>,
    actions: BTreeSet<Action>,
    may: BTreeSet<Transition>,
    must: BTreeSet<Transition>,
    init: StateId,
}

/// A pointed labelled transition system over a covariant-contravariant
/// signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lts {
    name: String,
    states: Vec<String>,
    signature: Signature,
    trans: BTreeSet<Transition>,
    init: StateId,
}

fn successors<'a>(
    set: &'a BTreeSet<Transition>,
    source: StateId,
    label: &Action,
) -> impl Iterator<Item = StateId> + 'a {
    let lo = Transition::new(source, label.clone(), 0);
    let hi = Transition::new(source, label.clone(), StateId::MAX);
    set.range((Bound::Included(lo), Bound::Included(hi))).map(|t| t.target)
}

fn outgoing(set: &BTreeSet<Transition>, source: StateId) -> impl Iterator<Item = &Transition> {
    // `Plain("")` is the least label in the derived order.
    let lo = Transition::new(source, Action::Plain(String::new()), 0);
    set.range(lo..).take_while(move |t| t.source == source)
}

fn check_states(states: &[String], init: StateId, out: &mut Vec<Violation>) {
    let mut seen = BTreeSet::new();
    for s in states {
        if !seen.insert(s) {
            out.push(Violation::DuplicateState(s.clone()));
        }
    }
    if states.is_empty() {
        out.push(Violation::NoStates);
    } else if init >= states.len() {
        out.push(Violation::InitOutOfRange(init));
    }
}

fn check_transitions<'a, I, F>(transitions: I, n: usize, known: F, out: &mut Vec<Violation>)
where
    I: IntoIterator<Item = &'a Transition>,
    F: Fn(&Action) -> bool,
{
    let mut unknown = BTreeSet::new();
    for t in transitions {
        if t.source >= n || t.target >= n {
            out.push(Violation::DanglingState { source: t.source, label: t.label.clone(), target: t.target });
        }
        if !known(&t.label) {
            unknown.insert(t.label.clone());
        }
    }
    out.extend(unknown.into_iter().map(Violation::UnknownLabel));
}

impl Mts {
    /// Assembles a system without checking it; see [`Mts::validate`].
    pub fn from_parts(
        name: impl Into<String>,
        states: Vec<String>,
        actions: BTreeSet<Action>,
        may: BTreeSet<Transition>,
        must: BTreeSet<Transition>,
        init: StateId,
    ) -> Mts {
        Mts { name: name.into(), states, actions, may, must, init }
    }

    pub fn builder(name: impl Into<String>) -> MtsBuilder {
        MtsBuilder { name: name.into(), ..Default::default() }
    }

    /// Every violated structural invariant, in a fixed order. An empty
    /// result means the system is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_states(&self.states, self.init, &mut out);
        let n = self.states.len();
        check_transitions(self.may.iter().chain(&self.must), n, |a| self.actions.contains(a), &mut out);
        for t in self.must.difference(&self.may) {
            out.push(Violation::MissingMay {
                source: self.display_state(t.source),
                label: t.label.clone(),
                target: self.display_state(t.target),
            });
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSystem(v))
        }
    }

    fn display_state(&self, s: StateId) -> String {
        self.states.get(s).cloned().unwrap_or_else(|| format!("#{s}"))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn actions(&self) -> &BTreeSet<Action> {
        &self.actions
    }

    pub fn may(&self) -> &BTreeSet<Transition> {
        &self.may
    }

    pub fn must(&self) -> &BTreeSet<Transition> {
        &self.must
    }

    pub fn init(&self) -> StateId {
        self.init
    }

    pub fn may_successors<'a>(&'a self, s: StateId, a: &Action) -> impl Iterator<Item = StateId> + 'a {
        successors(&self.may, s, a)
    }

    pub fn must_successors<'a>(&'a self, s: StateId, a: &Action) -> impl Iterator<Item = StateId> + 'a {
        successors(&self.must, s, a)
    }

    pub fn may_from(&self, s: StateId) -> impl Iterator<Item = &Transition> {
        outgoing(&self.may, s)
    }

    pub fn must_from(&self, s: StateId) -> impl Iterator<Item = &Transition> {
        outgoing(&self.must, s)
    }

    pub fn with_init(&self, init: StateId) -> Mts {
        Mts { init, ..self.clone() }
    }

    pub fn with_name(&self, name: impl Into<String>) -> Mts {
        Mts { name: name.into(), ..self.clone() }
    }

    /// Same system over a larger declared action set.
    pub fn with_actions(&self, actions: BTreeSet<Action>) -> Mts {
        Mts { actions, ..self.clone() }
    }

    /// Relabels every transition through `map`, which must be defined on the
    /// whole action set and land inside `target`. State names and the
    /// distinguished state are kept.
    pub fn rename(&self, map: &BTreeMap<Action, Action>, target: &BTreeSet<Action>) -> Result<Mts> {
        let image = |a: &Action| -> Result<Action> {
            let b = map.get(a).ok_or_else(|| Error::NonTotalMap(a.clone()))?;
            if !target.contains(b) {
                return Err(Error::OutsideTarget { from: a.clone(), to: b.clone() });
            }
            Ok(b.clone())
        };
        for a in &self.actions {
            image(a)?;
        }
        let relabel = |set: &BTreeSet<Transition>| -> Result<BTreeSet<Transition>> {
            set.iter().map(|t| Ok(Transition::new(t.source, image(&t.label)?, t.target))).collect()
        };
        Ok(Mts {
            name: self.name.clone(),
            states: self.states.clone(),
            actions: target.clone(),
            may: relabel(&self.may)?,
            must: relabel(&self.must)?,
            init: self.init,
        })
    }
}

/// How [`Lts::rename`] treats signature classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relabel {
    /// Every label must land in the same class of the target signature.
    ClassPreserving,
    /// Labels may change class; the result is read under the target signature.
    Free,
}

impl Lts {
    pub fn from_parts(
        name: impl Into<String>,
        states: Vec<String>,
        signature: Signature,
        trans: BTreeSet<Transition>,
        init: StateId,
    ) -> Lts {
        Lts { name: name.into(), states, signature, trans, init }
    }

    pub fn builder(name: impl Into<String>, signature: Signature) -> LtsBuilder {
        LtsBuilder { name: name.into(), signature, inner: MtsBuilder::default() }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_states(&self.states, self.init, &mut out);
        out.extend(self.signature.overlaps().into_iter().map(Violation::Overlap));
        check_transitions(&self.trans, self.states.len(), |a| self.signature.contains(a), &mut out);
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSystem(v))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn transitions(&self) -> &BTreeSet<Transition> {
        &self.trans
    }

    pub fn init(&self) -> StateId {
        self.init
    }

    pub fn successors<'a>(&'a self, s: StateId, a: &Action) -> impl Iterator<Item = StateId> + 'a {
        successors(&self.trans, s, a)
    }

    pub fn transitions_from(&self, s: StateId) -> impl Iterator<Item = &Transition> {
        outgoing(&self.trans, s)
    }

    pub fn with_init(&self, init: StateId) -> Lts {
        Lts { init, ..self.clone() }
    }

    pub fn with_name(&self, name: impl Into<String>) -> Lts {
        Lts { name: name.into(), ..self.clone() }
    }

    /// Same transitions read under another signature.
    pub fn with_signature(&self, signature: Signature) -> Lts {
        Lts { signature, ..self.clone() }
    }

    /// Relabels every transition through `map`. The map must be defined on
    /// every label of the signature and land inside `target`.
    pub fn rename(&self, map: &BTreeMap<Action, Action>, target: &Signature, mode: Relabel) -> Result<Lts> {
        let image = |a: &Action| -> Result<Action> {
            let b = map.get(a).ok_or_else(|| Error::NonTotalMap(a.clone()))?;
            let Some(class) = target.class_of(b) else {
                return Err(Error::OutsideTarget { from: a.clone(), to: b.clone() });
            };
            if mode == Relabel::ClassPreserving && self.signature.class_of(a) != Some(class) {
                return Err(Error::ClassIncompatible { from: a.clone(), to: b.clone() });
            }
            Ok(b.clone())
        };
        for a in self.signature.actions() {
            image(&a)?;
        }
        let trans = self
            .trans
            .iter()
            .map(|t| Ok(Transition::new(t.source, image(&t.label)?, t.target)))
            .collect::<Result<_>>()?;
        Ok(Lts {
            name: self.name.clone(),
            states: self.states.clone(),
            signature: target.clone(),
            trans,
            init: self.init,
        })
    }
}

/// Either kind of pointed system, as produced by the file loader.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum System {
    Mts(Mts),
    Lts(Lts),
}

impl System {
    pub fn name(&self) -> &str {
        match self {
            System::Mts(m) => m.name(),
            System::Lts(l) => l.name(),
        }
    }

    /// `"mts"` or `"lts"`.
    pub fn kind(&self) -> &'static str {
        match self {
            System::Mts(_) => "mts",
            System::Lts(_) => "lts",
        }
    }

    pub fn states(&self) -> &[String] {
        match self {
            System::Mts(m) => m.states(),
            System::Lts(l) => l.states(),
        }
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states().iter().position(|s| s == name)
    }

    pub fn init(&self) -> StateId {
        match self {
            System::Mts(m) => m.init(),
            System::Lts(l) => l.init(),
        }
    }

    pub fn as_mts(&self) -> Option<&Mts> {
        match self {
            System::Mts(m) => Some(m),
            System::Lts(_) => None,
        }
    }

    pub fn as_lts(&self) -> Option<&Lts> {
        match self {
            System::Lts(l) => Some(l),
            System::Mts(_) => None,
        }
    }
}

impl From<Mts> for System {
    fn from(m: Mts) -> System {
        System::Mts(m)
    }
}

impl From<Lts> for System {
    fn from(l: Lts) -> System {
        System::Lts(l)
    }
}

/// Labels accepted by the builders: `&str` is parsed with [`Action::parse`].
pub trait IntoAction {
    fn into_action(self) -> Action;
}

impl IntoAction for Action {
    fn into_action(self) -> Action {
        self
    }
}

impl IntoAction for &Action {
    fn into_action(self) -> Action {
        self.clone()
    }
}

impl IntoAction for &str {
    fn into_action(self) -> Action {
        Action::parse(self).unwrap_or_else(|| panic!("invalid action label {self:?}"))
    }
}

/// Name-based construction of an [`Mts`]. States are numbered in order of
/// first mention; the first state is the default initial state. Labels used
/// in transitions join the action set automatically.
#[derive(Clone, Debug, Default)]
pub struct MtsBuilder {
    name: String,
    states: Vec<String>,
    index: BTreeMap<String, StateId>,
    actions: BTreeSet<Action>,
    may: BTreeSet<Transition>,
    must: BTreeSet<Transition>,
    init: Option<String>,
}

impl MtsBuilder {
    pub fn state(mut self, name: &str) -> Self {
        self.intern(name);
        self
    }

    pub fn states<'a, I: IntoIterator<Item = &'a str>>(mut self, names: I) -> Self {
        for n in names {
            self.intern(n);
        }
        self
    }

    pub fn action(mut self, a: impl IntoAction) -> Self {
        self.actions.insert(a.into_action());
        self
    }

    pub fn actions<I>(mut self, labels: I) -> Self
    where
        I: IntoIterator,
        I::Item: IntoAction,
    {
        self.actions.extend(labels.into_iter().map(IntoAction::into_action));
        self
    }

    pub fn may(mut self, p: &str, a: impl IntoAction, q: &str) -> Self {
        let t = self.transition(p, a, q);
        self.may.insert(t);
        self
    }

    /// Adds a must transition together with its may twin.
    pub fn must(mut self, p: &str, a: impl IntoAction, q: &str) -> Self {
        let t = self.transition(p, a, q);
        self.may.insert(t.clone());
        self.must.insert(t);
        self
    }

    pub fn init(mut self, name: &str) -> Self {
        self.intern(name);
        self.init = Some(name.to_string());
        self
    }

    pub fn build(self) -> Result<Mts> {
        let init = match &self.init {
            Some(n) => self.index[n],
            None => 0,
        };
        let m = Mts::from_parts(self.name, self.states, self.actions, self.may, self.must, init);
        m.ensure_valid()?;
        Ok(m)
    }

    fn intern(&mut self, name: &str) -> StateId {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.states.len();
        self.states.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    fn transition(&mut self, p: &str, a: impl IntoAction, q: &str) -> Transition {
        let a = a.into_action();
        self.actions.insert(a.clone());
        let p = self.intern(p);
        let q = self.intern(q);
        Transition::new(p, a, q)
    }
}

/// Name-based construction of an [`Lts`] over a fixed signature.
#[derive(Clone, Debug)]
pub struct LtsBuilder {
    name: String,
    signature: Signature,
    inner: MtsBuilder,
}

impl LtsBuilder {
    pub fn state(mut self, name: &str) -> Self {
        self.inner = self.inner.state(name);
        self
    }

    pub fn states<'a, I: IntoIterator<Item = &'a str>>(mut self, names: I) -> Self {
        self.inner = self.inner.states(names);
        self
    }

    pub fn trans(mut self, p: &str, a: impl IntoAction, q: &str) -> Self {
        self.inner = self.inner.may(p, a, q);
        self
    }

    pub fn init(mut self, name: &str) -> Self {
        self.inner = self.inner.init(name);
        self
    }

    pub fn build(self) -> Result<Lts> {
        let b = self.inner;
        let init = match &b.init {
            Some(n) => b.index[n],
            None => 0,
        };
        let l = Lts::from_parts(self.name, b.states, self.signature, b.may, init);
        l.ensure_valid()?;
        Ok(l)
    }
}
