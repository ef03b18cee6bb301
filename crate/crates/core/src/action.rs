//! Action labels and covariant-contravariant signatures.
//!
//! Decorated labels `cv(a)` and `ct(a)` are structural: the decoration is a
//! tag wrapping the inner label, never part of a string. Undecorating is
//! therefore an exact pattern match.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A transition label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    Plain(String),
    /// The covariant copy `cv(a)` used to encode must transitions.
    Cv(Box<Action>),
    /// The contravariant copy `ct(a)` used to encode may transitions.
    Ct(Box<Action>),
}

impl Action {
    /// Builds a plain label. Panics on names that are not identifiers; use
    /// [`Action::parse`] for untrusted input.
    pub fn plain(name: &str) -> Action {
        assert!(is_identifier(name), "invalid action name {name:?}");
        Action::Plain(name.to_string())
    }

    pub fn cv(inner: Action) -> Action {
        Action::Cv(Box::new(inner))
    }

    pub fn ct(inner: Action) -> Action {
        Action::Ct(Box::new(inner))
    }

    /// The label under a `cv` decoration, if any.
    pub fn as_cv(&self) -> Option<&Action> {
        match self {
            Action::Cv(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_ct(&self) -> Option<&Action> {
        match self {
            Action::Ct(a) => Some(a),
            _ => None,
        }
    }

    /// Strips one `cv`/`ct` decoration.
    pub fn undecorated(&self) -> Option<&Action> {
        match self {
            Action::Cv(a) | Action::Ct(a) => Some(a),
            Action::Plain(_) => None,
        }
    }

    /// Parses `name`, `cv(label)` or `ct(label)`.
    pub fn parse(text: &str) -> Option<Action> {
        let text = text.trim();
        for (tag, make) in [("cv(", Action::cv as fn(Action) -> Action), ("ct(", Action::ct)] {
            if let Some(rest) = text.strip_prefix(tag) {
                let inner = rest.strip_suffix(')')?;
                return Action::parse(inner).map(make);
            }
        }
        is_identifier(text).then(|| Action::Plain(text.to_string()))
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Plain(name) => f.write_str(name),
            Action::Cv(a) => write!(f, "cv({a})"),
            Action::Ct(a) => write!(f, "ct({a})"),
        }
    }
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Which class of a signature a label belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variance {
    Covariant,
    Contravariant,
    Bivariant,
}

/// A covariant-contravariant signature `(A^r, A^l, A^bi)`.
///
/// The three classes must be pairwise disjoint; any of them may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub covariant: BTreeSet<Action>,
    pub contravariant: BTreeSet<Action>,
    pub bivariant: BTreeSet<Action>,
}

impl Signature {
    pub fn new<I, J, K>(covariant: I, contravariant: J, bivariant: K) -> Signature
    where
        I: IntoIterator<Item = Action>,
        J: IntoIterator<Item = Action>,
        K: IntoIterator<Item = Action>,
    {
        Signature {
            covariant: covariant.into_iter().collect(),
            contravariant: contravariant.into_iter().collect(),
            bivariant: bivariant.into_iter().collect(),
        }
    }

    /// Convenience constructor from plain label names.
    pub fn plain(covariant: &[&str], contravariant: &[&str], bivariant: &[&str]) -> Signature {
        let conv = |xs: &[&str]| xs.iter().map(|x| Action::plain(x)).collect::<Vec<_>>();
        Signature::new(conv(covariant), conv(contravariant), conv(bivariant))
    }

    /// `(cv(A), ct(A), ∅)`, the signature of the LTS encoding of an MTS over `A`.
    pub fn decorated(actions: &BTreeSet<Action>) -> Signature {
        Signature::new(actions.iter().cloned().map(Action::cv), actions.iter().cloned().map(Action::ct), [])
    }

    /// The class of `a`. When the classes overlap the first match in the
    /// order covariant, contravariant, bivariant wins.
    pub fn class_of(&self, a: &Action) -> Option<Variance> {
        if self.covariant.contains(a) {
            Some(Variance::Covariant)
        } else if self.contravariant.contains(a) {
            Some(Variance::Contravariant)
        } else if self.bivariant.contains(a) {
            Some(Variance::Bivariant)
        } else {
            None
        }
    }

    pub fn contains(&self, a: &Action) -> bool {
        self.class_of(a).is_some()
    }

    /// `A^r ∪ A^bi`: labels whose moves the right-hand side must match.
    pub fn is_forward(&self, a: &Action) -> bool {
        self.covariant.contains(a) || self.bivariant.contains(a)
    }

    /// `A^l ∪ A^bi`: labels whose moves the left-hand side must match.
    pub fn is_backward(&self, a: &Action) -> bool {
        self.contravariant.contains(a) || self.bivariant.contains(a)
    }

    /// All labels, `A^r ∪ A^l ∪ A^bi`.
    pub fn actions(&self) -> BTreeSet<Action> {
        self.covariant.iter().chain(&self.contravariant).chain(&self.bivariant).cloned().collect()
    }

    /// Labels that occur in more than one class.
    pub fn overlaps(&self) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        out.extend(self.covariant.intersection(&self.contravariant).cloned());
        out.extend(self.covariant.intersection(&self.bivariant).cloned());
        out.extend(self.contravariant.intersection(&self.bivariant).cloned());
        out
    }

    /// The partial-bisimulation view of a plain action set:
    /// `(A∖B, ∅, B)`.
    pub fn partial_bisimulation(actions: &BTreeSet<Action>, bisim: &BTreeSet<Action>) -> Signature {
        Signature {
            covariant: actions.difference(bisim).cloned().collect(),
            contravariant: BTreeSet::new(),
            bivariant: bisim.clone(),
        }
    }
}

/// Plain labels from their names.
pub fn label_set<'a, I: IntoIterator<Item = &'a str>>(names: I) -> BTreeSet<Action> {
    names.into_iter().map(Action::plain).collect()
}
