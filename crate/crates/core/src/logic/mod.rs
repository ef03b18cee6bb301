//! Negation-free modal logic shared by the MTS and covariant-contravariant
//! settings.
//!
//! A single formula type serves both logics; [`check_wf`] enforces the label
//! constraints of each. Over an MTS, `[a]` ranges over may successors and
//! `<a>` needs a must successor. Over an LTS both modalities range over the
//! one transition relation, but `<a>` is only allowed on covariant or
//! bivariant labels and `[a]` only on contravariant or bivariant ones.

mod global;

use std::collections::BTreeSet;
use std::convert::Infallible;
use std::fmt;

use serde::Serialize;

use crate::action::{Action, Signature};
use crate::error::{Error, Result};
use crate::system::{Lts, Mts, StateId};

pub use global::GlobalChecker;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(Action, Box<Formula>),
    Diamond(Action, Box<Formula>),
}

impl Formula {
    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn boxed(a: Action, f: Formula) -> Formula {
        Formula::Box(a, Box::new(f))
    }

    pub fn diamond(a: Action, f: Formula) -> Formula {
        Formula::Diamond(a, Box::new(f))
    }

    /// Left-nested conjunction; the empty conjunction is `tt`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; the empty disjunction is `ff`.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    /// Maximal nesting of modalities.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Top => 0,
            Formula::And(l, r) | Formula::Or(l, r) => l.modal_depth().max(r.modal_depth()),
            Formula::Box(_, f) | Formula::Diamond(_, f) => 1 + f.modal_depth(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Top => 1,
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.size() + r.size(),
            Formula::Box(_, f) | Formula::Diamond(_, f) => 1 + f.size(),
        }
    }

    /// True when no `[a]` occurs.
    pub fn is_existential(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Top => true,
            Formula::And(l, r) | Formula::Or(l, r) => l.is_existential() && r.is_existential(),
            Formula::Box(..) => false,
            Formula::Diamond(_, f) => f.is_existential(),
        }
    }

    pub fn labels(&self) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        self.visit_labels(&mut |a| {
            out.insert(a.clone());
        });
        out
    }

    fn visit_labels(&self, f: &mut impl FnMut(&Action)) {
        match self {
            Formula::Bottom | Formula::Top => {}
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.visit_labels(f);
                r.visit_labels(f);
            }
            Formula::Box(a, g) | Formula::Diamond(a, g) => {
                f(a);
                g.visit_labels(f);
            }
        }
    }

    /// Replaces every modality label through `f`.
    pub fn map_labels(&self, f: impl Fn(&Action) -> Action) -> Formula {
        let out: Result<Formula, Infallible> = self.try_map(&|m, a| Ok(Rewrite::Modal(m, f(a))));
        match out {
            Ok(phi) => phi,
            Err(never) => match never {},
        }
    }

    /// Bottom-up rewrite of the modalities: `f` sees each modality with its
    /// label and returns a replacement modality or a constant that replaces
    /// the whole modal subformula.
    pub(crate) fn try_map<E>(&self, f: &impl Fn(Modality, &Action) -> Result<Rewrite, E>) -> Result<Formula, E> {
        Ok(match self {
            Formula::Bottom => Formula::Bottom,
            Formula::Top => Formula::Top,
            Formula::And(l, r) => Formula::and(l.try_map(f)?, r.try_map(f)?),
            Formula::Or(l, r) => Formula::or(l.try_map(f)?, r.try_map(f)?),
            Formula::Box(a, g) => f(Modality::Box, a)?.apply(g.try_map(f)?),
            Formula::Diamond(a, g) => f(Modality::Diamond, a)?.apply(g.try_map(f)?),
        })
    }
}

/// The two modal operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Modality {
    Box,
    Diamond,
}

/// Outcome of rewriting a single modality.
pub(crate) enum Rewrite {
    Modal(Modality, Action),
    Const(Formula),
}

impl Rewrite {
    fn apply(self, body: Formula) -> Formula {
        match self {
            Rewrite::Modal(Modality::Box, a) => Formula::boxed(a, body),
            Rewrite::Modal(Modality::Diamond, a) => Formula::diamond(a, body),
            Rewrite::Const(c) => c,
        }
    }
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

struct Prec<'a>(&'a Formula, u8);

impl fmt::Display for Prec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if precedence(self.0) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints the concrete syntax with the fewest parentheses that parse back
/// to the same tree: modalities bind tightest, then `&`, then `|`, and both
/// binary operators associate to the left.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bottom => f.write_str("ff"),
            Formula::Top => f.write_str("tt"),
            Formula::And(l, r) => write!(f, "{} & {}", Prec(l, 2), Prec(r, 3)),
            Formula::Or(l, r) => write!(f, "{} | {}", Prec(l, 1), Prec(r, 2)),
            Formula::Box(a, g) => write!(f, "[{a}]{}", Prec(g, 3)),
            Formula::Diamond(a, g) => write!(f, "<{a}>{}", Prec(g, 3)),
        }
    }
}

/// Which logic a formula is read in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogicKind {
    /// Modal formulas over an MTS with the given action set.
    Bl(BTreeSet<Action>),
    /// Covariant-contravariant formulas over an LTS with the given signature.
    Cc(Signature),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum WfViolation {
    UnknownLabel(Action),
    DiamondNeedsCovariant(Action),
    BoxNeedsContravariant(Action),
}

impl fmt::Display for WfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WfViolation::UnknownLabel(a) => write!(f, "unknown-label({a})"),
            WfViolation::DiamondNeedsCovariant(a) => write!(f, "diamond-needs-covariant({a})"),
            WfViolation::BoxNeedsContravariant(a) => write!(f, "box-needs-contravariant({a})"),
        }
    }
}

/// Every label-constraint violation of `phi` under `logic`, sorted and
/// without duplicates. Empty means well formed.
pub fn check_wf(phi: &Formula, logic: &LogicKind) -> Vec<WfViolation> {
    let mut out = BTreeSet::new();
    collect_wf(phi, logic, &mut out);
    out.into_iter().collect()
}

fn collect_wf(phi: &Formula, logic: &LogicKind, out: &mut BTreeSet<WfViolation>) {
    match phi {
        Formula::Bottom | Formula::Top => {}
        Formula::And(l, r) | Formula::Or(l, r) => {
            collect_wf(l, logic, out);
            collect_wf(r, logic, out);
        }
        Formula::Box(a, g) | Formula::Diamond(a, g) => {
            let is_box = matches!(phi, Formula::Box(..));
            match logic {
                LogicKind::Bl(actions) => {
                    if !actions.contains(a) {
                        out.insert(WfViolation::UnknownLabel(a.clone()));
                    }
                }
                LogicKind::Cc(sig) => {
                    if !sig.contains(a) {
                        out.insert(WfViolation::UnknownLabel(a.clone()));
                    } else if is_box && !sig.is_backward(a) {
                        out.insert(WfViolation::BoxNeedsContravariant(a.clone()));
                    } else if !is_box && !sig.is_forward(a) {
                        out.insert(WfViolation::DiamondNeedsCovariant(a.clone()));
                    }
                }
            }
            collect_wf(g, logic, out);
        }
    }
}

pub fn ensure_wf(phi: &Formula, logic: &LogicKind) -> Result<()> {
    let v = check_wf(phi, logic);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::IllFormed(v))
    }
}

fn check_state(n: usize, s: StateId) -> Result<()> {
    if s < n {
        Ok(())
    } else {
        Err(Error::UnknownState(format!("#{s}")))
    }
}

/// `(M, s) ⊨ phi` for a modal formula over an MTS.
pub fn mc_mts(m: &Mts, s: StateId, phi: &Formula) -> Result<bool> {
    m.ensure_valid()?;
    check_state(m.num_states(), s)?;
    ensure_wf(phi, &LogicKind::Bl(m.actions().clone()))?;
    Ok(eval_mts(m, s, phi))
}

fn eval_mts(m: &Mts, s: StateId, phi: &Formula) -> bool {
    match phi {
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::And(l, r) => eval_mts(m, s, l) && eval_mts(m, s, r),
        Formula::Or(l, r) => eval_mts(m, s, l) || eval_mts(m, s, r),
        Formula::Box(a, g) => m.may_successors(s, a).all(|t| eval_mts(m, t, g)),
        Formula::Diamond(a, g) => m.must_successors(s, a).any(|t| eval_mts(m, t, g)),
    }
}

/// `(P, s) ⊨ phi` for a covariant-contravariant formula over an LTS.
pub fn mc_cc(p: &Lts, s: StateId, phi: &Formula) -> Result<bool> {
    p.ensure_valid()?;
    check_state(p.num_states(), s)?;
    ensure_wf(phi, &LogicKind::Cc(p.signature().clone()))?;
    Ok(eval_lts(p, s, phi))
}

fn eval_lts(p: &Lts, s: StateId, phi: &Formula) -> bool {
    match phi {
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::And(l, r) => eval_lts(p, s, l) && eval_lts(p, s, r),
        Formula::Or(l, r) => eval_lts(p, s, l) || eval_lts(p, s, r),
        Formula::Box(a, g) => p.successors(s, a).all(|t| eval_lts(p, t, g)),
        Formula::Diamond(a, g) => p.successors(s, a).any(|t| eval_lts(p, t, g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::label_set;

    fn a() -> Action {
        Action::plain("a")
    }

    fn b() -> Action {
        Action::plain("b")
    }

    fn ccex() -> Lts {
        Lts::builder("ccex", Signature::plain(&["a"], &["b"], &[]))
            .trans("p", "a", "s")
            .trans("p", "b", "s")
            .trans("q", "a", "s")
            .trans("r", "b", "s")
            .build()
            .unwrap()
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        let f = Formula::and(Formula::diamond(a(), Formula::Top), Formula::boxed(b(), Formula::Bottom));
        assert_eq!(f.to_string(), "<a>tt & [b]ff");
        let g = Formula::diamond(a(), Formula::or(Formula::Top, Formula::Bottom));
        assert_eq!(g.to_string(), "<a>(tt | ff)");
        let h = Formula::and(Formula::Top, Formula::and(Formula::Top, Formula::Bottom));
        assert_eq!(h.to_string(), "tt & (tt & ff)");
        let k = Formula::and(Formula::or(Formula::Top, Formula::Bottom), Formula::Top);
        assert_eq!(k.to_string(), "(tt | ff) & tt");
    }

    #[test]
    fn wf_under_cc() {
        let sig = Signature::plain(&["a"], &["b"], &[]);
        let logic = LogicKind::Cc(sig);
        assert!(check_wf(&Formula::diamond(a(), Formula::Top), &logic).is_empty());
        let v = check_wf(&Formula::boxed(a(), Formula::Bottom), &logic);
        assert_eq!(v, [WfViolation::BoxNeedsContravariant(a())]);
        assert_eq!(v[0].to_string(), "box-needs-contravariant(a)");
        assert!(check_wf(&Formula::Top, &logic).is_empty());
        assert!(check_wf(&Formula::Top, &LogicKind::Bl(BTreeSet::new())).is_empty());
        let v = check_wf(&Formula::diamond(b(), Formula::Top), &logic);
        assert_eq!(v, [WfViolation::DiamondNeedsCovariant(b())]);
    }

    #[test]
    fn wf_under_bl_checks_membership_only() {
        let logic = LogicKind::Bl(label_set(["a"]));
        assert!(check_wf(&Formula::boxed(a(), Formula::diamond(a(), Formula::Top)), &logic).is_empty());
        assert_eq!(check_wf(&Formula::boxed(b(), Formula::Top), &logic), [WfViolation::UnknownLabel(b())]);
    }

    #[test]
    fn universal_specification_satisfies_neither() {
        let u = Mts::builder("U").may("u", "a", "u").build().unwrap();
        assert!(!mc_mts(&u, 0, &Formula::diamond(a(), Formula::Top)).unwrap());
        assert!(!mc_mts(&u, 0, &Formula::boxed(a(), Formula::Bottom)).unwrap());
        assert!(mc_mts(&u, 0, &Formula::Top).unwrap());
    }

    #[test]
    fn must_step_satisfies_diamond() {
        let m = Mts::builder("m").must("p", "a", "q").build().unwrap();
        assert!(mc_mts(&m, 0, &Formula::diamond(a(), Formula::Top)).unwrap());
        assert!(!mc_mts(&m, 1, &Formula::diamond(a(), Formula::Top)).unwrap());
    }

    #[test]
    fn ccex_satisfaction() {
        let l = ccex();
        let [p, s, q, r] = ["p", "s", "q", "r"].map(|n| l.state_index(n).unwrap());
        let dia = Formula::diamond(a(), Formula::Top);
        let bx = Formula::boxed(b(), Formula::Bottom);
        assert!(mc_cc(&l, p, &dia).unwrap());
        assert!(mc_cc(&l, q, &dia).unwrap());
        assert!(!mc_cc(&l, r, &dia).unwrap());
        assert!(mc_cc(&l, q, &bx).unwrap());
        assert!(!mc_cc(&l, p, &bx).unwrap());
        assert!(!mc_cc(&l, r, &bx).unwrap());
        for st in [p, q, r, s] {
            assert!(!mc_cc(&l, st, &Formula::Bottom).unwrap());
        }
    }

    #[test]
    fn ill_formed_formulas_are_rejected() {
        let l = ccex();
        let err = mc_cc(&l, 0, &Formula::boxed(a(), Formula::Bottom)).unwrap_err();
        assert_eq!(err, Error::IllFormed(vec![WfViolation::BoxNeedsContravariant(a())]));
        assert!(matches!(mc_cc(&l, 9, &Formula::Top), Err(Error::UnknownState(_))));
    }

    #[test]
    fn depth_and_existential() {
        let f = Formula::diamond(a(), Formula::and(Formula::diamond(b(), Formula::Top), Formula::Top));
        assert_eq!(f.modal_depth(), 2);
        assert!(f.is_existential());
        assert!(!Formula::or(f, Formula::boxed(a(), Formula::Top)).is_existential());
    }

    #[test]
    fn empty_conjunction_and_disjunction() {
        assert_eq!(Formula::conj([]), Formula::Top);
        assert_eq!(Formula::disj([]), Formula::Bottom);
        assert_eq!(Formula::conj([Formula::Bottom]), Formula::Bottom);
    }
}
