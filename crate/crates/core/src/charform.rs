//! Characteristic formulas for MTS process terms modulo refinement.
//!
//! For a term `t` over `A`,
//!
//! ```text
//! χ(t) = ⋀ δ(t) ∧ ⋀_{a∈A} [a] γ_a(t)
//! ```
//!
//! with `δ(0) = δ(w) = δ(a.t) = ∅`, `δ(a!t) = {<a>χ(t)}`, `δ` additive over
//! `+`, and `γ_a(0) = ff`, `γ_a(w) = tt`, `γ_a(a.t) = γ_a(a!t) = χ(t)`,
//! `γ_b(a.t) = γ_b(a!t) = ff` for `b ≠ a`, `γ_a` disjunctive over `+`.
//! Then `t ⊑ t'` exactly when `t'` satisfies `χ(t)`.
//!
//! The prefix clause is sometimes stated as `γ_a(a.t) = γ_a(t)`; that
//! version is available through [`ChiOptions::literal_prefix_clause`] to
//! exhibit the failures it causes (it already rejects `a.0 ⊨ χ(a.0)`).
//!
//! The simplified form, equivalent on term models, is
//!
//! ```text
//! ⋀ { <a>χ(t') | t -a->□ t' } ∧ ⋀_{a∈A_t} [a] ⋁ { χ(t') | t -a->◇ t' }
//! ```
//!
//! where `A_t` holds the actions all of whose may successors are not
//! refinement-equivalent to `w`.

use std::collections::BTreeSet;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::logic::Formula;
use crate::preorder::greatest_refinement;
use crate::term::MtsTerm;
use crate::translate::formula_c_unchecked;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChiOptions {
    /// Use `γ_a(a.t) = γ_a(t)` instead of `γ_a(a.t) = χ(t)`.
    pub literal_prefix_clause: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharForm {
    pub term: MtsTerm,
    pub actions: BTreeSet<Action>,
    /// `χ(t)` as defined, without any rewriting.
    pub formula: Formula,
    /// The `A_t`-based form after the simplifier.
    pub simplified: Formula,
}

fn check_labels(t: &MtsTerm, actions: &BTreeSet<Action>) -> Result<()> {
    match t.labels().difference(actions).next() {
        Some(a) => Err(Error::InvalidLabel(a.clone())),
        None => Ok(()),
    }
}

/// Whether `t` and `w` refine each other over `actions`.
pub fn is_omega_equivalent(t: &MtsTerm, actions: &BTreeSet<Action>) -> Result<bool> {
    let m = t.expand(actions)?;
    let w = MtsTerm::Omega.expand(actions)?;
    Ok(greatest_refinement(&m, &w)?.contains(m.init(), w.init())
        && greatest_refinement(&w, &m)?.contains(w.init(), m.init()))
}

/// `χ(t)` and its simplified form.
pub fn chi(t: &MtsTerm, actions: &BTreeSet<Action>, opts: ChiOptions) -> Result<CharForm> {
    check_labels(t, actions)?;
    let mut omega_eq = |s: &MtsTerm| is_omega_equivalent(s, actions).expect("labels already checked");
    Ok(CharForm {
        term: t.clone(),
        actions: actions.clone(),
        formula: raw(t, actions, opts),
        simplified: simplified_with(t, actions, &mut omega_eq),
    })
}

/// `χ(t)` with the action set defaulting to the labels of `t`.
pub fn chi_default(t: &MtsTerm, opts: ChiOptions) -> Result<CharForm> {
    chi(t, &t.labels(), opts)
}

/// `C(χ(t))`, a characteristic formula for `C(t)` modulo
/// covariant-contravariant simulation.
pub fn chi_cc(t: &MtsTerm, actions: &BTreeSet<Action>) -> Result<Formula> {
    check_labels(t, actions)?;
    Ok(formula_c_unchecked(&raw(t, actions, ChiOptions::default())))
}

/// `χ(t)` exactly as defined: the `δ` conjuncts followed by one `[a]γ_a`
/// conjunct per action.
pub fn raw(t: &MtsTerm, actions: &BTreeSet<Action>, opts: ChiOptions) -> Formula {
    let mut conjuncts = Vec::new();
    for d in delta(t, actions, opts) {
        if !conjuncts.contains(&d) {
            conjuncts.push(d);
        }
    }
    for a in actions {
        conjuncts.push(Formula::boxed(a.clone(), gamma(a, t, actions, opts)));
    }
    Formula::conj(conjuncts)
}

fn delta(t: &MtsTerm, actions: &BTreeSet<Action>, opts: ChiOptions) -> Vec<Formula> {
    match t {
        MtsTerm::Zero | MtsTerm::Omega | MtsTerm::May(..) => Vec::new(),
        MtsTerm::Must(a, s) => vec![Formula::diamond(a.clone(), raw(s, actions, opts))],
        MtsTerm::Sum(l, r) => {
            let mut v = delta(l, actions, opts);
            v.extend(delta(r, actions, opts));
            v
        }
    }
}

fn gamma(a: &Action, t: &MtsTerm, actions: &BTreeSet<Action>, opts: ChiOptions) -> Formula {
    match t {
        MtsTerm::Zero => Formula::Bottom,
        MtsTerm::Omega => Formula::Top,
        MtsTerm::May(b, s) | MtsTerm::Must(b, s) => {
            if b != a {
                Formula::Bottom
            } else if opts.literal_prefix_clause {
                gamma(a, s, actions, opts)
            } else {
                raw(s, actions, opts)
            }
        }
        MtsTerm::Sum(l, r) => Formula::or(gamma(a, l, actions, opts), gamma(a, r, actions, opts)),
    }
}

/// The simplified characteristic formula, with `omega_eq` deciding
/// equivalence with `w`. Callers that check many terms can answer it from a
/// precomputed refinement relation.
pub fn simplified_with(t: &MtsTerm, actions: &BTreeSet<Action>, omega_eq: &mut dyn FnMut(&MtsTerm) -> bool) -> Formula {
    let mut conjuncts = Vec::new();
    for (a, s) in t.must_steps() {
        conjuncts.push(Formula::diamond(a, simplified_with(&s, actions, omega_eq)));
    }
    let may = t.may_steps(actions);
    for a in actions {
        let targets: Vec<&MtsTerm> = may.iter().filter(|(b, _)| b == a).map(|(_, s)| s).collect();
        if targets.iter().any(|s| omega_eq(s)) {
            continue;
        }
        let body = Formula::disj(targets.into_iter().map(|s| simplified_with(s, actions, omega_eq)));
        conjuncts.push(Formula::boxed(a.clone(), body));
    }
    simplify(&Formula::conj(conjuncts))
}

/// `tt` is a unit for `&` and absorbing for `|`, `ff` the reverse, and
/// `[a]tt` is `tt`. Nothing else is rewritten.
pub fn simplify(phi: &Formula) -> Formula {
    match phi {
        Formula::Bottom | Formula::Top => phi.clone(),
        Formula::And(l, r) => match (simplify(l), simplify(r)) {
            (Formula::Top, x) | (x, Formula::Top) => x,
            (Formula::Bottom, _) | (_, Formula::Bottom) => Formula::Bottom,
            (x, y) => Formula::and(x, y),
        },
        Formula::Or(l, r) => match (simplify(l), simplify(r)) {
            (Formula::Bottom, x) | (x, Formula::Bottom) => x,
            (Formula::Top, _) | (_, Formula::Top) => Formula::Top,
            (x, y) => Formula::or(x, y),
        },
        Formula::Box(a, g) => match simplify(g) {
            Formula::Top => Formula::Top,
            g => Formula::boxed(a.clone(), g),
        },
        Formula::Diamond(a, g) => Formula::diamond(a.clone(), simplify(g)),
    }
}
