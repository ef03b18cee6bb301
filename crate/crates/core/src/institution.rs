//! Signature morphisms, sentence translation and model reducts for the
//! MTS and covariant-contravariant logics, the morphism from the former to
//! the latter, and the canonical one-state objects of the model categories.
//!
//! Arrows between pointed models are refinements (MTSs) and
//! covariant-contravariant simulations (LTSs); an arrow from `(P, p)` to
//! `(Q, q)` exists when the greatest relation contains `(p, q)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::action::{Action, Signature};
use crate::error::{Error, Result};
use crate::logic::{ensure_wf, mc_cc, mc_mts, Formula, LogicKind};
use crate::preorder::{greatest_ccsim, greatest_refinement};
use crate::system::{Lts, Mts, StateId, System, Transition};
use crate::translate::{formula_c_inverse, lts_of_mts};

/// A total label map between two signatures of the same logic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureMorphism {
    /// Any total map `A → A'`.
    Mts { source: BTreeSet<Action>, target: BTreeSet<Action>, map: BTreeMap<Action, Action> },
    /// A total map sending each class into the same class of the target.
    Cc { source: Signature, target: Signature, map: BTreeMap<Action, Action> },
}

fn check_total<'a>(
    labels: impl IntoIterator<Item = &'a Action>,
    map: &BTreeMap<Action, Action>,
    lands: impl Fn(&Action, &Action) -> Result<()>,
) -> Result<()> {
    for a in labels {
        let b = map.get(a).ok_or_else(|| Error::NonTotalMap(a.clone()))?;
        lands(a, b)?;
    }
    Ok(())
}

impl SignatureMorphism {
    pub fn mts(source: BTreeSet<Action>, target: BTreeSet<Action>, map: BTreeMap<Action, Action>) -> Result<Self> {
        check_total(&source, &map, |a, b| {
            if target.contains(b) {
                Ok(())
            } else {
                Err(Error::OutsideTarget { from: a.clone(), to: b.clone() })
            }
        })?;
        let map = map.into_iter().filter(|(a, _)| source.contains(a)).collect();
        Ok(SignatureMorphism::Mts { source, target, map })
    }

    pub fn cc(source: Signature, target: Signature, map: BTreeMap<Action, Action>) -> Result<Self> {
        check_total(&source.actions(), &map, |a, b| match target.class_of(b) {
            None => Err(Error::OutsideTarget { from: a.clone(), to: b.clone() }),
            Some(c) if Some(c) != source.class_of(a) => {
                Err(Error::ClassIncompatible { from: a.clone(), to: b.clone() })
            }
            Some(_) => Ok(()),
        })?;
        let labels = source.actions();
        let map = map.into_iter().filter(|(a, _)| labels.contains(a)).collect();
        Ok(SignatureMorphism::Cc { source, target, map })
    }

    pub fn identity_mts(actions: &BTreeSet<Action>) -> Self {
        let map = actions.iter().map(|a| (a.clone(), a.clone())).collect();
        SignatureMorphism::Mts { source: actions.clone(), target: actions.clone(), map }
    }

    pub fn identity_cc(sig: &Signature) -> Self {
        let map = sig.actions().into_iter().map(|a| (a.clone(), a)).collect();
        SignatureMorphism::Cc { source: sig.clone(), target: sig.clone(), map }
    }

    pub fn map(&self) -> &BTreeMap<Action, Action> {
        match self {
            SignatureMorphism::Mts { map, .. } | SignatureMorphism::Cc { map, .. } => map,
        }
    }

    pub fn apply(&self, a: &Action) -> Option<&Action> {
        self.map().get(a)
    }

    pub fn source_logic(&self) -> LogicKind {
        match self {
            SignatureMorphism::Mts { source, .. } => LogicKind::Bl(source.clone()),
            SignatureMorphism::Cc { source, .. } => LogicKind::Cc(source.clone()),
        }
    }

    pub fn target_logic(&self) -> LogicKind {
        match self {
            SignatureMorphism::Mts { target, .. } => LogicKind::Bl(target.clone()),
            SignatureMorphism::Cc { target, .. } => LogicKind::Cc(target.clone()),
        }
    }

    /// `g ∘ self`: first `self`, then `g`.
    pub fn then(&self, g: &SignatureMorphism) -> Result<SignatureMorphism> {
        let compose = |f: &BTreeMap<Action, Action>| -> Result<BTreeMap<Action, Action>> {
            f.iter()
                .map(|(a, b)| {
                    let c = g.apply(b).ok_or_else(|| Error::NonTotalMap(b.clone()))?;
                    Ok((a.clone(), c.clone()))
                })
                .collect()
        };
        match (self, g) {
            (
                SignatureMorphism::Mts { source, target, map },
                SignatureMorphism::Mts { source: mid, target: end, .. },
            ) => {
                if target != mid {
                    return Err(Error::SignatureMismatch);
                }
                SignatureMorphism::mts(source.clone(), end.clone(), compose(map)?)
            }
            (SignatureMorphism::Cc { source, target, map }, SignatureMorphism::Cc { source: mid, target: end, .. }) => {
                if target != mid {
                    return Err(Error::SignatureMismatch);
                }
                SignatureMorphism::cc(source.clone(), end.clone(), compose(map)?)
            }
            _ => Err(Error::SignatureMismatch),
        }
    }
}

/// `sen(f)(φ)`: every label `a` replaced by `f(a)`.
pub fn sen_map(f: &SignatureMorphism, phi: &Formula) -> Result<Formula> {
    ensure_wf(phi, &f.source_logic())?;
    let out = phi.map_labels(|a| f.apply(a).expect("well-formed labels are in the source").clone());
    debug_assert!(ensure_wf(&out, &f.target_logic()).is_ok());
    Ok(out)
}

fn pull_back(trans: &BTreeSet<Transition>, f: &BTreeMap<Action, Action>) -> BTreeSet<Transition> {
    let mut preimages: BTreeMap<&Action, Vec<&Action>> = BTreeMap::new();
    for (a, b) in f {
        preimages.entry(b).or_default().push(a);
    }
    let mut out = BTreeSet::new();
    for t in trans {
        for a in preimages.get(&t.label).into_iter().flatten() {
            out.insert(Transition::new(t.source, (*a).clone(), t.target));
        }
    }
    out
}

/// The reduct `S|f` of a model over the target of `f`: `s -a-> s'` in the
/// reduct iff `s -f(a)-> s'` in `S`, separately for may and must. States
/// and the distinguished state are unchanged.
pub fn reduct(s: &System, f: &SignatureMorphism) -> Result<System> {
    match (s, f) {
        (System::Mts(m), SignatureMorphism::Mts { source, target, map }) => {
            if m.actions() != target {
                return Err(Error::SignatureMismatch);
            }
            Ok(System::Mts(Mts::from_parts(
                m.name(),
                m.states().to_vec(),
                source.clone(),
                pull_back(m.may(), map),
                pull_back(m.must(), map),
                m.init(),
            )))
        }
        (System::Lts(l), SignatureMorphism::Cc { source, target, map }) => {
            if l.signature() != target {
                return Err(Error::SignatureMismatch);
            }
            Ok(System::Lts(Lts::from_parts(
                l.name(),
                l.states().to_vec(),
                source.clone(),
                pull_back(l.transitions(), map),
                l.init(),
            )))
        }
        _ => Err(Error::SignatureMismatch),
    }
}

fn model_check(s: &System, state: StateId, phi: &Formula) -> Result<bool> {
    match s {
        System::Mts(m) => mc_mts(m, state, phi),
        System::Lts(l) => mc_cc(l, state, phi),
    }
}

/// Both sides of the satisfaction condition
/// `S' ⊨ sen(f)(φ) ⟺ S'|f ⊨ φ` at `state`.
pub fn satisfaction_sides(f: &SignatureMorphism, s: &System, state: StateId, phi: &Formula) -> Result<(bool, bool)> {
    let translated = model_check(s, state, &sen_map(f, phi)?)?;
    let reduced = model_check(&reduct(s, f)?, state, phi)?;
    Ok((translated, reduced))
}

/// Whether the satisfaction condition holds for this instance.
pub fn check_satisfaction_condition(f: &SignatureMorphism, s: &System, state: StateId, phi: &Formula) -> Result<bool> {
    let (l, r) = satisfaction_sides(f, s, state, phi)?;
    Ok(l == r)
}

/// `Φ(A) = (cv(A), ct(A), ∅)`.
pub fn phi_signature(actions: &BTreeSet<Action>) -> Signature {
    Signature::decorated(actions)
}

/// `α`, translating covariant-contravariant formulas over `Φ(A)` into modal
/// formulas over `A`; the same map as the inverse of the formula
/// translation `C`.
pub fn alpha(phi: &Formula) -> Result<Formula> {
    formula_c_inverse(phi)
}

/// `β(M, s) = (C(M), s)`.
pub fn beta(m: &Mts) -> Result<Lts> {
    lts_of_mts(m)
}

/// Both sides of `(M, s) ⊨ α(φ) ⟺ β(M, s) ⊨ φ`.
pub fn morphism_sides(m: &Mts, state: StateId, phi: &Formula) -> Result<(bool, bool)> {
    ensure_wf(phi, &LogicKind::Cc(phi_signature(m.actions())))?;
    Ok((mc_mts(m, state, &alpha(phi)?)?, mc_cc(&beta(m)?, state, phi)?))
}

/// The canonical one-state objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessKind {
    /// Loops on every covariant label; every LTS over a signature without
    /// bivariant labels simulates into it.
    WeaklyFinalCc,
    /// Loops on every contravariant label; it simulates into every LTS over
    /// a signature without bivariant labels.
    UniversalSpecCc,
    /// May loops on every action: it refines into every MTS.
    WeaklyInitialMts,
}

/// The witness of `kind` over `sig` (for MTSs, over the labels of `sig`).
/// Both LTS witnesses need an empty bivariant class.
pub fn canonical_witness(kind: WitnessKind, sig: &Signature) -> Result<System> {
    let one = vec!["s".to_string()];
    let loops = |labels: &BTreeSet<Action>| labels.iter().map(|a| Transition::new(0, a.clone(), 0)).collect();
    match kind {
        WitnessKind::WeaklyFinalCc | WitnessKind::UniversalSpecCc if !sig.bivariant.is_empty() => {
            Err(Error::BivariantNotAllowed)
        }
        WitnessKind::WeaklyFinalCc => Ok(Lts::from_parts("F", one, sig.clone(), loops(&sig.covariant), 0).into()),
        WitnessKind::UniversalSpecCc => Ok(Lts::from_parts("I", one, sig.clone(), loops(&sig.contravariant), 0).into()),
        WitnessKind::WeaklyInitialMts => {
            let actions = sig.actions();
            Ok(Mts::from_parts("U", one, actions.clone(), loops(&actions), BTreeSet::new(), 0).into())
        }
    }
}

/// Whether the witness admits its arrow with `(other, state)`: into it for
/// the weakly final object, out of it for the other two.
pub fn witness_admits(kind: WitnessKind, witness: &System, other: &System, state: StateId) -> Result<bool> {
    match (kind, witness, other) {
        (WitnessKind::WeaklyFinalCc, System::Lts(w), System::Lts(p)) => {
            Ok(greatest_ccsim(p, w)?.contains(state, w.init()))
        }
        (WitnessKind::UniversalSpecCc, System::Lts(w), System::Lts(p)) => {
            Ok(greatest_ccsim(w, p)?.contains(w.init(), state))
        }
        (WitnessKind::WeaklyInitialMts, System::Mts(w), System::Mts(m)) => {
            Ok(greatest_refinement(w, m)?.contains(w.init(), state))
        }
        _ => Err(Error::SignatureMismatch),
    }
}

/// The two one-state MTSs that no single MTS can receive arrows from:
/// `M` with a must loop on every action and `N` with no transitions.
pub fn final_object_obstruction(actions: &BTreeSet<Action>) -> (Mts, Mts) {
    let loops: BTreeSet<Transition> = actions.iter().map(|a| Transition::new(0, a.clone(), 0)).collect();
    let m = Mts::from_parts("M", vec!["m".into()], actions.clone(), loops.clone(), loops, 0);
    let n = Mts::from_parts("N", vec!["n".into()], actions.clone(), BTreeSet::new(), BTreeSet::new(), 0);
    (m, n)
}

/// The two one-state LTSs that no single LTS has arrows into: `P` looping
/// on the bivariant label `c` and `Q` with no transitions.
pub fn initial_object_obstruction(sig: &Signature, c: &Action) -> Result<(Lts, Lts)> {
    if !sig.bivariant.contains(c) {
        return Err(Error::InvalidLabel(c.clone()));
    }
    let p = Lts::from_parts("P", vec!["p".into()], sig.clone(), [Transition::new(0, c.clone(), 0)].into(), 0);
    let q = Lts::from_parts("Q", vec!["q".into()], sig.clone(), BTreeSet::new(), 0);
    Ok((p, q))
}

/// Every transition set over `n` states and `labels`, as bit masks.
fn all_transitions(n: usize, labels: &BTreeSet<Action>) -> Vec<Transition> {
    let mut v = Vec::new();
    for s in 0..n {
        for a in labels {
            for t in 0..n {
                v.push(Transition::new(s, a.clone(), t));
            }
        }
    }
    v
}

fn subset(all: &[Transition], mask: u64) -> BTreeSet<Transition> {
    all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()).collect()
}

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// Searches every pointed MTS over `actions` with at most `max_states`
/// states for one that both obstruction systems refine into. Returns the
/// first found, and the number of candidates examined.
pub fn search_weakly_final_mts(actions: &BTreeSet<Action>, max_states: usize) -> Result<(Option<Mts>, usize)> {
    let (m, n) = final_object_obstruction(actions);
    let mut examined = 0;
    for k in 1..=max_states {
        let all = all_transitions(k, actions);
        assert!(all.len() < 20, "search space too large");
        for may_mask in 0u64..(1 << all.len()) {
            // must ⊆ may: iterate over the submasks of the may mask.
            let mut must_mask = may_mask;
            loop {
                let cand = Mts::from_parts(
                    "F",
                    state_names(k),
                    actions.clone(),
                    subset(&all, may_mask),
                    subset(&all, must_mask),
                    0,
                );
                let from_m = greatest_refinement(&m, &cand)?;
                let from_n = greatest_refinement(&n, &cand)?;
                for s in 0..k {
                    examined += 1;
                    if from_m.contains(0, s) && from_n.contains(0, s) {
                        return Ok((Some(cand.with_init(s)), examined));
                    }
                }
                if must_mask == 0 {
                    break;
                }
                must_mask = (must_mask - 1) & may_mask;
            }
        }
    }
    Ok((None, examined))
}

/// Searches every pointed LTS over `sig` with at most `max_states` states
/// for one that simulates into both obstruction systems for `c`.
pub fn search_weakly_initial_cc(sig: &Signature, c: &Action, max_states: usize) -> Result<(Option<Lts>, usize)> {
    let (p, q) = initial_object_obstruction(sig, c)?;
    let labels = sig.actions();
    let mut examined = 0;
    for k in 1..=max_states {
        let all = all_transitions(k, &labels);
        assert!(all.len() < 20, "search space too large");
        for mask in 0u64..(1 << all.len()) {
            let cand = Lts::from_parts("I", state_names(k), sig.clone(), subset(&all, mask), 0);
            let to_p = greatest_ccsim(&cand, &p)?;
            let to_q = greatest_ccsim(&cand, &q)?;
            for s in 0..k {
                examined += 1;
                if to_p.contains(s, 0) && to_q.contains(s, 0) {
                    return Ok((Some(cand.with_init(s)), examined));
                }
            }
        }
    }
    Ok((None, examined))
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

    #[test]
    fn identity_sentence_map() {
        let f = SignatureMorphism::identity_mts(&label_set(["a"]));
        let phi = Formula::diamond(a(), Formula::boxed(a(), Formula::Bottom));
        assert_eq!(sen_map(&f, &phi).unwrap(), phi);
    }

    #[test]
    fn renaming_sentence_map() {
        let f = SignatureMorphism::mts(label_set(["a"]), label_set(["b"]), [(a(), b())].into()).unwrap();
        assert_eq!(sen_map(&f, &Formula::diamond(a(), Formula::Top)).unwrap(), Formula::diamond(b(), Formula::Top));
    }

    #[test]
    fn class_violating_morphism_is_rejected() {
        let src = Signature::plain(&["a"], &[], &[]);
        let tgt = Signature::plain(&[], &["b"], &[]);
        assert!(matches!(SignatureMorphism::cc(src, tgt, [(a(), b())].into()), Err(Error::ClassIncompatible { .. })));
        assert_eq!(
            SignatureMorphism::mts(label_set(["a", "b"]), label_set(["a"]), [(a(), a())].into()),
            Err(Error::NonTotalMap(b()))
        );
    }

    #[test]
    fn reduct_along_a_non_injective_map() {
        // f(a) = f(b) = c: one target transition, two source transitions.
        let c = Action::plain("c");
        let f = SignatureMorphism::mts(label_set(["a", "b"]), label_set(["c"]), [(a(), c.clone()), (b(), c)].into())
            .unwrap();
        let m = Mts::builder("m").must("p", "c", "q").build().unwrap();
        let r = reduct(&m.into(), &f).unwrap();
        let r = r.as_mts().unwrap();
        assert_eq!(r.may().len(), 2);
        assert_eq!(r.must().len(), 2);
        assert_eq!(r.num_states(), 2);
    }

    #[test]
    fn reduct_along_a_non_surjective_map() {
        let f = SignatureMorphism::mts(label_set(["a"]), label_set(["a", "b"]), [(a(), a())].into()).unwrap();
        let m = Mts::builder("m").may("p", "a", "q").may("q", "b", "p").build().unwrap();
        let r = reduct(&m.into(), &f).unwrap();
        assert_eq!(r.as_mts().unwrap().may().len(), 1);
    }

    #[test]
    fn identity_morphism_satisfies_condition() {
        let sig = Signature::plain(&["a"], &["b"], &[]);
        let f = SignatureMorphism::identity_cc(&sig);
        let l: System = Lts::builder("l", sig).trans("p", "a", "q").trans("q", "b", "p").build().unwrap().into();
        let phi = Formula::diamond(a(), Formula::boxed(b(), Formula::Bottom));
        for s in 0..2 {
            assert!(check_satisfaction_condition(&f, &l, s, &phi).unwrap());
        }
    }

    #[test]
    fn alpha_clauses() {
        assert_eq!(
            alpha(&Formula::diamond(Action::cv(a()), Formula::Top)).unwrap(),
            Formula::diamond(a(), Formula::Top)
        );
        assert_eq!(alpha(&Formula::Bottom).unwrap(), Formula::Bottom);
    }

    #[test]
    fn witnesses() {
        let sig = Signature::plain(&["a"], &["b"], &[]);
        let f = canonical_witness(WitnessKind::WeaklyFinalCc, &sig).unwrap();
        let i = canonical_witness(WitnessKind::UniversalSpecCc, &sig).unwrap();
        let l: System =
            Lts::builder("l", sig.clone()).trans("p", "a", "q").trans("q", "b", "p").build().unwrap().into();
        for s in 0..2 {
            assert!(witness_admits(WitnessKind::WeaklyFinalCc, &f, &l, s).unwrap());
            assert!(witness_admits(WitnessKind::UniversalSpecCc, &i, &l, s).unwrap());
        }
        let bi = Signature::plain(&["a"], &[], &["c"]);
        assert_eq!(canonical_witness(WitnessKind::WeaklyFinalCc, &bi), Err(Error::BivariantNotAllowed));
        let u = canonical_witness(WitnessKind::WeaklyInitialMts, &sig).unwrap();
        assert_eq!(u.as_mts().unwrap().may().len(), 2);
    }

    #[test]
    fn no_weakly_final_mts_up_to_two_states() {
        let (found, examined) = search_weakly_final_mts(&label_set(["a"]), 2).unwrap();
        assert_eq!(found, None);
        assert!(examined > 0);
    }

    #[test]
    fn no_weakly_initial_lts_with_bivariant_label() {
        let sig = Signature::plain(&[], &[], &["c"]);
        let (found, _) = search_weakly_initial_cc(&sig, &Action::plain("c"), 2).unwrap();
        assert_eq!(found, None);
    }
}
