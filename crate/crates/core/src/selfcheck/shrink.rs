//! Greedy shrinking: repeatedly replace the instance by the first smaller
//! candidate that still fails, until none does.

use std::collections::BTreeSet;

use super::Instance;
use crate::action::Action;
use crate::logic::Formula;
use crate::system::{Lts, Mts, StateId, System, Transition};
use crate::term::{LtsTerm, MtsTerm};

const MAX_STEPS: usize = 500;

/// Shrinks `inst` while `fails` returns a message; returns the smallest
/// failing instance found, its message and the number of steps taken.
pub(super) fn shrink(
    mut inst: Instance,
    mut message: String,
    fails: impl Fn(&Instance) -> Option<String>,
) -> (Instance, String, usize) {
    let mut steps = 0;
    'outer: while steps < MAX_STEPS {
        for cand in candidates(&inst) {
            if let Some(m) = fails(&cand) {
                inst = cand;
                message = m;
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    (inst, message, steps)
}

fn candidates(inst: &Instance) -> Vec<Instance> {
    let mut out = Vec::new();
    if inst.morphisms.is_empty() {
        out.extend(drop_labels(inst));
    }
    for (i, s) in inst.systems.iter().enumerate() {
        for smaller in shrink_system(s) {
            let mut c = inst.clone();
            c.systems[i] = smaller;
            out.push(c);
        }
    }
    if let Some(f) = &inst.formula {
        for g in shrink_formula(f) {
            out.push(Instance { formula: Some(g), ..inst.clone() });
        }
    }
    for (i, t) in inst.mts_terms.iter().enumerate() {
        for u in shrink_mts_term(t) {
            let mut c = inst.clone();
            c.mts_terms[i] = u;
            out.push(c);
        }
    }
    for (i, t) in inst.lts_terms.iter().enumerate() {
        for u in shrink_lts_term(t) {
            let mut c = inst.clone();
            c.lts_terms[i] = u;
            out.push(c);
        }
    }
    out
}

/// Labels a check may depend on besides the systems themselves.
fn mentioned(inst: &Instance) -> BTreeSet<Action> {
    let mut out = BTreeSet::new();
    if let Some(f) = &inst.formula {
        out.extend(f.labels());
    }
    if let Some(b) = &inst.bisim {
        out.extend(b.iter().cloned());
    }
    for t in &inst.mts_terms {
        out.extend(t.labels());
    }
    for t in &inst.lts_terms {
        out.extend(t.labels());
    }
    out
}

/// Removes one unmentioned label, with its transitions, from every system
/// at once so that systems compared with each other keep equal signatures.
fn drop_labels(inst: &Instance) -> Vec<Instance> {
    let keep = mentioned(inst);
    let labels: BTreeSet<Action> = inst
        .systems
        .iter()
        .flat_map(|s| match s {
            System::Mts(m) => m.actions().clone(),
            System::Lts(l) => l.signature().actions(),
        })
        .collect();
    if labels.len() <= 1 {
        return Vec::new();
    }
    labels
        .iter()
        .filter(|a| !keep.contains(a))
        .map(|a| {
            let systems = inst.systems.iter().map(|s| without_label(s, a)).collect();
            Instance { systems, ..inst.clone() }
        })
        .collect()
}

fn without_label(s: &System, a: &Action) -> System {
    let strip = |set: &BTreeSet<Transition>| set.iter().filter(|t| &t.label != a).cloned().collect();
    match s {
        System::Mts(m) => {
            let mut actions = m.actions().clone();
            actions.remove(a);
            Mts::from_parts(m.name(), m.states().to_vec(), actions, strip(m.may()), strip(m.must()), m.init()).into()
        }
        System::Lts(l) => {
            let mut sig = l.signature().clone();
            sig.covariant.remove(a);
            sig.contravariant.remove(a);
            sig.bivariant.remove(a);
            Lts::from_parts(l.name(), l.states().to_vec(), sig, strip(l.transitions()), l.init()).into()
        }
    }
}

fn drop_state(trans: &BTreeSet<Transition>, k: StateId) -> BTreeSet<Transition> {
    let re = |s: StateId| if s > k { s - 1 } else { s };
    trans
        .iter()
        .filter(|t| t.source != k && t.target != k)
        .map(|t| Transition::new(re(t.source), t.label.clone(), re(t.target)))
        .collect()
}

fn without_state(states: &[String], k: StateId) -> Vec<String> {
    states.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, s)| s.clone()).collect()
}

fn shrink_system(s: &System) -> Vec<System> {
    let mut out = Vec::new();
    match s {
        System::Mts(m) => {
            let init = m.init();
            for k in (0..m.num_states()).filter(|&k| k != init) {
                let init = if init > k { init - 1 } else { init };
                out.push(System::Mts(Mts::from_parts(
                    m.name(),
                    without_state(m.states(), k),
                    m.actions().clone(),
                    drop_state(m.may(), k),
                    drop_state(m.must(), k),
                    init,
                )));
            }
            for t in m.must() {
                let mut must = m.must().clone();
                must.remove(t);
                out.push(
                    Mts::from_parts(m.name(), m.states().to_vec(), m.actions().clone(), m.may().clone(), must, init)
                        .into(),
                );
            }
            for t in m.may() {
                let (mut may, mut must) = (m.may().clone(), m.must().clone());
                may.remove(t);
                must.remove(t);
                out.push(Mts::from_parts(m.name(), m.states().to_vec(), m.actions().clone(), may, must, init).into());
            }
        }
        System::Lts(l) => {
            let init = l.init();
            for k in (0..l.num_states()).filter(|&k| k != init) {
                let init = if init > k { init - 1 } else { init };
                out.push(System::Lts(Lts::from_parts(
                    l.name(),
                    without_state(l.states(), k),
                    l.signature().clone(),
                    drop_state(l.transitions(), k),
                    init,
                )));
            }
            for t in l.transitions() {
                let mut trans = l.transitions().clone();
                trans.remove(t);
                out.push(Lts::from_parts(l.name(), l.states().to_vec(), l.signature().clone(), trans, init).into());
            }
        }
    }
    out
}

fn shrink_formula(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    if !matches!(f, Formula::Top | Formula::Bottom) {
        out.push(Formula::Top);
        out.push(Formula::Bottom);
    }
    match f {
        Formula::Top | Formula::Bottom => {}
        Formula::And(l, r) | Formula::Or(l, r) => {
            out.push((**l).clone());
            out.push((**r).clone());
            let rebuild = |l: Formula, r: Formula| match f {
                Formula::And(..) => Formula::and(l, r),
                _ => Formula::or(l, r),
            };
            for l2 in shrink_formula(l) {
                out.push(rebuild(l2, (**r).clone()));
            }
            for r2 in shrink_formula(r) {
                out.push(rebuild((**l).clone(), r2));
            }
        }
        Formula::Box(a, g) => {
            out.push((**g).clone());
            out.extend(shrink_formula(g).into_iter().map(|h| Formula::boxed(a.clone(), h)));
        }
        Formula::Diamond(a, g) => {
            out.push((**g).clone());
            out.extend(shrink_formula(g).into_iter().map(|h| Formula::diamond(a.clone(), h)));
        }
    }
    out
}

fn shrink_mts_term(t: &MtsTerm) -> Vec<MtsTerm> {
    let mut out = Vec::new();
    if !matches!(t, MtsTerm::Zero | MtsTerm::Omega) {
        out.push(MtsTerm::Zero);
        out.push(MtsTerm::Omega);
    }
    match t {
        MtsTerm::Zero | MtsTerm::Omega => {}
        MtsTerm::May(a, s) | MtsTerm::Must(a, s) => {
            out.push((**s).clone());
            let must = matches!(t, MtsTerm::Must(..));
            if must {
                out.push(MtsTerm::may(a.clone(), (**s).clone()));
            }
            for s2 in shrink_mts_term(s) {
                out.push(if must { MtsTerm::must(a.clone(), s2) } else { MtsTerm::may(a.clone(), s2) });
            }
        }
        MtsTerm::Sum(l, r) => {
            out.push((**l).clone());
            out.push((**r).clone());
            out.extend(shrink_mts_term(l).into_iter().map(|l2| MtsTerm::sum(l2, (**r).clone())));
            out.extend(shrink_mts_term(r).into_iter().map(|r2| MtsTerm::sum((**l).clone(), r2)));
        }
    }
    out
}

fn shrink_lts_term(t: &LtsTerm) -> Vec<LtsTerm> {
    let mut out = Vec::new();
    if !matches!(t, LtsTerm::Zero | LtsTerm::Omega) {
        out.push(LtsTerm::Zero);
        out.push(LtsTerm::Omega);
    }
    match t {
        LtsTerm::Zero | LtsTerm::Omega => {}
        LtsTerm::Prefix(a, s) => {
            out.push((**s).clone());
            out.extend(shrink_lts_term(s).into_iter().map(|s2| LtsTerm::prefix(a.clone(), s2)));
        }
        LtsTerm::Sum(l, r) => {
            out.push((**l).clone());
            out.push((**r).clone());
            out.extend(shrink_lts_term(l).into_iter().map(|l2| LtsTerm::sum(l2, (**r).clone())));
            out.extend(shrink_lts_term(r).into_iter().map(|r2| LtsTerm::sum((**l).clone(), r2)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shrinks_to_a_minimal_failing_formula() {
        // "fails" whenever the formula mentions a diamond.
        let f = Formula::and(
            Formula::boxed(Action::plain("a"), Formula::Top),
            Formula::or(Formula::Bottom, Formula::diamond(Action::plain("a"), Formula::Bottom)),
        );
        let inst = Instance { formula: Some(f), ..Instance::default() };
        let (small, _, steps) =
            shrink(inst, String::new(), |i| i.formula.as_ref().unwrap().to_string().contains('<').then(String::new));
        assert_eq!(steps, 2);
        assert_eq!(small.formula.unwrap().to_string(), "<a>ff");
    }

    #[test]
    fn dropping_a_state_reindexes() {
        let m = Mts::builder("m").must("p", "a", "q").may("q", "a", "r").may("r", "a", "p").build().unwrap();
        let smaller = shrink_system(&m.into());
        let first = smaller[0].as_mts().unwrap();
        assert_eq!(first.states(), ["p", "r"]);
        assert_eq!(first.may().len(), 1);
        assert!(first.validate().is_empty());
    }

    #[test]
    fn unmentioned_labels_are_dropped() {
        let m = Mts::builder("m").must("p", "a", "q").may("p", "b", "q").build().unwrap();
        let inst = Instance {
            systems: vec![m.into()],
            formula: Some(Formula::diamond(Action::plain("a"), Formula::Top)),
            ..Instance::default()
        };
        let (small, _, _) = shrink(inst, String::new(), |i| {
            let m = i.systems[0].as_mts().unwrap();
            (m.must().len() == 1).then(String::new)
        });
        let m = small.systems[0].as_mts().unwrap();
        assert_eq!(m.actions().len(), 1);
        assert_eq!(m.may().len(), 1);
    }
}
