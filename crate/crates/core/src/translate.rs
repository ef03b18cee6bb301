//! Translations between covariant-contravariant LTSs, MTSs and partial
//! bisimulation LTSs, on systems and on formulas.
//!
//! * `M`: LTS to MTS. Every transition becomes a may transition, covariant
//!   and bivariant ones also must transitions, and a fresh state `u` that
//!   may do anything is reachable by every covariant action from every
//!   state.
//! * `C`: MTS to LTS over `(cv(A), ct(A), ∅)`; may transitions become
//!   `ct(a)` and must transitions `cv(a)`. `C` is injective and
//!   [`c_inverse_system`] undoes it.
//! * `N`: plain LTS with a bisimulation set `B` to MTS; every transition is
//!   may, and `B`-labelled ones are also must.
//! * `ρ` forgets the `cv`/`ct` decoration; the overline renaming adds it
//!   according to the signature class.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::action::{Action, Signature};
use crate::error::{Error, Result};
use crate::logic::{ensure_wf, Formula, LogicKind, Modality, Rewrite};
use crate::system::{Lts, Mts, Relabel, System, Transition};

/// Summary of a system translation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationReport {
    pub input: &'static str,
    pub output: &'static str,
    /// Whether a fresh state was introduced, which happens exactly for `M`.
    pub added_state: bool,
    pub fresh_state: Option<String>,
    /// Each input label with the output labels it gives rise to.
    pub label_map: BTreeMap<String, Vec<String>>,
}

/// Name for the fresh state of `M`: `u`, or the first of `u_1`, `u_2`, ...
/// not already used.
fn fresh_name(states: &[String]) -> String {
    let used: BTreeSet<&str> = states.iter().map(String::as_str).collect();
    if !used.contains("u") {
        return "u".to_string();
    }
    (1..).map(|i| format!("u_{i}")).find(|n| !used.contains(n.as_str())).expect("unbounded supply")
}

/// `M(P)`. The fresh state is appended after the states of `P`; it also
/// receives the covariant edges into itself, which its universal may loops
/// already subsume.
pub fn mts_of_lts(p: &Lts) -> Result<Mts> {
    p.ensure_valid()?;
    let sig = p.signature();
    let actions = sig.actions();
    let mut states = p.states().to_vec();
    let u = states.len();
    states.push(fresh_name(p.states()));
    let mut may: BTreeSet<Transition> = p.transitions().clone();
    let must: BTreeSet<Transition> = p.transitions().iter().filter(|t| sig.is_forward(&t.label)).cloned().collect();
    for s in 0..states.len() {
        for a in &sig.covariant {
            may.insert(Transition::new(s, a.clone(), u));
        }
    }
    for a in &actions {
        may.insert(Transition::new(u, a.clone(), u));
    }
    Ok(Mts::from_parts(p.name(), states, actions, may, must, p.init()))
}

/// `C(M)`.
pub fn lts_of_mts(m: &Mts) -> Result<Lts> {
    m.ensure_valid()?;
    let mut trans: BTreeSet<Transition> =
        m.may().iter().map(|t| Transition::new(t.source, Action::ct(t.label.clone()), t.target)).collect();
    trans.extend(m.must().iter().map(|t| Transition::new(t.source, Action::cv(t.label.clone()), t.target)));
    Ok(Lts::from_parts(m.name(), m.states().to_vec(), Signature::decorated(m.actions()), trans, m.init()))
}

/// The plain action set `A` of a signature of the form `(cv(A), ct(A), ∅)`.
fn undecorated_actions(sig: &Signature) -> Result<BTreeSet<Action>> {
    if let Some(a) = sig.bivariant.iter().next() {
        return Err(Error::NotInRange(format!("bivariant label {a}")));
    }
    let strip = |set: &BTreeSet<Action>, f: fn(&Action) -> Option<&Action>, tag: &str| {
        set.iter()
            .map(|a| f(a).cloned().ok_or_else(|| Error::NotInRange(format!("{tag} label {a} is not {tag}-decorated"))))
            .collect::<Result<BTreeSet<Action>>>()
    };
    let cov = strip(&sig.covariant, Action::as_cv, "cv")?;
    let con = strip(&sig.contravariant, Action::as_ct, "ct")?;
    if let Some(a) = cov.symmetric_difference(&con).next() {
        return Err(Error::NotInRange(format!("cv({a}) and ct({a}) are not both declared")));
    }
    Ok(cov)
}

/// The unique `M` with `C(M) = P`.
pub fn c_inverse_system(p: &Lts) -> Result<Mts> {
    p.ensure_valid()?;
    let actions = undecorated_actions(p.signature())?;
    let mut may = BTreeSet::new();
    let mut must = BTreeSet::new();
    for t in p.transitions() {
        match &t.label {
            Action::Ct(a) => {
                may.insert(Transition::new(t.source, (**a).clone(), t.target));
            }
            Action::Cv(a) => {
                let twin = Transition::new(t.source, Action::ct((**a).clone()), t.target);
                if !p.transitions().contains(&twin) {
                    return Err(Error::NotInRange(format!(
                        "transition {} -{}-> {} has no ct({a}) twin",
                        p.state_name(t.source),
                        t.label,
                        p.state_name(t.target)
                    )));
                }
                must.insert(Transition::new(t.source, (**a).clone(), t.target));
            }
            Action::Plain(_) => unreachable!("rejected by the signature check"),
        }
    }
    Ok(Mts::from_parts(p.name(), p.states().to_vec(), actions, may, must, p.init()))
}

/// `N(P)` for the bisimulation set `bisim`.
pub fn mts_of_pb_lts(p: &Lts, bisim: &BTreeSet<Action>) -> Result<Mts> {
    p.ensure_valid()?;
    let actions = p.signature().actions();
    if let Some(b) = bisim.difference(&actions).next() {
        return Err(Error::BisimSetNotSubset(b.clone()));
    }
    let must = p.transitions().iter().filter(|t| bisim.contains(&t.label)).cloned().collect();
    Ok(Mts::from_parts(p.name(), p.states().to_vec(), actions, p.transitions().clone(), must, p.init()))
}

fn rho_map<'a, I: IntoIterator<Item = &'a Action>>(labels: I) -> Result<BTreeMap<Action, Action>> {
    labels
        .into_iter()
        .map(|a| {
            let b = a.undecorated().ok_or_else(|| Error::NotInRange(format!("label {a} is not decorated")))?;
            Ok((a.clone(), b.clone()))
        })
        .collect()
}

/// `ρ` on an MTS: every `cv(a)` and `ct(a)` becomes `a`.
pub fn rho_mts(m: &Mts) -> Result<Mts> {
    let map = rho_map(m.actions())?;
    let target = map.values().cloned().collect();
    m.rename(&map, &target)
}

/// `ρ` on an LTS, read under `target`. Labels may change class, as in
/// `ρ(C(M(P)))` read under the signature of `P`.
pub fn rho_lts(p: &Lts, target: &Signature) -> Result<Lts> {
    let map = rho_map(&p.signature().actions())?;
    p.rename(&map, target, Relabel::Free)
}

/// The overline renaming: `a ↦ cv(a)` on covariant labels and `a ↦ ct(a)`
/// on contravariant ones. The result lives over `(cv(A), ct(A), ∅)` so it
/// can be compared with `C(Q)` for an MTS `Q` over `A`.
pub fn overline(p: &Lts) -> Result<Lts> {
    let sig = p.signature();
    if !sig.bivariant.is_empty() {
        return Err(Error::BivariantNotAllowed);
    }
    let mut map = BTreeMap::new();
    for a in &sig.covariant {
        map.insert(a.clone(), Action::cv(a.clone()));
    }
    for a in &sig.contravariant {
        map.insert(a.clone(), Action::ct(a.clone()));
    }
    p.rename(&map, &Signature::decorated(&sig.actions()), Relabel::ClassPreserving)
}

/// `C(M(P))`: an equivalent system without bivariant labels.
pub fn eliminate_bivariant(p: &Lts) -> Result<Lts> {
    lts_of_mts(&mts_of_lts(p)?)
}

/// `M(φ) = φ`; checks that `φ` is a covariant-contravariant formula over
/// `sig` and that the same tree is a modal formula over its actions.
pub fn formula_m(phi: &Formula, sig: &Signature) -> Result<Formula> {
    ensure_wf(phi, &LogicKind::Cc(sig.clone()))?;
    debug_assert!(ensure_wf(phi, &LogicKind::Bl(sig.actions())).is_ok());
    Ok(phi.clone())
}

/// `C(φ)`: `<a>` becomes `<cv(a)>` and `[a]` becomes `[ct(a)]`.
pub fn formula_c(phi: &Formula, actions: &BTreeSet<Action>) -> Result<Formula> {
    ensure_wf(phi, &LogicKind::Bl(actions.clone()))?;
    let out = formula_c_unchecked(phi);
    debug_assert!(ensure_wf(&out, &LogicKind::Cc(Signature::decorated(actions))).is_ok());
    Ok(out)
}

pub(crate) fn formula_c_unchecked(phi: &Formula) -> Formula {
    let out: Result<Formula, ()> = phi.try_map(&|m, a| {
        Ok(match m {
            Modality::Diamond => Rewrite::Modal(m, Action::cv(a.clone())),
            Modality::Box => Rewrite::Modal(m, Action::ct(a.clone())),
        })
    });
    out.expect("infallible")
}

/// Inverse of [`formula_c`]: `<cv(a)>` becomes `<a>` and `[ct(a)]` becomes
/// `[a]`; any other modality is outside the range of `C`.
pub fn formula_c_inverse(phi: &Formula) -> Result<Formula> {
    phi.try_map(&|m, a| match (m, a) {
        (Modality::Diamond, Action::Cv(b)) | (Modality::Box, Action::Ct(b)) => Ok(Rewrite::Modal(m, (**b).clone())),
        (Modality::Diamond, _) => Err(Error::NotInRange(format!("<{a}> is not of the form <cv(b)>"))),
        (Modality::Box, _) => Err(Error::NotInRange(format!("[{a}] is not of the form [ct(b)]"))),
    })
}

/// `MC(φ)` for the signature `sig`: `<a>ψ` is kept when `a` is covariant or
/// bivariant and becomes `ff` otherwise; `[a]ψ` is kept when `a` is
/// contravariant or bivariant and becomes `tt` otherwise.
pub fn formula_mc(phi: &Formula, sig: &Signature) -> Result<Formula> {
    ensure_wf(phi, &LogicKind::Bl(sig.actions()))?;
    let out: Result<Formula, ()> = phi.try_map(&|m, a| {
        Ok(match m {
            Modality::Diamond if sig.is_forward(a) => Rewrite::Modal(m, a.clone()),
            Modality::Diamond => Rewrite::Const(Formula::Bottom),
            Modality::Box if sig.is_backward(a) => Rewrite::Modal(m, a.clone()),
            Modality::Box => Rewrite::Const(Formula::Top),
        })
    });
    let out = out.expect("infallible");
    debug_assert!(ensure_wf(&out, &LogicKind::Cc(sig.clone())).is_ok());
    Ok(out)
}

/// `C` on process terms: `a!t` becomes `cv(a).C(t) + ct(a).C(t)` and `a.t`
/// becomes `ct(a).C(t)`.
pub fn term_c(t: &crate::term::MtsTerm) -> crate::term::LtsTerm {
    use crate::term::{LtsTerm, MtsTerm};
    match t {
        MtsTerm::Zero => LtsTerm::Zero,
        MtsTerm::Omega => LtsTerm::Omega,
        MtsTerm::May(a, s) => LtsTerm::prefix(Action::ct(a.clone()), term_c(s)),
        MtsTerm::Must(a, s) => {
            let c = term_c(s);
            LtsTerm::sum(LtsTerm::prefix(Action::cv(a.clone()), c.clone()), LtsTerm::prefix(Action::ct(a.clone()), c))
        }
        MtsTerm::Sum(l, r) => LtsTerm::sum(term_c(l), term_c(r)),
    }
}

/// Which system translation to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Which {
    M,
    C,
    N(BTreeSet<Action>),
    CInverse,
    /// `ρ`; for LTS inputs the signature to read the result under.
    Rho(Option<Signature>),
    Overline,
    EliminateBivariant,
}

fn label_map_of(pairs: impl IntoIterator<Item = (Action, Action)>) -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<Action, BTreeSet<Action>> = BTreeMap::new();
    for (a, b) in pairs {
        out.entry(a).or_default().insert(b);
    }
    out.into_iter().map(|(a, bs)| (a.to_string(), bs.iter().map(Action::to_string).collect())).collect()
}

fn wrong_kind(which: &Which, sys: &System) -> Error {
    Error::NotInRange(format!("translation {which:?} does not apply to an {} file", sys.kind()))
}

/// Runs a translation and summarises it.
pub fn translate(which: &Which, sys: &System) -> Result<(System, TranslationReport)> {
    let report = |input, output, fresh: Option<String>, map| TranslationReport {
        input,
        output,
        added_state: fresh.is_some(),
        fresh_state: fresh,
        label_map: map,
    };
    match (which, sys) {
        (Which::M, System::Lts(p)) => {
            let m = mts_of_lts(p)?;
            let fresh = m.states().last().cloned();
            let sig = p.signature();
            let map = label_map_of(sig.actions().into_iter().map(|a| (a.clone(), a)));
            Ok((m.into(), report("lts", "mts", fresh, map)))
        }
        (Which::C, System::Mts(m)) => {
            let l = lts_of_mts(m)?;
            let map = label_map_of(
                m.actions()
                    .iter()
                    .flat_map(|a| [(a.clone(), Action::cv(a.clone())), (a.clone(), Action::ct(a.clone()))]),
            );
            Ok((l.into(), report("mts", "lts", None, map)))
        }
        (Which::N(b), System::Lts(p)) => {
            let m = mts_of_pb_lts(p, b)?;
            let map = label_map_of(p.signature().actions().into_iter().map(|a| (a.clone(), a)));
            Ok((m.into(), report("lts", "mts", None, map)))
        }
        (Which::CInverse, System::Lts(p)) => {
            let m = c_inverse_system(p)?;
            let map = label_map_of(p.signature().actions().into_iter().filter_map(|a| {
                let b = a.undecorated()?.clone();
                Some((a, b))
            }));
            Ok((m.into(), report("lts", "mts", None, map)))
        }
        (Which::Rho(_), System::Mts(m)) => {
            let r = rho_mts(m)?;
            let map = label_map_of(rho_map(m.actions())?);
            Ok((r.into(), report("mts", "mts", None, map)))
        }
        (Which::Rho(target), System::Lts(p)) => {
            let map = rho_map(&p.signature().actions())?;
            let target = match target {
                Some(t) => t.clone(),
                None => {
                    return Err(Error::NotInRange(
                        "rho on an LTS needs a target signature (--cov/--con/--bi)".to_string(),
                    ))
                }
            };
            let r = rho_lts(p, &target)?;
            Ok((r.into(), report("lts", "lts", None, label_map_of(map))))
        }
        (Which::Overline, System::Lts(p)) => {
            let o = overline(p)?;
            let sig = p.signature();
            let map = label_map_of(
                sig.covariant
                    .iter()
                    .map(|a| (a.clone(), Action::cv(a.clone())))
                    .chain(sig.contravariant.iter().map(|a| (a.clone(), Action::ct(a.clone())))),
            );
            Ok((o.into(), report("lts", "lts", None, map)))
        }
        (Which::EliminateBivariant, System::Lts(p)) => {
            let l = eliminate_bivariant(p)?;
            let fresh = l.states().last().cloned();
            let sig = p.signature();
            let map = label_map_of(sig.actions().into_iter().flat_map(|a| {
                let mut v = vec![(a.clone(), Action::ct(a.clone()))];
                if sig.is_forward(&a) {
                    v.push((a.clone(), Action::cv(a.clone())));
                }
                v
            }));
            Ok((l.into(), report("lts", "lts", fresh, map)))
        }
        _ => Err(wrong_kind(which, sys)),
    }
}
