//! Seeded samplers for systems, signatures, formulas and signature
//! morphisms. Every sampler draws from a caller-supplied generator, so a
//! whole run is reproducible from one seed; [`rng`] builds the generator
//! used throughout (ChaCha8).
//!
//! Systems: the state count is uniform in `1..=max_states`, the transition
//! count uniform in `0..=min(max_transitions, n·|A|·n)`, and the
//! transitions a uniform subset of that size. For an MTS those are the may
//! transitions; the must set is a uniform-size uniform subset of them, so
//! `must ⊆ may` holds by construction.
//!
//! Formulas: below the modal depth bound every connective available for the
//! label pools is equally likely (`tt`, `ff`, `&`, `|`, `[a]` when the box
//! pool is non-empty, `<a>` when the diamond pool is non-empty); at the
//! bound only `tt` and `ff` remain. Connective nesting is capped at two
//! levels past the modal bound.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{Action, Signature};
use crate::institution::SignatureMorphism;
use crate::logic::{Formula, LogicKind};
use crate::system::{Lts, Mts, System, Transition};
use crate::term::{LtsTerm, MtsTerm};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemBounds {
    pub max_states: usize,
    pub max_transitions: usize,
}

impl Default for SystemBounds {
    fn default() -> Self {
        SystemBounds { max_states: 4, max_transitions: 8 }
    }
}

/// What [`random_system`] samples over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemKind {
    Mts(BTreeSet<Action>),
    Lts(Signature),
}

const POOL: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

fn sample_transitions<R: Rng>(rng: &mut R, n: usize, labels: &BTreeSet<Action>, max: usize) -> Vec<Transition> {
    let labels: Vec<&Action> = labels.iter().collect();
    let space = n * labels.len() * n;
    let k = rng.gen_range(0..=max.min(space));
    let mut picked: Vec<usize> = index::sample(rng, space, k).into_vec();
    picked.sort_unstable();
    picked
        .into_iter()
        .map(|i| {
            let (s, rest) = (i / (labels.len() * n), i % (labels.len() * n));
            Transition::new(s, labels[rest / n].clone(), rest % n)
        })
        .collect()
}

pub fn random_mts<R: Rng>(rng: &mut R, actions: &BTreeSet<Action>, bounds: SystemBounds) -> Mts {
    let n = rng.gen_range(1..=bounds.max_states.max(1));
    let may = sample_transitions(rng, n, actions, bounds.max_transitions);
    let m = rng.gen_range(0..=may.len());
    let must: BTreeSet<Transition> = index::sample(rng, may.len(), m).into_iter().map(|i| may[i].clone()).collect();
    let init = rng.gen_range(0..n);
    Mts::from_parts("random", state_names(n), actions.clone(), may.into_iter().collect(), must, init)
}

pub fn random_lts<R: Rng>(rng: &mut R, sig: &Signature, bounds: SystemBounds) -> Lts {
    let n = rng.gen_range(1..=bounds.max_states.max(1));
    let trans = sample_transitions(rng, n, &sig.actions(), bounds.max_transitions);
    let init = rng.gen_range(0..n);
    Lts::from_parts("random", state_names(n), sig.clone(), trans.into_iter().collect(), init)
}

pub fn random_system(seed: u64, bounds: SystemBounds, kind: &SystemKind) -> System {
    let mut r = rng(seed);
    match kind {
        SystemKind::Mts(a) => random_mts(&mut r, a, bounds).into(),
        SystemKind::Lts(s) => random_lts(&mut r, s, bounds).into(),
    }
}

/// Between one and `max` labels, `a`, `b`, … in order.
pub fn random_actions<R: Rng>(rng: &mut R, max: usize) -> BTreeSet<Action> {
    let k = rng.gen_range(1..=max.clamp(1, POOL.len()));
    POOL[..k].iter().map(|n| Action::plain(n)).collect()
}

/// Up to `per_class` labels in each class, at least one label overall;
/// labels are drawn in order from `a`, `b`, … so the classes are disjoint.
pub fn random_signature<R: Rng>(rng: &mut R, per_class: usize, bivariant: bool) -> Signature {
    let per_class = per_class.min(POOL.len() / 3);
    loop {
        let mut names = POOL.iter();
        let mut class = |rng: &mut R, on: bool| -> BTreeSet<Action> {
            let k = if on { rng.gen_range(0..=per_class) } else { 0 };
            names.by_ref().take(k).map(|n| Action::plain(n)).collect()
        };
        let cov = class(rng, true);
        let con = class(rng, true);
        let bi = class(rng, bivariant);
        if !(cov.is_empty() && con.is_empty() && bi.is_empty()) {
            return Signature { covariant: cov, contravariant: con, bivariant: bi };
        }
    }
}

/// Label pools for `<a>` and `[a]` under `logic`.
pub fn modal_pools(logic: &LogicKind) -> (Vec<Action>, Vec<Action>) {
    match logic {
        LogicKind::Bl(a) => (a.iter().cloned().collect(), a.iter().cloned().collect()),
        LogicKind::Cc(s) => {
            let fwd = s.actions().into_iter().filter(|a| s.is_forward(a)).collect();
            let bwd = s.actions().into_iter().filter(|a| s.is_backward(a)).collect();
            (fwd, bwd)
        }
    }
}

/// A formula of modal depth at most `depth`, well formed for `logic`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, logic: &LogicKind) -> Formula {
    let (dia, bx) = modal_pools(logic);
    random_formula_over(rng, depth, &dia, &bx)
}

/// A formula with diamonds drawn from `diamonds` and boxes from `boxes`;
/// an empty pool disables that modality.
pub fn random_formula_over<R: Rng>(rng: &mut R, depth: usize, diamonds: &[Action], boxes: &[Action]) -> Formula {
    gen_formula(rng, depth, depth + 2, diamonds, boxes)
}

fn gen_formula<R: Rng>(rng: &mut R, modal: usize, nest: usize, dia: &[Action], bx: &[Action]) -> Formula {
    #[derive(Clone, Copy)]
    enum C {
        Tt,
        Ff,
        And,
        Or,
        Box,
        Dia,
    }
    let mut choices = vec![C::Tt, C::Ff];
    if nest > 0 {
        choices.extend([C::And, C::Or]);
        if modal > 0 && !bx.is_empty() {
            choices.push(C::Box);
        }
        if modal > 0 && !dia.is_empty() {
            choices.push(C::Dia);
        }
    }
    match *choices.choose(rng).expect("non-empty") {
        C::Tt => Formula::Top,
        C::Ff => Formula::Bottom,
        C::And => {
            let l = gen_formula(rng, modal, nest - 1, dia, bx);
            Formula::and(l, gen_formula(rng, modal, nest - 1, dia, bx))
        }
        C::Or => {
            let l = gen_formula(rng, modal, nest - 1, dia, bx);
            Formula::or(l, gen_formula(rng, modal, nest - 1, dia, bx))
        }
        C::Box => {
            let a = bx.choose(rng).expect("non-empty").clone();
            Formula::boxed(a, gen_formula(rng, modal - 1, nest - 1, dia, bx))
        }
        C::Dia => {
            let a = dia.choose(rng).expect("non-empty").clone();
            Formula::diamond(a, gen_formula(rng, modal - 1, nest - 1, dia, bx))
        }
    }
}

/// A term of height at most `depth` over `actions`: `0`, `w`, a may or must
/// prefix, or a sum, equally likely while height remains.
pub fn random_mts_term<R: Rng>(rng: &mut R, depth: usize, actions: &BTreeSet<Action>) -> MtsTerm {
    let labels: Vec<&Action> = actions.iter().collect();
    let top = if depth == 0 || labels.is_empty() { 2 } else { 5 };
    match rng.gen_range(0..top) {
        0 => MtsTerm::Zero,
        1 => MtsTerm::Omega,
        2 => MtsTerm::may((*labels.choose(rng).unwrap()).clone(), random_mts_term(rng, depth - 1, actions)),
        3 => MtsTerm::must((*labels.choose(rng).unwrap()).clone(), random_mts_term(rng, depth - 1, actions)),
        _ => {
            let l = random_mts_term(rng, depth - 1, actions);
            MtsTerm::sum(l, random_mts_term(rng, depth - 1, actions))
        }
    }
}

/// A term of height at most `depth` over the labels of `sig`: `0`, `w`, a
/// prefix, or a sum, equally likely while height remains.
pub fn random_lts_term<R: Rng>(rng: &mut R, depth: usize, sig: &Signature) -> LtsTerm {
    let labels: Vec<Action> = sig.actions().into_iter().collect();
    let top = if depth == 0 || labels.is_empty() { 2 } else { 4 };
    match rng.gen_range(0..top) {
        0 => LtsTerm::Zero,
        1 => LtsTerm::Omega,
        2 => LtsTerm::prefix(labels.choose(rng).unwrap().clone(), random_lts_term(rng, depth - 1, sig)),
        _ => {
            let l = random_lts_term(rng, depth - 1, sig);
            LtsTerm::sum(l, random_lts_term(rng, depth - 1, sig))
        }
    }
}

/// A map from `source` into a fresh target of between one and `max_target`
/// labels, each source label sent to a uniformly chosen target label.
pub fn random_mts_morphism<R: Rng>(rng: &mut R, source: &BTreeSet<Action>, max_target: usize) -> SignatureMorphism {
    let target = random_actions(rng, max_target);
    let pool: Vec<&Action> = target.iter().collect();
    let map: BTreeMap<Action, Action> =
        source.iter().map(|a| (a.clone(), (*pool.choose(rng).unwrap()).clone())).collect();
    SignatureMorphism::mts(source.clone(), target, map).expect("total and into the target")
}

/// A class-preserving map from `source` into a fresh target signature whose
/// labels are named after their class (`r0`, `l1`, `c0`, …).
pub fn random_cc_morphism<R: Rng>(rng: &mut R, source: &Signature, max_per_class: usize) -> SignatureMorphism {
    let mut map = BTreeMap::new();
    let mut class = |rng: &mut R, prefix: &str, src: &BTreeSet<Action>| -> BTreeSet<Action> {
        let lo = usize::from(!src.is_empty());
        let k = rng.gen_range(lo..=max_per_class.max(lo));
        let tgt: Vec<Action> = (0..k).map(|i| Action::plain(&format!("{prefix}{i}"))).collect();
        for a in src {
            map.insert(a.clone(), tgt.choose(rng).unwrap().clone());
        }
        tgt.into_iter().collect()
    };
    let cov = class(rng, "r", &source.covariant);
    let con = class(rng, "l", &source.contravariant);
    let bi = class(rng, "c", &source.bivariant);
    let target = Signature { covariant: cov, contravariant: con, bivariant: bi };
    SignatureMorphism::cc(source.clone(), target, map).expect("class preserving by construction")
}
