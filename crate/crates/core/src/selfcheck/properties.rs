//! The property table. Generators build an [`Instance`]; checks quantify
//! over all states of the instance and return a failure message.

use std::collections::BTreeSet;

use rand::Rng;

use super::{Ctx, Instance, Property};
use crate::action::{Action, Signature};
use crate::charform::{chi, chi_cc, ChiOptions};
use crate::error::Result;
use crate::institution::{
    alpha, canonical_witness, check_satisfaction_condition, morphism_sides, reduct, search_weakly_final_mts,
    search_weakly_initial_cc, witness_admits, SignatureMorphism, WitnessKind,
};
use crate::logic::{mc_cc, mc_mts, Formula, GlobalChecker, LogicKind};
use crate::preorder::{
    distinguish_ccsim, distinguish_refinement, fixpoint, greatest, greatest_ccsim, greatest_pbsim, greatest_refinement,
    greatest_simulation, oracle_greatest, PreorderKind, Relation, ORACLE_CAP,
};
use crate::random::{
    random_actions, random_cc_morphism, random_formula, random_formula_over, random_lts, random_lts_term, random_mts,
    random_mts_morphism, random_mts_term, random_signature, SeededRng, SystemBounds,
};
use crate::system::{Lts, Mts, System, Transition};
use crate::translate::{
    c_inverse_system, eliminate_bivariant, formula_c, formula_c_inverse, formula_m, formula_mc, lts_of_mts, mts_of_lts,
    mts_of_pb_lts, overline, rho_lts, rho_mts, term_c,
};

fn bounds(max_states: usize, labels: usize) -> SystemBounds {
    let n = max_states.max(1);
    SystemBounds { max_states: n, max_transitions: n * n * labels.max(1) }
}

fn mts(s: &System) -> &Mts {
    s.as_mts().expect("generator builds an MTS")
}

fn lts(s: &System) -> &Lts {
    s.as_lts().expect("generator builds an LTS")
}

fn formula(i: &Instance) -> &Formula {
    i.formula.as_ref().expect("generator builds a formula")
}

fn fail(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!cond).then(msg)
}

/// `rel` restricted to the first `n × m` states.
fn restrict(rel: &Relation, n: usize, m: usize) -> Relation {
    Relation::from_pairs(n, m, rel.iter().filter(|&(p, q)| p < n && q < m))
}

fn relation_mismatch(what: &str, got: &Relation, want: &Relation) -> Option<String> {
    fail(got == want, || format!("{what}: {got:?} vs {want:?}"))
}

// ---- generators ----

fn mts_pair_over(r: &mut SeededRng, ctx: &Ctx, actions: &BTreeSet<Action>, capped: bool) -> Instance {
    let cap = if capped { ORACLE_CAP } else { usize::MAX };
    let p = random_mts(r, actions, bounds(ctx.max_states.min(cap), actions.len()));
    let q = random_mts(r, actions, bounds(ctx.max_states.min(cap / p.num_states()), actions.len()));
    Instance { systems: vec![p.into(), q.into()], ..Instance::default() }
}

fn mts_pair(r: &mut SeededRng, ctx: &Ctx, capped: bool) -> Instance {
    let a = random_actions(r, ctx.max_labels);
    mts_pair_over(r, ctx, &a, capped)
}

fn lts_pair_over(r: &mut SeededRng, ctx: &Ctx, sig: &Signature, capped: bool) -> Instance {
    let cap = if capped { ORACLE_CAP } else { usize::MAX };
    let n = sig.actions().len();
    let p = random_lts(r, sig, bounds(ctx.max_states.min(cap), n));
    let q = random_lts(r, sig, bounds(ctx.max_states.min(cap / p.num_states()), n));
    Instance { systems: vec![p.into(), q.into()], ..Instance::default() }
}

fn lts_pair(r: &mut SeededRng, ctx: &Ctx, capped: bool) -> Instance {
    let sig = random_signature(r, ctx.max_labels, true);
    lts_pair_over(r, ctx, &sig, capped)
}

/// An LTS pair over plain actions (all covariant) with a bisimulation set.
fn plain_pair(r: &mut SeededRng, ctx: &Ctx, capped: bool) -> Instance {
    let a = random_actions(r, ctx.max_labels);
    let mut inst = lts_pair_over(r, ctx, &Signature::new(a.clone(), [], []), capped);
    inst.bisim = Some(a.into_iter().filter(|_| r.gen_bool(0.5)).collect());
    inst
}

fn one_mts(r: &mut SeededRng, ctx: &Ctx) -> (Mts, BTreeSet<Action>) {
    let a = random_actions(r, ctx.max_labels);
    (random_mts(r, &a, bounds(ctx.max_states, a.len())), a)
}

fn one_lts(r: &mut SeededRng, ctx: &Ctx, bivariant: bool) -> Lts {
    let sig = random_signature(r, ctx.max_labels, bivariant);
    let n = sig.actions().len();
    random_lts(r, &sig, bounds(ctx.max_states, n))
}

fn mts_with_formula(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let (m, a) = one_mts(r, ctx);
    let f = random_formula(r, ctx.max_depth, &LogicKind::Bl(a));
    Instance { systems: vec![m.into()], formula: Some(f), ..Instance::default() }
}

fn lts_with_cc_formula(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let l = one_lts(r, ctx, true);
    let f = random_formula(r, ctx.max_depth, &LogicKind::Cc(l.signature().clone()));
    Instance { systems: vec![l.into()], formula: Some(f), ..Instance::default() }
}

fn lts_with_bl_formula(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let l = one_lts(r, ctx, true);
    let f = random_formula(r, ctx.max_depth, &LogicKind::Bl(l.signature().actions()));
    Instance { systems: vec![l.into()], formula: Some(f), ..Instance::default() }
}

fn mts_with_decorated_formula(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let (m, a) = one_mts(r, ctx);
    let f = random_formula(r, ctx.max_depth, &LogicKind::Cc(Signature::decorated(&a)));
    Instance { systems: vec![m.into()], formula: Some(f), ..Instance::default() }
}

// ---- preorders ----

fn gen_oracle_refinement(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    mts_pair(r, ctx, true)
}

fn gen_oracle_ccsim(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    lts_pair(r, ctx, true)
}

fn gen_oracle_plain(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    plain_pair(r, ctx, true)
}

fn kind_of(i: &Instance, pbsim: bool) -> PreorderKind {
    match (&i.systems[0], pbsim) {
        (System::Mts(_), _) => PreorderKind::Refinement,
        (System::Lts(_), true) => PreorderKind::PartialBisim(i.bisim.clone().unwrap_or_default()),
        (System::Lts(_), false) if i.bisim.is_some() => PreorderKind::Simulation,
        (System::Lts(_), false) => PreorderKind::CcSim,
    }
}

fn oracle_check(i: &Instance, kind: PreorderKind) -> Result<Option<String>> {
    let (p, q) = (&i.systems[0], &i.systems[1]);
    let got = greatest(&kind, p, q)?;
    let want = oracle_greatest(&kind, p, q)?;
    Ok(relation_mismatch("fixpoint vs brute-force oracle", &got, &want))
}

fn check_oracle_refinement(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    oracle_check(i, kind_of(i, false))
}

fn check_oracle_ccsim(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    oracle_check(i, kind_of(i, false))
}

fn check_oracle_pbsim(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    oracle_check(i, kind_of(i, true))
}

fn check_oracle_simulation(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    oracle_check(i, kind_of(i, false))
}

fn gen_fixpoint_profile(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    if r.gen_bool(0.5) {
        mts_pair(r, ctx, false)
    } else {
        lts_pair(r, ctx, false)
    }
}

fn check_fixpoint_profile(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (&i.systems[0], &i.systems[1]);
    let fp = fixpoint(&kind_of(i, false), p, q)?;
    let pairs = p.states().len() * q.states().len();
    if fp.sizes.windows(2).any(|w| w[1] >= w[0]) {
        return Ok(Some(format!("sizes not strictly decreasing: {:?}", fp.sizes)));
    }
    if fp.sizes[0] != pairs || fp.rounds() > pairs {
        return Ok(Some(format!("{} rounds from {} pairs: {:?}", fp.rounds(), pairs, fp.sizes)));
    }
    Ok(None)
}

fn gen_preorder_laws(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let l = one_lts(r, ctx, true);
    let b: BTreeSet<Action> = l.signature().actions().into_iter().filter(|_| r.gen_bool(0.5)).collect();
    Instance { systems: vec![l.into()], bisim: Some(b), ..Instance::default() }
}

fn check_preorder_laws(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let l = lts(&i.systems[0]);
    let m: System = mts_of_lts(l)?.into();
    let s: System = l.clone().into();
    let cases = [
        (PreorderKind::CcSim, &s),
        (PreorderKind::Simulation, &s),
        (PreorderKind::PartialBisim(i.bisim.clone().unwrap_or_default()), &s),
        (PreorderKind::Refinement, &m),
    ];
    for (kind, sys) in cases {
        let rel = greatest(&kind, sys, sys)?;
        let n = sys.states().len();
        if !Relation::identity(n).is_subset(&rel) {
            return Ok(Some(format!("{kind:?} is not reflexive: {rel:?}")));
        }
        if !rel.compose(&rel).is_subset(&rel) {
            return Ok(Some(format!("{kind:?} is not transitive: {rel:?}")));
        }
    }
    Ok(None)
}

fn check_pbsim_delegation(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), lts(&i.systems[1]));
    let b = i.bisim.clone().unwrap_or_default();
    let actions = p.signature().actions();
    let sig = Signature::new(actions.difference(&b).cloned(), [], b.iter().cloned());
    let got = greatest_pbsim(p, q, &b)?;
    let want = greatest_ccsim(&p.with_signature(sig.clone()), &q.with_signature(sig))?;
    Ok(relation_mismatch("partial bisimulation vs reclassed simulation", &got, &want))
}

fn gen_plain_pair(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    plain_pair(r, ctx, false)
}

fn gen_mts_pair(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    mts_pair(r, ctx, false)
}

fn gen_lts_pair(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    lts_pair(r, ctx, false)
}

fn check_distinguish_refinement(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (mts(&i.systems[0]), mts(&i.systems[1]));
    let rel = greatest_refinement(p, q)?;
    for s in 0..p.num_states() {
        for t in 0..q.num_states() {
            let phi = distinguish_refinement(p, s, q, t)?;
            match (rel.contains(s, t), phi) {
                (true, None) => {}
                (true, Some(f)) => return Ok(Some(format!("formula {f} for related pair ({s}, {t})"))),
                (false, None) => return Ok(Some(format!("no formula for unrelated pair ({s}, {t})"))),
                (false, Some(f)) => {
                    if !mc_mts(p, s, &f)? || mc_mts(q, t, &f)? {
                        return Ok(Some(format!("{f} does not separate ({s}, {t})")));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_distinguish_ccsim(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), lts(&i.systems[1]));
    let rel = greatest_ccsim(p, q)?;
    for s in 0..p.num_states() {
        for t in 0..q.num_states() {
            let phi = distinguish_ccsim(p, s, q, t)?;
            match (rel.contains(s, t), phi) {
                (true, None) => {}
                (true, Some(f)) => return Ok(Some(format!("formula {f} for related pair ({s}, {t})"))),
                (false, None) => return Ok(Some(format!("no formula for unrelated pair ({s}, {t})"))),
                (false, Some(f)) => {
                    if !mc_cc(p, s, &f)? || mc_cc(q, t, &f)? {
                        return Ok(Some(format!("{f} does not separate ({s}, {t})")));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn gen_mts_pair_formula(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let mut i = mts_pair(r, ctx, false);
    let a = mts(&i.systems[0]).actions().clone();
    i.formula = Some(random_formula(r, ctx.max_depth, &LogicKind::Bl(a)));
    i
}

fn gen_lts_pair_formula(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let mut i = lts_pair(r, ctx, false);
    let sig = lts(&i.systems[0]).signature().clone();
    i.formula = Some(random_formula(r, ctx.max_depth, &LogicKind::Cc(sig)));
    i
}

fn preserved(rel: &Relation, left: &mut GlobalChecker, right: &mut GlobalChecker, phi: &Formula) -> Option<String> {
    let (l, r) = (left.sat(phi), right.sat(phi));
    rel.iter()
        .find(|&(p, q)| l.contains(p) && !r.contains(q))
        .map(|(p, q)| format!("({p}, {q}) related, {p} satisfies the formula and {q} does not"))
}

fn check_characterization_refinement(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (mts(&i.systems[0]), mts(&i.systems[1]));
    let rel = greatest_refinement(p, q)?;
    Ok(preserved(&rel, &mut GlobalChecker::for_mts(p), &mut GlobalChecker::for_mts(q), formula(i)))
}

fn check_characterization_ccsim(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), lts(&i.systems[1]));
    let rel = greatest_ccsim(p, q)?;
    Ok(preserved(&rel, &mut GlobalChecker::for_lts(p), &mut GlobalChecker::for_lts(q), formula(i)))
}

// ---- modal logic ----

/// Every formula obtained by replacing one subformula occurrence with `c`.
fn substitutions(phi: &Formula, c: &Formula) -> Vec<Formula> {
    let mut out = vec![c.clone()];
    match phi {
        Formula::Top | Formula::Bottom => {}
        Formula::And(l, r) => {
            out.extend(substitutions(l, c).into_iter().map(|x| Formula::and(x, (**r).clone())));
            out.extend(substitutions(r, c).into_iter().map(|x| Formula::and((**l).clone(), x)));
        }
        Formula::Or(l, r) => {
            out.extend(substitutions(l, c).into_iter().map(|x| Formula::or(x, (**r).clone())));
            out.extend(substitutions(r, c).into_iter().map(|x| Formula::or((**l).clone(), x)));
        }
        Formula::Box(a, g) => out.extend(substitutions(g, c).into_iter().map(|x| Formula::boxed(a.clone(), x))),
        Formula::Diamond(a, g) => out.extend(substitutions(g, c).into_iter().map(|x| Formula::diamond(a.clone(), x))),
    }
    out
}

fn check_substitution_monotone(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let m = mts(&i.systems[0]);
    let phi = formula(i);
    let mut g = GlobalChecker::for_mts(m);
    let base = g.sat(phi);
    for weaker in substitutions(phi, &Formula::Top) {
        if !base.is_subset(&g.sat(&weaker)) {
            return Ok(Some(format!("replacing a subformula by tt lost truth: {weaker}")));
        }
    }
    for stronger in substitutions(phi, &Formula::Bottom) {
        if !g.sat(&stronger).is_subset(&base) {
            return Ok(Some(format!("replacing a subformula by ff gained truth: {stronger}")));
        }
    }
    Ok(None)
}

fn check_global_agrees(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let m = mts(&i.systems[0]);
    let phi = formula(i);
    let mut g = GlobalChecker::for_mts(m);
    let c = lts_of_mts(m)?;
    let cphi = formula_c(phi, m.actions())?;
    let mut gc = GlobalChecker::for_lts(&c);
    for s in 0..m.num_states() {
        if mc_mts(m, s, phi)? != g.holds(s, phi) {
            return Ok(Some(format!("state {s}: local and global checkers disagree on the MTS")));
        }
        if mc_cc(&c, s, &cphi)? != gc.holds(s, &cphi) {
            return Ok(Some(format!("state {s}: local and global checkers disagree on C of the MTS")));
        }
    }
    Ok(None)
}

// ---- translations ----

fn gen_lts_pair_for_transfer(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let c = Ctx { max_states: ctx.max_states.max(5), ..*ctx };
    lts_pair(r, &c, false)
}

fn check_m_preserves_ccsim(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), lts(&i.systems[1]));
    let cc = greatest_ccsim(p, q)?;
    let re = greatest_refinement(&mts_of_lts(p)?, &mts_of_lts(q)?)?;
    Ok(relation_mismatch("simulation vs refinement of M-images", &cc, &restrict(&re, p.num_states(), q.num_states())))
}

fn check_c_preserves_refinement(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (mts(&i.systems[0]), mts(&i.systems[1]));
    let re = greatest_refinement(p, q)?;
    let cc = greatest_ccsim(&lts_of_mts(p)?, &lts_of_mts(q)?)?;
    Ok(relation_mismatch("refinement vs simulation of C-images", &re, &cc))
}

fn check_m_formula(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let p = lts(&i.systems[0]);
    let phi = formula(i);
    let m = mts_of_lts(p)?;
    let mphi = formula_m(phi, p.signature())?;
    for s in 0..p.num_states() {
        if mc_cc(p, s, phi)? != mc_mts(&m, s, &mphi)? {
            return Ok(Some(format!("state {s}: truth differs between P and M(P)")));
        }
    }
    Ok(None)
}

fn check_c_formula(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let m = mts(&i.systems[0]);
    let phi = formula(i);
    let c = lts_of_mts(m)?;
    let cphi = formula_c(phi, m.actions())?;
    for s in 0..m.num_states() {
        if mc_mts(m, s, phi)? != mc_cc(&c, s, &cphi)? {
            return Ok(Some(format!("state {s}: truth differs between P and C(P)")));
        }
    }
    Ok(None)
}

fn check_c_inverse_formula(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let m = mts(&i.systems[0]);
    let phi = formula(i);
    let c = lts_of_mts(m)?;
    let back = formula_c_inverse(phi)?;
    for s in 0..m.num_states() {
        if mc_mts(m, s, &back)? != mc_cc(&c, s, phi)? {
            return Ok(Some(format!("state {s}: P ⊨ {back} differs from C(P) ⊨ {phi}")));
        }
    }
    Ok(None)
}

fn check_mc_direction_1(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let p = lts(&i.systems[0]);
    let phi = formula(i);
    let m = mts_of_lts(p)?;
    let t = formula_mc(phi, p.signature())?;
    for s in 0..p.num_states() {
        if mc_mts(&m, s, phi)? && !mc_cc(p, s, &t)? {
            return Ok(Some(format!("state {s}: M(P) satisfies the formula, P does not satisfy {t}")));
        }
    }
    Ok(None)
}

fn gen_mc_direction_2(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    if ctx.unguarded {
        // Force a covariant label and a box.
        let mut sig = random_signature(r, ctx.max_labels, true);
        if sig.covariant.is_empty() {
            let fresh = Action::plain("r");
            sig.covariant.insert(fresh);
        }
        let n = sig.actions().len();
        let p = random_lts(r, &sig, bounds(ctx.max_states, n));
        let pool: Vec<Action> = sig.actions().into_iter().collect();
        let mut f = random_formula_over(r, ctx.max_depth, &pool, &pool);
        if f.is_existential() {
            let a = sig.covariant.iter().next().unwrap().clone();
            f = Formula::and(f, Formula::boxed(a, Formula::Bottom));
        }
        return Instance { systems: vec![p.into()], formula: Some(f), ..Instance::default() };
    }
    if r.gen_bool(0.5) {
        let mut sig = random_signature(r, ctx.max_labels, true);
        sig.covariant.clear();
        if sig.actions().is_empty() {
            sig.contravariant.insert(Action::plain("l"));
        }
        let n = sig.actions().len();
        let p = random_lts(r, &sig, bounds(ctx.max_states, n));
        let f = random_formula(r, ctx.max_depth, &LogicKind::Bl(sig.actions()));
        Instance { systems: vec![p.into()], formula: Some(f), ..Instance::default() }
    } else {
        let p = one_lts(r, ctx, true);
        let pool: Vec<Action> = p.signature().actions().into_iter().collect();
        let f = random_formula_over(r, ctx.max_depth, &pool, &[]);
        Instance { systems: vec![p.into()], formula: Some(f), ..Instance::default() }
    }
}

fn check_mc_direction_2(i: &Instance, ctx: &Ctx) -> Result<Option<String>> {
    let p = lts(&i.systems[0]);
    let phi = formula(i);
    if !ctx.unguarded && !(phi.is_existential() || p.signature().covariant.is_empty()) {
        return Ok(None);
    }
    let m = mts_of_lts(p)?;
    let t = formula_mc(phi, p.signature())?;
    for s in 0..p.num_states() {
        if mc_cc(p, s, &t)? && !mc_mts(&m, s, phi)? {
            return Ok(Some(format!("state {s}: P satisfies {t}, M(P) does not satisfy the formula")));
        }
    }
    Ok(None)
}

/// The empty one-state LTS with `a` covariant, and `[a]ff`.
pub fn mc_counterexample() -> (Lts, Formula) {
    let sig = Signature::plain(&["a"], &[], &[]);
    let p = Lts::from_parts("zero", vec!["p".into()], sig, BTreeSet::new(), 0);
    (p, Formula::boxed(Action::plain("a"), Formula::Bottom))
}

fn gen_pinned_mc(_: &mut SeededRng, _: &Ctx) -> Instance {
    let (p, f) = mc_counterexample();
    Instance { systems: vec![p.into()], formula: Some(f), ..Instance::default() }
}

fn check_pinned_mc(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let p = lts(&i.systems[0]);
    let phi = formula(i);
    let t = formula_mc(phi, p.signature())?;
    let m = mts_of_lts(p)?;
    Ok(fail(t == Formula::Top && mc_cc(p, 0, &t)? && !mc_mts(&m, 0, phi)?, || {
        format!("expected the translation tt to hold on P and {phi} to fail on M(P); translation is {t}")
    }))
}

fn gen_one_mts(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    Instance { systems: vec![one_mts(r, ctx).0.into()], ..Instance::default() }
}

fn gen_one_lts(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    Instance { systems: vec![one_lts(r, ctx, true).into()], ..Instance::default() }
}

fn gen_one_lts_no_bi(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    Instance { systems: vec![one_lts(r, ctx, false).into()], ..Instance::default() }
}

fn check_c_round_trip(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let m = mts(&i.systems[0]);
    let back = c_inverse_system(&lts_of_mts(m)?)?;
    Ok(fail(&back == m, || "C⁻¹(C(M)) differs from M".into()))
}

fn check_n_correspondence(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), lts(&i.systems[1]));
    let b = i.bisim.clone().unwrap_or_default();
    let pb = greatest_pbsim(p, q, &b)?;
    let re = greatest_refinement(&mts_of_pb_lts(q, &b)?, &mts_of_pb_lts(p, &b)?)?;
    Ok(relation_mismatch("inverse partial bisimulation vs refinement of N-images", &pb.inverse(), &re))
}

fn check_pbsim_empty(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), lts(&i.systems[1]));
    let got = greatest_pbsim(p, q, &BTreeSet::new())?;
    Ok(relation_mismatch("empty bisimulation set vs simulation", &got, &greatest_simulation(p, q)?))
}

fn check_composition_mts(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let p = mts(&i.systems[0]);
    let back = rho_mts(&mts_of_lts(&lts_of_mts(p)?)?)?;
    let rel = greatest_refinement(&back, p)?;
    Ok((0..p.num_states())
        .find(|&s| !rel.contains(s, s))
        .map(|s| format!("state {s}: ρ(M(C(P))) does not refine into P")))
}

fn check_composition_lts(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let p = lts(&i.systems[0]);
    let back = rho_lts(&lts_of_mts(&mts_of_lts(p)?)?, p.signature())?;
    let rel = greatest_ccsim(p, &back)?;
    Ok((0..p.num_states())
        .find(|&s| !rel.contains(s, s))
        .map(|s| format!("state {s}: P is not simulated by ρ(C(M(P)))")))
}

/// The one-state MTS over `{a}` without transitions.
pub fn composition_converse_mts() -> Mts {
    Mts::from_parts("zero", vec!["p".into()], [Action::plain("a")].into(), BTreeSet::new(), BTreeSet::new(), 0)
}

/// The one-state LTS over `({a}, ∅, ∅)` without transitions.
pub fn composition_converse_lts() -> Lts {
    Lts::from_parts("zero", vec!["p".into()], Signature::plain(&["a"], &[], &[]), BTreeSet::new(), 0)
}

fn gen_pinned_composition_mts(_: &mut SeededRng, _: &Ctx) -> Instance {
    Instance { systems: vec![composition_converse_mts().into()], ..Instance::default() }
}

fn check_pinned_composition_mts(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let p = mts(&i.systems[0]);
    let back = rho_mts(&mts_of_lts(&lts_of_mts(p)?)?)?;
    let forward = greatest_refinement(&back, p)?.contains(0, 0);
    let converse = greatest_refinement(p, &back)?.contains(0, 0);
    let edge = back.may().contains(&Transition::new(0, Action::plain("a"), 1));
    Ok(fail(forward && !converse && edge, || {
        format!("expected bound to hold ({forward}), converse to fail ({converse}), p -a-> u may edge ({edge})")
    }))
}

fn gen_pinned_composition_lts(_: &mut SeededRng, _: &Ctx) -> Instance {
    Instance { systems: vec![composition_converse_lts().into()], ..Instance::default() }
}

fn check_pinned_composition_lts(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let p = lts(&i.systems[0]);
    let back = rho_lts(&lts_of_mts(&mts_of_lts(p)?)?, p.signature())?;
    let forward = greatest_ccsim(p, &back)?.contains(0, 0);
    let converse = greatest_ccsim(&back, p)?.contains(0, 0);
    let edge = back.transitions().contains(&Transition::new(0, Action::plain("a"), 1));
    Ok(fail(forward && !converse && edge, || {
        format!("expected bound to hold ({forward}), converse to fail ({converse}), p -a-> u edge ({edge})")
    }))
}

fn gen_overline_bridge(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let sig = random_signature(r, ctx.max_labels, false);
    let a = sig.actions();
    let p = random_lts(r, &sig, bounds(ctx.max_states, a.len()));
    // Sparse Q so that the premise holds reasonably often.
    let q = random_mts(r, &a, SystemBounds { max_states: ctx.max_states, max_transitions: ctx.max_states * a.len() });
    Instance { systems: vec![p.into(), q.into()], ..Instance::default() }
}

fn check_overline_bridge(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), mts(&i.systems[1]));
    let cc = greatest_ccsim(&overline(p)?, &lts_of_mts(q)?)?;
    let re = greatest_refinement(&mts_of_lts(p)?, q)?;
    let bad = cc.iter().find(|&(s, t)| !re.contains(s, t));
    Ok(bad.map(|(s, t)| {
        format!("({s}, {t}) in the simulation of overline(P) by C(Q) but M(P) does not refine into Q there")
    }))
}

/// `P`: one state, no transitions, `a` covariant; `Q`: one state with a may
/// loop on `a`.
pub fn overline_converse() -> (Lts, Mts) {
    let p = Lts::from_parts("P", vec!["p".into()], Signature::plain(&["a"], &[], &[]), BTreeSet::new(), 0);
    let a = Action::plain("a");
    let q = Mts::from_parts(
        "Q",
        vec!["q".into()],
        [a.clone()].into(),
        [Transition::new(0, a, 0)].into(),
        BTreeSet::new(),
        0,
    );
    (p, q)
}

fn gen_pinned_overline(_: &mut SeededRng, _: &Ctx) -> Instance {
    let (p, q) = overline_converse();
    Instance { systems: vec![p.into(), q.into()], ..Instance::default() }
}

fn check_pinned_overline(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), mts(&i.systems[1]));
    let refines = greatest_refinement(&mts_of_lts(p)?, q)?.contains(0, 0);
    let simulated = greatest_ccsim(&overline(p)?, &lts_of_mts(q)?)?.contains(0, 0);
    Ok(fail(refines && !simulated, || format!("expected refinement ({refines}) without simulation ({simulated})")))
}

fn check_eliminate_bivariant(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (p, q) = (lts(&i.systems[0]), lts(&i.systems[1]));
    let before = greatest_ccsim(p, q)?;
    let (ep, eq) = (eliminate_bivariant(p)?, eliminate_bivariant(q)?);
    if !ep.signature().bivariant.is_empty() {
        return Ok(Some("bivariant labels remain".into()));
    }
    let after = greatest_ccsim(&ep, &eq)?;
    Ok(relation_mismatch(
        "before vs after eliminating bivariant labels",
        &before,
        &restrict(&after, p.num_states(), q.num_states()),
    ))
}

fn check_overline_rho(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let p = lts(&i.systems[0]);
    let back = rho_lts(&overline(p)?, p.signature())?;
    Ok(fail(&back == p, || "ρ(overline(P)) differs from P".into()))
}

fn gen_bl_formula(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let a = random_actions(r, ctx.max_labels);
    Instance { formula: Some(random_formula(r, ctx.max_depth, &LogicKind::Bl(a))), ..Instance::default() }
}

fn check_alpha_round_trip(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let phi = formula(i);
    let a = phi.labels();
    let back = alpha(&formula_c(phi, &a)?)?;
    Ok(fail(&back == phi, || format!("α(C(φ)) = {back}")))
}

// ---- characteristic formulas ----

fn term_depth(ctx: &Ctx) -> usize {
    ctx.max_depth.min(3)
}

fn gen_charform(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let a = random_actions(r, ctx.max_labels);
    let t = random_mts_term(r, term_depth(ctx), &a);
    let target = if r.gen_bool(0.5) {
        random_mts_term(r, term_depth(ctx), &a).expand(&a).expect("labels in A")
    } else {
        random_mts(r, &a, bounds(ctx.max_states, a.len()))
    };
    Instance { systems: vec![target.into()], mts_terms: vec![t], ..Instance::default() }
}

fn check_charform(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let s = mts(&i.systems[0]);
    let t = &i.mts_terms[0];
    let a = s.actions();
    let c = chi(t, a, ChiOptions::default())?;
    let tm = t.expand(a)?;
    let rel = greatest_refinement(&tm, s)?;
    let mut g = GlobalChecker::for_mts(s);
    let (raw, simp) = (g.sat(&c.formula), g.sat(&c.simplified));
    for q in 0..s.num_states() {
        let refines = rel.contains(tm.init(), q);
        if refines != raw.contains(q) {
            return Ok(Some(format!("state {q}: refinement {refines}, χ(t) {} ({})", raw.contains(q), c.formula)));
        }
        if refines != simp.contains(q) {
            return Ok(Some(format!("state {q}: refinement {refines}, simplified χ(t) {}", simp.contains(q))));
        }
    }
    Ok(None)
}

fn gen_charform_cc(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let a = random_actions(r, ctx.max_labels);
    let t = random_mts_term(r, term_depth(ctx), &a);
    let sig = Signature::decorated(&a);
    if r.gen_bool(0.5) {
        let s = random_lts_term(r, term_depth(ctx), &sig);
        Instance { mts_terms: vec![t], lts_terms: vec![s], ..Instance::default() }
    } else {
        let l = random_lts(r, &sig, bounds(ctx.max_states, sig.actions().len()));
        Instance { systems: vec![l.into()], mts_terms: vec![t], ..Instance::default() }
    }
}

fn check_charform_cc(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let t = &i.mts_terms[0];
    let target = match (i.systems.first(), i.lts_terms.first()) {
        (Some(s), _) => lts(s).clone(),
        (None, Some(s)) => {
            let mut a = t.labels();
            a.extend(s.labels().iter().filter_map(|x| x.undecorated().cloned()));
            if a.is_empty() {
                a.insert(Action::plain("a"));
            }
            s.expand(&Signature::decorated(&a))?
        }
        (None, None) => return Ok(None),
    };
    // The action set is fixed by the target.
    let a: BTreeSet<Action> = target.signature().actions().iter().filter_map(|x| x.undecorated().cloned()).collect();
    if !t.labels().is_subset(&a) {
        return Ok(None);
    }
    let phi = chi_cc(t, &a)?;
    let ct = term_c(t).expand(target.signature())?;
    let rel = greatest_ccsim(&ct, &target)?;
    let mut g = GlobalChecker::for_lts(&target);
    let sat = g.sat(&phi);
    for q in 0..target.num_states() {
        if rel.contains(ct.init(), q) != sat.contains(q) {
            return Ok(Some(format!(
                "state {q}: simulation {}, C(χ(t)) {}",
                rel.contains(ct.init(), q),
                sat.contains(q)
            )));
        }
    }
    Ok(None)
}

// ---- institutions ----

fn gen_satisfaction_mts(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let src = random_actions(r, ctx.max_labels.max(3));
    let f = random_mts_morphism(r, &src, ctx.max_labels.max(3));
    let SignatureMorphism::Mts { target, .. } = &f else { unreachable!() };
    let m = random_mts(r, target, bounds(ctx.max_states.min(5), target.len()));
    let phi = random_formula(r, ctx.max_depth, &LogicKind::Bl(src));
    Instance { systems: vec![m.into()], formula: Some(phi), morphisms: vec![f], ..Instance::default() }
}

fn gen_satisfaction_cc(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    let src = random_signature(r, ctx.max_labels, true);
    let f = random_cc_morphism(r, &src, ctx.max_labels);
    let SignatureMorphism::Cc { target, .. } = &f else { unreachable!() };
    let l = random_lts(r, target, bounds(ctx.max_states.min(5), target.actions().len()));
    let phi = random_formula(r, ctx.max_depth, &LogicKind::Cc(src));
    Instance { systems: vec![l.into()], formula: Some(phi), morphisms: vec![f], ..Instance::default() }
}

fn check_satisfaction(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let s = &i.systems[0];
    for st in 0..s.states().len() {
        if !check_satisfaction_condition(&i.morphisms[0], s, st, formula(i))? {
            return Ok(Some(format!("state {st}: translated sentence and reduct disagree")));
        }
    }
    Ok(None)
}

fn check_morphism_condition(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let m = mts(&i.systems[0]);
    for s in 0..m.num_states() {
        let (l, r) = morphism_sides(m, s, formula(i))?;
        if l != r {
            return Ok(Some(format!("state {s}: (M, s) ⊨ α(φ) is {l}, β(M, s) ⊨ φ is {r}")));
        }
    }
    Ok(None)
}

fn gen_functoriality(r: &mut SeededRng, ctx: &Ctx) -> Instance {
    if r.gen_bool(0.5) {
        let src = random_actions(r, ctx.max_labels.max(3));
        let f = random_mts_morphism(r, &src, 3);
        let SignatureMorphism::Mts { target, .. } = &f else { unreachable!() };
        // Rename the middle signature so `g` gets a distinct target.
        let g = random_mts_morphism(r, target, 3);
        let SignatureMorphism::Mts { target: end, .. } = &g else { unreachable!() };
        let m = random_mts(r, end, bounds(ctx.max_states, end.len()));
        Instance { systems: vec![m.into()], morphisms: vec![f, g], ..Instance::default() }
    } else {
        let src = random_signature(r, ctx.max_labels, true);
        let f = random_cc_morphism(r, &src, 2);
        let SignatureMorphism::Cc { target, .. } = &f else { unreachable!() };
        let g = random_cc_morphism(r, target, 2);
        let SignatureMorphism::Cc { target: end, .. } = &g else { unreachable!() };
        let l = random_lts(r, end, bounds(ctx.max_states, end.actions().len()));
        Instance { systems: vec![l.into()], morphisms: vec![f, g], ..Instance::default() }
    }
}

fn check_functoriality(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (f, g) = (&i.morphisms[0], &i.morphisms[1]);
    let s = &i.systems[0];
    let direct = reduct(s, &f.then(g)?)?;
    let stepwise = reduct(&reduct(s, g)?, f)?;
    Ok(fail(direct == stepwise, || "reduct along the composite differs from the two-step reduct".into()))
}

fn witness_check(i: &Instance, kind: WitnessKind) -> Result<Option<String>> {
    let s = &i.systems[0];
    let sig = match s {
        System::Lts(l) => l.signature().clone(),
        System::Mts(m) => Signature::new(m.actions().iter().cloned(), [], []),
    };
    let w = canonical_witness(kind, &sig)?;
    for st in 0..s.states().len() {
        if !witness_admits(kind, &w, s, st)? {
            return Ok(Some(format!("state {st}: no arrow for {kind:?}")));
        }
    }
    Ok(None)
}

fn check_weakly_final_cc(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    witness_check(i, WitnessKind::WeaklyFinalCc)
}

fn check_universal_spec_cc(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    witness_check(i, WitnessKind::UniversalSpecCc)
}

fn check_weakly_initial_mts(i: &Instance, _: &Ctx) -> Result<Option<String>> {
    witness_check(i, WitnessKind::WeaklyInitialMts)
}

fn gen_none(_: &mut SeededRng, _: &Ctx) -> Instance {
    Instance::default()
}

fn check_no_weakly_final_mts(_: &Instance, _: &Ctx) -> Result<Option<String>> {
    let (found, _) = search_weakly_final_mts(&[Action::plain("a")].into(), 2)?;
    Ok(found.map(|m| format!("an MTS receives arrows from both obstruction systems: {} states", m.num_states())))
}

fn check_no_weakly_initial_cc(_: &Instance, _: &Ctx) -> Result<Option<String>> {
    let c = Action::plain("c");
    let (found, _) = search_weakly_initial_cc(&Signature::plain(&[], &[], &["c"]), &c, 2)?;
    Ok(found.map(|l| format!("an LTS simulates into both obstruction systems: {} states", l.num_states())))
}

macro_rules! prop {
    ($id:literal, $claim:literal, $gen:ident, $check:ident) => {
        Property { id: $id, claim: $claim, pinned: false, guarded: false, gen: $gen, check: $check }
    };
    (pinned $id:literal, $claim:literal, $gen:ident, $check:ident) => {
        Property { id: $id, claim: $claim, pinned: true, guarded: false, gen: $gen, check: $check }
    };
    (guarded $id:literal, $claim:literal, $gen:ident, $check:ident) => {
        Property { id: $id, claim: $claim, pinned: false, guarded: true, gen: $gen, check: $check }
    };
}

pub(crate) fn all() -> Vec<Property> {
    vec![
        prop!(
            "oracle-refinement",
            "the refinement fixpoint equals the union of all refinements",
            gen_oracle_refinement,
            check_oracle_refinement
        ),
        prop!(
            "oracle-ccsim",
            "the covariant-contravariant fixpoint equals the union of all such simulations",
            gen_oracle_ccsim,
            check_oracle_ccsim
        ),
        prop!(
            "oracle-pbsim",
            "the partial bisimulation fixpoint equals the union of all partial bisimulations",
            gen_oracle_plain,
            check_oracle_pbsim
        ),
        prop!(
            "oracle-simulation",
            "the simulation fixpoint equals the union of all simulations",
            gen_oracle_plain,
            check_oracle_simulation
        ),
        prop!(
            "fixpoint-profile",
            "each round strictly shrinks the relation, within |P|·|Q| rounds",
            gen_fixpoint_profile,
            check_fixpoint_profile
        ),
        prop!(
            "preorder-laws",
            "every greatest relation of a system with itself is reflexive and transitive",
            gen_preorder_laws,
            check_preorder_laws
        ),
        prop!(
            "pbsim-delegation",
            "partial bisimulation over B is covariant-contravariant simulation over (A∖B, ∅, B)",
            gen_plain_pair,
            check_pbsim_delegation
        ),
        prop!(
            "pbsim-empty-set",
            "partial bisimulation with an empty bisimulation set is simulation",
            gen_plain_pair,
            check_pbsim_empty
        ),
        prop!(
            "distinguish-refinement",
            "removed pairs get a modal formula true on the left and false on the right",
            gen_mts_pair,
            check_distinguish_refinement
        ),
        prop!(
            "distinguish-ccsim",
            "removed pairs get a cc formula true on the left and false on the right",
            gen_lts_pair,
            check_distinguish_ccsim
        ),
        prop!(
            "characterization-refinement",
            "refinement preserves modal formulas",
            gen_mts_pair_formula,
            check_characterization_refinement
        ),
        prop!(
            "characterization-ccsim",
            "covariant-contravariant simulation preserves cc formulas",
            gen_lts_pair_formula,
            check_characterization_ccsim
        ),
        prop!(
            "mc-substitution",
            "replacing a subformula by tt only gains truth, by ff only loses it",
            mts_with_formula,
            check_substitution_monotone
        ),
        prop!("mc-global-local", "the global and local model checkers agree", mts_with_formula, check_global_agrees),
        prop!(
            "m-ccsim-refinement",
            "p ≲cc q iff p refines into q between the M-images",
            gen_lts_pair_for_transfer,
            check_m_preserves_ccsim
        ),
        prop!(
            "c-refinement-ccsim",
            "p refines into q iff p ≲cc q between the C-images",
            gen_mts_pair,
            check_c_preserves_refinement
        ),
        prop!("m-formula", "P ⊨ φ iff M(P) ⊨ M(φ) for cc formulas", lts_with_cc_formula, check_m_formula),
        prop!("c-formula", "P ⊨ φ iff C(P) ⊨ C(φ) for modal formulas", mts_with_formula, check_c_formula),
        prop!(
            "c-inverse-formula",
            "P ⊨ C⁻¹(φ) iff C(P) ⊨ φ for decorated cc formulas",
            mts_with_decorated_formula,
            check_c_inverse_formula
        ),
        prop!("mc-direction-1", "M(P) ⊨ φ implies P ⊨ MC(φ)", lts_with_bl_formula, check_mc_direction_1),
        prop!(guarded "mc-direction-2", "P ⊨ MC(φ) implies M(P) ⊨ φ when φ is existential or there are no covariant labels", gen_mc_direction_2, check_mc_direction_2),
        prop!(pinned "mc-counterexample", "with a covariant, the empty LTS satisfies MC([a]ff) = tt while M of it refutes [a]ff", gen_pinned_mc, check_pinned_mc),
        prop!("c-round-trip", "C⁻¹(C(M)) = M", gen_one_mts, check_c_round_trip),
        prop!(
            "n-correspondence",
            "the inverse of partial bisimulation is refinement between N-images",
            gen_plain_pair,
            check_n_correspondence
        ),
        prop!("composition-bound-mts", "(ρ(M(C(P))), p) refines into (P, p)", gen_one_mts, check_composition_mts),
        prop!("composition-bound-lts", "(P, p) ≲cc (ρ(C(M(P))), p)", gen_one_lts, check_composition_lts),
        prop!(pinned "composition-converse-mts", "(P, p) does not refine into (ρ(M(C(P))), p) for the empty MTS", gen_pinned_composition_mts, check_pinned_composition_mts),
        prop!(pinned "composition-converse-lts", "(ρ(C(M(P))), p) ≲cc (P, p) fails for the empty LTS", gen_pinned_composition_lts, check_pinned_composition_lts),
        prop!(
            "overline-bridge",
            "overline(P) ≲cc C(Q) implies M(P) refines into Q",
            gen_overline_bridge,
            check_overline_bridge
        ),
        prop!(pinned "overline-converse", "M(P) refines into Q while overline(P) ≲cc C(Q) fails", gen_pinned_overline, check_pinned_overline),
        prop!(
            "eliminate-bivariant",
            "C(M(·)) preserves and reflects covariant-contravariant simulation",
            gen_lts_pair_for_transfer,
            check_eliminate_bivariant
        ),
        prop!("overline-rho", "ρ undoes the overline renaming", gen_one_lts_no_bi, check_overline_rho),
        prop!("alpha-round-trip", "α(C(φ)) = φ", gen_bl_formula, check_alpha_round_trip),
        prop!(
            "charform",
            "t refines into s iff s ⊨ χ(t), for both the defined and the simplified form",
            gen_charform,
            check_charform
        ),
        prop!("charform-cc", "C(t) ≲cc s iff s ⊨ C(χ(t))", gen_charform_cc, check_charform_cc),
        prop!(
            "satisfaction-mts",
            "S ⊨ sen(f)(φ) iff S|f ⊨ φ for modal formulas",
            gen_satisfaction_mts,
            check_satisfaction
        ),
        prop!("satisfaction-cc", "S ⊨ sen(f)(φ) iff S|f ⊨ φ for cc formulas", gen_satisfaction_cc, check_satisfaction),
        prop!(
            "morphism-condition",
            "(M, s) ⊨ α(φ) iff β(M, s) ⊨ φ",
            mts_with_decorated_formula,
            check_morphism_condition
        ),
        prop!(
            "reduct-functoriality",
            "reducing along a composite equals reducing twice",
            gen_functoriality,
            check_functoriality
        ),
        prop!(
            "witness-weakly-final-cc",
            "every LTS without bivariant labels simulates into the covariant loop",
            gen_one_lts_no_bi,
            check_weakly_final_cc
        ),
        prop!(
            "witness-universal-spec-cc",
            "the contravariant loop simulates into every LTS without bivariant labels",
            gen_one_lts_no_bi,
            check_universal_spec_cc
        ),
        prop!(
            "witness-weakly-initial-mts",
            "the universal may loop refines into every MTS",
            gen_one_mts,
            check_weakly_initial_mts
        ),
        prop!(pinned "no-weakly-final-mts", "no MTS of at most two states receives refinements from both obstruction systems", gen_none, check_no_weakly_final_mts),
        prop!(pinned "no-weakly-initial-cc", "no LTS of at most two states simulates into both bivariant obstruction systems", gen_none, check_no_weakly_initial_cc),
    ]
}

pub fn property_ids() -> Vec<&'static str> {
    all().iter().map(|p| p.id).collect()
}
