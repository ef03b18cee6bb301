//! Acceptance suite: one PASS/FAIL line per criterion. Thresholds (instance
//! counts, size bounds, time limits) are fixed constants below; the run fails
//! if any criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;

use modref::action::label_set;
use modref::charform::{chi, chi_cc, ChiOptions};
use modref::institution::{
    canonical_witness, check_satisfaction_condition, final_object_obstruction, initial_object_obstruction,
    morphism_sides, search_weakly_final_mts, search_weakly_initial_cc, witness_admits, SignatureMorphism, WitnessKind,
};
use modref::logic::{mc_cc, mc_mts, GlobalChecker};
use modref::preorder::{
    greatest, greatest_ccsim, greatest_pbsim, greatest_refinement, greatest_simulation, oracle_greatest, PreorderKind,
};
use modref::random::{
    random_actions, random_cc_morphism, random_formula, random_lts, random_mts, random_mts_morphism, random_signature,
    rng, SeededRng, SystemBounds,
};
use modref::selfcheck::pinned;
use modref::syntax::{parse_system, print_system, ParseOptions};
use modref::system::System;
use modref::term::{enumerate_lts_terms, enumerate_mts_terms, universal_lts, universal_mts};
use modref::translate::{
    formula_c, formula_c_inverse, formula_m, formula_mc, lts_of_mts, mts_of_lts, mts_of_pb_lts, overline, rho_lts,
    rho_mts, term_c,
};
use modref::{Action, Formula, LogicKind, Relation, Signature, Transition};

const ORACLE_INSTANCES: usize = 500;
const ORACLE_PAIR_CAP: usize = 12;
const ORACLE_TIME: Duration = Duration::from_secs(30);
const TRANSFER_PAIRS: usize = 300;
const TRANSFER_STATES: usize = 5;
const LABELS_PER_CLASS: usize = 2;
const LOGIC_TRIPLES: usize = 1000;
const FORMULA_DEPTH: usize = 4;
const COMPOSITION_SYSTEMS: usize = 300;
const TERM_DEPTH: usize = 3;
const CHARFORM_TIME: Duration = Duration::from_secs(300);
const PBSIM_INSTANCES: usize = 300;
const SATISFACTION_TRIPLES: usize = 500;
const MORPHISM_TRIPLES: usize = 300;
const WITNESS_SYSTEMS: usize = 100;
const OBSTRUCTION_STATES: usize = 2;
const SYSTEM_STATES: usize = 4;

/// Outcome of one criterion: the failures found and a one-line summary.
struct Verdict {
    failures: Vec<String>,
    summary: String,
}

impl Verdict {
    fn new() -> Self {
        Verdict { failures: Vec::new(), summary: String::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn bounds(states: usize, labels: usize) -> SystemBounds {
    SystemBounds { max_states: states, max_transitions: states * states * labels.max(1) }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn load(name: &str) -> System {
    let text = fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse_system(&text, ParseOptions { strict: true }).unwrap_or_else(|e| panic!("{name}: {e}")).system
}

fn restrict(rel: &Relation, n: usize, m: usize) -> Relation {
    Relation::from_pairs(n, m, rel.iter().filter(|&(p, q)| p < n && q < m))
}

// ---- 1 ----

fn oracle_equivalence() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let mut r = rng(0x0c1e);
    let mut largest = 0;
    for kind in ["refinement", "ccsim", "pbsim", "simulation"] {
        for i in 0..ORACLE_INSTANCES {
            let (p, q, k): (System, System, PreorderKind) = match kind {
                "refinement" => {
                    let a = random_actions(&mut r, LABELS_PER_CLASS);
                    let p = random_mts(&mut r, &a, bounds(SYSTEM_STATES, a.len()));
                    let q = random_mts(&mut r, &a, bounds(ORACLE_PAIR_CAP / p.num_states(), a.len()));
                    (p.into(), q.into(), PreorderKind::Refinement)
                }
                "ccsim" => {
                    let sig = random_signature(&mut r, LABELS_PER_CLASS, true);
                    let n = sig.actions().len();
                    let p = random_lts(&mut r, &sig, bounds(SYSTEM_STATES, n));
                    let q = random_lts(&mut r, &sig, bounds(ORACLE_PAIR_CAP / p.num_states(), n));
                    (p.into(), q.into(), PreorderKind::CcSim)
                }
                _ => {
                    let a = random_actions(&mut r, LABELS_PER_CLASS + 1);
                    let sig = Signature::new(a.clone(), [], []);
                    let p = random_lts(&mut r, &sig, bounds(SYSTEM_STATES, a.len()));
                    let q = random_lts(&mut r, &sig, bounds(ORACLE_PAIR_CAP / p.num_states(), a.len()));
                    let k = if kind == "pbsim" {
                        PreorderKind::PartialBisim(a.into_iter().filter(|_| r.gen_bool(0.5)).collect())
                    } else {
                        PreorderKind::Simulation
                    };
                    (p.into(), q.into(), k)
                }
            };
            let pairs = p.states().len() * q.states().len();
            largest = largest.max(pairs);
            v.expect(pairs <= ORACLE_PAIR_CAP, || format!("{kind} #{i}: {pairs} pairs"));
            let got = greatest(&k, &p, &q).unwrap();
            let want = oracle_greatest(&k, &p, &q).unwrap();
            v.expect(got == want, || format!("{kind} #{i}: {got:?} vs oracle {want:?}"));
        }
    }
    let took = start.elapsed();
    v.expect(took < ORACLE_TIME, || format!("took {took:.1?}, limit {ORACLE_TIME:?}"));
    v.summary = format!(
        "4 kinds x {ORACLE_INSTANCES} instances, |P||Q| <= {largest} (cap {ORACLE_PAIR_CAP}), {took:.1?} (limit {ORACLE_TIME:?})"
    );
    v
}

// ---- 2 ----

fn transfer_suite() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(0xc0_0011);
    let mut pairs = 0;
    for i in 0..TRANSFER_PAIRS {
        let sig = random_signature(&mut r, LABELS_PER_CLASS, true);
        let n = sig.actions().len();
        let p = random_lts(&mut r, &sig, bounds(TRANSFER_STATES, n));
        let q = random_lts(&mut r, &sig, bounds(TRANSFER_STATES, n));
        let cc = greatest_ccsim(&p, &q).unwrap();
        let re = greatest_refinement(&mts_of_lts(&p).unwrap(), &mts_of_lts(&q).unwrap()).unwrap();
        pairs += p.num_states() * q.num_states();
        v.expect(cc == restrict(&re, p.num_states(), q.num_states()), || format!("M, LTS pair #{i}"));
    }
    for i in 0..TRANSFER_PAIRS {
        let a = random_actions(&mut r, LABELS_PER_CLASS);
        let p = random_mts(&mut r, &a, bounds(TRANSFER_STATES, a.len()));
        let q = random_mts(&mut r, &a, bounds(TRANSFER_STATES, a.len()));
        let re = greatest_refinement(&p, &q).unwrap();
        let cc = greatest_ccsim(&lts_of_mts(&p).unwrap(), &lts_of_mts(&q).unwrap()).unwrap();
        pairs += p.num_states() * q.num_states();
        v.expect(re == cc, || format!("C, MTS pair #{i}"));
    }
    v.summary = format!("{TRANSFER_PAIRS} LTS pairs under M, {TRANSFER_PAIRS} MTS pairs under C, {pairs} state pairs");
    v
}

// ---- 3 ----

#[derive(Default)]
struct Counts {
    m: usize,
    c: usize,
    c_inverse: usize,
    alpha: usize,
    mc1: usize,
    mc2: usize,
}

fn logic_preservation() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(0x10_61c);
    let mut n = Counts::default();
    let enough = |n: &Counts| [n.m, n.c, n.c_inverse, n.alpha, n.mc1, n.mc2].iter().all(|&k| k >= LOGIC_TRIPLES);
    let mut round = 0;
    while !enough(&n) {
        round += 1;
        // M and both MC implications on an LTS.
        let sig = random_signature(&mut r, LABELS_PER_CLASS, true);
        let p = random_lts(&mut r, &sig, bounds(SYSTEM_STATES, sig.actions().len()));
        let mp = mts_of_lts(&p).unwrap();
        let cc_phi = random_formula(&mut r, FORMULA_DEPTH, &LogicKind::Cc(sig.clone()));
        let m_phi = formula_m(&cc_phi, &sig).unwrap();
        let bl_phi = random_formula(&mut r, FORMULA_DEPTH, &LogicKind::Bl(sig.actions()));
        let t = formula_mc(&bl_phi, &sig).unwrap();
        let guarded = bl_phi.is_existential() || sig.covariant.is_empty();
        for s in 0..p.num_states() {
            let lhs = mc_cc(&p, s, &cc_phi).unwrap();
            v.expect(lhs == mc_mts(&mp, s, &m_phi).unwrap(), || format!("M, round {round}, state {s}: {cc_phi}"));
            n.m += 1;
            let on_m = mc_mts(&mp, s, &bl_phi).unwrap();
            let on_p = mc_cc(&p, s, &t).unwrap();
            v.expect(!on_m || on_p, || format!("MC direction 1, round {round}, state {s}: {bl_phi}"));
            n.mc1 += 1;
            if guarded {
                v.expect(!on_p || on_m, || format!("MC direction 2, round {round}, state {s}: {bl_phi}"));
                n.mc2 += 1;
            }
        }
        // C, C⁻¹ and the (Φ, α, β) condition on an MTS.
        let a = random_actions(&mut r, LABELS_PER_CLASS);
        let m = random_mts(&mut r, &a, bounds(SYSTEM_STATES, a.len()));
        let cm = lts_of_mts(&m).unwrap();
        let phi = random_formula(&mut r, FORMULA_DEPTH, &LogicKind::Bl(a.clone()));
        let c_phi = formula_c(&phi, &a).unwrap();
        let psi = random_formula(&mut r, FORMULA_DEPTH, &LogicKind::Cc(Signature::decorated(&a)));
        let back = formula_c_inverse(&psi).unwrap();
        for s in 0..m.num_states() {
            v.expect(mc_mts(&m, s, &phi).unwrap() == mc_cc(&cm, s, &c_phi).unwrap(), || {
                format!("C, round {round}: {phi}")
            });
            n.c += 1;
            v.expect(mc_mts(&m, s, &back).unwrap() == mc_cc(&cm, s, &psi).unwrap(), || {
                format!("C⁻¹, round {round}: {psi}")
            });
            n.c_inverse += 1;
            let (l, rr) = morphism_sides(&m, s, &psi).unwrap();
            v.expect(l == rr, || format!("α, round {round}: {psi}"));
            n.alpha += 1;
        }
    }
    // The pinned counterexample to the unguarded second implication.
    let zero = load("mc-counterexample.lts");
    let zero = zero.as_lts().unwrap();
    let (built, box_a_ff) = pinned::mc_counterexample();
    v.expect(zero == &built, || "fixture differs from the pinned system".into());
    let t = formula_mc(&box_a_ff, zero.signature()).unwrap();
    let m0 = mts_of_lts(zero).unwrap();
    let reproduces = t == Formula::Top && mc_cc(zero, 0, &t).unwrap() && !mc_mts(&m0, 0, &box_a_ff).unwrap();
    v.expect(reproduces, || format!("pinned: MC([a]ff) = {t}"));
    v.summary = format!(
        "triples: M {}, C {}, C⁻¹ {}, α {}, MC-1 {}, MC-2 (guarded) {} (each >= {LOGIC_TRIPLES}, depth <= {FORMULA_DEPTH}); \
         pinned: MC([a]ff) = {t} holds on 0, M(0) refutes [a]ff: {reproduces}",
        n.m, n.c, n.c_inverse, n.alpha, n.mc1, n.mc2
    );
    v
}

// ---- 4 ----

fn composition_suite() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(0xc0_4405);
    for i in 0..COMPOSITION_SYSTEMS {
        let a = random_actions(&mut r, LABELS_PER_CLASS);
        let p = random_mts(&mut r, &a, bounds(SYSTEM_STATES, a.len()));
        let back = rho_mts(&mts_of_lts(&lts_of_mts(&p).unwrap()).unwrap()).unwrap();
        let rel = greatest_refinement(&back, &p).unwrap();
        v.expect((0..p.num_states()).all(|s| rel.contains(s, s)), || format!("MTS bound, system #{i}"));

        let sig = random_signature(&mut r, LABELS_PER_CLASS, true);
        let l = random_lts(&mut r, &sig, bounds(SYSTEM_STATES, sig.actions().len()));
        let back = rho_lts(&lts_of_mts(&mts_of_lts(&l).unwrap()).unwrap(), &sig).unwrap();
        let rel = greatest_ccsim(&l, &back).unwrap();
        v.expect((0..l.num_states()).all(|s| rel.contains(s, s)), || format!("LTS bound, system #{i}"));

        // The one-way bridge between overline and M.
        let sig = random_signature(&mut r, LABELS_PER_CLASS, false);
        let acts = sig.actions();
        let l = random_lts(&mut r, &sig, bounds(SYSTEM_STATES, acts.len()));
        let q = random_mts(
            &mut r,
            &acts,
            SystemBounds { max_states: SYSTEM_STATES, max_transitions: SYSTEM_STATES * acts.len() },
        );
        let cc = greatest_ccsim(&overline(&l).unwrap(), &lts_of_mts(&q).unwrap()).unwrap();
        let re = greatest_refinement(&mts_of_lts(&l).unwrap(), &q).unwrap();
        v.expect(cc.is_subset(&restrict(&re, l.num_states(), q.num_states())), || {
            format!("overline bridge, system #{i}")
        });
    }
    let a = Action::plain("a");
    let sampled_failures = v.failures.len();

    let p = load("composition-mts.mts");
    let p = p.as_mts().unwrap();
    v.expect(p == &pinned::composition_converse_mts(), || "MTS fixture differs from the pinned system".into());
    let back = rho_mts(&mts_of_lts(&lts_of_mts(p).unwrap()).unwrap()).unwrap();
    let edge = back.may().contains(&Transition::new(0, a.clone(), 1));
    let converse = greatest_refinement(p, &back).unwrap().contains(0, 0);
    v.expect(edge && !converse, || format!("MTS converse: p -a-> u may edge {edge}, converse holds {converse}"));

    let p = load("composition-lts.lts");
    let p = p.as_lts().unwrap();
    v.expect(p == &pinned::composition_converse_lts(), || "LTS fixture differs from the pinned system".into());
    let back = rho_lts(&lts_of_mts(&mts_of_lts(p).unwrap()).unwrap(), p.signature()).unwrap();
    let edge = back.transitions().contains(&Transition::new(0, a, 1));
    let converse = greatest_ccsim(&back, p).unwrap().contains(0, 0);
    v.expect(edge && !converse, || format!("LTS converse: p -a-> u edge {edge}, converse holds {converse}"));

    let (op, oq) = (load("overline-p.lts"), load("overline-q.mts"));
    let (op, oq) = (op.as_lts().unwrap(), oq.as_mts().unwrap());
    v.expect((op.clone(), oq.clone()) == pinned::overline_converse(), || "overline fixtures differ".into());
    let refines = greatest_refinement(&mts_of_lts(op).unwrap(), oq).unwrap().contains(0, 0);
    let simulated = greatest_ccsim(&overline(op).unwrap(), &lts_of_mts(oq).unwrap()).unwrap().contains(0, 0);
    v.expect(refines && !simulated, || format!("overline converse: refines {refines}, simulated {simulated}"));

    v.summary = format!(
        "{COMPOSITION_SYSTEMS} MTSs, {COMPOSITION_SYSTEMS} LTSs, {COMPOSITION_SYSTEMS} overline pairs; \
         pinned converses (MTS, LTS, overline) reproduce: {}",
        v.failures.len() == sampled_failures
    );
    v
}

// ---- 5 ----

fn charform_suite() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let mut notes = Vec::new();
    for names in [&["a"][..], &["a", "b"][..]] {
        let actions = label_set(names.iter().copied());
        let terms = enumerate_mts_terms(&actions, TERM_DEPTH);
        let k = terms.len();
        let universe = universal_mts(&terms, &actions).unwrap();
        let refinement = greatest_refinement(&universe, &universe).unwrap();
        let mut checker = GlobalChecker::for_mts(&universe);

        let sig = Signature::decorated(&actions);
        let lts_terms = enumerate_lts_terms(&sig, TERM_DEPTH);
        let ls = lts_terms.len();
        let mut roots = lts_terms;
        roots.extend(terms.iter().map(|t| term_c(t).normalize_ac()));
        let lts_universe = universal_lts(&roots, &sig).unwrap();
        let ccsim = greatest_ccsim(&lts_universe, &lts_universe).unwrap();
        let mut lts_checker = GlobalChecker::for_lts(&lts_universe);

        let mut mismatches = 0;
        for (i, t) in terms.iter().enumerate() {
            let c = chi(t, &actions, ChiOptions::default()).unwrap();
            let raw = checker.sat(&c.formula);
            let simplified = checker.sat(&c.simplified);
            for j in 0..k {
                let refines = refinement.contains(i, j);
                if refines != raw.contains(j) || refines != simplified.contains(j) {
                    mismatches += 1;
                    if v.failures.len() < 5 {
                        v.failures.push(format!("{t} vs {}", universe.states()[j]));
                    }
                }
            }
            let ct = lts_universe.state_index(&term_c(t).normalize_ac().to_string()).unwrap();
            let sat = lts_checker.sat(&chi_cc(t, &actions).unwrap());
            for s in 0..ls {
                if ccsim.contains(ct, s) != sat.contains(s) {
                    mismatches += 1;
                    if v.failures.len() < 5 {
                        v.failures.push(format!("C({t}) vs {}", lts_universe.states()[s]));
                    }
                }
            }
        }
        v.expect(mismatches == 0, || format!("{mismatches} mismatches over A = {actions:?}"));
        notes.push(format!("|A|={}: {k} terms, {ls} LTS terms", actions.len()));
    }
    let took = start.elapsed();
    v.expect(took < CHARFORM_TIME, || format!("took {took:.1?}, limit {CHARFORM_TIME:?}"));
    v.summary = format!(
        "exhaustive, depth <= {TERM_DEPTH}, modulo AC of +; {}; raw and simplified χ, and C(χ); {took:.1?} (limit {CHARFORM_TIME:?})",
        notes.join("; ")
    );
    v
}

// ---- 6 ----

fn pbsim_suite() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(0xb15);
    let mut nonempty = 0;
    for i in 0..PBSIM_INSTANCES {
        let a = random_actions(&mut r, LABELS_PER_CLASS + 1);
        let sig = Signature::new(a.clone(), [], []);
        let p = random_lts(&mut r, &sig, bounds(SYSTEM_STATES, a.len()));
        let q = random_lts(&mut r, &sig, bounds(SYSTEM_STATES, a.len()));
        let b: BTreeSet<Action> = a.iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
        nonempty += usize::from(!b.is_empty());
        let pb = greatest_pbsim(&p, &q, &b).unwrap();
        let reclassed = Signature::partial_bisimulation(&a, &b);
        let cc = greatest_ccsim(&p.with_signature(reclassed.clone()), &q.with_signature(reclassed)).unwrap();
        v.expect(pb == cc, || format!("reclassed, instance #{i}"));
        let re = greatest_refinement(&mts_of_pb_lts(&q, &b).unwrap(), &mts_of_pb_lts(&p, &b).unwrap()).unwrap();
        let inv = pb.inverse();
        v.expect(inv.is_subset(&re) && re.is_subset(&inv), || format!("N correspondence, instance #{i}"));
        let empty = greatest_pbsim(&p, &q, &BTreeSet::new()).unwrap();
        v.expect(empty == greatest_simulation(&p, &q).unwrap(), || format!("B = ∅, instance #{i}"));
    }
    v.summary = format!(
        "{PBSIM_INSTANCES} instances ({nonempty} with B ≠ ∅): reclassed ccsim, N-image refinement both inclusions, B = ∅ is simulation"
    );
    v
}

// ---- 7 ----

fn satisfaction_triples(v: &mut Verdict, r: &mut SeededRng, cc: bool) -> usize {
    let mut count = 0;
    while count < SATISFACTION_TRIPLES {
        let (f, s, phi) = if cc {
            let src = random_signature(r, LABELS_PER_CLASS, true);
            let f = random_cc_morphism(r, &src, LABELS_PER_CLASS);
            let SignatureMorphism::Cc { target, .. } = &f else { unreachable!() };
            let s: System = random_lts(r, target, bounds(SYSTEM_STATES, target.actions().len())).into();
            (f.clone(), s, random_formula(r, FORMULA_DEPTH, &LogicKind::Cc(src)))
        } else {
            let src = random_actions(r, LABELS_PER_CLASS + 1);
            let f = random_mts_morphism(r, &src, LABELS_PER_CLASS + 1);
            let SignatureMorphism::Mts { target, .. } = &f else { unreachable!() };
            let s: System = random_mts(r, target, bounds(SYSTEM_STATES, target.len())).into();
            (f.clone(), s, random_formula(r, FORMULA_DEPTH, &LogicKind::Bl(src)))
        };
        for st in 0..s.states().len() {
            let ok = check_satisfaction_condition(&f, &s, st, &phi).unwrap();
            v.expect(ok, || format!("satisfaction condition ({}) on {phi}", if cc { "cc" } else { "modal" }));
            count += 1;
        }
    }
    count
}

fn institution_suite() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(0x1257);
    let modal = satisfaction_triples(&mut v, &mut r, false);
    let cc = satisfaction_triples(&mut v, &mut r, true);

    let mut morph = 0;
    while morph < MORPHISM_TRIPLES {
        let a = random_actions(&mut r, LABELS_PER_CLASS);
        let m = random_mts(&mut r, &a, bounds(SYSTEM_STATES, a.len()));
        let phi = random_formula(&mut r, FORMULA_DEPTH, &LogicKind::Cc(Signature::decorated(&a)));
        for s in 0..m.num_states() {
            let (l, rr) = morphism_sides(&m, s, &phi).unwrap();
            v.expect(l == rr, || format!("morphism condition on {phi}"));
            morph += 1;
        }
    }

    for kind in [WitnessKind::WeaklyFinalCc, WitnessKind::UniversalSpecCc, WitnessKind::WeaklyInitialMts] {
        for _ in 0..WITNESS_SYSTEMS {
            let (sig, other): (Signature, System) = if kind == WitnessKind::WeaklyInitialMts {
                let a = random_actions(&mut r, LABELS_PER_CLASS);
                let m = random_mts(&mut r, &a, bounds(SYSTEM_STATES, a.len()));
                (Signature::new(a, [], []), m.into())
            } else {
                let sig = random_signature(&mut r, LABELS_PER_CLASS, false);
                let l = random_lts(&mut r, &sig, bounds(SYSTEM_STATES, sig.actions().len()));
                (sig, l.into())
            };
            let w = canonical_witness(kind, &sig).unwrap();
            for s in 0..other.states().len() {
                v.expect(witness_admits(kind, &w, &other, s).unwrap(), || format!("{kind:?} against state {s}"));
            }
        }
    }

    let a = label_set(["a"]);
    let (m, n) = final_object_obstruction(&a);
    v.expect(load("final-m.mts").as_mts() == Some(&m) && load("final-n.mts").as_mts() == Some(&n), || {
        "final obstruction fixtures differ".into()
    });
    let (found, searched_final) = search_weakly_final_mts(&a, OBSTRUCTION_STATES).unwrap();
    v.expect(found.is_none(), || "an MTS receives arrows from both M and N".into());

    let sig = Signature::plain(&[], &[], &["c"]);
    let c = Action::plain("c");
    let (p, q) = initial_object_obstruction(&sig, &c).unwrap();
    v.expect(load("initial-p.lts").as_lts() == Some(&p) && load("initial-q.lts").as_lts() == Some(&q), || {
        "initial obstruction fixtures differ".into()
    });
    let (found, searched_initial) = search_weakly_initial_cc(&sig, &c, OBSTRUCTION_STATES).unwrap();
    v.expect(found.is_none(), || "an LTS has arrows into both P and Q".into());

    v.summary = format!(
        "satisfaction: {modal} modal, {cc} cc triples; morphism: {morph} triples; 3 witnesses x {WITNESS_SYSTEMS} systems; \
         no weakly final MTS ({searched_final} candidates), no weakly initial cc-LTS ({searched_initial} candidates), <= {OBSTRUCTION_STATES} states"
    );
    v
}

// ---- 8 ----

const GOLDEN: &[&str] = &[
    "U.mts",
    "ccex.lts",
    "vending.mts",
    "mc-counterexample.lts",
    "composition-mts.mts",
    "composition-lts.lts",
    "overline-p.lts",
    "overline-q.mts",
    "final-m.mts",
    "final-n.mts",
    "initial-p.lts",
    "initial-q.lts",
];

fn determinism() -> Verdict {
    let mut v = Verdict::new();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_modref")).args(["selfcheck", "--seed", "42"]).output().unwrap();
        (out.status.code(), out.stdout)
    };
    let (first, second) = (run(), run());
    v.expect(first.0 == Some(0), || format!("selfcheck exit code {:?}", first.0));
    v.expect(first == second, || "two selfcheck runs differ".into());
    let (jf, js) = {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_modref"))
                .args(["selfcheck", "--seed", "42", "--format", "json"])
                .output()
                .unwrap()
                .stdout
        };
        (run(), run())
    };
    v.expect(jf == js, || "two JSON selfcheck runs differ".into());
    for name in GOLDEN {
        let text = fs::read_to_string(fixture(name)).unwrap();
        let printed = print_system(&load(name));
        v.expect(printed == text, || format!("{name} is not in canonical form"));
        let again = print_system(&parse_system(&printed, ParseOptions::default()).unwrap().system);
        v.expect(again == printed, || format!("{name} does not round-trip"));
    }
    v.summary = format!(
        "selfcheck --seed 42 twice: {} bytes text, {} bytes json, identical; {} golden files canonical and round-trip",
        first.1.len(),
        jf.len(),
        GOLDEN.len()
    );
    v
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("transfer suite", transfer_suite),
        ("logic preservation", logic_preservation),
        ("composition bounds", composition_suite),
        ("characteristic formulas", charform_suite),
        ("partial bisimulation", pbsim_suite),
        ("institutions", institution_suite),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        let ok = v.failures.is_empty();
        all &= ok;
        println!("criterion {} {name}: {} - {}", i + 1, if ok { "PASS" } else { "FAIL" }, v.summary);
        for f in v.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
