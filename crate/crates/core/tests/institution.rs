use modref::institution::{
    canonical_witness, check_satisfaction_condition, reduct, search_weakly_final_mts, search_weakly_initial_cc,
    sen_map, witness_admits, SignatureMorphism, WitnessKind,
};
use modref::logic::mc_mts;
use modref::random::{
    random_actions, random_cc_morphism, random_formula, random_lts, random_mts, random_mts_morphism, random_signature,
    rng, SystemBounds,
};
use modref::system::System;
use modref::{Action, LogicKind, Signature};
use proptest::prelude::*;

const BOUNDS: SystemBounds = SystemBounds { max_states: 4, max_transitions: 10 };

#[test]
fn impossibility_searches_find_nothing() {
    let (found, searched) = search_weakly_final_mts(&[Action::plain("a")].into(), 2).unwrap();
    assert!(found.is_none());
    assert!(searched > 0);
    let sig = Signature::plain(&["a"], &[], &["c"]);
    let (found, _) = search_weakly_initial_cc(&sig, &Action::plain("c"), 2).unwrap();
    assert!(found.is_none());
}

#[test]
fn witnesses_reject_bivariant_signatures() {
    let sig = Signature::plain(&["a"], &[], &["c"]);
    assert!(canonical_witness(WitnessKind::WeaklyFinalCc, &sig).is_err());
}

#[test]
fn reduct_requires_a_model_over_the_target() {
    let a: std::collections::BTreeSet<Action> = [Action::plain("a")].into();
    let f = SignatureMorphism::identity_mts(&a);
    let other = random_mts(&mut rng(1), &[Action::plain("z")].into(), BOUNDS);
    assert!(reduct(&other.into(), &f).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn satisfaction_condition_for_modal_formulas(seed in any::<u64>()) {
        let mut r = rng(seed);
        let src = random_actions(&mut r, 3);
        let f = random_mts_morphism(&mut r, &src, 3);
        let SignatureMorphism::Mts { target, .. } = &f else { unreachable!() };
        let m = random_mts(&mut r, target, BOUNDS);
        let phi = random_formula(&mut r, 3, &LogicKind::Bl(src));
        let translated = sen_map(&f, &phi).unwrap();
        let reduced = reduct(&m.clone().into(), &f).unwrap();
        for s in 0..m.num_states() {
            prop_assert_eq!(mc_mts(&m, s, &translated).unwrap(), mc_mts(reduced.as_mts().unwrap(), s, &phi).unwrap());
        }
    }

    #[test]
    fn satisfaction_condition_for_cc_formulas(seed in any::<u64>()) {
        let mut r = rng(seed);
        let src = random_signature(&mut r, 2, true);
        let f = random_cc_morphism(&mut r, &src, 2);
        let SignatureMorphism::Cc { target, .. } = &f else { unreachable!() };
        let l: System = random_lts(&mut r, target, BOUNDS).into();
        let phi = random_formula(&mut r, 3, &LogicKind::Cc(src));
        for s in 0..l.states().len() {
            prop_assert!(check_satisfaction_condition(&f, &l, s, &phi).unwrap());
        }
    }

    #[test]
    fn weakly_initial_mts_refines_into_everything(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_actions(&mut r, 3);
        let m: System = random_mts(&mut r, &a, BOUNDS).into();
        let w = canonical_witness(WitnessKind::WeaklyInitialMts, &Signature::new(a, [], [])).unwrap();
        for s in 0..m.states().len() {
            prop_assert!(witness_admits(WitnessKind::WeaklyInitialMts, &w, &m, s).unwrap());
        }
    }
}
