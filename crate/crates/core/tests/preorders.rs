mod common;

use common::fixture;
use modref::logic::{mc_cc, mc_mts};
use modref::preorder::{
    distinguish_ccsim, distinguish_refinement, fixpoint, greatest, greatest_ccsim, greatest_refinement, is_witness,
    oracle_greatest, PreorderKind,
};
use modref::random::{random_actions, random_lts, random_mts, random_signature, rng, SystemBounds};
use modref::system::System;
use modref::Relation;
use proptest::prelude::*;

const SMALL: SystemBounds = SystemBounds { max_states: 3, max_transitions: 8 };

#[test]
fn universal_specification_refines_into_everything() {
    let u = fixture("U.mts");
    let v = fixture("vending.mts");
    let rel = greatest(&PreorderKind::Refinement, &u, &v).unwrap();
    for q in 0..v.states().len() {
        assert!(rel.contains(0, q));
    }
    assert!(!greatest(&PreorderKind::Refinement, &v, &u).unwrap().contains(0, 0));
}

#[test]
fn ccex_ordering() {
    let s = fixture("ccex.lts");
    let l = s.as_lts().unwrap();
    let idx = |n: &str| l.state_index(n).unwrap();
    let rel = greatest_ccsim(l, l).unwrap();
    assert!(rel.contains(idx("r"), idx("p")));
    assert!(rel.contains(idx("p"), idx("q")));
    assert!(!rel.contains(idx("q"), idx("p")));
    assert!(!rel.contains(idx("p"), idx("r")));
    let phi = distinguish_ccsim(l, idx("q"), l, idx("p")).unwrap().unwrap();
    assert!(mc_cc(l, idx("q"), &phi).unwrap());
    assert!(!mc_cc(l, idx("p"), &phi).unwrap());
}

#[test]
fn mismatched_inputs_are_errors() {
    let (u, c) = (fixture("U.mts"), fixture("ccex.lts"));
    assert!(greatest(&PreorderKind::Refinement, &u, &c).is_err());
    assert!(greatest(&PreorderKind::CcSim, &u, &u).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn refinement_agrees_with_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_actions(&mut r, 2);
        let p: System = random_mts(&mut r, &a, SMALL).into();
        let q: System = random_mts(&mut r, &a, SystemBounds { max_states: 4, ..SMALL }).into();
        let k = PreorderKind::Refinement;
        prop_assert_eq!(greatest(&k, &p, &q).unwrap(), oracle_greatest(&k, &p, &q).unwrap());
    }

    #[test]
    fn ccsim_agrees_with_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sig = random_signature(&mut r, 2, true);
        let p: System = random_lts(&mut r, &sig, SMALL).into();
        let q: System = random_lts(&mut r, &sig, SystemBounds { max_states: 4, ..SMALL }).into();
        let k = PreorderKind::CcSim;
        prop_assert_eq!(greatest(&k, &p, &q).unwrap(), oracle_greatest(&k, &p, &q).unwrap());
    }

    #[test]
    fn greatest_relations_are_witnesses(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sig = random_signature(&mut r, 2, true);
        let p: System = random_lts(&mut r, &sig, SystemBounds { max_states: 5, max_transitions: 12 }).into();
        let q: System = random_lts(&mut r, &sig, SystemBounds { max_states: 5, max_transitions: 12 }).into();
        for k in [PreorderKind::CcSim, PreorderKind::Simulation, PreorderKind::PartialBisim(sig.bivariant.clone())] {
            let fp = fixpoint(&k, &p, &q).unwrap();
            prop_assert!(is_witness(&k, &p, &q, &fp.relation).unwrap());
            prop_assert!(fp.sizes.windows(2).all(|w| w[1] < w[0]));
            prop_assert!(fp.rounds() <= p.states().len() * q.states().len());
        }
    }

    #[test]
    fn refinement_is_a_preorder(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_actions(&mut r, 2);
        let m = random_mts(&mut r, &a, SystemBounds { max_states: 6, max_transitions: 16 });
        let rel = greatest_refinement(&m, &m).unwrap();
        prop_assert!(Relation::identity(m.num_states()).is_subset(&rel));
        prop_assert!(rel.compose(&rel).is_subset(&rel));
    }

    #[test]
    fn removed_pairs_are_separated(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_actions(&mut r, 2);
        let p = random_mts(&mut r, &a, SystemBounds { max_states: 4, max_transitions: 10 });
        let q = random_mts(&mut r, &a, SystemBounds { max_states: 4, max_transitions: 10 });
        let rel = greatest_refinement(&p, &q).unwrap();
        for s in 0..p.num_states() {
            for t in 0..q.num_states() {
                let phi = distinguish_refinement(&p, s, &q, t).unwrap();
                prop_assert_eq!(phi.is_none(), rel.contains(s, t));
                if let Some(phi) = phi {
                    prop_assert!(mc_mts(&p, s, &phi).unwrap());
                    prop_assert!(!mc_mts(&q, t, &phi).unwrap());
                }
            }
        }
    }
}
