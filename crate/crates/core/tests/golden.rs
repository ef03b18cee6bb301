mod common;

use common::{fixture, fixture_path, fixture_text};
use modref::institution::{final_object_obstruction, initial_object_obstruction};
use modref::selfcheck::pinned;
use modref::syntax::{parse_system, print_system, ParseOptions};
use modref::{Action, Signature};

#[test]
fn every_fixture_is_canonical_and_round_trips() {
    let dir = fixture_path("");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        let text = fixture_text(&name);
        let printed = print_system(&fixture(&name));
        assert_eq!(printed, text, "{name}");
        let again = print_system(&parse_system(&printed, ParseOptions::default()).unwrap().system);
        assert_eq!(again, printed, "{name}");
        seen += 1;
    }
    assert!(seen >= 12);
}

#[test]
fn pinned_fixtures_match_the_built_in_instances() {
    assert_eq!(fixture("mc-counterexample.lts").as_lts(), Some(&pinned::mc_counterexample().0));
    assert_eq!(fixture("composition-mts.mts").as_mts(), Some(&pinned::composition_converse_mts()));
    assert_eq!(fixture("composition-lts.lts").as_lts(), Some(&pinned::composition_converse_lts()));
    let (p, q) = pinned::overline_converse();
    assert_eq!(fixture("overline-p.lts").as_lts(), Some(&p));
    assert_eq!(fixture("overline-q.mts").as_mts(), Some(&q));
}

#[test]
fn obstruction_fixtures_match_the_library() {
    let (m, n) = final_object_obstruction(&[Action::plain("a")].into());
    assert_eq!(fixture("final-m.mts").as_mts(), Some(&m));
    assert_eq!(fixture("final-n.mts").as_mts(), Some(&n));
    let (p, q) = initial_object_obstruction(&Signature::plain(&[], &[], &["c"]), &Action::plain("c")).unwrap();
    assert_eq!(fixture("initial-p.lts").as_lts(), Some(&p));
    assert_eq!(fixture("initial-q.lts").as_lts(), Some(&q));
}

#[test]
fn ccex_has_the_expected_shape() {
    let s = fixture("ccex.lts");
    let l = s.as_lts().unwrap();
    assert_eq!(l.num_states(), 4);
    assert_eq!(l.signature(), &Signature::plain(&["a"], &["b"], &[]));
    assert_eq!(l.transitions().len(), 4);
}
