use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn modref(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modref")).args(args).env("NO_COLOR", "1").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn related_pair_prints_a_witness() {
    let o = modref(&["check", "ccsim", &fixture("ccex.lts"), "r", "p"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("related: r ≲cc p"), "{out}");
    assert!(out.contains("witness"));
}

#[test]
fn unrelated_pair_prints_a_formula() {
    let o = modref(&["check", "ccsim", &fixture("ccex.lts"), "q", "p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("distinguishing formula: [b]ff"), "{}", stdout(&o));
}

#[test]
fn universal_specification_refines_into_another_file() {
    let o = modref(&["check", "refine", &fixture("U.mts"), &fixture("vending.mts")]);
    assert_eq!(o.status.code(), Some(0));
    let o = modref(&["check", "refine", &fixture("vending.mts"), "idle", &fixture("U.mts"), "u"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn pbsim_and_sim_checks() {
    let f = fixture("ccex.lts");
    assert_eq!(modref(&["check", "sim", &f, "q", "p"]).status.code(), Some(0));
    assert_eq!(modref(&["check", "pbsim", &f, "q", "p", "--bisimset", "b"]).status.code(), Some(1));
}

#[test]
fn model_checking_exit_codes() {
    let o = modref(&["mc", &fixture("U.mts"), "u", "<a>tt"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "false");
    assert_eq!(modref(&["mc", &fixture("U.mts"), "u", "[a]tt"]).status.code(), Some(0));
}

#[test]
fn ill_formed_input_is_an_error() {
    assert_eq!(modref(&["mc", &fixture("ccex.lts"), "p", "[a]ff"]).status.code(), Some(2));
    assert_eq!(modref(&["mc", &fixture("U.mts"), "nowhere", "tt"]).status.code(), Some(2));
    assert_eq!(modref(&["check", "refine", &fixture("U.mts"), &fixture("ccex.lts")]).status.code(), Some(2));
    assert_eq!(modref(&["check", "refine", "/no/such/file", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(modref(&["charform", "a.("]).status.code(), Some(2));
}

#[test]
fn charform_of_zero() {
    let o = modref(&["charform", "0", "--actions", "a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[a]ff\n");
    let raw = modref(&["charform", "a!0", "--raw"]);
    assert_eq!(raw.status.code(), Some(0));
    assert!(!stdout(&raw).trim().is_empty());
}

#[test]
fn translate_c_of_u() {
    let o = modref(&["translate", "c", &fixture("U.mts")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("lts U\n"), "{out}");
    assert!(out.contains("trans u ct(a) u"));
    assert!(!out.contains("cv(a) u"));
}

#[test]
fn translate_output_feeds_back_in() {
    let dir = std::env::temp_dir().join(format!("modref-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let c = dir.join("c.lts");
    let c = c.to_str().unwrap();
    assert_eq!(modref(&["translate", "c", &fixture("vending.mts"), "-o", c]).status.code(), Some(0));
    let back = modref(&["translate", "cinv", c]);
    assert_eq!(stdout(&back), std::fs::read_to_string(fixture("vending.mts")).unwrap());
    let rho = modref(&["translate", "rho", c]);
    assert_eq!(rho.status.code(), Some(2));
    let rho = modref(&["translate", "rho", c, "--cov", "a,b"]);
    assert_eq!(rho.status.code(), Some(0), "{}", String::from_utf8_lossy(&rho.stderr));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output() {
    let o = modref(&["--format", "json", "check", "ccsim", &fixture("ccex.lts"), "q", "p"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["related"], false);
    assert_eq!(v["formula"], "[b]ff");
    let o = modref(&["--format", "json", "translate", "m", &fixture("ccex.lts")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["fresh_state"], "u");
}

#[test]
fn strict_mode_rejects_lone_must() {
    let dir = std::env::temp_dir().join(format!("modref-strict-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("m.mts");
    std::fs::write(&f, "mts m\nactions: a\nmust p a q\n").unwrap();
    let f = f.to_str().unwrap();
    let lax = modref(&["mc", f, "p", "<a>tt"]);
    assert_eq!(lax.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&lax.stderr).contains("warning"));
    assert_eq!(modref(&["--strict", "mc", f, "p", "<a>tt"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn no_color_output_has_no_escapes() {
    let o = modref(&["check", "ccsim", &fixture("ccex.lts"), "r", "p"]);
    assert!(!stdout(&o).contains('\x1b'));
}

#[test]
fn selfcheck_is_deterministic() {
    let args = ["selfcheck", "--seed", "42", "--cases", "20"];
    let (a, b) = (modref(&args), modref(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = modref(&["selfcheck", "--property", "mc-direction-2", "--unguarded"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("EXPECTED-FAIL"));
    assert_eq!(modref(&["selfcheck", "--property", "bogus"]).status.code(), Some(2));
}
