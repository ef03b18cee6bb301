//! Randomized checking of every preservation, reflection and correctness
//! claim implemented by this crate, against brute-force oracles and direct
//! clause evaluation.
//!
//! Each property draws its cases from its own generator, seeded from the
//! run seed and the property id, so reports are reproducible and
//! independent of which properties are selected. The first failing case of
//! a property is shrunk greedily before it is reported.

mod properties;
mod shrink;

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::institution::SignatureMorphism;
use crate::logic::Formula;
use crate::random::{rng, SeededRng};
use crate::syntax::print_system;
use crate::system::System;
use crate::term::{LtsTerm, MtsTerm};

pub use properties::property_ids;

/// The fixed instances behind the pinned properties.
pub mod pinned {
    pub use super::properties::{
        composition_converse_lts, composition_converse_mts, mc_counterexample, overline_converse,
    };
}

/// Identifies the report layout; bumped on any incompatible change.
pub const SCHEMA: &str = "modref-selfcheck/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfCheckConfig {
    pub seed: u64,
    /// Cases per randomized property.
    pub cases: usize,
    pub max_states: usize,
    /// Labels per action set, or per class of a signature.
    pub max_labels: usize,
    pub max_depth: usize,
    /// Restrict the run to these property ids; empty runs everything.
    pub properties: Vec<String>,
    /// Drop the guard of the guarded translation property, which is then
    /// expected to fail.
    pub unguarded: bool,
}

impl Default for SelfCheckConfig {
    fn default() -> Self {
        SelfCheckConfig {
            seed: 0,
            cases: 100,
            max_states: 4,
            max_labels: 2,
            max_depth: 4,
            properties: Vec::new(),
            unguarded: false,
        }
    }
}

impl SelfCheckConfig {
    fn validate(&self) -> Result<()> {
        let bounds = [
            ("cases", self.cases),
            ("max-states", self.max_states),
            ("max-labels", self.max_labels),
            ("max-depth", self.max_depth),
        ];
        for (name, v) in bounds {
            if v == 0 {
                return Err(Error::NotInRange(format!("selfcheck bound {name} must be at least 1")));
            }
        }
        let known: BTreeSet<&str> = property_ids().into_iter().collect();
        for p in &self.properties {
            if !known.contains(p.as_str()) {
                return Err(Error::NotInRange(format!("unknown property {p:?}")));
            }
        }
        Ok(())
    }
}

/// One test case. Properties use the fields they need.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Instance {
    pub systems: Vec<System>,
    pub formula: Option<Formula>,
    pub bisim: Option<BTreeSet<Action>>,
    pub morphisms: Vec<SignatureMorphism>,
    pub mts_terms: Vec<MtsTerm>,
    pub lts_terms: Vec<LtsTerm>,
}

fn morphism_text(f: &SignatureMorphism) -> String {
    let pairs: Vec<String> = f.map().iter().map(|(a, b)| format!("{a}->{b}")).collect();
    let (src, tgt) = match f {
        SignatureMorphism::Mts { source, target, .. } => (set_text(source), set_text(target)),
        SignatureMorphism::Cc { source, target, .. } => (sig_text(source), sig_text(target)),
    };
    format!("{src} => {tgt}: {}", pairs.join(", "))
}

fn set_text(s: &BTreeSet<Action>) -> String {
    let v: Vec<String> = s.iter().map(Action::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn sig_text(s: &crate::action::Signature) -> String {
    format!("({}, {}, {})", set_text(&s.covariant), set_text(&s.contravariant), set_text(&s.bivariant))
}

impl Instance {
    /// A readable rendering: systems in their file format, then the rest.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.systems {
            out.push_str(&print_system(s));
        }
        if let Some(f) = &self.formula {
            writeln!(out, "formula: {f}").unwrap();
        }
        if let Some(b) = &self.bisim {
            writeln!(out, "bisimulation set: {}", set_text(b)).unwrap();
        }
        for f in &self.morphisms {
            writeln!(out, "morphism: {}", morphism_text(f)).unwrap();
        }
        for t in &self.mts_terms {
            writeln!(out, "term: {t}").unwrap();
        }
        for t in &self.lts_terms {
            writeln!(out, "lts term: {t}").unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A claim known not to hold failed, as it should.
    ExpectedFail,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedFail => "EXPECTED-FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Zero-based index of the first failing case.
    pub case: usize,
    pub shrink_steps: usize,
    pub message: String,
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub id: String,
    pub claim: String,
    pub status: Status,
    pub cases: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub expected_fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: SelfCheckConfig,
    pub properties: Vec<PropertyReport>,
    pub summary: Summary,
}

impl Report {
    /// No property has status [`Status::Fail`].
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        writeln!(
            out,
            "{SCHEMA} seed={} cases={} max-states={} max-labels={} max-depth={}{}",
            c.seed,
            c.cases,
            c.max_states,
            c.max_labels,
            c.max_depth,
            if c.unguarded { " unguarded" } else { "" }
        )
        .unwrap();
        let width = self.properties.iter().map(|p| p.id.len()).max().unwrap_or(0);
        for p in &self.properties {
            write!(out, "{:<13} {:<width$}  {} cases", p.status.label(), p.id, p.cases).unwrap();
            if p.failures > 0 {
                write!(out, ", {} failing", p.failures).unwrap();
            }
            out.push('\n');
            if let Some(cx) = &p.counterexample {
                writeln!(out, "    claim: {}", p.claim).unwrap();
                writeln!(out, "    case {} (shrunk in {} steps): {}", cx.case, cx.shrink_steps, cx.message).unwrap();
                for line in cx.instance.lines() {
                    writeln!(out, "      {line}").unwrap();
                }
            }
        }
        let s = &self.summary;
        writeln!(out, "{} passed, {} failed, {} expected-fail", s.passed, s.failed, s.expected_fail).unwrap();
        out
    }
}

/// Size limits handed to generators.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub max_states: usize,
    pub max_labels: usize,
    pub max_depth: usize,
    pub unguarded: bool,
}

type Gen = fn(&mut SeededRng, &Ctx) -> Instance;
type Check = fn(&Instance, &Ctx) -> Result<Option<String>>;

pub(crate) struct Property {
    pub id: &'static str,
    pub claim: &'static str,
    /// Runs once on a fixed instance rather than on random cases.
    pub pinned: bool,
    /// Expected to fail when the run is unguarded.
    pub guarded: bool,
    pub gen: Gen,
    pub check: Check,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

fn run_check(p: &Property, inst: &Instance, ctx: &Ctx) -> Option<String> {
    match (p.check)(inst, ctx) {
        Ok(r) => r,
        Err(e) => Some(format!("error: {e}")),
    }
}

fn run_property(p: &Property, config: &SelfCheckConfig, ctx: &Ctx) -> PropertyReport {
    let mut r = rng(config.seed ^ fnv1a(p.id));
    let cases = if p.pinned { 1 } else { config.cases };
    let mut failures = 0;
    let mut first = None;
    for case in 0..cases {
        let inst = (p.gen)(&mut r, ctx);
        if let Some(msg) = run_check(p, &inst, ctx) {
            failures += 1;
            first.get_or_insert((case, inst, msg));
        }
    }
    let counterexample = first.map(|(case, inst, msg)| {
        let shrunk = |i: &Instance| (p.check)(i, ctx).unwrap_or_default();
        let (inst, message, shrink_steps) = if p.pinned { (inst, msg, 0) } else { shrink::shrink(inst, msg, shrunk) };
        Counterexample { case, shrink_steps, message, instance: inst.render() }
    });
    let expect_fail = p.guarded && ctx.unguarded;
    let status = match (failures > 0, expect_fail) {
        (false, false) => Status::Pass,
        (true, true) => Status::ExpectedFail,
        _ => Status::Fail,
    };
    PropertyReport { id: p.id.to_string(), claim: p.claim.to_string(), status, cases, failures, counterexample }
}

/// Runs the selected properties. Errors only on an invalid configuration;
/// failing properties are report content.
pub fn run(config: &SelfCheckConfig) -> Result<Report> {
    config.validate()?;
    let ctx = Ctx {
        max_states: config.max_states,
        max_labels: config.max_labels,
        max_depth: config.max_depth,
        unguarded: config.unguarded,
    };
    let selected = |id: &str| config.properties.is_empty() || config.properties.iter().any(|p| p == id);
    let reports: Vec<PropertyReport> =
        properties::all().iter().filter(|p| selected(p.id)).map(|p| run_property(p, config, &ctx)).collect();
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        expected_fail: count(Status::ExpectedFail),
    };
    Ok(Report { schema: SCHEMA, config: config.clone(), properties: reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(props: &[&str]) -> SelfCheckConfig {
        SelfCheckConfig {
            seed: 42,
            cases: 20,
            properties: props.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    #[test]
    fn ids_are_unique() {
        let ids = property_ids();
        let set: BTreeSet<&str> = ids.iter().copied().collect();
        assert_eq!(set.len(), ids.len());
    }

    #[test]
    fn unknown_property_is_an_error() {
        assert!(run(&quick(&["no-such-property"])).is_err());
        assert!(run(&SelfCheckConfig { cases: 0, ..Default::default() }).is_err());
    }

    #[test]
    fn default_run_passes_and_is_deterministic() {
        let config = SelfCheckConfig { seed: 42, cases: 10, ..Default::default() };
        let a = run(&config).unwrap();
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.to_json(), run(&config).unwrap().to_json());
    }

    #[test]
    fn unguarded_direction_two_is_an_expected_failure() {
        let config = SelfCheckConfig { unguarded: true, ..quick(&["mc-direction-2"]) };
        let r = run(&config).unwrap();
        assert_eq!(r.properties[0].status, Status::ExpectedFail);
        assert!(r.passed());
        let cx = r.properties[0].counterexample.as_ref().unwrap();
        assert!(cx.instance.contains("formula: [a]ff"), "{}", cx.instance);
    }
}
