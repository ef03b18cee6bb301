//! `modref`: check preorders, translate systems, model check formulas,
//! build characteristic formulas and run the property self-check.
//!
//! Exit codes: 0 when the pair is related / the formula holds / every
//! property passes, 1 when not, 2 on any error.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use modref::charform::{chi, chi_cc, simplify, ChiOptions};
use modref::logic::{mc_cc, mc_mts};
use modref::preorder::{distinguishing_formula, greatest, partial_bisim_signature, PreorderKind};
use modref::selfcheck::{self, SelfCheckConfig};
use modref::syntax::{parse_formula_for, parse_mts_term, parse_system, print_system, ParseOptions};
use modref::system::System;
use modref::translate::{translate, Which};
use modref::{Action, Error, Formula, LogicKind, Relation, Signature, StateId};

// Output goes through `emit` so that a closed pipe (`modref ... | head`)
// ends the process quietly instead of panicking.
macro_rules! print {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}
macro_rules! println {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

fn emit(args: std::fmt::Arguments) {
    if let Err(e) = io::stdout().lock().write_fmt(args) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

#[derive(Parser)]
#[command(
    name = "modref",
    version,
    about = "Behavioural preorders over modal and covariant-contravariant transition systems"
)]
struct Cli {
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Treat loader warnings as errors.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a pair of states is related.
    ///
    /// Positional forms: `FILE1 FILE2` (initial states), `FILE LEFT RIGHT`
    /// (two states of one file) or `FILE1 LEFT FILE2 RIGHT`.
    Check(CheckArgs),
    /// Translate a system file; the result is printed in the file format.
    Translate(TranslateArgs),
    /// Model check a formula at a state.
    Mc(McArgs),
    /// Characteristic formula of an MTS term.
    Charform(CharformArgs),
    /// Run the randomized property self-check.
    Selfcheck(SelfcheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    /// Modal refinement between MTSs.
    Refine,
    /// Covariant-contravariant simulation between LTSs.
    Ccsim,
    /// Partial bisimulation between LTSs.
    Pbsim,
    /// Plain simulation between LTSs.
    Sim,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    kind: CheckKind,
    #[arg(num_args = 2..=4, required = true)]
    args: Vec<String>,
    /// Bisimulation set for pbsim, comma separated.
    #[arg(long, alias = "bisim", value_name = "LABELS", default_value = "")]
    bisimset: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TranslateKind {
    /// LTS to MTS, adding the universal state.
    M,
    /// MTS to LTS over decorated labels.
    C,
    /// LTS to MTS for partial bisimulation (needs --bisimset).
    N,
    /// Decorated LTS back to MTS.
    Cinv,
    /// Undo the label decoration (an LTS input needs --cov/--con/--bi).
    Rho,
    /// Decorate an LTS without bivariant labels.
    Overline,
    /// Remove bivariant labels.
    Debi,
}

#[derive(Args)]
struct TranslateArgs {
    #[arg(value_enum)]
    which: TranslateKind,
    file: PathBuf,
    #[arg(long, alias = "bisim", value_name = "LABELS")]
    bisimset: Option<String>,
    /// Covariant labels of the target signature for rho.
    #[arg(long, value_name = "LABELS")]
    cov: Option<String>,
    #[arg(long, value_name = "LABELS")]
    con: Option<String>,
    #[arg(long, value_name = "LABELS")]
    bi: Option<String>,
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    file: PathBuf,
    state: String,
    formula: String,
}

#[derive(Args)]
struct CharformArgs {
    term: String,
    /// The action set, comma separated; defaults to the labels of the term.
    #[arg(long, value_name = "LABELS")]
    actions: Option<String>,
    /// Print the formula exactly as defined instead of the simplified form.
    #[arg(long)]
    raw: bool,
    /// Use `γ_a(a.t) = γ_a(t)` in the prefix clause.
    #[arg(long, requires = "raw")]
    literal_prefix: bool,
    /// Print the translated formula characterising C(t).
    #[arg(long, conflicts_with = "raw")]
    cc: bool,
}

#[derive(Args)]
struct SelfcheckArgs {
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, default_value_t = 4)]
    max_states: usize,
    #[arg(long, default_value_t = 2)]
    max_labels: usize,
    #[arg(long, default_value_t = 4)]
    max_depth: usize,
    /// Run only these properties (repeatable).
    #[arg(long = "property", value_name = "ID")]
    properties: Vec<String>,
    /// Drop the guard of mc-direction-2, which is then expected to fail.
    #[arg(long)]
    unguarded: bool,
    /// List the property ids and exit.
    #[arg(long)]
    list: bool,
}

/// Failure of a command, as opposed to a negative verdict.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<Box<Error>> for Failure {
    fn from(e: Box<Error>) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Ui {
    format: Format,
    strict: bool,
    color: bool,
}

impl Ui {
    fn verdict(&self, yes: bool, text: &str) -> String {
        if !self.color {
            return text.to_string();
        }
        let code = if yes { "32" } else { "31" };
        format!("\x1b[{code}m{text}\x1b[0m")
    }

    fn json(&self, v: &Value) {
        println!("{}", serde_json::to_string_pretty(v).expect("json value"));
    }
}

fn load(ui: &Ui, path: &Path) -> Result<System, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let parsed = parse_system(&text, ParseOptions { strict: ui.strict })
        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}:{}: {}", path.display(), w.line, w.message);
    }
    Ok(parsed.system)
}

fn state(sys: &System, path: &Path, name: &str) -> Result<StateId, Failure> {
    sys.state_index(name).ok_or_else(|| Failure(format!("{}: no state named {name:?}", path.display())))
}

fn labels(list: &str) -> Result<BTreeSet<Action>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Action::parse(s).ok_or_else(|| Failure(format!("invalid label {s:?}"))))
        .collect()
}

fn pair_names(rel: &Relation, left: &System, right: &System) -> Vec<(String, String)> {
    rel.iter().map(|(p, q)| (left.states()[p].clone(), right.states()[q].clone())).collect()
}

fn symbol(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::Refine => "⊑",
        CheckKind::Ccsim => "≲cc",
        CheckKind::Pbsim => "≲B",
        CheckKind::Sim => "≲",
    }
}

fn kind_name(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::Refine => "refine",
        CheckKind::Ccsim => "ccsim",
        CheckKind::Pbsim => "pbsim",
        CheckKind::Sim => "sim",
    }
}

/// A separating formula for an unrelated pair. Partial bisimulation and
/// simulation are covariant-contravariant simulation after reclassing, so
/// their formulas live in that logic.
fn separating(
    kind: &PreorderKind,
    left: &System,
    p: StateId,
    right: &System,
    q: StateId,
) -> Result<Option<Formula>, Failure> {
    let bisim = match kind {
        PreorderKind::PartialBisim(b) => b.clone(),
        PreorderKind::Simulation => BTreeSet::new(),
        _ => return Ok(distinguishing_formula(kind, left, p, right, q)?),
    };
    let (Some(l), Some(r)) = (left.as_lts(), right.as_lts()) else { return Ok(None) };
    let sig = partial_bisim_signature(l, r, &bisim)?;
    let (l, r) = (l.with_signature(sig.clone()).into(), r.with_signature(sig).into());
    Ok(distinguishing_formula(&PreorderKind::CcSim, &l, p, &r, q)?)
}

fn cmd_check(ui: &Ui, a: &CheckArgs) -> Outcome {
    let (f1, s1, f2, s2) = match a.args.as_slice() {
        [f1, f2] => (f1, None, f2, None),
        [f, s, t] => (f, Some(s), f, Some(t)),
        [f1, s1, f2, s2] => (f1, Some(s1), f2, Some(s2)),
        _ => unreachable!("clap enforces 2..=4 arguments"),
    };
    let (p1, p2) = (Path::new(f1), Path::new(f2));
    let left = load(ui, p1)?;
    let right = if f1 == f2 { left.clone() } else { load(ui, p2)? };
    let p = s1.map_or(Ok(left.init()), |s| state(&left, p1, s))?;
    let q = s2.map_or(Ok(right.init()), |s| state(&right, p2, s))?;
    let kind = match a.kind {
        CheckKind::Refine => PreorderKind::Refinement,
        CheckKind::Ccsim => PreorderKind::CcSim,
        CheckKind::Pbsim => PreorderKind::PartialBisim(labels(&a.bisimset)?),
        CheckKind::Sim => PreorderKind::Simulation,
    };
    let rel = greatest(&kind, &left, &right)?;
    let related = rel.contains(p, q);
    let formula = if related { None } else { separating(&kind, &left, p, &right, q)? };
    let (pn, qn) = (&left.states()[p], &right.states()[q]);
    let witness = pair_names(&rel, &left, &right);
    if ui.format == Format::Json {
        ui.json(&json!({
            "kind": kind_name(a.kind),
            "left": { "file": f1, "state": pn },
            "right": { "file": f2, "state": qn },
            "related": related,
            "witness": if related { json!(witness) } else { Value::Null },
            "formula": formula.as_ref().map(ToString::to_string),
        }));
        return Ok(related);
    }
    let sym = symbol(a.kind);
    if related {
        println!("{}: {pn} {sym} {qn}", ui.verdict(true, "related"));
        println!("witness ({} pairs):", witness.len());
        for (x, y) in witness {
            println!("  {x} {sym} {y}");
        }
    } else {
        println!("{}: {pn} {sym} {qn} fails", ui.verdict(false, "not related"));
        if let Some(f) = formula {
            println!("distinguishing formula: {f}");
            println!("  holds at {pn}, fails at {qn}");
        }
    }
    Ok(related)
}

fn cmd_translate(ui: &Ui, a: &TranslateArgs) -> Outcome {
    let sys = load(ui, &a.file)?;
    let which = match a.which {
        TranslateKind::M => Which::M,
        TranslateKind::C => Which::C,
        TranslateKind::N => {
            let b = a.bisimset.as_deref().ok_or_else(|| Failure("translate n needs --bisimset".into()))?;
            Which::N(labels(b)?)
        }
        TranslateKind::Cinv => Which::CInverse,
        TranslateKind::Rho => {
            let given = a.cov.is_some() || a.con.is_some() || a.bi.is_some();
            let class = |s: &Option<String>| labels(s.as_deref().unwrap_or(""));
            let target = if given { Some(Signature::new(class(&a.cov)?, class(&a.con)?, class(&a.bi)?)) } else { None };
            Which::Rho(target)
        }
        TranslateKind::Overline => Which::Overline,
        TranslateKind::Debi => Which::EliminateBivariant,
    };
    let (out, report) = translate(&which, &sys)?;
    let text = print_system(&out);
    let rendered = match ui.format {
        Format::Text => text,
        Format::Json => {
            let v = json!({ "report": report, "system": text });
            serde_json::to_string_pretty(&v).expect("json value") + "\n"
        }
    };
    match &a.output {
        Some(path) => fs::write(path, rendered).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(true)
}

fn cmd_mc(ui: &Ui, a: &McArgs) -> Outcome {
    let sys = load(ui, &a.file)?;
    let s = state(&sys, &a.file, &a.state)?;
    let holds = match &sys {
        System::Mts(m) => {
            let phi = parse_formula_for(&a.formula, &LogicKind::Bl(m.actions().clone()))?;
            mc_mts(m, s, &phi)?
        }
        System::Lts(l) => {
            let phi = parse_formula_for(&a.formula, &LogicKind::Cc(l.signature().clone()))?;
            mc_cc(l, s, &phi)?
        }
    };
    match ui.format {
        Format::Json => ui.json(&json!({ "state": a.state, "formula": a.formula, "holds": holds })),
        Format::Text => println!("{}", ui.verdict(holds, if holds { "true" } else { "false" })),
    }
    Ok(holds)
}

fn cmd_charform(ui: &Ui, a: &CharformArgs) -> Outcome {
    let t = parse_mts_term(&a.term)?;
    let actions = match &a.actions {
        Some(list) => labels(list)?,
        None => t.labels(),
    };
    let f = if a.cc {
        let f = chi_cc(&t, &actions)?;
        if a.raw {
            f
        } else {
            simplify(&f)
        }
    } else {
        let c = chi(&t, &actions, ChiOptions { literal_prefix_clause: a.literal_prefix })?;
        if a.raw {
            c.formula
        } else {
            c.simplified
        }
    };
    match ui.format {
        Format::Json => {
            let acts: Vec<String> = actions.iter().map(ToString::to_string).collect();
            ui.json(&json!({ "term": t.to_string(), "actions": acts, "formula": f.to_string() }));
        }
        Format::Text => println!("{f}"),
    }
    Ok(true)
}

fn cmd_selfcheck(ui: &Ui, seed: u64, a: &SelfcheckArgs) -> Outcome {
    if a.list {
        for id in selfcheck::property_ids() {
            println!("{id}");
        }
        return Ok(true);
    }
    let config = SelfCheckConfig {
        seed,
        cases: a.cases,
        max_states: a.max_states,
        max_labels: a.max_labels,
        max_depth: a.max_depth,
        properties: a.properties.clone(),
        unguarded: a.unguarded,
    };
    let report = selfcheck::run(&config)?;
    match ui.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ui = Ui {
        format: cli.format,
        strict: cli.strict,
        color: std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal(),
    };
    let outcome = match &cli.command {
        Command::Check(a) => cmd_check(&ui, a),
        Command::Translate(a) => cmd_translate(&ui, a),
        Command::Mc(a) => cmd_mc(&ui, a),
        Command::Charform(a) => cmd_charform(&ui, a),
        Command::Selfcheck(a) => cmd_selfcheck(&ui, cli.seed, a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
