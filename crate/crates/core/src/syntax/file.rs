//! Line-oriented system files.
//!
//! ```text
//! # the loosest specification over {a, b}
//! mts U
//! actions: a b
//! states: u
//! init: u
//! may u a u
//! may u b u
//! ```
//!
//! An LTS declares its signature with `cov:`, `con:` and `bi:` and lists
//! `trans` lines. `states:` is optional; without it states are numbered in
//! order of first mention. `init:` defaults to the first state. Names that
//! are not plain tokens are written in double quotes with `\"` and `\\`
//! escapes. A `must` line whose `may` twin is missing is accepted with a
//! warning, or rejected under [`ParseOptions::strict`].
//!
//! [`print_system`] writes the canonical form: every directive in the order
//! above, all three class lines for an LTS, and `may` lines before `must`
//! lines, each sorted. Parsing a canonical file and printing it again
//! reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::action::{Action, Signature};
use crate::error::{ParseError, Result};
use crate::system::{Lts, Mts, System, Transition};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Turn warnings into errors.
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub system: System,
    pub warnings: Vec<Warning>,
}

struct Token {
    text: String,
    column: usize,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    let col = |i: usize| line[..i].chars().count() + 1;
    while let Some(&(i, c)) = chars.peek() {
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut text = String::new();
        if c == '"' {
            chars.next();
            loop {
                match chars.next() {
                    None => return Err(ParseError::new(lineno, col(i), "unterminated quoted name")),
                    Some((_, '"')) => break,
                    Some((j, '\\')) => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => text.push(e),
                        _ => return Err(ParseError::new(lineno, col(j), "invalid escape in quoted name")),
                    },
                    Some((_, d)) => text.push(d),
                }
            }
            if text.is_empty() {
                return Err(ParseError::new(lineno, col(i), "empty name"));
            }
        } else {
            while let Some(&(_, d)) = chars.peek() {
                if d.is_whitespace() || d == '#' || d == '"' {
                    break;
                }
                text.push(d);
                chars.next();
            }
        }
        out.push(Token { text, column: col(i) });
    }
    Ok(out)
}

fn is_bare(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '#' || c == '"' || c == '\\')
}

fn quote(name: &str) -> String {
    if is_bare(name) {
        return name.to_string();
    }
    let mut s = String::from('"');
    for c in name.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Mts,
    Lts,
}

struct Builder {
    kind: Kind,
    name: String,
    opts: ParseOptions,
    warnings: Vec<Warning>,
    seen: BTreeMap<&'static str, usize>,
    actions: Option<BTreeSet<Action>>,
    classes: [Option<BTreeSet<Action>>; 3],
    declared: bool,
    states: Vec<String>,
    index: BTreeMap<String, usize>,
    init: Option<usize>,
    // (line, source, label, target, column of the label)
    may: Vec<(usize, usize, Action, usize, usize)>,
    must: Vec<(usize, usize, Action, usize, usize)>,
}

impl Builder {
    fn once(&mut self, key: &'static str, line: usize, column: usize) -> Result<(), ParseError> {
        if let Some(prev) = self.seen.insert(key, line) {
            return Err(ParseError::new(line, column, format!("duplicate `{key}:` (first on line {prev})")));
        }
        Ok(())
    }

    fn state(&mut self, tok: &Token, line: usize) -> Result<usize, ParseError> {
        if let Some(&i) = self.index.get(&tok.text) {
            return Ok(i);
        }
        if self.declared {
            return Err(ParseError::new(line, tok.column, format!("undeclared state `{}`", tok.text)));
        }
        self.add_state(tok, line)
    }

    fn add_state(&mut self, tok: &Token, line: usize) -> Result<usize, ParseError> {
        if self.index.contains_key(&tok.text) {
            return Err(ParseError::new(line, tok.column, format!("state `{}` declared twice", tok.text)));
        }
        self.index.insert(tok.text.clone(), self.states.len());
        self.states.push(tok.text.clone());
        Ok(self.states.len() - 1)
    }

    fn labels(&self) -> Option<BTreeSet<Action>> {
        match self.kind {
            Kind::Mts => self.actions.clone(),
            Kind::Lts => {
                let [c, l, b] = &self.classes;
                if c.is_none() && l.is_none() && b.is_none() {
                    return None;
                }
                Some(c.iter().chain(l).chain(b).flatten().cloned().collect())
            }
        }
    }

    fn directive(&mut self, key: &str, rest: &[Token], line: usize, column: usize) -> Result<(), ParseError> {
        let parse_labels = |rest: &[Token]| -> Result<BTreeSet<Action>, ParseError> {
            let mut set = BTreeSet::new();
            for t in rest {
                let a = Action::parse(&t.text)
                    .ok_or_else(|| ParseError::new(line, t.column, format!("invalid label `{}`", t.text)))?;
                if !set.insert(a) {
                    return Err(ParseError::new(line, t.column, format!("label `{}` listed twice", t.text)));
                }
            }
            Ok(set)
        };
        let not_for = |what: &str| ParseError::new(line, column, format!("`{key}:` is not allowed in an {what} file"));
        match key {
            "actions" => {
                if self.kind == Kind::Lts {
                    return Err(not_for("LTS"));
                }
                self.once("actions", line, column)?;
                self.actions = Some(parse_labels(rest)?);
            }
            "cov" | "con" | "bi" => {
                if self.kind == Kind::Mts {
                    return Err(not_for("MTS"));
                }
                let (k, i) = match key {
                    "cov" => ("cov", 0),
                    "con" => ("con", 1),
                    _ => ("bi", 2),
                };
                self.once(k, line, column)?;
                self.classes[i] = Some(parse_labels(rest)?);
            }
            "states" => {
                self.once("states", line, column)?;
                if !self.states.is_empty() {
                    return Err(ParseError::new(line, column, "`states:` must precede every use of a state"));
                }
                for t in rest {
                    self.add_state(t, line)?;
                }
                self.declared = true;
            }
            "init" => {
                self.once("init", line, column)?;
                let [t] = rest else {
                    return Err(ParseError::new(line, column, "`init:` takes exactly one state"));
                };
                self.init = Some(self.state(t, line)?);
            }
            _ => return Err(ParseError::new(line, column, format!("unknown directive `{key}:`"))),
        }
        Ok(())
    }

    fn transition(&mut self, key: &Token, rest: &[Token], line: usize) -> Result<(), ParseError> {
        let allowed = match self.kind {
            Kind::Mts => key.text == "may" || key.text == "must",
            Kind::Lts => key.text == "trans",
        };
        if !allowed {
            let what = if self.kind == Kind::Mts { "`may` or `must`" } else { "`trans`" };
            return Err(ParseError::new(
                line,
                key.column,
                format!("unknown directive `{}` (expected {what})", key.text),
            ));
        }
        let [p, a, q] = rest else {
            return Err(ParseError::new(
                line,
                key.column,
                format!("`{}` takes a source, a label and a target", key.text),
            ));
        };
        let label = Action::parse(&a.text)
            .ok_or_else(|| ParseError::new(line, a.column, format!("invalid label `{}`", a.text)))?;
        let Some(known) = self.labels() else {
            return Err(ParseError::new(line, key.column, "labels must be declared before the first transition"));
        };
        if !known.contains(&label) {
            return Err(ParseError::new(line, a.column, format!("label `{label}` is not declared")));
        }
        let (p, q) = (self.state(p, line)?, self.state(q, line)?);
        let entry = (line, p, label, q, a.column);
        if key.text == "must" {
            self.must.push(entry);
        } else {
            self.may.push(entry);
        }
        Ok(())
    }

    fn finish(mut self) -> Result<Parsed> {
        if self.states.is_empty() {
            return Err(ParseError::new(1, 1, "the system has no states").into());
        }
        let init = self.init.unwrap_or(0);
        let strip = |v: &[(usize, usize, Action, usize, usize)]| -> BTreeSet<Transition> {
            v.iter().map(|(_, p, a, q, _)| Transition::new(*p, a.clone(), *q)).collect()
        };
        let system = match self.kind {
            Kind::Mts => {
                let mut may = strip(&self.may);
                for (line, p, a, q, column) in &self.must {
                    let t = Transition::new(*p, a.clone(), *q);
                    if may.insert(t) {
                        let message = format!(
                            "must {} {a} {} has no may twin; added it",
                            quote(&self.states[*p]),
                            quote(&self.states[*q])
                        );
                        if self.opts.strict {
                            return Err(ParseError::new(*line, *column, message).into());
                        }
                        self.warnings.push(Warning { line: *line, message });
                    }
                }
                let actions = self.actions.clone().unwrap_or_default();
                System::Mts(Mts::from_parts(self.name, self.states, actions, may, strip(&self.must), init))
            }
            Kind::Lts => {
                let [c, l, b] = self.classes.map(Option::unwrap_or_default);
                let sig = Signature { covariant: c, contravariant: l, bivariant: b };
                System::Lts(Lts::from_parts(self.name, self.states, sig, strip(&self.may), init))
            }
        };
        match &system {
            System::Mts(m) => m.ensure_valid()?,
            System::Lts(l) => l.ensure_valid()?,
        }
        Ok(Parsed { system, warnings: self.warnings })
    }
}

/// Parses and validates a system file.
pub fn parse_system(text: &str, opts: ParseOptions) -> Result<Parsed> {
    let mut builder: Option<Builder> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokenize(raw, line)?;
        let Some(first) = toks.first() else { continue };
        let Some(b) = builder.as_mut() else {
            let kind = match first.text.as_str() {
                "mts" => Kind::Mts,
                "lts" => Kind::Lts,
                _ => {
                    return Err(ParseError::new(line, first.column, "expected a header `mts NAME` or `lts NAME`").into())
                }
            };
            let [_, name] = toks.as_slice() else {
                return Err(ParseError::new(line, first.column, "the header takes exactly one name").into());
            };
            builder = Some(Builder {
                kind,
                name: name.text.clone(),
                opts,
                warnings: Vec::new(),
                seen: BTreeMap::new(),
                actions: None,
                classes: [None, None, None],
                declared: false,
                states: Vec::new(),
                index: BTreeMap::new(),
                init: None,
                may: Vec::new(),
                must: Vec::new(),
            });
            continue;
        };
        if let Some(key) = first.text.strip_suffix(':') {
            b.directive(key, &toks[1..], line, first.column)?;
        } else if let Some((key, value)) = first.text.split_once(':') {
            // `states:u` written without a space.
            let (key, column) = (key.to_string(), first.column);
            let mut rest = vec![Token { text: value.to_string(), column: column + key.chars().count() + 1 }];
            rest.extend(toks.into_iter().skip(1));
            b.directive(&key, &rest, line, column)?;
        } else {
            b.transition(first, &toks[1..], line)?;
        }
    }
    match builder {
        Some(b) => b.finish(),
        None => Err(ParseError::new(1, 1, "empty file: expected a header `mts NAME` or `lts NAME`").into()),
    }
}

fn label_line(out: &mut String, key: &str, labels: &BTreeSet<Action>) {
    out.push_str(key);
    out.push(':');
    for a in labels {
        write!(out, " {a}").unwrap();
    }
    out.push('\n');
}

/// The canonical text of a system.
pub fn print_system(s: &System) -> String {
    let mut out = String::new();
    let states = s.states();
    let name = |i: usize| quote(&states[i]);
    let trans = |out: &mut String, key: &str, set: &BTreeSet<Transition>| {
        for t in set {
            writeln!(out, "{key} {} {} {}", name(t.source), t.label, name(t.target)).unwrap();
        }
    };
    writeln!(out, "{} {}", s.kind(), quote(s.name())).unwrap();
    match s {
        System::Mts(m) => label_line(&mut out, "actions", m.actions()),
        System::Lts(l) => {
            let sig = l.signature();
            label_line(&mut out, "cov", &sig.covariant);
            label_line(&mut out, "con", &sig.contravariant);
            label_line(&mut out, "bi", &sig.bivariant);
        }
    }
    out.push_str("states:");
    for i in 0..states.len() {
        write!(out, " {}", name(i)).unwrap();
    }
    out.push('\n');
    writeln!(out, "init: {}", name(s.init())).unwrap();
    match s {
        System::Mts(m) => {
            trans(&mut out, "may", m.may());
            trans(&mut out, "must", m.must());
        }
        System::Lts(l) => trans(&mut out, "trans", l.transitions()),
    }
    out
}
