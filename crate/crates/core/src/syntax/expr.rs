use crate::action::Action;
use crate::error::{ParseError, Result};
use crate::logic::{ensure_wf, Formula, LogicKind};
use crate::term::{LtsTerm, MtsTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Lexer, ParseError> {
        let mut toks = Vec::new();
        let (mut line, mut col) = (1, 1);
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            let (l, k) = (line, col);
            if c == '\n' {
                chars.next();
                line += 1;
                col = 1;
            } else if c.is_whitespace() {
                chars.next();
                col += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                toks.push((Tok::Ident(s), l, k));
            } else if c == '0' {
                chars.next();
                col += 1;
                if chars.peek().is_some_and(|d| d.is_ascii_alphanumeric()) {
                    return Err(ParseError::new(l, k, "unexpected number"));
                }
                toks.push((Tok::Zero, l, k));
            } else if "<>[]()&|+.!".contains(c) {
                chars.next();
                col += 1;
                toks.push((Tok::Sym(c), l, k));
            } else {
                return Err(ParseError::new(l, k, format!("unexpected character `{c}`")));
            }
        }
        toks.push((Tok::End, line, col));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (_, l, c) = &self.toks[self.pos];
        ParseError::new(*l, *c, message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    /// `name`, `cv(label)` or `ct(label)`.
    fn label(&mut self) -> Result<Action, ParseError> {
        let Tok::Ident(name) = self.peek().clone() else {
            return Err(self.unexpected("a label"));
        };
        self.next();
        if (name == "cv" || name == "ct") && *self.peek() == Tok::Sym('(') {
            self.next();
            let inner = self.label()?;
            self.expect(')')?;
            return Ok(if name == "cv" { Action::cv(inner) } else { Action::ct(inner) });
        }
        Ok(Action::plain(&name))
    }
}

/// Parses a formula without checking labels against a logic.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut lx = Lexer::new(text)?;
    let f = disjunction(&mut lx)?;
    lx.finish()?;
    Ok(f)
}

/// Parses a formula and checks that it is well formed for `logic`.
pub fn parse_formula_for(text: &str, logic: &LogicKind) -> Result<Formula> {
    let f = parse_formula(text)?;
    ensure_wf(&f, logic)?;
    Ok(f)
}

fn disjunction(lx: &mut Lexer) -> Result<Formula, ParseError> {
    let mut f = conjunction(lx)?;
    while lx.eat('|') {
        f = Formula::or(f, conjunction(lx)?);
    }
    Ok(f)
}

fn conjunction(lx: &mut Lexer) -> Result<Formula, ParseError> {
    let mut f = modal(lx)?;
    while lx.eat('&') {
        f = Formula::and(f, modal(lx)?);
    }
    Ok(f)
}

fn modal(lx: &mut Lexer) -> Result<Formula, ParseError> {
    match lx.peek().clone() {
        Tok::Ident(s) if s == "tt" => {
            lx.next();
            Ok(Formula::Top)
        }
        Tok::Ident(s) if s == "ff" => {
            lx.next();
            Ok(Formula::Bottom)
        }
        Tok::Sym('<') => {
            lx.next();
            let a = lx.label()?;
            lx.expect('>')?;
            Ok(Formula::diamond(a, modal(lx)?))
        }
        Tok::Sym('[') => {
            lx.next();
            let a = lx.label()?;
            lx.expect(']')?;
            Ok(Formula::boxed(a, modal(lx)?))
        }
        Tok::Sym('(') => {
            lx.next();
            let f = disjunction(lx)?;
            lx.expect(')')?;
            Ok(f)
        }
        _ => Err(lx.unexpected("a formula")),
    }
}

/// Parses an MTS term: `0`, `w`, `a.t`, `a!t`, `t + t`.
pub fn parse_mts_term(text: &str) -> Result<MtsTerm> {
    let mut lx = Lexer::new(text)?;
    let t = term_sum(&mut lx, true)?;
    lx.finish()?;
    Ok(to_mts(t))
}

/// Parses an LTS term: `0`, `w`, `a.t`, `t + t`.
pub fn parse_lts_term(text: &str) -> Result<LtsTerm> {
    let mut lx = Lexer::new(text)?;
    let t = term_sum(&mut lx, false)?;
    lx.finish()?;
    Ok(to_lts(t))
}

/// Shared parse tree for both term kinds.
enum Raw {
    Zero,
    Omega,
    Prefix(Action, bool, Box<Raw>),
    Sum(Box<Raw>, Box<Raw>),
}

fn to_mts(t: Raw) -> MtsTerm {
    match t {
        Raw::Zero => MtsTerm::Zero,
        Raw::Omega => MtsTerm::Omega,
        Raw::Prefix(a, true, s) => MtsTerm::must(a, to_mts(*s)),
        Raw::Prefix(a, false, s) => MtsTerm::may(a, to_mts(*s)),
        Raw::Sum(l, r) => MtsTerm::sum(to_mts(*l), to_mts(*r)),
    }
}

fn to_lts(t: Raw) -> LtsTerm {
    match t {
        Raw::Zero => LtsTerm::Zero,
        Raw::Omega => LtsTerm::Omega,
        Raw::Prefix(a, _, s) => LtsTerm::prefix(a, to_lts(*s)),
        Raw::Sum(l, r) => LtsTerm::sum(to_lts(*l), to_lts(*r)),
    }
}

fn term_sum(lx: &mut Lexer, modal: bool) -> Result<Raw, ParseError> {
    let mut t = term_prefix(lx, modal)?;
    while lx.eat('+') {
        t = Raw::Sum(Box::new(t), Box::new(term_prefix(lx, modal)?));
    }
    Ok(t)
}

fn term_prefix(lx: &mut Lexer, modal: bool) -> Result<Raw, ParseError> {
    match lx.peek().clone() {
        Tok::Zero => {
            lx.next();
            Ok(Raw::Zero)
        }
        Tok::Ident(s) if s == "w" && !matches!(lx.peek2(), Tok::Sym('.' | '!')) => {
            lx.next();
            Ok(Raw::Omega)
        }
        Tok::Ident(_) => {
            let a = lx.label()?;
            let must = if lx.eat('.') {
                false
            } else if *lx.peek() == Tok::Sym('!') {
                if !modal {
                    return Err(lx.error("must-prefix `!` is not available in LTS terms"));
                }
                lx.next();
                true
            } else {
                return Err(lx.unexpected(if modal { "`.` or `!`" } else { "`.`" }));
            };
            Ok(Raw::Prefix(a, must, Box::new(term_prefix(lx, modal)?)))
        }
        Tok::Sym('(') => {
            lx.next();
            let t = term_sum(lx, modal)?;
            lx.expect(')')?;
            Ok(t)
        }
        _ => Err(lx.unexpected("a term")),
    }
}
