//! Text formats: system files, formulas and process terms.
//!
//! Formulas use `tt`, `ff`, `<a>φ`, `[a]φ`, `&` and `|`; modalities bind
//! tightest, then `&`, then `|`, and both connectives associate to the left.
//! Terms use `0`, `w`, `a.t`, `a!t` and `+`, with prefixing binding tighter
//! than `+`. Labels are identifiers or `cv(a)` / `ct(a)`.

mod expr;
mod file;

pub use expr::{parse_formula, parse_formula_for, parse_lts_term, parse_mts_term};
pub use file::{parse_system, print_system, ParseOptions, Parsed, Warning};
