//! Behavioural preorders over finite modal and covariant-contravariant
//! transition systems.
//!
//! The crate covers
//!
//! * finite pointed MTSs and LTSs over covariant-contravariant signatures
//!   ([`system`]), process terms and their expansion ([`term`]);
//! * greatest modal refinement, covariant-contravariant simulation, partial
//!   bisimulation and simulation, with a brute-force oracle and
//!   distinguishing formulas ([`preorder`]);
//! * the shared modal logic and its model checkers ([`logic`]);
//! * the translations between the formalisms, on systems and formulas
//!   ([`translate`]);
//! * characteristic formulas for MTS terms ([`charform`]);
//! * signature morphisms, reducts and the satisfaction condition
//!   ([`institution`]);
//! * text formats ([`syntax`]), random generators ([`random`]) and the
//!   property self-check harness ([`selfcheck`]).

pub mod action;
pub mod charform;
pub mod error;
pub mod institution;
pub mod logic;
pub mod preorder;
pub mod random;
pub mod selfcheck;
pub mod syntax;
pub mod system;
pub mod term;
pub mod translate;

pub use action::{Action, Signature, Variance};
pub use error::{Error, ParseError, Result};
pub use logic::{Formula, LogicKind};
pub use preorder::{PreorderKind, Relation};
pub use system::{Lts, Mts, StateId, Transition};
pub use term::{LtsTerm, MtsTerm};
