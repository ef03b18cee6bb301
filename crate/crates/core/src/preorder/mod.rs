//! Greatest refinement, covariant-contravariant simulation, partial
//! bisimulation and simulation between finite pointed systems.

mod distinguish;
mod fixpoint;
mod oracle;

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::action::{Action, Signature};
use crate::error::{Error, Result};
use crate::system::{Lts, Mts, StateId, System};

pub use distinguish::{distinguish_ccsim, distinguish_refinement, distinguishing_formula};
pub use oracle::{oracle_greatest, ORACLE_CAP};

use fixpoint::{Game, Run, Side};

/// A set of pairs between the states of a left and a right system.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    left: usize,
    right: usize,
    bits: FixedBitSet,
}

impl Relation {
    pub fn empty(left: usize, right: usize) -> Relation {
        Relation { left, right, bits: FixedBitSet::with_capacity(left * right) }
    }

    pub fn full(left: usize, right: usize) -> Relation {
        let mut r = Relation::empty(left, right);
        r.bits.insert_range(..);
        r
    }

    pub fn identity(n: usize) -> Relation {
        Relation::from_pairs(n, n, (0..n).map(|s| (s, s)))
    }

    pub fn from_pairs<I: IntoIterator<Item = (StateId, StateId)>>(left: usize, right: usize, pairs: I) -> Relation {
        let mut r = Relation::empty(left, right);
        for (p, q) in pairs {
            r.insert(p, q);
        }
        r
    }

    /// Number of states of the left system.
    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn contains(&self, p: StateId, q: StateId) -> bool {
        p < self.left && q < self.right && self.bits.contains(p * self.right + q)
    }

    pub fn insert(&mut self, p: StateId, q: StateId) {
        assert!(p < self.left && q < self.right, "pair ({p}, {q}) out of range");
        self.bits.insert(p * self.right + q);
    }

    pub fn remove(&mut self, p: StateId, q: StateId) {
        self.bits.set(p * self.right + q, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        let right = self.right;
        self.bits.ones().map(move |i| (i / right, i % right))
    }

    pub fn inverse(&self) -> Relation {
        Relation::from_pairs(self.right, self.left, self.iter().map(|(p, q)| (q, p)))
    }

    /// `{(p, r) | (p, q) ∈ self, (q, r) ∈ other}`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.right, other.left, "relations do not compose");
        let mut out = Relation::empty(self.left, other.right);
        for (p, q) in self.iter() {
            for r in 0..other.right {
                if other.contains(q, r) {
                    out.insert(p, r);
                }
            }
        }
        out
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.left == other.left && self.right == other.right && self.bits.is_subset(&other.bits)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The preorders computed by this module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PreorderKind {
    /// Modal refinement between MTSs.
    Refinement,
    /// Covariant-contravariant simulation between LTSs with equal signatures.
    CcSim,
    /// Partial bisimulation with the given bisimulation set, between LTSs
    /// over the same actions; the signature classes are ignored.
    PartialBisim(BTreeSet<Action>),
    /// Plain simulation between LTSs over the same actions.
    Simulation,
}

/// Greatest relation together with the fixpoint iteration profile.
#[derive(Clone, Debug)]
pub struct Fixpoint {
    pub relation: Relation,
    /// Relation size before the first round and after each removal round.
    pub sizes: Vec<usize>,
}

impl Fixpoint {
    /// Rounds that removed at least one pair.
    pub fn rounds(&self) -> usize {
        self.sizes.len() - 1
    }
}

fn action_mismatch(left: &BTreeSet<Action>, right: &BTreeSet<Action>) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ActionSetMismatch { left: left.iter().cloned().collect(), right: right.iter().cloned().collect() })
    }
}

fn refinement_game(p: &Mts, q: &Mts) -> Result<Game> {
    p.ensure_valid()?;
    q.ensure_valid()?;
    action_mismatch(p.actions(), q.actions())?;
    Ok(Game::new(mts_side(p), mts_side(q)))
}

fn mts_side(m: &Mts) -> Side<'_> {
    Side { n: m.num_states(), forward: m.must().iter().collect(), backward: m.may().iter().collect() }
}

fn sim_side(l: &Lts) -> Side<'_> {
    Side { n: l.num_states(), forward: l.transitions().iter().collect(), backward: Vec::new() }
}

fn cc_side<'a>(l: &'a Lts, sig: &Signature) -> Side<'a> {
    Side {
        n: l.num_states(),
        forward: l.transitions().iter().filter(|t| sig.is_forward(&t.label)).collect(),
        backward: l.transitions().iter().filter(|t| sig.is_backward(&t.label)).collect(),
    }
}

fn ccsim_game(p: &Lts, q: &Lts) -> Result<Game> {
    p.ensure_valid()?;
    q.ensure_valid()?;
    if p.signature() != q.signature() {
        return Err(Error::SignatureMismatch);
    }
    Ok(Game::new(cc_side(p, p.signature()), cc_side(q, q.signature())))
}

fn simulation_game(p: &Lts, q: &Lts) -> Result<Game> {
    p.ensure_valid()?;
    q.ensure_valid()?;
    action_mismatch(&p.signature().actions(), &q.signature().actions())?;
    Ok(Game::new(sim_side(p), sim_side(q)))
}

/// The signature `(A∖B, ∅, B)` used to read a partial bisimulation check as
/// a covariant-contravariant one, after checking `B ⊆ A` on both sides.
pub fn partial_bisim_signature(p: &Lts, q: &Lts, bisim: &BTreeSet<Action>) -> Result<Signature> {
    let actions = p.signature().actions();
    action_mismatch(&actions, &q.signature().actions())?;
    if let Some(b) = bisim.difference(&actions).next() {
        return Err(Error::BisimSetNotSubset(b.clone()));
    }
    Ok(Signature::partial_bisimulation(&actions, bisim))
}

fn into_fixpoint(run: Run) -> Fixpoint {
    Fixpoint { relation: run.relation, sizes: run.sizes }
}

/// The largest refinement relation between the states of `p` and `q`.
pub fn greatest_refinement(p: &Mts, q: &Mts) -> Result<Relation> {
    Ok(refinement_game(p, q)?.solve(false).relation)
}

/// The largest covariant-contravariant simulation between `p` and `q`.
pub fn greatest_ccsim(p: &Lts, q: &Lts) -> Result<Relation> {
    Ok(ccsim_game(p, q)?.solve(false).relation)
}

/// The largest partial bisimulation with bisimulation set `bisim`, computed
/// as the covariant-contravariant simulation over `(A∖B, ∅, B)`.
pub fn greatest_pbsim(p: &Lts, q: &Lts, bisim: &BTreeSet<Action>) -> Result<Relation> {
    p.ensure_valid()?;
    q.ensure_valid()?;
    let sig = partial_bisim_signature(p, q, bisim)?;
    greatest_ccsim(&p.with_signature(sig.clone()), &q.with_signature(sig))
}

/// The largest simulation, all labels being matched forward.
pub fn greatest_simulation(p: &Lts, q: &Lts) -> Result<Relation> {
    Ok(simulation_game(p, q)?.solve(false).relation)
}

fn expect_mts(s: &System) -> Result<&Mts> {
    s.as_mts().ok_or(Error::SignatureMismatch)
}

fn expect_lts(s: &System) -> Result<&Lts> {
    s.as_lts().ok_or(Error::SignatureMismatch)
}

/// Runs the fixpoint for `kind` and reports the iteration profile.
pub fn fixpoint(kind: &PreorderKind, p: &System, q: &System) -> Result<Fixpoint> {
    let game = match kind {
        PreorderKind::Refinement => refinement_game(expect_mts(p)?, expect_mts(q)?)?,
        PreorderKind::CcSim => ccsim_game(expect_lts(p)?, expect_lts(q)?)?,
        PreorderKind::PartialBisim(b) => {
            let (p, q) = (expect_lts(p)?, expect_lts(q)?);
            p.ensure_valid()?;
            q.ensure_valid()?;
            let sig = partial_bisim_signature(p, q, b)?;
            ccsim_game(&p.with_signature(sig.clone()), &q.with_signature(sig))?
        }
        PreorderKind::Simulation => simulation_game(expect_lts(p)?, expect_lts(q)?)?,
    };
    Ok(into_fixpoint(game.solve(false)))
}

/// The greatest relation of `kind` between `p` and `q`.
pub fn greatest(kind: &PreorderKind, p: &System, q: &System) -> Result<Relation> {
    match kind {
        PreorderKind::Refinement => greatest_refinement(expect_mts(p)?, expect_mts(q)?),
        PreorderKind::CcSim => greatest_ccsim(expect_lts(p)?, expect_lts(q)?),
        PreorderKind::PartialBisim(b) => greatest_pbsim(expect_lts(p)?, expect_lts(q)?, b),
        PreorderKind::Simulation => greatest_simulation(expect_lts(p)?, expect_lts(q)?),
    }
}

/// Whether `rel` satisfies the transfer clauses of `kind`; a direct check
/// used to validate witnesses.
pub fn is_witness(kind: &PreorderKind, p: &System, q: &System, rel: &Relation) -> Result<bool> {
    oracle::satisfies(kind, p, q, rel)
}
