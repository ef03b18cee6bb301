//! One greatest-fixpoint engine for every preorder in the crate.
//!
//! Each preorder is a pair of transfer clauses between a left state `p` and a
//! right state `q`:
//!
//! * forward: every forward move `p -a-> p'` is matched by a forward move
//!   `q -a-> q'` with `(p', q')` still related;
//! * backward: every backward move `q -a-> q'` is matched by a backward move
//!   `p -a-> p'` with `(p', q')` still related.
//!
//! Refinement takes must moves forward and may moves backward;
//! covariant-contravariant simulation takes covariant-or-bivariant moves
//! forward and contravariant-or-bivariant moves backward; plain simulation
//! has no backward moves.
//!
//! The computation runs in synchronous rounds starting from the full
//! product. Round one checks every pair; later rounds only revisit pairs
//! whose left state precedes a left state, and whose right state precedes a
//! right state, of some pair removed in the previous round.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use super::Relation;
use crate::action::Action;
use crate::system::{StateId, Transition};

/// Per-state outgoing moves sorted by `(label, target)`.
pub(crate) struct Moves {
    out: Vec<Vec<(usize, StateId)>>,
}

impl Moves {
    fn new<'a, I>(n: usize, labels: &BTreeMap<Action, usize>, trans: I) -> Moves
    where
        I: IntoIterator<Item = &'a Transition>,
    {
        let mut out = vec![Vec::new(); n];
        for t in trans {
            out[t.source].push((labels[&t.label], t.target));
        }
        for v in &mut out {
            v.sort_unstable();
            v.dedup();
        }
        Moves { out }
    }

    pub(crate) fn from(&self, s: StateId) -> &[(usize, StateId)] {
        &self.out[s]
    }

    /// Targets of `label`-moves from `s`.
    pub(crate) fn targets(&self, s: StateId, label: usize) -> impl Iterator<Item = StateId> + '_ {
        let v = &self.out[s];
        let lo = v.partition_point(|&(l, _)| l < label);
        v[lo..].iter().take_while(move |&&(l, _)| l == label).map(|&(_, t)| t)
    }
}

/// The clause whose failure removed a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Clause {
    Forward,
    Backward,
}

/// Why and when a pair left the relation. `witness` is the unmatched left
/// successor for a forward failure and the unmatched right successor for a
/// backward failure.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Removal {
    pub round: usize,
    pub clause: Clause,
    pub label: usize,
    pub witness: StateId,
}

pub(crate) struct Game {
    pub labels: Vec<Action>,
    pub left_fwd: Moves,
    pub left_bwd: Moves,
    pub right_fwd: Moves,
    pub right_bwd: Moves,
    left_pred: Vec<Vec<StateId>>,
    right_pred: Vec<Vec<StateId>>,
}

/// Result of a fixpoint run.
pub(crate) struct Run {
    pub relation: Relation,
    /// Relation size before the first round and after every round.
    pub sizes: Vec<usize>,
    /// Per pair (row-major), the removal record when tracing was requested.
    pub removals: Option<Vec<Option<Removal>>>,
}

fn predecessors(n: usize, moves: [&Moves; 2]) -> Vec<Vec<StateId>> {
    let mut sets = vec![BTreeSet::new(); n];
    for m in moves {
        for (s, out) in m.out.iter().enumerate() {
            for &(_, t) in out {
                sets[t].insert(s);
            }
        }
    }
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Transition sets of one side: `(forward, backward)`.
pub(crate) struct Side<'a> {
    pub n: usize,
    pub forward: Vec<&'a Transition>,
    pub backward: Vec<&'a Transition>,
}

impl Game {
    pub(crate) fn new(left: Side<'_>, right: Side<'_>) -> Game {
        let labels: BTreeSet<Action> = [&left.forward, &left.backward, &right.forward, &right.backward]
            .into_iter()
            .flat_map(|v| v.iter().map(|t| t.label.clone()))
            .collect();
        let index: BTreeMap<Action, usize> = labels.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let left_fwd = Moves::new(left.n, &index, left.forward);
        let left_bwd = Moves::new(left.n, &index, left.backward);
        let right_fwd = Moves::new(right.n, &index, right.forward);
        let right_bwd = Moves::new(right.n, &index, right.backward);
        let left_pred = predecessors(left.n, [&left_fwd, &left_bwd]);
        let right_pred = predecessors(right.n, [&right_fwd, &right_bwd]);
        Game { labels: labels.into_iter().collect(), left_fwd, left_bwd, right_fwd, right_bwd, left_pred, right_pred }
    }

    fn nl(&self) -> usize {
        self.left_fwd.out.len()
    }

    fn nr(&self) -> usize {
        self.right_fwd.out.len()
    }

    /// The first failing clause of `(p, q)` against `rel`, least by
    /// `(label, clause)`; `None` when both clauses hold.
    fn failure(&self, rel: &Relation, p: StateId, q: StateId) -> Option<(usize, Clause, StateId)> {
        let mut fwd = None;
        for &(a, p2) in self.left_fwd.from(p) {
            if !self.right_fwd.targets(q, a).any(|q2| rel.contains(p2, q2)) {
                fwd = Some((a, Clause::Forward, p2));
                break;
            }
        }
        let mut bwd = None;
        for &(a, q2) in self.right_bwd.from(q) {
            if fwd.is_some_and(|(fa, _, _)| fa <= a) {
                break;
            }
            if !self.left_bwd.targets(p, a).any(|p2| rel.contains(p2, q2)) {
                bwd = Some((a, Clause::Backward, q2));
                break;
            }
        }
        match (fwd, bwd) {
            (Some(f), Some(b)) => Some(f.min(b)),
            (f, b) => f.or(b),
        }
    }

    pub(crate) fn solve(&self, trace: bool) -> Run {
        let (nl, nr) = (self.nl(), self.nr());
        let mut rel = Relation::full(nl, nr);
        let mut sizes = vec![rel.len()];
        let mut removals = trace.then(|| vec![None; nl * nr]);
        let mut dirty_left = FixedBitSet::with_capacity(nl);
        dirty_left.insert_range(..);
        let mut dirty_right = FixedBitSet::with_capacity(nr);
        dirty_right.insert_range(..);
        let mut round = 0;
        loop {
            round += 1;
            let mut removed = Vec::new();
            for p in dirty_left.ones() {
                for q in dirty_right.ones() {
                    if !rel.contains(p, q) {
                        continue;
                    }
                    if let Some((label, clause, witness)) = self.failure(&rel, p, q) {
                        removed.push((p, q));
                        if let Some(r) = removals.as_mut() {
                            r[p * nr + q] = Some(Removal { round, clause, label, witness });
                        }
                    }
                }
            }
            if removed.is_empty() {
                break;
            }
            dirty_left.clear();
            dirty_right.clear();
            for &(p, q) in &removed {
                rel.remove(p, q);
                for &x in &self.left_pred[p] {
                    dirty_left.insert(x);
                }
                for &y in &self.right_pred[q] {
                    dirty_right.insert(y);
                }
            }
            sizes.push(rel.len());
        }
        Run { relation: rel, sizes, removals }
    }
}
