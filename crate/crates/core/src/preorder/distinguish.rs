//! Distinguishing formulas read off the fixpoint removal trace.
//!
//! A pair `(p, q)` removed in round `k` failed a clause against the relation
//! of round `k - 1`, so every pair its witness formula refers to was removed
//! earlier and the recursion is well founded:
//!
//! * forward failure on `p -a-> p'`: `<a>` of the conjunction of the
//!   formulas for `(p', q')` over the forward `a`-successors `q'` of `q`;
//! * backward failure on `q -a-> q'`: `[a]` of the disjunction of the
//!   formulas for `(p', q')` over the backward `a`-successors `p'` of `p`.
//!
//! The result holds at `p` and fails at `q`. It is not minimal.

use std::collections::HashMap;

use super::fixpoint::{Clause, Game, Removal};
use super::{ccsim_game, refinement_game, PreorderKind};
use crate::error::{Error, Result};
use crate::logic::Formula;
use crate::system::{Lts, Mts, StateId, System};

struct Builder<'a> {
    game: &'a Game,
    removals: &'a [Option<Removal>],
    nr: usize,
    memo: HashMap<(StateId, StateId), Formula>,
}

impl Builder<'_> {
    fn formula(&mut self, p: StateId, q: StateId) -> Formula {
        if let Some(f) = self.memo.get(&(p, q)) {
            return f.clone();
        }
        let r = self.removals[p * self.nr + q].expect("pair was removed");
        let a = self.game.labels[r.label].clone();
        let f = match r.clause {
            Clause::Forward => {
                let p2 = r.witness;
                let qs: Vec<StateId> = self.game.right_fwd.targets(q, r.label).collect();
                Formula::diamond(a, Formula::conj(qs.into_iter().map(|q2| self.earlier(r.round, p2, q2))))
            }
            Clause::Backward => {
                let q2 = r.witness;
                let ps: Vec<StateId> = self.game.left_bwd.targets(p, r.label).collect();
                Formula::boxed(a, Formula::disj(ps.into_iter().map(|p2| self.earlier(r.round, p2, q2))))
            }
        };
        self.memo.insert((p, q), f.clone());
        f
    }

    /// Formula for a pair that must have left the relation before `round`.
    fn earlier(&mut self, round: usize, p: StateId, q: StateId) -> Formula {
        let removed = self.removals[p * self.nr + q].map(|r| r.round);
        debug_assert!(removed.is_some_and(|k| k < round), "({p}, {q}) still related in round {round}");
        self.formula(p, q)
    }
}

fn extract(game: Game, nr: usize, p: StateId, q: StateId) -> Option<Formula> {
    let run = game.solve(true);
    if run.relation.contains(p, q) {
        return None;
    }
    let removals = run.removals.expect("tracing was requested");
    let mut b = Builder { game: &game, removals: &removals, nr, memo: HashMap::new() };
    Some(b.formula(p, q))
}

fn check_states(n: usize, m: usize, p: StateId, q: StateId) -> Result<()> {
    if p >= n {
        return Err(Error::UnknownState(format!("#{p}")));
    }
    if q >= m {
        return Err(Error::UnknownState(format!("#{q}")));
    }
    Ok(())
}

/// A modal formula true at `(P, p)` and false at `(Q, q)`, or `None` when
/// `p` is refined by `q`.
pub fn distinguish_refinement(pm: &Mts, p: StateId, qm: &Mts, q: StateId) -> Result<Option<Formula>> {
    let game = refinement_game(pm, qm)?;
    check_states(pm.num_states(), qm.num_states(), p, q)?;
    Ok(extract(game, qm.num_states(), p, q))
}

/// A covariant-contravariant formula true at `(P, p)` and false at
/// `(Q, q)`, or `None` when `p ≲cc q`.
pub fn distinguish_ccsim(pl: &Lts, p: StateId, ql: &Lts, q: StateId) -> Result<Option<Formula>> {
    let game = ccsim_game(pl, ql)?;
    check_states(pl.num_states(), ql.num_states(), p, q)?;
    Ok(extract(game, ql.num_states(), p, q))
}

/// Dispatches on `kind`; only refinement and covariant-contravariant
/// simulation have a matching logic, other kinds yield `Ok(None)`.
pub fn distinguishing_formula(
    kind: &PreorderKind,
    left: &System,
    p: StateId,
    right: &System,
    q: StateId,
) -> Result<Option<Formula>> {
    match (kind, left, right) {
        (PreorderKind::Refinement, System::Mts(l), System::Mts(r)) => distinguish_refinement(l, p, r, q),
        (PreorderKind::CcSim, System::Lts(l), System::Lts(r)) => distinguish_ccsim(l, p, r, q),
        (PreorderKind::Refinement | PreorderKind::CcSim, _, _) => Err(Error::SignatureMismatch),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Action, Signature};
    use crate::logic::{mc_cc, mc_mts};

    fn ccex() -> Lts {
        Lts::builder("ccex", Signature::plain(&["a"], &["b"], &[]))
            .trans("p", "a", "s")
            .trans("p", "b", "s")
            .trans("q", "a", "s")
            .trans("r", "b", "s")
            .build()
            .unwrap()
    }

    #[test]
    fn ccex_q_is_not_below_p() {
        let l = ccex();
        let (p, q) = (l.state_index("p").unwrap(), l.state_index("q").unwrap());
        let phi = distinguish_ccsim(&l, q, &l, p).unwrap().unwrap();
        assert!(mc_cc(&l, q, &phi).unwrap());
        assert!(!mc_cc(&l, p, &phi).unwrap());
        assert_eq!(phi, Formula::boxed(Action::plain("b"), Formula::Bottom));
    }

    #[test]
    fn related_pairs_have_no_formula() {
        let l = ccex();
        for s in 0..l.num_states() {
            assert_eq!(distinguish_ccsim(&l, s, &l, s).unwrap(), None);
        }
    }

    #[test]
    fn refinement_counterexample_formula() {
        let spec = Mts::builder("spec").must("p", "a", "p2").may("p2", "b", "p2").build().unwrap();
        let imp = Mts::builder("imp").may("q", "a", "q2").action("b").build().unwrap();
        let phi = distinguish_refinement(&spec, 0, &imp, 0).unwrap().unwrap();
        assert!(mc_mts(&spec, 0, &phi).unwrap());
        assert!(!mc_mts(&imp, 0, &phi).unwrap());
    }
}
