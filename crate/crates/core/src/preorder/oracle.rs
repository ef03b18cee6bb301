//! Brute-force reference for the fixpoint engine.
//!
//! Every subset of the state product is tested against the transfer clauses
//! written out directly on the systems' transition sets, and the union of
//! the subsets that pass is returned. Since relations of each kind are
//! closed under union, that union is the greatest one. Nothing here shares
//! code with the fixpoint engine.

use super::{action_mismatch, partial_bisim_signature, PreorderKind, Relation};
use crate::error::{Error, Result};
use crate::system::{Lts, Mts, StateId, System};

/// Largest `|P|·|Q|` the oracle accepts.
pub const ORACLE_CAP: usize = 12;

fn refinement_holds(p: &Mts, q: &Mts, rel: &Relation, s: StateId, t: StateId) -> bool {
    let must_ok = p.must_from(s).all(|m| q.must_successors(t, &m.label).any(|t2| rel.contains(m.target, t2)));
    let may_ok = q.may_from(t).all(|m| p.may_successors(s, &m.label).any(|s2| rel.contains(s2, m.target)));
    must_ok && may_ok
}

fn lts_holds(
    p: &Lts,
    q: &Lts,
    rel: &Relation,
    s: StateId,
    t: StateId,
    left_moves: impl Fn(&crate::action::Action) -> bool,
    right_moves: impl Fn(&crate::action::Action) -> bool,
) -> bool {
    let fwd = p
        .transitions_from(s)
        .filter(|m| left_moves(&m.label))
        .all(|m| q.successors(t, &m.label).any(|t2| rel.contains(m.target, t2)));
    let bwd = q
        .transitions_from(t)
        .filter(|m| right_moves(&m.label))
        .all(|m| p.successors(s, &m.label).any(|s2| rel.contains(s2, m.target)));
    fwd && bwd
}

fn pair_holds(kind: &PreorderKind, p: &System, q: &System, rel: &Relation, s: StateId, t: StateId) -> bool {
    match (kind, p, q) {
        (PreorderKind::Refinement, System::Mts(p), System::Mts(q)) => refinement_holds(p, q, rel, s, t),
        (PreorderKind::CcSim, System::Lts(p), System::Lts(q)) => {
            let sig = p.signature();
            lts_holds(p, q, rel, s, t, |a| sig.is_forward(a), |a| sig.is_backward(a))
        }
        (PreorderKind::PartialBisim(b), System::Lts(p), System::Lts(q)) => {
            lts_holds(p, q, rel, s, t, |_| true, |a| b.contains(a))
        }
        (PreorderKind::Simulation, System::Lts(p), System::Lts(q)) => lts_holds(p, q, rel, s, t, |_| true, |_| false),
        _ => unreachable!("checked by `compatible`"),
    }
}

fn compatible(kind: &PreorderKind, p: &System, q: &System) -> Result<()> {
    match (kind, p, q) {
        (PreorderKind::Refinement, System::Mts(p), System::Mts(q)) => {
            p.ensure_valid()?;
            q.ensure_valid()?;
            action_mismatch(p.actions(), q.actions())
        }
        (PreorderKind::CcSim, System::Lts(p), System::Lts(q)) => {
            p.ensure_valid()?;
            q.ensure_valid()?;
            if p.signature() == q.signature() {
                Ok(())
            } else {
                Err(Error::SignatureMismatch)
            }
        }
        (PreorderKind::PartialBisim(b), System::Lts(p), System::Lts(q)) => {
            p.ensure_valid()?;
            q.ensure_valid()?;
            partial_bisim_signature(p, q, b).map(|_| ())
        }
        (PreorderKind::Simulation, System::Lts(p), System::Lts(q)) => {
            p.ensure_valid()?;
            q.ensure_valid()?;
            action_mismatch(&p.signature().actions(), &q.signature().actions())
        }
        _ => Err(Error::SignatureMismatch),
    }
}

fn sizes(p: &System, q: &System) -> (usize, usize) {
    (p.states().len(), q.states().len())
}

/// Whether every pair of `rel` satisfies the clauses of `kind`.
pub(super) fn satisfies(kind: &PreorderKind, p: &System, q: &System, rel: &Relation) -> Result<bool> {
    compatible(kind, p, q)?;
    if (rel.left_size(), rel.right_size()) != sizes(p, q) {
        return Ok(false);
    }
    Ok(rel.iter().all(|(s, t)| pair_holds(kind, p, q, rel, s, t)))
}

/// The union of all relations of `kind` between `p` and `q`, found by
/// enumerating every subset of the product. Refuses products with more than
/// [`ORACLE_CAP`] pairs.
pub fn oracle_greatest(kind: &PreorderKind, p: &System, q: &System) -> Result<Relation> {
    compatible(kind, p, q)?;
    let (n, m) = sizes(p, q);
    let pairs = n * m;
    if pairs > ORACLE_CAP {
        return Err(Error::InstanceTooLarge { pairs, cap: ORACLE_CAP });
    }
    let mut union = Relation::empty(n, m);
    for mask in 0u32..(1 << pairs) {
        let rel = Relation::from_pairs(n, m, (0..pairs).filter(|i| mask >> i & 1 == 1).map(|i| (i / m, i % m)));
        if rel.iter().all(|(s, t)| pair_holds(kind, p, q, &rel, s, t)) {
            for (s, t) in rel.iter() {
                union.insert(s, t);
            }
        }
    }
    Ok(union)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{label_set, Signature};
    use crate::preorder::greatest;

    #[test]
    fn one_by_one_without_transitions() {
        let m = System::Mts(Mts::builder("m").state("p").action("a").build().unwrap());
        let l = System::Lts(Lts::builder("l", Signature::plain(&["a"], &["b"], &[])).state("p").build().unwrap());
        assert_eq!(oracle_greatest(&PreorderKind::Refinement, &m, &m).unwrap(), Relation::full(1, 1));
        for kind in [PreorderKind::CcSim, PreorderKind::Simulation, PreorderKind::PartialBisim(label_set(["b"]))] {
            assert_eq!(oracle_greatest(&kind, &l, &l).unwrap(), Relation::full(1, 1));
        }
    }

    #[test]
    fn universal_spec_against_two_states() {
        let u = System::Mts(Mts::builder("U").may("u", "a", "u").build().unwrap());
        let q = System::Mts(Mts::builder("q").must("x", "a", "y").build().unwrap());
        let r = oracle_greatest(&PreorderKind::Refinement, &u, &q).unwrap();
        assert!(r.contains(0, 0) && r.contains(0, 1));
        assert_eq!(r, greatest(&PreorderKind::Refinement, &u, &q).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let big = System::Mts(Mts::builder("b").states(["a", "b", "c", "d"]).build().unwrap());
        assert_eq!(
            oracle_greatest(&PreorderKind::Refinement, &big, &big),
            Err(Error::InstanceTooLarge { pairs: 16, cap: ORACLE_CAP })
        );
    }

    #[test]
    fn kinds_must_match_system_types() {
        let m = System::Mts(Mts::builder("m").state("p").build().unwrap());
        assert_eq!(oracle_greatest(&PreorderKind::CcSim, &m, &m), Err(Error::SignatureMismatch));
    }
}
