//! Bulk model checking: satisfaction sets for every state at once.
//!
//! Formulas are hash-consed into a DAG owned by the checker, and the
//! satisfaction set of each node is computed once and cached. This makes
//! checking many formulas that share large subformulas (characteristic
//! formulas in particular) cheap. Label constraints are not enforced here;
//! callers validate with [`check_wf`](super::check_wf) where it matters.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;

use super::Formula;
use crate::action::Action;
use crate::system::{Lts, Mts, StateId, Transition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Bottom,
    Top,
    And(usize, usize),
    Or(usize, usize),
    Box(usize, usize),
    Diamond(usize, usize),
}

pub struct GlobalChecker {
    n: usize,
    labels: BTreeMap<Action, usize>,
    /// Per label: edges quantified over by `[a]`.
    box_edges: Vec<Vec<(StateId, StateId)>>,
    /// Per label: edges witnessing `<a>`.
    diamond_edges: Vec<Vec<(StateId, StateId)>>,
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    sat: Vec<Option<FixedBitSet>>,
}

fn edge_table<'a, I>(labels: &BTreeMap<Action, usize>, trans: I) -> Vec<Vec<(StateId, StateId)>>
where
    I: IntoIterator<Item = &'a Transition>,
{
    let mut out = vec![Vec::new(); labels.len()];
    for t in trans {
        out[labels[&t.label]].push((t.source, t.target));
    }
    out
}

impl GlobalChecker {
    /// `[a]` ranges over may transitions and `<a>` over must transitions.
    pub fn for_mts(m: &Mts) -> GlobalChecker {
        let labels: BTreeMap<Action, usize> = m
            .actions()
            .iter()
            .chain(m.may().iter().map(|t| &t.label))
            .cloned()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let box_edges = edge_table(&labels, m.may());
        let diamond_edges = edge_table(&labels, m.must());
        GlobalChecker::new(m.num_states(), labels, box_edges, diamond_edges)
    }

    /// Both modalities range over the single transition relation.
    pub fn for_lts(p: &Lts) -> GlobalChecker {
        let labels: BTreeMap<Action, usize> = p
            .signature()
            .actions()
            .into_iter()
            .chain(p.transitions().iter().map(|t| t.label.clone()))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let edges = edge_table(&labels, p.transitions());
        GlobalChecker::new(p.num_states(), labels, edges.clone(), edges)
    }

    fn new(
        n: usize,
        labels: BTreeMap<Action, usize>,
        box_edges: Vec<Vec<(StateId, StateId)>>,
        diamond_edges: Vec<Vec<(StateId, StateId)>>,
    ) -> GlobalChecker {
        GlobalChecker { n, labels, box_edges, diamond_edges, nodes: Vec::new(), index: HashMap::new(), sat: Vec::new() }
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    /// The set of states satisfying `phi`.
    pub fn sat(&mut self, phi: &Formula) -> FixedBitSet {
        let id = self.intern(phi);
        self.sat_of(id).clone()
    }

    pub fn holds(&mut self, s: StateId, phi: &Formula) -> bool {
        let id = self.intern(phi);
        self.sat_of(id).contains(s)
    }

    fn label_id(&mut self, a: &Action) -> usize {
        if let Some(&i) = self.labels.get(a) {
            return i;
        }
        // A label with no transitions: `[a]` is vacuous, `<a>` unsatisfiable.
        let i = self.labels.len();
        self.labels.insert(a.clone(), i);
        self.box_edges.push(Vec::new());
        self.diamond_edges.push(Vec::new());
        i
    }

    fn intern(&mut self, phi: &Formula) -> usize {
        let node = match phi {
            Formula::Bottom => Node::Bottom,
            Formula::Top => Node::Top,
            Formula::And(l, r) => Node::And(self.intern(l), self.intern(r)),
            Formula::Or(l, r) => Node::Or(self.intern(l), self.intern(r)),
            Formula::Box(a, g) => {
                let g = self.intern(g);
                Node::Box(self.label_id(a), g)
            }
            Formula::Diamond(a, g) => {
                let g = self.intern(g);
                Node::Diamond(self.label_id(a), g)
            }
        };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node);
        self.index.insert(node, id);
        self.sat.push(None);
        id
    }

    fn sat_of(&mut self, id: usize) -> &FixedBitSet {
        if self.sat[id].is_none() {
            // Children are interned before parents, so ids are topologically
            // ordered and every child can be computed first.
            let set = match self.nodes[id] {
                Node::Bottom => FixedBitSet::with_capacity(self.n),
                Node::Top => {
                    let mut s = FixedBitSet::with_capacity(self.n);
                    s.insert_range(..);
                    s
                }
                Node::And(l, r) => {
                    let mut s = self.sat_of(l).clone();
                    s.intersect_with(self.sat_of(r));
                    s
                }
                Node::Or(l, r) => {
                    let mut s = self.sat_of(l).clone();
                    s.union_with(self.sat_of(r));
                    s
                }
                Node::Box(a, g) => {
                    let body = self.sat_of(g).clone();
                    let mut s = FixedBitSet::with_capacity(self.n);
                    s.insert_range(..);
                    for &(src, dst) in &self.box_edges[a] {
                        if !body.contains(dst) {
                            s.set(src, false);
                        }
                    }
                    s
                }
                Node::Diamond(a, g) => {
                    let body = self.sat_of(g).clone();
                    let mut s = FixedBitSet::with_capacity(self.n);
                    for &(src, dst) in &self.diamond_edges[a] {
                        if body.contains(dst) {
                            s.insert(src);
                        }
                    }
                    s
                }
            };
            self.sat[id] = Some(set);
        }
        self.sat[id].as_ref().expect("just computed")
    }
}
