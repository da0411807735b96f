//! Two lazy Dijkstra searches run in alternation from a negative vertex `r`:
//! forward over the non-frozen edges plus all of `r`'s outgoing edges, and
//! backward over the reversed non-frozen edges. They stop as soon as the two
//! frontiers certify `d1 + d2 >= 0`, yielding the threshold and the two
//! settled sets with their distances.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::frozen::FrozenGraph;
use crate::graph::{EdgeId, VertexId};
use crate::weight::{Dist, Scalar};

/// Threshold and balanced reach sets for one source `r`. The source itself
/// is settled first in both directions and excluded from both sets.
#[derive(Clone, Debug)]
pub struct BidiResult<S> {
    pub r: VertexId,
    /// The threshold; `+inf` only when termination precedes any
    /// non-source settle on an empty backward frontier.
    pub delta: Dist<S>,
    /// `v -> d^-(r, v)` for the settled forward vertices.
    pub out_dist: BTreeMap<VertexId, S>,
    /// `v -> d^0(v, r)` for the settled backward vertices.
    pub in_dist: BTreeMap<VertexId, S>,
    /// Forward settle order (excluding `r`).
    pub out_order: Vec<VertexId>,
    /// Backward settle order (excluding `r`).
    pub in_order: Vec<VertexId>,
    /// Edge that settled each forward vertex.
    pub out_pred: HashMap<VertexId, EdgeId>,
    /// Edge (in real direction, pointing toward `r`) that settled each
    /// backward vertex.
    pub in_pred: HashMap<VertexId, EdgeId>,
    pub work: BidiWork,
}

impl<S: Scalar> BidiResult<S> {
    pub fn reach(&self) -> usize {
        self.out_dist.len() + self.in_dist.len()
    }
}

/// Measured effort, for the quadratic work-bound statistic.
#[derive(Clone, Copy, Debug, Default)]
pub struct BidiWork {
    pub edges_examined: usize,
    pub heap_pushes: usize,
    pub heap_pops: usize,
}

enum Adjacency<'a> {
    Shared(&'a [EdgeId]),
    Owned(Vec<EdgeId>),
}

impl Adjacency<'_> {
    fn get(&self, pos: usize) -> Option<EdgeId> {
        match self {
            Adjacency::Shared(s) => s.get(pos).copied(),
            Adjacency::Owned(v) => v.get(pos).copied(),
        }
    }
}

struct Candidate<S> {
    dist: S,
    target: VertexId,
    proposer: VertexId,
}

impl<S: Scalar> PartialEq for Candidate<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<S: Scalar> Eq for Candidate<S> {}
impl<S: Scalar> Ord for Candidate<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap: smallest (dist, target) wins ties deterministically.
        other
            .dist
            .cmp_total(&self.dist)
            .then(other.target.cmp(&self.target))
            .then(other.proposer.cmp(&self.proposer))
    }
}
impl<S: Scalar> PartialOrd for Candidate<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One lazily-fed Dijkstra frontier. Every settled vertex keeps a cursor
/// into its weight-sorted adjacency and proposes one candidate at a time;
/// the next is inserted only when the previous one pops.
struct LazySide<'a, S: Scalar> {
    fg: &'a FrozenGraph<S>,
    r: VertexId,
    forward: bool,
    heap: BinaryHeap<Candidate<S>>,
    settled: HashMap<VertexId, S>,
    cursors: HashMap<VertexId, (Adjacency<'a>, usize)>,
    /// Edge realizing each proposer's single live candidate.
    live_edge: HashMap<VertexId, EdgeId>,
    preds: HashMap<VertexId, EdgeId>,
    order: Vec<VertexId>,
    work: BidiWork,
}

impl<'a, S: Scalar> LazySide<'a, S> {
    fn new(fg: &'a FrozenGraph<S>, r: VertexId, forward: bool) -> Self {
        let mut side = LazySide {
            fg,
            r,
            forward,
            heap: BinaryHeap::new(),
            settled: HashMap::new(),
            cursors: HashMap::new(),
            live_edge: HashMap::new(),
            preds: HashMap::new(),
            order: Vec::new(),
            work: BidiWork::default(),
        };
        side.settle(r, S::zero(), None);
        side
    }

    fn adjacency_of(&self, v: VertexId) -> Adjacency<'a> {
        let g = self.fg.graph();
        if self.forward {
            if v == self.r {
                // All outgoing edges of r, sorted by weight: the frozen ones
                // are merged into the sorted non-negative list.
                let mut ids: Vec<EdgeId> = g.out(v).to_vec();
                ids.sort_by(|&a, &b| {
                    g.edge(a)
                        .weight
                        .cmp_total(&g.edge(b).weight)
                        .then(a.cmp(&b))
                });
                Adjacency::Owned(ids)
            } else {
                Adjacency::Shared(g.sorted_out_nonneg(v))
            }
        } else {
            Adjacency::Shared(g.sorted_in_nonneg(v))
        }
    }

    fn settle(&mut self, v: VertexId, dist: S, pred: Option<EdgeId>) {
        self.settled.insert(v, dist);
        if let Some(e) = pred {
            self.preds.insert(v, e);
        }
        if v != self.r {
            self.order.push(v);
        }
        let adj = self.adjacency_of(v);
        self.cursors.insert(v, (adj, 0));
        self.propose_next(v);
    }

    /// Push `v`'s smallest-weight candidate to a still-unsettled target,
    /// advancing the cursor past settled ones.
    fn propose_next(&mut self, v: VertexId) {
        let dist_v = self.settled.get(&v).cloned().expect("proposer is settled");
        loop {
            let id = {
                let (adj, pos) = self.cursors.get_mut(&v).expect("cursor exists");
                match adj.get(*pos) {
                    Some(id) => {
                        *pos += 1;
                        id
                    }
                    None => return,
                }
            };
            self.work.edges_examined += 1;
            let e = self.fg.graph().edge(id);
            let target = if self.forward { e.dst } else { e.src };
            if self.settled.contains_key(&target) {
                continue;
            }
            self.live_edge.insert(v, id);
            self.heap.push(Candidate {
                dist: dist_v.plus(&e.weight),
                target,
                proposer: v,
            });
            self.work.heap_pushes += 1;
            return;
        }
    }

    /// Minimum tentative distance to an unsettled vertex, with stale
    /// entries cleaned up (their proposers advance and re-propose).
    fn peek(&mut self) -> Dist<S> {
        loop {
            match self.heap.peek() {
                None => return Dist::Inf,
                Some(c) if !self.settled.contains_key(&c.target) => {
                    return Dist::Finite(c.dist.clone());
                }
                Some(_) => {
                    let c = self.heap.pop().unwrap();
                    self.work.heap_pops += 1;
                    self.propose_next(c.proposer);
                }
            }
        }
    }

    /// Settle the current minimum candidate. Callers only invoke this after
    /// `peek` returned a finite distance.
    fn settle_min(&mut self) {
        let c = self.heap.pop().expect("peek certified a candidate");
        self.work.heap_pops += 1;
        debug_assert!(!self.settled.contains_key(&c.target));
        let edge = *self.live_edge.get(&c.proposer).expect("live candidate edge");
        let proposer = c.proposer;
        self.settle(c.target, c.dist, Some(edge));
        self.propose_next(proposer);
    }
}

pub fn bidi_dijkstra<S: Scalar>(fg: &FrozenGraph<S>, r: VertexId) -> BidiResult<S> {
    let mut fwd = LazySide::new(fg, r, true);
    let mut bwd = LazySide::new(fg, r, false);

    #[derive(Clone, Copy, PartialEq)]
    enum Last {
        None,
        Forward,
        Backward,
    }
    let mut last = Last::None;
    let mut fwd_turn = true;

    let delta = loop {
        let d1 = fwd.peek();
        let d2 = bwd.peek();
        if !d1.add_dist(&d2).is_negative() {
            break match last {
                Last::Forward | Last::None => d2,
                Last::Backward => match d1 {
                    Dist::Finite(s) => Dist::Finite(s.negate()),
                    Dist::Inf => unreachable!("backward settle implies finite forward frontier"),
                },
            };
        }
        if fwd_turn {
            fwd.settle_min();
            last = Last::Forward;
        } else {
            bwd.settle_min();
            last = Last::Backward;
        }
        fwd_turn = !fwd_turn;
    };

    let out_dist: BTreeMap<VertexId, S> = fwd
        .settled
        .iter()
        .filter(|(&v, _)| v != r)
        .map(|(&v, d)| (v, d.clone()))
        .collect();
    let in_dist: BTreeMap<VertexId, S> = bwd
        .settled
        .iter()
        .filter(|(&v, _)| v != r)
        .map(|(&v, d)| (v, d.clone()))
        .collect();
    let work = BidiWork {
        edges_examined: fwd.work.edges_examined + bwd.work.edges_examined,
        heap_pushes: fwd.work.heap_pushes + bwd.work.heap_pushes,
        heap_pops: fwd.work.heap_pops + bwd.work.heap_pops,
    };
    BidiResult {
        r,
        delta,
        out_dist,
        in_dist,
        out_order: fwd.order,
        in_order: bwd.order,
        out_pred: fwd.preds,
        in_pred: bwd.preds,
        work,
    }
}
