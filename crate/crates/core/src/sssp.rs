//! Baseline and oracle distance computations: Dijkstra with an edge filter,
//! the hop-bounded Dijkstra/Bellman-Ford hybrid, plain Bellman-Ford with
//! negative-cycle witnesses, and the single-negative-first-edge /
//! zero-negative-hop distances used by the shortcutting machinery.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::frozen::FrozenGraph;
use crate::graph::{Edge, EdgeId, Graph, VertexId};
use crate::weight::{Dist, Scalar};

/// Where a shortest-path run starts: a concrete vertex, or a virtual
/// super-source with weight-0 edges to every vertex (never materialized).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Vertex(VertexId),
    SuperSource,
}

impl From<VertexId> for Source {
    fn from(v: VertexId) -> Self {
        Source::Vertex(v)
    }
}

/// Per-vertex `d^h(source, .)` table.
#[derive(Clone, Debug)]
pub struct HopTable<S> {
    pub source: VertexId,
    pub h: usize,
    pub dist: Vec<Dist<S>>,
}

/// A negative cycle witness: vertices `c_0 .. c_{l-1}` with edges
/// `(c_i, c_{i+1 mod l})` identified by id, re-summing to `weight < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleWitness<S> {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub weight: S,
}

impl<S: Scalar> CycleWitness<S> {
    /// Rebuild the witness weight from the owning graph and check the edge
    /// ids actually chain around the vertex sequence.
    pub fn verify(&self, g: &Graph<S>) -> bool {
        if self.vertices.is_empty() || self.vertices.len() != self.edges.len() {
            return false;
        }
        let l = self.vertices.len();
        let mut total = S::zero();
        for i in 0..l {
            let e = g.edge(self.edges[i]);
            if e.src != self.vertices[i] || e.dst != self.vertices[(i + 1) % l] {
                return false;
            }
            total = total.plus(&e.weight);
        }
        total.is_negative() && total == self.weight
    }
}

/// Outcome of a single-source run: distances (with a valid potential when
/// the run came from a super-source, hence all-finite), or a cycle witness.
#[derive(Clone, Debug)]
pub enum SsspOutcome<S> {
    Distances {
        dist: Vec<Dist<S>>,
        potential: Option<Vec<S>>,
    },
    NegativeCycle(CycleWitness<S>),
}

impl<S: Scalar> SsspOutcome<S> {
    pub fn distances(&self) -> Option<&[Dist<S>]> {
        match self {
            SsspOutcome::Distances { dist, .. } => Some(dist),
            SsspOutcome::NegativeCycle(_) => None,
        }
    }

    pub fn cycle(&self) -> Option<&CycleWitness<S>> {
        match self {
            SsspOutcome::NegativeCycle(c) => Some(c),
            SsspOutcome::Distances { .. } => None,
        }
    }
}

struct HeapEntry<S> {
    dist: S,
    vertex: VertexId,
}

impl<S: Scalar> PartialEq for HeapEntry<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<S: Scalar> Eq for HeapEntry<S> {}
impl<S: Scalar> Ord for HeapEntry<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the smallest
        // (distance, vertex) on top.
        other
            .dist
            .cmp_total(&self.dist)
            .then(other.vertex.cmp(&self.vertex))
    }
}
impl<S: Scalar> PartialOrd for HeapEntry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One Dijkstra pass seeded with the current labels. Binary heap with lazy
/// deletion; stale entries are skipped on pop.
fn dijkstra_pass<S: Scalar>(
    g: &Graph<S>,
    labels: &mut [Dist<S>],
    reverse: bool,
    mut admit: impl FnMut(EdgeId, &Edge<S>) -> bool,
) {
    let mut heap: BinaryHeap<HeapEntry<S>> = BinaryHeap::new();
    for (v, d) in labels.iter().enumerate() {
        if let Dist::Finite(s) = d {
            heap.push(HeapEntry { dist: s.clone(), vertex: v });
        }
    }
    while let Some(HeapEntry { dist, vertex }) = heap.pop() {
        match &labels[vertex] {
            Dist::Finite(cur) if cur.cmp_total(&dist) == Ordering::Less => continue,
            _ => {}
        }
        let adj = if reverse { g.in_(vertex) } else { g.out(vertex) };
        for &id in adj {
            let e = g.edge(id);
            if !admit(id, e) {
                continue;
            }
            let to = if reverse { e.src } else { e.dst };
            let cand = dist.plus(&e.weight);
            if Dist::Finite(cand.clone()).lt(&labels[to]) {
                labels[to] = Dist::Finite(cand.clone());
                heap.push(HeapEntry { dist: cand, vertex: to });
            }
        }
    }
}

/// Dijkstra over the filtered subgraph. Every admitted edge must be
/// non-negative except edges leaving `source`; a filtered negative edge off
/// the source is a precondition error. Unreachable vertices get `+inf`.
pub fn dijkstra<S: Scalar>(
    fg: &FrozenGraph<S>,
    source: VertexId,
    mut admit: impl FnMut(EdgeId, &Edge<S>) -> bool,
) -> Result<Vec<Dist<S>>> {
    let g = fg.graph();
    if source >= g.n() {
        return Err(Error::SourceOutOfRange { v: source, n: g.n() });
    }
    for (id, e) in g.edges().iter().enumerate() {
        if e.weight.is_negative() && e.src != source && admit(id, e) {
            return Err(Error::NegativeEdgeOffSource { edge: id });
        }
    }
    let mut labels = vec![Dist::Inf; g.n()];
    labels[source] = Dist::zero();
    dijkstra_pass(g, &mut labels, false, admit);
    Ok(labels)
}

/// `d^-(r, .)`: shortest distances where only the first edge may be frozen.
/// Runs Dijkstra over the non-frozen edges plus all outgoing edges of `r`.
pub fn d_minus_from<S: Scalar>(fg: &FrozenGraph<S>, r: VertexId) -> Vec<Dist<S>> {
    dijkstra(fg, r, |id, e| !fg.is_frozen(id) || e.src == r)
        .expect("non-frozen edges are non-negative")
}

/// `d^0(., r)`: zero-frozen-hop distances into `r`, computed by Dijkstra
/// from `r` over the reversed non-frozen edges. `result[v] = d^0(v, r)`.
pub fn d_zero_to<S: Scalar>(fg: &FrozenGraph<S>, r: VertexId) -> Vec<Dist<S>> {
    let g = fg.graph();
    let mut labels = vec![Dist::Inf; g.n()];
    labels[r] = Dist::zero();
    dijkstra_pass(g, &mut labels, true, |id, _| !fg.is_frozen(id));
    labels
}

/// One simultaneous relaxation sweep of all frozen edges, from a snapshot of
/// the labels so a single sweep adds at most one frozen hop per path.
/// Returns whether any label improved.
fn frozen_sweep<S: Scalar>(fg: &FrozenGraph<S>, labels: &mut [Dist<S>]) -> bool {
    let g = fg.graph();
    let snapshot: Vec<Dist<S>> = labels.to_vec();
    let mut improved = false;
    for &id in fg.frozen_edges() {
        let e = g.edge(id);
        let cand = snapshot[e.src].plus(&e.weight);
        if cand.lt(&labels[e.dst]) {
            labels[e.dst] = cand;
            improved = true;
        }
    }
    improved
}

fn hop_rounds<S: Scalar>(fg: &FrozenGraph<S>, labels: &mut [Dist<S>], h: usize) {
    // h+1 Dijkstra passes over the non-frozen edges with h frozen-edge
    // sweeps interleaved: after pass i the labels are exact d^i values.
    for round in 0..=h {
        dijkstra_pass(fg.graph(), labels, false, |id, _| !fg.is_frozen(id));
        if round < h {
            frozen_sweep(fg, labels);
        }
    }
}

/// Hop-bounded distances `d^h(source, .)`: minimum weight over walks using
/// at most `h` frozen edges (equal to path distances on negative-cycle-free
/// graphs).
pub fn hop_sssp<S: Scalar>(fg: &FrozenGraph<S>, source: VertexId, h: usize) -> HopTable<S> {
    let mut labels = vec![Dist::Inf; fg.graph().n()];
    labels[source] = Dist::zero();
    hop_rounds(fg, &mut labels, h);
    HopTable { source, h, dist: labels }
}

/// Like [`hop_sssp`] but returns the table after every round, so
/// `profile[j]` is the full `d^j(source, .)` table for `j` in `0..=h`.
pub fn hop_sssp_profile<S: Scalar>(
    fg: &FrozenGraph<S>,
    source: VertexId,
    h: usize,
) -> Vec<HopTable<S>> {
    let mut labels = vec![Dist::Inf; fg.graph().n()];
    labels[source] = Dist::zero();
    let mut out = Vec::with_capacity(h + 1);
    for round in 0..=h {
        dijkstra_pass(fg.graph(), &mut labels, false, |id, _| !fg.is_frozen(id));
        out.push(HopTable { source, h: round, dist: labels.clone() });
        if round < h {
            frozen_sweep(fg, &mut labels);
        }
    }
    out
}

pub(crate) fn seed_labels<S: Scalar>(n: usize, seeds: &[(VertexId, S)]) -> Vec<Dist<S>> {
    let mut labels = vec![Dist::Inf; n];
    for (v, s) in seeds {
        if Dist::Finite(s.clone()).lt(&labels[*v]) {
            labels[*v] = Dist::Finite(s.clone());
        }
    }
    labels
}

pub(crate) fn hop_sssp_seeded<S: Scalar>(
    fg: &FrozenGraph<S>,
    mut labels: Vec<Dist<S>>,
    h: usize,
) -> Vec<Dist<S>> {
    hop_rounds(fg, &mut labels, h);
    labels
}

/// Bellman-Ford from a vertex or super-source: exact distances, or a
/// negative-cycle witness extracted from the predecessor structure once the
/// relaxations fail to stabilize within `n` rounds.
pub fn bellman_ford<S: Scalar>(g: &Graph<S>, source: Source) -> SsspOutcome<S> {
    let seeds: Vec<(VertexId, S)> = match source {
        Source::Vertex(v) => vec![(v, S::zero())],
        Source::SuperSource => (0..g.n()).map(|v| (v, S::zero())).collect(),
    };
    let labels = seed_labels(g.n(), &seeds);
    bellman_ford_seeded(g, labels, matches!(source, Source::SuperSource))
}

pub(crate) fn bellman_ford_seeded<S: Scalar>(
    g: &Graph<S>,
    mut labels: Vec<Dist<S>>,
    potential_wanted: bool,
) -> SsspOutcome<S> {
    let n = g.n();
    let mut preds: Vec<Option<EdgeId>> = vec![None; n];
    let mut last_improved: Vec<VertexId> = Vec::new();
    // Improvement past round n means a negative cycle exists. The
    // predecessor walk is only guaranteed to close once the improvements
    // have wrapped around the cycle, so keep relaxing and retrying for up
    // to 3n rounds.
    for round in 0..=3 * n {
        let mut changed = false;
        last_improved.clear();
        for (id, e) in g.edges().iter().enumerate() {
            let cand = labels[e.src].plus(&e.weight);
            if cand.lt(&labels[e.dst]) {
                labels[e.dst] = cand;
                preds[e.dst] = Some(id);
                changed = true;
                last_improved.push(e.dst);
            }
        }
        if !changed {
            break;
        }
        if round >= n {
            for &y in &last_improved {
                if let Some(cycle) = extract_pred_cycle(g, &preds, y) {
                    return SsspOutcome::NegativeCycle(cycle);
                }
            }
        }
    }
    if !last_improved.is_empty() {
        panic!("negative cycle present but no predecessor cycle surfaced");
    }
    let potential = if potential_wanted {
        Some(
            labels
                .iter()
                .map(|d| d.expect_finite().clone())
                .collect(),
        )
    } else {
        None
    };
    SsspOutcome::Distances { dist: labels, potential }
}

/// Walk predecessor links `n` steps from an improved vertex to land on a
/// cycle, then cut at the first repeat.
fn extract_pred_cycle<S: Scalar>(
    g: &Graph<S>,
    preds: &[Option<EdgeId>],
    start: VertexId,
) -> Option<CycleWitness<S>> {
    let mut v = start;
    for _ in 0..g.n() {
        v = g.edge(preds[v]?).src;
    }
    let anchor = v;
    let mut rev_edges = Vec::new();
    let mut rev_vertices = Vec::new();
    let mut cur = anchor;
    loop {
        let e = preds[cur]?;
        rev_edges.push(e);
        rev_vertices.push(cur);
        cur = g.edge(e).src;
        if cur == anchor {
            break;
        }
        if rev_edges.len() > g.n() {
            return None;
        }
    }
    rev_edges.reverse();
    rev_vertices.reverse();
    let mut vertices = vec![anchor];
    vertices.extend(rev_vertices.iter().take(rev_vertices.len() - 1));
    let weight = g.walk_weight(&rev_edges);
    let witness = CycleWitness { vertices, edges: rev_edges, weight };
    witness.weight.is_negative().then_some(witness)
}

/// Hop-bounded finisher: `h`-hop distances from the seeded labels, then one
/// extra frozen-edge sweep. An improving sweep means some path needs more
/// frozen hops than promised, which on a sound run can only come from a
/// negative cycle; the witness is then extracted with Bellman-Ford on the
/// same graph and seeds.
pub(crate) fn hop_finish_seeded<S: Scalar>(
    fg: &FrozenGraph<S>,
    seeds: Vec<Dist<S>>,
    h: usize,
    potential_wanted: bool,
) -> Result<SsspOutcome<S>> {
    let mut labels = hop_sssp_seeded(fg, seeds.clone(), h);
    let mut probe = labels.clone();
    if !frozen_sweep(fg, &mut probe) {
        let potential = if potential_wanted {
            Some(labels.iter().map(|d| d.expect_finite().clone()).collect())
        } else {
            None
        };
        return Ok(SsspOutcome::Distances {
            dist: std::mem::take(&mut labels),
            potential,
        });
    }
    match bellman_ford_seeded(fg.graph(), seeds, false) {
        SsspOutcome::NegativeCycle(c) => Ok(SsspOutcome::NegativeCycle(c)),
        SsspOutcome::Distances { .. } => Err(Error::Internal(
            "hop-bounded distances improved with no negative cycle present".into(),
        )),
    }
}

/// Finish a run whose shortest paths are guaranteed to use at most two
/// frozen edges: 2-hop distances plus one verification sweep that converts
/// any residual improvement into a negative-cycle witness.
pub fn two_hop_finish<S: Scalar>(fg: &FrozenGraph<S>, source: Source) -> Result<SsspOutcome<S>> {
    let n = fg.graph().n();
    let seeds: Vec<(VertexId, S)> = match source {
        Source::Vertex(v) => {
            if v >= n {
                return Err(Error::SourceOutOfRange { v, n });
            }
            vec![(v, S::zero())]
        }
        Source::SuperSource => (0..n).map(|v| (v, S::zero())).collect(),
    };
    hop_finish_seeded(
        fg,
        seed_labels(n, &seeds),
        2,
        matches!(source, Source::SuperSource),
    )
}

/// Translate a cycle found in `derived` into a cycle of `base` by
/// concatenating the edges' lift walks and splicing the resulting closed
/// walk into simple cycles until a negative one appears. The lift walks
/// telescope around cycles, so the closed walk re-sums to the derived
/// cycle's weight and a negative simple cycle must exist.
pub fn lift_cycle_to_base<S: Scalar>(
    derived: &Graph<S>,
    witness: &CycleWitness<S>,
    base: &Graph<S>,
) -> Result<CycleWitness<S>> {
    let mut walk: Vec<EdgeId> = Vec::new();
    for &id in &witness.edges {
        walk.extend_from_slice(&derived.edge(id).lift);
    }
    if walk.is_empty() {
        return Err(Error::Internal("negative cycle lifted to an empty walk".into()));
    }
    // Stack of (vertex, incoming base edge); splice out non-negative simple
    // cycles as they close, keep the first negative one.
    let start = base.edge(walk[0]).src;
    let mut stack: Vec<(VertexId, Option<EdgeId>)> = vec![(start, None)];
    let mut pos: std::collections::HashMap<VertexId, usize> =
        std::collections::HashMap::new();
    pos.insert(start, 0);
    for &id in &walk {
        let e = base.edge(id);
        debug_assert_eq!(e.src, stack.last().unwrap().0, "lift walk does not chain");
        let v = e.dst;
        if let Some(&j) = pos.get(&v) {
            let edges: Vec<EdgeId> = stack[j + 1..]
                .iter()
                .map(|(_, e)| e.unwrap())
                .chain(std::iter::once(id))
                .collect();
            let weight = base.walk_weight(&edges);
            if weight.is_negative() {
                let vertices: Vec<VertexId> = stack[j..].iter().map(|(u, _)| *u).collect();
                let w = CycleWitness { vertices, edges, weight };
                debug_assert!(w.verify(base));
                return Ok(w);
            }
            while stack.len() > j + 1 {
                let (u, _) = stack.pop().unwrap();
                pos.remove(&u);
            }
        } else {
            pos.insert(v, stack.len());
            stack.push((v, Some(id)));
        }
    }
    Err(Error::Internal(
        "lifted closed walk contained no negative simple cycle".into(),
    ))
}
