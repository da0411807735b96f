//! Directed weighted multigraph with forward/reverse adjacency and
//! weight-sorted non-negative adjacency lists.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::weight::Scalar;

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

/// Stable edge identifier: the index into the owning graph's edge list.
/// Edges are never removed, so identifiers stay valid across mutations.
pub type EdgeId = usize;

/// Walk of edge identifiers in a base graph that a derived edge stands for.
///
/// Every edge of a working graph carries the walk (possibly empty) it lifts
/// to in the graph the pipeline started from. Around any cycle the lifted
/// walks concatenate into a closed walk of the same total weight, which is
/// how negative-cycle witnesses found deep in the pipeline are reported in
/// terms of the caller's edges.
pub type Lift = Arc<[EdgeId]>;

pub fn identity_lift(id: EdgeId) -> Lift {
    Arc::from(vec![id])
}

pub fn empty_lift() -> Lift {
    Arc::from(Vec::new())
}

#[derive(Clone, Debug)]
pub struct Edge<S> {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: S,
    pub lift: Lift,
}

/// Directed multigraph. Parallel edges and self-loops are permitted and
/// retained; distance algorithms are indifferent to duplicates.
#[derive(Clone, Debug)]
pub struct Graph<S> {
    n: usize,
    edges: Vec<Edge<S>>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
    sorted_out_nonneg: Vec<Vec<EdgeId>>,
    sorted_in_nonneg: Vec<Vec<EdgeId>>,
}

impl<S: Scalar> Graph<S> {
    pub fn new_empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            sorted_out_nonneg: vec![Vec::new(); n],
            sorted_in_nonneg: vec![Vec::new(); n],
        }
    }

    /// Build a graph from `(src, dst, weight)` triples. Each input edge
    /// lifts to itself.
    pub fn build(n: usize, edge_list: &[(VertexId, VertexId, S)]) -> Result<Self> {
        let mut g = Graph::new_empty(n);
        for (src, dst, w) in edge_list {
            let id = g.edges.len();
            g.push_edge(*src, *dst, w.clone(), identity_lift(id))?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: EdgeId) -> &Edge<S> {
        &self.edges[id]
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn out(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[v]
    }

    pub fn in_(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[v]
    }

    /// Outgoing edges with non-negative weight (and, once frozen bookkeeping
    /// rebuilds the lists, non-frozen), ascending by weight.
    pub fn sorted_out_nonneg(&self, v: VertexId) -> &[EdgeId] {
        &self.sorted_out_nonneg[v]
    }

    pub fn sorted_in_nonneg(&self, v: VertexId) -> &[EdgeId] {
        &self.sorted_in_nonneg[v]
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = self.n;
        self.n += 1;
        self.out_adj.push(Vec::new());
        self.in_adj.push(Vec::new());
        self.sorted_out_nonneg.push(Vec::new());
        self.sorted_in_nonneg.push(Vec::new());
        v
    }

    /// Append an edge, keeping adjacency and sorted lists consistent. The
    /// sorted lists admit the edge when its weight is non-negative; callers
    /// that track frozen edges rebuild the lists with their own filter.
    pub fn push_edge(&mut self, src: VertexId, dst: VertexId, weight: S, lift: Lift) -> Result<EdgeId> {
        if src >= self.n || dst >= self.n {
            return Err(Error::EndpointOutOfRange { src, dst, n: self.n });
        }
        let id = self.edges.len();
        self.out_adj[src].push(id);
        self.in_adj[dst].push(id);
        if weight.is_nonneg() {
            Self::insert_sorted(&mut self.sorted_out_nonneg[src], &self.edges, id, &weight);
            Self::insert_sorted(&mut self.sorted_in_nonneg[dst], &self.edges, id, &weight);
        }
        self.edges.push(Edge { src, dst, weight, lift });
        Ok(id)
    }

    fn insert_sorted(list: &mut Vec<EdgeId>, edges: &[Edge<S>], id: EdgeId, weight: &S) {
        let pos = list.partition_point(|&e| {
            let w = &edges[e].weight;
            match w.cmp_total(weight) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => e < id,
                std::cmp::Ordering::Greater => false,
            }
        });
        list.insert(pos, id);
    }

    /// Rebuild the sorted non-negative lists, admitting only edges for which
    /// `admit` holds in addition to non-negativity.
    pub(crate) fn rebuild_sorted_nonneg(&mut self, mut admit: impl FnMut(EdgeId) -> bool) {
        for v in 0..self.n {
            self.sorted_out_nonneg[v].clear();
            self.sorted_in_nonneg[v].clear();
        }
        let mut ids: Vec<EdgeId> = (0..self.edges.len())
            .filter(|&id| self.edges[id].weight.is_nonneg() && admit(id))
            .collect();
        ids.sort_by(|&a, &b| {
            self.edges[a]
                .weight
                .cmp_total(&self.edges[b].weight)
                .then(a.cmp(&b))
        });
        for id in ids {
            let e = &self.edges[id];
            self.sorted_out_nonneg[e.src].push(id);
            self.sorted_in_nonneg[e.dst].push(id);
        }
    }

    /// Rebuild plain adjacency from the edge list (used after bulk edits).
    pub(crate) fn rebuild_adjacency(&mut self) {
        for v in 0..self.n {
            self.out_adj[v].clear();
            self.in_adj[v].clear();
        }
        for (id, e) in self.edges.iter().enumerate() {
            self.out_adj[e.src].push(id);
            self.in_adj[e.dst].push(id);
        }
    }

    pub(crate) fn set_edge_src(&mut self, id: EdgeId, src: VertexId) {
        self.edges[id].src = src;
    }

    pub(crate) fn set_edge_weight(&mut self, id: EdgeId, weight: S) {
        self.edges[id].weight = weight;
    }

    /// Copy of this graph where every edge lifts to itself, discarding
    /// whatever walk structure the edges carried. Recursive solves treat
    /// their argument as a fresh base graph.
    pub fn with_identity_lifts(&self) -> Graph<S> {
        let mut g = self.clone();
        for (id, e) in g.edges.iter_mut().enumerate() {
            e.lift = identity_lift(id);
        }
        g
    }

    pub fn max_abs_weight(&self) -> S {
        let mut m = S::zero();
        for e in &self.edges {
            let a = e.weight.abs();
            if m.below(&a) {
                m = a;
            }
        }
        m
    }

    /// Total weight of a walk given by edge ids. Panics if the ids do not
    /// chain; callers validate walk structure separately.
    pub fn walk_weight(&self, walk: &[EdgeId]) -> S {
        let mut total = S::zero();
        for &id in walk {
            total = total.plus(&self.edges[id].weight);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Rat;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    #[test]
    fn empty_graph_has_one_vertex_no_edges() {
        let g = Graph::<Rat>::build(1, &[]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn negative_edges_stay_out_of_sorted_lists() {
        let g = Graph::build(3, &[(0, 1, r(-2)), (1, 2, r(3)), (0, 2, r(5))]).unwrap();
        assert_eq!(g.sorted_out_nonneg(0), &[2]);
        assert_eq!(g.out(0), &[0, 2]);
        assert_eq!(g.sorted_in_nonneg(2), &[1, 2]);
    }

    #[test]
    fn parallel_edges_keep_distinct_ids() {
        let g = Graph::build(2, &[(0, 1, r(1)), (0, 1, r(1))]).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.out(0), &[0, 1]);
        assert_eq!(g.sorted_out_nonneg(0), &[0, 1]);
    }

    #[test]
    fn out_of_range_endpoint_is_rejected() {
        let err = Graph::build(2, &[(0, 2, r(1))]).unwrap_err();
        assert!(matches!(err, Error::EndpointOutOfRange { .. }));
    }

    #[test]
    fn sorted_lists_are_nondecreasing() {
        let g = Graph::build(
            4,
            &[
                (0, 1, r(5)),
                (0, 2, r(1)),
                (0, 3, r(3)),
                (0, 1, r(1)),
                (2, 0, r(-1)),
            ],
        )
        .unwrap();
        let ws: Vec<i64> = g
            .sorted_out_nonneg(0)
            .iter()
            .map(|&e| g.edge(e).weight.to_f64() as i64)
            .collect();
        assert_eq!(ws, vec![1, 1, 3, 5]);
    }
}
