//! Frozen-edge bookkeeping on top of [`Graph`]: the negative edges are
//! designated at freeze time and keep counting toward hop budgets even if a
//! later re-weighting turns them non-negative.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Lift, VertexId};
use crate::weight::Scalar;

/// A graph plus a frozen edge set and the cumulative potential applied since
/// construction. Current edge weights live in `graph`; hop counting in all
/// hop-bounded distance computations counts frozen edges, not edges of
/// current negative weight.
#[derive(Clone, Debug)]
pub struct FrozenGraph<S> {
    graph: Graph<S>,
    frozen: Vec<bool>,
    frozen_ids: Vec<EdgeId>,
    cumulative_phi: Vec<S>,
    negative_vertices: Vec<VertexId>,
    neg_mark: Vec<bool>,
}

/// Freeze the currently-negative edges of `g`.
pub fn freeze<S: Scalar>(graph: Graph<S>) -> FrozenGraph<S> {
    let n = graph.n();
    let mut fg = FrozenGraph {
        frozen: vec![false; graph.num_edges()],
        frozen_ids: Vec::new(),
        cumulative_phi: vec![S::zero(); n],
        negative_vertices: Vec::new(),
        neg_mark: vec![false; n],
        graph,
    };
    fg.refreeze_from_signs();
    fg
}

impl<S: Scalar> FrozenGraph<S> {
    pub fn graph(&self) -> &Graph<S> {
        &self.graph
    }

    pub fn is_frozen(&self, e: EdgeId) -> bool {
        self.frozen[e]
    }

    /// Frozen edge ids, ascending.
    pub fn frozen_edges(&self) -> &[EdgeId] {
        &self.frozen_ids
    }

    /// Vertices with at least one frozen outgoing edge, ascending.
    pub fn negative_vertices(&self) -> &[VertexId] {
        &self.negative_vertices
    }

    pub fn is_negative_vertex(&self, v: VertexId) -> bool {
        self.neg_mark[v]
    }

    pub fn k(&self) -> usize {
        self.negative_vertices.len()
    }

    pub fn cumulative_phi(&self) -> &[S] {
        &self.cumulative_phi
    }

    /// Re-weight every edge by `w + phi(src) - phi(dst)`. The frozen set is
    /// unchanged and the cumulative potential composes additively.
    ///
    /// `phi` must be valid for the non-frozen edges: none may become
    /// negative (beyond the float-mode slack, where near-zero results are
    /// clamped to exactly zero so downstream sign invariants stay strict).
    pub fn apply_potential(mut self, phi: &[S]) -> Result<Self> {
        if phi.len() != self.graph.n() {
            return Err(Error::PotentialLength {
                expected: self.graph.n(),
                got: phi.len(),
            });
        }
        let slack = S::sign_slack(&self.current_magnitude(phi));
        let mut new_weights = Vec::with_capacity(self.graph.num_edges());
        for (id, e) in self.graph.edges().iter().enumerate() {
            let mut w = e.weight.plus(&phi[e.src]).minus(&phi[e.dst]);
            if !self.frozen[id] && w.is_negative() {
                if w.negate().within(&slack) {
                    w = S::zero();
                } else {
                    return Err(Error::InvalidPotential { edge: id });
                }
            }
            new_weights.push(w);
        }
        for (id, w) in new_weights.into_iter().enumerate() {
            self.graph.set_edge_weight(id, w);
        }
        for (v, p) in phi.iter().enumerate() {
            self.cumulative_phi[v] = self.cumulative_phi[v].plus(p);
        }
        let frozen = std::mem::take(&mut self.frozen);
        self.graph.rebuild_sorted_nonneg(|id| !frozen[id]);
        self.frozen = frozen;
        Ok(self)
    }

    /// Recompute the frozen set from current edge signs, keeping the
    /// cumulative potential.
    pub fn unfreeze(mut self) -> Self {
        self.refreeze_from_signs();
        self
    }

    fn refreeze_from_signs(&mut self) {
        self.frozen.clear();
        self.frozen.resize(self.graph.num_edges(), false);
        self.frozen_ids.clear();
        for (id, e) in self.graph.edges().iter().enumerate() {
            if e.weight.is_negative() {
                self.frozen[id] = true;
                self.frozen_ids.push(id);
            }
        }
        self.recompute_negative_vertices();
        let frozen = std::mem::take(&mut self.frozen);
        self.graph.rebuild_sorted_nonneg(|id| !frozen[id]);
        self.frozen = frozen;
    }

    fn recompute_negative_vertices(&mut self) {
        self.neg_mark.clear();
        self.neg_mark.resize(self.graph.n(), false);
        for &id in &self.frozen_ids {
            self.neg_mark[self.graph.edge(id).src] = true;
        }
        self.negative_vertices = (0..self.graph.n()).filter(|&v| self.neg_mark[v]).collect();
    }

    fn current_magnitude(&self, phi: &[S]) -> S {
        let mut m = self.graph.max_abs_weight();
        for p in phi {
            let a = p.abs();
            if m.below(&a) {
                m = a;
            }
        }
        m
    }

    // Mutation hooks for the transform and shortcutting passes. They keep
    // frozen flags and adjacency consistent; callers finish a bulk edit
    // with `finish_bulk_edit`.

    pub(crate) fn add_vertex(&mut self) -> VertexId {
        let v = self.graph.add_vertex();
        self.cumulative_phi.push(S::zero());
        self.neg_mark.push(false);
        v
    }

    pub(crate) fn push_edge(
        &mut self,
        src: VertexId,
        dst: VertexId,
        weight: S,
        lift: Lift,
        frozen: bool,
    ) -> Result<EdgeId> {
        // Freshly created edges are frozen exactly when negative; only
        // re-weighting may later leave a frozen edge non-negative.
        debug_assert_eq!(weight.is_negative(), frozen);
        let id = self.graph.push_edge(src, dst, weight, lift)?;
        self.frozen.push(frozen);
        if frozen {
            self.frozen_ids.push(id);
            if !self.neg_mark[src] {
                self.neg_mark[src] = true;
                let pos = self.negative_vertices.partition_point(|&v| v < src);
                self.negative_vertices.insert(pos, src);
            }
        }
        Ok(id)
    }

    pub(crate) fn set_edge_frozen(&mut self, id: EdgeId, frozen: bool) {
        self.frozen[id] = frozen;
    }

    pub(crate) fn graph_mut(&mut self) -> &mut Graph<S> {
        &mut self.graph
    }

    /// Recompute adjacency, sorted lists, the frozen id list and the
    /// negative-vertex set from edge data and frozen flags.
    pub(crate) fn finish_bulk_edit(&mut self) {
        self.graph.rebuild_adjacency();
        self.frozen_ids = (0..self.graph.num_edges())
            .filter(|&id| self.frozen[id])
            .collect();
        self.recompute_negative_vertices();
        let frozen = std::mem::take(&mut self.frozen);
        self.graph.rebuild_sorted_nonneg(|id| !frozen[id]);
        self.frozen = frozen;
    }
}
