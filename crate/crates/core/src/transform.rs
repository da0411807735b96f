//! Rewrite the graph so every negative vertex has exactly one negative
//! outgoing edge, preserving all hop-bounded distances between original
//! vertices.

use crate::frozen::FrozenGraph;
use crate::graph::{empty_lift, EdgeId, VertexId};
use crate::weight::Scalar;

/// Mapping from each split negative vertex to its companion vertex that now
/// carries the original outgoing edges.
#[derive(Clone, Debug, Default)]
pub struct SplitMap {
    pairs: Vec<(VertexId, VertexId)>,
}

impl SplitMap {
    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn companion_of(&self, u: VertexId) -> Option<VertexId> {
        self.pairs.iter().find(|(a, _)| *a == u).map(|(_, b)| *b)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// For each negative vertex `u` with frozen outgoing edges
/// `(u, v_1) .. (u, v_l)` where `(u, v_1)` has minimum weight (ties broken
/// by lowest edge id): append a new vertex `u'`, re-target the frozen
/// outgoing edges to leave `u'` with weight reduced by `w(u, v_1)` (all now
/// non-negative, non-frozen), and add the single frozen edge `(u, u')` of
/// weight `w(u, v_1)`. Non-frozen outgoing edges stay at `u`, which is what
/// keeps every `d^h` between original vertices unchanged: a path through a
/// non-negative edge of `u` must not pick up an extra frozen hop.
///
/// Expects the frozen set to coincide with the currently-negative edges,
/// which is how the driver always calls it (right after freeze/unfreeze).
pub fn split_negative_vertices<S: Scalar>(
    mut fg: FrozenGraph<S>,
) -> (FrozenGraph<S>, SplitMap) {
    let negs: Vec<VertexId> = fg.negative_vertices().to_vec();
    if negs.is_empty() {
        return (fg, SplitMap::default());
    }
    let mut pairs = Vec::with_capacity(negs.len());
    for u in negs {
        let out_ids: Vec<EdgeId> = fg
            .graph()
            .out(u)
            .iter()
            .copied()
            .filter(|&id| fg.is_frozen(id))
            .collect();
        let &min_id = out_ids
            .iter()
            .min_by(|&&a, &&b| {
                fg.graph()
                    .edge(a)
                    .weight
                    .cmp_total(&fg.graph().edge(b).weight)
                    .then(a.cmp(&b))
            })
            .expect("negative vertex has at least one frozen outgoing edge");
        let w1 = fg.graph().edge(min_id).weight.clone();
        let u2 = fg.add_vertex();
        for id in out_ids {
            let w = fg.graph().edge(id).weight.minus(&w1);
            fg.graph_mut().set_edge_src(id, u2);
            fg.graph_mut().set_edge_weight(id, w);
            fg.set_edge_frozen(id, false);
        }
        fg.push_edge(u, u2, w1, empty_lift(), true)
            .expect("split endpoints are in range");
        pairs.push((u, u2));
    }
    fg.finish_bulk_edit();
    (fg, SplitMap { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frozen::freeze;
    use crate::graph::Graph;
    use crate::sssp::hop_sssp_profile;
    use crate::weight::{Dist, Rat};

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    #[test]
    fn splits_one_vertex_per_proof_step() {
        // u = 0 with out-edges of weights -5, -3, 2.
        let g = Graph::build(4, &[(0, 1, r(-5)), (0, 2, r(-3)), (0, 3, r(2))]).unwrap();
        let (fg, map) = split_negative_vertices(freeze(g));
        assert_eq!(map.pairs(), &[(0, 4)]);
        let g = fg.graph();
        assert_eq!(g.n(), 5);
        assert_eq!(g.num_edges(), 4);
        // Negative edges move to the companion with shifted weights.
        assert_eq!(g.edge(0).src, 4);
        assert_eq!(g.edge(0).weight, r(0));
        assert_eq!(g.edge(1).src, 4);
        assert_eq!(g.edge(1).weight, r(2));
        // The non-negative out-edge stays put so zero-hop paths through 0
        // survive.
        assert_eq!(g.edge(2).src, 0);
        assert_eq!(g.edge(2).weight, r(2));
        // The fresh frozen edge carries the minimum weight.
        assert_eq!(g.edge(3).src, 0);
        assert_eq!(g.edge(3).dst, 4);
        assert_eq!(g.edge(3).weight, r(-5));
        assert!(fg.is_frozen(3));
        assert_eq!(fg.negative_vertices(), &[0]);
    }

    #[test]
    fn graph_without_negative_vertices_is_untouched() {
        let g = Graph::build(2, &[(0, 1, r(3))]).unwrap();
        let (fg, map) = split_negative_vertices(freeze(g));
        assert!(map.is_empty());
        assert_eq!(fg.graph().n(), 2);
        assert_eq!(fg.graph().num_edges(), 1);
    }

    #[test]
    fn single_negative_out_edge_still_splits() {
        let g = Graph::build(2, &[(0, 1, r(-2))]).unwrap();
        let (fg, map) = split_negative_vertices(freeze(g));
        assert_eq!(map.pairs(), &[(0, 2)]);
        assert_eq!(fg.graph().num_edges(), 2);
        // Each negative vertex ends with exactly one frozen outgoing edge.
        let frozen_out: Vec<_> = fg
            .graph()
            .out(0)
            .iter()
            .filter(|&&id| fg.is_frozen(id))
            .collect();
        assert_eq!(frozen_out.len(), 1);
    }

    #[test]
    fn hop_distances_between_original_vertices_survive() {
        use crate::generators::gen_potential_shifted;
        for seed in 0..6u64 {
            let g: Graph<Rat> = gen_potential_shifted(15, 40, 0.3, 8, seed);
            let fg_before = freeze(g.clone());
            let k = fg_before.negative_vertices().len();
            let m = fg_before.graph().num_edges();
            let (fg_after, _) = split_negative_vertices(freeze(g));
            for s in 0..15 {
                let before = hop_sssp_profile(&fg_before, s, 5);
                let after = hop_sssp_profile(&fg_after, s, 5);
                for h in 0..=5 {
                    for t in 0..15 {
                        assert_eq!(
                            before[h].dist[t], after[h].dist[t],
                            "d^{h}({s},{t}) changed, seed {seed}"
                        );
                    }
                }
            }
            // Exactly k new vertices and k new edges; every vertex now has
            // at most one frozen outgoing edge, exactly k of them have one.
            assert_eq!(fg_after.graph().n(), 15 + k);
            assert_eq!(fg_after.graph().num_edges(), m + k);
            let mut with_one = 0;
            for v in 0..fg_after.graph().n() {
                let frozen_out = fg_after
                    .graph()
                    .out(v)
                    .iter()
                    .filter(|&&id| fg_after.is_frozen(id))
                    .count();
                assert!(frozen_out <= 1, "vertex {v} seed {seed}");
                if frozen_out == 1 {
                    with_one += 1;
                }
            }
            assert_eq!(with_one, k, "seed {seed}");
        }
    }

    #[test]
    fn split_edge_lifts_stay_consistent() {
        // A negative 2-cycle survives splitting: the lifted witness found in
        // the split graph must land back on input edges.
        let g = Graph::build(2, &[(0, 1, r(-2)), (1, 0, r(1))]).unwrap();
        let input = g.clone();
        let (fg, _) = split_negative_vertices(freeze(g));
        match crate::sssp::bellman_ford(fg.graph(), crate::sssp::Source::Vertex(0)) {
            crate::sssp::SsspOutcome::NegativeCycle(c) => {
                let lifted =
                    crate::sssp::lift_cycle_to_base(fg.graph(), &c, &input).unwrap();
                assert!(lifted.verify(&input));
                assert_eq!(lifted.weight, r(-1));
            }
            _ => panic!("expected a cycle"),
        }
        // Split distances still observed under hop counting.
        let t = hop_sssp_profile(&fg, 0, 1);
        assert_eq!(t[1].dist[1], Dist::Finite(r(-2)));
    }
}
