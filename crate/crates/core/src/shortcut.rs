//! Add Steiner vertices and five families of shortcut edges so that every
//! path with three consecutive frozen edges gains a replacement using at
//! most two, without decreasing any distance between existing vertices.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::bidi::BidiResult;
use crate::error::{Error, Result};
use crate::frozen::FrozenGraph;
use crate::graph::{EdgeId, Lift, VertexId};
use crate::weight::{Dist, Scalar};

/// What one shortcutting pass added, plus the reach-size statistics backing
/// the quadratic work bound.
#[derive(Clone, Debug, Default)]
pub struct ShortcutReport {
    /// `(r, steiner(r))` pairs, one per negative vertex.
    pub steiner: Vec<(VertexId, VertexId)>,
    /// Edges added by construction steps 2..=5, in order.
    pub edges_added_by_step: [usize; 4],
    /// Ids of the added edges, per step.
    pub added_edges: [Vec<EdgeId>; 4],
    /// Sum over negative vertices of `(|out| + |in|)^2`.
    pub sum_sq: u64,
    /// Sum over negative vertices of `|out| + |in|`.
    pub sum_lin: u64,
}

impl ShortcutReport {
    pub fn steiner_count(&self) -> usize {
        self.steiner.len()
    }

    pub fn total_added(&self) -> usize {
        self.edges_added_by_step.iter().sum()
    }

    pub fn steiner_of(&self, r: VertexId) -> Option<VertexId> {
        self.steiner.iter().find(|(a, _)| *a == r).map(|(_, s)| *s)
    }
}

struct PlannedEdge<S> {
    src: VertexId,
    dst: VertexId,
    weight: S,
    frozen: bool,
    lift: Lift,
    step: usize, // 2..=5
}

/// Lift walks from the settled predecessor trees: `out_walks[u]` is the
/// base-edge walk realizing `d^-(r, u)`, `in_walks[v]` the one realizing
/// `d^0(v, r)` (in real direction, ending at `r`).
fn tree_walks<S: Scalar>(
    fg: &FrozenGraph<S>,
    res: &BidiResult<S>,
) -> (HashMap<VertexId, Vec<EdgeId>>, HashMap<VertexId, Vec<EdgeId>>) {
    let g = fg.graph();
    let mut out_walks: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    out_walks.insert(res.r, Vec::new());
    for &v in &res.out_order {
        let e = res.out_pred[&v];
        let mut walk = out_walks[&g.edge(e).src].clone();
        walk.extend_from_slice(&g.edge(e).lift);
        out_walks.insert(v, walk);
    }
    let mut in_walks: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    in_walks.insert(res.r, Vec::new());
    for &v in &res.in_order {
        let e = res.in_pred[&v];
        let mut walk: Vec<EdgeId> = g.edge(e).lift.to_vec();
        walk.extend_from_slice(&in_walks[&g.edge(e).dst]);
        in_walks.insert(v, walk);
    }
    (out_walks, in_walks)
}

/// Run the shortcut construction for every negative vertex of `fg`, given
/// the bidirectional search results keyed by vertex. New frozen edges only
/// ever leave already-negative vertices.
pub fn shortcut_step<S: Scalar>(
    mut fg: FrozenGraph<S>,
    bidi: &BTreeMap<VertexId, BidiResult<S>>,
) -> Result<(FrozenGraph<S>, ShortcutReport)> {
    let negs: Vec<VertexId> = fg.negative_vertices().to_vec();
    for &r in &negs {
        if !bidi.contains_key(&r) {
            return Err(Error::MissingBidiResult { r });
        }
    }
    let n_before = fg.graph().n();
    let slack = S::sign_slack(&fg.graph().max_abs_weight());
    let mut report = ShortcutReport::default();
    let mut planned: Vec<PlannedEdge<S>> = Vec::new();

    for (idx, &r) in negs.iter().enumerate() {
        let steiner = n_before + idx;
        report.steiner.push((r, steiner));
        let res = &bidi[&r];
        let reach = res.reach() as u64;
        report.sum_sq += reach * reach;
        report.sum_lin += reach;

        let g = fg.graph();
        let (out_walks, in_walks) = tree_walks(&fg, res);
        let dm = |u: VertexId| -> S {
            if u == r {
                S::zero()
            } else {
                res.out_dist[&u].clone()
            }
        };
        let dz = |v: VertexId| -> S {
            if v == r {
                S::zero()
            } else {
                res.in_dist[&v].clone()
            }
        };
        let mut out_side: Vec<VertexId> = res.out_dist.keys().copied().collect();
        out_side.push(r);
        out_side.sort_unstable();
        let mut in_side: Vec<VertexId> = res.in_dist.keys().copied().collect();
        in_side.push(r);
        in_side.sort_unstable();

        // The unique frozen outgoing edge (r, r') of this negative vertex.
        let frozen_out: Vec<EdgeId> = g
            .out(r)
            .iter()
            .copied()
            .filter(|&id| fg.is_frozen(id))
            .collect();
        if frozen_out.len() != 1 {
            return Err(Error::Internal(format!(
                "negative vertex {r} has {} frozen outgoing edges, expected 1",
                frozen_out.len()
            )));
        }
        let r_edge = frozen_out[0];
        let r_prime = g.edge(r_edge).dst;
        let w_r_edge = g.edge(r_edge).weight.clone();

        // Steps 2 and 3 only make sense with a finite threshold; a
        // degenerate search contributes no Steiner edges.
        if let Dist::Finite(delta) = &res.delta {
            for &u in &out_side {
                let base = dm(u).plus(delta);
                for &id in g.out(u) {
                    let e = g.edge(id);
                    let w = base.plus(&e.weight);
                    if w.negate().within(&slack) {
                        let mut lift = out_walks[&u].clone();
                        lift.extend_from_slice(&e.lift);
                        planned.push(PlannedEdge {
                            src: steiner,
                            dst: e.dst,
                            weight: if w.is_negative() { S::zero() } else { w },
                            frozen: false,
                            lift: Arc::from(lift),
                            step: 2,
                        });
                    }
                }
            }
            for &v in &in_side {
                let base = dz(v).minus(delta);
                for &id in g.in_(v) {
                    let e = g.edge(id);
                    let w = e.weight.plus(&base);
                    if w.negate().within(&slack) {
                        let mut lift: Vec<EdgeId> = e.lift.to_vec();
                        lift.extend_from_slice(&in_walks[&v]);
                        planned.push(PlannedEdge {
                            src: e.src,
                            dst: steiner,
                            weight: if w.is_negative() { S::zero() } else { w },
                            frozen: false,
                            lift: Arc::from(lift),
                            step: 3,
                        });
                    }
                }
            }
        }

        // Step 4: bypass the out side through r itself.
        for &u in &out_side {
            let base = dm(u);
            for &id in g.out(u) {
                let e = g.edge(id);
                let w = base.plus(&e.weight);
                let mut lift = out_walks[&u].clone();
                lift.extend_from_slice(&e.lift);
                planned.push(PlannedEdge {
                    src: r,
                    dst: e.dst,
                    frozen: w.is_negative(),
                    weight: w,
                    lift: Arc::from(lift),
                    step: 4,
                });
            }
        }

        // Step 5: bypass the in side into r', restricted to negative tails.
        for &v in &in_side {
            let base = dz(v).plus(&w_r_edge);
            for &id in g.in_(v) {
                let e = g.edge(id);
                if !fg.is_negative_vertex(e.src) {
                    continue;
                }
                let w = e.weight.plus(&base);
                let mut lift: Vec<EdgeId> = e.lift.to_vec();
                lift.extend_from_slice(&in_walks[&v]);
                lift.extend_from_slice(&g.edge(r_edge).lift);
                planned.push(PlannedEdge {
                    src: e.src,
                    dst: r_prime,
                    frozen: w.is_negative(),
                    weight: w,
                    lift: Arc::from(lift),
                    step: 5,
                });
            }
        }
    }

    for _ in &negs {
        fg.add_vertex();
    }
    for p in planned {
        let id = fg.push_edge(p.src, p.dst, p.weight, p.lift, p.frozen)?;
        report.edges_added_by_step[p.step - 2] += 1;
        report.added_edges[p.step - 2].push(id);
    }
    debug_assert_eq!(fg.negative_vertices(), &negs[..], "no new negative vertices");
    Ok((fg, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bidi::bidi_dijkstra;
    use crate::frozen::freeze;
    use crate::graph::Graph;
    use crate::weight::Rat;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    fn all_bidi(fg: &FrozenGraph<Rat>) -> BTreeMap<VertexId, BidiResult<Rat>> {
        fg.negative_vertices()
            .iter()
            .map(|&r| (r, bidi_dijkstra(fg, r)))
            .collect()
    }

    #[test]
    fn no_negative_vertices_is_a_no_op() {
        let fg = freeze(Graph::build(3, &[(0, 1, r(1)), (1, 2, r(2))]).unwrap());
        let (fg2, report) = shortcut_step(fg, &BTreeMap::new()).unwrap();
        assert_eq!(fg2.graph().n(), 3);
        assert_eq!(report.total_added(), 0);
        assert_eq!(report.steiner_count(), 0);
    }

    #[test]
    fn lone_frozen_edge_gets_parallel_copy_and_isolated_steiner() {
        let fg = freeze(Graph::build(2, &[(0, 1, r(-1))]).unwrap());
        let bidi = all_bidi(&fg);
        assert!(bidi[&0].delta.is_inf());
        let (fg2, report) = shortcut_step(fg, &bidi).unwrap();
        assert_eq!(fg2.graph().n(), 3);
        assert_eq!(report.edges_added_by_step, [0, 0, 1, 0]);
        let added = report.added_edges[2][0];
        let e = fg2.graph().edge(added);
        assert_eq!((e.src, e.dst), (0, 1));
        assert_eq!(e.weight, r(-1));
        assert!(fg2.is_frozen(added));
        // Steiner vertex exists but stays isolated.
        let steiner = report.steiner_of(0).unwrap();
        assert_eq!(steiner, 2);
        assert!(fg2.graph().out(steiner).is_empty());
        assert!(fg2.graph().in_(steiner).is_empty());
    }

    #[test]
    fn missing_bidi_entry_is_an_error() {
        let fg = freeze(Graph::build(2, &[(0, 1, r(-1))]).unwrap());
        let err = shortcut_step(fg, &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::MissingBidiResult { r: 0 }));
    }

    #[test]
    fn negative_vertex_set_is_preserved() {
        use crate::generators::gen_potential_shifted;
        use crate::transform::split_negative_vertices;
        for seed in 0..8u64 {
            let g: Graph<Rat> = gen_potential_shifted(12, 35, 0.3, 6, seed);
            let (fg, _) = split_negative_vertices(freeze(g));
            let negs = fg.negative_vertices().to_vec();
            let bidi = all_bidi(&fg);
            let (fg2, report) = shortcut_step(fg, &bidi).unwrap();
            assert_eq!(fg2.negative_vertices(), &negs[..]);
            assert_eq!(report.steiner_count(), negs.len());
            // Edge-count bound: at most 2 * sum (reach + 2) * n.
            let n = fg2.graph().n();
            let bound: usize = bidi
                .values()
                .map(|res| 2 * (res.reach() + 2) * n)
                .sum();
            assert!(report.total_added() <= bound);
        }
    }
}
