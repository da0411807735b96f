//! Hop-betweenness reduction via one shortest-paths call on a layered
//! graph, and the two-copy hop reducer. Both bolt onto an outside solver
//! through the same oracle interface as the main pipeline.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::betweenness::BetweennessOutcome;
use crate::error::{Error, Result};
use crate::frozen::FrozenGraph;
use crate::graph::{empty_lift, Graph, Lift, VertexId};
use crate::sssp::{self, CycleWitness, SsspOutcome};
use crate::weight::Scalar;

/// Which copy of the base graph a layered vertex lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerTag {
    Base,
    /// Forward chain copies `1..=h`.
    Fwd(usize),
    /// Backward chain copies `1..=h`.
    Bwd(usize),
}

/// `2h+1` copies of the non-frozen subgraph, chained by the frozen edges
/// (shifted non-negative by `M`) and closed by `|S|` jump edges of weight
/// `-2hM` — the instance's only negative edges.
///
/// Each vertex also gets weight-`M` pad edges along both chains (acting as
/// zero-weight frozen self-loops of the base graph), so a walk with fewer
/// than `h` frozen hops can still climb to the jump layer at the same `hM`
/// surcharge. Without them the round-trip bound below only holds for walks
/// using exactly `h` frozen edges.
#[derive(Clone, Debug)]
pub struct LayeredInstance<S> {
    pub graph: Graph<S>,
    pub h: usize,
    pub big_m: S,
    pub sample: Vec<VertexId>,
    n_orig: usize,
}

impl<S: Scalar> LayeredInstance<S> {
    pub fn layered_id(&self, tag: LayerTag, v: VertexId) -> VertexId {
        debug_assert!(v < self.n_orig);
        match tag {
            LayerTag::Base => v,
            LayerTag::Fwd(i) => i * self.n_orig + v,
            LayerTag::Bwd(i) => (self.h + i) * self.n_orig + v,
        }
    }

    pub fn tag_of(&self, id: VertexId) -> (LayerTag, VertexId) {
        let layer = id / self.n_orig;
        let v = id % self.n_orig;
        if layer == 0 {
            (LayerTag::Base, v)
        } else if layer <= self.h {
            (LayerTag::Fwd(layer), v)
        } else {
            (LayerTag::Bwd(layer - self.h), v)
        }
    }
}

/// Build the layered instance with an explicit jump-edge sample (the seeded
/// variant below draws the sample uniformly).
pub fn build_layered_with_sample<S: Scalar>(
    fg: &FrozenGraph<S>,
    h: usize,
    sample: &[VertexId],
) -> LayeredInstance<S> {
    assert!(h >= 1, "hop budget must be at least 1");
    let n = fg.graph().n();
    let copies = 2 * h + 1;
    let mut big_m = S::from_int(1);
    for &id in fg.frozen_edges() {
        let cand = fg.graph().edge(id).weight.abs().plus(&S::from_int(1));
        if big_m.below(&cand) {
            big_m = cand;
        }
    }
    let mut g = Graph::new_empty(copies * n);
    let inst = LayeredInstance {
        graph: Graph::new_empty(0),
        h,
        big_m: big_m.clone(),
        sample: sample.to_vec(),
        n_orig: n,
    };
    let lid = |tag: LayerTag, v: VertexId| inst.layered_id(tag, v);

    let tags: Vec<LayerTag> = std::iter::once(LayerTag::Base)
        .chain((1..=h).map(LayerTag::Fwd))
        .chain((1..=h).map(LayerTag::Bwd))
        .collect();
    for (id, e) in fg.graph().edges().iter().enumerate() {
        let lift: Lift = crate::graph::identity_lift(id);
        if !fg.is_frozen(id) {
            for &tag in &tags {
                g.push_edge(lid(tag, e.src), lid(tag, e.dst), e.weight.clone(), lift.clone())
                    .expect("copy endpoints in range");
            }
        } else {
            let w = e.weight.plus(&big_m);
            g.push_edge(lid(LayerTag::Base, e.src), lid(LayerTag::Fwd(1), e.dst), w.clone(), lift.clone())
                .expect("chain endpoints in range");
            for i in 1..h {
                g.push_edge(
                    lid(LayerTag::Fwd(i), e.src),
                    lid(LayerTag::Fwd(i + 1), e.dst),
                    w.clone(),
                    lift.clone(),
                )
                .expect("chain endpoints in range");
            }
            for i in 1..h {
                g.push_edge(
                    lid(LayerTag::Bwd(i + 1), e.src),
                    lid(LayerTag::Bwd(i), e.dst),
                    w.clone(),
                    lift.clone(),
                )
                .expect("chain endpoints in range");
            }
            g.push_edge(lid(LayerTag::Bwd(1), e.src), lid(LayerTag::Base, e.dst), w, lift)
                .expect("chain endpoints in range");
        }
    }
    // Pad edges: stay at the same base vertex while advancing one layer.
    for v in 0..n {
        g.push_edge(lid(LayerTag::Base, v), lid(LayerTag::Fwd(1), v), big_m.clone(), empty_lift())
            .expect("pad endpoints in range");
        for i in 1..h {
            g.push_edge(
                lid(LayerTag::Fwd(i), v),
                lid(LayerTag::Fwd(i + 1), v),
                big_m.clone(),
                empty_lift(),
            )
            .expect("pad endpoints in range");
            g.push_edge(
                lid(LayerTag::Bwd(i + 1), v),
                lid(LayerTag::Bwd(i), v),
                big_m.clone(),
                empty_lift(),
            )
            .expect("pad endpoints in range");
        }
        g.push_edge(lid(LayerTag::Bwd(1), v), lid(LayerTag::Base, v), big_m.clone(), empty_lift())
            .expect("pad endpoints in range");
    }
    let jump_w = big_m.mul_int(-2 * h as i64);
    for &w in sample {
        g.push_edge(
            lid(LayerTag::Fwd(h), w),
            lid(LayerTag::Bwd(h), w),
            jump_w.clone(),
            empty_lift(),
        )
        .expect("jump endpoints in range");
    }
    LayeredInstance { graph: g, ..inst }
}

/// Seeded variant: samples `min(n, ceil(4 b ln n))` vertices uniformly
/// without replacement.
pub fn build_layered<S: Scalar>(
    fg: &FrozenGraph<S>,
    h: usize,
    b: f64,
    seed: u64,
) -> LayeredInstance<S> {
    let n = fg.graph().n();
    let want = (4.0 * b * (n as f64).ln()).ceil().max(1.0) as usize;
    let size = want.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample: Vec<VertexId> = index::sample(&mut rng, n, size).into_vec();
    sample.sort_unstable();
    build_layered_with_sample(fg, h, &sample)
}

/// Solve the instance from a super-source and read the potential off the
/// base-layer copies; a negative cycle maps back to a closed walk of `fg`
/// (the chain weights cancel around a loop) and hence to a cycle of `fg`.
pub fn extract_layered_potential<S, F>(
    inst: &LayeredInstance<S>,
    fg: &FrozenGraph<S>,
    mut oracle: F,
) -> Result<BetweennessOutcome<S>>
where
    S: Scalar,
    F: FnMut(&Graph<S>) -> Result<SsspOutcome<S>>,
{
    match oracle(&inst.graph)? {
        SsspOutcome::Distances { dist, potential } => {
            let full: Vec<S> = match potential {
                Some(p) => p,
                None => dist
                    .iter()
                    .map(|d| {
                        d.finite().cloned().ok_or_else(|| {
                            Error::Internal("layered oracle left unreachable vertices".into())
                        })
                    })
                    .collect::<Result<_>>()?,
            };
            Ok(BetweennessOutcome::Potential(full[..inst.n_orig].to_vec()))
        }
        SsspOutcome::NegativeCycle(c) => {
            let lifted = sssp::lift_cycle_to_base(&inst.graph, &c, fg.graph())?;
            Ok(BetweennessOutcome::NegativeCycle(lifted))
        }
    }
}

/// Vertex layout of the two-copy reducer: `v` in the original-weights copy,
/// `n + v` in the re-weighted copy.
#[derive(Clone, Copy, Debug)]
pub struct TwoCopyMap {
    pub n: usize,
}

impl TwoCopyMap {
    pub fn first(&self, v: VertexId) -> VertexId {
        v
    }

    pub fn second(&self, v: VertexId) -> VertexId {
        self.n + v
    }
}

#[derive(Debug)]
pub enum TwoCopyOutcome<S> {
    Reducer { graph: Graph<S>, map: TwoCopyMap },
    NegativeCycle(CycleWitness<S>),
}

/// Hop reducer from one oracle call: copy one (the non-negative edges at
/// original weights) feeds copy two (all edges, weights neutralized by
/// `phi = d(V, .)`) through per-vertex bridge edges, so every s-t distance
/// is realized with a single negative hop: `d_G(s, t) = d_H^1(s_1, t_1)`.
/// The bridge offset uses `phi_max + 1` so all `n` return edges are
/// strictly negative; they are the only negative edges of `H`.
pub fn two_copy_hop_reducer<S, F>(g: &Graph<S>, mut oracle: F) -> Result<TwoCopyOutcome<S>>
where
    S: Scalar,
    F: FnMut(&Graph<S>) -> Result<SsspOutcome<S>>,
{
    let n = g.n();
    let phi: Vec<S> = match oracle(g)? {
        SsspOutcome::NegativeCycle(c) => return Ok(TwoCopyOutcome::NegativeCycle(c)),
        SsspOutcome::Distances { dist, potential } => match potential {
            Some(p) => p,
            None => dist
                .iter()
                .map(|d| {
                    d.finite().cloned().ok_or_else(|| {
                        Error::Internal("reducer oracle left unreachable vertices".into())
                    })
                })
                .collect::<Result<_>>()?,
        },
    };
    let mut offset = S::zero();
    for p in &phi {
        if offset.below(p) {
            offset = p.clone();
        }
    }
    let offset = offset.plus(&S::from_int(1));
    let map = TwoCopyMap { n };
    let mut h = Graph::new_empty(2 * n);
    for (id, e) in g.edges().iter().enumerate() {
        if e.weight.is_negative() {
            continue;
        }
        h.push_edge(e.src, e.dst, e.weight.clone(), crate::graph::identity_lift(id))
            .expect("copy-one endpoints in range");
    }
    for (id, e) in g.edges().iter().enumerate() {
        let w = e.weight.plus(&phi[e.src]).minus(&phi[e.dst]);
        h.push_edge(
            map.second(e.src),
            map.second(e.dst),
            w,
            crate::graph::identity_lift(id),
        )
        .expect("copy-two endpoints in range");
    }
    for (v, p) in phi.iter().enumerate() {
        h.push_edge(map.first(v), map.second(v), offset.minus(p), empty_lift())
            .expect("bridge endpoints in range");
        h.push_edge(map.second(v), map.first(v), p.minus(&offset), empty_lift())
            .expect("bridge endpoints in range");
    }
    Ok(TwoCopyOutcome::Reducer { graph: h, map })
}
