//! Reproducible test-graph generation: negative-cycle-free instances by
//! construction (hidden-potential shifting), planted negative cycles, and
//! hand-built three-frozen-edge gadgets that exercise each shortcutting
//! case.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::weight::Scalar;

/// Random graph with integer weights `w = w' + psi(src) - psi(dst)` where
/// `w' >= 0`; every cycle telescopes to `sum w' >= 0`, so the output never
/// contains a negative cycle. The hidden potential is scaled by binary
/// search so roughly `neg_fraction` of the edges come out negative.
pub fn gen_potential_shifted<S: Scalar>(
    n: usize,
    m: usize,
    neg_fraction: f64,
    weight_range: i64,
    seed: u64,
) -> Graph<S> {
    assert!(n > 0, "need at least one vertex");
    assert!((0.0..=1.0).contains(&neg_fraction));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ends: Vec<(VertexId, VertexId)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    let base: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=weight_range)).collect();
    let raw_psi: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();

    let neg_count = |scale: f64| -> usize {
        ends.iter()
            .zip(&base)
            .filter(|(&(u, v), &w)| {
                let psi_u = (scale * raw_psi[u] as f64).floor() as i64;
                let psi_v = (scale * raw_psi[v] as f64).floor() as i64;
                w + psi_u - psi_v < 0
            })
            .count()
    };

    let target = (neg_fraction * m as f64).round() as usize;
    let mut scale = 0.0;
    if target > 0 {
        let mut lo = 0.0_f64;
        let mut hi = (weight_range.max(1) as f64) * 4.0 / 1000.0 + 1.0;
        let mut best = (usize::MAX, 0.0_f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let c = neg_count(mid);
            let gap = c.abs_diff(target);
            if gap < best.0 {
                best = (gap, mid);
            }
            if c < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        scale = best.1;
    }

    let psi: Vec<i64> = raw_psi
        .iter()
        .map(|&g| (scale * g as f64).floor() as i64)
        .collect();
    let edges: Vec<(VertexId, VertexId, S)> = ends
        .iter()
        .zip(&base)
        .map(|(&(u, v), &w)| (u, v, S::from_int(w + psi[u] - psi[v])))
        .collect();
    Graph::build(n, &edges).expect("generated endpoints are in range")
}

/// Potential-shifted base plus an explicit planted cycle of the requested
/// total weight. Returns the ids of the cycle edges.
pub fn gen_planted_cycle<S: Scalar>(
    n: usize,
    m: usize,
    cycle_len: usize,
    cycle_weight: i64,
    seed: u64,
) -> (Graph<S>, Vec<EdgeId>) {
    assert!(cycle_len >= 2, "cycle needs at least two vertices");
    assert!(cycle_len <= n, "cycle cannot exceed the vertex count");
    assert!(cycle_weight < 0, "planted cycle must be negative");
    let mut g: Graph<S> = gen_potential_shifted(n, m, 0.1, 8, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let cycle: Vec<VertexId> = index::sample(&mut rng, n, cycle_len).into_vec();
    let share = cycle_weight.div_euclid(cycle_len as i64);
    let mut remainder = cycle_weight - share * cycle_len as i64;
    let mut ids = Vec::with_capacity(cycle_len);
    for i in 0..cycle_len {
        let mut w = share;
        if remainder > 0 {
            w += 1;
            remainder -= 1;
        }
        let id = g.num_edges();
        g.push_edge(
            cycle[i],
            cycle[(i + 1) % cycle_len],
            S::from_int(w),
            crate::graph::identity_lift(id),
        )
        .expect("cycle endpoints in range");
        ids.push(id);
    }
    (g, ids)
}

/// Which of the three replacement shapes a gadget exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetCase {
    /// The stretch before the middle frozen edge is cheap to re-enter:
    /// a single new frozen edge `(u, r')` replaces two frozen hops.
    EarlyReentry = 1,
    /// The stretch after the middle frozen edge is cheap to leave:
    /// a single new frozen edge `(r, v')` replaces two frozen hops.
    LateExit = 2,
    /// Neither side is cheap: a two-hop non-negative detour through the
    /// middle vertex's Steiner copy replaces the middle frozen hop.
    BalancedDetour = 3,
}

/// What the gadget promises to contain after one shortcutting pass.
#[derive(Clone, Debug)]
pub enum GadgetExpectation<S> {
    SingleFrozenEdge {
        src: VertexId,
        dst: VertexId,
        max_weight: S,
    },
    TwoHopViaSteiner {
        src: VertexId,
        steiner_owner: VertexId,
        dst: VertexId,
        max_total: S,
    },
}

/// A fixture with three consecutive frozen edges `(u,u') (r,r') (v,v')`
/// along a path, arranged so the stated case condition holds for `r`.
#[derive(Clone, Debug)]
pub struct ShortcutGadget<S> {
    pub graph: Graph<S>,
    pub case: GadgetCase,
    pub u: VertexId,
    pub u_prime: VertexId,
    pub r: VertexId,
    pub r_prime: VertexId,
    pub v: VertexId,
    pub v_prime: VertexId,
    pub expectation: GadgetExpectation<S>,
}

pub fn gen_shortcut_gadget<S: Scalar>(case: GadgetCase) -> ShortcutGadget<S> {
    let w = |v: i64| S::from_int(v);
    match case {
        GadgetCase::EarlyReentry => {
            // s u u' r r' y v v' t = 0..9; d0(u',r) = 0 < delta_r = 1.
            let graph = Graph::build(
                9,
                &[
                    (0, 1, w(1)),
                    (1, 2, w(-3)),
                    (2, 3, w(0)),
                    (3, 4, w(-5)),
                    (4, 5, w(4)),
                    (5, 6, w(4)),
                    (6, 7, w(-2)),
                    (7, 8, w(1)),
                ],
            )
            .unwrap();
            ShortcutGadget {
                graph,
                case,
                u: 1,
                u_prime: 2,
                r: 3,
                r_prime: 4,
                v: 6,
                v_prime: 7,
                expectation: GadgetExpectation::SingleFrozenEdge {
                    src: 1,
                    dst: 4,
                    // Segment u -> u' -> r -> r' weighs -3 + 0 - 5.
                    max_weight: w(-8),
                },
            }
        }
        GadgetCase::LateExit => {
            // s u u' x r r' v v' t q = 0..10; d^-(r,v) = -5 < -delta_r = -4.
            let graph = Graph::build(
                10,
                &[
                    (0, 1, w(1)),
                    (1, 2, w(-3)),
                    (2, 3, w(3)),
                    (3, 4, w(4)),
                    (4, 5, w(-5)),
                    (5, 6, w(0)),
                    (6, 7, w(-2)),
                    (7, 8, w(1)),
                    (9, 4, w(0)),
                ],
            )
            .unwrap();
            ShortcutGadget {
                graph,
                case,
                u: 1,
                u_prime: 2,
                r: 4,
                r_prime: 5,
                v: 6,
                v_prime: 7,
                expectation: GadgetExpectation::SingleFrozenEdge {
                    src: 4,
                    dst: 7,
                    // Segment r -> r' -> v -> v' weighs -5 + 0 - 2.
                    max_weight: w(-7),
                },
            }
        }
        GadgetCase::BalancedDetour => {
            // s u u' x r r' y v v' t = 0..10; d0(u',r) = 4 >= delta_r = 2
            // and d^-(r,v) = 1 >= -2; detour enters at x, exits at y.
            let graph = Graph::build(
                10,
                &[
                    (0, 1, w(1)),
                    (1, 2, w(-1)),
                    (2, 3, w(2)),
                    (3, 4, w(2)),
                    (4, 5, w(-3)),
                    (5, 6, w(2)),
                    (6, 7, w(2)),
                    (7, 8, w(-1)),
                    (8, 9, w(1)),
                ],
            )
            .unwrap();
            ShortcutGadget {
                graph,
                case,
                u: 1,
                u_prime: 2,
                r: 4,
                r_prime: 5,
                v: 7,
                v_prime: 8,
                expectation: GadgetExpectation::TwoHopViaSteiner {
                    src: 3,
                    steiner_owner: 4,
                    dst: 6,
                    // Segment x -> r -> r' -> y weighs 2 - 3 + 2.
                    max_total: w(1),
                },
            }
        }
    }
}
