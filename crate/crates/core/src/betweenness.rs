//! Sampled betweenness reduction: re-weight the graph by one recursive
//! shortest-paths call on a subgraph keeping only the frozen edges of a
//! random sample of negative vertices, so that afterwards few vertices sit
//! "between" any ordered pair.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frozen::FrozenGraph;
use crate::graph::{Graph, VertexId};
use crate::sssp::{self, CycleWitness, SsspOutcome};
use crate::weight::{Dist, Scalar};

#[derive(Clone, Debug)]
pub struct BetweennessConfig {
    /// Reduction strength: resulting betweenness should be at most `k / b`.
    pub b: f64,
    /// Sample size is `ceil(sample_multiplier * b * ln n)`, capped at `k`.
    pub sample_multiplier: u32,
    pub rng_seed: u64,
}

impl BetweennessConfig {
    pub fn new(b: f64, rng_seed: u64) -> Self {
        BetweennessConfig { b, sample_multiplier: 4, rng_seed }
    }
}

#[derive(Clone, Debug)]
pub enum BetweennessOutcome<S> {
    /// Valid potential: every non-frozen edge stays non-negative and every
    /// sampled vertex's frozen edges become non-negative.
    Potential(Vec<S>),
    /// Cycle of the frozen subgraph, hence of `fg` itself.
    NegativeCycle(CycleWitness<S>),
}

#[derive(Clone, Debug)]
pub struct BetweennessRun<S> {
    pub sample: Vec<VertexId>,
    pub outcome: BetweennessOutcome<S>,
}

/// Sample `min(k, ceil(c_s * b * ln n))` negative vertices without
/// replacement, build the auxiliary graph H from the non-frozen edges plus
/// the sampled vertices' frozen outgoing edges, and let `oracle` solve H
/// from a super-source. Expects every negative vertex to carry exactly one
/// frozen outgoing edge (the post-split state).
pub fn reduce_betweenness<S, F>(
    fg: &FrozenGraph<S>,
    cfg: &BetweennessConfig,
    mut oracle: F,
) -> Result<BetweennessRun<S>>
where
    S: Scalar,
    F: FnMut(&Graph<S>) -> Result<SsspOutcome<S>>,
{
    if cfg.b < 1.0 {
        return Err(Error::InvalidBetweennessParam { b: cfg.b });
    }
    let n = fg.graph().n();
    let k = fg.k();
    let want = (cfg.sample_multiplier as f64 * cfg.b * (n as f64).ln()).ceil() as usize;
    let size = want.min(k);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut sample: Vec<VertexId> = if size == 0 {
        Vec::new()
    } else {
        index::sample(&mut rng, k, size)
            .into_iter()
            .map(|i| fg.negative_vertices()[i])
            .collect()
    };
    sample.sort_unstable();

    let mut in_sample = vec![false; n];
    for &v in &sample {
        in_sample[v] = true;
    }
    let mut h = Graph::new_empty(n);
    for (id, e) in fg.graph().edges().iter().enumerate() {
        let keep = if fg.is_frozen(id) {
            in_sample[e.src]
        } else {
            true
        };
        if keep {
            h.push_edge(e.src, e.dst, e.weight.clone(), crate::graph::identity_lift(id))
                .expect("subgraph endpoints in range");
        }
    }

    let outcome = match oracle(&h)? {
        SsspOutcome::Distances { dist, potential } => {
            let phi = match potential {
                Some(p) => p,
                None => dist
                    .iter()
                    .map(|d| {
                        d.finite().cloned().ok_or_else(|| {
                            Error::Internal("oracle potential has unreachable vertices".into())
                        })
                    })
                    .collect::<Result<Vec<S>>>()?,
            };
            if phi.len() != n {
                return Err(Error::Internal(
                    "oracle potential length does not match the graph".into(),
                ));
            }
            BetweennessOutcome::Potential(phi)
        }
        SsspOutcome::NegativeCycle(c) => {
            let lifted = sssp::lift_cycle_to_base(&h, &c, fg.graph())?;
            BetweennessOutcome::NegativeCycle(lifted)
        }
    };
    Ok(BetweennessRun { sample, outcome })
}

/// Brute-force betweenness counts for test-scale graphs:
/// `count[s][t] = |{v : d^0(s, v) + d^-(v, t) < 0}|`. Only negative
/// vertices can ever be counted.
pub fn brute_force_betweenness<S: Scalar>(fg: &FrozenGraph<S>) -> Vec<Vec<u32>> {
    let n = fg.graph().n();
    // d^0(s, v) for all s via one reverse table per v would be n runs
    // either way; run forward zero-hop tables from every s.
    let d0: Vec<Vec<Dist<S>>> = (0..n)
        .map(|s| sssp::hop_sssp(fg, s, 0).dist)
        .collect();
    let dminus: Vec<(VertexId, Vec<Dist<S>>)> = fg
        .negative_vertices()
        .iter()
        .map(|&v| (v, sssp::d_minus_from(fg, v)))
        .collect();
    let mut count = vec![vec![0u32; n]; n];
    for s in 0..n {
        for (v, dm) in &dminus {
            let through = &d0[s][*v];
            if through.is_inf() {
                continue;
            }
            for t in 0..n {
                if through.add_dist(&dm[t]).is_negative() {
                    count[s][t] += 1;
                }
            }
        }
    }
    count
}

/// Brute-force `h`-hop betweenness:
/// `count[u][v] = |{x : d^h(u, x) + d^h(x, v) < 0}|`.
pub fn brute_force_hop_betweenness<S: Scalar>(fg: &FrozenGraph<S>, h: usize) -> Vec<Vec<u32>> {
    let n = fg.graph().n();
    let dh: Vec<Vec<Dist<S>>> = (0..n).map(|s| sssp::hop_sssp(fg, s, h).dist).collect();
    let mut count = vec![vec![0u32; n]; n];
    for u in 0..n {
        for (x, via) in dh.iter().enumerate() {
            if dh[u][x].is_inf() {
                continue;
            }
            for v in 0..n {
                if dh[u][x].add_dist(&via[v]).is_negative() {
                    count[u][v] += 1;
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frozen::freeze;
    use crate::generators::gen_potential_shifted;
    use crate::sssp::{bellman_ford, Source};
    use crate::transform::split_negative_vertices;
    use crate::weight::Rat;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    fn bf_oracle(g: &Graph<Rat>) -> Result<SsspOutcome<Rat>> {
        Ok(bellman_ford(g, Source::SuperSource))
    }

    #[test]
    fn no_negative_vertices_yields_plain_potential() {
        let fg = freeze(Graph::build(3, &[(0, 1, r(2)), (1, 2, r(1))]).unwrap());
        let run = reduce_betweenness(&fg, &BetweennessConfig::new(2.0, 1), bf_oracle).unwrap();
        assert!(run.sample.is_empty());
        match run.outcome {
            BetweennessOutcome::Potential(phi) => {
                let fg2 = fg.clone().apply_potential(&phi).unwrap();
                assert!(fg2.graph().edges().iter().all(|e| e.weight.is_nonneg()));
            }
            _ => panic!("no cycle possible"),
        }
        let counts = brute_force_betweenness(&fg);
        assert!(counts.iter().flatten().all(|&c| c == 0));
    }

    #[test]
    fn rejects_b_below_one() {
        let fg = freeze(Graph::build(1, &[]).unwrap());
        let err =
            reduce_betweenness(&fg, &BetweennessConfig::new(0.5, 1), bf_oracle).unwrap_err();
        assert!(matches!(err, Error::InvalidBetweennessParam { .. }));
    }

    #[test]
    fn fully_sampled_cycle_is_reported_in_own_edges() {
        // Negative 2-cycle; the sample covers all negative vertices at this
        // scale, so the subgraph contains the cycle.
        let g = Graph::build(2, &[(0, 1, r(-2)), (1, 0, r(1))]).unwrap();
        let (fg, _) = split_negative_vertices(freeze(g));
        let run = reduce_betweenness(&fg, &BetweennessConfig::new(1.0, 3), bf_oracle).unwrap();
        match run.outcome {
            BetweennessOutcome::NegativeCycle(c) => {
                assert!(c.verify(fg.graph()));
            }
            _ => panic!("expected cycle"),
        }
    }

    #[test]
    fn potential_is_valid_and_neutralizes_sampled_vertices() {
        for seed in 0..8u64 {
            let g: Graph<Rat> = gen_potential_shifted(16, 50, 0.3, 7, seed);
            let (fg, _) = split_negative_vertices(freeze(g));
            let run =
                reduce_betweenness(&fg, &BetweennessConfig::new(2.0, seed), bf_oracle).unwrap();
            let phi = match run.outcome {
                BetweennessOutcome::Potential(phi) => phi,
                _ => panic!("shifted graphs are cycle-free"),
            };
            // Validity, edge by edge.
            for (id, e) in fg.graph().edges().iter().enumerate() {
                if !fg.is_frozen(id) {
                    let w = e.weight.plus(&phi[e.src]).minus(&phi[e.dst]);
                    assert!(w.is_nonneg(), "edge {id} seed {seed}");
                }
            }
            let fg2 = fg.apply_potential(&phi).unwrap();
            // Every sampled vertex has non-negative first-edge reach.
            for &x in &run.sample {
                let dm = sssp::d_minus_from(&fg2, x);
                for t in 0..fg2.graph().n() {
                    if t == x {
                        continue;
                    }
                    assert!(
                        !dm[t].is_negative(),
                        "d^-({x},{t}) negative after reweight, seed {seed}"
                    );
                }
            }
        }
    }

    #[test]
    fn betweenness_only_counts_negative_vertices() {
        for seed in 20..26u64 {
            let g: Graph<Rat> = gen_potential_shifted(12, 30, 0.35, 6, seed);
            let fg = freeze(g);
            let counts = brute_force_betweenness(&fg);
            let k = fg.k() as u32;
            assert!(counts.iter().flatten().all(|&c| c <= k));
        }
    }

    #[test]
    fn single_between_vertex_example() {
        // (s,v,0) free and (v,t,-1) frozen: v is between (s,t).
        let fg = freeze(Graph::build(3, &[(0, 1, r(0)), (1, 2, r(-1))]).unwrap());
        let counts = brute_force_betweenness(&fg);
        assert!(counts[0][2] >= 1);
    }

    #[test]
    fn ordering_of_betweenness_sums_survives_reweighting() {
        let g: Graph<Rat> = gen_potential_shifted(12, 40, 0.3, 6, 9);
        let (fg, _) = split_negative_vertices(freeze(g));
        let n = fg.graph().n();
        let sums = |fg: &FrozenGraph<Rat>| -> Vec<Vec<Vec<Dist<Rat>>>> {
            let dm: Vec<Vec<Dist<Rat>>> = (0..n)
                .map(|v| {
                    if fg.is_negative_vertex(v) {
                        sssp::d_minus_from(fg, v)
                    } else {
                        vec![Dist::Inf; n]
                    }
                })
                .collect();
            (0..n)
                .map(|s| {
                    let d0 = sssp::hop_sssp(fg, s, 0).dist;
                    (0..n)
                        .map(|t| (0..n).map(|v| d0[v].add_dist(&dm[v][t])).collect())
                        .collect()
                })
                .collect()
        };
        let before = sums(&fg);
        let run = reduce_betweenness(&fg, &BetweennessConfig::new(2.0, 4), bf_oracle).unwrap();
        let phi = match run.outcome {
            BetweennessOutcome::Potential(p) => p,
            _ => unreachable!(),
        };
        let fg2 = fg.apply_potential(&phi).unwrap();
        let after = sums(&fg2);
        // Every pairwise comparison between candidate vertices is the same
        // before and after: the sums shift by the constant phi(s) - phi(t).
        for s in 0..n {
            for t in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(
                            before[s][t][a].cmp_total(&before[s][t][b]),
                            after[s][t][a].cmp_total(&after[s][t][b])
                        );
                    }
                }
            }
        }
    }
}
