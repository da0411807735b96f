//! The full solver: repeatedly split negative vertices, re-weight via a
//! recursive betweenness-reduction call, run the bidirectional searches,
//! shortcut, and unfreeze, until shortest paths need at most two frozen
//! hops; then finish with hop-bounded passes and report distances (or a
//! negative-cycle witness) on the caller's vertex ids.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::betweenness::{reduce_betweenness, BetweennessConfig, BetweennessOutcome};
use crate::bidi::bidi_dijkstra;
use crate::error::{Error, Result};
use crate::frozen::{freeze, FrozenGraph};
use crate::graph::{Graph, VertexId};
use crate::shortcut::shortcut_step;
use crate::sssp::{self, CycleWitness, Source, SsspOutcome};
use crate::transform::split_negative_vertices;
use crate::weight::{Dist, Scalar};

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// The constant scaling the base-case threshold `4 C^3 ln^3 n`.
    pub c: f64,
    /// Betweenness sample multiplier (see [`BetweennessConfig`]).
    pub sample_multiplier: u32,
    /// Hard cap on hop-reduction rounds; hit only under float pathologies.
    pub max_iterations: u32,
    pub rng_seed: u64,
    /// Force a base-case threshold instead of `4 C^3 ln^3 n`. Small values
    /// exercise the full pipeline on desk-scale graphs.
    pub base_case_override: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            c: 4.0,
            sample_multiplier: 4,
            max_iterations: 64,
            rng_seed: 0,
            base_case_override: None,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        SolverConfig { rng_seed: seed, ..Default::default() }
    }

    /// Negative-vertex count at or below which the run finishes with plain
    /// `k`-hop distances.
    pub fn base_threshold(&self, n: usize) -> usize {
        match self.base_case_override {
            Some(t) => t.max(1),
            None => {
                let ln = (n.max(1) as f64).ln();
                ((4.0 * self.c.powi(3) * ln.powi(3)).ceil() as usize).max(1)
            }
        }
    }
}

/// One recursive oracle call made during an iteration.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OracleCallRecord {
    pub child_k: usize,
    /// True when sampling failed to shrink the instance and the child was
    /// solved with the hop-bounded base case instead of recursing further.
    pub forced_base: bool,
    pub child_depth: usize,
    pub found_cycle: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub b: f64,
    pub h_before: usize,
    pub h_after: usize,
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    pub edges_added_by_step: [usize; 4],
    pub sum_sq: u64,
    pub sum_lin: u64,
    pub oracle: OracleCallRecord,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct PhaseTimings {
    pub split_ms: f64,
    pub betweenness_ms: f64,
    pub bidi_ms: f64,
    pub shortcut_ms: f64,
    pub finish_ms: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BaseCaseRecord {
    pub k: usize,
    pub hops: usize,
}

/// Observability record for one solve: per-iteration structure plus
/// recursion depth and wall time per phase.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct RunTrace {
    pub iterations: Vec<IterationRecord>,
    pub base_case: Option<BaseCaseRecord>,
    pub recursion_depth: usize,
    pub timings: PhaseTimings,
}

enum FinishKind<S> {
    HopBounded { h: usize },
    Cycle(CycleWitness<S>),
}

/// A preprocessed instance: the final graph plus how to finish a source.
pub struct PreparedSolver<S> {
    input: Graph<S>,
    fg: FrozenGraph<S>,
    finish: FinishKind<S>,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn count_negative_vertices<S: Scalar>(g: &Graph<S>) -> usize {
    let mut neg = vec![false; g.n()];
    for e in g.edges() {
        if e.weight.is_negative() {
            neg[e.src] = true;
        }
    }
    neg.into_iter().filter(|&b| b).count()
}

/// Solve single-source shortest paths from `source` on `g`.
pub fn solve<S: Scalar>(
    g: &Graph<S>,
    source: Source,
    cfg: &SolverConfig,
) -> Result<(SsspOutcome<S>, RunTrace)> {
    let (prepared, mut trace) = prepare(g, cfg)?;
    let t = Instant::now();
    let outcome = finish_source(&prepared, source)?;
    trace.timings.finish_ms += ms(t);
    Ok((outcome, trace))
}

/// Solve for several sources, reusing one preprocessed final graph; each
/// outcome is consistent with an independent [`solve`] call.
pub fn solve_multi_source<S: Scalar>(
    g: &Graph<S>,
    sources: &[VertexId],
    cfg: &SolverConfig,
) -> Result<(Vec<SsspOutcome<S>>, RunTrace)> {
    let (prepared, mut trace) = prepare(g, cfg)?;
    let t = Instant::now();
    let outcomes = sources
        .iter()
        .map(|&s| finish_source(&prepared, Source::Vertex(s)))
        .collect::<Result<Vec<_>>>()?;
    trace.timings.finish_ms += ms(t);
    Ok((outcomes, trace))
}

/// Run the hop-reduction loop; source-independent.
fn prepare<S: Scalar>(
    g: &Graph<S>,
    cfg: &SolverConfig,
) -> Result<(PreparedSolver<S>, RunTrace)> {
    let input = g.with_identity_lifts();
    let mut fg = freeze(input.clone());
    let mut trace = RunTrace::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut h = fg.k();
    let mut iterations = 0u32;

    let finish = loop {
        let k = fg.k();
        let threshold = cfg.base_threshold(fg.graph().n());
        if k <= threshold {
            trace.base_case = Some(BaseCaseRecord { k, hops: k });
            break FinishKind::HopBounded { h: k };
        }
        if h <= 2 {
            break FinishKind::HopBounded { h: 2 };
        }
        if iterations >= cfg.max_iterations {
            return Err(Error::MaxIterations { iterations, trace: Box::new(trace) });
        }
        iterations += 1;
        let h_before = h;
        let vertices_before = fg.graph().n();
        let edges_before = fg.graph().num_edges();

        let t = Instant::now();
        let (split, _map) = split_negative_vertices(fg);
        fg = split;
        trace.timings.split_ms += ms(t);

        // k is recomputed each round; b follows from the current k and the
        // same threshold that defines the base case.
        let b = k as f64 / threshold as f64;
        let bw_seed = rng.gen::<u64>();
        let child_seed = rng.gen::<u64>();
        let parent_k = k;
        let mut oracle_record = OracleCallRecord {
            child_k: 0,
            forced_base: false,
            child_depth: 0,
            found_cycle: false,
        };
        let t = Instant::now();
        let bw_cfg = BetweennessConfig {
            b,
            sample_multiplier: cfg.sample_multiplier,
            rng_seed: bw_seed,
        };
        let run = reduce_betweenness(&fg, &bw_cfg, |subgraph: &Graph<S>| {
            let child_k = count_negative_vertices(subgraph);
            // Sampling that fails to shrink the instance would recurse
            // forever; solve such a child with the base case directly.
            let forced = child_k >= parent_k;
            let child_cfg = SolverConfig {
                rng_seed: child_seed,
                base_case_override: if forced {
                    Some(usize::MAX)
                } else {
                    cfg.base_case_override
                },
                ..cfg.clone()
            };
            let (child, child_trace) = prepare(subgraph, &child_cfg)?;
            let outcome = finish_source(&child, Source::SuperSource)?;
            oracle_record = OracleCallRecord {
                child_k,
                forced_base: forced,
                child_depth: child_trace.recursion_depth + 1,
                found_cycle: matches!(outcome, SsspOutcome::NegativeCycle(_)),
            };
            Ok(outcome)
        })?;
        trace.timings.betweenness_ms += ms(t);
        trace.recursion_depth = trace.recursion_depth.max(oracle_record.child_depth);

        let phi = match run.outcome {
            BetweennessOutcome::NegativeCycle(w) => {
                trace.iterations.push(IterationRecord {
                    k,
                    b,
                    h_before,
                    h_after: h,
                    vertices_before,
                    vertices_after: fg.graph().n(),
                    edges_before,
                    edges_after: fg.graph().num_edges(),
                    edges_added_by_step: [0; 4],
                    sum_sq: 0,
                    sum_lin: 0,
                    oracle: oracle_record,
                });
                break FinishKind::Cycle(w);
            }
            BetweennessOutcome::Potential(phi) => phi,
        };
        fg = fg.apply_potential(&phi)?;

        let t = Instant::now();
        let mut bidi = BTreeMap::new();
        for &r in fg.negative_vertices() {
            bidi.insert(r, bidi_dijkstra(&fg, r));
        }
        trace.timings.bidi_ms += ms(t);

        let t = Instant::now();
        let (shortcutted, report) = shortcut_step(fg, &bidi)?;
        fg = shortcutted;
        trace.timings.shortcut_ms += ms(t);

        h -= h / 3;
        fg = fg.unfreeze();

        trace.iterations.push(IterationRecord {
            k,
            b,
            h_before,
            h_after: h,
            vertices_before,
            vertices_after: fg.graph().n(),
            edges_before,
            edges_after: fg.graph().num_edges(),
            edges_added_by_step: report.edges_added_by_step,
            sum_sq: report.sum_sq,
            sum_lin: report.sum_lin,
            oracle: oracle_record,
        });
    };
    Ok((PreparedSolver { input, fg, finish }, trace))
}

/// Finish one source on the preprocessed graph: seed the hop-bounded run
/// with the cumulative-potential offsets so reported distances are exact
/// for the caller's weights, then project to the caller's vertex ids.
fn finish_source<S: Scalar>(p: &PreparedSolver<S>, source: Source) -> Result<SsspOutcome<S>> {
    let n_input = p.input.n();
    let h = match &p.finish {
        FinishKind::Cycle(w) => {
            let lifted = sssp::lift_cycle_to_base(p.fg.graph(), w, &p.input)?;
            return Ok(SsspOutcome::NegativeCycle(lifted));
        }
        FinishKind::HopBounded { h } => *h,
    };
    let cum = p.fg.cumulative_phi();
    let seeds: Vec<(VertexId, S)> = match source {
        Source::Vertex(s) => {
            if s >= n_input {
                return Err(Error::SourceOutOfRange { v: s, n: n_input });
            }
            vec![(s, cum[s].negate())]
        }
        Source::SuperSource => (0..n_input).map(|v| (v, cum[v].negate())).collect(),
    };
    let labels = sssp::seed_labels(p.fg.graph().n(), &seeds);
    match sssp::hop_finish_seeded(&p.fg, labels, h, false)? {
        SsspOutcome::Distances { dist, .. } => {
            let reported: Vec<Dist<S>> =
                (0..n_input).map(|t| dist[t].plus(&cum[t])).collect();
            let potential = match source {
                Source::SuperSource => Some(
                    reported
                        .iter()
                        .map(|d| d.expect_finite().clone())
                        .collect(),
                ),
                Source::Vertex(_) => None,
            };
            Ok(SsspOutcome::Distances { dist: reported, potential })
        }
        SsspOutcome::NegativeCycle(w) => {
            let lifted = sssp::lift_cycle_to_base(p.fg.graph(), &w, &p.input)?;
            Ok(SsspOutcome::NegativeCycle(lifted))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_planted_cycle, gen_potential_shifted};
    use crate::sssp::bellman_ford;
    use crate::weight::Rat;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    fn assert_matches_bf(g: &Graph<Rat>, source: usize, cfg: &SolverConfig) {
        let (outcome, _) = solve(g, Source::Vertex(source), cfg).unwrap();
        let expect = bellman_ford(g, Source::Vertex(source));
        match (outcome, expect) {
            (SsspOutcome::Distances { dist: a, .. }, SsspOutcome::Distances { dist: b, .. }) => {
                assert_eq!(a, b);
            }
            (SsspOutcome::NegativeCycle(c), SsspOutcome::NegativeCycle(_)) => {
                assert!(c.verify(g));
            }
            (a, b) => panic!("outcome mismatch: {a:?} vs {b:?}"),
        }
    }

    #[test]
    fn all_nonnegative_is_plain_dijkstra_with_zero_iterations() {
        let g = Graph::build(3, &[(0, 1, r(2)), (1, 2, r(3))]).unwrap();
        let (outcome, trace) = solve(&g, Source::Vertex(0), &SolverConfig::default()).unwrap();
        assert!(trace.iterations.is_empty());
        assert_eq!(trace.base_case.as_ref().unwrap().hops, 0);
        assert_eq!(
            outcome.distances().unwrap(),
            &[Dist::zero(), Dist::Finite(r(2)), Dist::Finite(r(5))]
        );
    }

    #[test]
    fn two_cycle_yields_weight_minus_one_witness() {
        let g = Graph::build(2, &[(0, 1, r(-2)), (1, 0, r(1))]).unwrap();
        let (outcome, _) = solve(&g, Source::Vertex(0), &SolverConfig::default()).unwrap();
        let c = outcome.cycle().expect("negative cycle");
        assert!(c.verify(&g));
        assert_eq!(c.weight, r(-1));
    }

    #[test]
    fn base_case_matches_bellman_ford_on_random_graphs() {
        for seed in 1..=25u64 {
            let g: Graph<Rat> = gen_potential_shifted(20, 60, 0.25, 8, seed);
            assert_matches_bf(&g, (seed as usize) % 20, &SolverConfig::with_seed(seed));
        }
    }

    #[test]
    fn forced_pipeline_matches_bellman_ford() {
        // A tiny base-case override pushes every instance through the
        // split / reduce / shortcut loop, recursion included.
        for seed in 1..=15u64 {
            let g: Graph<Rat> = gen_potential_shifted(18, 70, 0.35, 8, seed);
            let cfg = SolverConfig {
                base_case_override: Some(2),
                rng_seed: seed,
                ..Default::default()
            };
            assert_matches_bf(&g, (seed as usize) % 18, &cfg);
        }
    }

    #[test]
    fn forced_pipeline_detects_planted_cycles() {
        for seed in 1..=10u64 {
            let (g, _) = gen_planted_cycle::<Rat>(16, 40, 4, -3, seed);
            let cfg = SolverConfig {
                base_case_override: Some(2),
                rng_seed: seed,
                ..Default::default()
            };
            let (outcome, _) = solve(&g, Source::SuperSource, &cfg).unwrap();
            let c = outcome.cycle().expect("planted cycle must surface");
            assert!(c.verify(&g), "seed {seed}");
        }
    }

    #[test]
    fn iteration_h_tracker_shrinks_by_a_third() {
        let g: Graph<Rat> = gen_potential_shifted(20, 80, 0.4, 8, 3);
        let cfg = SolverConfig {
            base_case_override: Some(2),
            rng_seed: 3,
            ..Default::default()
        };
        let (_, trace) = solve(&g, Source::Vertex(0), &cfg).unwrap();
        for it in &trace.iterations {
            assert_eq!(it.h_after, it.h_before - it.h_before / 3);
        }
    }

    #[test]
    fn distances_are_independent_of_the_rng_seed() {
        let g: Graph<Rat> = gen_potential_shifted(16, 50, 0.35, 7, 8);
        let mut seen: Option<Vec<Dist<Rat>>> = None;
        for seed in [1u64, 99, 12345] {
            let cfg = SolverConfig {
                base_case_override: Some(2),
                rng_seed: seed,
                ..Default::default()
            };
            let (outcome, _) = solve(&g, Source::Vertex(2), &cfg).unwrap();
            let dist = outcome.distances().unwrap().to_vec();
            if let Some(prev) = &seen {
                assert_eq!(prev, &dist);
            }
            seen = Some(dist);
        }
    }

    #[test]
    fn multi_source_agrees_with_independent_solves() {
        let g: Graph<Rat> = gen_potential_shifted(14, 45, 0.3, 6, 4);
        let cfg = SolverConfig::with_seed(4);
        let sources: Vec<usize> = (0..14).collect();
        let (outcomes, _) = solve_multi_source(&g, &sources, &cfg).unwrap();
        assert_eq!(outcomes.len(), 14);
        for (s, got) in sources.iter().zip(&outcomes) {
            let (want, _) = solve(&g, Source::Vertex(*s), &cfg).unwrap();
            assert_eq!(got.distances().unwrap(), want.distances().unwrap());
        }
        let (empty, _) = solve_multi_source(&g, &[], &cfg).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn iteration_guard_reports_internal_error_with_trace() {
        let g: Graph<Rat> = gen_potential_shifted(16, 55, 0.35, 8, 2);
        let cfg = SolverConfig {
            base_case_override: Some(2),
            max_iterations: 0,
            ..Default::default()
        };
        match solve(&g, Source::Vertex(0), &cfg) {
            Err(crate::Error::MaxIterations { iterations: 0, trace }) => {
                assert!(trace.iterations.is_empty());
            }
            other => panic!("expected the guard, got {other:?}"),
        }
    }

    #[test]
    fn negative_self_loop_is_a_unit_cycle() {
        let g = Graph::build(3, &[(0, 1, r(2)), (2, 2, r(-1))]).unwrap();
        let (outcome, _) = solve(&g, Source::SuperSource, &SolverConfig::default()).unwrap();
        let c = outcome.cycle().expect("self-loop cycle");
        assert_eq!(c.vertices, vec![2]);
        assert!(c.verify(&g));
    }

    #[test]
    fn float_pipeline_tracks_the_exact_answer() {
        for seed in 1..=8u64 {
            let g: Graph<f64> = gen_potential_shifted(16, 55, 0.3, 8, seed);
            let cfg = SolverConfig {
                base_case_override: Some(2),
                rng_seed: seed,
                ..Default::default()
            };
            let (outcome, _) = solve(&g, Source::Vertex(1), &cfg).unwrap();
            let want = bellman_ford(&g, Source::Vertex(1));
            let (a, b) = (outcome.distances().unwrap(), want.distances().unwrap());
            for t in 0..g.n() {
                match (a[t].finite(), b[t].finite()) {
                    (None, None) => {}
                    (Some(x), Some(y)) => {
                        assert!((x - y).abs() <= 1e-6 * x.abs().max(y.abs()).max(1.0))
                    }
                    _ => panic!("reachability mismatch at {t}, seed {seed}"),
                }
            }
        }
    }

    #[test]
    fn super_source_distances_are_min_over_sources() {
        let g: Graph<Rat> = gen_potential_shifted(12, 40, 0.3, 6, 6);
        let cfg = SolverConfig {
            base_case_override: Some(2),
            rng_seed: 6,
            ..Default::default()
        };
        let (outcome, _) = solve(&g, Source::SuperSource, &cfg).unwrap();
        let got = outcome.distances().unwrap();
        let want = bellman_ford(&g, Source::SuperSource);
        assert_eq!(got, want.distances().unwrap());
    }
}
