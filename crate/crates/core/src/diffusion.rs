//! Independent cascade diffusion.
//!
//! Three views of the same process live here:
//!
//! * [`simulate_icm`] — one forward simulation driven by an explicit RNG
//!   stream. Within a round, newly active nodes attempt their outgoing
//!   edges in ascending node id then edge insertion order; that fixes RNG
//!   consumption, the final active set does not depend on it.
//! * [`enumerate_live_edges`] — the exact view. Each edge is kept with its
//!   probability independently; reachability from the seeds in the kept
//!   subgraph is distributed exactly as the cascade's final active set.
//!   Edges with probability 0 or 1 are fixed, only the `0 < p < 1` edges
//!   are enumerated.
//! * [`activation_probabilities`] — per-node `Pr(v` active`)`, either exact
//!   (by enumeration) or Monte Carlo with one derived RNG stream per sample
//!   index, so serial and fanned-out runs agree bit for bit.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::exact::Ratio;
use crate::graph::{Graph, NodeId};
use crate::rng::stream_rng;

/// Default cap on enumerated stochastic edges (2^20 outcomes).
pub const DEFAULT_ENUM_LIMIT: usize = 20;

/// Default Monte Carlo sample count.
pub const DEFAULT_SAMPLES: u32 = 10_000;

/// Half-width multiplier for 95% confidence intervals.
const Z_95: f64 = 1.96;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffusionError {
    SeedOutOfRange { node: NodeId, node_count: u32 },
    EnumerationLimitExceeded { stochastic_edges: usize, limit: usize },
}

impl fmt::Display for DiffusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffusionError::SeedOutOfRange { node, node_count } => {
                write!(f, "seed {node} out of range (node count {node_count})")
            }
            DiffusionError::EnumerationLimitExceeded {
                stochastic_edges,
                limit,
            } => write!(
                f,
                "{stochastic_edges} stochastic edges exceed the exact-enumeration limit {limit}; \
                 use Monte Carlo estimation"
            ),
        }
    }
}

/// Which estimator to run and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Exact,
    MonteCarlo { samples: u32, master_seed: u64 },
}

/// Estimator plus the work limit guarding exact enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimatorConfig {
    pub estimator: Estimator,
    pub max_enum_edges: usize,
}

impl EstimatorConfig {
    pub fn exact() -> Self {
        EstimatorConfig {
            estimator: Estimator::Exact,
            max_enum_edges: DEFAULT_ENUM_LIMIT,
        }
    }

    pub fn monte_carlo(samples: u32, master_seed: u64) -> Self {
        EstimatorConfig {
            estimator: Estimator::MonteCarlo {
                samples,
                master_seed,
            },
            max_enum_edges: DEFAULT_ENUM_LIMIT,
        }
    }
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig::exact()
    }
}

/// One realization of the cascade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationSample {
    /// Eventually active nodes, seeds included.
    pub active: BTreeSet<NodeId>,
    /// Propagation rounds that activated at least one new node.
    pub steps: u32,
}

/// One element of the live-edge sample space.
#[derive(Debug, Clone, PartialEq)]
pub struct LiveEdgeOutcome {
    /// Kept edge indices into [`Graph::edges`], ascending.
    pub kept_edges: Vec<usize>,
    /// Exact probability of this outcome.
    pub probability: Ratio,
}

/// Per-node activation probabilities for a fixed seed set.
#[derive(Debug, Clone, PartialEq)]
pub enum ActivationEstimate {
    Exact {
        probs: Vec<Ratio>,
    },
    MonteCarlo {
        probs: Vec<f64>,
        /// Per-node 95% confidence half-width.
        half_width: Vec<f64>,
        samples: u32,
        master_seed: u64,
    },
}

impl ActivationEstimate {
    pub fn node_count(&self) -> usize {
        match self {
            ActivationEstimate::Exact { probs } => probs.len(),
            ActivationEstimate::MonteCarlo { probs, .. } => probs.len(),
        }
    }

    pub fn prob_f64(&self, v: NodeId) -> f64 {
        match self {
            ActivationEstimate::Exact { probs } => crate::exact::ratio_to_f64(&probs[v as usize]),
            ActivationEstimate::MonteCarlo { probs, .. } => probs[v as usize],
        }
    }

    /// Half-width of the per-node estimate; zero in exact mode.
    pub fn half_width(&self, v: NodeId) -> f64 {
        match self {
            ActivationEstimate::Exact { .. } => 0.0,
            ActivationEstimate::MonteCarlo { half_width, .. } => half_width[v as usize],
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ActivationEstimate::Exact { .. })
    }
}

pub(crate) fn check_seeds(g: &Graph, seeds: &[NodeId]) -> Result<(), DiffusionError> {
    match seeds.iter().find(|&&s| !g.contains_node(s)) {
        Some(&node) => Err(DiffusionError::SeedOutOfRange {
            node,
            node_count: g.node_count(),
        }),
        None => Ok(()),
    }
}

/// Runs one cascade realization from `seeds` using `rng`.
///
/// Attempts on already-active targets are skipped without consuming
/// randomness; each stochastic edge out of a newly active node draws at
/// most once.
pub fn simulate_icm(
    g: &Graph,
    seeds: &[NodeId],
    rng: &mut impl rand::Rng,
) -> Result<ActivationSample, DiffusionError> {
    check_seeds(g, seeds)?;
    let mut active = vec![false; g.node_count() as usize];
    let steps = simulate_into(g, seeds, rng, &mut active);
    let active = active
        .iter()
        .enumerate()
        .filter_map(|(v, &a)| a.then_some(v as NodeId))
        .collect();
    Ok(ActivationSample { active, steps })
}

/// Simulation core over a caller-provided activity mask (`active` must be
/// all-false on entry and has one slot per node). Returns the step count.
pub(crate) fn simulate_into(
    g: &Graph,
    seeds: &[NodeId],
    rng: &mut impl rand::Rng,
    active: &mut [bool],
) -> u32 {
    let mut frontier: Vec<NodeId> = Vec::new();
    for &s in seeds {
        if !active[s as usize] {
            active[s as usize] = true;
            frontier.push(s);
        }
    }
    frontier.sort_unstable();
    let mut steps = 0;
    let mut next: Vec<NodeId> = Vec::new();
    while !frontier.is_empty() {
        next.clear();
        for &u in &frontier {
            for &(v, p) in g.out_neighbors(u).expect("frontier node is in range") {
                if !active[v as usize] && !p.is_zero() && rng.gen_bool(p.as_f64()) {
                    active[v as usize] = true;
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        steps += 1;
        next.sort_unstable();
        core::mem::swap(&mut frontier, &mut next);
    }
    steps
}

/// Classification of the graph's edges for exact enumeration, plus
/// meet-in-the-middle numerator tables over the stochastic edges.
pub(crate) struct LiveEdgeSpace {
    /// Edge index -> stochastic slot, or `usize::MAX` for fixed edges.
    slot_of_edge: Vec<usize>,
    /// Edge index -> kept unconditionally (p = 1).
    kept_fixed: Vec<bool>,
    /// Stochastic slot -> edge index.
    stochastic: Vec<usize>,
    low: Vec<BigUint>,
    high: Vec<BigUint>,
    low_bits: u32,
    denom: BigUint,
    /// Out-adjacency annotated with edge indices.
    adj: Vec<Vec<(NodeId, usize)>>,
}

impl LiveEdgeSpace {
    pub(crate) fn new(g: &Graph, limit: usize) -> Result<Self, DiffusionError> {
        let stochastic: Vec<usize> = g
            .edges()
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.prob.is_stochastic().then_some(i))
            .collect();
        if stochastic.len() > limit {
            return Err(DiffusionError::EnumerationLimitExceeded {
                stochastic_edges: stochastic.len(),
                limit,
            });
        }
        let mut slot_of_edge = vec![usize::MAX; g.edge_count()];
        for (slot, &e) in stochastic.iter().enumerate() {
            slot_of_edge[e] = slot;
        }
        let kept_fixed = g.edges().iter().map(|e| e.prob.is_one()).collect();

        // Outcome probability numerators factor into products over the two
        // slot halves; one multiplication then recovers any outcome.
        let m = stochastic.len();
        let low_bits = (m / 2) as u32;
        let build = |slots: &[usize]| -> Vec<BigUint> {
            let mut table = vec![BigUint::one()];
            for &e in slots {
                let p = g.edges()[e].prob;
                let kept = BigUint::from(p.numer());
                let dropped = BigUint::from(p.denom() - p.numer());
                let mut next = Vec::with_capacity(table.len() * 2);
                for v in &table {
                    next.push(v * &dropped);
                }
                for v in &table {
                    next.push(v * &kept);
                }
                table = next;
            }
            table
        };
        let low = build(&stochastic[..low_bits as usize]);
        let high = build(&stochastic[low_bits as usize..]);
        let denom = stochastic
            .iter()
            .fold(BigUint::one(), |acc, &e| acc * g.edges()[e].prob.denom());

        let mut adj: Vec<Vec<(NodeId, usize)>> = vec![Vec::new(); g.node_count() as usize];
        for (i, e) in g.edges().iter().enumerate() {
            adj[e.source as usize].push((e.target, i));
        }

        Ok(LiveEdgeSpace {
            slot_of_edge,
            kept_fixed,
            stochastic,
            low,
            high,
            low_bits,
            denom,
            adj,
        })
    }

    pub(crate) fn outcome_count(&self) -> u64 {
        1u64 << self.stochastic.len()
    }

    pub(crate) fn denom(&self) -> &BigUint {
        &self.denom
    }

    /// Probability numerator of `mask` over the common denominator.
    pub(crate) fn weight_numer(&self, mask: u64) -> BigUint {
        let low_mask = (1u64 << self.low_bits) - 1;
        &self.low[(mask & low_mask) as usize] * &self.high[(mask >> self.low_bits) as usize]
    }

    fn edge_kept(&self, edge: usize, mask: u64) -> bool {
        let slot = self.slot_of_edge[edge];
        if slot == usize::MAX {
            self.kept_fixed[edge]
        } else {
            mask & (1u64 << slot) != 0
        }
    }

    /// Marks `visited` with the nodes reachable from `seeds` under `mask`.
    /// `visited` must be all-false on entry; `stack` is scratch.
    pub(crate) fn reach_into(
        &self,
        seeds: &[NodeId],
        mask: u64,
        visited: &mut [bool],
        stack: &mut Vec<NodeId>,
    ) {
        stack.clear();
        for &s in seeds {
            if !visited[s as usize] {
                visited[s as usize] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &(v, e) in &self.adj[u as usize] {
                if !visited[v as usize] && self.edge_kept(e, mask) {
                    visited[v as usize] = true;
                    stack.push(v);
                }
            }
        }
    }

    fn kept_edges(&self, mask: u64) -> Vec<usize> {
        (0..self.slot_of_edge.len())
            .filter(|&e| self.edge_kept(e, mask))
            .collect()
    }
}

/// Iterator over the full live-edge sample space.
pub struct LiveEdgeEnumeration {
    space: LiveEdgeSpace,
    next_mask: u64,
}

impl Iterator for LiveEdgeEnumeration {
    type Item = LiveEdgeOutcome;

    fn next(&mut self) -> Option<LiveEdgeOutcome> {
        if self.next_mask >= self.space.outcome_count() {
            return None;
        }
        let mask = self.next_mask;
        self.next_mask += 1;
        let numer = self.space.weight_numer(mask);
        Some(LiveEdgeOutcome {
            kept_edges: self.space.kept_edges(mask),
            probability: Ratio::new(
                BigInt::from(numer),
                BigInt::from(self.space.denom.clone()),
            ),
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.space.outcome_count() - self.next_mask) as usize;
        (rem, Some(rem))
    }
}

/// Enumerates all `2^m` outcomes over the `m` stochastic edges. Fails when
/// `m` exceeds `limit`, signalling the caller to fall back to Monte Carlo.
pub fn enumerate_live_edges(
    g: &Graph,
    limit: usize,
) -> Result<LiveEdgeEnumeration, DiffusionError> {
    Ok(LiveEdgeEnumeration {
        space: LiveEdgeSpace::new(g, limit)?,
        next_mask: 0,
    })
}

/// Estimates `Pr(v` active`)` for every node under `seeds`.
pub fn activation_probabilities(
    g: &Graph,
    seeds: &[NodeId],
    cfg: &EstimatorConfig,
) -> Result<ActivationEstimate, DiffusionError> {
    check_seeds(g, seeds)?;
    match cfg.estimator {
        Estimator::Exact => {
            let space = LiveEdgeSpace::new(g, cfg.max_enum_edges)?;
            Ok(exact_activation(g, seeds, &space))
        }
        Estimator::MonteCarlo {
            samples,
            master_seed,
        } => Ok(mc_activation(g, seeds, samples, master_seed)),
    }
}

fn exact_activation(g: &Graph, seeds: &[NodeId], space: &LiveEdgeSpace) -> ActivationEstimate {
    let n = g.node_count() as usize;
    let mut accum = vec![BigUint::default(); n];
    let mut visited = vec![false; n];
    let mut stack = Vec::new();
    for mask in 0..space.outcome_count() {
        let numer = space.weight_numer(mask);
        space.reach_into(seeds, mask, &mut visited, &mut stack);
        for v in 0..n {
            if visited[v] {
                accum[v] += &numer;
                visited[v] = false;
            }
        }
    }
    let denom = BigInt::from(space.denom.clone());
    let probs = accum
        .into_iter()
        .map(|num| Ratio::new(BigInt::from(num), denom.clone()))
        .collect();
    ActivationEstimate::Exact { probs }
}

fn mc_activation(g: &Graph, seeds: &[NodeId], samples: u32, master_seed: u64) -> ActivationEstimate {
    let n = g.node_count() as usize;
    let mut counts = vec![0u64; n];
    let mut active = vec![false; n];
    for i in 0..samples {
        let mut rng = stream_rng(master_seed, i as u64);
        simulate_into(g, seeds, &mut rng, &mut active);
        for v in 0..n {
            if active[v] {
                counts[v] += 1;
                active[v] = false;
            }
        }
    }
    let r = samples.max(1) as f64;
    let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / r).collect();
    let half_width = probs
        .iter()
        .map(|&p| Z_95 * libm::sqrt(p * (1.0 - p) / r))
        .collect();
    ActivationEstimate::MonteCarlo {
        probs,
        half_width,
        samples,
        master_seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, Prob};
    use crate::graph::Edge;

    fn graph(n: u32, edges: &[(u32, u32, &str)]) -> Graph {
        Graph::new(
            n,
            edges
                .iter()
                .map(|&(u, v, p)| Edge {
                    source: u,
                    target: v,
                    prob: Prob::from_decimal_str(p).unwrap(),
                })
                .collect(),
        )
        .unwrap()
    }

    fn diamond() -> Graph {
        graph(
            4,
            &[(0, 1, "0.5"), (0, 2, "0.5"), (1, 3, "0.5"), (2, 3, "0.5")],
        )
    }

    #[test]
    fn deterministic_cascade_reaches_everything_reachable() {
        let g = graph(4, &[(0, 1, "1"), (1, 2, "1"), (3, 0, "1")]);
        let mut rng = stream_rng(0, 0);
        let s = simulate_icm(&g, &[0], &mut rng).unwrap();
        assert_eq!(s.active, BTreeSet::from([0, 1, 2]));
        assert_eq!(s.steps, 2);
    }

    #[test]
    fn zero_probability_edges_never_fire() {
        let g = graph(3, &[(0, 1, "0"), (1, 2, "0")]);
        let mut rng = stream_rng(0, 0);
        let s = simulate_icm(&g, &[0, 2], &mut rng).unwrap();
        assert_eq!(s.active, BTreeSet::from([0, 2]));
        assert_eq!(s.steps, 0);
    }

    #[test]
    fn seed_out_of_range_is_an_error() {
        let g = graph(2, &[(0, 1, "1")]);
        let mut rng = stream_rng(0, 0);
        assert_eq!(
            simulate_icm(&g, &[5], &mut rng),
            Err(DiffusionError::SeedOutOfRange {
                node: 5,
                node_count: 2
            })
        );
    }

    #[test]
    fn single_edge_frequency_matches_probability() {
        // Binomial(1e5, 0.5): observed frequency within 0.01 of 0.5 with
        // overwhelming probability; the master seed pins the outcome.
        let g = graph(2, &[(0, 1, "0.5")]);
        let mut hits = 0u32;
        for i in 0..100_000u64 {
            let mut rng = stream_rng(42, i);
            let s = simulate_icm(&g, &[0], &mut rng).unwrap();
            if s.active.contains(&1) {
                hits += 1;
            }
        }
        let freq = hits as f64 / 100_000.0;
        assert!((freq - 0.5).abs() < 0.01, "freq = {freq}");
    }

    #[test]
    fn single_stochastic_edge_enumerates_two_outcomes() {
        let g = graph(2, &[(0, 1, "0.5")]);
        let outcomes: Vec<_> = enumerate_live_edges(&g, 20).unwrap().collect();
        assert_eq!(outcomes.len(), 2);
        assert_eq!(outcomes[0].probability, ratio(1, 2));
        assert_eq!(outcomes[1].probability, ratio(1, 2));
        assert_eq!(outcomes[0].kept_edges, Vec::<usize>::new());
        assert_eq!(outcomes[1].kept_edges, vec![0]);
    }

    #[test]
    fn two_edge_outcome_probabilities_are_products() {
        let g = graph(3, &[(0, 1, "0.3"), (0, 2, "0.6")]);
        let outcomes: Vec<_> = enumerate_live_edges(&g, 20).unwrap().collect();
        assert_eq!(outcomes.len(), 4);
        // mask bit 0 = first edge kept, bit 1 = second edge kept
        assert_eq!(outcomes[0].probability, ratio(28, 100)); // drop, drop
        assert_eq!(outcomes[1].probability, ratio(12, 100)); // keep, drop
        assert_eq!(outcomes[2].probability, ratio(42, 100)); // drop, keep
        assert_eq!(outcomes[3].probability, ratio(18, 100)); // keep, keep
    }

    #[test]
    fn outcome_probabilities_sum_to_one_exactly() {
        let g = graph(
            5,
            &[
                (0, 1, "0.3"),
                (1, 2, "0.25"),
                (2, 3, "1"),
                (3, 4, "0.8"),
                (0, 4, "0"),
            ],
        );
        let total: Ratio = enumerate_live_edges(&g, 20)
            .unwrap()
            .map(|o| o.probability)
            .sum();
        assert_eq!(total, ratio(1, 1));
    }

    #[test]
    fn fixed_edges_do_not_count_against_the_limit() {
        let g = graph(3, &[(0, 1, "1"), (1, 2, "0.5")]);
        assert!(enumerate_live_edges(&g, 1).is_ok());
        let g2 = graph(3, &[(0, 1, "0.5"), (1, 2, "0.5")]);
        assert_eq!(
            enumerate_live_edges(&g2, 1).err(),
            Some(DiffusionError::EnumerationLimitExceeded {
                stochastic_edges: 2,
                limit: 1
            })
        );
    }

    #[test]
    fn exact_single_edge_probabilities() {
        let g = graph(2, &[(0, 1, "0.5")]);
        let est = activation_probabilities(&g, &[0], &EstimatorConfig::exact()).unwrap();
        match est {
            ActivationEstimate::Exact { probs } => {
                assert_eq!(probs, vec![ratio(1, 1), ratio(1, 2)]);
            }
            _ => panic!("expected exact estimate"),
        }
    }

    #[test]
    fn exact_diamond_sink_probability() {
        let est = activation_probabilities(&diamond(), &[0], &EstimatorConfig::exact()).unwrap();
        match est {
            ActivationEstimate::Exact { probs } => {
                assert_eq!(probs[3], ratio(7, 16));
            }
            _ => panic!("expected exact estimate"),
        }
    }

    #[test]
    fn seeding_every_node_gives_probability_one() {
        let g = diamond();
        let est = activation_probabilities(&g, &[0, 1, 2, 3], &EstimatorConfig::exact()).unwrap();
        for v in g.nodes() {
            assert_eq!(est.prob_f64(v), 1.0);
            assert_eq!(est.half_width(v), 0.0);
        }
    }

    #[test]
    fn monte_carlo_is_bit_identical_across_runs() {
        let cfg = EstimatorConfig::monte_carlo(2000, 7);
        let a = activation_probabilities(&diamond(), &[0], &cfg).unwrap();
        let b = activation_probabilities(&diamond(), &[0], &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn monte_carlo_matches_exact_within_three_half_widths() {
        let g = diamond();
        let exact = activation_probabilities(&g, &[0], &EstimatorConfig::exact()).unwrap();
        let mc =
            activation_probabilities(&g, &[0], &EstimatorConfig::monte_carlo(100_000, 3)).unwrap();
        for v in g.nodes() {
            let err = (mc.prob_f64(v) - exact.prob_f64(v)).abs();
            assert!(
                err <= 3.0 * mc.half_width(v) + 1e-12,
                "node {v}: err {err}, hw {}",
                mc.half_width(v)
            );
        }
    }

    #[test]
    fn exact_probabilities_are_monotone_in_the_seed_set() {
        let g = diamond();
        let small = activation_probabilities(&g, &[1], &EstimatorConfig::exact()).unwrap();
        let large = activation_probabilities(&g, &[0, 1], &EstimatorConfig::exact()).unwrap();
        match (&small, &large) {
            (
                ActivationEstimate::Exact { probs: p_small },
                ActivationEstimate::Exact { probs: p_large },
            ) => {
                for v in 0..4 {
                    assert!(p_small[v] <= p_large[v]);
                }
            }
            _ => unreachable!(),
        }
    }
}
