//! Brute-force ground truth for small instances.
//!
//! Everything here recomputes from first principles: outcome probabilities
//! are naive per-outcome products, reachability is a plain BFS, and
//! realized scores come from freshly updated preference lists. None of the
//! production shortcuts (meet-in-the-middle tables, per-voter score rows,
//! linearity of SPV scores) are used, so oracle answers are an independent
//! route to the same quantities. All arithmetic is exact.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::election::{
    apply_update, determine_winners, Direction, ElectionInstance, PartyId, Permutation,
};
use crate::exact::Ratio;
use crate::graph::{Graph, NodeId};
use crate::objectives::ObjectiveKind;
use crate::optimizer::NodeWeights;

/// Hard caps on oracle work; exceeding them is an error, never a silent
/// fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkLimits {
    pub max_nodes: u32,
    pub max_budget: usize,
    pub max_enum_edges: usize,
}

impl Default for WorkLimits {
    fn default() -> Self {
        WorkLimits {
            max_nodes: 12,
            max_budget: 3,
            max_enum_edges: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    NodesExceedLimit { nodes: u32, limit: u32 },
    BudgetExceedsLimit { budget: usize, limit: usize },
    EdgesExceedLimit { stochastic: usize, limit: usize },
    EvaluationsExceedLimit { needed: u64, limit: u64 },
    SeedOutOfRange { node: NodeId },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NodesExceedLimit { nodes, limit } => {
                write!(f, "{nodes} nodes exceed the oracle limit {limit}")
            }
            OracleError::BudgetExceedsLimit { budget, limit } => {
                write!(f, "budget {budget} exceeds the oracle limit {limit}")
            }
            OracleError::EdgesExceedLimit { stochastic, limit } => {
                write!(f, "{stochastic} stochastic edges exceed the oracle limit {limit}")
            }
            OracleError::EvaluationsExceedLimit { needed, limit } => {
                write!(f, "{needed} evaluations exceed the oracle limit {limit}")
            }
            OracleError::SeedOutOfRange { node } => write!(f, "seed {node} out of range"),
        }
    }
}

/// Result of an exhaustive seed-set search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// A maximizer; ties resolve to the lexicographically smallest set.
    pub best_seeds: Vec<NodeId>,
    pub best_value: Ratio,
    pub evaluated_sets: u64,
    pub kind: ObjectiveKind,
}

/// Exhaustive evaluation context for one (instance, direction).
struct OracleCtx<'a> {
    inst: &'a ElectionInstance,
    updated: Vec<Permutation>,
    /// Indices of the `0 < p < 1` edges.
    stochastic: Vec<usize>,
    /// Per stochastic edge: (kept numerator, dropped numerator).
    factors: Vec<(BigUint, BigUint)>,
    denom: BigUint,
    kept_fixed: Vec<bool>,
    adj: Vec<Vec<(NodeId, usize)>>,
}

impl<'a> OracleCtx<'a> {
    fn new(
        inst: &'a ElectionInstance,
        direction: Direction,
        limits: &WorkLimits,
    ) -> Result<OracleCtx<'a>, OracleError> {
        let g = inst.graph();
        let stochastic: Vec<usize> = g
            .edges()
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.prob.is_stochastic().then_some(i))
            .collect();
        if stochastic.len() > limits.max_enum_edges {
            return Err(OracleError::EdgesExceedLimit {
                stochastic: stochastic.len(),
                limit: limits.max_enum_edges,
            });
        }
        let factors = stochastic
            .iter()
            .map(|&i| {
                let p = g.edges()[i].prob;
                (
                    BigUint::from(p.numer()),
                    BigUint::from(p.denom() - p.numer()),
                )
            })
            .collect();
        let denom = stochastic
            .iter()
            .fold(BigUint::one(), |acc, &i| acc * g.edges()[i].prob.denom());
        let kept_fixed = g.edges().iter().map(|e| e.prob.is_one()).collect();
        let mut adj: Vec<Vec<(NodeId, usize)>> = vec![Vec::new(); g.node_count() as usize];
        for (i, e) in g.edges().iter().enumerate() {
            adj[e.source as usize].push((e.target, i));
        }
        let updated = inst
            .profile()
            .voters()
            .map(|p| apply_update(p, inst.layout(), direction).expect("valid instance"))
            .collect();
        Ok(OracleCtx {
            inst,
            updated,
            stochastic,
            factors,
            denom,
            kept_fixed,
            adj,
        })
    }

    fn outcome_count(&self) -> u64 {
        1u64 << self.stochastic.len()
    }

    /// Probability numerator of one outcome over `denom`, multiplied out
    /// factor by factor.
    fn outcome_numer(&self, mask: u64) -> BigUint {
        let mut numer = BigUint::one();
        for (slot, (kept, dropped)) in self.factors.iter().enumerate() {
            numer *= if mask & (1 << slot) != 0 { kept } else { dropped };
        }
        numer
    }

    fn reach(&self, seeds: &[NodeId], mask: u64) -> Vec<bool> {
        let mut visited = vec![false; self.adj.len()];
        let mut stack: Vec<NodeId> = Vec::new();
        for &s in seeds {
            if !visited[s as usize] {
                visited[s as usize] = true;
                stack.push(s);
            }
        }
        let slot_of = |edge: usize| self.stochastic.iter().position(|&e| e == edge);
        while let Some(u) = stack.pop() {
            for &(v, e) in &self.adj[u as usize] {
                let kept = match slot_of(e) {
                    Some(slot) => mask & (1 << slot) != 0,
                    None => self.kept_fixed[e],
                };
                if kept && !visited[v as usize] {
                    visited[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        visited
    }

    /// Realized per-candidate scores for one activation pattern.
    fn realized_candidate_scores(&self, active: &[bool]) -> Vec<u128> {
        let m = self.inst.layout().candidate_count() as usize;
        let scoring = self.inst.scoring();
        let mut scores = vec![0u128; m];
        for (v, prefs) in self.inst.profile().voters().enumerate() {
            let effective = if active[v] { &self.updated[v] } else { prefs };
            for c in 0..m as u32 {
                scores[c as usize] += scoring.value_at(effective.rank_of(c) as usize) as u128;
            }
        }
        scores
    }

    /// Expected per-party winner counts, as exact rationals.
    fn expected_party_counts(&self, seeds: &[NodeId]) -> Vec<Ratio> {
        let layout = self.inst.layout();
        let t = layout.parties as usize;
        let mut accum = vec![BigUint::zero(); t];
        for mask in 0..self.outcome_count() {
            let numer = self.outcome_numer(mask);
            let active = self.reach(seeds, mask);
            let scores = self.realized_candidate_scores(&active);
            let winner_set = determine_winners(&scores, layout);
            for &c in &winner_set.winners {
                accum[layout.party_of(c) as usize] += &numer;
            }
        }
        let denom = BigInt::from(self.denom.clone());
        accum
            .into_iter()
            .map(|num| Ratio::new(BigInt::from(num), denom.clone()))
            .collect()
    }

    /// Expected per-party SPV scores, straight from the definition: the
    /// per-outcome sum of scoring values over each party's candidates.
    fn expected_party_scores(&self, seeds: &[NodeId]) -> Vec<Ratio> {
        let layout = self.inst.layout();
        let t = layout.parties as usize;
        let mut accum = vec![BigUint::zero(); t];
        for mask in 0..self.outcome_count() {
            let numer = self.outcome_numer(mask);
            let active = self.reach(seeds, mask);
            let scores = self.realized_candidate_scores(&active);
            for p in 0..t {
                let party_total: u128 = layout
                    .party_members(p as PartyId)
                    .map(|c| scores[c as usize])
                    .sum();
                accum[p] += &numer * BigUint::from(party_total);
            }
        }
        let denom = BigInt::from(&self.denom * self.inst.scoring().scale());
        accum
            .into_iter()
            .map(|num| Ratio::new(BigInt::from(num), denom.clone()))
            .collect()
    }

    fn objective(&self, seeds: &[NodeId], kind: ObjectiveKind) -> Ratio {
        let per_party_after = if kind.is_spv() {
            self.expected_party_scores(seeds)
        } else {
            self.expected_party_counts(seeds)
        };
        let per_party_before = if kind.is_spv() {
            self.expected_party_scores(&[])
        } else {
            self.expected_party_counts(&[])
        };
        let best = |values: &[Ratio]| -> usize {
            let mut best = 1;
            for p in 2..values.len() {
                if values[p] > values[best] {
                    best = p;
                }
            }
            best
        };
        let before_gain = &per_party_before[0] - &per_party_before[best(&per_party_before)];
        let after_gain = &per_party_after[0] - &per_party_after[best(&per_party_after)];
        match kind {
            ObjectiveKind::MovC | ObjectiveKind::SpvMovC => after_gain - before_gain,
            ObjectiveKind::MovD | ObjectiveKind::SpvMovD => before_gain - after_gain,
            ObjectiveKind::DowC | ObjectiveKind::SpvDovC => {
                &per_party_after[0] - &per_party_before[0]
            }
            ObjectiveKind::DowD | ObjectiveKind::SpvDovD => {
                &per_party_before[0] - &per_party_after[0]
            }
        }
    }
}

fn check_seed_range(inst: &ElectionInstance, seeds: &[NodeId]) -> Result<(), OracleError> {
    match seeds.iter().find(|&&s| !inst.graph().contains_node(s)) {
        Some(&node) => Err(OracleError::SeedOutOfRange { node }),
        None => Ok(()),
    }
}

/// Exact objective value at one seed set, by total enumeration.
pub fn exact_objective(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    kind: ObjectiveKind,
    limits: &WorkLimits,
) -> Result<Ratio, OracleError> {
    check_seed_range(inst, seeds)?;
    let ctx = OracleCtx::new(inst, kind.direction(), limits)?;
    Ok(ctx.objective(seeds, kind))
}

/// Visits every subset of `0..n` with at most `max_size` elements in
/// lexicographic order of the sorted id sequence.
fn visit_subsets_lex(n: u32, max_size: usize, visit: &mut impl FnMut(&[NodeId])) {
    fn rec(current: &mut Vec<NodeId>, start: u32, n: u32, left: usize, visit: &mut impl FnMut(&[NodeId])) {
        if left == 0 {
            return;
        }
        for x in start..n {
            current.push(x);
            visit(current);
            rec(current, x + 1, n, left - 1, visit);
            current.pop();
        }
    }
    let mut current = Vec::with_capacity(max_size);
    visit(&current);
    rec(&mut current, 0, n, max_size, visit);
}

/// Exhaustive search over all seed sets of size at most `budget`.
pub fn brute_force_optimum(
    inst: &ElectionInstance,
    budget: usize,
    kind: ObjectiveKind,
    limits: &WorkLimits,
) -> Result<OracleResult, OracleError> {
    let n = inst.graph().node_count();
    if n > limits.max_nodes {
        return Err(OracleError::NodesExceedLimit {
            nodes: n,
            limit: limits.max_nodes,
        });
    }
    if budget > limits.max_budget {
        return Err(OracleError::BudgetExceedsLimit {
            budget,
            limit: limits.max_budget,
        });
    }
    let ctx = OracleCtx::new(inst, kind.direction(), limits)?;
    let mut best_seeds: Vec<NodeId> = Vec::new();
    let mut best_value: Option<Ratio> = None;
    let mut evaluated_sets = 0u64;
    visit_subsets_lex(n, budget, &mut |set| {
        let value = ctx.objective(set, kind);
        evaluated_sets += 1;
        // strict improvement keeps the lexicographically first maximizer
        if best_value.as_ref().map_or(true, |b| value > *b) {
            best_value = Some(value);
            best_seeds = set.to_vec();
        }
    });
    Ok(OracleResult {
        best_seeds,
        best_value: best_value.expect("the empty set is always evaluated"),
        evaluated_sets,
        kind,
    })
}

/// Which property failed, with the offending sets.
#[derive(Debug, Clone, PartialEq)]
pub enum SubmodularViolation {
    Monotonicity {
        t: Vec<NodeId>,
        x: NodeId,
    },
    DiminishingReturns {
        s: Vec<NodeId>,
        t: Vec<NodeId>,
        x: NodeId,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubmodularReport {
    pub violation: Option<SubmodularViolation>,
    pub sets_evaluated: u64,
    pub triples_checked: u64,
}

impl SubmodularReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks monotonicity and diminishing returns of an arbitrary set
/// function over all `(S, T, x)` with `S` a subset of `T`, `|T| <=
/// max_set_size`, and `x` outside `T`. Stops at the first violation.
pub fn check_spread_function(
    n: u32,
    mut eval: impl FnMut(&[NodeId]) -> Ratio,
    max_set_size: usize,
    max_evaluations: u64,
) -> Result<SubmodularReport, OracleError> {
    let max_set_size = max_set_size.min(n as usize);
    // every subset of size <= max_set_size + 1 gets evaluated once
    let mut needed: u64 = 0;
    let mut binom: u64 = 1;
    for s in 0..=(max_set_size + 1).min(n as usize) {
        if s > 0 {
            binom = binom * (n as u64 - s as u64 + 1) / s as u64;
        }
        needed = needed.saturating_add(binom);
    }
    if needed > max_evaluations {
        return Err(OracleError::EvaluationsExceedLimit {
            needed,
            limit: max_evaluations,
        });
    }

    // memoize values by bitmask of the subset
    let mut values: alloc::collections::BTreeMap<u64, Ratio> = alloc::collections::BTreeMap::new();
    let mut sets_evaluated = 0u64;
    let mask_of = |set: &[NodeId]| -> u64 { set.iter().fold(0u64, |m, &v| m | (1 << v)) };
    visit_subsets_lex(n, max_set_size + 1, &mut |set| {
        values.insert(mask_of(set), eval(set));
        sets_evaluated += 1;
    });
    let nodes_of = |mask: u64| -> Vec<NodeId> { (0..n).filter(|&v| mask & (1 << v) != 0).collect() };

    let mut triples_checked = 0u64;
    let mut violation = None;
    'outer: for (&t_mask, t_val) in values.iter() {
        let t_size = t_mask.count_ones() as usize;
        if t_size > max_set_size {
            continue;
        }
        for x in 0..n {
            if t_mask & (1 << x) != 0 {
                continue;
            }
            let tx_val = &values[&(t_mask | (1 << x))];
            if tx_val < t_val {
                violation = Some(SubmodularViolation::Monotonicity {
                    t: nodes_of(t_mask),
                    x,
                });
                break 'outer;
            }
            let t_gain = tx_val - t_val;
            // walk every subset S of T
            let mut s_mask = t_mask;
            loop {
                let s_val = &values[&s_mask];
                let sx_val = &values[&(s_mask | (1 << x))];
                let s_gain = sx_val - s_val;
                triples_checked += 1;
                if s_gain < t_gain {
                    violation = Some(SubmodularViolation::DiminishingReturns {
                        s: nodes_of(s_mask),
                        t: nodes_of(t_mask),
                        x,
                    });
                    break 'outer;
                }
                if s_mask == 0 {
                    break;
                }
                s_mask = (s_mask - 1) & t_mask;
            }
        }
    }
    Ok(SubmodularReport {
        violation,
        sets_evaluated,
        triples_checked,
    })
}

/// Audits the exact weighted spread of the cascade model for monotonicity
/// and submodularity.
pub fn check_monotone_submodular(
    g: &Graph,
    w: &NodeWeights,
    max_set_size: usize,
    limits: &WorkLimits,
) -> Result<SubmodularReport, OracleError> {
    let n = g.node_count();
    if n > limits.max_nodes {
        return Err(OracleError::NodesExceedLimit {
            nodes: n,
            limit: limits.max_nodes,
        });
    }
    let stochastic: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.prob.is_stochastic().then_some(i))
        .collect();
    if stochastic.len() > limits.max_enum_edges {
        return Err(OracleError::EdgesExceedLimit {
            stochastic: stochastic.len(),
            limit: limits.max_enum_edges,
        });
    }
    check_spread_function(n, |seeds| oracle_sigma(g, w, seeds), max_set_size, 1 << 22)
}

/// Self-contained exact weighted spread, by the same naive enumeration the
/// rest of the oracle uses.
pub fn oracle_sigma(g: &Graph, w: &NodeWeights, seeds: &[NodeId]) -> Ratio {
    let stochastic: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.prob.is_stochastic().then_some(i))
        .collect();
    let denom: BigUint = stochastic
        .iter()
        .fold(BigUint::one(), |acc, &i| acc * g.edges()[i].prob.denom());
    let mut adj: Vec<Vec<(NodeId, usize)>> = vec![Vec::new(); g.node_count() as usize];
    for (i, e) in g.edges().iter().enumerate() {
        adj[e.source as usize].push((e.target, i));
    }
    let mut accum = BigUint::zero();
    for mask in 0..(1u64 << stochastic.len()) {
        let mut numer = BigUint::one();
        for (slot, &i) in stochastic.iter().enumerate() {
            let p = g.edges()[i].prob;
            numer *= if mask & (1 << slot) != 0 {
                BigUint::from(p.numer())
            } else {
                BigUint::from(p.denom() - p.numer())
            };
        }
        // reach
        let mut visited = vec![false; g.node_count() as usize];
        let mut stack: Vec<NodeId> = Vec::new();
        for &s in seeds {
            if !visited[s as usize] {
                visited[s as usize] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &(v, e) in &adj[u as usize] {
                let kept = match stochastic.iter().position(|&se| se == e) {
                    Some(slot) => mask & (1 << slot) != 0,
                    None => g.edges()[e].prob.is_one(),
                };
                if kept && !visited[v as usize] {
                    visited[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        let total: u128 = visited
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .map(|(v, _)| w.value_scaled(v as NodeId) as u128)
            .sum();
        accum += numer * BigUint::from(total);
    }
    Ratio::new(
        BigInt::from(accum),
        BigInt::from(denom * BigUint::from(w.scale())),
    )
}
