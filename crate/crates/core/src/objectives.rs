//! Control objectives.
//!
//! Multi-winner objectives (`mov-*`, `dow-*`) track the expected number of
//! elected candidates per party; the straight-party-voting objectives
//! (`spv-*`) track expected party scores instead. Both compare the state
//! after seeding `S` against the no-campaign baseline, and the margin
//! variants additionally track the strongest opponent party before
//! (`best_opponent_before`) and after (`best_opponent_after`) the campaign.
//!
//! Opponent selection happens at the expectation level: the strongest
//! opponent after `S` is the party maximizing the *expected* quantity, with
//! ties broken toward the lowest party index.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::diffusion::{
    check_seeds, simulate_into, ActivationEstimate, DiffusionError, Estimator, EstimatorConfig,
    LiveEdgeSpace,
};
use crate::election::{
    apply_update, Direction, ElectionInstance, PartyId, PartyLayout, Score,
};
use crate::exact::{ratio_to_f64, Ratio};
use crate::graph::NodeId;
use crate::rng::stream_rng;

const Z_95: f64 = 1.96;

/// The eight objective functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveKind {
    MovC,
    MovD,
    DowC,
    DowD,
    SpvMovC,
    SpvMovD,
    SpvDovC,
    SpvDovD,
}

impl ObjectiveKind {
    pub const ALL: [ObjectiveKind; 8] = [
        ObjectiveKind::MovC,
        ObjectiveKind::MovD,
        ObjectiveKind::DowC,
        ObjectiveKind::DowD,
        ObjectiveKind::SpvMovC,
        ObjectiveKind::SpvMovD,
        ObjectiveKind::SpvDovC,
        ObjectiveKind::SpvDovD,
    ];

    pub fn direction(&self) -> Direction {
        match self {
            ObjectiveKind::MovC
            | ObjectiveKind::DowC
            | ObjectiveKind::SpvMovC
            | ObjectiveKind::SpvDovC => Direction::Constructive,
            _ => Direction::Destructive,
        }
    }

    /// True for the straight-party-voting family.
    pub fn is_spv(&self) -> bool {
        matches!(
            self,
            ObjectiveKind::SpvMovC
                | ObjectiveKind::SpvMovD
                | ObjectiveKind::SpvDovC
                | ObjectiveKind::SpvDovD
        )
    }

    /// True for the margin-of-victory variants (which involve opponents).
    pub fn is_margin(&self) -> bool {
        matches!(
            self,
            ObjectiveKind::MovC
                | ObjectiveKind::MovD
                | ObjectiveKind::SpvMovC
                | ObjectiveKind::SpvMovD
        )
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectiveKind::MovC => "mov-c",
            ObjectiveKind::MovD => "mov-d",
            ObjectiveKind::DowC => "dow-c",
            ObjectiveKind::DowD => "dow-d",
            ObjectiveKind::SpvMovC => "spv-mov-c",
            ObjectiveKind::SpvMovD => "spv-mov-d",
            ObjectiveKind::SpvDovC => "spv-dov-c",
            ObjectiveKind::SpvDovD => "spv-dov-d",
        }
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for ObjectiveKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        ObjectiveKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or(())
    }
}

/// An exact rational or a Monte Carlo estimate with confidence half-width.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Ratio),
    Estimate { value: f64, half_width: f64 },
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => ratio_to_f64(r),
            Value::Estimate { value, .. } => *value,
        }
    }

    pub fn half_width(&self) -> f64 {
        match self {
            Value::Exact(_) => 0.0,
            Value::Estimate { half_width, .. } => *half_width,
        }
    }

    pub fn exact(&self) -> Option<&Ratio> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Estimate { .. } => None,
        }
    }
}

/// Result of evaluating one objective at a fixed seed set.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveReport {
    pub kind: ObjectiveKind,
    pub value: Value,
    /// Per-party baseline (winner counts or SPV scores); exact by nature.
    pub before: Vec<Ratio>,
    /// Per-party value after the campaign.
    pub after: Vec<Value>,
    /// Strongest opponent at baseline.
    pub best_opponent_before: PartyId,
    /// Strongest opponent after the campaign.
    pub best_opponent_after: PartyId,
    pub estimator: Estimator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveError {
    Diffusion(DiffusionError),
    /// Kind passed to the wrong evaluation family.
    WrongFamily { kind: ObjectiveKind },
}

impl From<DiffusionError> for ObjectiveError {
    fn from(e: DiffusionError) -> Self {
        ObjectiveError::Diffusion(e)
    }
}

impl fmt::Display for ObjectiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveError::Diffusion(e) => e.fmt(f),
            ObjectiveError::WrongFamily { kind } => {
                write!(f, "objective {kind} does not belong to this evaluation family")
            }
        }
    }
}

/// Per-voter score rows under the original and updated preference lists,
/// precomputed once per (instance, direction).
pub(crate) struct ScoreTable {
    layout: PartyLayout,
    orig_rows: Vec<Vec<u64>>,
    upd_rows: Vec<Vec<u64>>,
    orig_party: Vec<Vec<u128>>,
    upd_party: Vec<Vec<u128>>,
}

impl ScoreTable {
    pub(crate) fn new(inst: &ElectionInstance, direction: Direction) -> ScoreTable {
        let layout = inst.layout();
        let m = layout.candidate_count() as usize;
        let t = layout.parties as usize;
        let mut orig_rows = Vec::with_capacity(inst.profile().voter_count());
        let mut upd_rows = Vec::with_capacity(inst.profile().voter_count());
        let mut orig_party = Vec::with_capacity(inst.profile().voter_count());
        let mut upd_party = Vec::with_capacity(inst.profile().voter_count());
        for prefs in inst.profile().voters() {
            let updated = apply_update(prefs, layout, direction)
                .expect("instance permutations fit the layout");
            let row = |p: &crate::election::Permutation| -> Vec<u64> {
                (0..m as u32)
                    .map(|c| inst.scoring().value_at(p.rank_of(c) as usize))
                    .collect()
            };
            let o = row(prefs);
            let u = row(&updated);
            let party_sums = |r: &[u64]| -> Vec<u128> {
                let mut sums = vec![0u128; t];
                for (c, &v) in r.iter().enumerate() {
                    sums[layout.party_of(c as u32) as usize] += v as u128;
                }
                sums
            };
            orig_party.push(party_sums(&o));
            upd_party.push(party_sums(&u));
            orig_rows.push(o);
            upd_rows.push(u);
        }
        ScoreTable {
            layout,
            orig_rows,
            upd_rows,
            orig_party,
            upd_party,
        }
    }

    /// Candidate scores for one realization given the active mask.
    fn realized_scores(&self, active: &[bool]) -> Vec<Score> {
        let m = self.layout.candidate_count() as usize;
        let mut scores = vec![0 as Score; m];
        for (v, &is_active) in active.iter().enumerate() {
            let row = if is_active {
                &self.upd_rows[v]
            } else {
                &self.orig_rows[v]
            };
            for (c, &val) in row.iter().enumerate() {
                scores[c] += val as Score;
            }
        }
        scores
    }

    fn realized_party_counts(&self, active: &[bool]) -> Vec<u32> {
        crate::election::party_winner_counts(&self.realized_scores(active), self.layout)
    }

    /// Scaled change of party `p`'s score when voter `v` activates.
    fn party_delta(&self, v: usize, p: usize) -> i128 {
        self.upd_party[v][p] as i128 - self.orig_party[v][p] as i128
    }

    fn baseline_party_scaled(&self, p: usize) -> u128 {
        self.orig_party.iter().map(|row| row[p]).sum()
    }

    fn baseline_counts(&self) -> Vec<u32> {
        let n = self.orig_rows.len();
        self.realized_party_counts(&vec![false; n])
    }
}

/// Strongest opponent by exact values, ties toward the lowest party index.
fn best_opponent_exact(values: &[Ratio]) -> PartyId {
    let mut best = 1;
    for p in 2..values.len() {
        if values[p] > values[best] {
            best = p;
        }
    }
    best as PartyId
}

fn best_opponent_f64(values: &[f64]) -> PartyId {
    let mut best = 1;
    for p in 2..values.len() {
        if values[p] > values[best] {
            best = p;
        }
    }
    best as PartyId
}

fn mean_and_half_width(samples: impl Iterator<Item = f64> + Clone, r: u32) -> (f64, f64) {
    let r_f = r.max(1) as f64;
    let mean = samples.clone().sum::<f64>() / r_f;
    if r < 2 {
        return (mean, 0.0);
    }
    let var = samples.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (r_f - 1.0);
    (mean, Z_95 * libm::sqrt(var / r_f))
}

/// Expected number of elected candidates per party after seeding `seeds`.
pub fn expected_party_winners(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    direction: Direction,
    cfg: &EstimatorConfig,
) -> Result<Vec<Value>, ObjectiveError> {
    check_seeds(inst.graph(), seeds)?;
    let table = ScoreTable::new(inst, direction);
    match cfg.estimator {
        Estimator::Exact => {
            let counts = exact_expected_counts(inst, seeds, &table, cfg.max_enum_edges)?;
            Ok(counts.into_iter().map(Value::Exact).collect())
        }
        Estimator::MonteCarlo {
            samples,
            master_seed,
        } => {
            let per_sample = mc_winner_count_samples(inst, seeds, &table, samples, master_seed);
            let t = inst.layout().parties as usize;
            Ok((0..t)
                .map(|p| {
                    let (value, half_width) = mean_and_half_width(
                        per_sample.iter().map(move |row| row[p] as f64),
                        samples,
                    );
                    Value::Estimate { value, half_width }
                })
                .collect())
        }
    }
}

/// Exact per-party expected winner counts by live-edge enumeration.
fn exact_expected_counts(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    table: &ScoreTable,
    max_enum_edges: usize,
) -> Result<Vec<Ratio>, DiffusionError> {
    let space = LiveEdgeSpace::new(inst.graph(), max_enum_edges)?;
    let n = inst.graph().node_count() as usize;
    let t = inst.layout().parties as usize;
    let mut accum = vec![BigUint::zero(); t];
    let mut visited = vec![false; n];
    let mut stack = Vec::new();
    for mask in 0..space.outcome_count() {
        let numer = space.weight_numer(mask);
        space.reach_into(seeds, mask, &mut visited, &mut stack);
        let counts = table.realized_party_counts(&visited);
        for (p, &c) in counts.iter().enumerate() {
            if c > 0 {
                accum[p] += &numer * c;
            }
        }
        visited.fill(false);
    }
    let denom = BigInt::from(space.denom().clone());
    Ok(accum
        .into_iter()
        .map(|num| Ratio::new(BigInt::from(num), denom.clone()))
        .collect())
}

/// Per-sample per-party winner counts under Monte Carlo diffusion.
fn mc_winner_count_samples(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    table: &ScoreTable,
    samples: u32,
    master_seed: u64,
) -> Vec<Vec<u32>> {
    let n = inst.graph().node_count() as usize;
    let mut out = Vec::with_capacity(samples as usize);
    let mut active = vec![false; n];
    for i in 0..samples {
        let mut rng = stream_rng(master_seed, i as u64);
        simulate_into(inst.graph(), seeds, &mut rng, &mut active);
        out.push(table.realized_party_counts(&active));
        active.fill(false);
    }
    out
}

/// Evaluates `mov-c`, `mov-d`, `dow-c`, or `dow-d` at a fixed seed set.
pub fn evaluate_multiwinner_objective(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    kind: ObjectiveKind,
    cfg: &EstimatorConfig,
) -> Result<ObjectiveReport, ObjectiveError> {
    if kind.is_spv() {
        return Err(ObjectiveError::WrongFamily { kind });
    }
    check_seeds(inst.graph(), seeds)?;
    let direction = kind.direction();
    let table = ScoreTable::new(inst, direction);
    let before: Vec<Ratio> = table
        .baseline_counts()
        .into_iter()
        .map(|c| Ratio::from_integer(BigInt::from(c)))
        .collect();
    let best_before = best_opponent_exact(&before);

    match cfg.estimator {
        Estimator::Exact => {
            let after = exact_expected_counts(inst, seeds, &table, cfg.max_enum_edges)?;
            let best_after = best_opponent_exact(&after);
            let value = exact_objective_value(kind, &before, &after, best_before, best_after);
            Ok(ObjectiveReport {
                kind,
                value: Value::Exact(value),
                before,
                after: after.into_iter().map(Value::Exact).collect(),
                best_opponent_before: best_before,
                best_opponent_after: best_after,
                estimator: cfg.estimator,
            })
        }
        Estimator::MonteCarlo { samples, .. } => {
            let Estimator::MonteCarlo { master_seed, .. } = cfg.estimator else {
                unreachable!()
            };
            let per_sample = mc_winner_count_samples(inst, seeds, &table, samples, master_seed);
            Ok(mc_report(
                kind,
                before,
                best_before,
                cfg.estimator,
                samples,
                inst.layout().parties as usize,
                |s, p| per_sample[s][p] as f64,
            ))
        }
    }
}

/// Expected SPV score per party after seeding `seeds`.
///
/// Computed linearly: `F(C_i, S) = F(C_i, empty) + sum_v Pr(v active) *
/// delta_i(v)`, where `delta_i(v)` is voter `v`'s exact per-party score
/// change under one update.
pub fn spv_party_scores(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    direction: Direction,
    cfg: &EstimatorConfig,
) -> Result<Vec<Value>, ObjectiveError> {
    check_seeds(inst.graph(), seeds)?;
    let table = ScoreTable::new(inst, direction);
    match cfg.estimator {
        Estimator::Exact => {
            let scores = exact_spv_scores(inst, seeds, &table, cfg.max_enum_edges)?;
            Ok(scores.into_iter().map(Value::Exact).collect())
        }
        Estimator::MonteCarlo {
            samples,
            master_seed,
        } => {
            let per_sample = mc_spv_delta_samples(inst, seeds, &table, samples, master_seed);
            let scale = inst.scoring().scale() as f64;
            let t = inst.layout().parties as usize;
            Ok((0..t)
                .map(|p| {
                    let base = table.baseline_party_scaled(p) as f64;
                    let (mean_delta, half_width) = mean_and_half_width(
                        per_sample.iter().map(move |row| row[p] as f64),
                        samples,
                    );
                    Value::Estimate {
                        value: (base + mean_delta) / scale,
                        half_width: half_width / scale,
                    }
                })
                .collect())
        }
    }
}

fn exact_spv_scores(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    table: &ScoreTable,
    max_enum_edges: usize,
) -> Result<Vec<Ratio>, DiffusionError> {
    let cfg = EstimatorConfig {
        estimator: Estimator::Exact,
        max_enum_edges,
    };
    let est = crate::diffusion::activation_probabilities(inst.graph(), seeds, &cfg)?;
    let probs = match est {
        ActivationEstimate::Exact { probs } => probs,
        ActivationEstimate::MonteCarlo { .. } => unreachable!("exact estimator requested"),
    };
    let t = inst.layout().parties as usize;
    let scale = BigInt::from(inst.scoring().scale());
    Ok((0..t)
        .map(|p| {
            let mut total = Ratio::from_integer(BigInt::from(table.baseline_party_scaled(p)));
            for (v, prob) in probs.iter().enumerate() {
                let delta = table.party_delta(v, p);
                if delta != 0 {
                    total += prob * Ratio::from_integer(BigInt::from(delta));
                }
            }
            total / Ratio::from_integer(scale.clone())
        })
        .collect())
}

/// Per-sample per-party scaled score deltas under Monte Carlo diffusion.
fn mc_spv_delta_samples(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    table: &ScoreTable,
    samples: u32,
    master_seed: u64,
) -> Vec<Vec<i128>> {
    let n = inst.graph().node_count() as usize;
    let t = inst.layout().parties as usize;
    let mut out = Vec::with_capacity(samples as usize);
    let mut active = vec![false; n];
    for i in 0..samples {
        let mut rng = stream_rng(master_seed, i as u64);
        simulate_into(inst.graph(), seeds, &mut rng, &mut active);
        let mut deltas = vec![0i128; t];
        for (v, &is_active) in active.iter().enumerate() {
            if is_active {
                for (p, d) in deltas.iter_mut().enumerate() {
                    *d += table.party_delta(v, p);
                }
            }
        }
        out.push(deltas);
        active.fill(false);
    }
    out
}

/// Evaluates `spv-mov-c`, `spv-mov-d`, `spv-dov-c`, or `spv-dov-d`.
pub fn evaluate_spv_objective(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    kind: ObjectiveKind,
    cfg: &EstimatorConfig,
) -> Result<ObjectiveReport, ObjectiveError> {
    if !kind.is_spv() {
        return Err(ObjectiveError::WrongFamily { kind });
    }
    check_seeds(inst.graph(), seeds)?;
    let direction = kind.direction();
    let table = ScoreTable::new(inst, direction);
    let scale = Ratio::from_integer(BigInt::from(inst.scoring().scale()));
    let before: Vec<Ratio> = (0..inst.layout().parties as usize)
        .map(|p| Ratio::from_integer(BigInt::from(table.baseline_party_scaled(p))) / &scale)
        .collect();
    let best_before = best_opponent_exact(&before);

    match cfg.estimator {
        Estimator::Exact => {
            let after = exact_spv_scores(inst, seeds, &table, cfg.max_enum_edges)?;
            let best_after = best_opponent_exact(&after);
            let value = exact_objective_value(kind, &before, &after, best_before, best_after);
            Ok(ObjectiveReport {
                kind,
                value: Value::Exact(value),
                before,
                after: after.into_iter().map(Value::Exact).collect(),
                best_opponent_before: best_before,
                best_opponent_after: best_after,
                estimator: cfg.estimator,
            })
        }
        Estimator::MonteCarlo {
            samples,
            master_seed,
        } => {
            let per_sample = mc_spv_delta_samples(inst, seeds, &table, samples, master_seed);
            let scale = inst.scoring().scale() as f64;
            let t = inst.layout().parties as usize;
            let bases: Vec<f64> = (0..t)
                .map(|p| table.baseline_party_scaled(p) as f64 / scale)
                .collect();
            Ok(mc_report(
                kind,
                before,
                best_before,
                cfg.estimator,
                samples,
                t,
                |s, p| bases[p] + per_sample[s][p] as f64 / scale,
            ))
        }
    }
}

/// Dispatches on the objective family.
pub fn evaluate_objective(
    inst: &ElectionInstance,
    seeds: &[NodeId],
    kind: ObjectiveKind,
    cfg: &EstimatorConfig,
) -> Result<ObjectiveReport, ObjectiveError> {
    if kind.is_spv() {
        evaluate_spv_objective(inst, seeds, kind, cfg)
    } else {
        evaluate_multiwinner_objective(inst, seeds, kind, cfg)
    }
}

/// Objective formula on exact per-party quantities.
fn exact_objective_value(
    kind: ObjectiveKind,
    before: &[Ratio],
    after: &[Ratio],
    best_before: PartyId,
    best_after: PartyId,
) -> Ratio {
    let gain_after = &after[0] - &after[best_after as usize];
    let gain_before = &before[0] - &before[best_before as usize];
    match kind {
        ObjectiveKind::MovC | ObjectiveKind::SpvMovC => gain_after - gain_before,
        ObjectiveKind::MovD | ObjectiveKind::SpvMovD => gain_before - gain_after,
        ObjectiveKind::DowC | ObjectiveKind::SpvDovC => &after[0] - &before[0],
        ObjectiveKind::DowD | ObjectiveKind::SpvDovD => &before[0] - &after[0],
    }
}

/// Assembles a Monte Carlo report from per-sample per-party values.
///
/// The strongest opponent after `S` is chosen from the per-party means;
/// the composite value's half-width then comes from the per-sample values
/// of the formula with the opponents held fixed.
fn mc_report(
    kind: ObjectiveKind,
    before: Vec<Ratio>,
    best_before: PartyId,
    estimator: Estimator,
    samples: u32,
    parties: usize,
    value_at: impl Fn(usize, usize) -> f64,
) -> ObjectiveReport {
    let r = samples as usize;
    let after: Vec<Value> = (0..parties)
        .map(|p| {
            let (value, half_width) = mean_and_half_width((0..r).map(|s| value_at(s, p)), samples);
            Value::Estimate { value, half_width }
        })
        .collect();
    let best_after = best_opponent_f64(&after.iter().map(Value::as_f64).collect::<Vec<_>>());
    let before_f: Vec<f64> = before.iter().map(ratio_to_f64).collect();
    let gain_before = before_f[0] - before_f[best_before as usize];
    let moa = best_after as usize;
    let sample_value = |s: usize| -> f64 {
        match kind {
            ObjectiveKind::MovC | ObjectiveKind::SpvMovC => {
                value_at(s, 0) - value_at(s, moa) - gain_before
            }
            ObjectiveKind::MovD | ObjectiveKind::SpvMovD => {
                gain_before - (value_at(s, 0) - value_at(s, moa))
            }
            ObjectiveKind::DowC | ObjectiveKind::SpvDovC => value_at(s, 0) - before_f[0],
            ObjectiveKind::DowD | ObjectiveKind::SpvDovD => before_f[0] - value_at(s, 0),
        }
    };
    let (value, half_width) = mean_and_half_width((0..r).map(sample_value), samples);
    ObjectiveReport {
        kind,
        value: Value::Estimate { value, half_width },
        before,
        after,
        best_opponent_before: best_before,
        best_opponent_after: best_after,
        estimator,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{Permutation, PreferenceProfile, ScoringRule};
    use crate::exact::{ratio, Prob};
    use crate::graph::{Edge, Graph};

    fn perm(order: &[u32]) -> Permutation {
        Permutation::from_ranking(order).unwrap()
    }

    /// Two isolated voters, two parties of two; mirrors of each other.
    fn tiny_instance() -> ElectionInstance {
        let layout = PartyLayout::new(2, 2).unwrap();
        let profile =
            PreferenceProfile::new(vec![perm(&[2, 0, 1, 3]), perm(&[3, 1, 0, 2])], 4).unwrap();
        ElectionInstance::new(
            Graph::empty(2),
            layout,
            ScoringRule::plurality(4).unwrap(),
            profile,
        )
        .unwrap()
    }

    #[test]
    fn kind_strings_round_trip() {
        for kind in ObjectiveKind::ALL {
            assert_eq!(kind.as_str().parse::<ObjectiveKind>(), Ok(kind));
        }
        assert!("spv".parse::<ObjectiveKind>().is_err());
    }

    #[test]
    fn empty_seed_set_scores_zero_for_every_kind() {
        let inst = tiny_instance();
        let cfg = EstimatorConfig::exact();
        for kind in ObjectiveKind::ALL {
            let report = evaluate_objective(&inst, &[], kind, &cfg).unwrap();
            assert_eq!(report.value.exact().unwrap(), &ratio(0, 1), "{kind}");
            assert_eq!(report.best_opponent_before, report.best_opponent_after);
        }
    }

    #[test]
    fn spv_single_voter_party_split() {
        // one voter ranking (c0, c2, c3, c1): party 0 holds ranks 1 and 4
        let layout = PartyLayout::new(2, 2).unwrap();
        let profile = PreferenceProfile::new(vec![perm(&[0, 2, 3, 1])], 4).unwrap();
        let inst = ElectionInstance::new(
            Graph::empty(1),
            layout,
            ScoringRule::borda(4).unwrap(),
            profile,
        )
        .unwrap();
        let scores =
            spv_party_scores(&inst, &[], Direction::Constructive, &EstimatorConfig::exact())
                .unwrap();
        // borda (3,2,1,0): f(1)+f(4) = 3, f(2)+f(3) = 3
        assert_eq!(scores[0].exact().unwrap(), &ratio(3, 1));
        assert_eq!(scores[1].exact().unwrap(), &ratio(3, 1));
    }

    #[test]
    fn full_activation_on_deterministic_graph_matches_updated_profile() {
        // path 0 -> 1 with certainty; both voters activate from seed 0
        let layout = PartyLayout::new(2, 2).unwrap();
        let graph = Graph::new(
            2,
            vec![Edge {
                source: 0,
                target: 1,
                prob: Prob::ONE,
            }],
        )
        .unwrap();
        let profile =
            PreferenceProfile::new(vec![perm(&[2, 0, 1, 3]), perm(&[3, 1, 0, 2])], 4).unwrap();
        let inst =
            ElectionInstance::new(graph, layout, ScoringRule::borda(4).unwrap(), profile).unwrap();
        let scores =
            spv_party_scores(&inst, &[0], Direction::Constructive, &EstimatorConfig::exact())
                .unwrap();
        // updated lists put both target candidates ahead: (c0,c1,c2,c3) and
        // (c1,c0,c3,c2) -> party 0 gets 3+2 from each voter
        assert_eq!(scores[0].exact().unwrap(), &ratio(10, 1));
        assert_eq!(scores[1].exact().unwrap(), &ratio(2, 1));
    }

    #[test]
    fn deterministic_graph_exact_equals_monte_carlo() {
        let inst = tiny_instance();
        let exact = expected_party_winners(
            &inst,
            &[0],
            Direction::Constructive,
            &EstimatorConfig::exact(),
        )
        .unwrap();
        let mc = expected_party_winners(
            &inst,
            &[0],
            Direction::Constructive,
            &EstimatorConfig::monte_carlo(50, 1),
        )
        .unwrap();
        for (e, m) in exact.iter().zip(&mc) {
            assert_eq!(e.as_f64(), m.as_f64());
            assert_eq!(m.half_width(), 0.0);
        }
    }

    #[test]
    fn dow_identity_holds_in_the_report() {
        let inst = tiny_instance();
        let cfg = EstimatorConfig::exact();
        let report =
            evaluate_multiwinner_objective(&inst, &[0, 1], ObjectiveKind::DowC, &cfg).unwrap();
        let expected = report.after[0].exact().unwrap() - &report.before[0];
        assert_eq!(report.value.exact().unwrap(), &expected);
    }

    #[test]
    fn family_mismatch_is_an_error() {
        let inst = tiny_instance();
        let cfg = EstimatorConfig::exact();
        assert!(matches!(
            evaluate_multiwinner_objective(&inst, &[], ObjectiveKind::SpvDovC, &cfg),
            Err(ObjectiveError::WrongFamily { .. })
        ));
        assert!(matches!(
            evaluate_spv_objective(&inst, &[], ObjectiveKind::MovC, &cfg),
            Err(ObjectiveError::WrongFamily { .. })
        ));
    }

    #[test]
    fn single_winner_degenerate_layout_works() {
        // four parties of one candidate each: the single-winner setting
        let layout = PartyLayout::new(4, 1).unwrap();
        let profile = PreferenceProfile::new(vec![perm(&[1, 0, 2, 3])], 4).unwrap();
        let inst = ElectionInstance::new(
            Graph::empty(1),
            layout,
            ScoringRule::borda(4).unwrap(),
            profile,
        )
        .unwrap();
        let report = evaluate_spv_objective(
            &inst,
            &[0],
            ObjectiveKind::SpvDovC,
            &EstimatorConfig::exact(),
        )
        .unwrap();
        // voter (c1, c0, c2, c3): activating it swaps c0 ahead of c1,
        // raising party 0's score from f(2)=2 to f(1)=3
        assert_eq!(report.value.exact().unwrap(), &ratio(1, 1));
    }
}
