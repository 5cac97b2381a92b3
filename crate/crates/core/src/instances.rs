//! Instance generators: the hardness-reduction constructions used as test
//! fixtures, plus random instances.
//!
//! The reduction families augment a base influence graph with fresh nodes
//! wired by probability-1 edges and assign carefully chosen preference
//! lists; their defining properties (baseline winner counts, closed-form
//! objective values, iff-characterizations of positive gain) are what the
//! test suites check.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::election::{
    ElectionError, ElectionInstance, MinGap, PartyLayout, Permutation, PreferenceProfile,
    ScoringRule,
};
use crate::exact::Prob;
use crate::graph::{Edge, Graph, GraphError, NodeId};
use crate::rng::stream_rng;

/// Which construction produced a [`ReductionInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    CmecExceptional,
    CmecGeneral,
    IntuitionT2K2,
    SpvC1,
    SpvC2,
}

impl ReductionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReductionKind::CmecExceptional => "cmec-exceptional",
            ReductionKind::CmecGeneral => "cmec-general",
            ReductionKind::IntuitionT2K2 => "intuition-t2k2",
            ReductionKind::SpvC1 => "spv-c1",
            ReductionKind::SpvC2 => "spv-c2",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for ReductionKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        [
            ReductionKind::CmecExceptional,
            ReductionKind::CmecGeneral,
            ReductionKind::IntuitionT2K2,
            ReductionKind::SpvC1,
            ReductionKind::SpvC2,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or(())
    }
}

/// Scoring-rule shape selector for the multi-winner reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmecCase {
    /// `f(1)=f(2)=f(3) > f(4)=f(5)=f(6)`.
    Exceptional,
    /// Any other valid rule over six candidates.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    /// The scoring rule does not have the shape the construction needs.
    ScoringShape { case: CmecCase },
    WrongCandidateCount { expected: u32, got: usize },
    HalfSizeZero,
    Graph(GraphError),
    Election(ElectionError),
}

impl From<GraphError> for InstanceError {
    fn from(e: GraphError) -> Self {
        InstanceError::Graph(e)
    }
}

impl From<ElectionError> for InstanceError {
    fn from(e: ElectionError) -> Self {
        InstanceError::Election(e)
    }
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::ScoringShape { case } => match case {
                CmecCase::Exceptional => f.write_str(
                    "exceptional case needs f(1)=f(2)=f(3) > f(4)=f(5)=f(6) over 6 candidates",
                ),
                CmecCase::General => f.write_str(
                    "general case needs a rule over 6 candidates not of the exceptional shape",
                ),
            },
            InstanceError::WrongCandidateCount { expected, got } => {
                write!(f, "scoring rule covers {got} ranks, construction needs {expected}")
            }
            InstanceError::HalfSizeZero => f.write_str("half_size must be at least 1"),
            InstanceError::Graph(e) => e.fmt(f),
            InstanceError::Election(e) => e.fmt(f),
        }
    }
}

/// A generated reduction instance together with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionInstance {
    pub instance: ElectionInstance,
    /// Node count of the base graph the construction started from.
    pub base_node_count: u32,
    /// Ids of the nodes the construction added.
    pub augmented_nodes: Vec<NodeId>,
    pub construction: ReductionKind,
    /// First strict drop of the scoring rule (`j`, `a = f(j-1)`, `b = f(j)`).
    pub gap: MinGap,
}

fn is_exceptional_shape(f: &ScoringRule) -> bool {
    let v = f.values();
    v.len() == 6 && v[0] == v[1] && v[1] == v[2] && v[3] == v[4] && v[4] == v[5] && v[2] > v[3]
}

/// Builds the three-party, two-candidate reduction over `base`.
///
/// Every base node gets one (exceptional) or three (general) fresh
/// out-neighbors wired with probability-1 edges; base edges keep their
/// probabilities. Preference lists follow the construction for the chosen
/// case, so party 0 starts with zero winners and gains them exactly when
/// the whole graph activates.
pub fn gen_cmec_reduction(
    base: &Graph,
    case: CmecCase,
    f: &ScoringRule,
) -> Result<ReductionInstance, InstanceError> {
    if f.len() != 6 {
        return Err(InstanceError::WrongCandidateCount {
            expected: 6,
            got: f.len(),
        });
    }
    match case {
        CmecCase::Exceptional if !is_exceptional_shape(f) => {
            return Err(InstanceError::ScoringShape { case })
        }
        CmecCase::General if is_exceptional_shape(f) => {
            return Err(InstanceError::ScoringShape { case })
        }
        _ => {}
    }
    let n = base.node_count();
    let per_base: u32 = match case {
        CmecCase::Exceptional => 1,
        CmecCase::General => 3,
    };
    let total = n + n * per_base;
    let mut edges = base.edges().to_vec();
    let mut augmented = Vec::with_capacity((n * per_base) as usize);
    for v in 0..n {
        for s in 0..per_base {
            let added = n + v * per_base + s;
            augmented.push(added);
            edges.push(Edge {
                source: v,
                target: added,
                prob: Prob::ONE,
            });
        }
    }
    let graph = Graph::new(total, edges)?;

    // flat ids: party 0 = {0, 1}, party 1 = {2, 3}, party 2 = {4, 5}
    let base_list: &[u32] = match case {
        CmecCase::Exceptional => &[2, 3, 4, 0, 1, 5],
        CmecCase::General => &[2, 0, 4, 3, 1, 5],
    };
    let added_lists: &[&[u32]] = match case {
        CmecCase::Exceptional => &[&[4, 5, 2, 1, 0, 3]],
        CmecCase::General => &[&[3, 1, 5, 2, 0, 4], &[2, 4, 0, 3, 5, 1], &[3, 5, 1, 2, 4, 0]],
    };
    let mut voters = vec![Permutation::from_ranking(base_list)?; n as usize];
    for _ in 0..n {
        for list in added_lists {
            voters.push(Permutation::from_ranking(list)?);
        }
    }
    let layout = PartyLayout::new(3, 2)?;
    let profile = PreferenceProfile::new(voters, 6)?;
    let instance = ElectionInstance::new(graph, layout, f.clone(), profile)?;
    Ok(ReductionInstance {
        instance,
        base_node_count: n,
        augmented_nodes: augmented,
        construction: match case {
            CmecCase::Exceptional => ReductionKind::CmecExceptional,
            CmecCase::General => ReductionKind::CmecGeneral,
        },
        gap: f.min_gap_index(),
    })
}

/// The two-party, two-candidate plurality instance over isolated voters:
/// one half leans toward opponent candidate 1, the other toward opponent
/// candidate 2, with the matching target candidate in second place.
pub fn gen_intuition_instance(half_size: u32) -> Result<ReductionInstance, InstanceError> {
    if half_size == 0 {
        return Err(InstanceError::HalfSizeZero);
    }
    let n = half_size * 2;
    let graph = Graph::empty(n);
    // flat ids: party 0 = {0, 1}, party 1 = {2, 3}
    let first_half = Permutation::from_ranking(&[2, 0, 1, 3])?;
    let second_half = Permutation::from_ranking(&[3, 1, 0, 2])?;
    let mut voters = vec![first_half; half_size as usize];
    voters.extend(vec![second_half; half_size as usize]);
    let layout = PartyLayout::new(2, 2)?;
    let scoring = ScoringRule::plurality(4).expect("m = 4");
    let profile = PreferenceProfile::new(voters, 4)?;
    let instance = ElectionInstance::new(graph, layout, scoring.clone(), profile)?;
    Ok(ReductionInstance {
        instance,
        base_node_count: n,
        augmented_nodes: Vec::new(),
        construction: ReductionKind::IntuitionT2K2,
        gap: scoring.min_gap_index(),
    })
}

/// Builds the straight-party-voting reduction on the unmodified base
/// graph: every voter carries the same list, chosen by where the scoring
/// rule first drops (`j`).
///
/// With `j <= k` (case C1) the target block sits at ranks `j..j+k`, right
/// after `j-1` opponents; activating a voter slides the block up one rank.
/// With `j > k` (case C2) all targets but the last lead the list and the
/// last one sits exactly at rank `j`, so activation lifts it to `j-1`.
pub fn gen_spv_reduction(
    base: &Graph,
    f: &ScoringRule,
    parties: u32,
    per_party: u32,
) -> Result<ReductionInstance, InstanceError> {
    let layout = PartyLayout::new(parties, per_party)?;
    let m = layout.candidate_count();
    if f.len() as u32 != m {
        return Err(InstanceError::WrongCandidateCount {
            expected: m,
            got: f.len(),
        });
    }
    let gap = f.min_gap_index();
    let j = gap.j as u32;
    let k = per_party;
    let i = j - 1;
    let mut order: Vec<u32> = Vec::with_capacity(m as usize);
    let construction = if j <= k {
        // opponents c^2_1..c^2_i, the whole target block, the rest
        order.extend(k..k + i);
        order.extend(0..k);
        order.extend(k + i..2 * k);
        order.extend(2 * k..m);
        ReductionKind::SpvC1
    } else {
        // leading targets, j-k opponents, the last target at rank j, rest
        order.extend(0..k - 1);
        order.extend(k..j);
        order.push(k - 1);
        order.extend(j..m);
        ReductionKind::SpvC2
    };
    let list = Permutation::from_ranking(&order)?;
    let profile = PreferenceProfile::new(vec![list; base.node_count() as usize], m)?;
    let instance = ElectionInstance::new(base.clone(), layout, f.clone(), profile)?;
    Ok(ReductionInstance {
        instance,
        base_node_count: base.node_count(),
        augmented_nodes: Vec::new(),
        construction,
        gap,
    })
}

/// Random directed instance: each ordered pair becomes an edge with
/// probability `edge_prob`, every edge carries `activation_prob`, and each
/// voter gets a uniformly random preference list. Fully determined by
/// `rng_seed`.
pub fn gen_random_instance(
    n: u32,
    parties: u32,
    per_party: u32,
    edge_prob: f64,
    activation_prob: Prob,
    scoring: ScoringRule,
    rng_seed: u64,
) -> Result<ElectionInstance, InstanceError> {
    let layout = PartyLayout::new(parties, per_party)?;
    let m = layout.candidate_count();
    if scoring.len() as u32 != m {
        return Err(InstanceError::WrongCandidateCount {
            expected: m,
            got: scoring.len(),
        });
    }
    let mut rng = stream_rng(rng_seed, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rand::Rng::gen_bool(&mut rng, edge_prob) {
                edges.push(Edge {
                    source: u,
                    target: v,
                    prob: activation_prob,
                });
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let mut voters = Vec::with_capacity(n as usize);
    for _ in 0..n {
        // Fisher-Yates over the candidate ids
        let mut order: Vec<u32> = (0..m).collect();
        for pos in (1..order.len()).rev() {
            let swap_with = rand::Rng::gen_range(&mut rng, 0..=pos);
            order.swap(pos, swap_with);
        }
        voters.push(Permutation::from_ranking(&order)?);
    }
    let profile = PreferenceProfile::new(voters, m)?;
    Ok(ElectionInstance::new(graph, layout, scoring, profile)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffusion::EstimatorConfig;
    use crate::election::{candidate_scores, party_winner_counts, Direction};
    use crate::exact::ratio;
    use crate::objectives::{evaluate_multiwinner_objective, ObjectiveKind};
    use alloc::collections::BTreeSet;

    fn approval3() -> ScoringRule {
        ScoringRule::approval(6, 3).unwrap()
    }

    fn deterministic_base(n: u32, edges: &[(u32, u32)]) -> Graph {
        Graph::new(
            n,
            edges
                .iter()
                .map(|&(u, v)| Edge {
                    source: u,
                    target: v,
                    prob: Prob::ONE,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn exceptional_reduction_counts_and_scores() {
        let base = deterministic_base(4, &[(0, 1), (1, 2), (2, 3)]);
        let red = gen_cmec_reduction(&base, CmecCase::Exceptional, &approval3()).unwrap();
        let inst = &red.instance;
        assert_eq!(inst.graph().node_count(), 8);
        assert_eq!(red.augmented_nodes.len(), 4);

        // baseline: a = 1, b = 0, |V| = 4
        let scores = candidate_scores(inst, &BTreeSet::new(), Direction::Constructive);
        assert_eq!(scores[2], 8); // 2a|V|
        assert_eq!(scores[4], 8);
        assert_eq!(scores[0], 0); // 2b|V|
        assert_eq!(scores[3], 4); // (a+b)|V|
        let counts = party_winner_counts(&scores, inst.layout());
        assert_eq!(counts, vec![0, 1, 1]);

        // full activation: every candidate at (a+b)|V|, target party wins
        let everyone: BTreeSet<u32> = inst.graph().nodes().collect();
        let scores = candidate_scores(inst, &everyone, Direction::Constructive);
        assert!(scores.iter().all(|&s| s == 4));
        let counts = party_winner_counts(&scores, inst.layout());
        assert_eq!(counts, vec![2, 0, 0]);
    }

    #[test]
    fn general_reduction_counts() {
        let base = deterministic_base(3, &[(0, 1), (1, 2)]);
        let red = gen_cmec_reduction(&base, CmecCase::General, &ScoringRule::borda(6).unwrap())
            .unwrap();
        let inst = &red.instance;
        assert_eq!(inst.graph().node_count(), 12);
        assert_eq!(red.augmented_nodes.len(), 9);
        let scores = candidate_scores(inst, &BTreeSet::new(), Direction::Constructive);
        let counts = party_winner_counts(&scores, inst.layout());
        assert_eq!(counts, vec![0, 2, 0]);
        let everyone: BTreeSet<u32> = inst.graph().nodes().collect();
        let scores = candidate_scores(inst, &everyone, Direction::Constructive);
        let counts = party_winner_counts(&scores, inst.layout());
        assert_eq!(counts, vec![2, 0, 0]);
    }

    #[test]
    fn cmec_scoring_shape_is_validated() {
        let base = deterministic_base(2, &[(0, 1)]);
        assert!(matches!(
            gen_cmec_reduction(&base, CmecCase::Exceptional, &ScoringRule::borda(6).unwrap()),
            Err(InstanceError::ScoringShape { .. })
        ));
        assert!(matches!(
            gen_cmec_reduction(&base, CmecCase::General, &approval3()),
            Err(InstanceError::ScoringShape { .. })
        ));
        assert!(matches!(
            gen_cmec_reduction(&base, CmecCase::General, &ScoringRule::borda(4).unwrap()),
            Err(InstanceError::WrongCandidateCount { .. })
        ));
    }

    #[test]
    fn intuition_instance_baseline_and_optimum() {
        let red = gen_intuition_instance(2).unwrap();
        let inst = &red.instance;
        let scores = candidate_scores(inst, &BTreeSet::new(), Direction::Constructive);
        let counts = party_winner_counts(&scores, inst.layout());
        assert_eq!(counts, vec![0, 2]);

        let cfg = EstimatorConfig::exact();
        // one voter from each half
        let mov =
            evaluate_multiwinner_objective(inst, &[0, 2], ObjectiveKind::MovC, &cfg).unwrap();
        assert_eq!(mov.value.exact().unwrap(), &ratio(4, 1));
        let dow =
            evaluate_multiwinner_objective(inst, &[0, 2], ObjectiveKind::DowC, &cfg).unwrap();
        assert_eq!(dow.value.exact().unwrap(), &ratio(2, 1));
        let none = evaluate_multiwinner_objective(inst, &[], ObjectiveKind::DowC, &cfg).unwrap();
        assert_eq!(none.value.exact().unwrap(), &ratio(0, 1));
    }

    #[test]
    fn spv_reduction_case_assignment() {
        let base = deterministic_base(3, &[(0, 1), (1, 2)]);
        let c1 = gen_spv_reduction(&base, &ScoringRule::plurality(4).unwrap(), 2, 2).unwrap();
        assert_eq!(c1.construction, ReductionKind::SpvC1);
        // j = 2 <= k: one opponent, then the target block
        assert_eq!(c1.instance.profile().voter(0).ranking(), vec![2, 0, 1, 3]);

        let c2 = gen_spv_reduction(&base, &ScoringRule::veto(4).unwrap(), 2, 2).unwrap();
        assert_eq!(c2.construction, ReductionKind::SpvC2);
        // j = 4 > k: leading target, two opponents, last target at rank 4
        assert_eq!(c2.instance.profile().voter(0).ranking(), vec![0, 2, 3, 1]);
        assert_eq!((c2.gap.j, c2.gap.a, c2.gap.b), (4, 1, 0));
    }

    #[test]
    fn spv_c1_baseline_matches_closed_form() {
        let base = deterministic_base(5, &[(0, 1), (2, 3)]);
        let f = ScoringRule::borda(6).unwrap();
        let red = gen_spv_reduction(&base, &f, 3, 2).unwrap();
        assert_eq!(red.construction, ReductionKind::SpvC1);
        // baseline per voter: sum f(l) for l in j..j+k, j=2, k=2
        let scores = crate::objectives::spv_party_scores(
            &red.instance,
            &[],
            Direction::Constructive,
            &EstimatorConfig::exact(),
        )
        .unwrap();
        let per_voter = (f.value_at(2) + f.value_at(3)) as i64;
        assert_eq!(scores[0].exact().unwrap(), &ratio(5 * per_voter, 1));
    }

    #[test]
    fn spv_c2_baseline_matches_closed_form() {
        let base = deterministic_base(4, &[]);
        let f = ScoringRule::veto(6).unwrap();
        let red = gen_spv_reduction(&base, &f, 3, 2).unwrap();
        assert_eq!(red.construction, ReductionKind::SpvC2);
        let scores = crate::objectives::spv_party_scores(
            &red.instance,
            &[],
            Direction::Constructive,
            &EstimatorConfig::exact(),
        )
        .unwrap();
        // a(k-1) + b per voter with a=1, b=0, k=2
        assert_eq!(scores[0].exact().unwrap(), &ratio(4, 1));
    }

    #[test]
    fn random_instances_are_deterministic() {
        let f = ScoringRule::borda(4).unwrap();
        let p = Prob::from_decimal_str("0.3").unwrap();
        let a = gen_random_instance(6, 2, 2, 0.4, p, f.clone(), 99).unwrap();
        let b = gen_random_instance(6, 2, 2, 0.4, p, f.clone(), 99).unwrap();
        assert_eq!(a, b);
        let c = gen_random_instance(6, 2, 2, 0.4, p, f.clone(), 100).unwrap();
        assert_ne!(a, c);

        let empty = gen_random_instance(6, 2, 2, 0.0, p, f, 7).unwrap();
        assert_eq!(empty.graph().edge_count(), 0);
        assert_eq!(empty.profile().voter_count(), 6);
    }
}
