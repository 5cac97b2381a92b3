//! Parties, candidates, scoring rules, preference profiles, the
//! constructive/destructive update rules, and winner determination.
//!
//! Candidates are flat ids `0..t*k`, grouped by party: party `p` owns ids
//! `p*k..(p+1)*k`. Party 0 is always the campaign's target. The priority
//! order used to break score ties is exactly ascending flat id, which puts
//! the target party's candidates first.
//!
//! Scores are kept as scaled integers: a scoring rule stores its values
//! multiplied onto a common power-of-ten denominator, so score comparisons
//! and the tie-break are exact.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, NodeId};

/// Flat candidate identifier.
pub type CandidateId = u32;

/// Party identifier (0 is the target party).
pub type PartyId = u32;

/// Candidate scores are sums of scaled rule values; `u128` keeps them exact.
pub type Score = u128;

/// Campaign direction: promote or demote the target party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Constructive,
    Destructive,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Constructive => "constructive",
            Direction::Destructive => "destructive",
        })
    }
}

/// `t` parties with `k` candidates each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartyLayout {
    pub parties: u32,
    pub per_party: u32,
}

impl PartyLayout {
    pub fn new(parties: u32, per_party: u32) -> Result<PartyLayout, ElectionError> {
        if parties < 2 || per_party < 1 {
            return Err(ElectionError::InvalidLayout { parties, per_party });
        }
        Ok(PartyLayout { parties, per_party })
    }

    pub fn candidate_count(&self) -> u32 {
        self.parties * self.per_party
    }

    pub fn party_of(&self, c: CandidateId) -> PartyId {
        c / self.per_party
    }

    pub fn is_target(&self, c: CandidateId) -> bool {
        self.party_of(c) == 0
    }

    /// Flat id of candidate `index` (0-based) of `party` (0-based).
    pub fn candidate(&self, party: PartyId, index: u32) -> CandidateId {
        party * self.per_party + index
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> {
        0..self.candidate_count()
    }

    pub fn party_members(&self, party: PartyId) -> impl Iterator<Item = CandidateId> {
        let k = self.per_party;
        (party * k)..(party * k + k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElectionError {
    InvalidLayout { parties: u32, per_party: u32 },
    NotAPermutation { detail: String },
    LayoutMismatch { expected: u32, got: u32 },
    ProfileSizeMismatch { nodes: u32, voters: usize },
}

impl fmt::Display for ElectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElectionError::InvalidLayout { parties, per_party } => {
                write!(f, "invalid layout: {parties} parties x {per_party} candidates")
            }
            ElectionError::NotAPermutation { detail } => {
                write!(f, "preference list is not a permutation: {detail}")
            }
            ElectionError::LayoutMismatch { expected, got } => {
                write!(f, "expected {expected} candidates, got {got}")
            }
            ElectionError::ProfileSizeMismatch { nodes, voters } => {
                write!(f, "graph has {nodes} nodes but profile has {voters} voters")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScoringError {
    TooFewRanks { m: usize },
    Increasing { rank: usize },
    Constant,
    BadValue(String),
    Overflow,
    ApprovalWidth { x: u32, m: usize },
}

impl fmt::Display for ScoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoringError::TooFewRanks { m } => write!(f, "scoring rule needs >= 2 ranks, got {m}"),
            ScoringError::Increasing { rank } => {
                write!(f, "scoring values increase at rank {rank}")
            }
            ScoringError::Constant => f.write_str("scoring rule is constant over all ranks"),
            ScoringError::BadValue(s) => write!(f, "`{s}` is not a non-negative decimal"),
            ScoringError::Overflow => f.write_str("scoring values overflow the exact range"),
            ScoringError::ApprovalWidth { x, m } => {
                write!(f, "approval width {x} not in 1..{m}")
            }
        }
    }
}

/// Non-increasing, non-constant rank-to-points function `f(1..=m)`.
///
/// Values are stored scaled to a common power-of-ten denominator so that
/// all score arithmetic stays in integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringRule {
    values: Vec<u64>,
    scale: u64,
}

/// Location of the first strict drop of a scoring rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinGap {
    /// Smallest rank `j >= 2` with `f(j-1) > f(j)`.
    pub j: usize,
    /// Scaled `f(j-1)`.
    pub a: u64,
    /// Scaled `f(j)`.
    pub b: u64,
}

impl ScoringRule {
    fn validate(values: Vec<u64>, scale: u64) -> Result<ScoringRule, ScoringError> {
        if values.len() < 2 {
            return Err(ScoringError::TooFewRanks { m: values.len() });
        }
        for i in 1..values.len() {
            if values[i] > values[i - 1] {
                return Err(ScoringError::Increasing { rank: i + 1 });
            }
        }
        if values.iter().all(|&v| v == values[0]) {
            return Err(ScoringError::Constant);
        }
        Ok(ScoringRule { values, scale })
    }

    /// `(1, 0, ..., 0)`.
    pub fn plurality(m: usize) -> Result<ScoringRule, ScoringError> {
        let mut values = vec![0; m];
        if let Some(first) = values.first_mut() {
            *first = 1;
        }
        Self::validate(values, 1)
    }

    /// `x` ones followed by zeros.
    pub fn approval(m: usize, x: u32) -> Result<ScoringRule, ScoringError> {
        if x == 0 || (x as usize) >= m {
            return Err(ScoringError::ApprovalWidth { x, m });
        }
        let values = (0..m).map(|i| u64::from(i < x as usize)).collect();
        Self::validate(values, 1)
    }

    /// `(m-1, m-2, ..., 1, 0)`.
    pub fn borda(m: usize) -> Result<ScoringRule, ScoringError> {
        let values = (0..m).map(|i| (m - 1 - i) as u64).collect();
        Self::validate(values, 1)
    }

    /// `(1, ..., 1, 0)`.
    pub fn veto(m: usize) -> Result<ScoringRule, ScoringError> {
        let values = (0..m).map(|i| u64::from(i + 1 < m)).collect();
        Self::validate(values, 1)
    }

    /// Explicit integer values, scale 1.
    pub fn from_integers(values: &[u64]) -> Result<ScoringRule, ScoringError> {
        Self::validate(values.to_vec(), 1)
    }

    /// Explicit decimal values, parsed exactly onto a common power-of-ten
    /// denominator.
    pub fn from_decimal_strs<S: AsRef<str>>(values: &[S]) -> Result<ScoringRule, ScoringError> {
        let mut parsed: Vec<(u64, u32)> = Vec::with_capacity(values.len());
        let mut max_digits = 0u32;
        for s in values {
            let s = s.as_ref();
            let bad = || ScoringError::BadValue(String::from(s));
            let (int_part, frac_part) = match s.split_once('.') {
                Some((i, f)) => (i, f),
                None => (s, ""),
            };
            if (int_part.is_empty() && frac_part.is_empty())
                || !int_part.bytes().all(|b| b.is_ascii_digit())
                || !frac_part.bytes().all(|b| b.is_ascii_digit())
                || frac_part.len() > 18
            {
                return Err(bad());
            }
            let digits = frac_part.len() as u32;
            let int_val: u64 = if int_part.is_empty() {
                0
            } else {
                int_part.parse().map_err(|_| bad())?
            };
            let frac_val: u64 = if frac_part.is_empty() {
                0
            } else {
                frac_part.parse().map_err(|_| bad())?
            };
            let scaled = int_val
                .checked_mul(10u64.pow(digits))
                .and_then(|v| v.checked_add(frac_val))
                .ok_or(ScoringError::Overflow)?;
            parsed.push((scaled, digits));
            max_digits = max_digits.max(digits);
        }
        let scale = 10u64.pow(max_digits);
        let values = parsed
            .into_iter()
            .map(|(v, d)| {
                v.checked_mul(10u64.pow(max_digits - d))
                    .ok_or(ScoringError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(values, scale)
    }

    /// Number of ranks `m`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Scaled `f(rank)`, 1-based.
    pub fn value_at(&self, rank: usize) -> u64 {
        self.values[rank - 1]
    }

    /// Common denominator of the scaled values.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// First strict drop; validity guarantees one exists.
    pub fn min_gap_index(&self) -> MinGap {
        for j in 2..=self.values.len() {
            if self.value_at(j - 1) > self.value_at(j) {
                return MinGap {
                    j,
                    a: self.value_at(j - 1),
                    b: self.value_at(j),
                };
            }
        }
        unreachable!("non-constant non-increasing rule has a strict drop")
    }
}

/// A single voter's preference list: a bijection candidate -> rank `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    rank_of: Vec<u16>,
}

impl Permutation {
    /// Builds from the best-to-worst candidate order.
    pub fn from_ranking(order: &[CandidateId]) -> Result<Permutation, ElectionError> {
        let m = order.len();
        let mut rank_of = vec![0u16; m];
        for (pos, &c) in order.iter().enumerate() {
            if (c as usize) >= m {
                return Err(ElectionError::NotAPermutation {
                    detail: alloc::format!("candidate {c} out of range for {m} candidates"),
                });
            }
            if rank_of[c as usize] != 0 {
                return Err(ElectionError::NotAPermutation {
                    detail: alloc::format!("candidate {c} listed twice"),
                });
            }
            rank_of[c as usize] = (pos + 1) as u16;
        }
        Ok(Permutation { rank_of })
    }

    /// Builds from per-candidate ranks (1-based).
    pub fn from_rank_vector(rank_of: Vec<u16>) -> Result<Permutation, ElectionError> {
        let m = rank_of.len();
        let mut seen = vec![false; m];
        for &r in &rank_of {
            let r = r as usize;
            if r == 0 || r > m || seen[r - 1] {
                return Err(ElectionError::NotAPermutation {
                    detail: alloc::format!("ranks are not a bijection onto 1..={m}"),
                });
            }
            seen[r - 1] = true;
        }
        Ok(Permutation { rank_of })
    }

    pub fn len(&self) -> usize {
        self.rank_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank_of.is_empty()
    }

    /// Rank of candidate `c`, 1-based.
    pub fn rank_of(&self, c: CandidateId) -> u16 {
        self.rank_of[c as usize]
    }

    /// Best-to-worst candidate order.
    pub fn ranking(&self) -> Vec<CandidateId> {
        let mut order = vec![0; self.len()];
        for c in 0..self.len() {
            order[self.rank_of[c] as usize - 1] = c as CandidateId;
        }
        order
    }
}

/// One preference list per voter node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    voters: Vec<Permutation>,
    m: u32,
}

impl PreferenceProfile {
    pub fn new(voters: Vec<Permutation>, m: u32) -> Result<PreferenceProfile, ElectionError> {
        for p in &voters {
            if p.len() as u32 != m {
                return Err(ElectionError::LayoutMismatch {
                    expected: m,
                    got: p.len() as u32,
                });
            }
        }
        Ok(PreferenceProfile { voters, m })
    }

    pub fn voter_count(&self) -> usize {
        self.voters.len()
    }

    pub fn candidate_count(&self) -> u32 {
        self.m
    }

    pub fn voter(&self, v: NodeId) -> &Permutation {
        &self.voters[v as usize]
    }

    pub fn voters(&self) -> impl Iterator<Item = &Permutation> {
        self.voters.iter()
    }
}

/// The full election bound to its social graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ElectionInstance {
    graph: Graph,
    layout: PartyLayout,
    scoring: ScoringRule,
    profile: PreferenceProfile,
}

impl ElectionInstance {
    pub fn new(
        graph: Graph,
        layout: PartyLayout,
        scoring: ScoringRule,
        profile: PreferenceProfile,
    ) -> Result<ElectionInstance, ElectionError> {
        if scoring.len() as u32 != layout.candidate_count()
            || profile.candidate_count() != layout.candidate_count()
        {
            return Err(ElectionError::LayoutMismatch {
                expected: layout.candidate_count(),
                got: scoring.len() as u32,
            });
        }
        if profile.voter_count() != graph.node_count() as usize {
            return Err(ElectionError::ProfileSizeMismatch {
                nodes: graph.node_count(),
                voters: profile.voter_count(),
            });
        }
        Ok(ElectionInstance {
            graph,
            layout,
            scoring,
            profile,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn layout(&self) -> PartyLayout {
        self.layout
    }

    pub fn scoring(&self) -> &ScoringRule {
        &self.scoring
    }

    pub fn profile(&self) -> &PreferenceProfile {
        &self.profile
    }

    /// The campaign's party; always 0.
    pub fn target_party(&self) -> PartyId {
        0
    }
}

/// Applies the one-message preference update to a single list.
///
/// Constructive: every target candidate with at least one opponent ranked
/// better moves up one rank, and an opponent immediately ahead of a target
/// block is pushed below that block. Destructive is the mirror image. The
/// result is checked to still be a permutation.
pub fn apply_update(
    prefs: &Permutation,
    layout: PartyLayout,
    direction: Direction,
) -> Result<Permutation, ElectionError> {
    let m = layout.candidate_count() as usize;
    if prefs.len() != m {
        return Err(ElectionError::LayoutMismatch {
            expected: m as u32,
            got: prefs.len() as u32,
        });
    }
    // candidate occupying each rank; index 0 unused
    let mut cand_at = vec![0 as CandidateId; m + 1];
    for c in 0..m as u32 {
        cand_at[prefs.rank_of(c) as usize] = c;
    }
    let target_at = |r: usize| layout.is_target(cand_at[r]);

    let mut new_ranks = vec![0u16; m];
    match direction {
        Direction::Constructive => {
            // opp_before[r]: any opponent at a rank < r
            let mut opp_before = vec![false; m + 1];
            let mut seen = false;
            for r in 1..=m {
                opp_before[r] = seen;
                seen |= !target_at(r);
            }
            // run_from[r]: length of the contiguous target block starting at r
            let mut run_from = vec![0usize; m + 2];
            for r in (1..=m).rev() {
                run_from[r] = if target_at(r) { run_from[r + 1] + 1 } else { 0 };
            }
            for r in 1..=m {
                let c = cand_at[r];
                let nr = if layout.is_target(c) {
                    if opp_before[r] {
                        r - 1
                    } else {
                        r
                    }
                } else {
                    r + run_from[r + 1]
                };
                new_ranks[c as usize] = nr as u16;
            }
        }
        Direction::Destructive => {
            let mut opp_after = vec![false; m + 1];
            let mut seen = false;
            for r in (1..=m).rev() {
                opp_after[r] = seen;
                seen |= !target_at(r);
            }
            // run_to[r]: length of the contiguous target block ending at r
            let mut run_to = vec![0usize; m + 1];
            for r in 1..=m {
                run_to[r] = if target_at(r) { run_to[r - 1] + 1 } else { 0 };
            }
            for r in 1..=m {
                let c = cand_at[r];
                let nr = if layout.is_target(c) {
                    if opp_after[r] {
                        r + 1
                    } else {
                        r
                    }
                } else {
                    r - run_to[r - 1]
                };
                new_ranks[c as usize] = nr as u16;
            }
        }
    }
    let updated = Permutation::from_rank_vector(new_ranks)
        .expect("update rule must map permutations to permutations");
    Ok(updated)
}

/// Per-candidate scores for one realization: voters in `active` are scored
/// with their updated lists, everyone else with the original ones.
pub fn candidate_scores(
    inst: &ElectionInstance,
    active: &BTreeSet<NodeId>,
    direction: Direction,
) -> Vec<Score> {
    let layout = inst.layout();
    let m = layout.candidate_count() as usize;
    let mut scores = vec![0 as Score; m];
    for (v, prefs) in inst.profile().voters().enumerate() {
        let updated;
        let effective = if active.contains(&(v as NodeId)) {
            updated =
                apply_update(prefs, layout, direction).expect("instance permutations fit layout");
            &updated
        } else {
            prefs
        };
        for c in 0..m as u32 {
            scores[c as usize] += inst.scoring().value_at(effective.rank_of(c) as usize) as Score;
        }
    }
    scores
}

/// Winner set and per-candidate standing for one score vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinnerSet {
    /// The elected candidates, best first (exactly `k`).
    pub winners: Vec<CandidateId>,
    /// For each candidate, how many candidates rank strictly below it in
    /// the (score, priority) order. A candidate wins iff this reaches
    /// `(t-1) * k`.
    pub dominated: Vec<u32>,
}

/// Ranks candidates by score, breaking ties by ascending flat id (target
/// party first), and elects the top `k`.
pub fn determine_winners(scores: &[Score], layout: PartyLayout) -> WinnerSet {
    let m = layout.candidate_count() as usize;
    debug_assert_eq!(scores.len(), m);
    let mut order: Vec<CandidateId> = (0..m as u32).collect();
    order.sort_by(|&a, &b| scores[b as usize].cmp(&scores[a as usize]).then(a.cmp(&b)));
    let mut dominated = vec![0u32; m];
    for (pos, &c) in order.iter().enumerate() {
        dominated[c as usize] = (m - 1 - pos) as u32;
    }
    let winners = order[..layout.per_party as usize].to_vec();
    WinnerSet { winners, dominated }
}

/// Number of elected candidates per party.
pub fn party_winner_counts(scores: &[Score], layout: PartyLayout) -> Vec<u32> {
    let w = determine_winners(scores, layout);
    let mut counts = vec![0u32; layout.parties as usize];
    let threshold = (layout.parties - 1) * layout.per_party;
    for c in layout.candidates() {
        if w.dominated[c as usize] >= threshold {
            counts[layout.party_of(c) as usize] += 1;
        }
    }
    counts
}
