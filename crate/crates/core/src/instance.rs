use crate::error::{Error, Result};
use crate::ranking::{distance_to_profile, Candidates, Profile, Ranking};

/// Which cost vector a manipulation action is priced with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostKind {
    /// One price per ranking; $-bribery and ranking deletion.
    PerRanking,
    /// Price of one adjacent swap inside a ranking; swap bribery.
    PerRankingPerSwap,
    /// One price per candidate; candidate deletion.
    PerCandidate,
}

/// Candidates, a profile, the target ranking X, costs, a budget and a score
/// bound k. One instance feeds every solver; each reads the cost vector of
/// its [`CostKind`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationInstance {
    pub candidates: Candidates,
    pub profile: Profile,
    pub target: Ranking,
    /// Aligned with the profile; used for per-ranking and per-swap prices.
    pub ranking_costs: Vec<u64>,
    /// Indexed by candidate id.
    pub candidate_costs: Vec<u64>,
    pub budget: u64,
    pub k: u64,
}

impl ManipulationInstance {
    /// Validates shapes. Profile rankings may be partial here; solvers that
    /// need complete rankings call [`Self::require_complete`].
    pub fn new(
        candidates: Candidates,
        profile: Profile,
        target: Ranking,
        ranking_costs: Vec<u64>,
        candidate_costs: Vec<u64>,
        budget: u64,
        k: u64,
    ) -> Result<Self> {
        let m = candidates.len();
        if !target.is_complete_over(m) {
            return Err(Error::Malformed(format!(
                "target ranks {} of {m} candidates",
                target.len()
            )));
        }
        if ranking_costs.len() != profile.len() {
            return Err(Error::Malformed(format!(
                "{} ranking costs for {} rankings",
                ranking_costs.len(),
                profile.len()
            )));
        }
        if candidate_costs.len() != m {
            return Err(Error::Malformed(format!(
                "{} candidate costs for {m} candidates",
                candidate_costs.len()
            )));
        }
        if let Some(c) = profile
            .iter()
            .flat_map(|r| r.order().iter())
            .find(|&&c| c >= m)
        {
            return Err(Error::UnknownCandidate(*c));
        }
        Ok(ManipulationInstance {
            candidates,
            profile,
            target,
            ranking_costs,
            candidate_costs,
            budget,
            k,
        })
    }

    /// Instance with unit costs everywhere.
    pub fn with_unit_costs(
        candidates: Candidates,
        profile: Profile,
        target: Ranking,
        budget: u64,
        k: u64,
    ) -> Result<Self> {
        let n = profile.len();
        let m = candidates.len();
        Self::new(candidates, profile, target, vec![1; n], vec![1; m], budget, k)
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_rankings(&self) -> usize {
        self.profile.len()
    }

    pub fn costs(&self, kind: CostKind) -> &[u64] {
        match kind {
            CostKind::PerRanking | CostKind::PerRankingPerSwap => &self.ranking_costs,
            CostKind::PerCandidate => &self.candidate_costs,
        }
    }

    /// Fails unless every profile ranking covers all candidates.
    pub fn require_complete(&self) -> Result<()> {
        let m = self.num_candidates();
        match self.profile.iter().position(|r| !r.is_complete_over(m)) {
            None => Ok(()),
            Some(i) => Err(Error::Malformed(format!(
                "ranking {} is partial ({} of {m} candidates)",
                i + 1,
                self.profile.rankings()[i].len()
            ))),
        }
    }

    /// Kendall tau distance of X from the profile as given.
    pub fn score(&self) -> u64 {
        distance_to_profile(&self.target, &self.profile)
    }
}
