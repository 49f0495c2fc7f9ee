//! Exhaustive reference solvers for desk-scale instances.
//!
//! None of these use the structural facts the fast solvers rely on (agreement
//! of optimal completions with X, the knapsack view, the swap-count view of
//! a manipulation beyond "one admissible swap removes one disagreement").
//! Distances are recomputed from scratch with the pairwise Kendall tau scan.

use std::env;

use crate::error::{Error, Result};
use crate::instance::{CostKind, ManipulationInstance};
use crate::ranking::{distance_to_profile, kendall_tau, restrict, CandidateId, Profile, Ranking};

/// Environment variable overriding [`OracleBudget::max_total_enumeration`].
pub const ORACLE_CAP_ENV: &str = "KEMENY_ORACLE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_candidates: usize,
    pub max_rankings: usize,
    pub max_total_enumeration: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_candidates: 6,
            max_rankings: 5,
            max_total_enumeration: 10_000_000,
        }
    }
}

impl OracleBudget {
    /// Defaults, with the enumeration cap read from `KEMENY_ORACLE_CAP` when
    /// set to a number.
    pub fn from_env() -> Self {
        let mut budget = OracleBudget::default();
        if let Some(cap) = env::var(ORACLE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            budget.max_total_enumeration = cap;
        }
        budget
    }

    fn check_candidates(&self, m: usize) -> Result<()> {
        if m > self.max_candidates {
            return Err(Error::TooLarge {
                what: "candidate count",
                size: m as u128,
                cap: self.max_candidates as u128,
            });
        }
        Ok(())
    }

    fn check_rankings(&self, n: usize) -> Result<()> {
        if n > self.max_rankings {
            return Err(Error::TooLarge {
                what: "ranking count",
                size: n as u128,
                cap: self.max_rankings as u128,
            });
        }
        Ok(())
    }

    fn check_states(&self, states: u128) -> Result<()> {
        if states > self.max_total_enumeration {
            return Err(Error::TooLarge {
                what: "enumerated states",
                size: states,
                cap: self.max_total_enumeration,
            });
        }
        Ok(())
    }
}

/// Least cost found by an exhaustive scan, with the first witness attaining
/// it in scan order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleAnswer<W> {
    pub min_cost: u64,
    pub witness: W,
}

impl<W> OracleAnswer<W> {
    /// Feasible at `budget` exactly when `budget >= min_cost`.
    pub fn feasible(&self, budget: u64) -> bool {
        self.min_cost <= budget
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1, u128::saturating_mul)
}

fn pow2(n: usize) -> u128 {
    1u128.checked_shl(n as u32).unwrap_or(u128::MAX)
}

/// Every permutation of `items`, in lexicographic order of index choices.
fn permutations(items: &[CandidateId]) -> Vec<Vec<CandidateId>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Least total distance over all completions of the partial rankings, with
/// the first best completion of each ranking. Each ranking is completed by
/// trying every complete ranking over the candidates and keeping those that
/// restrict back to it.
pub fn oracle_pks(
    instance: &ManipulationInstance,
    budget: &OracleBudget,
) -> Result<OracleAnswer<Vec<Ranking>>> {
    let m = instance.num_candidates();
    budget.check_candidates(m)?;
    budget.check_rankings(instance.num_rankings())?;
    budget.check_states(factorial(m).saturating_mul(instance.num_rankings().max(1) as u128))?;

    let all: Vec<CandidateId> = (0..m).collect();
    let complete: Vec<Ranking> = permutations(&all)
        .into_iter()
        .map(|order| Ranking::new(order).expect("permutation has no repeats"))
        .collect();
    let mut total = 0;
    let mut witness = Vec::with_capacity(instance.num_rankings());
    for partial in instance.profile.iter() {
        let (best, full) = complete
            .iter()
            .filter(|full| restrict(full, partial.order()).as_ref() == Ok(partial))
            .map(|full| (kendall_tau(&instance.target, full), full))
            .min_by_key(|&(d, _)| d)
            .expect("instance validation keeps partial rankings inside the candidate set");
        total += best;
        witness.push(full.clone());
    }
    Ok(OracleAnswer {
        min_cost: total,
        witness,
    })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// Cheapest set of rankings to rewrite to X so that the score is at most k.
pub fn oracle_dollar(
    instance: &ManipulationInstance,
    budget: &OracleBudget,
) -> Result<OracleAnswer<Vec<usize>>> {
    instance.require_complete()?;
    let n = instance.num_rankings();
    budget.check_rankings(n)?;
    budget.check_states(pow2(n))?;
    let costs = instance.costs(CostKind::PerRanking);
    let mut best: Option<OracleAnswer<Vec<usize>>> = None;
    for set in subsets(n) {
        let cost: u64 = set.iter().map(|&i| costs[i]).sum();
        if best.as_ref().is_some_and(|b| cost >= b.min_cost) {
            continue;
        }
        let profile: Profile = instance
            .profile
            .iter()
            .enumerate()
            .map(|(i, r)| if set.contains(&i) { &instance.target } else { r })
            .cloned()
            .collect();
        if distance_to_profile(&instance.target, &profile) <= instance.k {
            best = Some(OracleAnswer {
                min_cost: cost,
                witness: set,
            });
        }
    }
    Ok(best.expect("bribing every ranking reaches distance 0"))
}

/// Cheapest set of rankings to delete so that the score is at most k.
pub fn oracle_ranking_deletion(
    instance: &ManipulationInstance,
    budget: &OracleBudget,
) -> Result<OracleAnswer<Vec<usize>>> {
    instance.require_complete()?;
    let n = instance.num_rankings();
    budget.check_rankings(n)?;
    budget.check_states(pow2(n))?;
    let costs = instance.costs(CostKind::PerRanking);
    let mut best: Option<OracleAnswer<Vec<usize>>> = None;
    for set in subsets(n) {
        let cost: u64 = set.iter().map(|&i| costs[i]).sum();
        if best.as_ref().is_some_and(|b| cost >= b.min_cost) {
            continue;
        }
        let profile: Profile = instance
            .profile
            .iter()
            .enumerate()
            .filter(|(i, _)| !set.contains(i))
            .map(|(_, r)| r.clone())
            .collect();
        if distance_to_profile(&instance.target, &profile) <= instance.k {
            best = Some(OracleAnswer {
                min_cost: cost,
                witness: set,
            });
        }
    }
    Ok(best.expect("deleting every ranking reaches distance 0"))
}

/// Cheapest swap-count allocation `(s_1, ..., s_n)`, `s_i <= d_i`, whose
/// total remaining distance is at most k.
pub fn oracle_swap(
    instance: &ManipulationInstance,
    budget: &OracleBudget,
) -> Result<OracleAnswer<Vec<u64>>> {
    instance.require_complete()?;
    let n = instance.num_rankings();
    budget.check_rankings(n)?;
    let distances: Vec<u64> = instance
        .profile
        .iter()
        .map(|r| kendall_tau(&instance.target, r))
        .collect();
    let states = distances
        .iter()
        .map(|&d| d as u128 + 1)
        .try_fold(1u128, u128::checked_mul)
        .unwrap_or(u128::MAX);
    budget.check_states(states)?;
    let costs = instance.costs(CostKind::PerRankingPerSwap);

    let mut counts = vec![0u64; n];
    let mut best: Option<OracleAnswer<Vec<u64>>> = None;
    loop {
        let remaining: u64 = distances.iter().zip(&counts).map(|(d, s)| d - s).sum();
        if remaining <= instance.k {
            let cost: u64 = counts.iter().zip(costs).map(|(s, c)| s * c).sum();
            if best.as_ref().is_none_or(|b| cost < b.min_cost) {
                best = Some(OracleAnswer {
                    min_cost: cost,
                    witness: counts.clone(),
                });
            }
        }
        // odometer increment
        let mut i = 0;
        while i < n && counts[i] == distances[i] {
            counts[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        counts[i] += 1;
    }
    Ok(best.expect("repairing every ranking reaches distance 0"))
}

/// Cheapest set of candidates to delete so that the restricted score is at
/// most k. The only solver for general candidate deletion.
pub fn oracle_candidate_deletion(
    instance: &ManipulationInstance,
    budget: &OracleBudget,
) -> Result<OracleAnswer<Vec<CandidateId>>> {
    instance.require_complete()?;
    let m = instance.num_candidates();
    budget.check_candidates(m)?;
    budget.check_rankings(instance.num_rankings())?;
    budget.check_states(pow2(m))?;
    let costs = instance.costs(CostKind::PerCandidate);
    let mut best: Option<OracleAnswer<Vec<CandidateId>>> = None;
    for deleted in subsets(m) {
        let cost: u64 = deleted.iter().map(|&c| costs[c]).sum();
        if best.as_ref().is_some_and(|b| cost >= b.min_cost) {
            continue;
        }
        let keep: Vec<CandidateId> = (0..m).filter(|c| !deleted.contains(c)).collect();
        let target = restrict(&instance.target, &keep)?;
        let profile = instance
            .profile
            .iter()
            .map(|r| restrict(r, &keep))
            .collect::<Result<Profile>>()?;
        if distance_to_profile(&target, &profile) <= instance.k {
            best = Some(OracleAnswer {
                min_cost: cost,
                witness: deleted,
            });
        }
    }
    Ok(best.expect("deleting every candidate reaches distance 0"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_one, unit_instance};

    #[test]
    fn pks_oracle_examples() {
        let b = OracleBudget::default();
        let complete = unit_instance(&[&[2, 0, 1]], &[0, 1, 2], 0, 0);
        assert_eq!(oracle_pks(&complete, &b).unwrap().min_cost, 2);
        let partial = unit_instance(&[&[3, 0]], &[0, 1, 2, 3], 0, 0);
        assert_eq!(oracle_pks(&partial, &b).unwrap().min_cost, 3);
        let empty = unit_instance(&[&[]], &[2, 0, 1], 0, 0);
        assert_eq!(oracle_pks(&empty, &b).unwrap().min_cost, 0);
    }

    #[test]
    fn dollar_oracle_examples() {
        let b = OracleBudget::default();
        // example one has six rankings
        let b6 = OracleBudget {
            max_rankings: 6,
            ..b
        };
        let ans = oracle_dollar(&example_one(0, 3), &b6).unwrap();
        assert_eq!(ans.min_cost, 1);
        assert_eq!(ans.witness, vec![5]);
        assert!(!ans.feasible(0));
        assert_eq!(oracle_dollar(&example_one(0, 5), &b6).unwrap().min_cost, 0);
        let none = unit_instance(&[], &[0, 1], 0, 0);
        assert_eq!(oracle_dollar(&none, &b).unwrap().min_cost, 0);
        assert!(matches!(
            oracle_dollar(&example_one(0, 3), &b),
            Err(Error::TooLarge { .. })
        ));
        assert_eq!(
            oracle_ranking_deletion(&example_one(0, 3), &b6).unwrap().min_cost,
            1
        );
    }

    #[test]
    fn swap_oracle_examples() {
        let b6 = OracleBudget {
            max_rankings: 6,
            ..OracleBudget::default()
        };
        assert_eq!(oracle_swap(&example_one(0, 3), &b6).unwrap().min_cost, 2);
        assert_eq!(oracle_swap(&example_one(0, 9), &b6).unwrap().min_cost, 0);
        let mut single = unit_instance(&[&[3, 1, 0, 2]], &[0, 1, 2, 3], 0, 1);
        single.ranking_costs = vec![3];
        assert_eq!(oracle_swap(&single, &b6).unwrap().min_cost, 9);
    }

    #[test]
    fn candidate_deletion_oracle_examples() {
        let b = OracleBudget::default();
        let one = unit_instance(&[&[1, 0, 2]], &[0, 1, 2], 0, 0);
        let ans = oracle_candidate_deletion(&one, &b).unwrap();
        assert_eq!(ans.min_cost, 1);
        assert_eq!(ans.witness, vec![0]);
        let slack = unit_instance(&[&[2, 1, 0]], &[0, 1, 2], 0, 3);
        assert_eq!(oracle_candidate_deletion(&slack, &b).unwrap().min_cost, 0);
        let reversed = unit_instance(&[&[2, 1, 0]], &[0, 1, 2], 0, 0);
        assert_eq!(oracle_candidate_deletion(&reversed, &b).unwrap().min_cost, 2);
    }

    #[test]
    fn caps_are_enforced() {
        let tight = OracleBudget {
            max_total_enumeration: 3,
            ..OracleBudget::default()
        };
        let inst = unit_instance(&[&[1, 0, 2]], &[0, 1, 2], 0, 0);
        assert!(matches!(
            oracle_candidate_deletion(&inst, &tight),
            Err(Error::TooLarge { .. })
        ));
        assert!(oracle_pks(&inst, &tight).is_err());
    }
}
