//! $-bribery and ranking deletion through knapsack.
//!
//! Bribing ranking `i` (rewriting it to X) or deleting it removes exactly
//! `kendall_tau(X, R_i)` from the score at price `cost(R_i)`. Values are
//! bounded by `m(m-1)/2`, so a table indexed by value is polynomial.

use bitvec::prelude::*;

use crate::error::Result;
use crate::instance::{CostKind, ManipulationInstance};
use crate::ranking::{distance_to_profile, kendall_tau, Profile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnapsackItem {
    pub weight: u64,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    pub items: Vec<KnapsackItem>,
    /// Weight capacity W.
    pub capacity: u64,
    /// Value target T.
    pub target: u64,
}

impl KnapsackInstance {
    pub fn total_value(&self) -> u64 {
        self.items.iter().map(|it| it.value).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackSolution {
    pub value: u64,
    pub weight: u64,
    /// Ascending item indices.
    pub items: Vec<usize>,
}

/// Item `i` has weight `cost(R_i)` and value `kendall_tau(X, R_i)`;
/// `W = budget` and `T = max(D - k, 0)` where D is the current score.
pub fn reduce_dollar_to_knapsack(instance: &ManipulationInstance) -> Result<KnapsackInstance> {
    instance.require_complete()?;
    let costs = instance.costs(CostKind::PerRanking);
    let items: Vec<KnapsackItem> = instance
        .profile
        .iter()
        .zip(costs)
        .map(|(r, &weight)| KnapsackItem {
            weight,
            value: kendall_tau(&instance.target, r),
        })
        .collect();
    let score: u64 = items.iter().map(|it| it.value).sum();
    Ok(KnapsackInstance {
        items,
        capacity: instance.budget,
        target: score.saturating_sub(instance.k),
    })
}

const INF: u64 = u64::MAX;

/// Minimum weight to collect value at least `v`, for every `v` up to a cap,
/// over the suffixes of the item list. Values saturate at the cap.
struct ValueTable<'a> {
    items: &'a [KnapsackItem],
    cap: usize,
    // min weight over all items for value >= v
    best: Vec<u64>,
    // take[i * (cap + 1) + v]: item i is taken from state v
    take: BitVec,
}

impl<'a> ValueTable<'a> {
    fn build(items: &'a [KnapsackItem], cap: u64) -> Self {
        let cap = cap as usize;
        let width = cap + 1;
        let mut next = vec![INF; width];
        next[0] = 0;
        let mut cur = vec![INF; width];
        let mut take = bitvec![0; items.len() * width];
        for (i, item) in items.iter().enumerate().rev() {
            let value = item.value.min(cap as u64) as usize;
            cur[0] = 0;
            for v in 1..width {
                let skip = next[v];
                let rest = next[v.saturating_sub(value)];
                let with = if rest == INF {
                    INF
                } else {
                    rest.saturating_add(item.weight)
                };
                if value > 0 && with <= skip {
                    cur[v] = with;
                    take.set(i * width + v, true);
                } else {
                    cur[v] = skip;
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        ValueTable {
            items,
            cap,
            best: next,
            take,
        }
    }

    /// Lexicographically smallest minimum-weight item set reaching `value`.
    fn witness(&self, value: u64) -> Option<KnapsackSolution> {
        let mut v = (value as usize).min(self.cap);
        let weight = self.best[v];
        if weight == INF {
            return None;
        }
        let width = self.cap + 1;
        let mut chosen = Vec::new();
        let mut collected = 0;
        for (i, item) in self.items.iter().enumerate() {
            if v == 0 {
                break;
            }
            if self.take[i * width + v] {
                chosen.push(i);
                collected += item.value;
                v = v.saturating_sub(item.value as usize);
            }
        }
        debug_assert_eq!(v, 0);
        Some(KnapsackSolution {
            value: collected,
            weight,
            items: chosen,
        })
    }
}

/// Largest total value of a subset with weight at most the capacity,
/// together with one such subset. Ties among optimal subsets go to the
/// lightest, then to the lexicographically smallest index list.
pub fn solve_knapsack_value_dp(kp: &KnapsackInstance) -> KnapsackSolution {
    let total = kp.total_value();
    let table = ValueTable::build(&kp.items, total);
    let best = table
        .best
        .iter()
        .rposition(|&w| w <= kp.capacity)
        .expect("the empty set always fits");
    table
        .witness(best as u64)
        .expect("reachable value has a witness")
}

/// Cheapest subset whose value reaches `value`, or `None` if even all items
/// fall short.
pub fn min_weight_for_value(items: &[KnapsackItem], value: u64) -> Option<KnapsackSolution> {
    ValueTable::build(items, value).witness(value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BriberyOutcome {
    /// `min_cost <= budget`.
    pub feasible: bool,
    /// Least cost that brings the score to at most k.
    pub min_cost: u64,
    /// Ranking indices (0-based) of one cheapest selection.
    pub chosen: Vec<usize>,
    /// Score of the manipulated profile.
    pub residual_distance: u64,
}

fn cheapest_selection(instance: &ManipulationInstance) -> Result<KnapsackSolution> {
    let kp = reduce_dollar_to_knapsack(instance)?;
    Ok(min_weight_for_value(&kp.items, kp.target)
        .expect("selecting every ranking removes the whole score"))
}

/// Rewrites a cheapest set of rankings to X. YES iff that set costs at
/// most the budget.
pub fn solve_dollar_bribery(instance: &ManipulationInstance) -> Result<BriberyOutcome> {
    let sol = cheapest_selection(instance)?;
    let bribed = bribed_profile(instance, &sol.items);
    Ok(BriberyOutcome {
        feasible: sol.weight <= instance.budget,
        min_cost: sol.weight,
        residual_distance: distance_to_profile(&instance.target, &bribed),
        chosen: sol.items,
    })
}

/// Deletes a cheapest set of rankings. Same numbers as bribery; the residual
/// score is recomputed on the surviving profile.
pub fn solve_ranking_deletion(instance: &ManipulationInstance) -> Result<BriberyOutcome> {
    let sol = cheapest_selection(instance)?;
    let survivors = surviving_profile(instance, &sol.items);
    Ok(BriberyOutcome {
        feasible: sol.weight <= instance.budget,
        min_cost: sol.weight,
        residual_distance: distance_to_profile(&instance.target, &survivors),
        chosen: sol.items,
    })
}

/// Profile with the given rankings replaced by the target.
pub fn bribed_profile(instance: &ManipulationInstance, bribed: &[usize]) -> Profile {
    instance
        .profile
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if bribed.contains(&i) {
                instance.target.clone()
            } else {
                r.clone()
            }
        })
        .collect()
}

/// Profile with the given rankings removed.
pub fn surviving_profile(instance: &ManipulationInstance, deleted: &[usize]) -> Profile {
    instance
        .profile
        .iter()
        .enumerate()
        .filter(|(i, _)| !deleted.contains(i))
        .map(|(_, r)| r.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_one;

    fn items(pairs: &[(u64, u64)]) -> Vec<KnapsackItem> {
        pairs
            .iter()
            .map(|&(weight, value)| KnapsackItem { weight, value })
            .collect()
    }

    #[test]
    fn example_one_reduction() {
        let inst = example_one(1, 3);
        let kp = reduce_dollar_to_knapsack(&inst).unwrap();
        let values: Vec<u64> = kp.items.iter().map(|it| it.value).collect();
        assert_eq!(values, vec![1, 1, 1, 0, 0, 2]);
        assert!(kp.items.iter().all(|it| it.weight == 1));
        assert_eq!(kp.capacity, 1);
        assert_eq!(kp.target, 2);

        let slack = reduce_dollar_to_knapsack(&example_one(0, 9)).unwrap();
        assert_eq!(slack.target, 0);
    }

    #[test]
    fn single_item_fits() {
        let kp = KnapsackInstance {
            items: items(&[(1, 2)]),
            capacity: 1,
            target: 0,
        };
        let sol = solve_knapsack_value_dp(&kp);
        assert_eq!((sol.value, sol.items), (2, vec![0]));
    }

    #[test]
    fn example_one_items_at_capacity_one() {
        let kp = KnapsackInstance {
            items: items(&[(1, 1), (1, 1), (1, 1), (1, 0), (1, 0), (1, 2)]),
            capacity: 1,
            target: 2,
        };
        let sol = solve_knapsack_value_dp(&kp);
        assert_eq!(sol.value, 2);
        assert_eq!(sol.items, vec![5]);
    }

    #[test]
    fn nothing_fits_at_zero_capacity() {
        let kp = KnapsackInstance {
            items: items(&[(1, 3), (2, 5)]),
            capacity: 0,
            target: 1,
        };
        let sol = solve_knapsack_value_dp(&kp);
        assert_eq!(sol.value, 0);
        assert!(sol.items.is_empty());
    }

    #[test]
    fn ties_prefer_smallest_indices() {
        let its = items(&[(2, 1), (1, 1), (1, 1), (1, 1)]);
        let sol = min_weight_for_value(&its, 2).unwrap();
        assert_eq!(sol.items, vec![1, 2]);
        assert_eq!(sol.weight, 2);
        assert_eq!(min_weight_for_value(&its, 5), None);
    }

    #[test]
    fn empty_profile_reduces_to_nothing() {
        let inst = crate::fixtures::unit_instance(&[], &[0, 1, 2], 0, 0);
        let kp = reduce_dollar_to_knapsack(&inst).unwrap();
        assert!(kp.items.is_empty());
        assert_eq!(kp.target, 0);
        assert!(solve_dollar_bribery(&inst).unwrap().feasible);
    }

    #[test]
    fn example_one_dollar_bribery() {
        let yes = solve_dollar_bribery(&example_one(1, 3)).unwrap();
        assert!(yes.feasible);
        assert_eq!(yes.chosen, vec![5]);
        assert_eq!(yes.min_cost, 1);
        assert_eq!(yes.residual_distance, 3);

        let no = solve_dollar_bribery(&example_one(0, 3)).unwrap();
        assert!(!no.feasible);
        assert_eq!(no.min_cost, 1);

        let free = solve_dollar_bribery(&example_one(0, 5)).unwrap();
        assert!(free.feasible);
        assert!(free.chosen.is_empty());
    }

    #[test]
    fn example_one_ranking_deletion() {
        let out = solve_ranking_deletion(&example_one(1, 3)).unwrap();
        assert!(out.feasible);
        assert_eq!(out.chosen, vec![5]);
        assert_eq!(out.residual_distance, 3);
    }
}
