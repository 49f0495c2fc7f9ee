//! Swap bribery.
//!
//! Every admissible swap (an adjacent pair ordered against X) lowers the
//! distance of its ranking by exactly one, so a manipulation is fully
//! described by how many swaps each ranking receives. The table
//! `T[i, s1, s2, j]` holds the least cost of putting `s1` swaps into ranking
//! `i` and `s2` swaps into rankings `1..i` so that the first `i` rankings end
//! within distance `j` of X.

use crate::error::{Error, Result};
use crate::instance::{CostKind, ManipulationInstance};
use crate::ranking::{apply_adjacent_swap, find_admissible_disagreement, kendall_tau, Ranking};

const INF: u64 = u64::MAX;

/// First layer of the table: `s1 * cost` when `distance - s1 <= j`,
/// otherwise unreachable. `None` stands for an infinite entry.
pub fn swap_dp_base(distance: u64, cost: u64, s1: u64, j: u64) -> Option<u64> {
    if s1 > distance || distance - s1 > j {
        None
    } else {
        Some(s1 * cost)
    }
}

/// Per-ranking distances to X and swap prices, the only data the table
/// reads from an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapProblem {
    pub distances: Vec<u64>,
    pub costs: Vec<u64>,
    pub k: u64,
}

impl SwapProblem {
    pub fn from_instance(instance: &ManipulationInstance) -> Result<Self> {
        instance.require_complete()?;
        Ok(SwapProblem {
            distances: instance
                .profile
                .iter()
                .map(|r| kendall_tau(&instance.target, r))
                .collect(),
            costs: instance.costs(CostKind::PerRankingPerSwap).to_vec(),
            k: instance.k,
        })
    }

    pub fn total_distance(&self) -> u64 {
        self.distances.iter().sum()
    }

    /// `prefix[i]`: summed distance of the first `i` rankings.
    fn prefix(&self) -> Vec<u64> {
        let mut acc = 0;
        let mut out = vec![0];
        for d in &self.distances {
            acc += d;
            out.push(acc);
        }
        out
    }
}

/// The full four-dimensional table, materialised entry by entry.
///
/// Meant for inspection and cross-checking on small instances; the solver
/// itself walks only the entries an optimum can use.
#[derive(Debug, Clone)]
pub struct SwapDpTable {
    distances: Vec<u64>,
    prefix: Vec<u64>,
    k: u64,
    // layers[i][(s1 * (prefix[i] + 1) + s2) * (k + 1) + j]
    layers: Vec<Vec<u64>>,
}

impl SwapDpTable {
    /// Default bound on the number of stored entries.
    pub const DEFAULT_CAP: u128 = 20_000_000;

    pub fn build(problem: &SwapProblem, cap: u128) -> Result<Self> {
        let prefix = problem.prefix();
        let k = problem.k;
        let size: u128 = problem
            .distances
            .iter()
            .enumerate()
            .map(|(i, &d)| (d as u128 + 1) * (prefix[i] as u128 + 1) * (k as u128 + 1))
            .sum();
        if size > cap {
            return Err(Error::TooLarge {
                what: "swap table entries",
                size,
                cap,
            });
        }
        let width_j = k as usize + 1;
        let mut layers: Vec<Vec<u64>> = Vec::with_capacity(problem.distances.len());
        for (i, (&d, &cost)) in problem.distances.iter().zip(&problem.costs).enumerate() {
            let width_s2 = prefix[i] as usize + 1;
            let mut layer = vec![INF; (d as usize + 1) * width_s2 * width_j];
            if i == 0 {
                for s1 in 0..=d {
                    for j in 0..=k {
                        let at = s1 as usize * width_j + j as usize;
                        layer[at] = swap_dp_base(d, cost, s1, j).unwrap_or(INF);
                    }
                }
            } else {
                let prev = &layers[i - 1];
                let prev_d = problem.distances[i - 1];
                let prev_width_s2 = prefix[i - 1] as usize + 1;
                for s1 in 0..=d {
                    for s2 in 0..=prefix[i] {
                        for j in 0..=k {
                            // j - d_i + s1, clamped to k above; negative is infinite
                            let Some(jp) = (j + s1).checked_sub(d) else {
                                continue;
                            };
                            let jp = jp.min(k) as usize;
                            let mut best = INF;
                            for s2a in 0..=s2.min(prev_d) {
                                let s2b = s2 - s2a;
                                if s2b > prefix[i - 1] {
                                    continue;
                                }
                                let at = (s2a as usize * prev_width_s2 + s2b as usize) * width_j
                                    + jp;
                                best = best.min(prev[at]);
                            }
                            if best != INF {
                                let at = (s1 as usize * width_s2 + s2 as usize) * width_j
                                    + j as usize;
                                layer[at] = best + s1 * cost;
                            }
                        }
                    }
                }
            }
            layers.push(layer);
        }
        Ok(SwapDpTable {
            distances: problem.distances.clone(),
            prefix,
            k,
            layers,
        })
    }

    /// `T[i, s1, s2, j]` with `i` 1-based; out-of-range entries are `None`.
    pub fn get(&self, i: usize, s1: u64, s2: u64, j: u64) -> Option<u64> {
        if i == 0 || i > self.layers.len() {
            return None;
        }
        let idx = i - 1;
        if s1 > self.distances[idx] || s2 > self.prefix[idx] || j > self.k {
            return None;
        }
        let width_s2 = self.prefix[idx] as usize + 1;
        let width_j = self.k as usize + 1;
        let v = self.layers[idx][(s1 as usize * width_s2 + s2 as usize) * width_j + j as usize];
        (v != INF).then_some(v)
    }

    /// `min over (s1, s2) of T[n, s1, s2, k]`; zero for an empty profile.
    pub fn min_final(&self) -> Option<u64> {
        let n = self.layers.len();
        if n == 0 {
            return Some(0);
        }
        (0..=self.distances[n - 1])
            .flat_map(|s1| (0..=self.prefix[n - 1]).map(move |s2| (s1, s2)))
            .filter_map(|(s1, s2)| self.get(n, s1, s2, self.k))
            .min()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapWitness {
    /// Swap count per ranking.
    pub per_ranking_swaps: Vec<u64>,
    pub total_cost: u64,
    /// Per ranking, the 1-based positions swapped in execution order.
    pub swap_script: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapOutcome {
    pub feasible: bool,
    pub min_cost: u64,
    pub witness: SwapWitness,
}

/// Least-cost swap allocation bringing the score to at most k.
///
/// Evaluates the table recurrence over `(s1, s2)` but only for prefix swap
/// totals an optimum can pass through: the first `i` rankings are left within
/// `k` of X and never receive more than `D - k` swaps in total. Inside that
/// window `T[i, s1, s2, j]` does not depend on `j` once the entry is finite,
/// so each kept entry is stored at its tightest `j`.
pub fn solve_swap_bribery(instance: &ManipulationInstance) -> Result<SwapOutcome> {
    let problem = SwapProblem::from_instance(instance)?;
    let counts = min_cost_allocation(&problem);
    let total_cost = counts
        .iter()
        .zip(&problem.costs)
        .map(|(s, c)| s * c)
        .sum::<u64>();
    let swap_script = instance
        .profile
        .iter()
        .zip(&counts)
        .map(|(r, &s)| repair_script(r, &instance.target, s))
        .collect();
    Ok(SwapOutcome {
        feasible: total_cost <= instance.budget,
        min_cost: total_cost,
        witness: SwapWitness {
            per_ranking_swaps: counts,
            total_cost,
            swap_script,
        },
    })
}

/// Swap counts per ranking of a cheapest allocation, recovered by
/// backtracking through the collapsed layers.
pub fn min_cost_allocation(problem: &SwapProblem) -> Vec<u64> {
    let n = problem.distances.len();
    let prefix = problem.prefix();
    let need = problem.total_distance().saturating_sub(problem.k);
    if need == 0 {
        return vec![0; n];
    }
    let k = problem.k;
    let lo = |i: usize| prefix[i].saturating_sub(k);
    let hi = |i: usize| prefix[i].min(need);

    // best[i][S - lo(i)]: least cost of S swaps among the first i rankings,
    // i.e. the minimum over s1 + s2 = S of T[i, s1, s2, prefix[i] - S];
    // split[i][..] keeps the s1 attaining it
    let mut best: Vec<Vec<u64>> = vec![vec![0]];
    let mut split: Vec<Vec<u64>> = vec![vec![0]];
    for i in 1..=n {
        let d = problem.distances[i - 1];
        let cost = problem.costs[i - 1];
        let (plo, phi) = (lo(i - 1), hi(i - 1));
        let (clo, chi) = (lo(i), hi(i));
        let mut row = vec![INF; (chi - clo + 1) as usize];
        let mut arg = vec![0; row.len()];
        for total in clo..=chi {
            // s2 = total - s1 must lie in the previous window
            let s1_min = total.saturating_sub(phi);
            let s1_max = d.min(total - plo.min(total));
            for s1 in s1_min..=s1_max {
                let s2 = total - s1;
                if s2 < plo || s2 > phi {
                    continue;
                }
                let prev = best[i - 1][(s2 - plo) as usize];
                if prev == INF {
                    continue;
                }
                let v = prev + s1 * cost;
                let slot = (total - clo) as usize;
                if v < row[slot] {
                    row[slot] = v;
                    arg[slot] = s1;
                }
            }
        }
        best.push(row);
        split.push(arg);
    }

    let mut counts = vec![0; n];
    let mut total = need;
    for i in (1..=n).rev() {
        let s1 = split[i][(total - lo(i)) as usize];
        counts[i - 1] = s1;
        total -= s1;
    }
    debug_assert_eq!(total, 0);
    counts
}

/// Positions of `swaps` successive leftmost admissible swaps taking
/// `ranking` toward `target`. Stops early if the ranking reaches `target`.
pub fn repair_script(ranking: &Ranking, target: &Ranking, swaps: u64) -> Vec<usize> {
    let mut current = ranking.clone();
    let mut script = Vec::with_capacity(swaps as usize);
    for _ in 0..swaps {
        match find_admissible_disagreement(&current, target) {
            Some(p) => {
                current.swap_adjacent(p).expect("admissible position is in range");
                script.push(p);
            }
            None => break,
        }
    }
    script
}

/// Runs a script on a ranking, failing if any step is not an admissible
/// swap at the moment it is executed.
pub fn execute_script(ranking: &Ranking, target: &Ranking, script: &[usize]) -> Result<Ranking> {
    let mut current = ranking.clone();
    for &p in script {
        if p == 0 || p >= current.len() {
            return Err(Error::IndexOutOfRange {
                index: p,
                min: 1,
                max: current.len().saturating_sub(1),
            });
        }
        let (a, b) = (current.order()[p - 1], current.order()[p]);
        if !target.prefers(b, a) {
            return Err(Error::Malformed(format!(
                "swap at position {p} is not admissible"
            )));
        }
        current = apply_adjacent_swap(&current, p)?;
    }
    Ok(current)
}

/// Least cost computed greedily: buy the required distance drop from the
/// cheapest rankings first, at most `d_i` swaps each.
pub fn greedy_swap_oracle(instance: &ManipulationInstance) -> Result<u64> {
    let problem = SwapProblem::from_instance(instance)?;
    Ok(greedy_min_cost(&problem))
}

pub fn greedy_min_cost(problem: &SwapProblem) -> u64 {
    let mut need = problem.total_distance().saturating_sub(problem.k);
    let mut order: Vec<usize> = (0..problem.distances.len()).collect();
    order.sort_by_key(|&i| (problem.costs[i], i));
    let mut total = 0;
    for i in order {
        if need == 0 {
            break;
        }
        let take = need.min(problem.distances[i]);
        total += take * problem.costs[i];
        need -= take;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_one, unit_instance};
    use crate::ranking::distance_to_profile;

    #[test]
    fn base_case_entries() {
        assert_eq!(swap_dp_base(1, 5, 1, 0), Some(5));
        assert_eq!(swap_dp_base(1, 5, 0, 0), None);
        for j in 0..4 {
            assert_eq!(swap_dp_base(0, 7, 0, j), Some(0));
        }
        assert_eq!(swap_dp_base(2, 1, 3, 5), None);
    }

    #[test]
    fn example_one_unit_costs() {
        let out = solve_swap_bribery(&example_one(2, 3)).unwrap();
        assert!(out.feasible);
        assert_eq!(out.min_cost, 2);
        assert_eq!(greedy_swap_oracle(&example_one(2, 3)).unwrap(), 2);
        let no = solve_swap_bribery(&example_one(1, 3)).unwrap();
        assert!(!no.feasible);
        assert_eq!(no.min_cost, 2);
    }

    #[test]
    fn expensive_reversal_is_avoided() {
        let mut inst = example_one(2, 3);
        inst.ranking_costs = vec![1, 1, 1, 1, 1, 10];
        let out = solve_swap_bribery(&inst).unwrap();
        assert_eq!(out.min_cost, 2);
        let s = &out.witness.per_ranking_swaps;
        assert_eq!(s[5], 0);
        assert_eq!(s[..3].iter().sum::<u64>(), 2);
        assert!(s[..3].iter().all(|&x| x <= 1));
    }

    #[test]
    fn slack_costs_nothing() {
        let out = solve_swap_bribery(&example_one(0, 5)).unwrap();
        assert!(out.feasible);
        assert_eq!(out.min_cost, 0);
        assert!(out.witness.swap_script.iter().all(Vec::is_empty));
    }

    #[test]
    fn single_ranking_greedy() {
        // d = 4: X = a b c d, R = b d c a? pick one with exactly 4 inversions
        let mut inst = unit_instance(&[&[3, 1, 0, 2]], &[0, 1, 2, 3], 0, 1);
        assert_eq!(inst.score(), 4);
        inst.ranking_costs = vec![3];
        assert_eq!(greedy_swap_oracle(&inst).unwrap(), 9);
        assert_eq!(solve_swap_bribery(&inst).unwrap().min_cost, 9);
    }

    #[test]
    fn scripts_execute_admissibly() {
        let inst = example_one(10, 1);
        let out = solve_swap_bribery(&inst).unwrap();
        let repaired: crate::ranking::Profile = inst
            .profile
            .iter()
            .zip(&out.witness.swap_script)
            .map(|(r, script)| execute_script(r, &inst.target, script).unwrap())
            .collect();
        assert!(distance_to_profile(&inst.target, &repaired) <= 1);
        for (script, &s) in out.witness.swap_script.iter().zip(&out.witness.per_ranking_swaps) {
            assert_eq!(script.len() as u64, s);
        }
    }

    #[test]
    fn execute_rejects_inadmissible_swap() {
        let x = Ranking::identity(3);
        assert!(execute_script(&x, &x, &[1]).is_err());
        assert!(execute_script(&x, &x, &[3]).is_err());
    }

    #[test]
    fn dense_table_agrees_with_solver() {
        let problem = SwapProblem::from_instance(&example_one(0, 3)).unwrap();
        let table = SwapDpTable::build(&problem, SwapDpTable::DEFAULT_CAP).unwrap();
        assert_eq!(table.min_final(), Some(2));
        // R_1 has d = 1 with unit cost
        assert_eq!(table.get(1, 1, 0, 0), Some(1));
        assert_eq!(table.get(1, 0, 0, 0), None);
        assert_eq!(table.get(1, 0, 1, 3), None);
        assert_eq!(table.get(0, 0, 0, 0), None);
    }

    #[test]
    fn dense_table_respects_cap() {
        let problem = SwapProblem::from_instance(&example_one(0, 3)).unwrap();
        assert!(matches!(
            SwapDpTable::build(&problem, 10),
            Err(Error::TooLarge { .. })
        ));
    }
}
