//! Candidate deletion.
//!
//! Relabel candidates by their position in X. With `k = 0` the survivors must
//! appear in increasing label order in every ranking, so the cheapest
//! deletion is the complement of a heaviest common increasing subsequence.
//! With a single ranking, the remaining distance counts the inversions not
//! touched by a deleted candidate, which is partial vertex cover on the
//! permutation graph of that ranking.

use crate::error::{Error, Result};
use crate::instance::{CostKind, ManipulationInstance};
use crate::ranking::{distance_to_profile, restrict, CandidateId, Candidates, Profile, Ranking};

/// `f[c]` is the 1-based position of candidate `c` in `x`.
pub fn target_index_map(x: &Ranking) -> Vec<usize> {
    let mut f = vec![0; x.len()];
    for (i, &c) in x.order().iter().enumerate() {
        f[c] = i + 1;
    }
    f
}

/// Heaviest common increasing subsequence over permutations of `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcisInstance {
    sequences: Vec<Vec<usize>>,
    /// `weights[v - 1]` is the weight of value `v`.
    weights: Vec<u64>,
    /// Weight target; may be negative when the budget covers everything.
    pub target: i128,
}

impl HcisInstance {
    pub fn new(sequences: Vec<Vec<usize>>, weights: Vec<u64>, target: i128) -> Result<Self> {
        let m = weights.len();
        for (i, seq) in sequences.iter().enumerate() {
            if !is_permutation(seq, m) {
                return Err(Error::Malformed(format!(
                    "sequence {} is not a permutation of 1..={m}",
                    i + 1
                )));
            }
        }
        Ok(HcisInstance {
            sequences,
            weights,
            target,
        })
    }

    pub fn sequences(&self) -> &[Vec<usize>] {
        &self.sequences
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn is_permutation(seq: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m + 1];
    seq.len() == m
        && seq.iter().all(|&v| {
            if v == 0 || v > m || seen[v] {
                return false;
            }
            seen[v] = true;
            true
        })
}

/// The positions of one value across all sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub value: usize,
    /// 1-based position of `value` in each sequence.
    pub positions: Vec<usize>,
    /// Heaviest common increasing subsequence ending at this match.
    pub rank: u64,
}

impl Match {
    /// Strictly smaller value and strictly earlier in every sequence.
    pub fn dominates(&self, other: &Match) -> bool {
        self.value < other.value
            && self
                .positions
                .iter()
                .zip(&other.positions)
                .all(|(a, b)| a < b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcisSolution {
    pub weight: u64,
    /// Increasing values of one heaviest subsequence.
    pub sequence: Vec<usize>,
    /// `matches[v - 1]` for every value `v`, with ranks filled in.
    pub matches: Vec<Match>,
    /// `weight >= target`.
    pub feasible: bool,
}

/// Ranks matches in increasing value order; each rank is its own weight
/// plus the best rank among the matches dominating it.
pub fn solve_hcis(hcis: &HcisInstance) -> HcisSolution {
    let m = hcis.len();
    let mut matches: Vec<Match> = (1..=m)
        .map(|value| Match {
            value,
            positions: vec![0; hcis.sequences.len()],
            rank: 0,
        })
        .collect();
    for (s, seq) in hcis.sequences.iter().enumerate() {
        for (p, &v) in seq.iter().enumerate() {
            matches[v - 1].positions[s] = p + 1;
        }
    }

    let mut pred: Vec<Option<usize>> = vec![None; m];
    for j in 0..m {
        let mut best: Option<usize> = None;
        for i in 0..j {
            if matches[i].dominates(&matches[j])
                && best.is_none_or(|b| matches[i].rank > matches[b].rank)
            {
                best = Some(i);
            }
        }
        matches[j].rank = hcis.weights[j] + best.map_or(0, |b| matches[b].rank);
        pred[j] = best;
    }

    let end = (0..m).rev().max_by_key(|&j| matches[j].rank);
    let mut sequence = Vec::new();
    let mut cursor = end;
    while let Some(j) = cursor {
        sequence.push(j + 1);
        cursor = pred[j];
    }
    sequence.reverse();
    let weight = end.map_or(0, |j| matches[j].rank);
    HcisSolution {
        weight,
        sequence,
        matches,
        feasible: weight as i128 >= hcis.target,
    }
}

fn sum_costs(costs: &[u64]) -> u128 {
    costs.iter().map(|&c| c as u128).sum()
}

/// `J_i(j) = f(R_i(j))`, `w(v) = cost(f⁻¹(v))`, `W = Σ cost - budget`.
pub fn reduce_cd_to_hcis(instance: &ManipulationInstance) -> Result<HcisInstance> {
    if instance.k != 0 {
        return Err(Error::UnsupportedParameter(format!(
            "the subsequence reduction needs k = 0, got k = {}",
            instance.k
        )));
    }
    instance.require_complete()?;
    let f = target_index_map(&instance.target);
    let costs = instance.costs(CostKind::PerCandidate);
    let sequences = instance
        .profile
        .iter()
        .map(|r| r.order().iter().map(|&c| f[c]).collect())
        .collect();
    let weights = instance.target.order().iter().map(|&c| costs[c]).collect();
    let target = sum_costs(costs) as i128 - instance.budget as i128;
    HcisInstance::new(sequences, weights, target)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdOutcome {
    pub feasible: bool,
    /// Least deletion cost reaching the bound (for the single-ranking
    /// solver: the lightest qualifying cover).
    pub min_cost: u64,
    /// Deleted candidates, ascending ids.
    pub deleted: Vec<CandidateId>,
}

/// Candidate deletion with `k = 0` for any number of rankings.
pub fn solve_cd_k0(instance: &ManipulationInstance) -> Result<CdOutcome> {
    let hcis = reduce_cd_to_hcis(instance)?;
    let sol = solve_hcis(&hcis);
    let mut keep = vec![false; instance.num_candidates()];
    for &v in &sol.sequence {
        keep[instance.target.order()[v - 1]] = true;
    }
    let deleted: Vec<CandidateId> = (0..keep.len()).filter(|&c| !keep[c]).collect();
    let costs = instance.costs(CostKind::PerCandidate);
    let min_cost = deleted.iter().map(|&c| costs[c]).sum();
    Ok(CdOutcome {
        feasible: sol.feasible,
        min_cost,
        deleted,
    })
}

/// Distance of X from the profile after deleting `deleted` everywhere.
pub fn residual_after_deletion(
    instance: &ManipulationInstance,
    deleted: &[CandidateId],
) -> Result<u64> {
    let keep: Vec<CandidateId> = (0..instance.num_candidates())
        .filter(|c| !deleted.contains(c))
        .collect();
    let target = restrict(&instance.target, &keep)?;
    let profile = instance
        .profile
        .iter()
        .map(|r| {
            let present: Vec<CandidateId> = keep.iter().copied().filter(|&c| r.contains(c)).collect();
            restrict(r, &present)
        })
        .collect::<Result<Profile>>()?;
    Ok(distance_to_profile(&target, &profile))
}

/// Vertices `1..=n`; `{x, y}` with `x < y` is an edge when the permutation
/// lists `y` before `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGraph {
    permutation: Vec<usize>,
    edges: Vec<(usize, usize)>,
    /// `weights[v - 1]`.
    weights: Vec<u64>,
}

impl PermutationGraph {
    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

pub fn build_permutation_graph(perm: &[usize], weights: &[u64]) -> Result<PermutationGraph> {
    let n = perm.len();
    if !is_permutation(perm, n) {
        return Err(Error::Malformed(format!("not a permutation of 1..={n}")));
    }
    if weights.len() != n {
        return Err(Error::Malformed(format!(
            "{} weights for {n} vertices",
            weights.len()
        )));
    }
    let mut edges = Vec::new();
    for (i, &later) in perm.iter().enumerate() {
        for &earlier in &perm[..i] {
            if earlier > later {
                edges.push((later, earlier));
            }
        }
    }
    edges.sort_unstable();
    Ok(PermutationGraph {
        permutation: perm.to_vec(),
        edges,
        weights: weights.to_vec(),
    })
}

/// Choose vertices of weight at most `budget` covering at least `coverage`
/// edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpvcInstance {
    pub graph: PermutationGraph,
    pub budget: u64,
    pub coverage: u64,
}

impl WpvcInstance {
    pub fn new(graph: PermutationGraph, budget: u64, coverage: u64) -> Result<Self> {
        if coverage > graph.edges.len() as u64 {
            return Err(Error::Malformed(format!(
                "coverage target {coverage} exceeds {} edges",
                graph.edges.len()
            )));
        }
        Ok(WpvcInstance {
            graph,
            budget,
            coverage,
        })
    }
}

/// X = 1 ≻ ... ≻ n, the single ranking is the permutation, costs are the
/// vertex weights, budget W and `k = |E| - t`.
pub fn reduce_wpvc_to_cd(wpvc: &WpvcInstance) -> Result<ManipulationInstance> {
    let g = &wpvc.graph;
    let n = g.len();
    let ranking = Ranking::new(g.permutation.iter().map(|&v| v - 1).collect())?;
    ManipulationInstance::new(
        Candidates::numbered(n),
        Profile::new(vec![ranking]),
        Ranking::identity(n),
        vec![1],
        g.weights.clone(),
        wpvc.budget,
        g.edges.len() as u64 - wpvc.coverage,
    )
}

/// Permutation `f(R(1)), ..., f(R(m))`, weights from candidate costs,
/// `W = budget`, `t = max(|E| - k, 0)`.
pub fn reduce_cd_to_wpvc(instance: &ManipulationInstance) -> Result<WpvcInstance> {
    if instance.num_rankings() != 1 {
        return Err(Error::UnsupportedParameter(format!(
            "the cover reduction needs exactly one ranking, got {}",
            instance.num_rankings()
        )));
    }
    instance.require_complete()?;
    let f = target_index_map(&instance.target);
    let costs = instance.costs(CostKind::PerCandidate);
    let perm: Vec<usize> = instance.profile.rankings()[0]
        .order()
        .iter()
        .map(|&c| f[c])
        .collect();
    let weights: Vec<u64> = instance.target.order().iter().map(|&c| costs[c]).collect();
    let graph = build_permutation_graph(&perm, &weights)?;
    let coverage = (graph.edges.len() as u64).saturating_sub(instance.k);
    WpvcInstance::new(graph, instance.budget, coverage)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpvcOutcome {
    pub feasible: bool,
    /// Lexicographically smallest qualifying vertex set, if any.
    pub cover: Option<Vec<usize>>,
    /// Least weight of any set covering the target, with its
    /// lexicographically smallest set.
    pub min_weight: u64,
    pub lightest: Vec<usize>,
}

/// Default vertex cap for the exhaustive cover search.
pub const WPVC_DEFAULT_CAP: usize = 20;

/// Scans all `2^n` vertex subsets.
pub fn solve_wpvc_bruteforce(wpvc: &WpvcInstance, cap: usize) -> Result<WpvcOutcome> {
    let g = &wpvc.graph;
    let n = g.len();
    if n > cap || n >= 64 {
        return Err(Error::TooLarge {
            what: "vertex count",
            size: n as u128,
            cap: cap.min(63) as u128,
        });
    }
    // later[v]: neighbours of vertex v (0-based) with a larger index
    let mut later = vec![0u64; n];
    for &(x, y) in &g.edges {
        later[x - 1] |= 1 << (y - 1);
    }
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let edges = g.edges.len() as u64;

    let mut cover: Option<Vec<usize>> = None;
    let mut lightest: Option<(u64, Vec<usize>)> = None;
    for mask in 0..=all {
        let rest = all & !mask;
        let mut untouched = 0u64;
        let mut weight = 0u64;
        for (v, (&nbrs, &w)) in later.iter().zip(&g.weights).enumerate() {
            if rest >> v & 1 == 1 {
                untouched += (nbrs & rest).count_ones() as u64;
            } else {
                weight += w;
            }
        }
        if edges - untouched < wpvc.coverage {
            continue;
        }
        let set = || (0..n).filter(|v| mask >> v & 1 == 1).map(|v| v + 1).collect::<Vec<_>>();
        if weight <= wpvc.budget {
            let s = set();
            if cover.as_ref().is_none_or(|c| s < *c) {
                cover = Some(s);
            }
        }
        let better = match &lightest {
            None => true,
            Some((w, s)) => weight < *w || (weight == *w && set() < *s),
        };
        if better {
            lightest = Some((weight, set()));
        }
    }
    let (min_weight, lightest) = lightest.expect("the full vertex set covers every edge");
    Ok(WpvcOutcome {
        feasible: cover.is_some(),
        cover,
        min_weight,
        lightest,
    })
}

/// Candidate deletion with one ranking and any `k`, via the cover search.
/// Reports a lightest cover, so the deleted set always costs `min_cost`.
pub fn solve_cd_single_ranking(instance: &ManipulationInstance, cap: usize) -> Result<CdOutcome> {
    let wpvc = reduce_cd_to_wpvc(instance)?;
    let out = solve_wpvc_bruteforce(&wpvc, cap)?;
    let mut deleted: Vec<CandidateId> = out
        .lightest
        .iter()
        .map(|&v| instance.target.order()[v - 1])
        .collect();
    deleted.sort_unstable();
    Ok(CdOutcome {
        feasible: out.feasible,
        min_cost: out.min_weight,
        deleted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::unit_instance;

    #[test]
    fn index_map_follows_target() {
        assert_eq!(target_index_map(&Ranking::identity(3)), vec![1, 2, 3]);
        // X = c a b
        assert_eq!(
            target_index_map(&Ranking::new(vec![2, 0, 1]).unwrap()),
            vec![2, 3, 1]
        );
    }

    #[test]
    fn cd_to_hcis_construction() {
        let inst = unit_instance(&[&[1, 0, 2], &[0, 1, 2]], &[0, 1, 2], 1, 0);
        let h = reduce_cd_to_hcis(&inst).unwrap();
        assert_eq!(h.sequences(), &[vec![2, 1, 3], vec![1, 2, 3]]);
        assert_eq!(h.weights(), &[1, 1, 1]);
        assert_eq!(h.target, 2);

        let mut nonzero = inst.clone();
        nonzero.k = 1;
        assert!(matches!(
            reduce_cd_to_hcis(&nonzero),
            Err(Error::UnsupportedParameter(_))
        ));
    }

    #[test]
    fn hcis_examples() {
        let h = HcisInstance::new(vec![vec![1, 3, 2], vec![3, 1, 2]], vec![1, 1, 5], 0).unwrap();
        let sol = solve_hcis(&h);
        assert_eq!(sol.weight, 5);
        assert_eq!(sol.sequence, vec![3]);
        assert_eq!(sol.matches[0].rank, 1);

        let single = HcisInstance::new(vec![vec![2, 1, 3]], vec![1, 1, 1], 3).unwrap();
        let sol = solve_hcis(&single);
        assert_eq!(sol.weight, 2);
        assert!(!sol.feasible);
    }

    #[test]
    fn hcis_rejects_non_permutations() {
        assert!(HcisInstance::new(vec![vec![1, 1, 2]], vec![1, 1, 1], 0).is_err());
        assert!(HcisInstance::new(vec![vec![1, 2]], vec![1, 1, 1], 0).is_err());
        assert!(HcisInstance::new(vec![vec![0, 1, 2]], vec![1, 1, 1], 0).is_err());
    }

    #[test]
    fn zero_weights_and_negative_target() {
        let h = HcisInstance::new(vec![vec![3, 2, 1]], vec![0, 0, 0], 0).unwrap();
        let sol = solve_hcis(&h);
        assert_eq!(sol.weight, 0);
        assert!(sol.feasible);
        let h = HcisInstance::new(vec![vec![3, 2, 1]], vec![1, 1, 1], -2).unwrap();
        assert!(solve_hcis(&h).feasible);
    }

    #[test]
    fn cd_k0_examples() {
        let yes = solve_cd_k0(&unit_instance(&[&[1, 0, 2]], &[0, 1, 2], 1, 0)).unwrap();
        assert!(yes.feasible);
        assert_eq!(yes.deleted.len(), 1);
        assert!(yes.deleted == vec![0] || yes.deleted == vec![1]);

        let agree = solve_cd_k0(&unit_instance(&[&[0, 1, 2], &[0, 1, 2]], &[0, 1, 2], 0, 0)).unwrap();
        assert!(agree.feasible);
        assert!(agree.deleted.is_empty());

        let no = solve_cd_k0(&unit_instance(&[&[2, 1, 0]], &[0, 1, 2], 1, 0)).unwrap();
        assert!(!no.feasible);
        assert_eq!(no.min_cost, 2);
    }

    #[test]
    fn permutation_graph_edges() {
        let g = build_permutation_graph(&[2, 1, 3], &[1, 1, 1]).unwrap();
        assert_eq!(g.edges(), &[(1, 2)]);
        assert!(build_permutation_graph(&[1, 2, 3], &[1, 1, 1])
            .unwrap()
            .edges()
            .is_empty());
        let g = build_permutation_graph(&[3, 2, 1], &[1, 1, 1]).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (1, 3), (2, 3)]);
        assert!(build_permutation_graph(&[1, 1, 3], &[1, 1, 1]).is_err());
    }

    #[test]
    fn wpvc_to_cd_construction() {
        let g = build_permutation_graph(&[2, 1, 3], &[1, 1, 1]).unwrap();
        let cd = reduce_wpvc_to_cd(&WpvcInstance::new(g, 1, 1).unwrap()).unwrap();
        assert_eq!(cd.target, Ranking::identity(3));
        assert_eq!(cd.profile.rankings(), &[Ranking::new(vec![1, 0, 2]).unwrap()]);
        assert_eq!((cd.k, cd.budget), (0, 1));
        assert_eq!(cd.candidates.labels(), &["1", "2", "3"]);
    }

    #[test]
    fn cd_to_wpvc_construction() {
        let inst = unit_instance(&[&[1, 0, 2]], &[0, 1, 2], 0, 0);
        let w = reduce_cd_to_wpvc(&inst).unwrap();
        assert_eq!(w.graph.permutation(), &[2, 1, 3]);
        assert_eq!(w.coverage, 1);

        let same = unit_instance(&[&[0, 1, 2]], &[0, 1, 2], 0, 0);
        let w = reduce_cd_to_wpvc(&same).unwrap();
        assert!(w.graph.edges().is_empty());
        assert_eq!(w.coverage, 0);

        let slack = unit_instance(&[&[2, 1, 0]], &[0, 1, 2], 0, 5);
        assert_eq!(reduce_cd_to_wpvc(&slack).unwrap().coverage, 0);

        let two = unit_instance(&[&[0, 1, 2], &[0, 1, 2]], &[0, 1, 2], 0, 0);
        assert!(matches!(
            reduce_cd_to_wpvc(&two),
            Err(Error::UnsupportedParameter(_))
        ));
    }

    #[test]
    fn wpvc_bruteforce_examples() {
        let tri = build_permutation_graph(&[3, 2, 1], &[1, 1, 1]).unwrap();
        let out = solve_wpvc_bruteforce(&WpvcInstance::new(tri.clone(), 1, 2).unwrap(), 20).unwrap();
        assert!(out.feasible);
        // vertex 1 also covers two edges and is lexicographically first
        assert_eq!(out.cover, Some(vec![1]));

        let out = solve_wpvc_bruteforce(&WpvcInstance::new(tri.clone(), 0, 0).unwrap(), 20).unwrap();
        assert_eq!(out.cover, Some(vec![]));

        let out = solve_wpvc_bruteforce(&WpvcInstance::new(tri.clone(), 0, 1).unwrap(), 20).unwrap();
        assert!(!out.feasible);
        assert_eq!(out.min_weight, 1);

        assert!(matches!(
            solve_wpvc_bruteforce(&WpvcInstance::new(tri, 0, 1).unwrap(), 2),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn cd_single_ranking_examples() {
        let inst = unit_instance(&[&[2, 1, 0]], &[0, 1, 2], 1, 1);
        let out = solve_cd_single_ranking(&inst, 20).unwrap();
        assert!(out.feasible);
        assert_eq!(out.deleted.len(), 1);
        assert!(residual_after_deletion(&inst, &out.deleted).unwrap() <= 1);

        let slack = unit_instance(&[&[2, 1, 0]], &[0, 1, 2], 0, 3);
        let out = solve_cd_single_ranking(&slack, 20).unwrap();
        assert!(out.feasible);
        assert!(out.deleted.is_empty());

        let tight = unit_instance(&[&[2, 1, 0]], &[0, 1, 2], 0, 2);
        assert!(!solve_cd_single_ranking(&tight, 20).unwrap().feasible);
    }
}
