#![allow(dead_code)]

use kemeny_core::fixtures::label_for;
use kemeny_core::knapsack::KnapsackItem;
use kemeny_core::{Candidates, ManipulationInstance, Profile, Ranking};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_ranking<R: Rng>(rng: &mut R, m: usize) -> Ranking {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    Ranking::new(order).unwrap()
}

/// Random subset of `0..m` of the given size, in random order.
pub fn random_partial<R: Rng>(rng: &mut R, m: usize, size: usize) -> Ranking {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    order.truncate(size);
    Ranking::new(order).unwrap()
}

pub fn candidates(m: usize) -> Candidates {
    Candidates::new((0..m).map(label_for)).unwrap()
}

pub struct InstanceShape {
    pub m: usize,
    pub n: usize,
    pub max_cost: u64,
}

/// Complete profile, random X, random costs in `0..=max_cost`; budget and k
/// drawn around the interesting range.
pub fn random_instance<R: Rng>(rng: &mut R, shape: &InstanceShape) -> ManipulationInstance {
    let InstanceShape { m, n, max_cost } = *shape;
    let target = random_ranking(rng, m);
    let profile: Profile = (0..n).map(|_| random_ranking(rng, m)).collect();
    let ranking_costs = (0..n).map(|_| rng.random_range(0..=max_cost)).collect();
    let candidate_costs = (0..m).map(|_| rng.random_range(0..=max_cost)).collect();
    let mut inst = ManipulationInstance::new(
        candidates(m),
        profile,
        target,
        ranking_costs,
        candidate_costs,
        0,
        0,
    )
    .unwrap();
    let score = inst.score();
    inst.k = rng.random_range(0..=score + 1);
    inst.budget = rng.random_range(0..=(n as u64 * max_cost).max(1));
    inst
}

/// Best value over every subset of weight at most `capacity`.
pub fn knapsack_brute_force(items: &[KnapsackItem], capacity: u64) -> u64 {
    let n = items.len();
    let mut best = 0;
    for mask in 0u32..1 << n {
        let (mut w, mut v) = (0u64, 0u64);
        for (i, it) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                w += it.weight;
                v += it.value;
            }
        }
        if w <= capacity {
            best = best.max(v);
        }
    }
    best
}

/// Heaviest subset of values `1..=m` that appears in increasing order as a
/// subsequence of every sequence.
pub fn hcis_brute_force(sequences: &[Vec<usize>], weights: &[u64]) -> u64 {
    let m = weights.len();
    let positions: Vec<Vec<usize>> = sequences
        .iter()
        .map(|seq| {
            let mut pos = vec![0; m + 1];
            for (i, &v) in seq.iter().enumerate() {
                pos[v] = i;
            }
            pos
        })
        .collect();
    let mut best = 0;
    for mask in 0u32..1 << m {
        let values: Vec<usize> = (1..=m).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        let increasing = positions
            .iter()
            .all(|pos| values.windows(2).all(|w| pos[w[0]] < pos[w[1]]));
        if increasing {
            best = best.max(values.iter().map(|&v| weights[v - 1]).sum());
        }
    }
    best
}
