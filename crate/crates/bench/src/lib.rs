//! Seeded workloads shared by the benchmarks.

use kemeny_core::{Candidates, ManipulationInstance, Profile, Ranking};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_ranking(rng: &mut impl Rng, m: usize) -> Ranking {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    Ranking::new(order).expect("shuffle keeps a permutation")
}

/// `n` uniform complete rankings over `m` candidates, costs in `1..=9`,
/// `k` at half the starting distance.
pub fn workload(m: usize, n: usize, budget: u64, seed: u64) -> ManipulationInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profile: Profile = (0..n).map(|_| random_ranking(&mut rng, m)).collect();
    let target = random_ranking(&mut rng, m);
    let d = kemeny_core::distance_to_profile(&target, &profile);
    ManipulationInstance::new(
        Candidates::numbered(m),
        profile,
        target,
        (0..n).map(|_| rng.random_range(1..=9)).collect(),
        (0..m).map(|_| rng.random_range(1..=9)).collect(),
        budget,
        d / 2,
    )
    .expect("generated instance is valid")
}

/// The same workload with every ranking cut to a random prefix.
pub fn partial_workload(m: usize, n: usize, seed: u64) -> ManipulationInstance {
    let mut inst = workload(m, n, 0, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    inst.profile = inst
        .profile
        .iter()
        .map(|r| Ranking::new(r.order()[..rng.random_range(0..=m)].to_vec()).unwrap())
        .collect();
    inst
}
