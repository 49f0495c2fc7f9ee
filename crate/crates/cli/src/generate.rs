//! Seeded random profiles.

use kemeny_core::{Profile, Ranking};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Every ranking uniformly at random.
    Uniform,
    /// Mallows around the identity ranking with dispersion `phi` in `(0, 1]`.
    /// `phi = 1` is uniform; small `phi` concentrates on the identity.
    Mallows { phi: f64 },
}

impl Model {
    pub fn validate(&self) -> Result<(), String> {
        match *self {
            Model::Uniform => Ok(()),
            Model::Mallows { phi } if phi > 0.0 && phi <= 1.0 => Ok(()),
            Model::Mallows { phi } => Err(format!("phi must lie in (0, 1], got {phi}")),
        }
    }
}

/// `n` complete rankings over `m` candidates. The same seed always yields the
/// same profile.
pub fn generate_profile(m: usize, n: usize, model: Model, seed: u64) -> Result<Profile, String> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rankings = (0..n)
        .map(|_| match model {
            Model::Uniform => uniform(m, &mut rng),
            Model::Mallows { phi } => mallows(m, phi, &mut rng),
        })
        .collect();
    Ok(Profile::new(rankings))
}

fn uniform(m: usize, rng: &mut impl Rng) -> Ranking {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    Ranking::new(order).expect("shuffle keeps a permutation")
}

/// Repeated insertion: candidate `i` goes `j` places above the bottom of the
/// current list with probability proportional to `phi^j`, adding `j`
/// inversions against the identity.
fn mallows(m: usize, phi: f64, rng: &mut impl Rng) -> Ranking {
    let mut order: Vec<usize> = Vec::with_capacity(m);
    for c in 0..m {
        let slots = order.len() + 1;
        let weights: Vec<f64> = (0..slots).map(|j| phi.powi(j as i32)).collect();
        let mut u = rng.random::<f64>() * weights.iter().sum::<f64>();
        let mut j = 0;
        while j + 1 < slots && u >= weights[j] {
            u -= weights[j];
            j += 1;
        }
        order.insert(order.len() - j, c);
    }
    Ranking::new(order).expect("insertion keeps a permutation")
}
