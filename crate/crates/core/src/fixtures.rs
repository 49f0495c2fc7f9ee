//! Small ready-made instances.

use crate::instance::ManipulationInstance;
use crate::ranking::{Candidates, Profile, Ranking};

/// Three candidates a, b, c; R1 = R2 = R3 = a≻b≻c, R4 = R5 = a≻c≻b,
/// R6 = c≻b≻a and X = a≻c≻b. Unit costs.
pub fn example_one(budget: u64, k: u64) -> ManipulationInstance {
    unit_instance(
        &[
            &[0, 1, 2],
            &[0, 1, 2],
            &[0, 1, 2],
            &[0, 2, 1],
            &[0, 2, 1],
            &[2, 1, 0],
        ],
        &[0, 2, 1],
        budget,
        k,
    )
}

/// Unit-cost instance over candidates labelled a, b, c, ... (one letter per
/// id of the target).
pub fn unit_instance(
    profile: &[&[usize]],
    target: &[usize],
    budget: u64,
    k: u64,
) -> ManipulationInstance {
    let m = target.len();
    let labels = (0..m).map(label_for);
    let profile: Profile = profile
        .iter()
        .map(|r| Ranking::new(r.to_vec()).expect("fixture rankings are valid"))
        .collect();
    ManipulationInstance::with_unit_costs(
        Candidates::new(labels).expect("generated labels are distinct"),
        profile,
        Ranking::new(target.to_vec()).expect("fixture target is valid"),
        budget,
        k,
    )
    .expect("fixture instance is valid")
}

/// `a`..`z`, then `c26`, `c27`, ...
pub fn label_for(id: usize) -> String {
    if id < 26 {
        char::from(b'a' + id as u8).to_string()
    } else {
        format!("c{id}")
    }
}
