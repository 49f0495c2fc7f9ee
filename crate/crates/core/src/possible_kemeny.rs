//! Optimal completion of partial rankings toward a fixed target, and the
//! Possible Kemeny Score decision built on it.
//!
//! The missing candidates are inserted one at a time in target order. Each
//! goes to the leftmost slot (measured between consecutive candidates of the
//! original partial ranking) that minimises its disagreements, never left of
//! the slot chosen for its predecessor.

use crate::error::{Error, Result};
use crate::instance::ManipulationInstance;
use crate::ranking::{kendall_tau, CandidateId, Ranking};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionResult {
    /// Complete ranking over the target's support.
    pub extended: Ranking,
    /// `kendall_tau(target, extended)`.
    pub distance: u64,
    /// `(candidate, slot)` for each inserted candidate, in insertion order.
    /// Slot `j` means "after the j-th candidate of the partial ranking".
    pub insert_trace: Vec<(CandidateId, usize)>,
}

/// Inserts `c` after the `j`-th candidate of `base` as it appears in
/// `current`, and after every non-`base` candidate that directly follows it.
/// `j = 0` places `c` after the leading run of non-`base` candidates.
///
/// `base` is the original partial ranking; `current` is `base` with some
/// candidates already inserted.
pub fn insert_after_block(
    current: &Ranking,
    base: &Ranking,
    c: CandidateId,
    j: usize,
) -> Result<Ranking> {
    if j > base.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            min: 0,
            max: base.len(),
        });
    }
    if current.contains(c) {
        return Err(Error::DuplicateCandidate(c));
    }
    let order = current.order();
    let mut at = match j {
        0 => 0,
        _ => {
            let anchor = base.at(j).expect("j checked against base length");
            current
                .index_of(anchor)
                .ok_or(Error::UnknownCandidate(anchor))?
                + 1
        }
    };
    while at < order.len() && !base.contains(order[at]) {
        at += 1;
    }
    let mut next = Vec::with_capacity(order.len() + 1);
    next.extend_from_slice(&order[..at]);
    next.push(c);
    next.extend_from_slice(&order[at..]);
    Ranking::new(next)
}

/// Extends `partial` to a complete ranking over the support of `target`
/// with the least Kendall tau distance to `target`.
pub fn optimal_extension(target: &Ranking, partial: &Ranking) -> Result<ExtensionResult> {
    if let Some(&c) = partial.order().iter().find(|&&c| !target.contains(c)) {
        return Err(Error::UnknownCandidate(c));
    }
    let base = partial.order();
    let missing: Vec<CandidateId> = target
        .order()
        .iter()
        .copied()
        .filter(|&c| !partial.contains(c))
        .collect();

    // blocks[j]: inserted candidates sitting after base[j-1] and before base[j]
    let mut blocks: Vec<Vec<CandidateId>> = vec![Vec::new(); base.len() + 1];
    let mut trace = Vec::with_capacity(missing.len());
    let mut distance = kendall_tau(target, partial);
    let mut left = 0;
    let mut costs = vec![0u64; base.len() + 1];

    for &c in &missing {
        // Earlier insertions all precede c in the target and all sit in
        // slots <= left, so only disagreements with base candidates vary.
        costs[0] = base.iter().filter(|&&b| target.prefers(b, c)).count() as u64;
        for (j, &b) in base.iter().enumerate() {
            costs[j + 1] = if target.prefers(c, b) {
                costs[j] + 1
            } else {
                costs[j] - 1
            };
        }
        let (slot, cost) = costs[left..]
            .iter()
            .enumerate()
            .min_by_key(|&(_, &cost)| cost)
            .map(|(offset, &cost)| (left + offset, cost))
            .expect("slot range is never empty");
        blocks[slot].push(c);
        trace.push((c, slot));
        distance += cost;
        left = slot;
    }

    let mut order = Vec::with_capacity(target.len());
    for (j, block) in blocks.iter().enumerate() {
        if j > 0 {
            order.push(base[j - 1]);
        }
        order.extend_from_slice(block);
    }
    Ok(ExtensionResult {
        extended: Ranking::new(order)?,
        distance,
        insert_trace: trace,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PksOutcome {
    pub feasible: bool,
    /// Least achievable total distance over all completions.
    pub distance: u64,
    /// One optimal completion per profile ranking, in profile order.
    pub extensions: Vec<Ranking>,
}

/// Decides whether the profile can be completed so that the target lies
/// within distance `k`. Rankings are completed independently.
pub fn solve_pks(instance: &ManipulationInstance) -> Result<PksOutcome> {
    let mut distance = 0;
    let mut extensions = Vec::with_capacity(instance.num_rankings());
    for r in instance.profile.iter() {
        let ext = optimal_extension(&instance.target, r)?;
        distance += ext.distance;
        extensions.push(ext.extended);
    }
    Ok(PksOutcome {
        feasible: distance <= instance.k,
        distance,
        extensions,
    })
}
