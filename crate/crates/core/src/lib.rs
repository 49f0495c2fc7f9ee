//! Exact solvers for manipulating the Kemeny score of a fixed ranking.
//!
//! Given a profile of rankings, a target ranking X and a bound k, each
//! solver decides whether some manipulation within budget brings the total
//! Kendall tau distance of X from the profile to at most k, and returns a
//! witness that can be checked independently:
//!
//! * [`possible_kemeny`]: complete partial rankings (free);
//! * [`knapsack`]: $-bribery and ranking deletion;
//! * [`swap`]: swap bribery with per-ranking swap prices;
//! * [`deletion`]: candidate deletion for `k = 0` and for a single ranking.
//!
//! [`oracles`] holds exhaustive counterparts for cross-checking.

pub mod deletion;
pub mod error;
pub mod fixtures;
pub mod instance;
pub mod knapsack;
pub mod oracles;
pub mod possible_kemeny;
pub mod ranking;
pub mod swap;

pub use error::{Error, Result};
pub use instance::{CostKind, ManipulationInstance};
pub use ranking::{
    agrees_over, apply_adjacent_swap, disagreements_wrt, distance_to_profile,
    find_admissible_disagreement, kendall_tau, kendall_tau_merge, restrict, Candidate,
    CandidateId, Candidates, Profile, Ranking,
};
