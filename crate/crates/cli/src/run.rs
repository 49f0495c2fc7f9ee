//! Dispatch of one action on one instance, and the record it produces.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use kemeny_core::deletion::{residual_after_deletion, solve_cd_k0, solve_cd_single_ranking, WPVC_DEFAULT_CAP};
use kemeny_core::knapsack::{bribed_profile, solve_dollar_bribery, solve_ranking_deletion, surviving_profile};
use kemeny_core::oracles::{
    oracle_candidate_deletion, oracle_dollar, oracle_pks, oracle_ranking_deletion, oracle_swap,
    OracleBudget,
};
use kemeny_core::possible_kemeny::solve_pks;
use kemeny_core::swap::{execute_script, solve_swap_bribery};
use kemeny_core::{
    distance_to_profile, kendall_tau, restrict, CandidateId, CostKind, ManipulationInstance,
    Profile, Ranking,
};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::format::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Pks,
    Dollar,
    RankingDeletion,
    Swap,
    CandidateDeletion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Pks,
    Dollar,
    Rdel,
    Swap,
    CdelK0,
    CdelSingle,
    Oracle(Problem),
}

impl Action {
    pub const ALL: [Action; 11] = [
        Action::Pks,
        Action::Dollar,
        Action::Rdel,
        Action::Swap,
        Action::CdelK0,
        Action::CdelSingle,
        Action::Oracle(Problem::Pks),
        Action::Oracle(Problem::Dollar),
        Action::Oracle(Problem::RankingDeletion),
        Action::Oracle(Problem::Swap),
        Action::Oracle(Problem::CandidateDeletion),
    ];

    pub fn problem(self) -> Problem {
        match self {
            Action::Pks => Problem::Pks,
            Action::Dollar => Problem::Dollar,
            Action::Rdel => Problem::RankingDeletion,
            Action::Swap => Problem::Swap,
            Action::CdelK0 | Action::CdelSingle => Problem::CandidateDeletion,
            Action::Oracle(p) => p,
        }
    }

    pub fn is_oracle(self) -> bool {
        matches!(self, Action::Oracle(_))
    }

    fn solver_id(self) -> &'static str {
        match self {
            Action::Pks => "pks-insertion",
            Action::Dollar => "dollar-knapsack-dp",
            Action::Rdel => "rdel-knapsack-dp",
            Action::Swap => "swap-windowed-dp",
            Action::CdelK0 => "cdel-hcis-dp",
            Action::CdelSingle => "cdel-wpvc-bruteforce",
            Action::Oracle(Problem::Pks) => "oracle-pks-completions",
            Action::Oracle(Problem::Dollar) => "oracle-dollar-subsets",
            Action::Oracle(Problem::RankingDeletion) => "oracle-rdel-subsets",
            Action::Oracle(Problem::Swap) => "oracle-swap-allocations",
            Action::Oracle(Problem::CandidateDeletion) => "oracle-cdel-subsets",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Action::Pks => "pks",
            Action::Dollar => "dollar",
            Action::Rdel => "rdel",
            Action::Swap => "swap",
            Action::CdelK0 => "cdel-k0",
            Action::CdelSingle => "cdel-single",
            Action::Oracle(Problem::Pks) => "oracle:pks",
            Action::Oracle(Problem::Dollar) => "oracle:dollar",
            Action::Oracle(Problem::RankingDeletion) => "oracle:rdel",
            Action::Oracle(Problem::Swap) => "oracle:swap",
            Action::Oracle(Problem::CandidateDeletion) => "oracle:cdel",
        };
        f.write_str(name)
    }
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Action::ALL
            .into_iter()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| {
                let names: Vec<String> = Action::ALL.iter().map(Action::to_string).collect();
                format!("unknown action `{s}` (expected one of {})", names.join(", "))
            })
    }
}

impl Serialize for Action {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Flags {
    /// Fail on a witness that does not check out, and compare against the
    /// counterpart solver or oracle when it fits its caps.
    pub verify: bool,
    /// Vertex cap for `cdel-single`; candidate and ranking cap for oracles,
    /// which are otherwise bounded only by their enumeration cap.
    pub cap: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Decision {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// One completed ranking per input ranking.
    Extensions { rankings: Vec<Vec<String>> },
    /// 1-based indices of the bribed or deleted rankings.
    Rankings { indices: Vec<usize> },
    /// Swap count per ranking and, when known, the 1-based positions swapped.
    Swaps {
        counts: Vec<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        scripts: Option<Vec<Vec<usize>>>,
    },
    /// Labels of the deleted candidates.
    Candidates { deleted: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimumKind {
    MinDistance,
    MinCost,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub action: Action,
    pub decision: Decision,
    pub optimum: u64,
    pub optimum_kind: OptimumKind,
    pub witness: Witness,
    pub verification: Check,
    pub cross_check: Check,
    pub instance_digest: String,
    pub solver: &'static str,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ResultRecord {
    pub fn exit_code(&self) -> i32 {
        match self.decision {
            Decision::Yes => 0,
            Decision::No => 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] kemeny_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// SHA-256 of the canonical rendering, so equal instances share a digest
/// whatever their source formatting.
pub fn instance_digest(instance: &ManipulationInstance) -> String {
    hex::encode(Sha256::digest(render(instance).as_bytes()))
}

/// Decision, optimum and witness of one solver or oracle call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answer {
    pub decision: Decision,
    pub optimum: u64,
    pub witness: Witness,
}

fn decide(ok: bool) -> Decision {
    if ok {
        Decision::Yes
    } else {
        Decision::No
    }
}

fn labels(instance: &ManipulationInstance, ids: impl IntoIterator<Item = CandidateId>) -> Vec<String> {
    ids.into_iter()
        .map(|c| instance.candidates.label(c).to_owned())
        .collect()
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn check_shape(action: Action, instance: &ManipulationInstance) -> Result<(), RunError> {
    if action.problem() != Problem::Pks {
        if let Some(i) = instance
            .profile
            .iter()
            .position(|r| !r.is_complete_over(instance.num_candidates()))
        {
            return Err(RunError::Usage(format!(
                "{action} needs complete rankings; ranking {} is partial",
                i + 1
            )));
        }
    }
    match action {
        Action::CdelK0 if instance.k != 0 => Err(RunError::Usage(format!(
            "cdel-k0 needs k = 0, the instance has k = {}",
            instance.k
        ))),
        Action::CdelSingle if instance.num_rankings() != 1 => Err(RunError::Usage(format!(
            "cdel-single needs exactly one ranking, the instance has {}",
            instance.num_rankings()
        ))),
        _ => Ok(()),
    }
}

/// The enumeration cap always applies; candidate and ranking counts are
/// only capped when `--cap` is given.
fn oracle_budget(cap: Option<usize>) -> OracleBudget {
    let cap = cap.unwrap_or(usize::MAX);
    OracleBudget {
        max_candidates: cap,
        max_rankings: cap,
        ..OracleBudget::from_env()
    }
}

/// Runs `action` without timing or verification.
pub fn solve(action: Action, instance: &ManipulationInstance, cap: Option<usize>) -> Result<Answer, RunError> {
    check_shape(action, instance)?;
    let budget = instance.budget;
    let answer = match action {
        Action::Pks => {
            let out = solve_pks(instance)?;
            Answer {
                decision: decide(out.feasible),
                optimum: out.distance,
                witness: Witness::Extensions {
                    rankings: out
                        .extensions
                        .iter()
                        .map(|r| labels(instance, r.order().iter().copied()))
                        .collect(),
                },
            }
        }
        Action::Dollar | Action::Rdel => {
            let out = if action == Action::Dollar {
                solve_dollar_bribery(instance)?
            } else {
                solve_ranking_deletion(instance)?
            };
            Answer {
                decision: decide(out.feasible),
                optimum: out.min_cost,
                witness: Witness::Rankings {
                    indices: one_based(&out.chosen),
                },
            }
        }
        Action::Swap => {
            let out = solve_swap_bribery(instance)?;
            Answer {
                decision: decide(out.feasible),
                optimum: out.min_cost,
                witness: Witness::Swaps {
                    counts: out.witness.per_ranking_swaps,
                    scripts: Some(out.witness.swap_script),
                },
            }
        }
        Action::CdelK0 | Action::CdelSingle => {
            let out = if action == Action::CdelK0 {
                solve_cd_k0(instance)?
            } else {
                solve_cd_single_ranking(instance, cap.unwrap_or(WPVC_DEFAULT_CAP))?
            };
            Answer {
                decision: decide(out.feasible),
                optimum: out.min_cost,
                witness: Witness::Candidates {
                    deleted: labels(instance, out.deleted),
                },
            }
        }
        Action::Oracle(problem) => {
            let ob = oracle_budget(cap);
            match problem {
                Problem::Pks => {
                    let out = oracle_pks(instance, &ob)?;
                    Answer {
                        decision: decide(out.min_cost <= instance.k),
                        optimum: out.min_cost,
                        witness: Witness::Extensions {
                            rankings: out
                                .witness
                                .iter()
                                .map(|r| labels(instance, r.order().iter().copied()))
                                .collect(),
                        },
                    }
                }
                Problem::Dollar | Problem::RankingDeletion => {
                    let out = if problem == Problem::Dollar {
                        oracle_dollar(instance, &ob)?
                    } else {
                        oracle_ranking_deletion(instance, &ob)?
                    };
                    Answer {
                        decision: decide(out.feasible(budget)),
                        optimum: out.min_cost,
                        witness: Witness::Rankings {
                            indices: one_based(&out.witness),
                        },
                    }
                }
                Problem::Swap => {
                    let out = oracle_swap(instance, &ob)?;
                    Answer {
                        decision: decide(out.feasible(budget)),
                        optimum: out.min_cost,
                        witness: Witness::Swaps {
                            counts: out.witness,
                            scripts: None,
                        },
                    }
                }
                Problem::CandidateDeletion => {
                    let out = oracle_candidate_deletion(instance, &ob)?;
                    Answer {
                        decision: decide(out.feasible(budget)),
                        optimum: out.min_cost,
                        witness: Witness::Candidates {
                            deleted: labels(instance, out.witness),
                        },
                    }
                }
            }
        }
    };
    Ok(answer)
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ranking_indices(indices: &[usize], n: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::with_capacity(indices.len());
    for &i in indices {
        ensure((1..=n).contains(&i), || format!("ranking index {i} out of range"))?;
        ensure(!out.contains(&(i - 1)), || format!("ranking {i} listed twice"))?;
        out.push(i - 1);
    }
    Ok(out)
}

fn check_cost_and_decision(
    answer: &Answer,
    cost: u64,
    budget: u64,
) -> Result<(), String> {
    ensure(cost == answer.optimum, || {
        format!("witness costs {cost}, optimum says {}", answer.optimum)
    })?;
    ensure((cost <= budget) == (answer.decision == Decision::Yes), || {
        format!("witness cost {cost} against budget {budget} contradicts the decision")
    })
}

/// Re-checks a witness from scratch: it must reach distance at most `k` (for
/// PKS: sum to the optimum), cost exactly the optimum, and match the decision.
pub fn verify_witness(
    action: Action,
    instance: &ManipulationInstance,
    answer: &Answer,
) -> Result<(), String> {
    let k = instance.k;
    let x = &instance.target;
    let m = instance.num_candidates();
    match (&answer.witness, action.problem()) {
        (Witness::Extensions { rankings }, Problem::Pks) => {
            ensure(rankings.len() == instance.num_rankings(), || {
                "one extension per ranking expected".into()
            })?;
            let mut total = 0;
            for (labels, partial) in rankings.iter().zip(instance.profile.iter()) {
                let ids = labels
                    .iter()
                    .map(|l| instance.candidates.id(l).ok_or(format!("unknown candidate `{l}`")))
                    .collect::<Result<Vec<_>, _>>()?;
                let ext = Ranking::new(ids).map_err(|e| e.to_string())?;
                ensure(ext.is_complete_over(m), || "extension is not complete".into())?;
                ensure(
                    restrict(&ext, partial.order()).as_ref() == Ok(partial),
                    || "extension does not restrict to its ranking".into(),
                )?;
                total += kendall_tau(x, &ext);
            }
            ensure(total == answer.optimum, || {
                format!("extensions sum to {total}, optimum says {}", answer.optimum)
            })?;
            ensure((total <= k) == (answer.decision == Decision::Yes), || {
                "distance against k contradicts the decision".into()
            })
        }
        (Witness::Rankings { indices }, p @ (Problem::Dollar | Problem::RankingDeletion)) => {
            let chosen = ranking_indices(indices, instance.num_rankings())?;
            let profile: Profile = if p == Problem::Dollar {
                bribed_profile(instance, &chosen)
            } else {
                surviving_profile(instance, &chosen)
            };
            let d = distance_to_profile(x, &profile);
            ensure(d <= k, || format!("residual distance {d} exceeds k = {k}"))?;
            let costs = instance.costs(CostKind::PerRanking);
            let cost = chosen.iter().map(|&i| costs[i]).sum();
            check_cost_and_decision(answer, cost, instance.budget)
        }
        (Witness::Swaps { counts, scripts }, Problem::Swap) => {
            let n = instance.num_rankings();
            ensure(counts.len() == n, || "one swap count per ranking expected".into())?;
            let mut d = 0;
            for (i, r) in instance.profile.iter().enumerate() {
                let di = kendall_tau(x, r);
                ensure(counts[i] <= di, || {
                    format!("ranking {} has {di} disagreements, {} swaps claimed", i + 1, counts[i])
                })?;
                match scripts {
                    Some(scripts) => {
                        let script = scripts.get(i).ok_or("missing swap script")?;
                        ensure(script.len() as u64 == counts[i], || {
                            format!("script {} length differs from its count", i + 1)
                        })?;
                        let after = execute_script(r, x, script).map_err(|e| e.to_string())?;
                        d += kendall_tau(x, &after);
                    }
                    None => d += di - counts[i],
                }
            }
            ensure(d <= k, || format!("residual distance {d} exceeds k = {k}"))?;
            let costs = instance.costs(CostKind::PerRankingPerSwap);
            let cost = counts.iter().zip(costs).map(|(s, c)| s * c).sum();
            check_cost_and_decision(answer, cost, instance.budget)
        }
        (Witness::Candidates { deleted }, Problem::CandidateDeletion) => {
            let mut ids = Vec::with_capacity(deleted.len());
            for l in deleted {
                let id = instance
                    .candidates
                    .id(l)
                    .ok_or(format!("unknown candidate `{l}`"))?;
                ensure(!ids.contains(&id), || format!("candidate `{l}` listed twice"))?;
                ids.push(id);
            }
            let d = residual_after_deletion(instance, &ids).map_err(|e| e.to_string())?;
            ensure(d <= k, || format!("residual distance {d} exceeds k = {k}"))?;
            let costs = instance.costs(CostKind::PerCandidate);
            let cost = ids.iter().map(|&c| costs[c]).sum();
            check_cost_and_decision(answer, cost, instance.budget)
        }
        _ => Err("witness kind does not fit the action".into()),
    }
}

/// The other side of the solver/oracle pair for `action` on this instance,
/// if there is one.
pub fn counterpart(action: Action, instance: &ManipulationInstance) -> Option<Action> {
    match action {
        Action::Pks => Some(Action::Oracle(Problem::Pks)),
        Action::Dollar => Some(Action::Oracle(Problem::Dollar)),
        Action::Rdel => Some(Action::Oracle(Problem::RankingDeletion)),
        Action::Swap => Some(Action::Oracle(Problem::Swap)),
        Action::CdelK0 | Action::CdelSingle => Some(Action::Oracle(Problem::CandidateDeletion)),
        Action::Oracle(Problem::Pks) => Some(Action::Pks),
        Action::Oracle(Problem::Dollar) => Some(Action::Dollar),
        Action::Oracle(Problem::RankingDeletion) => Some(Action::Rdel),
        Action::Oracle(Problem::Swap) => Some(Action::Swap),
        Action::Oracle(Problem::CandidateDeletion) if instance.k == 0 => Some(Action::CdelK0),
        Action::Oracle(Problem::CandidateDeletion) if instance.num_rankings() == 1 => {
            Some(Action::CdelSingle)
        }
        Action::Oracle(Problem::CandidateDeletion) => None,
    }
}

/// Solves, times, and checks the witness. With `flags.verify` a bad witness
/// or a disagreement with the counterpart is an error; an over-cap
/// counterpart is skipped.
pub fn run(action: Action, instance: &ManipulationInstance, flags: &Flags) -> Result<ResultRecord, RunError> {
    let start = Instant::now();
    let answer = solve(action, instance, flags.cap)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let verification = match verify_witness(action, instance, &answer) {
        Ok(()) => Check::Pass,
        Err(msg) if flags.verify => return Err(RunError::Verification(msg)),
        Err(_) => Check::Fail,
    };

    let cross_check = match counterpart(action, instance).filter(|_| flags.verify) {
        None => Check::Skipped,
        Some(other) => match solve(other, instance, flags.cap) {
            Err(RunError::Solver(kemeny_core::Error::TooLarge { .. })) => Check::Skipped,
            Err(e) => return Err(e),
            Ok(theirs) => {
                if (theirs.decision, theirs.optimum) != (answer.decision, answer.optimum) {
                    return Err(RunError::Verification(format!(
                        "{action} says {:?} at {}, {other} says {:?} at {}",
                        answer.decision, answer.optimum, theirs.decision, theirs.optimum
                    )));
                }
                Check::Pass
            }
        },
    };

    Ok(ResultRecord {
        file: None,
        action,
        decision: answer.decision,
        optimum: answer.optimum,
        optimum_kind: if action.problem() == Problem::Pks {
            OptimumKind::MinDistance
        } else {
            OptimumKind::MinCost
        },
        witness: answer.witness,
        verification,
        cross_check,
        instance_digest: instance_digest(instance),
        solver: action.solver_id(),
        wall_time_ms,
        seed: flags.seed,
    })
}

/// One line of the human table.
pub fn table_row(record: &ResultRecord) -> String {
    let decision = match record.decision {
        Decision::Yes => "YES",
        Decision::No => "NO",
    };
    let witness = match &record.witness {
        Witness::Extensions { rankings } => rankings
            .iter()
            .map(|r| r.join(">"))
            .collect::<Vec<_>>()
            .join(" | "),
        Witness::Rankings { indices } => format!(
            "{{{}}}",
            indices.iter().map(|i| format!("R_{i}")).collect::<Vec<_>>().join(", ")
        ),
        Witness::Swaps { counts, .. } => format!("swaps {counts:?}"),
        Witness::Candidates { deleted } => format!("delete {{{}}}", deleted.join(", ")),
    };
    format!(
        "{:<24} {:<14} {:<4} {:>8}  {:<40} {:<8} {:.3} ms",
        record.file.as_deref().unwrap_or("-"),
        record.action.to_string(),
        decision,
        record.optimum,
        witness,
        format!("{:?}", record.verification).to_lowercase(),
        record.wall_time_ms
    )
}
