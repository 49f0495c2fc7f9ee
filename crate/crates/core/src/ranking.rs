//! Candidates, rankings and profiles, together with the Kendall tau
//! machinery every solver shares.
//!
//! Positions are 1-based throughout the public API: `ranking.at(1)` is the
//! most preferred candidate and "x before y" means x has the smaller
//! position.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Dense candidate index, `0..m` within one instance.
pub type CandidateId = usize;

const ABSENT: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub id: CandidateId,
    pub label: String,
}

/// Interned candidate set. Labels are only used at I/O boundaries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Candidates {
    labels: Vec<String>,
    index: HashMap<String, CandidateId>,
}

impl Candidates {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = Candidates::default();
        for label in labels {
            set.push(label.into())?;
        }
        Ok(set)
    }

    /// Candidates labelled `"1"`, `"2"`, ..., `"m"`.
    pub fn numbered(m: usize) -> Self {
        Candidates::new((1..=m).map(|i| i.to_string())).expect("numeric labels are distinct")
    }

    fn push(&mut self, label: String) -> Result<CandidateId> {
        if label.is_empty() {
            return Err(Error::Malformed("empty candidate label".into()));
        }
        if let Some(&prior) = self.index.get(&label) {
            return Err(Error::DuplicateCandidate(prior));
        }
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn id(&self, label: &str) -> Option<CandidateId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: CandidateId) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = Candidate> + '_ {
        self.labels.iter().enumerate().map(|(id, label)| Candidate {
            id,
            label: label.clone(),
        })
    }

    /// Formats a ranking as space-separated labels.
    pub fn display(&self, ranking: &Ranking) -> String {
        ranking
            .order()
            .iter()
            .map(|&c| self.label(c))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A strict total order over the candidates in its support.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ranking {
    order: Vec<CandidateId>,
    // 0-based position of each id, ABSENT if unranked
    pos: Vec<usize>,
}

impl Ranking {
    pub fn new(order: Vec<CandidateId>) -> Result<Self> {
        let width = order.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut pos = vec![ABSENT; width];
        for (i, &c) in order.iter().enumerate() {
            if pos[c] != ABSENT {
                return Err(Error::DuplicateCandidate(c));
            }
            pos[c] = i;
        }
        Ok(Ranking { order, pos })
    }

    /// `0 ≻ 1 ≻ ... ≻ m-1`.
    pub fn identity(m: usize) -> Self {
        Ranking {
            order: (0..m).collect(),
            pos: (0..m).collect(),
        }
    }

    pub fn empty() -> Self {
        Ranking {
            order: Vec::new(),
            pos: Vec::new(),
        }
    }

    pub fn order(&self) -> &[CandidateId] {
        &self.order
    }

    pub fn into_order(self) -> Vec<CandidateId> {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The candidate at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<CandidateId> {
        i.checked_sub(1).and_then(|i| self.order.get(i).copied())
    }

    /// 1-based position of `c`, if ranked.
    pub fn position(&self, c: CandidateId) -> Option<usize> {
        self.index_of(c).map(|i| i + 1)
    }

    pub(crate) fn index_of(&self, c: CandidateId) -> Option<usize> {
        match self.pos.get(c) {
            Some(&p) if p != ABSENT => Some(p),
            _ => None,
        }
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.index_of(c).is_some()
    }

    /// True when `x` is ranked before `y`. Both must be ranked.
    pub fn prefers(&self, x: CandidateId, y: CandidateId) -> bool {
        self.pos[x] < self.pos[y]
    }

    /// True when the support is exactly `0..m`.
    pub fn is_complete_over(&self, m: usize) -> bool {
        self.order.len() == m && self.pos.len() == m
    }

    /// Candidates ranked by both `self` and `other`, in `self`'s order.
    pub fn common_support(&self, other: &Ranking) -> Vec<CandidateId> {
        self.order
            .iter()
            .copied()
            .filter(|&c| other.contains(c))
            .collect()
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ranking(")?;
        for (i, c) in self.order.iter().enumerate() {
            if i > 0 {
                write!(f, "≻")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Ordered tuple of rankings. Index `i` names the same ranking for the
/// lifetime of the profile.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Profile {
    rankings: Vec<Ranking>,
}

impl Profile {
    pub fn new(rankings: Vec<Ranking>) -> Self {
        Profile { rankings }
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    pub fn get(&self, i: usize) -> Option<&Ranking> {
        self.rankings.get(i)
    }

    pub fn len(&self) -> usize {
        self.rankings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rankings.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Ranking> {
        self.rankings.iter()
    }

    pub fn into_rankings(self) -> Vec<Ranking> {
        self.rankings
    }
}

impl FromIterator<Ranking> for Profile {
    fn from_iter<I: IntoIterator<Item = Ranking>>(iter: I) -> Self {
        Profile::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Profile {
    type Item = &'a Ranking;
    type IntoIter = std::slice::Iter<'a, Ranking>;

    fn into_iter(self) -> Self::IntoIter {
        self.rankings.iter()
    }
}

/// Number of pairs from the common support ordered differently by the two
/// rankings. Pairwise scan, O(m²).
pub fn kendall_tau(pi: &Ranking, other: &Ranking) -> u64 {
    let seq: Vec<usize> = pi
        .order
        .iter()
        .filter_map(|&c| other.index_of(c))
        .collect();
    let mut count = 0u64;
    for (i, &a) in seq.iter().enumerate() {
        count += seq[i + 1..].iter().filter(|&&b| b < a).count() as u64;
    }
    count
}

/// Same value as [`kendall_tau`], counted with a merge sort in O(m log m).
pub fn kendall_tau_merge(pi: &Ranking, other: &Ranking) -> u64 {
    let mut seq: Vec<usize> = pi
        .order
        .iter()
        .filter_map(|&c| other.index_of(c))
        .collect();
    let mut buf = vec![0; seq.len()];
    count_inversions(&mut seq, &mut buf)
}

fn count_inversions(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = seq.split_at_mut(mid);
        count_inversions(left, &mut buf[..mid]) + count_inversions(right, &mut buf[mid..])
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    count
}

/// Σ_i kendall_tau(pi, R_i).
pub fn distance_to_profile(pi: &Ranking, profile: &Profile) -> u64 {
    profile.iter().map(|r| kendall_tau(pi, r)).sum()
}

/// `pi` restricted to `keep`, preserving relative order.
pub fn restrict(pi: &Ranking, keep: &[CandidateId]) -> Result<Ranking> {
    let mut wanted = vec![false; pi.pos.len()];
    for &c in keep {
        if !pi.contains(c) {
            return Err(Error::UnknownCandidate(c));
        }
        wanted[c] = true;
    }
    Ranking::new(pi.order.iter().copied().filter(|&c| wanted[c]).collect())
}

/// Number of candidates `y` whose order relative to `x` differs between the
/// two rankings.
pub fn disagreements_wrt(pi: &Ranking, other: &Ranking, x: CandidateId) -> Result<u64> {
    let (px, ox) = match (pi.index_of(x), other.index_of(x)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::UnknownCandidate(x)),
    };
    Ok(pi
        .order
        .iter()
        .filter(|&&y| y != x)
        .filter_map(|&y| other.index_of(y).map(|oy| (pi.pos[y], oy)))
        .filter(|&(py, oy)| (py < px) != (oy < ox))
        .count() as u64)
}

/// True iff every pair in `set` has the same relative order in both rankings.
pub fn agrees_over(pi: &Ranking, other: &Ranking, set: &[CandidateId]) -> Result<bool> {
    if let Some(&c) = set
        .iter()
        .find(|&&c| !pi.contains(c) || !other.contains(c))
    {
        return Err(Error::UnknownCandidate(c));
    }
    let mut by_pi = set.to_vec();
    by_pi.sort_unstable_by_key(|&c| pi.pos[c]);
    Ok(by_pi
        .windows(2)
        .all(|w| other.pos[w[0]] < other.pos[w[1]]))
}

/// Leftmost 1-based position `p` such that `R(p)` and `R(p+1)` are ordered
/// the other way round in `target`. `None` exactly when the distance is 0.
///
/// Both rankings must share a support.
pub fn find_admissible_disagreement(ranking: &Ranking, target: &Ranking) -> Option<usize> {
    ranking
        .order
        .windows(2)
        .position(|w| target.prefers(w[1], w[0]))
        .map(|i| i + 1)
}

/// Exchanges the candidates at 1-based positions `p` and `p + 1`.
pub fn apply_adjacent_swap(ranking: &Ranking, p: usize) -> Result<Ranking> {
    let mut next = ranking.clone();
    next.swap_adjacent(p)?;
    Ok(next)
}

impl Ranking {
    /// In-place form of [`apply_adjacent_swap`].
    pub fn swap_adjacent(&mut self, p: usize) -> Result<()> {
        if p == 0 || p >= self.order.len() {
            return Err(Error::IndexOutOfRange {
                index: p,
                min: 1,
                max: self.order.len().saturating_sub(1),
            });
        }
        let (a, b) = (self.order[p - 1], self.order[p]);
        self.order.swap(p - 1, p);
        self.pos[a] = p;
        self.pos[b] = p - 1;
        Ok(())
    }
}
