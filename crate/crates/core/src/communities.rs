use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CommunitiesError {
    #[error("node {0} assigned more than once")]
    Duplicate(NodeId),
    #[error("node {0} not assigned")]
    Missing(NodeId),
    #[error("node {0} out of range")]
    OutOfRange(NodeId),
    #[error("empty community at position {0}")]
    EmptyCommunity(usize),
}

/// A hard partition of `0..n` into non-empty communities `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Communities {
    assignment: Vec<usize>,
    count: usize,
}

impl Communities {
    /// Compacts arbitrary labels into dense indices, numbered by first
    /// appearance in node order.
    pub fn from_labels<L: Eq + std::hash::Hash + Copy>(labels: &[L]) -> Self {
        let mut map = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Self { assignment, count: map.len() }
    }

    /// Takes an assignment already using indices `0..k`; every index must be used.
    pub fn from_assignment(assignment: Vec<usize>, k: usize) -> Result<Self, CommunitiesError> {
        let mut used = vec![false; k];
        for (v, &c) in assignment.iter().enumerate() {
            if c >= k {
                return Err(CommunitiesError::OutOfRange(v));
            }
            used[c] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(CommunitiesError::EmptyCommunity(c));
        }
        Ok(Self { assignment, count: k })
    }

    /// Builds from member lists; each node of `0..n` must appear exactly once.
    pub fn from_groups(n: usize, groups: &[Vec<NodeId>]) -> Result<Self, CommunitiesError> {
        let mut assignment = vec![usize::MAX; n];
        for (c, group) in groups.iter().enumerate() {
            if group.is_empty() {
                return Err(CommunitiesError::EmptyCommunity(c));
            }
            for &v in group {
                if v >= n {
                    return Err(CommunitiesError::OutOfRange(v));
                }
                if assignment[v] != usize::MAX {
                    return Err(CommunitiesError::Duplicate(v));
                }
                assignment[v] = c;
            }
        }
        if let Some(v) = assignment.iter().position(|&c| c == usize::MAX) {
            return Err(CommunitiesError::Missing(v));
        }
        Ok(Self { assignment, count: groups.len() })
    }

    pub fn single(n: usize) -> Self {
        Self { assignment: vec![0; n], count: usize::from(n > 0) }
    }

    pub fn singletons(n: usize) -> Self {
        Self { assignment: (0..n).collect(), count: n }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// Number of communities.
    pub fn k(&self) -> usize {
        self.count
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn community_of(&self, v: NodeId) -> usize {
        self.assignment[v]
    }

    /// Member lists, ascending within each community.
    pub fn members(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.count];
        for &c in &self.assignment {
            out[c] += 1;
        }
        out
    }

    /// True when both partitions group nodes identically, whatever the
    /// community numbering.
    pub fn same_grouping(&self, other: &Communities) -> bool {
        if self.n() != other.n() || self.k() != other.k() {
            return false;
        }
        let mut fwd = vec![usize::MAX; self.k()];
        for (&a, &b) in self.assignment.iter().zip(&other.assignment) {
            if fwd[a] == usize::MAX {
                fwd[a] = b;
            } else if fwd[a] != b {
                return false;
            }
        }
        let mut seen = vec![false; other.k()];
        fwd.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
    }
}
