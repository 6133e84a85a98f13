use crate::graph::{Graph, NodeId};

/// Edge counts of a node set `S` gathered in one scan of its members'
/// adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityStats {
    /// Members of `S`, ascending.
    pub members: Vec<NodeId>,
    /// Edges with both ends in `S`.
    pub m_s: usize,
    /// Edges with exactly one end in `S`.
    pub c_s: usize,
    /// Sum of degrees over `S`.
    pub vol_s: usize,
    /// Per member (aligned with `members`): neighbors inside `S`.
    pub internal_degree: Vec<usize>,
    /// Per member: neighbors outside `S`.
    pub external_degree: Vec<usize>,
}

impl CommunityStats {
    /// `members` must be ascending; `contains` decides membership.
    pub fn compute_with<F: Fn(NodeId) -> bool>(g: &Graph, members: Vec<NodeId>, contains: F) -> Self {
        let mut internal_degree = Vec::with_capacity(members.len());
        let mut external_degree = Vec::with_capacity(members.len());
        let mut twice_internal = 0;
        let mut vol_s = 0;
        for &v in &members {
            let inside = g.neighbors(v).iter().filter(|&&w| contains(w)).count();
            internal_degree.push(inside);
            external_degree.push(g.degree(v) - inside);
            twice_internal += inside;
            vol_s += g.degree(v);
        }
        let m_s = twice_internal / 2;
        let c_s = external_degree.iter().sum();
        Self { members, m_s, c_s, vol_s, internal_degree, external_degree }
    }

    /// Stats for an arbitrary node set (duplicates ignored).
    pub fn compute(g: &Graph, set: &[NodeId]) -> Self {
        let mut mask = vec![false; g.n()];
        for &v in set {
            mask[v] = true;
        }
        let members = (0..g.n()).filter(|&v| mask[v]).collect();
        Self::compute_with(g, members, |w| mask[w])
    }

    pub fn n_s(&self) -> usize {
        self.members.len()
    }
}
