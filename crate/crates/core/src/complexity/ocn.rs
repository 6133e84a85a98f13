use std::collections::HashSet;

use crate::graph::{connected_components, Graph, NodeId};

/// Identifier of the reference construction below.
pub const OCN_METHOD: &str = "anchored-greedy-v1";

/// Reference graph `G*` on the node set of `g` with the same number of
/// edges per connected component.
///
/// For each component: a star around its highest-degree node (the tree of
/// least average distance), then the remaining edge budget spent on cliques
/// among the leaves. Cliques grow one leaf at a time, preferring leaves
/// adjacent in `g` to most of the current clique, so `G*` reuses edges of
/// `g` where that keeps clustering high. Budget left after the greedy phase
/// extends the cliques in creation order into one growing clique.
pub fn build_ocn_reference(g: &Graph) -> Graph {
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(g.m());
    for comp in connected_components(g) {
        component_reference(g, &comp, &mut edges);
    }
    Graph::with_labels(g.labels().to_vec(), edges).expect("reference uses the same node ids")
}

fn component_reference(g: &Graph, comp: &[NodeId], out: &mut Vec<(NodeId, NodeId)>) {
    if comp.len() < 2 {
        return;
    }
    let center = comp
        .iter()
        .copied()
        .max_by(|&a, &b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)))
        .expect("non-empty component");
    let leaves: Vec<NodeId> = comp.iter().copied().filter(|&v| v != center).collect();
    for &v in &leaves {
        out.push((center, v));
    }
    let m_c: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    let mut budget = m_c - leaves.len();
    if budget == 0 {
        return;
    }

    let n = g.n();
    let mut is_leaf = vec![false; n];
    for &v in &leaves {
        is_leaf[v] = true;
    }
    let mut assigned = vec![false; n];
    // unassigned leaf neighbors in g, per leaf
    let mut free: Vec<usize> = vec![0; n];
    for &v in &leaves {
        free[v] = g.neighbors(v).iter().filter(|&&w| is_leaf[w]).count();
    }
    let mut affinity = vec![0usize; n];
    let mut added: HashSet<(NodeId, NodeId)> = HashSet::new();
    let mut order: Vec<NodeId> = Vec::with_capacity(leaves.len());

    let take = |v: NodeId, assigned: &mut Vec<bool>, free: &mut Vec<usize>, order: &mut Vec<NodeId>| {
        assigned[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if is_leaf[w] {
                free[w] -= 1;
            }
        }
    };

    while budget > 0 {
        let Some(seed) = leaves
            .iter()
            .copied()
            .filter(|&v| !assigned[v])
            .max_by(|&a, &b| free[a].cmp(&free[b]).then(b.cmp(&a)))
        else {
            break;
        };
        let mut group = vec![seed];
        take(seed, &mut assigned, &mut free, &mut order);
        for &w in g.neighbors(seed) {
            affinity[w] += 1;
        }
        loop {
            let cand = leaves
                .iter()
                .copied()
                .filter(|&v| !assigned[v])
                .max_by(|&a, &b| affinity[a].cmp(&affinity[b]).then(b.cmp(&a)));
            let Some(c) = cand else { break };
            let size = group.len();
            if budget < size || 2 * affinity[c] < size {
                break;
            }
            for &s in &group {
                out.push((s, c));
                added.insert((s.min(c), s.max(c)));
            }
            budget -= size;
            take(c, &mut assigned, &mut free, &mut order);
            for &w in g.neighbors(c) {
                affinity[w] += 1;
            }
            group.push(c);
        }
        for &s in &group {
            for &w in g.neighbors(s) {
                affinity[w] -= 1;
            }
        }
    }

    // leaves never reached by the greedy phase join the sequence last
    order.extend(leaves.iter().copied().filter(|&v| !assigned[v]));
    'fill: for b in 1..order.len() {
        for a in 0..b {
            if budget == 0 {
                break 'fill;
            }
            let (u, v) = (order[a], order[b]);
            if added.insert((u.min(v), u.max(v))) {
                out.push((u, v));
                budget -= 1;
            }
        }
    }
    debug_assert_eq!(budget, 0);
}
