#![allow(dead_code)]

use nmc_core::graph::NodeId;
use nmc_core::Graph;
use proptest::prelude::*;

/// Node pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(NodeId, NodeId)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Graph whose edge set is the bits of `mask` over [`pairs`].
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges = pairs(n).into_iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
    Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
}

/// Same graph with node `v` renamed `perm[v]`.
pub fn relabel(g: &Graph, perm: &[NodeId]) -> Graph {
    Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v])).collect::<Vec<_>>()).unwrap()
}

pub fn two_triangles() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
}

pub fn bridged_triangles() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
}

pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let count = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), count).prop_map(move |bits| {
            let edges: Vec<_> = pairs(n).into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Graph plus a permutation of its nodes.
pub fn arb_graph_and_perm(min_n: usize, max_n: usize) -> impl Strategy<Value = (Graph, Vec<NodeId>)> {
    arb_graph(min_n, max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}
