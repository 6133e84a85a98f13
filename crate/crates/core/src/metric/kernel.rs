//! Row similarity kernels.
//!
//! Every kernel is a cosine between transformed rows. A transformed row of
//! node `v` has the shape `offset·1 + diag·e_v + edge·A_v`: a constant on
//! every coordinate, one value on the diagonal and one value on each
//! neighbor. Cosine uses the raw row; Pearson centers it; Spearman replaces
//! entries by their average ranks and centers. This keeps each row O(1)
//! in memory and each dot product O(deg).

use serde::{Deserialize, Serialize};

use crate::graph::NodeId;
use crate::scalar::Real;

use super::lx::RowMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    #[default]
    Cosine,
    Pearson,
    Spearman,
}

/// Transformed row `offset·1 + diag·e_v + edge·A_v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelRow<T> {
    pub offset: T,
    pub diag: T,
    pub edge: T,
    /// Sum of the sparse part: `diag + deg·edge`.
    pub sparse_sum: T,
    pub norm: T,
}

impl<T: Real> KernelRow<T> {
    pub fn is_zero(&self) -> bool {
        self.norm == T::zero()
    }
}

/// Average ranks (1-based) of the values 0, 1 and `lambda` among `n`
/// entries made of `zeros` zeros, `ones` ones and one `lambda` when the
/// diagonal is neither 0 nor 1.
fn average_ranks<T: Real>(n: usize, deg: usize, lambda: T) -> (T, T, T) {
    let diag_zero = lambda == T::zero();
    let diag_one = lambda == T::one();
    let ones = deg + usize::from(diag_one);
    let zeros = n - deg - usize::from(!diag_zero);
    let has_lambda = !diag_zero && !diag_one;

    // (value, count), sorted by value
    let mut groups: Vec<(T, usize)> = vec![(T::zero(), zeros), (T::one(), ones)];
    if has_lambda {
        groups.push((lambda, 1));
    }
    groups.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite row values"));

    let mut start = 0usize;
    let mut ranks: Vec<(T, T)> = Vec::with_capacity(groups.len());
    for (value, count) in groups {
        // ranks start+1 ..= start+count, averaged
        let avg = T::from_count(2 * start + count + 1) / T::lit(2.0);
        ranks.push((value, avg));
        start += count;
    }
    let lookup = |v: T| ranks.iter().find(|(x, _)| *x == v).map(|&(_, r)| r).unwrap_or(T::zero());
    let r0 = if zeros > 0 { lookup(T::zero()) } else { T::zero() };
    let r1 = lookup(T::one());
    let rl = if diag_zero { r0 } else { lookup(lambda) };
    (r0, r1, rl)
}

/// Builds the transformed row of `v` for `kernel`.
pub fn kernel_row<T: Real>(lx: &RowMatrix<'_, T>, v: NodeId, kernel: Kernel) -> KernelRow<T> {
    let n = lx.n();
    let deg = lx.graph().degree(v);
    let degt = T::from_count(deg);
    let nt = T::from_count(n);
    let lambda = lx.diag(v);

    let (offset, diag, edge) = match kernel {
        Kernel::Cosine => (T::zero(), lambda, T::one()),
        Kernel::Pearson => (-(lambda + degt) / nt, lambda, T::one()),
        Kernel::Spearman => {
            let (r0, r1, rl) = average_ranks(n, deg, lambda);
            let mean_rank = (nt + T::one()) / T::lit(2.0);
            (r0 - mean_rank, rl - r0, r1 - r0)
        }
    };
    let sparse_sum = diag + degt * edge;
    let sparse_sq = diag * diag + degt * edge * edge;
    let norm_sq = if offset == T::zero() {
        sparse_sq
    } else {
        nt * offset * offset + T::lit(2.0) * offset * sparse_sum + sparse_sq
    };
    let scale = sparse_sq + nt * offset * offset;
    let norm = if norm_sq <= T::epsilon() * T::lit(64.0) * scale {
        T::zero()
    } else {
        norm_sq.sqrt()
    };
    KernelRow { offset, diag, edge, sparse_sum, norm }
}

/// Dot product of two transformed rows (`u != v`).
pub(crate) fn kernel_dot<T: Real>(
    lx: &RowMatrix<'_, T>,
    u: NodeId,
    ru: &KernelRow<T>,
    v: NodeId,
    rv: &KernelRow<T>,
) -> T {
    let g = lx.graph();
    let common = T::from_count(g.common_neighbors(u, v));
    let mut sparse = ru.edge * rv.edge * common;
    if g.has_edge(u, v) {
        sparse = sparse + ru.diag * rv.edge + ru.edge * rv.diag;
    }
    if ru.offset == T::zero() && rv.offset == T::zero() {
        return sparse;
    }
    let nt = T::from_count(lx.n());
    nt * ru.offset * rv.offset + ru.offset * rv.sparse_sum + rv.offset * ru.sparse_sum + sparse
}

/// Cosine between transformed rows, clamped to `[-1, 1]`; `None` when either
/// row vanishes. Always exactly 1 on the diagonal.
pub(crate) fn similarity_of<T: Real>(
    lx: &RowMatrix<'_, T>,
    u: NodeId,
    ru: &KernelRow<T>,
    v: NodeId,
    rv: &KernelRow<T>,
) -> Option<T> {
    if u == v {
        return Some(T::one());
    }
    // canonical order keeps the result bit-identical under swapping
    let (a, ra, b, rb) = if u < v { (u, ru, v, rv) } else { (v, rv, u, ru) };
    if ra.is_zero() || rb.is_zero() {
        return None;
    }
    let s = kernel_dot(lx, a, ra, b, rb) / (ra.norm * rb.norm);
    Some(s.max(-T::one()).min(T::one()))
}

/// Similarity of rows `i` and `j` under `kernel`; `None` signals an
/// undefined similarity (a vanishing transformed row).
pub fn row_similarity<T: Real>(lx: &RowMatrix<'_, T>, i: NodeId, j: NodeId, kernel: Kernel) -> Option<T> {
    let ri = kernel_row(lx, i, kernel);
    let rj = kernel_row(lx, j, kernel);
    similarity_of(lx, i, &ri, j, &rj)
}
