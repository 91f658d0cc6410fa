//! Dense minimum spanning trees and bottleneck (path-maximum) queries.

use crate::metric::FiniteMetricSpace;
use crate::scalar::{max_of, Scalar};

/// A spanning tree of a finite metric space.
#[derive(Clone, Debug)]
pub(crate) struct SpanningTree<S> {
    /// Edges `(i, j, weight)` with `i < j`, in insertion order.
    pub edges: Vec<(usize, usize, S)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

/// Path maxima from a fixed root: `max[v]` is the heaviest edge on the
/// tree path root -> v (`None` at the root), `pred[v]` the previous vertex.
pub(crate) struct PathMax<S> {
    pub max: Vec<Option<S>>,
    pub pred: Vec<usize>,
}

/// Prim's algorithm on the complete graph, O(n^2). Ties go to the lowest index.
pub(crate) fn prim<S: Scalar>(space: &FiniteMetricSpace<S>) -> SpanningTree<S> {
    let n = space.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut adjacency = vec![Vec::new(); n];
    if n == 0 {
        return SpanningTree { edges, adjacency };
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<Option<(S, usize)>> = vec![None; n];
    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        for (u, slot) in best.iter_mut().enumerate() {
            if in_tree[u] {
                continue;
            }
            let w = space.d(current, u);
            let better = match slot {
                None => true,
                Some((b, _)) => w < b,
            };
            if better {
                *slot = Some((w.clone(), current));
            }
        }
        let mut pick: Option<usize> = None;
        for u in 0..n {
            if in_tree[u] {
                continue;
            }
            pick = match pick {
                None => Some(u),
                Some(p) => {
                    let (bu, _) = best[u].as_ref().expect("frontier vertex has a weight");
                    let (bp, _) = best[p].as_ref().expect("frontier vertex has a weight");
                    if bu < bp {
                        Some(u)
                    } else {
                        Some(p)
                    }
                }
            };
        }
        let v = pick.expect("a vertex outside the tree remains");
        let (w, parent) = best[v].take().expect("frontier vertex has a weight");
        in_tree[v] = true;
        let idx = edges.len();
        edges.push((parent.min(v), parent.max(v), w));
        adjacency[parent].push((v, idx));
        adjacency[v].push((parent, idx));
        current = v;
    }
    SpanningTree { edges, adjacency }
}

impl<S: Scalar> SpanningTree<S> {
    pub fn path_max_from(&self, root: usize) -> PathMax<S> {
        let n = self.adjacency.len();
        let mut max: Vec<Option<S>> = vec![None; n];
        let mut pred = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        pred[root] = root;
        while let Some(v) = stack.pop() {
            for &(u, e) in &self.adjacency[v] {
                if seen[u] {
                    continue;
                }
                seen[u] = true;
                pred[u] = v;
                let w = &self.edges[e].2;
                max[u] = Some(match &max[v] {
                    None => w.clone(),
                    Some(m) => max_of(m, w),
                });
                stack.push(u);
            }
        }
        PathMax { max, pred }
    }
}

impl<S> PathMax<S> {
    /// Vertices on the tree path from the root to `target`, root first.
    pub fn path_to(&self, target: usize) -> Vec<usize> {
        let mut path = vec![target];
        let mut v = target;
        while self.pred[v] != v {
            v = self.pred[v];
            path.push(v);
        }
        path.reverse();
        path
    }
}
