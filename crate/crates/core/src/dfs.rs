//! Depth-first search with DFIs, ancestor-oriented backedges and O(1)
//! ancestry queries via subtree intervals.
//!
//! Backedges are oriented from the ancestor to the descendant, the opposite
//! of the usual convention: a backedge `vw` starts at the ancestor `v`. No
//! lowpoints are computed anywhere.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeId, Graph, NegativeWitness, VertexId};
use crate::UNSET;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    Tree,
    /// Oriented ancestor → descendant.
    Back {
        from: VertexId,
        to: VertexId,
    },
}

#[derive(Debug, Clone)]
pub struct DfsForest {
    pub root: VertexId,
    /// Vertex visited second (DFI 1); the root's only tree child on inputs
    /// that survive the decomposition prechecks.
    pub second: VertexId,
    /// Visit order, 0-based.
    pub dfi: Vec<u32>,
    /// Inverse of `dfi`: order[i] is the vertex with DFI i.
    pub order: Vec<VertexId>,
    pub parent: Vec<VertexId>,
    pub parent_edge: Vec<EdgeId>,
    pub subtree: Vec<u32>,
    pub class: Vec<EdgeClass>,
}

impl DfsForest {
    /// True iff x lies on the tree path root → y (non-proper: x == y counts).
    pub fn is_ancestor(&self, x: VertexId, y: VertexId) -> bool {
        let dx = self.dfi[x as usize];
        let dy = self.dfi[y as usize];
        dx <= dy && dy < dx + self.subtree[x as usize]
    }

    pub fn is_proper_ancestor(&self, x: VertexId, y: VertexId) -> bool {
        x != y && self.is_ancestor(x, y)
    }
}

/// Iterative DFS from `root`, visiting adjacency in stored order. Returns
/// `NotConnected(root, v)` for the first unreached vertex v.
pub fn run_dfs(g: &Graph, root: VertexId) -> Result<DfsForest, NegativeWitness> {
    let n = g.n() as usize;
    debug_assert!((root as usize) < n);
    let mut dfi = vec![UNSET; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![UNSET; n];
    let mut parent_edge = vec![UNSET; n];
    let mut subtree = vec![1u32; n];
    let mut class = vec![EdgeClass::Tree; g.m() as usize];
    let mut classified = vec![false; g.m() as usize];

    // Explicit frontier of (vertex, next adjacency index); recursion depth
    // can reach n.
    let mut stack: Vec<(VertexId, usize)> = Vec::new();
    dfi[root as usize] = 0;
    order.push(root);
    stack.push((root, 0));
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        let adj = g.neighbors(v);
        if *idx >= adj.len() {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                subtree[p as usize] += subtree[v as usize];
            }
            continue;
        }
        let (w, e) = adj[*idx];
        *idx += 1;
        if dfi[w as usize] == UNSET {
            dfi[w as usize] = order.len() as u32;
            order.push(w);
            parent[w as usize] = v;
            parent_edge[w as usize] = e;
            classified[e as usize] = true; // Tree
            stack.push((w, 0));
        } else if !classified[e as usize] {
            // w was visited and the edge is not the tree edge to the parent,
            // so w is a proper ancestor of v (undirected DFS has no cross
            // edges): orient ancestor → descendant.
            debug_assert!(dfi[w as usize] < dfi[v as usize]);
            class[e as usize] = EdgeClass::Back { from: w, to: v };
            classified[e as usize] = true;
        }
    }

    if order.len() < n {
        let unreached = (0..n as u32).find(|&v| dfi[v as usize] == UNSET).unwrap();
        return Err(NegativeWitness::NotConnected(root, unreached));
    }
    let second = order[1];
    Ok(DfsForest {
        root,
        second,
        dfi,
        order,
        parent,
        parent_edge,
        subtree,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_trace() {
        // Sorted adjacency, root 0: DFI is the identity, tree path 0-1-2-3,
        // backedges 0→2, 0→3, 1→3.
        let g = k4();
        let f = run_dfs(&g, 0).unwrap();
        assert_eq!(f.dfi, vec![0, 1, 2, 3]);
        assert_eq!(f.parent[1], 0);
        assert_eq!(f.parent[2], 1);
        assert_eq!(f.parent[3], 2);
        let backs: Vec<_> = (0..g.m())
            .filter_map(|e| match f.class[e as usize] {
                EdgeClass::Back { from, to } => Some((from, to)),
                EdgeClass::Tree => None,
            })
            .collect();
        assert_eq!(backs, vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(f.subtree[0], 4);
    }

    #[test]
    fn tree_edge_count_when_connected() {
        let g = k4();
        let f = run_dfs(&g, 0).unwrap();
        let trees = f.class.iter().filter(|c| **c == EdgeClass::Tree).count();
        assert_eq!(trees, g.n() as usize - 1);
    }

    #[test]
    fn disconnected_is_witnessed() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        match run_dfs(&g, 0) {
            Err(NegativeWitness::NotConnected(0, v)) => assert!(v >= 3),
            other => panic!("expected NotConnected, got {other:?}"),
        }
    }

    #[test]
    fn ancestry() {
        let g = k4();
        let f = run_dfs(&g, 0).unwrap();
        for v in 0..4 {
            assert!(f.is_ancestor(0, v), "root is an ancestor of every vertex");
            assert!(f.is_ancestor(v, v), "ancestry is non-proper");
        }
        assert!(f.is_ancestor(1, 3));
        assert!(!f.is_ancestor(2, 0));
        assert!(!f.is_proper_ancestor(3, 3));
    }
}
