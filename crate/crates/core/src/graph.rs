//! Simple undirected graphs over dense integer ids, plus the negative
//! witnesses of 3-connectivity and their verification.
//!
//! A witness is checked by one traversal of the graph with the named
//! vertices deleted; nothing in this module depends on the engine, so a
//! verified witness stands on its own.

use alloc::vec;
use alloc::vec::Vec;

use crate::UNSET;

pub type VertexId = u32;
pub type EdgeId = u32;

/// Error raised while assembling a graph from an edge list. `index` is the
/// position of the offending edge in the input slice, so a parser can map it
/// back to a line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { index: usize },
    SelfLoop { index: usize },
    DuplicateEdge { index: usize },
}

impl core::fmt::Display for GraphError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GraphError::VertexOutOfRange { index } => {
                write!(f, "edge {index}: vertex id out of range")
            }
            GraphError::SelfLoop { index } => write!(f, "edge {index}: self-loop"),
            GraphError::DuplicateEdge { index } => write!(f, "edge {index}: duplicate edge"),
        }
    }
}

/// Simple undirected graph. Vertices are `0..n`, edges are `0..m` in input
/// order; adjacency lists keep the input order of the edge list, which fixes
/// the DFS traversal order and therefore all downstream output.
#[derive(Debug, Clone)]
pub struct Graph {
    n: u32,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops and parallel
    /// edges. Duplicate detection is by stamp array, O(n + m).
    pub fn new(n: u32, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n as usize];
        let mut seen: Vec<u32> = vec![UNSET; n as usize];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { index: i });
            }
            if u == v {
                return Err(GraphError::SelfLoop { index: i });
            }
            adj[u as usize].push((v, i as EdgeId));
            adj[v as usize].push((u, i as EdgeId));
        }
        // Duplicate scan: stamp each neighbor of u with u's id.
        for u in 0..n {
            for &(v, e) in &adj[u as usize] {
                if u < v {
                    if seen[v as usize] == u {
                        return Err(GraphError::DuplicateEdge { index: e as usize });
                    }
                    seen[v as usize] = u;
                }
            }
            for &(v, _) in &adj[u as usize] {
                if u < v {
                    seen[v as usize] = UNSET;
                }
            }
        }
        Ok(Graph {
            n,
            edges: edges.to_vec(),
            adj,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.adj[v as usize].len() as u32
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v as usize]
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e as usize]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e as usize];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Looks up the edge id joining `u` and `v` by scanning the shorter
    /// adjacency list.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a as usize]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, e)| e)
    }

    /// Number of connected components after deleting `banned` vertices and
    /// `banned_edges`. Also reports one vertex of the first and second
    /// component found, for witness construction.
    pub fn components_without(
        &self,
        banned: &[VertexId],
        banned_edges: &[EdgeId],
    ) -> ComponentReport {
        let mut dead = vec![false; self.n as usize];
        for &v in banned {
            dead[v as usize] = true;
        }
        let mut dead_edge = vec![false; self.edges.len()];
        for &e in banned_edges {
            dead_edge[e as usize] = true;
        }
        let mut seen = vec![false; self.n as usize];
        let mut stack = Vec::new();
        let mut count = 0usize;
        let mut first = None;
        let mut second = None;
        for s in 0..self.n {
            if dead[s as usize] || seen[s as usize] {
                continue;
            }
            count += 1;
            if first.is_none() {
                first = Some(s);
            } else if second.is_none() {
                second = Some(s);
            }
            seen[s as usize] = true;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &(w, e) in &self.adj[v as usize] {
                    if dead[w as usize] || dead_edge[e as usize] || seen[w as usize] {
                        continue;
                    }
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        ComponentReport {
            count,
            first,
            second,
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.components_without(&[], &[]).count == 1
    }
}

pub struct ComponentReport {
    pub count: usize,
    pub first: Option<VertexId>,
    pub second: Option<VertexId>,
}

/// Witness that a graph is not 3-connected. Each variant names the vertices
/// (or edge) whose deletion test proves the claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativeWitness {
    /// n ≤ 3: a 3-connected graph needs more than 3 vertices.
    TooSmall,
    /// deg(v) ≤ 2.
    LowDegree(VertexId),
    /// u and v lie in different components.
    NotConnected(VertexId, VertexId),
    /// Deleting v disconnects the graph.
    CutVertex(VertexId),
    /// Deleting u and v disconnects the graph.
    SeparationPair(VertexId, VertexId),
    /// The named edge is a self-loop or a duplicate (issued by parsers, can
    /// never verify against an already-validated `Graph`).
    NonSimple(VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    VertexOutOfRange,
}

/// Necessary-condition scan: `TooSmall` for n ≤ 3, else the first vertex of
/// degree ≤ 2, else nothing. Every graph that passes has m ≥ ⌈3n/2⌉.
pub fn precheck(g: &Graph) -> Option<NegativeWitness> {
    if g.n() <= 3 {
        return Some(NegativeWitness::TooSmall);
    }
    (0..g.n())
        .find(|&v| g.degree(v) <= 2)
        .map(NegativeWitness::LowDegree)
}

/// Checks a witness against the graph it was issued for: one traversal with
/// the named vertices deleted, O(n + m).
pub fn verify_witness(g: &Graph, w: &NegativeWitness) -> Result<bool, WitnessError> {
    let check = |v: VertexId| {
        if v >= g.n() {
            Err(WitnessError::VertexOutOfRange)
        } else {
            Ok(())
        }
    };
    match *w {
        NegativeWitness::TooSmall => Ok(g.n() <= 3),
        NegativeWitness::LowDegree(v) => {
            check(v)?;
            Ok(g.degree(v) <= 2)
        }
        NegativeWitness::NotConnected(u, v) => {
            check(u)?;
            check(v)?;
            if u == v {
                return Ok(false);
            }
            let mut seen = vec![false; g.n() as usize];
            let mut stack = vec![u];
            seen[u as usize] = true;
            while let Some(x) = stack.pop() {
                for &(y, _) in g.neighbors(x) {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        stack.push(y);
                    }
                }
            }
            Ok(!seen[v as usize])
        }
        NegativeWitness::CutVertex(v) => {
            check(v)?;
            Ok(g.components_without(&[v], &[]).count > 1)
        }
        NegativeWitness::SeparationPair(u, v) => {
            check(u)?;
            check(v)?;
            if u == v {
                return Ok(false);
            }
            Ok(g.components_without(&[u, v], &[]).count > 1)
        }
        // A validated Graph is simple, so this can never hold.
        NegativeWitness::NonSimple(_, _) => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    /// Two K₄s sharing the adjacent vertices 2 and 3 (n = 6, m = 11).
    pub(crate) fn glued_k4() -> Graph {
        Graph::new(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn k4_shape() {
        let g = k4();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 6);
        assert_eq!((0..4).map(|v| g.degree(v)).sum::<u32>(), 12);
    }

    #[test]
    fn rejects_self_loop() {
        let err = Graph::new(2, &[(1, 1)]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop { index: 0 });
    }

    #[test]
    fn rejects_duplicate() {
        let err = Graph::new(3, &[(0, 1), (1, 2), (1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge { index: 2 });
    }

    #[test]
    fn precheck_cases() {
        assert_eq!(
            precheck(&c4()),
            Some(NegativeWitness::LowDegree(0)),
            "C4 has only degree-2 vertices"
        );
        assert_eq!(precheck(&k4()), None);
        // K4 plus one isolated vertex: the isolated vertex has degree 0.
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(precheck(&g), Some(NegativeWitness::LowDegree(4)));
        let tri = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(precheck(&tri), Some(NegativeWitness::TooSmall));
    }

    #[test]
    fn separation_pair_verifies_on_glued_k4() {
        let g = glued_k4();
        assert_eq!(
            verify_witness(&g, &NegativeWitness::SeparationPair(2, 3)),
            Ok(true)
        );
        // K4 minus any two vertices is an edge: still connected.
        assert_eq!(
            verify_witness(&k4(), &NegativeWitness::SeparationPair(0, 1)),
            Ok(false)
        );
    }

    #[test]
    fn low_degree_verifies_on_c4() {
        assert_eq!(verify_witness(&c4(), &NegativeWitness::LowDegree(0)), Ok(true));
    }

    #[test]
    fn witness_out_of_range() {
        assert_eq!(
            verify_witness(&k4(), &NegativeWitness::CutVertex(9)),
            Err(WitnessError::VertexOutOfRange)
        );
    }

    #[test]
    fn not_connected() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(
            verify_witness(&g, &NegativeWitness::NotConnected(0, 3)),
            Ok(true)
        );
        assert_eq!(
            verify_witness(&g, &NegativeWitness::NotConnected(0, 2)),
            Ok(false)
        );
    }
}
