//! Chain decomposition and classification.
//!
//! The graph is decomposed into paths C₀..C_{m−n+1} whose edge sets
//! partition E(G). C₀ runs from the junction vertex x up the tree to the
//! root; C₁ and C₂ each consist of one root backedge plus the tree path back
//! to x, so C₀ ∪ C₁ ∪ C₂ is a K₂³-subdivision. Every later chain starts with
//! one backedge and climbs the tree until it meets an earlier chain.
//!
//! Chains carry one of the types 1, 2a, 2b, 3a, 3b; type-3b chains pull
//! their marked 2b ancestors into a caterpillar. Both the decomposition and
//! the classification are O(n + m); all membership tests are O(1) via the
//! inner-chain pointer of each vertex.

use alloc::vec;
use alloc::vec::Vec;

use crate::dfs::{DfsForest, EdgeClass};
use crate::graph::{EdgeId, Graph, NegativeWitness, VertexId};
use crate::{internal, InternalError, UNSET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainType {
    /// C₀ only.
    None,
    T1,
    T2a,
    T2b,
    T3a,
    T3b,
}

impl ChainType {
    pub fn is_type2(self) -> bool {
        matches!(self, ChainType::T2a | ChainType::T2b)
    }

    pub fn is_type3(self) -> bool {
        matches!(self, ChainType::T3a | ChainType::T3b)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ChainType::None => "0",
            ChainType::T1 => "1",
            ChainType::T2a => "2a",
            ChainType::T2b => "2b",
            ChainType::T3a => "3a",
            ChainType::T3b => "3b",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Chain {
    pub id: u32,
    /// Vertex sequence from s to t. For every chain except C₀ the first
    /// edge is the backedge and the rest climbs the tree; C₀ is pure tree.
    pub vertices: Vec<VertexId>,
    /// Absent only for C₀.
    pub backedge: Option<EdgeId>,
    /// Parent in the chain tree U; absent only for C₀.
    pub parent: Option<u32>,
    pub ctype: ChainType,
    /// Index into `ChainDecomposition::caterpillars` for 2b/3b chains.
    pub caterpillar: Option<u32>,
}

impl Chain {
    pub fn s(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn t(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn is_backedge(&self) -> bool {
        self.vertices.len() == 2
    }
}

/// One type-3b chain plus the 2b ancestors it unmarked, in the order they
/// were appended; the last member is the minimal one.
#[derive(Debug, Clone)]
pub struct Caterpillar {
    /// Chain id of the 3b member.
    pub id: u32,
    pub members: Vec<u32>,
    /// Parent chain of the minimal member.
    pub parent: u32,
}

#[derive(Debug, Clone)]
pub struct ChainDecomposition {
    pub chains: Vec<Chain>,
    /// EdgeId → ChainId covering it.
    pub per_edge_chain: Vec<u32>,
    /// VertexId → chain holding it as an inner vertex (UNSET for r and x,
    /// which are endpoints everywhere they appear).
    pub inner_chain_of: Vec<u32>,
    /// Child lists of the chain tree U, in increasing id order.
    pub children: Vec<Vec<u32>>,
    pub caterpillars: Vec<Caterpillar>,
    pub forest: DfsForest,
    /// Junction vertex of the K₂³-subdivision (s(C₀)).
    pub x: VertexId,
    /// Work counter for the classification pass.
    pub classify_steps: u64,
}

impl ChainDecomposition {
    pub fn root(&self) -> VertexId {
        self.forest.root
    }

    /// The chain that first covered `v`: its inner chain, or C₀ for the two
    /// subdivision endpoints r and x.
    pub fn covering_chain(&self, v: VertexId) -> u32 {
        let c = self.inner_chain_of[v as usize];
        if c != UNSET {
            c
        } else {
            debug_assert!(v == self.forest.root || v == self.x);
            0
        }
    }

    /// O(1) membership test: v lies on chain `c` (inner vertex or endpoint).
    pub fn on_chain(&self, c: u32, v: VertexId) -> bool {
        self.inner_chain_of[v as usize] == c
            || self.chains[c as usize].s() == v
            || self.chains[c as usize].t() == v
    }
}

/// Everything `decompose` can report: a verified-checkable witness or an
/// internal inconsistency.
#[derive(Debug, Clone)]
pub enum DecomposeError {
    Witness(NegativeWitness),
    Internal(InternalError),
}

/// Decomposes a connected graph with δ ≥ 3 into chains. Emits `CutVertex` /
/// `SeparationPair` witnesses when the root structure or the coverage checks
/// show the graph is not 2-connected.
pub fn decompose(g: &Graph, forest: DfsForest) -> Result<ChainDecomposition, DecomposeError> {
    let n = g.n() as usize;
    let m = g.m() as usize;
    let f = &forest;
    let root = f.root;

    // Root or second vertex with two tree children: not 2-connected.
    let mut root_children = 0u32;
    let mut second_children = 0u32;
    for v in 0..n as u32 {
        if f.parent[v as usize] == root {
            root_children += 1;
        }
        if f.parent[v as usize] == f.second {
            second_children += 1;
        }
    }
    if root_children >= 2 {
        return Err(witness_checked(g, NegativeWitness::CutVertex(root)));
    }
    if second_children >= 2 {
        return Err(witness_checked(
            g,
            NegativeWitness::SeparationPair(root, f.second),
        ));
    }

    // The first two backedges at the root, in adjacency order.
    let mut root_backs = g
        .neighbors(root)
        .iter()
        .filter(|&&(_, e)| matches!(f.class[e as usize], EdgeClass::Back { .. }));
    let (a, ea) = match root_backs.next() {
        Some(&(w, e)) => (w, e),
        None => return Err(DecomposeError::Internal(internal!("root has no backedge"))),
    };
    let (b, eb) = match root_backs.next() {
        Some(&(w, e)) => (w, e),
        None => {
            return Err(DecomposeError::Internal(internal!(
                "root has a single backedge"
            )))
        }
    };

    // x = lca(a, b): repeatedly lift the endpoint with the larger DFI.
    let (mut p, mut q) = (a, b);
    while p != q {
        if f.dfi[p as usize] > f.dfi[q as usize] {
            p = f.parent[p as usize];
        } else {
            q = f.parent[q as usize];
        }
    }
    let x = p;
    debug_assert_ne!(x, root);

    let mut chains: Vec<Chain> = Vec::with_capacity(m - n + 2);
    let mut per_edge_chain = vec![UNSET; m];
    let mut inner_chain_of = vec![UNSET; n];

    // C₀ = x →_T r.
    {
        let mut verts = vec![x];
        let mut cur = x;
        while cur != root {
            per_edge_chain[f.parent_edge[cur as usize] as usize] = 0;
            cur = f.parent[cur as usize];
            verts.push(cur);
            if cur != root {
                inner_chain_of[cur as usize] = 0;
            }
        }
        chains.push(Chain {
            id: 0,
            vertices: verts,
            backedge: None,
            parent: None,
            ctype: ChainType::None,
            caterpillar: None,
        });
    }
    // C₁ = ra ∪ a →_T x and C₂ = rb ∪ b →_T x.
    for (id, (w, e)) in [(1u32, (a, ea)), (2u32, (b, eb))] {
        let mut verts = vec![root, w];
        per_edge_chain[e as usize] = id;
        let mut cur = w;
        while cur != x {
            inner_chain_of[cur as usize] = id;
            per_edge_chain[f.parent_edge[cur as usize] as usize] = id;
            cur = f.parent[cur as usize];
            verts.push(cur);
        }
        chains.push(Chain {
            id,
            vertices: verts,
            backedge: Some(e),
            parent: None, // filled below
            ctype: ChainType::None,
            caterpillar: None,
        });
    }

    // Remaining chains: vertices in DFI order, backedges in adjacency order.
    // A chain climbs from the descendant end of its backedge until it meets
    // a vertex already in a chain.
    let mut bad_chains: Vec<u32> = Vec::new();
    for d in 0..n {
        let v = f.order[d];
        for &(w, e) in g.neighbors(v) {
            if per_edge_chain[e as usize] != UNSET {
                continue;
            }
            if !matches!(f.class[e as usize], EdgeClass::Back { from, .. } if from == v) {
                continue;
            }
            let id = chains.len() as u32;
            let covered_start = inner_chain_of[v as usize] != UNSET || v == root || v == x;
            per_edge_chain[e as usize] = id;
            let mut verts = vec![v, w];
            if inner_chain_of[w as usize] == UNSET && w != root && w != x {
                inner_chain_of[w as usize] = id;
                let mut cur = w;
                loop {
                    per_edge_chain[f.parent_edge[cur as usize] as usize] = id;
                    cur = f.parent[cur as usize];
                    verts.push(cur);
                    if inner_chain_of[cur as usize] != UNSET || cur == root || cur == x {
                        break;
                    }
                    inner_chain_of[cur as usize] = id;
                }
            }
            let cyclic = *verts.last().unwrap() == v;
            if !covered_start || cyclic {
                bad_chains.push(id);
            }
            chains.push(Chain {
                id,
                vertices: verts,
                backedge: Some(e),
                parent: None,
                ctype: ChainType::None,
                caterpillar: None,
            });
        }
    }

    let unassigned: Vec<EdgeId> = (0..m as u32)
        .filter(|&e| per_edge_chain[e as usize] == UNSET)
        .collect();
    if !bad_chains.is_empty() || !unassigned.is_empty() {
        // Not 2-connected. Locate a cut vertex among the endpoints of the
        // offending chains and the tree endpoints of unassigned bridges;
        // every candidate is checked by deletion before being returned.
        let mut candidates: Vec<VertexId> = Vec::new();
        for &c in &bad_chains {
            let ch = &chains[c as usize];
            candidates.push(ch.s());
            candidates.push(ch.t());
        }
        for &e in &unassigned {
            if matches!(f.class[e as usize], EdgeClass::Tree) {
                let (u2, v2) = g.edge(e);
                candidates.push(u2);
                candidates.push(v2);
            }
        }
        let mut tried = vec![false; n];
        for &c in &candidates {
            if tried[c as usize] {
                continue;
            }
            tried[c as usize] = true;
            if crate::graph::verify_witness(g, &NegativeWitness::CutVertex(c)) == Ok(true) {
                return Err(DecomposeError::Witness(NegativeWitness::CutVertex(c)));
            }
        }
        return Err(DecomposeError::Internal(internal!(
            "decomposition failed but no candidate cut vertex verified"
        )));
    }

    if chains.len() != m - n + 2 {
        return Err(DecomposeError::Internal(internal!(
            "chain count {} != m - n + 2 = {}",
            chains.len(),
            m - n + 2
        )));
    }

    // Parent chains: the chain containing the tree edge from t(Cᵢ) upwards.
    for i in 1..chains.len() {
        let t = chains[i].t();
        if t == root {
            return Err(DecomposeError::Internal(internal!(
                "chain {i} terminates at the root"
            )));
        }
        let pe = f.parent_edge[t as usize];
        let pc = per_edge_chain[pe as usize];
        debug_assert!(pc < i as u32);
        chains[i].parent = Some(pc);
    }

    let mut children = vec![Vec::new(); chains.len()];
    for i in 1..chains.len() {
        children[chains[i].parent.unwrap() as usize].push(i as u32);
    }

    Ok(ChainDecomposition {
        chains,
        per_edge_chain,
        inner_chain_of,
        children,
        caterpillars: Vec::new(),
        forest,
        x,
        classify_steps: 0,
    })
}

fn witness_checked(g: &Graph, w: NegativeWitness) -> DecomposeError {
    match crate::graph::verify_witness(g, &w) {
        Ok(true) => DecomposeError::Witness(w),
        _ => DecomposeError::Internal(internal!("emitted witness {w:?} failed verification")),
    }
}

/// Assigns a type to every chain C₁.. and collects caterpillars. Processes
/// chains in increasing id order; 2b chains are marked and unmarked exactly
/// once when a 3b descendant absorbs them.
pub fn classify(d: &mut ChainDecomposition) {
    let z = d.chains.len();
    let mut marked = vec![false; z];
    for i in 1..z {
        d.classify_steps += 1;
        let k = d.chains[i].parent.unwrap();
        let s_i = d.chains[i].s();
        let t_i = d.chains[i].t();
        let s_k = d.chains[k as usize].s();
        let t_k = d.chains[k as usize].t();
        // Type 1: the tree path t(Cᵢ) → s(Cᵢ) lies inside the parent. Both
        // endpoints on C₀ suffice there; otherwise both must lie on the tree
        // part of the parent, i.e. on C_k minus its start vertex.
        let type1 = if k == 0 {
            d.on_chain(0, s_i) && d.on_chain(0, t_i)
        } else {
            let on_tree_part =
                |v: VertexId| d.inner_chain_of[v as usize] == k || v == t_k;
            on_tree_part(s_i) && on_tree_part(t_i)
        };
        if type1 {
            d.chains[i].ctype = ChainType::T1;
        } else if s_i == s_k {
            if d.chains[i].is_backedge() {
                d.chains[i].ctype = ChainType::T2a;
            } else {
                d.chains[i].ctype = ChainType::T2b;
                marked[i] = true;
            }
        } else if !marked[k as usize] {
            d.chains[i].ctype = ChainType::T3a;
        } else {
            d.chains[i].ctype = ChainType::T3b;
            let cat_id = d.caterpillars.len() as u32;
            d.chains[i].caterpillar = Some(cat_id);
            let mut members = vec![i as u32];
            let mut j = k;
            while marked[j as usize] {
                d.classify_steps += 1;
                marked[j as usize] = false;
                d.chains[j as usize].caterpillar = Some(cat_id);
                members.push(j);
                j = d.chains[j as usize].parent.unwrap();
            }
            let parent = d.chains[*members.last().unwrap() as usize].parent.unwrap();
            debug_assert_eq!(parent, j);
            d.caterpillars.push(Caterpillar {
                id: i as u32,
                members,
                parent,
            });
        }
    }
    debug_assert!(!marked.iter().any(|&b| b), "every 2b chain is absorbed");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfs::run_dfs;

    fn decomposed(g: &Graph) -> ChainDecomposition {
        let f = run_dfs(g, 0).unwrap();
        let mut d = match decompose(g, f) {
            Ok(d) => d,
            Err(e) => panic!("decompose failed: {e:?}"),
        };
        classify(&mut d);
        d
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Wheel W₅: hub 0, rim cycle 1-2-3-4-5.
    fn w5() -> Graph {
        Graph::new(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 1),
            ],
        )
        .unwrap()
    }

    fn glued_k4() -> Graph {
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
    fn k4_decomposition_golden() {
        let g = k4();
        let d = decomposed(&g);
        assert_eq!(d.chains.len(), 4); // m - n + 2
        assert_eq!(d.x, 2);
        assert_eq!(d.chains[0].vertices, vec![2, 1, 0]);
        assert_eq!(d.chains[1].vertices, vec![0, 2]);
        assert_eq!(d.chains[2].vertices, vec![0, 3, 2]);
        assert_eq!(d.chains[3].vertices, vec![1, 3]);
        assert_eq!(d.chains[1].ctype, ChainType::T1);
        assert_eq!(d.chains[2].ctype, ChainType::T1);
        assert_eq!(d.chains[3].ctype, ChainType::T3a);
        assert_eq!(d.chains[3].parent, Some(2));
    }

    #[test]
    fn w5_has_type2_chains_and_a_three_member_caterpillar() {
        let g = w5();
        let d = decomposed(&g);
        assert_eq!(d.chains.len(), 6);
        let types: Vec<_> = d.chains.iter().map(|c| c.ctype).collect();
        assert!(types.contains(&ChainType::T2b));
        assert_eq!(d.chains[5].ctype, ChainType::T3b);
        assert_eq!(d.caterpillars.len(), 1);
        assert_eq!(d.caterpillars[0].members, vec![5, 4, 3]);
        assert_eq!(d.caterpillars[0].parent, 2);
    }

    #[test]
    fn glued_k4_decomposes_despite_separation_pair() {
        // 2-connected, so the decomposition itself succeeds; the engine
        // reports the separation pair later.
        let g = glued_k4();
        let d = decomposed(&g);
        assert_eq!(d.chains.len(), 11 - 6 + 2);
        assert_eq!(d.chains[5].ctype, ChainType::T2b);
        assert_eq!(d.chains[6].ctype, ChainType::T3b);
        assert_eq!(d.caterpillars[0].members, vec![6, 5]);
    }

    #[test]
    fn chain_edges_partition_edge_set() {
        for g in [k4(), w5(), glued_k4()] {
            let d = decomposed(&g);
            let mut covered = vec![0u32; g.m() as usize];
            for c in &d.chains {
                for win in c.vertices.windows(2) {
                    let e = g.find_edge(win[0], win[1]).unwrap();
                    covered[e as usize] += 1;
                }
            }
            assert!(covered.iter().all(|&c| c == 1), "each edge in exactly one chain");
            // Chain ids assigned by per_edge_chain agree with the walk.
            for c in &d.chains {
                for win in c.vertices.windows(2) {
                    let e = g.find_edge(win[0], win[1]).unwrap();
                    assert_eq!(d.per_edge_chain[e as usize], c.id);
                }
            }
        }
    }

    #[test]
    fn parents_precede_children() {
        for g in [k4(), w5(), glued_k4()] {
            let d = decomposed(&g);
            for c in &d.chains[1..] {
                assert!(c.parent.unwrap() < c.id);
                // s(Cᵢ) is a proper ancestor of t(Cᵢ).
                assert!(d.forest.is_proper_ancestor(c.s(), c.t()));
            }
        }
    }

    #[test]
    fn cut_vertex_witnessed() {
        // Two K₄s glued at a single vertex (vertex 3): 3 is a cut vertex.
        let g = Graph::new(
            7,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
                (5, 6),
            ],
        )
        .unwrap();
        let f = run_dfs(&g, 0).unwrap();
        match decompose(&g, f) {
            Err(DecomposeError::Witness(NegativeWitness::CutVertex(v))) => assert_eq!(v, 3),
            other => panic!("expected cut vertex, got {other:?}"),
        }
    }
}
