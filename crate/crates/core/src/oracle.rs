//! Brute-force references and deterministic generators.
//!
//! Everything here is independent of the engine: 3-connectivity by
//! exhaustive deletion, BG-path validity by literal evaluation of the
//! definition on a materialized link structure, and graph generators driven
//! by a fully specified random source so corpora are reproducible across
//! implementations.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::edge3::Edge3Witness;
use crate::graph::{EdgeId, Graph, NegativeWitness, VertexId};
use crate::UNSET;

/// SplitMix64: 64-bit state, one multiply-xor-shift chain per draw.
///
/// `next_u64` advances `state += 0x9E3779B97F4A7C15` and returns
/// `mix(state)` with `mix(z) = h(h(z, 30, 0xBF58476D1CE4E5B9), 27,
/// 0x94D049BB133111EB) ^ (… >> 31)` where `h(z, s, m) = (z ^ (z >> s)) * m`.
/// Stream `i` of seed `s` starts from `state = s ^ mix(i + 1)`. Bounded
/// draws use plain modulo. This is the full specification; any
/// implementation following it reproduces the corpora bit for bit.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream `stream` of the same seed.
    pub fn stream(seed: u64, stream: u64) -> Self {
        SplitMix64 {
            state: seed ^ mix(stream.wrapping_add(1)),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform-enough draw in 0..bound (modulo; bias is irrelevant at the
    /// bounds used here and keeps the generator trivially portable).
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }
}

/// Exhaustive 3-connectivity test by deletion: all single vertices, then
/// all pairs. Returns the first witness found.
pub fn brute_vertex_3conn(g: &Graph) -> Result<(), NegativeWitness> {
    if g.n() <= 3 {
        return Err(NegativeWitness::TooSmall);
    }
    let whole = g.components_without(&[], &[]);
    if whole.count > 1 {
        return Err(NegativeWitness::NotConnected(
            whole.first.unwrap(),
            whole.second.unwrap(),
        ));
    }
    for v in 0..g.n() {
        if g.components_without(&[v], &[]).count > 1 {
            return Err(NegativeWitness::CutVertex(v));
        }
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.components_without(&[u, v], &[]).count > 1 {
                return Err(NegativeWitness::SeparationPair(u, v));
            }
        }
    }
    Ok(())
}

/// Exhaustive 3-edge-connectivity test: all single edges, then all pairs.
pub fn brute_edge_3conn(g: &Graph) -> Result<(), Edge3Witness> {
    if g.n() < 2 {
        return Err(Edge3Witness::TooSmall);
    }
    if !g.is_connected() {
        return Err(Edge3Witness::EdgeCut(Vec::new()));
    }
    for e in 0..g.m() {
        if g.components_without(&[], &[e]).count > 1 {
            return Err(Edge3Witness::EdgeCut(vec![e]));
        }
    }
    for e in 0..g.m() {
        for f in e + 1..g.m() {
            if g.components_without(&[], &[e, f]).count > 1 {
                return Err(Edge3Witness::EdgeCut(vec![e, f]));
            }
        }
    }
    Ok(())
}

/// Materialized view of a subdivision: which vertices are in it, which are
/// real, and the explicit links (maximal paths whose inner vertices have
/// subdivision degree 2).
#[derive(Debug, Clone)]
pub struct NaiveSubdivisionModel {
    pub in_sub: Vec<bool>,
    pub degree: Vec<u32>,
    pub real: Vec<bool>,
    pub real_count: usize,
    /// Each link as its full vertex sequence; endpoints are real.
    pub links: Vec<Vec<VertexId>>,
    /// VertexId → link holding it as an inner vertex.
    pub link_of_inner: Vec<u32>,
    /// Link ids incident to each real vertex.
    pub links_at: Vec<Vec<u32>>,
}

impl NaiveSubdivisionModel {
    /// Builds the model of the subdivision formed by the given paths
    /// (vertex sequences; typically the S₃ chains plus a prefix of BG-paths).
    pub fn build(g: &Graph, paths: &[&[VertexId]]) -> Self {
        let n = g.n() as usize;
        let mut in_sub = vec![false; n];
        let mut sub_adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for path in paths {
            for w in path.windows(2) {
                sub_adj[w[0] as usize].push(w[1]);
                sub_adj[w[1] as usize].push(w[0]);
            }
            for &v in *path {
                in_sub[v as usize] = true;
            }
        }
        let degree: Vec<u32> = sub_adj.iter().map(|a| a.len() as u32).collect();
        let real: Vec<bool> = (0..n)
            .map(|v| in_sub[v] && degree[v] >= 3)
            .collect();
        let real_count = real.iter().filter(|&&r| r).count();

        let mut links: Vec<Vec<VertexId>> = Vec::new();
        let mut link_of_inner = vec![UNSET; n];
        let mut links_at: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut consumed: Vec<Vec<bool>> = sub_adj
            .iter()
            .map(|a| vec![false; a.len()])
            .collect();
        for start in 0..n as u32 {
            if !real[start as usize] {
                continue;
            }
            for i in 0..sub_adj[start as usize].len() {
                if consumed[start as usize][i] {
                    continue;
                }
                let mut path = vec![start];
                let mut prev = start;
                let mut cur = sub_adj[start as usize][i];
                consumed[start as usize][i] = true;
                loop {
                    // consume the reverse dart cur → prev
                    let back = sub_adj[cur as usize]
                        .iter()
                        .enumerate()
                        .find(|&(j, &w)| w == prev && !consumed[cur as usize][j])
                        .map(|(j, _)| j)
                        .expect("reverse dart present");
                    consumed[cur as usize][back] = true;
                    path.push(cur);
                    if real[cur as usize] {
                        break;
                    }
                    let (j, &next) = sub_adj[cur as usize]
                        .iter()
                        .enumerate()
                        .find(|&(j, _)| !consumed[cur as usize][j])
                        .expect("degree-2 inner vertex has an onward dart");
                    consumed[cur as usize][j] = true;
                    prev = cur;
                    cur = next;
                }
                let id = links.len() as u32;
                for &v in &path[1..path.len() - 1] {
                    link_of_inner[v as usize] = id;
                }
                links_at[path[0] as usize].push(id);
                links_at[*path.last().unwrap() as usize].push(id);
                links.push(path);
            }
        }
        NaiveSubdivisionModel {
            in_sub,
            degree,
            real,
            real_count,
            links,
            link_of_inner,
            links_at,
        }
    }

    fn link_ends(&self, l: u32) -> (VertexId, VertexId) {
        let p = &self.links[l as usize];
        (p[0], *p.last().unwrap())
    }

    fn links_containing(&self, v: VertexId) -> Vec<u32> {
        if self.real[v as usize] {
            self.links_at[v as usize].clone()
        } else if self.link_of_inner[v as usize] != UNSET {
            vec![self.link_of_inner[v as usize]]
        } else {
            Vec::new()
        }
    }

    fn link_contains(&self, l: u32, v: VertexId) -> bool {
        let (a, b) = self.link_ends(l);
        a == v || b == v || self.link_of_inner[v as usize] == l
    }
}

/// Literal evaluation of the three BG-path conditions against the model:
/// the path meets the subdivision exactly in its endpoints, every link
/// containing both endpoints has them as end vertices, and (once at least 4
/// real vertices exist) the endpoints are not inner vertices of parallel
/// links. Also insists the input is a simple path in G.
pub fn is_bg_path_naive(model: &NaiveSubdivisionModel, g: &Graph, path: &[VertexId]) -> bool {
    if path.len() < 2 {
        return false;
    }
    let mut seen = BTreeSet::new();
    for &v in path {
        if v >= g.n() || !seen.insert(v) {
            return false;
        }
    }
    for w in path.windows(2) {
        if g.find_edge(w[0], w[1]).is_none() {
            return false;
        }
    }
    let x = path[0];
    let y = *path.last().unwrap();
    // condition 1
    if !model.in_sub[x as usize] || !model.in_sub[y as usize] {
        return false;
    }
    if path[1..path.len() - 1].iter().any(|&v| model.in_sub[v as usize]) {
        return false;
    }
    // condition 2
    for l in model.links_containing(x) {
        if model.link_contains(l, y) {
            let (a, b) = model.link_ends(l);
            if !((a == x && b == y) || (a == y && b == x)) {
                return false;
            }
        }
    }
    // condition 3
    if model.real_count >= 4 {
        let lx = model.link_of_inner[x as usize];
        let ly = model.link_of_inner[y as usize];
        if lx != UNSET && ly != UNSET && lx != ly {
            let (a1, b1) = model.link_ends(lx);
            let (a2, b2) = model.link_ends(ly);
            if (a1, b1) == (a2, b2) || (a1, b1) == (b2, a2) {
                return false;
            }
        }
    }
    true
}

/// Growable simple graph for the BG-operation generators.
#[derive(Debug, Clone)]
pub struct GrowingGraph {
    n: u32,
    edges: Vec<(VertexId, VertexId)>,
    present: BTreeSet<(VertexId, VertexId)>,
}

impl GrowingGraph {
    pub fn k4() -> Self {
        let mut g = GrowingGraph {
            n: 4,
            edges: Vec::new(),
            present: BTreeSet::new(),
        };
        for u in 0..4 {
            for v in u + 1..4 {
                g.push_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.present
            .contains(&(u.min(v), u.max(v)))
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId) {
        debug_assert!(u != v && !self.has_edge(u, v));
        self.present.insert((u.min(v), u.max(v)));
        self.edges.push((u, v));
    }

    fn remove_edge(&mut self, e: EdgeId) -> (VertexId, VertexId) {
        // Only ever called on the edge being subdivided; replace it in place
        // to keep ids dense.
        let (u, v) = self.edges[e as usize];
        self.present.remove(&(u.min(v), u.max(v)));
        (u, v)
    }

    /// BG-operation 1: add the edge xy. Requires non-adjacent endpoints to
    /// keep the graph simple.
    pub fn add_edge(&mut self, x: VertexId, y: VertexId) {
        self.push_edge(x, y);
    }

    /// BG-operation 2: subdivide edge e by a fresh vertex and connect it to
    /// y. Returns the new vertex.
    pub fn subdivide_one(&mut self, e: EdgeId, y: VertexId) -> VertexId {
        let (a, b) = self.remove_edge(e);
        debug_assert!(y != a && y != b);
        let x = self.n;
        self.n += 1;
        self.edges[e as usize] = (a, x);
        self.present.insert((a.min(x), a.max(x)));
        self.push_edge(x, b);
        self.push_edge(x, y);
        x
    }

    /// BG-operation 3: subdivide two distinct edges by fresh vertices x, y
    /// and add the edge xy.
    pub fn subdivide_two(&mut self, e: EdgeId, f: EdgeId) -> (VertexId, VertexId) {
        debug_assert_ne!(e, f);
        let (a, b) = self.remove_edge(e);
        let x = self.n;
        self.n += 1;
        self.edges[e as usize] = (a, x);
        self.present.insert((a.min(x), a.max(x)));
        self.push_edge(x, b);
        let (c, d) = self.remove_edge(f);
        let y = self.n;
        self.n += 1;
        self.edges[f as usize] = (c, y);
        self.present.insert((c.min(y), c.max(y)));
        self.push_edge(y, d);
        self.push_edge(x, y);
        (x, y)
    }

    pub fn into_graph(self) -> Graph {
        Graph::new(self.n, &self.edges).expect("generator keeps the graph simple")
    }
}

/// Applies one uniformly chosen BG-operation with uniformly chosen valid
/// arguments; argument choices that would create a parallel edge are
/// rejected and resampled.
pub fn apply_random_op(g: &mut GrowingGraph, rng: &mut SplitMix64) {
    loop {
        match rng.below(3) {
            0 => {
                // Complete graphs admit no simple edge addition; fall
                // through to a subdivision in that case.
                let n = g.n() as u64;
                if g.m() as u64 == n * (n - 1) / 2 {
                    continue;
                }
                let x = rng.below(n) as VertexId;
                let y = rng.below(n) as VertexId;
                if x == y || g.has_edge(x, y) {
                    continue;
                }
                g.add_edge(x, y);
            }
            1 => {
                let e = rng.below(g.m() as u64) as EdgeId;
                let (a, b) = (g.edges[e as usize].0, g.edges[e as usize].1);
                let y = rng.below(g.n() as u64) as VertexId;
                if y == a || y == b {
                    continue;
                }
                g.subdivide_one(e, y);
            }
            _ => {
                let e = rng.below(g.m() as u64) as EdgeId;
                let f = rng.below(g.m() as u64) as EdgeId;
                if e == f {
                    continue;
                }
                g.subdivide_two(e, f);
            }
        }
        return;
    }
}

/// Random 3-connected graph: K₄ plus `k` random BG-operations. 3-connected
/// by construction, deterministic per seed.
pub fn gen_random_3connected(k: u32, seed: u64) -> Graph {
    let mut rng = SplitMix64::stream(seed, 0);
    let mut g = GrowingGraph::k4();
    for _ in 0..k {
        apply_random_op(&mut g, &mut rng);
    }
    g.into_graph()
}

/// Glues a small random 3-connected gadget to `g` along two vertices,
/// producing a graph whose 3-connectivity fails exactly at that pair. The
/// pair is checked by deletion before returning.
pub fn plant_separation_pair(g: &Graph, seed: u64) -> Graph {
    let mut rng = SplitMix64::stream(seed, 1);
    for attempt in 0.. {
        let gadget = gen_random_3connected(rng.below(4) as u32, seed ^ mix(attempt + 7));
        let u = rng.below(g.n() as u64) as VertexId;
        let v = rng.below(g.n() as u64) as VertexId;
        if u == v {
            continue;
        }
        let a = rng.below(gadget.n() as u64) as VertexId;
        let b = rng.below(gadget.n() as u64) as VertexId;
        if a == b {
            continue;
        }
        // The only parallel risk: gadget edge ab on top of graph edge uv.
        if gadget.find_edge(a, b).is_some() && g.find_edge(u, v).is_some() {
            continue;
        }
        let mut edges = g.edges().to_vec();
        let mut fresh = g.n();
        let mut map = vec![UNSET; gadget.n() as usize];
        map[a as usize] = u;
        map[b as usize] = v;
        for w in 0..gadget.n() {
            if map[w as usize] == UNSET {
                map[w as usize] = fresh;
                fresh += 1;
            }
        }
        for &(p, q) in gadget.edges() {
            edges.push((map[p as usize], map[q as usize]));
        }
        let planted = Graph::new(fresh, &edges).expect("gluing keeps the graph simple");
        if crate::graph::verify_witness(&planted, &NegativeWitness::SeparationPair(u, v))
            == Ok(true)
        {
            return planted;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 0; frozen from the published algorithm.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(r.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(r.next_u64(), 0x06C45D188009454F);
    }

    #[test]
    fn brute_on_small_graphs() {
        assert!(brute_vertex_3conn(&k4()).is_ok());
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(brute_vertex_3conn(&c4).is_err());
        let glued = Graph::new(
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
        .unwrap();
        assert_eq!(
            brute_vertex_3conn(&glued),
            Err(NegativeWitness::SeparationPair(2, 3))
        );
    }

    #[test]
    fn brute_edge_cases() {
        assert!(brute_edge_3conn(&k4()).is_ok());
        // Bridge graph: two triangles joined by one edge.
        let g = Graph::new(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)],
        )
        .unwrap();
        assert_eq!(brute_edge_3conn(&g), Err(Edge3Witness::EdgeCut(vec![6])));
    }

    #[test]
    fn generator_growth_arithmetic() {
        assert_eq!(gen_random_3connected(0, 1).n(), 4);
        assert_eq!(gen_random_3connected(0, 1).m(), 6);
        let mut g = GrowingGraph::k4();
        g.subdivide_one(0, 3);
        assert_eq!((g.n(), g.m()), (5, 8));
        g.subdivide_two(1, 2);
        assert_eq!((g.n(), g.m()), (7, 11));
        g.into_graph(); // must stay simple
    }

    #[test]
    fn generator_outputs_are_3connected() {
        for seed in 0..20 {
            let g = gen_random_3connected(3, seed);
            assert!(g.n() <= 10);
            assert!(
                brute_vertex_3conn(&g).is_ok(),
                "seed {seed} produced a non-3-connected graph"
            );
        }
        let big = gen_random_3connected(50, 42);
        assert_eq!(big.m() - big.n(), 52, "each op raises m - n by one");
    }

    #[test]
    fn planted_pairs_verify() {
        for seed in 0..10 {
            let base = gen_random_3connected(2, seed);
            let planted = plant_separation_pair(&base, seed);
            assert!(brute_vertex_3conn(&planted).is_err());
            assert!((0..planted.n()).all(|v| planted.degree(v) >= 3));
        }
    }

    #[test]
    fn naive_model_on_s3() {
        // K4 with the S3 chains from the decomposition golden test.
        let g = k4();
        let s3: [&[u32]; 3] = [&[2, 1, 0], &[0, 2], &[0, 3, 2]];
        let model = NaiveSubdivisionModel::build(&g, &s3);
        assert_eq!(model.real_count, 2);
        assert!(model.real[0] && model.real[2]);
        assert_eq!(model.links.len(), 3);
        // The K4-forming path [1,3] joins inner vertices of parallel links,
        // which is fine while fewer than 4 real vertices exist.
        assert!(is_bg_path_naive(&model, &g, &[1, 3]));
        // A path with an inner vertex inside the subdivision fails cond 1.
        assert!(!is_bg_path_naive(&model, &g, &[1, 0, 3]));
    }

    #[test]
    fn parallel_links_rejected_once_four_reals_exist() {
        // Poles 0 and 1 joined by four paths, two of them subdivided (by 2
        // and 3), plus the chord (2,3) and the edge (4,5) that makes 4 and 5
        // real.
        let g = Graph::new(
            6,
            &[
                (0, 2),
                (2, 1),
                (0, 3),
                (3, 1),
                (0, 4),
                (4, 1),
                (0, 5),
                (5, 1),
                (4, 5),
                (2, 3),
            ],
        )
        .unwrap();
        let full: [&[u32]; 7] = [
            &[0, 2, 1],
            &[0, 3, 1],
            &[0, 4],
            &[4, 1],
            &[0, 5],
            &[5, 1],
            &[4, 5],
        ];
        let model = NaiveSubdivisionModel::build(&g, &full);
        assert_eq!(model.real_count, 4); // 0, 1, 4, 5
        assert!(!model.real[2] && !model.real[3]);
        // 2 and 3 are inner vertices of parallel links [0,2,1] and [0,3,1]:
        // condition 3 rejects the chord.
        assert!(!is_bg_path_naive(&model, &g, &[2, 3]));
        // With only the two poles real, the guard |V_real| >= 4 exempts the
        // same path.
        let small = NaiveSubdivisionModel::build(&g, &full[..4]);
        assert_eq!(small.real_count, 2);
        assert!(is_bg_path_naive(&small, &g, &[2, 3]));
        // An endpoint that is an inner vertex of a link containing the other
        // endpoint violates condition 2.
        assert!(!is_bg_path_naive(&small, &g, &[0, 4]));
    }
}
