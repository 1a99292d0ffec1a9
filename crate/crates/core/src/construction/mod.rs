//! The construction engine: starting from the K₂³-subdivision S₃ = C₀ ∪ C₁
//! ∪ C₂ it processes chains in increasing id, adding every chain hanging off
//! the processed one as BG-paths — single chains directly, caterpillars as
//! batches — ordering the hard cases by interval overlaps along the
//! processed chain. A chain that cannot be ordered yields a separation
//! pair; a complete run yields a certificate of exactly m − n − 1 BG-paths.

mod overlap;

pub use overlap::{overlap_order, Interval, OverlapOutcome, BASE_OWNER};

use alloc::vec;
use alloc::vec::Vec;

use crate::chains::{classify, decompose, ChainDecomposition, ChainType, DecomposeError};
use crate::dfs::run_dfs;
use crate::graph::{verify_witness, Graph, NegativeWitness, VertexId};
use crate::oracle::{is_bg_path_naive, NaiveSubdivisionModel};
use crate::{internal, InternalError, UNSET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    SingleChain(u32),
    CaterpillarPart { caterpillar: u32, part: u32 },
}

/// One step of the construction sequence: a path whose endpoints lie in the
/// subdivision of its step and whose inner vertices do not.
#[derive(Debug, Clone)]
pub struct BgPath {
    pub step: u32,
    pub vertices: Vec<VertexId>,
    pub provenance: Provenance,
}

/// Positive certificate: the three S₃ chains plus the ordered BG-paths.
#[derive(Debug, Clone)]
pub struct ConstructionCertificate {
    pub n: u32,
    pub m: u32,
    pub s3: [Vec<VertexId>; 3],
    pub paths: Vec<BgPath>,
}

#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    ThreeConnected(ConstructionCertificate),
    NotThreeConnected(NegativeWitness),
}

impl CertifyOutcome {
    pub fn is_positive(&self) -> bool {
        matches!(self, CertifyOutcome::ThreeConnected(_))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EngineOptions {
    pub root: VertexId,
    /// Replay every emitted path against the naive subdivision model and
    /// check the R1/R2 restrictions at each modular checkpoint. Quadratic;
    /// meant for tests and small inputs.
    pub self_check: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EngineCounters {
    /// Vertices walked by segment-minimum searches.
    pub segment_walk_steps: u64,
    /// Classification work (chains typed + caterpillar unmarkings).
    pub classify_steps: u64,
}

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub outcome: CertifyOutcome,
    pub counters: EngineCounters,
}

/// A group of not-yet-added chains hanging off the processed chain,
/// identified by the minimal chain of its segment.
#[derive(Debug, Clone)]
pub struct SegmentView {
    pub minimal_chain: u32,
    /// Type-3 chains of the segment that start on the processed chain.
    pub type3_members: Vec<u32>,
    /// Attachment points as positions along the processed chain, sorted.
    pub attachment_positions: Vec<u32>,
    /// Hull of the attachment positions.
    pub dependent: (u32, u32),
}

/// Raised when some segments of a processed chain cannot be ordered: the
/// input is not 3-connected and a separation pair can be extracted.
#[derive(Debug, Clone)]
pub struct FailureInfo {
    pub chain: u32,
    pub segments: Vec<SegmentView>,
    pub comp_of: Vec<u32>,
    pub unreachable: Vec<u32>,
}

/// The evolving restricted subdivision S^R_l plus all engine scratch.
pub struct SubdivisionState<'a> {
    g: &'a Graph,
    dec: &'a ChainDecomposition,
    added: Vec<bool>,
    in_sub: Vec<bool>,
    sub_deg: Vec<u32>,
    /// Amortized marker: last known segment-minimal chain per vertex.
    seg_marker: Vec<u32>,
    /// Per vertex: type-3 chains starting there, drained on first scan.
    pending_t3: Vec<Vec<u32>>,
    /// Step counter; S₃ is step 3.
    l: u32,
    paths: Vec<BgPath>,
    walk_steps: u64,
    self_check: bool,
    pos: Vec<u32>,
    chain_stack: Vec<u32>,
    walk_buf: Vec<u32>,
}

/// Builds the initial state with S₃ = {C₀, C₁, C₂} added.
pub fn init_state<'a>(
    g: &'a Graph,
    dec: &'a ChainDecomposition,
    self_check: bool,
) -> SubdivisionState<'a> {
    let n = g.n() as usize;
    let z = dec.chains.len();
    let mut st = SubdivisionState {
        g,
        dec,
        added: vec![false; z],
        in_sub: vec![false; n],
        sub_deg: vec![0; n],
        seg_marker: vec![UNSET; n],
        pending_t3: vec![Vec::new(); n],
        l: 3,
        paths: Vec::new(),
        walk_steps: 0,
        self_check,
        pos: vec![UNSET; n],
        chain_stack: Vec::new(),
        walk_buf: Vec::new(),
    };
    for c in 0..3 {
        st.added[c] = true;
        let verts = &dec.chains[c].vertices;
        for w in verts.windows(2) {
            st.sub_deg[w[0] as usize] += 1;
            st.sub_deg[w[1] as usize] += 1;
        }
        for &v in verts {
            st.in_sub[v as usize] = true;
        }
    }
    for c in &dec.chains[1..] {
        if c.ctype.is_type3() {
            st.pending_t3[c.s() as usize].push(c.id);
        }
    }
    st
}

impl<'a> SubdivisionState<'a> {
    pub fn paths(&self) -> &[BgPath] {
        &self.paths
    }

    pub fn is_added(&self, chain: u32) -> bool {
        self.added[chain as usize]
    }

    pub fn real(&self, v: VertexId) -> bool {
        self.in_sub[v as usize] && self.sub_deg[v as usize] >= 3
    }

    pub fn real_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.g.n()).filter(move |&v| self.real(v))
    }

    pub fn counters(&self) -> EngineCounters {
        EngineCounters {
            segment_walk_steps: self.walk_steps,
            classify_steps: self.dec.classify_steps,
        }
    }

    fn commit_path(&mut self, vertices: Vec<VertexId>, prov: Provenance) -> Result<(), InternalError> {
        if self.self_check {
            let mut views: Vec<&[VertexId]> = Vec::with_capacity(3 + self.paths.len());
            for c in 0..3 {
                views.push(&self.dec.chains[c].vertices);
            }
            for p in &self.paths {
                views.push(&p.vertices);
            }
            let model = NaiveSubdivisionModel::build(self.g, &views);
            if !is_bg_path_naive(&model, self.g, &vertices) {
                return Err(internal!(
                    "path {vertices:?} failed the BG-path self-check at step {}",
                    self.l
                ));
            }
        }
        let x = vertices[0];
        let y = *vertices.last().unwrap();
        if !self.in_sub[x as usize] || !self.in_sub[y as usize] {
            return Err(internal!(
                "path {vertices:?} does not start and end in the subdivision"
            ));
        }
        for w in vertices.windows(2) {
            self.sub_deg[w[0] as usize] += 1;
            self.sub_deg[w[1] as usize] += 1;
        }
        for &v in &vertices {
            self.in_sub[v as usize] = true;
        }
        self.paths.push(BgPath {
            step: self.paths.len() as u32,
            vertices,
            provenance: prov,
        });
        self.l += 1;
        Ok(())
    }

    fn add_single_chain(&mut self, c: u32) -> Result<(), InternalError> {
        let chain = &self.dec.chains[c as usize];
        if !matches!(chain.ctype, ChainType::T1 | ChainType::T2a | ChainType::T3a) {
            return Err(internal!(
                "chain {c} of type {} added as a single chain",
                chain.ctype.as_str()
            ));
        }
        if self.added[c as usize] {
            return Err(internal!("chain {c} added twice"));
        }
        self.commit_path(chain.vertices.clone(), Provenance::SingleChain(c))?;
        self.added[c as usize] = true;
        self.checkpoint()
    }

    /// Good unless s(C_j) is a descendant of t(C_k) and the parent chain
    /// carries no inner real vertex strictly between s(C_k) and s(C_j).
    pub fn is_good_caterpillar(&self, cat: u32) -> bool {
        let cat = &self.dec.caterpillars[cat as usize];
        let cj = &self.dec.chains[cat.id as usize];
        let ck = &self.dec.chains[cat.parent as usize];
        if !self.dec.forest.is_ancestor(ck.t(), cj.s()) {
            return true;
        }
        let Some(pos) = ck.vertices.iter().position(|&v| v == cj.s()) else {
            return false;
        };
        ck.vertices[1..pos].iter().any(|&v| self.real(v))
    }

    /// Adds a whole caterpillar as a batch of member-count BG-paths.
    pub fn decompose_caterpillar(&mut self, cat_id: u32) -> Result<(), InternalError> {
        let cat = &self.dec.caterpillars[cat_id as usize];
        if !self.added[cat.parent as usize] {
            return Err(internal!(
                "caterpillar {cat_id} added before its parent chain"
            ));
        }
        if cat.members.iter().any(|&m| self.added[m as usize]) {
            return Err(internal!("caterpillar {cat_id} has an added member"));
        }
        if !self.is_good_caterpillar(cat_id) {
            return Err(internal!("caterpillar {cat_id} is bad at addition time"));
        }
        let members = cat.members.clone();
        let cj_id = cat.id;
        let ck_id = cat.parent;
        let cj = &self.dec.chains[cj_id as usize];
        let ck = &self.dec.chains[ck_id as usize];
        let t_j = cj.t();
        let y = self.dec.chains[*members.last().unwrap() as usize].t();
        let descendant = self.dec.forest.is_ancestor(ck.t(), cj.s());
        let prov = |part: u32| Provenance::CaterpillarPart {
            caterpillar: cat_id,
            part,
        };

        if !descendant {
            // First path: the 3b chain extended down the tree to y.
            debug_assert!(self.dec.forest.is_proper_ancestor(cj.s(), ck.t()));
            let mut first = cj.vertices.clone();
            self.push_tree_ascent(&mut first, t_j, y);
            self.commit_path(first, prov(0))?;
            self.added[cj_id as usize] = true;
            let mut prev_t = t_j;
            for (i, &mem) in members[1..].iter().enumerate() {
                let path = self.chain_prefix_through(mem, prev_t)?;
                prev_t = self.dec.chains[mem as usize].t();
                self.commit_path(path, prov(i as u32 + 1))?;
                self.added[mem as usize] = true;
            }
        } else {
            // Glue the 3b chain with its parent member, then restore
            // upwards-closedness with the tree path t(C_j) → y.
            let ch_id = members[1];
            debug_assert_eq!(Some(ch_id), cj.parent);
            let ch = &self.dec.chains[ch_id as usize];
            let cut = ch
                .vertices
                .iter()
                .position(|&v| v == t_j)
                .ok_or_else(|| internal!("t(C_j) not on the parent member"))?;
            let mut glue = cj.vertices.clone();
            glue.extend(ch.vertices[..cut].iter().rev());
            self.commit_path(glue, prov(0))?;
            self.added[cj_id as usize] = true;
            let mut ascent = vec![t_j];
            self.push_tree_ascent(&mut ascent, t_j, y);
            self.commit_path(ascent, prov(1))?;
            self.added[ch_id as usize] = true;
            let mut prev_t = ch.t();
            for (i, &mem) in members[2..].iter().enumerate() {
                let path = self.chain_prefix_through(mem, prev_t)?;
                prev_t = self.dec.chains[mem as usize].t();
                self.commit_path(path, prov(i as u32 + 2))?;
                self.added[mem as usize] = true;
            }
        }
        self.checkpoint()
    }

    /// Appends the tree path from `from` (exclusive) up to `to` (inclusive).
    fn push_tree_ascent(&self, out: &mut Vec<VertexId>, from: VertexId, to: VertexId) {
        debug_assert!(self.dec.forest.is_proper_ancestor(to, from));
        let mut cur = from;
        while cur != to {
            cur = self.dec.forest.parent[cur as usize];
            out.push(cur);
        }
    }

    /// The prefix of a chain from its start through `stop` (an inner vertex).
    fn chain_prefix_through(&self, chain: u32, stop: VertexId) -> Result<Vec<VertexId>, InternalError> {
        let verts = &self.dec.chains[chain as usize].vertices;
        let cut = verts
            .iter()
            .position(|&v| v == stop)
            .ok_or_else(|| internal!("vertex {stop} not on chain {chain}"))?;
        Ok(verts[..=cut].to_vec())
    }

    /// The minimal chain of the segment containing `c`: climbs the tree from
    /// t(c) until the next vertex lies in the subdivision, reusing and
    /// refreshing per-vertex markers so the total walk length amortizes.
    pub fn find_segment_min(&mut self, c: u32) -> u32 {
        let t = self.dec.chains[c as usize].t();
        if self.in_sub[t as usize] {
            return c;
        }
        let mut walk = core::mem::take(&mut self.walk_buf);
        walk.clear();
        let mut cur = t;
        let d = loop {
            self.walk_steps += 1;
            let mark = self.seg_marker[cur as usize];
            if mark != UNSET && !self.added[mark as usize] {
                break mark;
            }
            walk.push(cur);
            let p = self.dec.forest.parent[cur as usize];
            if self.in_sub[p as usize] {
                break self.dec.inner_chain_of[cur as usize];
            }
            cur = p;
        };
        for &v in &walk {
            self.seg_marker[v as usize] = d;
        }
        self.walk_buf = walk;
        debug_assert!(d != UNSET && !self.added[d as usize]);
        d
    }

    /// Adds `c` preceded by its not-yet-added ancestors in U, top-down.
    /// 2b/3b ancestors bring their whole caterpillar with them.
    fn add_with_ancestors(&mut self, c: u32) -> Result<(), InternalError> {
        if self.added[c as usize] {
            return Ok(());
        }
        let mut stack = core::mem::take(&mut self.chain_stack);
        stack.clear();
        let mut a = c;
        while !self.added[a as usize] {
            stack.push(a);
            a = self.dec.chains[a as usize]
                .parent
                .expect("C0 is always added");
        }
        let mut result = Ok(());
        for i in (0..stack.len()).rev() {
            let a = stack[i];
            if self.added[a as usize] {
                continue;
            }
            result = match self.dec.chains[a as usize].ctype {
                ChainType::T1 | ChainType::T2a | ChainType::T3a => self.add_single_chain(a),
                ChainType::T2b | ChainType::T3b => {
                    let cat = self.dec.chains[a as usize]
                        .caterpillar
                        .expect("2b/3b chains belong to a caterpillar");
                    self.decompose_caterpillar(cat)
                }
                ChainType::None => Err(internal!("C0 reached as an ancestor to add")),
            };
            if result.is_err() {
                break;
            }
        }
        self.chain_stack = stack;
        result
    }

    /// Processes one chain: adds everything in Children(Cᵢ) ∪ Type(Cᵢ), or
    /// reports the unorderable segments.
    pub fn process_chain(&mut self, ci: u32) -> Result<Option<FailureInfo>, InternalError> {
        if !self.added[ci as usize] {
            return Err(internal!("chain {ci} processed before being added"));
        }

        // (a) children of types 1/2 not yet added, and pending type-3
        // chains starting on this chain.
        let mut type_members: Vec<u32> = Vec::new();
        for vi in 0..self.dec.chains[ci as usize].vertices.len() {
            let v = self.dec.chains[ci as usize].vertices[vi];
            let pend = core::mem::take(&mut self.pending_t3[v as usize]);
            for id in pend {
                if !self.added[id as usize] {
                    type_members.push(id);
                }
            }
        }
        type_members.sort_unstable();

        // (b) type-3 chains whose segment minimum is not a child of Cᵢ can
        // go immediately, ancestors first.
        let mut leftovers: Vec<(u32, u32)> = Vec::new();
        for i in 0..type_members.len() {
            let cj = type_members[i];
            if self.added[cj as usize] {
                continue;
            }
            let d = self.find_segment_min(cj);
            debug_assert!(
                self.dec.chains[d as usize].parent != Some(ci)
                    || !self.dec.chains[d as usize].ctype.is_type3()
            );
            if self.dec.chains[d as usize].parent == Some(ci) {
                leftovers.push((d, cj));
            } else {
                self.add_with_ancestors(cj)?;
            }
        }

        // (c) remaining segments: one per unadded child. 2a children whose
        // terminal vertex is already real need no enabling overlap and go
        // first; everything else is ordered by the interval sweep.
        let mut segments: Vec<SegmentView> = Vec::new();
        let mut seg_of_child: Vec<(u32, u32)> = Vec::new(); // (chain, segment index)
        for idx in 0..self.dec.children[ci as usize].len() {
            let d = self.dec.children[ci as usize][idx];
            if self.added[d as usize] {
                continue;
            }
            let chain = &self.dec.chains[d as usize];
            debug_assert!(!chain.ctype.is_type3(), "type-3 children are added earlier");
            if chain.ctype == ChainType::T2a && self.real(chain.t()) {
                self.add_single_chain(d)?;
                continue;
            }
            seg_of_child.push((d, segments.len() as u32));
            segments.push(SegmentView {
                minimal_chain: d,
                type3_members: Vec::new(),
                attachment_positions: Vec::new(),
                dependent: (0, 0),
            });
        }
        for &(d, cj) in &leftovers {
            if self.added[cj as usize] {
                continue;
            }
            match seg_of_child.iter().find(|&&(c, _)| c == d) {
                Some(&(_, si)) => segments[si as usize].type3_members.push(cj),
                None => {
                    return Err(internal!(
                        "segment minimum {d} of chain {cj} vanished while processing {ci}"
                    ))
                }
            }
        }
        if segments.is_empty() {
            return Ok(None);
        }

        // Positions along Cᵢ.
        let verts = &self.dec.chains[ci as usize].vertices;
        for (i, &v) in verts.iter().enumerate() {
            self.pos[v as usize] = i as u32;
        }
        let mut intervals: Vec<Interval> = Vec::new();
        let reals: Vec<u32> = verts
            .iter()
            .enumerate()
            .filter(|&(_, &v)| self.real(v))
            .map(|(i, _)| i as u32)
            .collect();
        for j in 1..reals.len().saturating_sub(1) {
            intervals.push(Interval::new(reals[0], reals[j], BASE_OWNER));
            intervals.push(Interval::new(reals[j], *reals.last().unwrap(), BASE_OWNER));
        }
        let mut attach_err = None;
        for (si, seg) in segments.iter_mut().enumerate() {
            let d = &self.dec.chains[seg.minimal_chain as usize];
            let mut atts = vec![self.pos[d.s() as usize], self.pos[d.t() as usize]];
            for &mem in &seg.type3_members {
                atts.push(self.pos[self.dec.chains[mem as usize].s() as usize]);
            }
            if atts.iter().any(|&p| p == UNSET) {
                attach_err = Some(internal!(
                    "attachment point of segment {} off the processed chain {ci}",
                    seg.minimal_chain
                ));
                break;
            }
            atts.sort_unstable();
            atts.dedup();
            seg.dependent = (atts[0], *atts.last().unwrap());
            for j in 1..atts.len() {
                intervals.push(Interval::new(atts[0], atts[j], si as u32));
            }
            for j in 1..atts.len().saturating_sub(1) {
                intervals.push(Interval::new(atts[j], *atts.last().unwrap(), si as u32));
            }
            seg.attachment_positions = atts;
        }
        for &v in verts {
            self.pos[v as usize] = UNSET;
        }
        if let Some(e) = attach_err {
            return Err(e);
        }

        let outcome = overlap_order(
            &intervals,
            segments.len() as u32,
            (verts.len() - 1) as u32,
        );
        if !outcome.unreachable.is_empty() {
            return Ok(Some(FailureInfo {
                chain: ci,
                segments,
                comp_of: outcome.comp_of,
                unreachable: outcome.unreachable,
            }));
        }
        for &si in &outcome.order {
            let seg = &segments[si as usize];
            let members = seg.type3_members.clone();
            let min = seg.minimal_chain;
            for &mem in &members {
                self.add_with_ancestors(mem)?;
            }
            if !self.added[min as usize] {
                self.add_with_ancestors(min)?;
            }
        }
        debug_assert!(self.dec.children[ci as usize]
            .iter()
            .all(|&c| self.added[c as usize]));
        Ok(None)
    }

    /// The two extremal attachment points of the overlap component around
    /// the stuck segment form a separation pair; it is verified by deletion
    /// before being returned.
    pub fn extract_separation_pair(
        &self,
        fail: &FailureInfo,
    ) -> Result<NegativeWitness, InternalError> {
        let stuck = fail.unreachable[0];
        let comp = fail.comp_of[stuck as usize];
        let mut lo = u32::MAX;
        let mut hi = 0;
        for (i, seg) in fail.segments.iter().enumerate() {
            if fail.comp_of[i] == comp {
                lo = lo.min(seg.dependent.0);
                hi = hi.max(seg.dependent.1);
            }
        }
        let verts = &self.dec.chains[fail.chain as usize].vertices;
        let w = NegativeWitness::SeparationPair(verts[lo as usize], verts[hi as usize]);
        match verify_witness(self.g, &w) {
            Ok(true) => Ok(w),
            _ => Err(internal!(
                "extracted separation pair {w:?} failed verification"
            )),
        }
    }

    /// Modular-checkpoint invariants, active in self-check mode only: the
    /// subdivision is upwards-closed and a union of chains, and no tree-only
    /// link has a parallel link (C₀ in S₃ excepted).
    fn checkpoint(&self) -> Result<(), InternalError> {
        if !self.self_check {
            return Ok(());
        }
        let f = &self.dec.forest;
        let mut edge_in_sub = vec![false; self.g.m() as usize];
        let mut chain_edges = 0usize;
        for (c, added) in self.added.iter().enumerate() {
            if !added {
                continue;
            }
            for w in self.dec.chains[c].vertices.windows(2) {
                let e = self
                    .g
                    .find_edge(w[0], w[1])
                    .ok_or_else(|| internal!("chain edge missing from graph"))?;
                edge_in_sub[e as usize] = true;
                chain_edges += 1;
            }
        }
        let path_edges: usize = 3 + self.paths.len() + self.dec.chains[..3]
            .iter()
            .map(|c| c.vertices.len())
            .sum::<usize>()
            + self.paths.iter().map(|p| p.vertices.len()).sum::<usize>()
            - 3
            - self.paths.len()
            - 3
            - self.paths.len();
        let _ = path_edges; // edge counting below is authoritative
        let mut committed = 0usize;
        for c in 0..3 {
            committed += self.dec.chains[c].vertices.len() - 1;
        }
        for p in &self.paths {
            committed += p.vertices.len() - 1;
        }
        if committed != chain_edges {
            return Err(internal!(
                "modularity violated: {committed} committed edges vs {chain_edges} chain edges"
            ));
        }
        for v in 0..self.g.n() {
            if self.in_sub[v as usize] && v != f.root {
                let pe = f.parent_edge[v as usize];
                if !edge_in_sub[pe as usize] {
                    return Err(internal!(
                        "upwards-closedness violated at vertex {v}"
                    ));
                }
            }
        }
        if self.l > 3 {
            let mut views: Vec<&[VertexId]> = Vec::new();
            for c in 0..3 {
                views.push(&self.dec.chains[c].vertices);
            }
            for p in &self.paths {
                views.push(&p.vertices);
            }
            let model = NaiveSubdivisionModel::build(self.g, &views);
            let mut pairs: Vec<((u32, u32), bool)> = Vec::new();
            for link in &model.links {
                let a = link[0].min(*link.last().unwrap());
                let b = link[0].max(*link.last().unwrap());
                let tree_only = link.windows(2).all(|w| {
                    let e = self.g.find_edge(w[0], w[1]).unwrap();
                    matches!(f.class[e as usize], crate::dfs::EdgeClass::Tree)
                });
                pairs.push(((a, b), tree_only));
            }
            pairs.sort_unstable();
            for i in 0..pairs.len() {
                let ((a, b), tree_only) = pairs[i];
                if !tree_only {
                    continue;
                }
                let parallel = (i > 0 && pairs[i - 1].0 == (a, b))
                    || (i + 1 < pairs.len() && pairs[i + 1].0 == (a, b));
                if parallel {
                    return Err(internal!(
                        "R2 violated: tree-only link {a}-{b} has a parallel link at step {}",
                        self.l
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Full pipeline with options and counters.
pub fn certify_with(g: &Graph, opts: EngineOptions) -> Result<CertifyReport, InternalError> {
    let negative = |w: NegativeWitness, counters: EngineCounters| -> Result<CertifyReport, InternalError> {
        match verify_witness(g, &w) {
            Ok(true) => Ok(CertifyReport {
                outcome: CertifyOutcome::NotThreeConnected(w),
                counters,
            }),
            _ => Err(internal!("witness {w:?} failed self-verification")),
        }
    };
    let none = EngineCounters::default();
    if let Some(w) = crate::graph::precheck(g) {
        return negative(w, none);
    }
    let forest = match run_dfs(g, opts.root) {
        Ok(f) => f,
        Err(w) => return negative(w, none),
    };
    let mut dec = match decompose(g, forest) {
        Ok(d) => d,
        Err(DecomposeError::Witness(w)) => return negative(w, none),
        Err(DecomposeError::Internal(e)) => return Err(e),
    };
    classify(&mut dec);
    let mut st = init_state(g, &dec, opts.self_check);
    for ci in 0..dec.chains.len() as u32 {
        if let Some(fail) = st.process_chain(ci)? {
            let w = st.extract_separation_pair(&fail)?;
            let counters = st.counters();
            return negative(w, counters);
        }
    }
    if let Some(missing) = (0..dec.chains.len()).find(|&c| !st.is_added(c as u32)) {
        return Err(internal!("chain {missing} never added"));
    }
    let expected = (g.m() - g.n() - 1) as usize;
    if st.paths().len() != expected {
        return Err(internal!(
            "certificate has {} paths, expected m - n - 1 = {expected}",
            st.paths().len()
        ));
    }
    let counters = st.counters();
    let cert = ConstructionCertificate {
        n: g.n(),
        m: g.m(),
        s3: [
            dec.chains[0].vertices.clone(),
            dec.chains[1].vertices.clone(),
            dec.chains[2].vertices.clone(),
        ],
        paths: st.paths.clone(),
    };
    Ok(CertifyReport {
        outcome: CertifyOutcome::ThreeConnected(cert),
        counters,
    })
}

/// Certifying 3-connectivity test: a construction certificate or a verified
/// negative witness.
pub fn certify(g: &Graph) -> Result<CertifyOutcome, InternalError> {
    certify_with(g, EngineOptions::default()).map(|r| r.outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

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

    fn checked(g: &Graph) -> CertifyOutcome {
        certify_with(
            g,
            EngineOptions {
                root: 0,
                self_check: true,
            },
        )
        .unwrap()
        .outcome
    }

    #[test]
    fn k4_certificate() {
        match checked(&k4()) {
            CertifyOutcome::ThreeConnected(cert) => {
                assert_eq!(cert.paths.len(), 1); // m - n - 1
                assert_eq!(cert.paths[0].vertices, vec![1, 3]);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn init_state_shape() {
        let g = k4();
        let f = run_dfs(&g, 0).unwrap();
        let mut dec = decompose(&g, f).unwrap();
        classify(&mut dec);
        let st = init_state(&g, &dec, false);
        assert!((0..3).all(|c| st.is_added(c)));
        assert!(!st.is_added(3));
        let reals: Vec<u32> = st.real_vertices().collect();
        assert_eq!(reals, vec![0, 2]);
        assert_eq!(st.sub_deg[0], 3);
    }

    #[test]
    fn k4_segment_min_is_self() {
        let g = k4();
        let f = run_dfs(&g, 0).unwrap();
        let mut dec = decompose(&g, f).unwrap();
        classify(&mut dec);
        let mut st = init_state(&g, &dec, false);
        assert_eq!(st.find_segment_min(3), 3);
        // idempotent, no re-walk needed
        let steps = st.counters().segment_walk_steps;
        assert_eq!(st.find_segment_min(3), 3);
        assert_eq!(st.counters().segment_walk_steps, steps);
    }

    #[test]
    fn w5_certificate_uses_a_caterpillar() {
        match checked(&w5()) {
            CertifyOutcome::ThreeConnected(cert) => {
                assert_eq!(cert.paths.len(), 3); // 10 - 6 - 1
                assert!(cert
                    .paths
                    .iter()
                    .any(|p| matches!(p.provenance, Provenance::CaterpillarPart { .. })));
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn glued_k4_yields_the_shared_pair() {
        match checked(&glued_k4()) {
            CertifyOutcome::NotThreeConnected(NegativeWitness::SeparationPair(u, v)) => {
                assert_eq!((u.min(v), u.max(v)), (2, 3));
            }
            other => panic!("expected separation pair, got {other:?}"),
        }
    }

    #[test]
    fn c4_low_degree() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        match checked(&g) {
            CertifyOutcome::NotThreeConnected(NegativeWitness::LowDegree(_)) => {}
            other => panic!("expected low degree, got {other:?}"),
        }
    }

    #[test]
    fn k5_has_four_paths() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        let g = Graph::new(5, &edges).unwrap();
        match checked(&g) {
            CertifyOutcome::ThreeConnected(cert) => assert_eq!(cert.paths.len(), 4),
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn random_graphs_match_brute_oracle() {
        for seed in 0..60u64 {
            let g = oracle::gen_random_3connected((seed % 4) as u32, seed);
            let out = checked(&g);
            assert!(out.is_positive(), "generator output rejected, seed {seed}");
            let planted = oracle::plant_separation_pair(&g, seed);
            let out = checked(&planted);
            match out {
                CertifyOutcome::NotThreeConnected(w) => {
                    assert_eq!(verify_witness(&planted, &w), Ok(true));
                }
                CertifyOutcome::ThreeConnected(_) => {
                    panic!("planted pair not detected, seed {seed}")
                }
            }
        }
    }

    #[test]
    fn certificates_cover_every_edge_once() {
        for seed in 0..30u64 {
            let g = oracle::gen_random_3connected(5, seed);
            let CertifyOutcome::ThreeConnected(cert) = checked(&g) else {
                panic!("rejected");
            };
            let mut count = vec![0u32; g.m() as usize];
            for view in cert.s3.iter().chain(cert.paths.iter().map(|p| &p.vertices)) {
                for w in view.windows(2) {
                    count[g.find_edge(w[0], w[1]).unwrap() as usize] += 1;
                }
            }
            assert!(count.iter().all(|&c| c == 1));
        }
    }
}
