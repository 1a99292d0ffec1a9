//! Connected components of the interval overlap graph by one left-to-right
//! sweep, plus a discovery order from the BASE intervals.
//!
//! Two intervals [a,b] and [c,d] overlap iff a < c < b < d or c < a < d < b
//! (strict crossing; nesting and shared endpoints do not count). The sweep
//! keeps a stack of open components. When an interval J ends, the components
//! stacked strictly above J's are exactly those whose still-open members
//! cross J: they are merged into J's slot, recording one true crossing pair
//! per merge. A breadth-first search over the recorded pairs then yields an
//! order in which every newly reached segment crosses BASE or an
//! earlier-reached segment.

use alloc::vec;
use alloc::vec::Vec;

use crate::UNSET;

/// Owner id of the intervals derived from the processed chain itself.
pub const BASE_OWNER: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: u32,
    pub hi: u32,
    /// Segment index, or [`BASE_OWNER`].
    pub owner: u32,
}

impl Interval {
    pub fn new(lo: u32, hi: u32, owner: u32) -> Interval {
        debug_assert!(lo < hi);
        Interval { lo, hi, owner }
    }
}

#[derive(Debug, Clone)]
pub struct OverlapOutcome {
    /// Segment ids reachable from BASE, in a valid discovery order.
    pub order: Vec<u32>,
    /// Segment ids not reachable from BASE, ascending.
    pub unreachable: Vec<u32>,
    /// Per segment: overlap-graph component label (shared label = same
    /// component; BASE's component carries the label of its representative).
    pub comp_of: Vec<u32>,
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let gp = self.parent[self.parent[a as usize] as usize];
            self.parent[a as usize] = gp;
            a = gp;
        }
        a
    }

    /// Attaches a's root under b's root; b's root survives.
    fn union_into(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Computes components and discovery order. `seg_count` is the number of
/// segment owners; `max_pos` bounds every interval endpoint.
pub fn overlap_order(intervals: &[Interval], seg_count: u32, max_pos: u32) -> OverlapOutcome {
    let t = intervals.len();
    let node_of = |owner: u32| if owner == BASE_OWNER { seg_count } else { owner };

    // Event buckets by position; same-lo batches are pushed in descending
    // hi so that, among equal los, longer intervals sit deeper.
    let mut starts_at: Vec<Vec<u32>> = vec![Vec::new(); max_pos as usize + 1];
    let mut ends_at: Vec<Vec<u32>> = vec![Vec::new(); max_pos as usize + 1];
    for (i, iv) in intervals.iter().enumerate() {
        debug_assert!(iv.lo < iv.hi && iv.hi <= max_pos);
        starts_at[iv.lo as usize].push(i as u32);
        ends_at[iv.hi as usize].push(i as u32);
    }
    for bucket in &mut starts_at {
        bucket.sort_unstable_by(|&a, &b| {
            intervals[b as usize]
                .hi
                .cmp(&intervals[a as usize].hi)
                .then(a.cmp(&b))
        });
    }

    let mut owner_dsu = Dsu::new(seg_count as usize + 1);
    let mut edges: Vec<(u32, u32)> = Vec::new();

    // Stack of entries; merged entries share a representative through
    // `entry_dsu` and occupy a single slot.
    let mut entry_dsu = Dsu::new(t);
    let mut entry_of: Vec<u32> = vec![UNSET; t];
    let mut seq: Vec<u32> = vec![UNSET; t];
    let mut open: Vec<u32> = vec![0; t];
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); t];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_seq = 0u32;

    for p in 0..=max_pos {
        let mut ending = core::mem::take(&mut ends_at[p as usize]);
        // Latest-pushed first, so every entry above the current one holds
        // only strictly larger los by the time it is inspected.
        ending.sort_unstable_by(|&a, &b| seq[b as usize].cmp(&seq[a as usize]));
        for j in ending {
            let ej = entry_dsu.find(entry_of[j as usize]);
            debug_assert!(open[ej as usize] > 0);
            open[ej as usize] -= 1;
            loop {
                let top = entry_dsu.find(*stack.last().expect("entry of open interval on stack"));
                if top == ej {
                    break;
                }
                stack.pop();
                if open[top as usize] == 0 {
                    continue; // only closed members: no crossing with j
                }
                // Some member of this component is still open; it was pushed
                // after j with a strictly larger lo and ends after p, so it
                // crosses j.
                while let Some(&c) = members[top as usize].last() {
                    if intervals[c as usize].hi <= p {
                        members[top as usize].pop();
                    } else {
                        break;
                    }
                }
                let c = *members[top as usize]
                    .last()
                    .expect("component with open count has an open member");
                let a = node_of(intervals[j as usize].owner);
                let b = node_of(intervals[c as usize].owner);
                if owner_dsu.find(a) != owner_dsu.find(b) {
                    owner_dsu.union_into(a, b);
                    edges.push((a, b));
                }
                entry_dsu.union_into(top, ej);
                open[ej as usize] += open[top as usize];
                let moved = core::mem::take(&mut members[top as usize]);
                members[ej as usize].extend(moved);
            }
            if open[ej as usize] == 0 {
                stack.pop();
            }
        }
        for j in core::mem::take(&mut starts_at[p as usize]) {
            entry_of[j as usize] = j;
            seq[j as usize] = next_seq;
            next_seq += 1;
            open[j as usize] = 1;
            members[j as usize] = vec![j];
            stack.push(j);
        }
    }
    debug_assert!(stack.is_empty());

    // Discovery order: BFS from the BASE node over the recorded crossings.
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); seg_count as usize + 1];
    for &(a, b) in &edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut reached = vec![false; seg_count as usize + 1];
    let mut order = Vec::new();
    let mut queue = alloc::collections::VecDeque::new();
    reached[seg_count as usize] = true;
    queue.push_back(seg_count);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if !reached[w as usize] {
                reached[w as usize] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let unreachable: Vec<u32> = (0..seg_count).filter(|&s| !reached[s as usize]).collect();
    let comp_of: Vec<u32> = (0..seg_count).map(|s| owner_dsu.find(s)).collect();
    OverlapOutcome {
        order,
        unreachable,
        comp_of,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(ivs: &[(u32, u32, u32)], segs: u32) -> OverlapOutcome {
        let intervals: Vec<Interval> = ivs
            .iter()
            .map(|&(lo, hi, owner)| Interval::new(lo, hi, owner))
            .collect();
        let max = intervals.iter().map(|i| i.hi).max().unwrap_or(0);
        overlap_order(&intervals, segs, max)
    }

    #[test]
    fn strict_overlap_reaches() {
        let out = run(&[(1, 3, BASE_OWNER), (2, 4, 0), (5, 6, 1)], 2);
        assert_eq!(out.order, vec![0]);
        assert_eq!(out.unreachable, vec![1]);
    }

    #[test]
    fn nesting_is_not_overlap() {
        let out = run(&[(1, 4, BASE_OWNER), (2, 3, 0)], 1);
        assert!(out.order.is_empty());
        assert_eq!(out.unreachable, vec![0]);
    }

    #[test]
    fn chained_discovery_order() {
        let out = run(&[(1, 3, BASE_OWNER), (2, 5, 0), (4, 6, 1)], 2);
        assert_eq!(out.order, vec![0, 1]);
        assert!(out.unreachable.is_empty());
    }

    #[test]
    fn shared_endpoints_do_not_cross() {
        // [1,3] and [1,5] share lo; [2,5] and [1,5] share hi.
        let out = run(&[(1, 3, BASE_OWNER), (1, 5, 0), (3, 6, 1)], 2);
        // [1,5] x [3,6]: 1<3<5<6 crosses; [1,3] x [1,5] no; [1,3] x [3,6] no.
        assert_eq!(out.order, Vec::<u32>::new());
        assert_eq!(out.unreachable, vec![0, 1]);
        assert_eq!(out.comp_of[0], out.comp_of[1]);
    }

    /// Brute-force reference: build the overlap graph explicitly and BFS.
    fn brute(ivs: &[(u32, u32, u32)], segs: u32) -> (Vec<bool>, Vec<Vec<bool>>) {
        let n = ivs.len();
        let cross = |a: (u32, u32, u32), b: (u32, u32, u32)| {
            (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
        };
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && cross(ivs[i], ivs[j]) {
                    adj[i][j] = true;
                }
            }
        }
        // reach from any BASE interval
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&i| ivs[i].2 == BASE_OWNER).collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if adj[v][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let mut reachable = vec![false; segs as usize];
        for i in 0..n {
            if seen[i] && ivs[i].2 != BASE_OWNER {
                reachable[ivs[i].2 as usize] = true;
            }
        }
        (reachable, adj)
    }

    #[test]
    fn matches_brute_force_on_random_inputs() {
        let mut rng = crate::oracle::SplitMix64::new(0xC0FFEE);
        for _ in 0..500 {
            let segs = 1 + rng.below(5) as u32;
            let count = 1 + rng.below(12) as usize;
            let mut ivs = Vec::new();
            for i in 0..count {
                let lo = rng.below(12) as u32;
                let hi = lo + 1 + rng.below(6) as u32;
                let owner = if i == 0 || rng.below(3) == 0 {
                    BASE_OWNER
                } else {
                    rng.below(segs as u64) as u32
                };
                ivs.push((lo, hi, owner));
            }
            let out = run(&ivs, segs);
            let (brute_reach, _) = brute(&ivs, segs);
            let mut fast_reach = vec![false; segs as usize];
            for &s in &out.order {
                fast_reach[s as usize] = true;
            }
            // Segments with no intervals at all are unreachable either way.
            assert_eq!(fast_reach, brute_reach, "intervals {ivs:?}");
            for &s in &out.unreachable {
                assert!(!brute_reach[s as usize]);
            }
            // The order is a valid discovery order: every reached segment
            // crosses BASE or an earlier segment.
            let cross = |a: (u32, u32, u32), b: (u32, u32, u32)| {
                (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
            };
            let mut reached_owner = vec![false; segs as usize + 1];
            reached_owner[segs as usize] = true;
            for &s in &out.order {
                let ok = ivs.iter().any(|&a| {
                    a.2 == s
                        && ivs.iter().any(|&b| {
                            let bo = if b.2 == BASE_OWNER { segs } else { b.2 };
                            reached_owner[bo as usize] && cross(a, b)
                        })
                });
                assert!(ok, "segment {s} reached without a crossing: {ivs:?}");
                reached_owner[s as usize] = true;
            }
        }
    }
}
