//! Per-slice core assignment by repair-driven local search.
//!
//! The search starts from the previous slice's map and restores the hard
//! co-location constraints with pairwise exchanges: for every violated
//! must-link group it evaluates candidate host cores, brings the members in
//! through free slots or evictions, and commits the candidate with the best
//! `(violations repaired, lookahead cut-weight reduction)` gain. Ties break
//! on the lower core index, then the lower qubit index. Qubits without
//! violated constraints are never moved, so a slice whose pairs are already
//! co-located maps to the previous assignment unchanged.

use crate::error::{Error, Result};
use crate::mapper::lookahead::LookaheadGraph;
use crate::mapper::Architecture;

/// Union-find over must-link pairs.
fn components(n: usize, must_links: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in must_links {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for q in 0..n {
        let root = find(&mut parent, q);
        groups[root].push(q);
    }
    groups.retain(|g| g.len() > 1);
    groups
}

/// Assignment state under mutation, with incremental gain evaluation.
#[derive(Clone)]
struct SearchState<'a> {
    assign: Vec<usize>,
    occupancy: Vec<usize>,
    /// Sorted member list per core.
    members: Vec<Vec<usize>>,
    adj: &'a [Vec<(usize, f64)>],
    partners: &'a [Vec<usize>],
}

impl<'a> SearchState<'a> {
    fn new(
        prev: &[usize],
        cores: usize,
        adj: &'a [Vec<(usize, f64)>],
        partners: &'a [Vec<usize>],
    ) -> SearchState<'a> {
        let mut occupancy = vec![0usize; cores];
        let mut members = vec![Vec::new(); cores];
        for (q, &c) in prev.iter().enumerate() {
            occupancy[c] += 1;
            members[c].push(q);
        }
        SearchState {
            assign: prev.to_vec(),
            occupancy,
            members,
            adj,
            partners,
        }
    }

    /// Cut-weight decrease if `q` moves to core `to`.
    fn cut_gain(&self, q: usize, to: usize) -> f64 {
        let from = self.assign[q];
        let mut gain = 0.0;
        for &(x, w) in &self.adj[q] {
            if self.assign[x] == to {
                gain += w;
            } else if self.assign[x] == from {
                gain -= w;
            }
        }
        gain
    }

    /// Must-link violation decrease if `q` moves to core `to`.
    fn violation_gain(&self, q: usize, to: usize) -> i64 {
        let from = self.assign[q];
        let mut gain = 0i64;
        for &p in &self.partners[q] {
            if self.assign[p] == from {
                gain -= 1;
            } else if self.assign[p] == to {
                gain += 1;
            }
        }
        gain
    }

    fn apply(&mut self, q: usize, to: usize) {
        let from = self.assign[q];
        self.assign[q] = to;
        self.occupancy[from] -= 1;
        self.occupancy[to] += 1;
        if let Ok(pos) = self.members[from].binary_search(&q) {
            self.members[from].remove(pos);
        }
        if let Err(pos) = self.members[to].binary_search(&q) {
            self.members[to].insert(pos, q);
        }
    }

    fn violated(&self, pair: (usize, usize)) -> bool {
        self.assign[pair.0] != self.assign[pair.1]
    }
}

#[derive(Clone)]
struct Plan {
    moves: Vec<(usize, usize)>,
    violation_gain: i64,
    cut_gain: f64,
    target: usize,
}

/// Try to co-locate `group` in core `target`, evicting unlocked outsiders
/// when the core is full. Returns the move list with its compound gain, or
/// `None` when the core cannot absorb the group.
fn plan_for_target(
    state: &SearchState,
    group: &[usize],
    target: usize,
    capacity: usize,
    locked: &[bool],
) -> Option<Plan> {
    let mut scratch = state.clone();
    let mut moves = Vec::new();
    let mut violation_gain = 0i64;
    let mut cut_gain = 0.0;

    for &m in group {
        if scratch.assign[m] == target {
            continue;
        }
        let src = scratch.assign[m];
        if scratch.occupancy[target] < capacity {
            violation_gain += scratch.violation_gain(m, target);
            cut_gain += scratch.cut_gain(m, target);
            scratch.apply(m, target);
            moves.push((m, target));
            continue;
        }
        // Full core: pick the eviction by the compound gain of the swap,
        // so a departing member's weights do not flatter its replacement.
        let candidates: Vec<usize> = scratch.members[target]
            .iter()
            .copied()
            .filter(|x| !locked[*x] && !group.contains(x))
            .collect();
        let mut best: Option<(i64, f64, usize)> = None;
        for x in candidates {
            let mut dv = scratch.violation_gain(x, src);
            let mut dc = scratch.cut_gain(x, src);
            scratch.apply(x, src);
            dv += scratch.violation_gain(m, target);
            dc += scratch.cut_gain(m, target);
            scratch.apply(x, target);
            let better = match best {
                None => true,
                Some((bv, bc, bx)) => (dv, dc) > (bv, bc) || ((dv, dc) == (bv, bc) && x < bx),
            };
            if better {
                best = Some((dv, dc, x));
            }
        }
        let (dv, dc, x) = best?;
        violation_gain += dv;
        cut_gain += dc;
        scratch.apply(x, src);
        scratch.apply(m, target);
        moves.push((x, src));
        moves.push((m, target));
    }

    Some(Plan {
        moves,
        violation_gain,
        cut_gain,
        target,
    })
}

/// Capacity- and must-link-respecting core map for one slice, seeded from
/// the previous slice's map.
///
/// Errors when a must-link component exceeds the core capacity, or when the
/// co-location groups cannot be packed into the cores at all. The error
/// reports slice 0; the caller rewrites the index.
pub fn partition_slice(
    prev: &[usize],
    graph: &LookaheadGraph,
    arch: &Architecture,
) -> Result<Vec<usize>> {
    let n = prev.len();
    let cores = arch.cores();
    let capacity = arch.capacity();

    let groups = components(n, graph.must_links());
    for group in &groups {
        if group.len() > capacity {
            return Err(infeasible(format!(
                "must-link component {group:?} has {} qubits but cores hold {capacity}",
                group.len()
            )));
        }
    }
    if groups.iter().all(|g| g.len() <= 2) {
        let pairs = groups.len();
        if pairs > cores * (capacity / 2) {
            return Err(infeasible(format!(
                "{pairs} co-location pairs exceed the {} pair slots of {cores} cores \
                 of capacity {capacity}",
                cores * (capacity / 2)
            )));
        }
    }

    let adj = graph.adjacency(n);
    let mut partners = vec![Vec::new(); n];
    for &(a, b) in graph.must_links() {
        partners[a].push(b);
        partners[b].push(a);
    }

    let mut state = SearchState::new(prev, cores, &adj, &partners);
    let mut locked = vec![false; n];

    while let Some(group) = groups
        .iter()
        .find(|g| g.windows(2).any(|w| state.assign[w[0]] != state.assign[w[1]]))
    {
        // Prefer the cores that already host members; fall back to any core.
        let mut targets: Vec<usize> = group.iter().map(|&m| state.assign[m]).collect();
        targets.sort_unstable();
        targets.dedup();
        for c in 0..cores {
            if !targets.contains(&c) {
                targets.push(c);
            }
        }

        let mut best: Option<Plan> = None;
        for &target in &targets {
            if let Some(plan) = plan_for_target(&state, group, target, capacity, &locked) {
                let better = match &best {
                    None => true,
                    Some(b) => {
                        (plan.violation_gain, plan.cut_gain) > (b.violation_gain, b.cut_gain)
                            || ((plan.violation_gain, plan.cut_gain)
                                == (b.violation_gain, b.cut_gain)
                                && plan.target < b.target)
                    }
                };
                if better {
                    best = Some(plan);
                }
            }
        }

        let Some(plan) = best else {
            return Err(infeasible(format!(
                "cannot co-locate component {group:?}: every core is pinned full"
            )));
        };
        for &(q, to) in &plan.moves {
            state.apply(q, to);
        }
        for &m in group {
            locked[m] = true;
        }
    }

    debug_assert!(graph.must_links().iter().all(|&p| !state.violated(p)));
    Ok(state.assign)
}

fn infeasible(detail: String) -> Error {
    Error::Infeasible { slice: 0, detail }
}
