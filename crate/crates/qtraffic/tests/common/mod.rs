//! Shared test oracles: exhaustive minimum-teleport search by dynamic
//! programming over all capacity- and co-location-valid per-slice
//! assignments, independent of the mapper's search.

// Not every test binary uses every oracle.
#![allow(dead_code)]

use qtraffic::circuit::{slice, Circuit, SlicedCircuit};
use qtraffic::mapper::Architecture;

/// All qubit-to-core maps respecting capacity and co-locating every pair.
fn valid_maps(
    n: usize,
    cores: usize,
    capacity: usize,
    pairs: &[(usize, usize)],
) -> Vec<Vec<usize>> {
    // Per-slice pairs are disjoint, so each qubit has at most one partner.
    let mut partner_below = vec![None; n];
    for &(a, b) in pairs {
        partner_below[b.max(a)] = Some(a.min(b));
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    let mut occupancy = vec![0usize; cores];
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        q: usize,
        n: usize,
        cores: usize,
        capacity: usize,
        partner_below: &[Option<usize>],
        current: &mut Vec<usize>,
        occupancy: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if q == n {
            out.push(current.clone());
            return;
        }
        if let Some(p) = partner_below[q] {
            let c = current[p];
            if occupancy[c] < capacity {
                current[q] = c;
                occupancy[c] += 1;
                recurse(q + 1, n, cores, capacity, partner_below, current, occupancy, out);
                occupancy[c] -= 1;
            }
            return;
        }
        for c in 0..cores {
            if occupancy[c] < capacity {
                current[q] = c;
                occupancy[c] += 1;
                recurse(q + 1, n, cores, capacity, partner_below, current, occupancy, out);
                occupancy[c] -= 1;
            }
        }
    }
    recurse(
        0,
        n,
        cores,
        capacity,
        &partner_below,
        &mut current,
        &mut occupancy,
        &mut out,
    );
    out
}

fn movement_count(a: &[usize], b: &[usize]) -> u64 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}

/// Exhaustive minimum total teleport count over every valid assignment
/// sequence, starting from the identity fill. `None` when some slice has no
/// valid assignment at all.
pub fn brute_force_min_teleports(sliced: &SlicedCircuit, arch: &Architecture) -> Option<u64> {
    let n = sliced.width();
    if sliced.depth() == 0 {
        return Some(0);
    }
    let identity = arch.identity_fill(n);
    let mut maps = valid_maps(n, arch.cores(), arch.capacity(), sliced.pairs(0));
    if maps.is_empty() {
        return None;
    }
    let mut dist: Vec<u64> = maps.iter().map(|m| movement_count(&identity, m)).collect();
    for t in 1..sliced.depth() {
        let next_maps = valid_maps(n, arch.cores(), arch.capacity(), sliced.pairs(t));
        if next_maps.is_empty() {
            return None;
        }
        let mut next_dist = vec![u64::MAX; next_maps.len()];
        for (j, m2) in next_maps.iter().enumerate() {
            let mut best = u64::MAX;
            for (i, m1) in maps.iter().enumerate() {
                let d = dist[i] + movement_count(m1, m2);
                if d < best {
                    best = d;
                }
            }
            next_dist[j] = best;
        }
        maps = next_maps;
        dist = next_dist;
    }
    dist.into_iter().min()
}

/// True when every two-qubit gate already sits inside one identity-fill
/// core, which makes zero teleports attainable.
pub fn separable_under_identity_fill(sliced: &SlicedCircuit, arch: &Architecture) -> bool {
    let identity = arch.identity_fill(sliced.width());
    (0..sliced.depth()).all(|t| {
        sliced
            .pairs(t)
            .iter()
            .all(|&(a, b)| identity[a] == identity[b])
    })
}

/// Keep only the gates of the first `max_depth` timeslices.
pub fn truncate_to_depth(circuit: &Circuit, max_depth: usize) -> Circuit {
    let sliced = slice(circuit);
    let mut out = Circuit::new(circuit.name().to_string(), circuit.width());
    for ts in sliced.slices().iter().take(max_depth) {
        for gate in &ts.gates {
            out.push(*gate).expect("gates stay in range");
        }
    }
    out
}
