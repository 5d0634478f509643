//! Lookahead-weighted interaction graphs.
//!
//! For a slice `t`, the weight of a qubit pair is the decay-weighted count of
//! its two-qubit interactions from `t` onward: `sum over m >= t of
//! sigma^(m - t)` for each slice `m` where the pair interacts. Pairs that
//! interact in slice `t` itself are additionally must-link: they have to end
//! up in the same core, not merely preferably so.

use std::collections::BTreeMap;

use crate::circuit::SlicedCircuit;

/// Terms smaller than this contribute nothing at the precision the mapper
/// works at; scanning stops once the decay factor falls below it. With
/// sigma = 1 the factor never decays and the scan covers every remaining
/// slice, which keeps the degenerate geometric sum exact.
const DECAY_CUTOFF: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct LookaheadGraph {
    /// Decay-weighted pair weights, keyed by normalized `(min, max)` pairs.
    weights: BTreeMap<(usize, usize), f64>,
    /// Pairs interacting in the slice itself; hard co-location constraints.
    must_links: Vec<(usize, usize)>,
}

impl LookaheadGraph {
    pub fn weights(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.weights
    }

    pub fn must_links(&self) -> &[(usize, usize)] {
        &self.must_links
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Per-qubit adjacency `(neighbor, weight)` lists for gain evaluation.
    pub fn adjacency(&self, n: usize) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); n];
        for (&(i, j), &w) in &self.weights {
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        adj
    }

    /// Build a graph directly from weighted pairs and must-links. Intended
    /// for tests and callers that construct constraint sets by hand.
    pub fn from_parts(
        weights: BTreeMap<(usize, usize), f64>,
        must_links: Vec<(usize, usize)>,
    ) -> LookaheadGraph {
        LookaheadGraph {
            weights,
            must_links,
        }
    }
}

/// Weighted interaction graph seen from slice `t` with decay `sigma`
/// (`0 < sigma <= 1`).
pub fn lookahead_weights(sliced: &SlicedCircuit, t: usize, sigma: f64) -> LookaheadGraph {
    assert!(
        sigma > 0.0 && sigma <= 1.0,
        "decay must be in (0, 1], got {sigma}"
    );
    let mut weights = BTreeMap::new();
    let mut factor = 1.0;
    for m in t..sliced.depth() {
        for &pair in sliced.pairs(m) {
            *weights.entry(pair).or_insert(0.0) += factor;
        }
        factor *= sigma;
        if factor < DECAY_CUTOFF {
            break;
        }
    }
    let must_links = sliced.pairs(t).to_vec();
    LookaheadGraph {
        weights,
        must_links,
    }
}
