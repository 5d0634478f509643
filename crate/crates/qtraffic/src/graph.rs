//! Seeded random problem graphs for the QAOA MaxCut ansatz.
//!
//! Both generators run on a `ChaCha8Rng` seeded with the caller's seed, so a
//! graph is fully determined by `(n, parameters, seed)` on every platform.
//! The draw discipline is documented per generator and must not change, or
//! stored results stop reproducing.

use std::collections::BTreeSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ProblemGraph {
    /// Build a graph from explicit edges (for user-supplied problems).
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<ProblemGraph> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "graph needs at least 2 vertices, got {n}"
            )));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "bad edge ({a}, {b}) for {n} vertices"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(ProblemGraph { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges normalized `(min, max)`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }
}

/// Erdős–Rényi G(n, p): one uniform draw per unordered pair `(i, j)`, `i < j`,
/// in lexicographic order; the pair is an edge when the draw is below `p`.
pub fn gen_graph_er(n: usize, p: f64, seed: u64) -> Result<ProblemGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "graph needs at least 2 vertices, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must be in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.insert((i, j));
            }
        }
    }
    Ok(ProblemGraph { n, edges })
}

/// Watts–Strogatz small world: a ring lattice of even degree `k`, followed by
/// one rewiring pass. For each offset `j = 1..=k/2` (outer) and each vertex
/// `i` (inner), one uniform draw decides whether edge `(i, i+j mod n)` is
/// rewired with probability `beta`; if so, replacement targets are drawn with
/// `random_range(0..n)` until one is neither `i` nor a current neighbor.
/// Vertices already connected to everything keep their original edge. Edge
/// count is `n * k / 2` in every outcome.
pub fn gen_graph_ws(n: usize, k: usize, beta: f64, seed: u64) -> Result<ProblemGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "graph needs at least 2 vertices, got {n}"
        )));
    }
    if k == 0 || !k.is_multiple_of(2) || k >= n {
        return Err(Error::InvalidParameter(format!(
            "ring degree must be even and in 2..{n}, got {k}"
        )));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParameter(format!(
            "rewiring probability must be in [0, 1], got {beta}"
        )));
    }

    let mut graph = ProblemGraph {
        n,
        edges: BTreeSet::new(),
    };
    for j in 1..=k / 2 {
        for i in 0..n {
            let t = (i + j) % n;
            graph.edges.insert((i.min(t), i.max(t)));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 1..=k / 2 {
        for i in 0..n {
            if rng.random::<f64>() >= beta {
                continue;
            }
            if graph.degree(i) == n - 1 {
                continue;
            }
            let t = (i + j) % n;
            graph.edges.remove(&(i.min(t), i.max(t)));
            let mut w = rng.random_range(0..n);
            while w == i || graph.has_edge(i, w) {
                w = rng.random_range(0..n);
            }
            graph.edges.insert((i.min(w), i.max(w)));
        }
    }
    Ok(graph)
}
