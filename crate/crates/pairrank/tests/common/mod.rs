//! Shared helpers for the integration suites.

use std::collections::BTreeMap;

use pairrank::estimators::EdgeEstimates;
use pairrank::graphs::{ComparisonGraph, Edge, EdgeWeights};
use rand::Rng;

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected<R: Rng + ?Sized>(
    n: usize,
    extra_edges: usize,
    rng: &mut R,
) -> ComparisonGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.random_range(0..v);
        edges.push(Edge::new(v, parent).unwrap());
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra_edges && attempts < 50 * (extra_edges + 1) {
        attempts += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let e = Edge::new(a, b).unwrap();
        if !edges.contains(&e) {
            edges.push(e);
            added += 1;
        }
    }
    ComparisonGraph::from_edges(n, edges).unwrap()
}

pub fn random_weights<R: Rng + ?Sized>(g: &ComparisonGraph, rng: &mut R) -> EdgeWeights {
    g.edges()
        .iter()
        .map(|&e| (e, rng.random_range(0.2..3.0)))
        .collect()
}

pub fn random_distances<R: Rng + ?Sized>(g: &ComparisonGraph, rng: &mut R) -> BTreeMap<Edge, f64> {
    g.edges()
        .iter()
        .map(|&e| (e, rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn estimates_from(
    g: &ComparisonGraph,
    d: &BTreeMap<Edge, f64>,
    w: Option<&EdgeWeights>,
) -> EdgeEstimates {
    let mut est = EdgeEstimates::from_distances(g.n(), d).unwrap();
    if let Some(w) = w {
        est.set_weights(w).unwrap();
    }
    est
}
