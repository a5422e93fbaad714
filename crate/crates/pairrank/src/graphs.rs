//! Comparison graphs and their row-stochastic system matrices.
//!
//! A comparison design on `n` objects is an undirected graph: vertices are
//! objects, an edge means the pair gets compared. Edges are stored in the
//! canonical orientation `hi > lo`. The system matrices `H~`, `M~`, `H`,
//! `M` drive both the least-squares solver and the random-walk analysis.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Largest node count for which dense matrix routines are built.
pub const DENSE_CAP: usize = 512;

/// Undirected edge in canonical orientation (`hi > lo`), 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    hi: usize,
    lo: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::Data(format!("self-loop on object {}", a + 1)));
        }
        Ok(Edge {
            hi: a.max(b),
            lo: a.min(b),
        })
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: usize) -> usize {
        if v == self.hi {
            self.lo
        } else {
            self.hi
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.hi == v || self.lo == v
    }
}

/// Positive weights `omega` keyed by edge.
pub type EdgeWeights = BTreeMap<Edge, f64>;

/// Unit weights for every edge of `g` (the unweighted-LS setting).
pub fn unit_weights(g: &ComparisonGraph) -> EdgeWeights {
    g.edges().iter().map(|&e| (e, 1.0)).collect()
}

pub(crate) fn check_weights(g: &ComparisonGraph, weights: &EdgeWeights) -> Result<()> {
    for e in g.edges() {
        match weights.get(e) {
            Some(w) if w.is_finite() && *w > 0.0 => {}
            Some(w) => {
                return Err(Error::Domain(format!(
                    "weight for edge ({}, {}) must be positive and finite, got {w}",
                    e.hi + 1,
                    e.lo + 1
                )))
            }
            None => {
                return Err(Error::Data(format!(
                    "missing weight for edge ({}, {})",
                    e.hi + 1,
                    e.lo + 1
                )))
            }
        }
    }
    Ok(())
}

/// Undirected comparison graph on `n` objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl ComparisonGraph {
    /// Builds a graph from an edge list, canonicalizing orientations.
    /// Rejects self-loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        if n < 2 {
            return Err(Error::Config(format!("need at least 2 objects, got {n}")));
        }
        let mut list: Vec<Edge> = edges.into_iter().collect();
        for e in &list {
            if e.hi >= n {
                return Err(Error::Data(format!(
                    "edge endpoint {} exceeds object count {n}",
                    e.hi + 1
                )));
            }
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Data("duplicate edge in graph".into()));
        }
        Ok(ComparisonGraph { n, edges: list })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Neighbor lists with the index of the connecting edge.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (idx, e) in self.edges.iter().enumerate() {
            adj[e.hi].push((e.lo, idx));
            adj[e.lo].push((e.hi, idx));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            deg[e.hi] += 1;
            deg[e.lo] += 1;
        }
        deg
    }

    /// Sum of incident edge weights per node (the generalized degree).
    pub fn generalized_degrees(&self, weights: &EdgeWeights) -> Result<Vec<f64>> {
        check_weights(self, weights)?;
        let mut rho = vec![0.0f64; self.n];
        for e in &self.edges {
            let w = weights[e];
            rho[e.hi] += w;
            rho[e.lo] += w;
        }
        Ok(rho)
    }

    /// True iff the graph has a single connected component.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Node sets of the connected components, largest first.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(u, _) in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
        comps
    }

    /// Set-union of the edge sets of two graphs on the same objects.
    pub fn union(&self, other: &ComparisonGraph) -> Result<ComparisonGraph> {
        if self.n != other.n {
            return Err(Error::Data(format!(
                "cannot union graphs on {} and {} objects",
                self.n, other.n
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        edges.sort_unstable();
        edges.dedup();
        Ok(ComparisonGraph { n: self.n, edges })
    }
}

/// Named graph families for experiments and the CLI.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Complete {
        n: usize,
    },
    Star {
        n: usize,
        /// Center object, 0-based. Defaults to the last object.
        center: usize,
    },
    RandomRegular {
        n: usize,
        degree: usize,
    },
    /// A connected core of `hubs` high-degree nodes (the last `hubs`
    /// objects), with the remaining nodes split into per-hub clusters of
    /// maximum degree `max_degree`.
    Hub {
        n: usize,
        hubs: usize,
        max_degree: usize,
    },
    Wheel {
        n: usize,
    },
    FromEdges {
        n: usize,
        edges: Vec<Edge>,
    },
}

impl GraphSpec {
    pub fn n(&self) -> usize {
        match self {
            GraphSpec::Complete { n }
            | GraphSpec::Star { n, .. }
            | GraphSpec::RandomRegular { n, .. }
            | GraphSpec::Hub { n, .. }
            | GraphSpec::Wheel { n }
            | GraphSpec::FromEdges { n, .. } => *n,
        }
    }
}

const REGULAR_MAX_ATTEMPTS: usize = 1000;

/// Builds a connected comparison graph from a family spec.
pub fn build_graph<R: Rng + ?Sized>(spec: &GraphSpec, rng: &mut R) -> Result<ComparisonGraph> {
    let g = match spec {
        GraphSpec::Complete { n } => {
            let mut edges = Vec::with_capacity(n * (n - 1) / 2);
            for i in 1..*n {
                for j in 0..i {
                    edges.push(Edge { hi: i, lo: j });
                }
            }
            ComparisonGraph::from_edges(*n, edges)?
        }
        GraphSpec::Star { n, center } => {
            if *center >= *n {
                return Err(Error::Config(format!(
                    "star center {} out of range for {n} objects",
                    center + 1
                )));
            }
            let edges = (0..*n)
                .filter(|v| v != center)
                .map(|v| Edge::new(v, *center).expect("distinct endpoints"))
                .collect::<Vec<_>>();
            ComparisonGraph::from_edges(*n, edges)?
        }
        GraphSpec::RandomRegular { n, degree } => random_regular(*n, *degree, rng)?,
        GraphSpec::Hub {
            n,
            hubs,
            max_degree,
        } => hub_graph(*n, *hubs, *max_degree)?,
        GraphSpec::Wheel { n } => {
            if *n < 4 {
                return Err(Error::Config(format!("wheel graph needs n >= 4, got {n}")));
            }
            let center = n - 1;
            let rim = n - 1;
            let mut edges = Vec::with_capacity(2 * rim);
            for v in 0..rim {
                edges.push(Edge::new(v, center).expect("distinct endpoints"));
                edges.push(Edge::new(v, (v + 1) % rim).expect("distinct endpoints"));
            }
            ComparisonGraph::from_edges(*n, edges)?
        }
        GraphSpec::FromEdges { n, edges } => ComparisonGraph::from_edges(*n, edges.clone())?,
    };
    Ok(g)
}

/// Configuration-model sampler for connected random regular graphs.
///
/// Stubs are matched in random rounds; illegal pairs (self-loops or
/// repeats) are thrown back and re-matched, and the whole sample is
/// redrawn when matching stalls or the result is disconnected.
fn random_regular<R: Rng + ?Sized>(
    n: usize,
    degree: usize,
    rng: &mut R,
) -> Result<ComparisonGraph> {
    if n < 2 {
        return Err(Error::Config(format!("need at least 2 objects, got {n}")));
    }
    if degree == 0 || degree >= n {
        return Err(Error::Config(format!(
            "regular degree must satisfy 1 <= degree < n, got degree {degree} with n {n}"
        )));
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::Config(format!(
            "no {degree}-regular graph on {n} nodes: n * degree must be even"
        )));
    }

    for _ in 0..REGULAR_MAX_ATTEMPTS {
        let Some(edges) = try_pairing(n, degree, rng) else {
            continue;
        };
        let g = ComparisonGraph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Numerical(format!(
        "failed to sample a connected {degree}-regular graph on {n} nodes after {REGULAR_MAX_ATTEMPTS} attempts"
    )))
}

fn try_pairing<R: Rng + ?Sized>(n: usize, degree: usize, rng: &mut R) -> Option<Vec<Edge>> {
    let mut edges: Vec<Edge> = Vec::with_capacity(n * degree / 2);
    let mut present = vec![false; n * n];
    let mut stubs: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    while !stubs.is_empty() {
        stubs.shuffle(rng);
        let mut leftover = Vec::new();
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || present[a.max(b) * n + a.min(b)] {
                leftover.push(a);
                leftover.push(b);
            } else {
                present[a.max(b) * n + a.min(b)] = true;
                edges.push(Edge {
                    hi: a.max(b),
                    lo: a.min(b),
                });
            }
        }
        if leftover.len() == stubs.len() {
            return None; // matching stalled; redraw from scratch
        }
        stubs = leftover;
    }
    Some(edges)
}

fn hub_graph(n: usize, hubs: usize, max_degree: usize) -> Result<ComparisonGraph> {
    if hubs == 0 || hubs > n {
        return Err(Error::Config(format!(
            "hub count must lie in 1..=n, got {hubs} with n {n}"
        )));
    }
    if max_degree == 0 {
        return Err(Error::Config("hub cluster max degree must be >= 1".into()));
    }
    let first_hub = n - hubs;
    let mut edges = Vec::new();
    // Connected core: complete graph on the hub nodes.
    for i in first_hub..n {
        for j in first_hub..i {
            edges.push(Edge { hi: i, lo: j });
        }
    }
    // Cluster members attach to their hub; chains inside a cluster keep
    // member degree at 3, so they are added only when max_degree allows.
    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); hubs];
    for v in 0..first_hub {
        clusters[v % hubs].push(v);
    }
    for (j, members) in clusters.iter().enumerate() {
        let hub = n - 1 - j;
        for &v in members {
            edges.push(Edge::new(v, hub).expect("distinct endpoints"));
        }
        if max_degree >= 3 {
            for pair in members.windows(2) {
                edges.push(Edge::new(pair[0], pair[1]).expect("distinct endpoints"));
            }
        }
    }
    ComparisonGraph::from_edges(n, edges)
}

/// Graph connecting every object to its `rho2` nearest neighbors by
/// estimated quality; distance ties break toward the lower object index.
pub fn knn_quality_graph(q_hat: &[f64], rho2: usize) -> Result<ComparisonGraph> {
    let n = q_hat.len();
    if n < 2 {
        return Err(Error::Config(format!("need at least 2 objects, got {n}")));
    }
    if rho2 >= n {
        return Err(Error::Config(format!(
            "neighbor count {rho2} must be smaller than object count {n}"
        )));
    }
    if q_hat.iter().any(|q| !q.is_finite()) {
        return Err(Error::Domain("quality estimates must be finite".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        others.sort_by(|&a, &b| {
            let da = (q_hat[i] - q_hat[a]).abs();
            let db = (q_hat[i] - q_hat[b]).abs();
            da.partial_cmp(&db).unwrap().then(a.cmp(&b))
        });
        for &j in others.iter().take(rho2) {
            edges.push(Edge::new(i, j).expect("distinct endpoints"));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    ComparisonGraph::from_edges(n, edges)
}

/// Dense system matrices of a weighted comparison graph.
///
/// `h_tilde[i][j] = omega_ij / rho_i` on edges, zero elsewhere;
/// `m_tilde = I - h_tilde`; `h` is `h_tilde` with the reference row
/// zeroed and `m = I - h`, which is nonsingular on connected graphs.
#[derive(Debug, Clone)]
pub struct SystemMatrices {
    pub h_tilde: DMatrix<f64>,
    pub m_tilde: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub m: DMatrix<f64>,
    pub reference: usize,
}

pub fn system_matrices(
    g: &ComparisonGraph,
    weights: &EdgeWeights,
    reference: usize,
) -> Result<SystemMatrices> {
    let n = g.n();
    if n > DENSE_CAP {
        return Err(Error::Config(format!(
            "dense system matrices are capped at {DENSE_CAP} objects, got {n}"
        )));
    }
    if reference >= n {
        return Err(Error::Config(format!(
            "reference object {} out of range for {n} objects",
            reference + 1
        )));
    }
    if !g.is_connected() {
        return Err(Error::Data(
            "graph is disconnected: the gauge-fixed system matrix would be singular".into(),
        ));
    }
    let rho = g.generalized_degrees(weights)?;
    let mut h_tilde = DMatrix::<f64>::zeros(n, n);
    for e in g.edges() {
        let w = weights[e];
        h_tilde[(e.hi, e.lo)] = w / rho[e.hi];
        h_tilde[(e.lo, e.hi)] = w / rho[e.lo];
    }
    let mut h = h_tilde.clone();
    for j in 0..n {
        h[(reference, j)] = 0.0;
    }
    let eye = DMatrix::<f64>::identity(n, n);
    Ok(SystemMatrices {
        m_tilde: &eye - &h_tilde,
        m: &eye - &h,
        h_tilde,
        h,
        reference,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn path3() -> ComparisonGraph {
        ComparisonGraph::from_edges(3, vec![Edge::new(0, 1).unwrap(), Edge::new(1, 2).unwrap()])
            .unwrap()
    }

    #[test]
    fn complete_graph_edge_count() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let g = build_graph(&GraphSpec::Complete { n: 4 }, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_connected());
    }

    #[test]
    fn star_graph_shape() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let g = build_graph(&GraphSpec::Star { n: 5, center: 4 }, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degrees()[4], 4);
        assert!(g.degrees()[..4].iter().all(|&d| d == 1));
    }

    #[test]
    fn random_regular_degrees_and_connectivity() {
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        let g = build_graph(&GraphSpec::RandomRegular { n: 50, degree: 6 }, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 150);
        assert!(g.degrees().iter().all(|&d| d == 6));
        assert!(g.is_connected());
    }

    #[test]
    fn random_regular_is_seed_reproducible() {
        let sample = |seed| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            build_graph(&GraphSpec::RandomRegular { n: 24, degree: 5 }, &mut rng)
                .unwrap()
                .edges()
                .to_vec()
        };
        assert_eq!(sample(9), sample(9));
        assert_ne!(sample(9), sample(10));
    }

    #[test]
    fn random_regular_rejects_infeasible_specs() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        assert!(build_graph(&GraphSpec::RandomRegular { n: 5, degree: 3 }, &mut rng).is_err());
        assert!(build_graph(&GraphSpec::RandomRegular { n: 5, degree: 5 }, &mut rng).is_err());
        // 1-regular on 4 nodes exists but is never connected.
        assert!(build_graph(&GraphSpec::RandomRegular { n: 4, degree: 1 }, &mut rng).is_err());
    }

    #[test]
    fn hub_graph_structure() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let g = build_graph(
            &GraphSpec::Hub {
                n: 20,
                hubs: 3,
                max_degree: 3,
            },
            &mut rng,
        )
        .unwrap();
        assert!(g.is_connected());
        let deg = g.degrees();
        // Non-hub nodes respect the cluster degree cap.
        assert!(deg[..17].iter().all(|&d| d <= 3));
    }

    #[test]
    fn wheel_graph_structure() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let g = build_graph(&GraphSpec::Wheel { n: 8 }, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 14);
        assert_eq!(g.degrees()[7], 7);
        assert!(g.degrees()[..7].iter().all(|&d| d == 3));
        assert!(g.is_connected());
    }

    #[test]
    fn connectivity_checks() {
        assert!(path3().is_connected());
        let disjoint = ComparisonGraph::from_edges(
            4,
            vec![Edge::new(0, 1).unwrap(), Edge::new(2, 3).unwrap()],
        )
        .unwrap();
        assert!(!disjoint.is_connected());
        let comps = disjoint.components();
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn duplicate_and_self_loop_rejected() {
        assert!(Edge::new(2, 2).is_err());
        let dup = ComparisonGraph::from_edges(
            3,
            vec![Edge::new(0, 1).unwrap(), Edge::new(1, 0).unwrap()],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn path_system_matrices_match_hand_construction() {
        let g = path3();
        let sm = system_matrices(&g, &unit_weights(&g), 2).unwrap();
        let expected =
            DMatrix::from_row_slice(3, 3, &[1.0, -1.0, 0.0, -0.5, 1.0, -0.5, 0.0, 0.0, 1.0]);
        assert!((sm.m.clone() - expected).abs().max() < 1e-15);
        // M~ 1 = 0 by construction.
        let ones = DVector::from_element(3, 1.0);
        assert!((sm.m_tilde.clone() * ones).abs().max() < 1e-14);
    }

    #[test]
    fn star_reference_center_is_nilpotent() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let g = build_graph(&GraphSpec::Star { n: 6, center: 5 }, &mut rng).unwrap();
        let sm = system_matrices(&g, &unit_weights(&g), 5).unwrap();
        // Each non-reference row of H holds a single 1 (the center).
        for i in 0..5 {
            let row_sum: f64 = (0..6).map(|j| sm.h[(i, j)]).sum();
            assert_eq!(row_sum, 1.0);
            assert_eq!(sm.h[(i, 5)], 1.0);
        }
        // H nilpotent of order 2, so M^{-1} = I + H.
        let eye = DMatrix::<f64>::identity(6, 6);
        let prod = sm.m.clone() * (&eye + &sm.h);
        assert!((prod - eye).abs().max() < 1e-14);
    }

    #[test]
    fn system_matrices_reject_disconnected_graphs() {
        let disjoint = ComparisonGraph::from_edges(
            4,
            vec![Edge::new(0, 1).unwrap(), Edge::new(2, 3).unwrap()],
        )
        .unwrap();
        assert!(system_matrices(&disjoint, &unit_weights(&disjoint), 3).is_err());
    }

    #[test]
    fn m_tilde_rank_deficiency_is_exactly_one() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.random_range(3..=12);
            let g = test_graphs::random_connected(n, n / 2, &mut rng);
            let w = test_graphs::random_weights(&g, &mut rng);
            let sm = system_matrices(&g, &w, n - 1).unwrap();
            let svd = sm.m_tilde.clone().svd(false, false);
            let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
            sv.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert!(sv[0] < 1e-10, "smallest singular value {}", sv[0]);
            assert!(sv[1] > 1e-10, "second singular value {}", sv[1]);
        }
    }

    #[test]
    fn m_is_invertible_on_connected_graphs() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        for _ in 0..10 {
            let n = rng.random_range(3..=10);
            let g = test_graphs::random_connected(n, 2, &mut rng);
            let sm = system_matrices(&g, &unit_weights(&g), n - 1).unwrap();
            let lu = sm.m.clone().lu();
            for k in 0..n {
                let mut e = DVector::zeros(n);
                e[k] = 1.0;
                let x = lu.solve(&e).expect("M must be nonsingular");
                assert!(((sm.m.clone() * &x) - e).abs().max() < 1e-10);
            }
        }
    }

    #[test]
    fn knn_nearest_by_value() {
        let g = knn_quality_graph(&[0.0, 1.0, 2.0, 3.0], 1).unwrap();
        assert_eq!(
            g.edges(),
            &[
                Edge::new(1, 0).unwrap(),
                Edge::new(2, 1).unwrap(),
                Edge::new(3, 2).unwrap()
            ]
        );
    }

    #[test]
    fn knn_full_neighborhood_is_complete() {
        let g = knn_quality_graph(&[0.3, 0.1, 0.9, 0.5], 3).unwrap();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn knn_ties_break_to_lower_index() {
        // Node 0 is equidistant from 1 and 2; the tie goes to object 1.
        let g = knn_quality_graph(&[0.5, 0.4, 0.6], 1).unwrap();
        assert!(g.contains(Edge::new(0, 1).unwrap()));
        // Node 2 also picks node 0 (distance 0.1 vs 0.2), and node 1 picks 0.
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn knn_degrees_at_least_rho2() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        let q: Vec<f64> = (0..20).map(|_| rng.random_range(0.0..1.0)).collect();
        let g = knn_quality_graph(&q, 4).unwrap();
        assert!(g.degrees().iter().all(|&d| d >= 4));
    }

    #[test]
    fn union_properties() {
        let g = path3();
        assert_eq!(g.union(&g).unwrap(), g);

        let a = ComparisonGraph::from_edges(4, vec![Edge::new(0, 1).unwrap()]).unwrap();
        let b = ComparisonGraph::from_edges(4, vec![Edge::new(2, 3).unwrap()]).unwrap();
        assert_eq!(a.union(&b).unwrap().edge_count(), 2);

        let t1 = ComparisonGraph::from_edges(
            4,
            vec![
                Edge::new(0, 1).unwrap(),
                Edge::new(1, 2).unwrap(),
                Edge::new(2, 3).unwrap(),
            ],
        )
        .unwrap();
        let t2 = ComparisonGraph::from_edges(
            4,
            vec![
                Edge::new(0, 2).unwrap(),
                Edge::new(1, 3).unwrap(),
                Edge::new(0, 3).unwrap(),
            ],
        )
        .unwrap();
        assert!(t1.union(&t2).unwrap().is_connected());

        let other = ComparisonGraph::from_edges(5, vec![Edge::new(0, 1).unwrap()]).unwrap();
        assert!(g.union(&other).is_err());
    }
}
