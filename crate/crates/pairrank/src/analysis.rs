//! Random-walk analysis of the least-squares estimator.
//!
//! The gauge-fixed solution can be read as the expected total reward of an
//! absorbing random walk that starts at a node, collects the estimated
//! difference on every traversed edge, and stops at the reference. This
//! module computes the edge-traversal rates `theta` from the fundamental
//! matrix, rebuilds the per-node acyclic digraph with its biased-walk
//! probabilities, and exposes the spectral quantities entering the MSE
//! bound. It serves as an independent correctness oracle for the solver
//! and as a graph diagnostic.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::estimators::EdgeEstimates;
use crate::graphs::{check_weights, system_matrices, ComparisonGraph, EdgeWeights, DENSE_CAP};

/// Relative tolerance under which two traversal rates count as tied; tied
/// pairs get no edge in either direction.
const THETA_TIE_TOL: f64 = 1e-12;

/// Walk quantities of a weighted comparison graph with a fixed reference.
#[derive(Debug, Clone)]
pub struct WalkAnalysis {
    graph: ComparisonGraph,
    weights: EdgeWeights,
    reference: usize,
    /// `theta[(j, i)]`: expected number of traversals of each unit of edge
    /// weight out of `j` in the walk from `i` to the reference. Reference
    /// row and column are zero.
    theta: DMatrix<f64>,
    /// Largest eigenvalue of `C = (M^{-1})^T M^{-1}`.
    pub lambda_c_max: f64,
    /// Infinity norm of `M^{-1}`.
    pub inf_norm_m_inv: f64,
    /// Smallest generalized degree.
    pub rho_inf: f64,
}

impl WalkAnalysis {
    pub fn graph(&self) -> &ComparisonGraph {
        &self.graph
    }

    pub fn weights(&self) -> &EdgeWeights {
        &self.weights
    }

    pub fn reference(&self) -> usize {
        self.reference
    }

    pub fn theta(&self, j: usize, i: usize) -> f64 {
        self.theta[(j, i)]
    }

    /// Sum of `theta[(j, i)]` over start nodes `i`, reported per node by
    /// the analyze command.
    pub fn theta_row_sum(&self, j: usize) -> f64 {
        (0..self.graph.n()).map(|i| self.theta[(j, i)]).sum()
    }
}

/// Computes the walk quantities; dense linear algebra, capped at
/// [`DENSE_CAP`] objects.
pub fn walk_analysis(
    g: &ComparisonGraph,
    weights: &EdgeWeights,
    reference: usize,
) -> Result<WalkAnalysis> {
    let n = g.n();
    if n > DENSE_CAP {
        return Err(Error::Config(format!(
            "walk analysis is dense and capped at {DENSE_CAP} objects, got {n}; \
             sampling-based diagnostics for larger graphs are out of scope"
        )));
    }
    check_weights(g, weights)?;
    let sm = system_matrices(g, weights, reference)?;
    let rho = g.generalized_degrees(weights)?;

    let free: Vec<usize> = (0..n).filter(|&v| v != reference).collect();
    let m = free.len();
    let mut i_minus_t = DMatrix::<f64>::identity(m, m);
    for (a, &v) in free.iter().enumerate() {
        for (b, &u) in free.iter().enumerate() {
            i_minus_t[(a, b)] -= sm.h[(v, u)];
        }
    }
    let fundamental = i_minus_t
        .try_inverse()
        .ok_or_else(|| Error::Numerical("fundamental matrix (I - T) is singular".into()))?;

    let mut theta = DMatrix::<f64>::zeros(n, n);
    for (a, &i) in free.iter().enumerate() {
        for (b, &j) in free.iter().enumerate() {
            theta[(j, i)] = fundamental[(a, b)] / rho[j];
        }
    }

    let m_inv =
        sm.m.clone()
            .try_inverse()
            .ok_or_else(|| Error::Numerical("gauge-fixed matrix M is singular".into()))?;
    let inf_norm_m_inv = (0..n)
        .map(|i| (0..n).map(|j| m_inv[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let sigma_max = m_inv
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max);
    let lambda_c_max = sigma_max * sigma_max;
    let rho_inf = rho.iter().copied().fold(f64::INFINITY, f64::min);

    Ok(WalkAnalysis {
        graph: g.clone(),
        weights: weights.clone(),
        reference,
        theta,
        lambda_c_max,
        inf_norm_m_inv,
        rho_inf,
    })
}

/// Directed edge of a per-node DAG with its flow and walk probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DagEdge {
    pub from: usize,
    pub to: usize,
    /// Traversal flow `omega * (theta_from - theta_to)`.
    pub flow: f64,
    /// Biased-walk probability, normalized over the out-edges of `from`.
    pub eta: f64,
}

/// Acyclic digraph reproducing the walk from one root node.
///
/// Every undirected edge is oriented from the endpoint with the larger
/// traversal rate toward the smaller (edges at the reference always point
/// into it); ties are dropped. Outgoing probabilities sum to one at every
/// node with out-edges.
#[derive(Debug, Clone)]
pub struct NodeDag {
    pub root: usize,
    pub reference: usize,
    n: usize,
    edges: Vec<DagEdge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    theta_root: Vec<f64>,
}

impl NodeDag {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[DagEdge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &DagEdge> + '_ {
        self.out[v].iter().map(move |&k| &self.edges[k])
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &DagEdge> + '_ {
        self.inc[v].iter().map(move |&k| &self.edges[k])
    }

    /// Traversal rate `theta[(v, root)]` this DAG was built from.
    pub fn theta(&self, v: usize) -> f64 {
        self.theta_root[v]
    }
}

/// Builds the DAG seen from `root` (which must not be the reference).
pub fn build_node_dag(analysis: &WalkAnalysis, root: usize) -> Result<NodeDag> {
    let n = analysis.graph.n();
    if root >= n {
        return Err(Error::Config(format!(
            "root object {} out of range for {n} objects",
            root + 1
        )));
    }
    if root == analysis.reference {
        return Err(Error::Config(
            "the walk root must differ from the reference object".into(),
        ));
    }
    let reference = analysis.reference;
    let theta_root: Vec<f64> = (0..n).map(|v| analysis.theta(v, root)).collect();

    let mut edges = Vec::new();
    for e in analysis.graph.edges() {
        let w = analysis.weights[e];
        let (a, b) = (e.hi(), e.lo());
        let (ta, tb) = (theta_root[a], theta_root[b]);
        let oriented = if a == reference {
            Some((b, a))
        } else if b == reference {
            Some((a, b))
        } else {
            let tol = THETA_TIE_TOL * ta.abs().max(tb.abs()).max(1.0);
            if (ta - tb).abs() <= tol {
                None // tied rates: the edge carries no net flow
            } else if ta > tb {
                Some((a, b))
            } else {
                Some((b, a))
            }
        };
        if let Some((from, to)) = oriented {
            edges.push(DagEdge {
                from,
                to,
                flow: w * (theta_root[from] - theta_root[to]),
                eta: 0.0,
            });
        }
    }

    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for (k, de) in edges.iter().enumerate() {
        out[de.from].push(k);
        inc[de.to].push(k);
    }
    for outgoing in &out {
        let total: f64 = outgoing.iter().map(|&k| edges[k].flow).sum();
        if total > 0.0 {
            for &k in outgoing {
                edges[k].eta = edges[k].flow / total;
            }
        }
    }

    Ok(NodeDag {
        root,
        reference,
        n,
        edges,
        out,
        inc,
        theta_root,
    })
}

/// Solves the biased-walk recursion on the DAG and returns the root's
/// quality estimate, which coincides with the least-squares solution.
pub fn dag_estimate(dag: &NodeDag, estimates: &EdgeEstimates) -> Result<f64> {
    if estimates.n() != dag.n {
        return Err(Error::Data(format!(
            "estimates cover {} objects but the DAG has {}",
            estimates.n(),
            dag.n
        )));
    }
    // Ascending traversal rate is a topological order: every out-edge
    // points to a strictly smaller rate (the reference sits at zero).
    let mut order: Vec<usize> = (0..dag.n).collect();
    order.sort_by(|&a, &b| {
        dag.theta_root[a]
            .partial_cmp(&dag.theta_root[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut q_check = vec![0.0f64; dag.n];
    for &v in &order {
        if v == dag.reference {
            continue;
        }
        let mut acc = 0.0;
        for de in dag.out_edges(v) {
            let d = estimates.d(de.from, de.to).ok_or_else(|| {
                Error::Data(format!(
                    "missing distance estimate for edge ({}, {})",
                    de.from + 1,
                    de.to + 1
                ))
            })?;
            acc += de.eta * (q_check[de.to] + d);
        }
        q_check[v] = acc;
    }
    Ok(q_check[dag.root])
}

/// Largest violation of the walk's flow conservation: outgoing flow must
/// equal 1 at the root and the incoming flow everywhere else.
pub fn flow_conservation_check(dag: &NodeDag) -> f64 {
    let mut worst = 0.0f64;
    for v in 0..dag.n {
        if v == dag.reference {
            continue;
        }
        let out_flow: f64 = dag.out_edges(v).map(|de| de.flow).sum();
        let expected = if v == dag.root {
            1.0
        } else {
            dag.in_edges(v).map(|de| de.flow).sum()
        };
        worst = worst.max((out_flow - expected).abs());
    }
    worst
}

/// Shape of the mean-square-error bound, `c * lambda_C^max * N / (W * rho_inf)`.
///
/// The leading constant is not pinned down by the analysis; `c = 1` gives
/// the unscaled bound shape.
pub fn mse_bound(analysis: &WalkAnalysis, workers_per_edge: u64, c: f64) -> Result<f64> {
    if workers_per_edge == 0 {
        return Err(Error::Config(
            "bound needs at least one worker per edge".into(),
        ));
    }
    let n = analysis.graph.n() as f64;
    Ok(c * analysis.lambda_c_max * n / (workers_per_edge as f64 * analysis.rho_inf))
}
