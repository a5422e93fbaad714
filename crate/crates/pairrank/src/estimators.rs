//! Quality estimation from pairwise comparison counts.
//!
//! Three estimators share the same inputs. LS inverts the link on each
//! edge's empirical preference rate and solves the gauge-fixed
//! least-squares problem on the graph; WLS does the same with per-edge
//! inverse-variance weights; ML maximizes the comparison log-likelihood
//! with a damped Newton iteration.

use std::collections::BTreeMap;

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graphs::{ComparisonGraph, Edge, DENSE_CAP};
use crate::models::PreferenceModel;

/// Probability floor used when evaluating logs and likelihood ratios at
/// points where the model probability underflows.
const PROB_FLOOR: f64 = 1e-12;

/// Comparison tallies for one edge: `total` comparisons, of which
/// `wins_hi` preferred the higher-indexed endpoint.
///
/// Tallies are real-valued so that exact win rates can be fed to the
/// likelihood machinery; production data is integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCount {
    pub total: f64,
    pub wins_hi: f64,
}

impl EdgeCount {
    /// Empirical preference rate for the higher-indexed endpoint.
    pub fn rate(&self) -> f64 {
        self.wins_hi / self.total
    }
}

/// Per-edge comparison tallies over `n` objects.
///
/// Edges with zero comparisons are absent by construction; recording a
/// zero-total observation is a no-op.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonCounts {
    n: usize,
    counts: BTreeMap<Edge, EdgeCount>,
}

impl ComparisonCounts {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("need at least 2 objects, got {n}")));
        }
        Ok(ComparisonCounts {
            n,
            counts: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.counts.len()
    }

    /// Records `total` comparisons of objects `a` and `b`, `wins_for_a` of
    /// which preferred `a`. Orientation is normalized internally, and
    /// repeated records on the same pair accumulate.
    pub fn record(&mut self, a: usize, b: usize, wins_for_a: f64, total: f64) -> Result<()> {
        let e = Edge::new(a, b)?;
        if e.hi() >= self.n {
            return Err(Error::Data(format!(
                "object {} exceeds object count {}",
                e.hi() + 1,
                self.n
            )));
        }
        if !total.is_finite() || !wins_for_a.is_finite() || total < 0.0 {
            return Err(Error::Data(format!(
                "invalid tally for pair ({}, {}): {wins_for_a} of {total}",
                a + 1,
                b + 1
            )));
        }
        if wins_for_a < 0.0 || wins_for_a > total {
            return Err(Error::Data(format!(
                "wins must lie in [0, total], got {wins_for_a} of {total} for pair ({}, {})",
                a + 1,
                b + 1
            )));
        }
        if total == 0.0 {
            return Ok(());
        }
        let wins_hi = if a == e.hi() {
            wins_for_a
        } else {
            total - wins_for_a
        };
        let entry = self.counts.entry(e).or_insert(EdgeCount {
            total: 0.0,
            wins_hi: 0.0,
        });
        entry.total += total;
        entry.wins_hi += wins_hi;
        Ok(())
    }

    pub fn get(&self, e: Edge) -> Option<EdgeCount> {
        self.counts.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, EdgeCount)> + '_ {
        self.counts.iter().map(|(&e, &c)| (e, c))
    }

    /// The comparison graph induced by the observed edges.
    pub fn graph(&self) -> Result<ComparisonGraph> {
        ComparisonGraph::from_edges(self.n, self.counts.keys().copied())
    }

    /// Total number of comparisons across all edges.
    pub fn total_comparisons(&self) -> f64 {
        self.counts.values().map(|c| c.total).sum()
    }

    /// Counts restricted to the given objects, reindexed to `0..keep.len()`
    /// in the order given.
    pub fn restrict(&self, keep: &[usize]) -> Result<ComparisonCounts> {
        let mut pos = vec![None; self.n];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = Some(new);
        }
        let mut out = ComparisonCounts::new(keep.len())?;
        for (e, c) in self.iter() {
            if let (Some(a), Some(b)) = (pos[e.hi()], pos[e.lo()]) {
                out.record(a, b, c.wins_hi, c.total)?;
            }
        }
        Ok(out)
    }
}

/// Derived per-edge quantities: empirical rate, clamped rate, estimated
/// quality difference, variance estimate, and solver weight.
#[derive(Debug, Clone, Copy)]
pub struct EdgeEstimate {
    pub p_hat: f64,
    pub p_tilde: f64,
    /// Estimated quality difference `q_hi - q_lo`.
    pub d_hat: f64,
    pub sigma2_hat: f64,
    pub omega: f64,
}

/// Edge estimates keyed by canonical edge.
#[derive(Debug, Clone)]
pub struct EdgeEstimates {
    n: usize,
    map: BTreeMap<Edge, EdgeEstimate>,
    clamped: usize,
}

impl EdgeEstimates {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, e: Edge) -> Option<&EdgeEstimate> {
        self.map.get(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &EdgeEstimate)> + '_ {
        self.map.iter().map(|(&e, est)| (e, est))
    }

    /// Number of edges whose empirical rate hit the clamp.
    pub fn clamped_edges(&self) -> usize {
        self.clamped
    }

    /// Signed distance estimate from `from` to `to` (antisymmetric).
    pub fn d(&self, from: usize, to: usize) -> Option<f64> {
        let e = Edge::new(from, to).ok()?;
        let est = self.map.get(&e)?;
        Some(if from == e.hi() {
            est.d_hat
        } else {
            -est.d_hat
        })
    }

    /// Synthetic estimates carrying only distances and unit weights, for
    /// solver studies where no comparison data exists. Probability fields
    /// are filled with NaN.
    pub fn from_distances(n: usize, d_hat: &BTreeMap<Edge, f64>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (&e, &d) in d_hat {
            if e.hi() >= n {
                return Err(Error::Data(format!(
                    "edge endpoint {} exceeds object count {n}",
                    e.hi() + 1
                )));
            }
            if !d.is_finite() {
                return Err(Error::Domain("distance estimates must be finite".into()));
            }
            map.insert(
                e,
                EdgeEstimate {
                    p_hat: f64::NAN,
                    p_tilde: f64::NAN,
                    d_hat: d,
                    sigma2_hat: f64::NAN,
                    omega: 1.0,
                },
            );
        }
        Ok(EdgeEstimates { n, map, clamped: 0 })
    }

    /// Replaces the weight on every edge.
    pub fn set_weights(&mut self, omega: &BTreeMap<Edge, f64>) -> Result<()> {
        for (e, est) in self.map.iter_mut() {
            match omega.get(e) {
                Some(w) if w.is_finite() && *w > 0.0 => est.omega = *w,
                Some(w) => {
                    return Err(Error::Domain(format!(
                        "weight for edge ({}, {}) must be positive and finite, got {w}",
                        e.hi() + 1,
                        e.lo() + 1
                    )))
                }
                None => {
                    return Err(Error::Data(format!(
                        "missing weight for edge ({}, {})",
                        e.hi() + 1,
                        e.lo() + 1
                    )))
                }
            }
        }
        Ok(())
    }

    /// Weights as an edge-keyed map.
    pub fn weights(&self) -> BTreeMap<Edge, f64> {
        self.map.iter().map(|(&e, est)| (e, est.omega)).collect()
    }
}

/// Inverts the link on each edge's clamped empirical rate.
///
/// `p_tilde = clamp(K/W, chi, 1-chi)` and `d_hat = F^{-1}(p_tilde)`; the
/// variance estimate is `(dF^{-1}/dp)^2 p~(1-p~)/W`. Weights start at 1
/// (the unweighted-LS setting).
pub fn estimate_distances(
    counts: &ComparisonCounts,
    model: PreferenceModel,
    chi: f64,
) -> Result<EdgeEstimates> {
    if !(chi.is_finite() && chi > 0.0 && chi < 0.5) {
        return Err(Error::Config(format!(
            "clamp parameter chi must lie in (0, 1/2), got {chi}"
        )));
    }
    if counts.is_empty() {
        return Err(Error::Data("no comparison counts to estimate from".into()));
    }
    let mut map = BTreeMap::new();
    let mut clamped = 0;
    for (e, c) in counts.iter() {
        let p_hat = c.rate();
        let p_tilde = p_hat.clamp(chi, 1.0 - chi);
        if p_tilde != p_hat {
            clamped += 1;
        }
        let d_hat = model.inverse_preference(p_tilde)?;
        let slope = model.inverse_slope(p_tilde)?;
        let sigma2_hat = slope * slope * p_tilde * (1.0 - p_tilde) / c.total;
        map.insert(
            e,
            EdgeEstimate {
                p_hat,
                p_tilde,
                d_hat,
                sigma2_hat,
                omega: 1.0,
            },
        );
    }
    Ok(EdgeEstimates {
        n: counts.n(),
        map,
        clamped,
    })
}

/// Switches estimates to inverse-variance weights, `omega = 1/sigma^2`.
pub fn wls_weights(estimates: &mut EdgeEstimates) {
    for est in estimates.map.values_mut() {
        est.omega = 1.0 / est.sigma2_hat;
    }
}

/// Solver diagnostics attached to a quality estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveDiagnostics {
    /// For LS: infinity norm of the normal-equation residual.
    /// For ML: infinity norm of the gradient over free coordinates.
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Edges whose empirical rate was clamped before inversion.
    pub clamped_edges: usize,
}

/// Estimated quality vector with the reference object pinned to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityEstimate {
    pub q_hat: Vec<f64>,
    pub reference: usize,
    pub diagnostics: SolveDiagnostics,
}

fn check_reference(n: usize, reference: usize) -> Result<()> {
    if reference >= n {
        return Err(Error::Config(format!(
            "reference object {} out of range for {n} objects",
            reference + 1
        )));
    }
    Ok(())
}

/// Solves the weighted least-squares problem
/// `min sum omega_ij (x_i - x_j - d_ij)^2` with `x_reference = 0`.
pub fn ls_solve(
    g: &ComparisonGraph,
    estimates: &EdgeEstimates,
    reference: usize,
) -> Result<QualityEstimate> {
    let n = g.n();
    check_reference(n, reference)?;
    if estimates.n() != n {
        return Err(Error::Data(format!(
            "estimates cover {} objects but the graph has {n}",
            estimates.n()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Data(
            "graph is disconnected: the least-squares system is singular".into(),
        ));
    }
    for e in g.edges() {
        if estimates.get(*e).is_none() {
            return Err(Error::Data(format!(
                "missing estimate for edge ({}, {})",
                e.hi() + 1,
                e.lo() + 1
            )));
        }
    }

    // Gauge-fixed normal equations: the weighted Laplacian restricted to
    // non-reference coordinates.
    let free: Vec<usize> = (0..n).filter(|&v| v != reference).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in free.iter().enumerate() {
        pos[v] = k;
    }
    let m = n - 1;
    let mut lap = DMatrix::<f64>::zeros(m, m);
    let mut rhs = DVector::<f64>::zeros(m);
    for e in g.edges() {
        let est = estimates.get(*e).expect("coverage checked above");
        let w = est.omega;
        for (v, u, d) in [(e.hi(), e.lo(), est.d_hat), (e.lo(), e.hi(), -est.d_hat)] {
            if v == reference {
                continue;
            }
            let i = pos[v];
            lap[(i, i)] += w;
            rhs[i] += w * d;
            if u != reference {
                lap[(i, pos[u])] -= w;
            }
        }
    }

    let chol = Cholesky::new(lap.clone());
    let solve = |b: &DVector<f64>| -> Result<DVector<f64>> {
        if let Some(ch) = &chol {
            Ok(ch.solve(b))
        } else {
            lap.clone()
                .lu()
                .solve(b)
                .ok_or_else(|| Error::Numerical("least-squares system is singular".into()))
        }
    };

    let mut x = solve(&rhs)?;
    let mut q_hat = vec![0.0f64; n];
    let assemble = |x: &DVector<f64>, q: &mut Vec<f64>| {
        for (k, &v) in free.iter().enumerate() {
            q[v] = x[k];
        }
        q[reference] = 0.0;
    };
    assemble(&x, &mut q_hat);

    // Iterative refinement until the row-stochastic residual
    // || M q - (H o D) 1 ||_inf meets tolerance.
    let mut refinements = 0;
    let mut residual = normal_equation_residual(g, estimates, &q_hat, reference)?;
    while residual > 0.5e-10 && refinements < 3 {
        let r = &rhs - &lap * &x;
        let dx = solve(&r)?;
        x += dx;
        assemble(&x, &mut q_hat);
        residual = normal_equation_residual(g, estimates, &q_hat, reference)?;
        refinements += 1;
    }
    if residual > 1e-10 {
        return Err(Error::Numerical(format!(
            "least-squares residual {residual:.3e} above tolerance 1e-10"
        )));
    }

    Ok(QualityEstimate {
        q_hat,
        reference,
        diagnostics: SolveDiagnostics {
            residual_norm: residual,
            iterations: refinements,
            converged: true,
            clamped_edges: estimates.clamped_edges(),
        },
    })
}

/// `|| M q - (H o D) 1 ||_inf` computed from adjacency.
fn normal_equation_residual(
    g: &ComparisonGraph,
    estimates: &EdgeEstimates,
    q_hat: &[f64],
    reference: usize,
) -> Result<f64> {
    let weights = estimates.weights();
    let rho = g.generalized_degrees(&weights)?;
    let adj = g.adjacency();
    let mut worst = q_hat[reference].abs();
    for v in 0..g.n() {
        if v == reference {
            continue;
        }
        let mut acc = 0.0;
        for &(u, idx) in &adj[v] {
            let e = g.edges()[idx];
            let est = estimates.get(e).expect("coverage checked by caller");
            let d = if v == e.hi() { est.d_hat } else { -est.d_hat };
            acc += est.omega / rho[v] * (q_hat[u] + d);
        }
        worst = worst.max((q_hat[v] - acc).abs());
    }
    Ok(worst)
}

/// Log-likelihood of the counts under quality vector `q`:
/// `sum_e W_e [ s_e log p_e + (1 - s_e) log(1 - p_e) ]`, always <= 0.
pub fn psi_value(q: &[f64], counts: &ComparisonCounts, model: PreferenceModel) -> Result<f64> {
    if counts.is_empty() {
        return Err(Error::Data("no comparison counts".into()));
    }
    if q.len() != counts.n() {
        return Err(Error::Data(format!(
            "quality vector has {} entries for {} objects",
            q.len(),
            counts.n()
        )));
    }
    let mut psi = 0.0;
    for (e, c) in counts.iter() {
        let p = model
            .preference_prob(q[e.hi()] - q[e.lo()])?
            .clamp(PROB_FLOOR, 1.0 - PROB_FLOOR);
        let s = c.rate();
        psi += c.total * (s * p.ln() + (1.0 - s) * (1.0 - p).ln());
    }
    Ok(psi)
}

/// Gradient and Hessian of [`psi_value`] with respect to `q`.
pub fn ml_derivatives(
    q: &[f64],
    counts: &ComparisonCounts,
    model: PreferenceModel,
) -> Result<(DVector<f64>, DMatrix<f64>)> {
    if counts.is_empty() {
        return Err(Error::Data("no comparison counts".into()));
    }
    let n = counts.n();
    if q.len() != n {
        return Err(Error::Data(format!(
            "quality vector has {} entries for {} objects",
            q.len(),
            n
        )));
    }
    let mut grad = DVector::<f64>::zeros(n);
    let mut hess = DMatrix::<f64>::zeros(n, n);
    for (e, c) in counts.iter() {
        let (hi, lo) = (e.hi(), e.lo());
        let (p_raw, d1, d2) = model.prob_derivatives(q[hi] - q[lo])?;
        let p = p_raw.clamp(PROB_FLOOR, 1.0 - PROB_FLOOR);
        let s = c.rate();
        let w = c.total;
        let pq = p * (1.0 - p);
        let ratio = (s - p) / pq;
        let curv = (p * p + s * (1.0 - 2.0 * p)) / (pq * pq);

        grad[hi] += w * d1 * ratio;
        grad[lo] -= w * d1 * ratio;

        let diag = w * (d2 * ratio - d1 * d1 * curv);
        hess[(hi, hi)] += diag;
        hess[(lo, lo)] += diag;
        let off = -diag;
        hess[(hi, lo)] += off;
        hess[(lo, hi)] += off;
    }
    Ok((grad, hess))
}

/// Options for the damped Newton maximization of the log-likelihood.
#[derive(Debug, Clone, Copy)]
pub struct MlOptions {
    pub max_iter: usize,
    /// Convergence threshold on the gradient infinity norm over free
    /// coordinates.
    pub tol: f64,
    /// Initial diagonal damping, escalated tenfold on step rejection.
    pub damping: f64,
}

impl Default for MlOptions {
    fn default() -> Self {
        MlOptions {
            max_iter: 100,
            tol: 1e-8,
            damping: 1e-8,
        }
    }
}

/// Maximum-likelihood quality estimate with `q[reference] = 0`.
///
/// Starts from `init` when given, otherwise from the WLS solution
/// (falling back to zeros). Each Newton step solves the damped system on
/// the free coordinates and backtracks by halving until the likelihood
/// does not decrease.
pub fn ml_estimate(
    counts: &ComparisonCounts,
    model: PreferenceModel,
    reference: usize,
    init: Option<&[f64]>,
    opts: &MlOptions,
) -> Result<QualityEstimate> {
    let n = counts.n();
    check_reference(n, reference)?;
    if n > DENSE_CAP {
        return Err(Error::Config(format!(
            "maximum-likelihood estimation is capped at {DENSE_CAP} objects, got {n}"
        )));
    }
    let g = counts.graph()?;
    if !g.is_connected() {
        return Err(Error::Data(
            "graph is disconnected: qualities are not identifiable".into(),
        ));
    }

    let mut q: Vec<f64> = match init {
        Some(start) => {
            if start.len() != n {
                return Err(Error::Data(format!(
                    "initial point has {} entries for {n} objects",
                    start.len()
                )));
            }
            if start.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain("initial point must be finite".into()));
            }
            start.to_vec()
        }
        None => match estimate_distances(counts, model, 1e-4).and_then(|mut est| {
            wls_weights(&mut est);
            ls_solve(&g, &est, reference)
        }) {
            Ok(wls) => wls.q_hat,
            Err(_) => vec![0.0; n],
        },
    };
    let shift = q[reference];
    for v in q.iter_mut() {
        *v -= shift;
    }

    let free: Vec<usize> = (0..n).filter(|&v| v != reference).collect();
    let mut lambda = opts.damping.max(1e-300);
    let mut psi_cur = psi_value(&q, counts, model)?;
    let mut iterations = 0;
    let mut converged = false;
    let mut grad_inf = f64::INFINITY;

    for _ in 0..opts.max_iter {
        let (grad, hess) = ml_derivatives(&q, counts, model)?;
        grad_inf = free.iter().map(|&v| grad[v].abs()).fold(0.0, f64::max);
        if grad_inf < opts.tol {
            converged = true;
            break;
        }
        iterations += 1;

        // Damped Newton direction on free coordinates: (-S + lambda I) step = grad.
        let m = free.len();
        let step = loop {
            let mut a = DMatrix::<f64>::zeros(m, m);
            for (i, &v) in free.iter().enumerate() {
                for (j, &u) in free.iter().enumerate() {
                    a[(i, j)] = -hess[(v, u)];
                }
                a[(i, i)] += lambda;
            }
            let b = DVector::from_iterator(m, free.iter().map(|&v| grad[v]));
            if let Some(ch) = Cholesky::new(a) {
                break ch.solve(&b);
            }
            lambda *= 10.0;
            if lambda > 1e16 {
                return Err(Error::Numerical(
                    "likelihood Hessian could not be stabilized".into(),
                ));
            }
        };

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let mut q_new = q.clone();
            for (k, &v) in free.iter().enumerate() {
                q_new[v] += t * step[k];
            }
            let psi_new = psi_value(&q_new, counts, model)?;
            if psi_new >= psi_cur {
                q = q_new;
                psi_cur = psi_new;
                accepted = true;
                lambda = (lambda / 10.0).max(opts.damping);
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            lambda *= 10.0;
            if lambda > 1e16 {
                break;
            }
        }
    }
    if !converged {
        let (grad, _) = ml_derivatives(&q, counts, model)?;
        grad_inf = free.iter().map(|&v| grad[v].abs()).fold(0.0, f64::max);
    }

    Ok(QualityEstimate {
        q_hat: q,
        reference,
        diagnostics: SolveDiagnostics {
            residual_norm: grad_inf,
            iterations,
            converged,
            clamped_edges: 0,
        },
    })
}

/// Per-edge estimation errors against known true qualities: `y` is the
/// error on the preference probability (always in [-1, 1]), `z` the error
/// on the distance estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeErrors {
    pub y: f64,
    pub z: f64,
}

/// Computes per-edge errors of the estimates against a known quality
/// vector; only meaningful in simulation studies.
pub fn simulation_diagnostics(
    estimates: &EdgeEstimates,
    q_true: &[f64],
    model: PreferenceModel,
) -> Result<BTreeMap<Edge, EdgeErrors>> {
    if q_true.len() != estimates.n() {
        return Err(Error::Data(format!(
            "quality vector has {} entries for {} objects",
            q_true.len(),
            estimates.n()
        )));
    }
    let mut out = BTreeMap::new();
    for (e, est) in estimates.iter() {
        let d = q_true[e.hi()] - q_true[e.lo()];
        let p = model.preference_prob(d)?;
        out.insert(
            e,
            EdgeErrors {
                y: est.p_hat - p,
                z: est.d_hat - d,
            },
        );
    }
    Ok(out)
}

/// Objects ordered by descending estimated quality, ties broken by lower
/// object index.
pub fn rank_from_qualities(q_hat: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..q_hat.len()).collect();
    order.sort_by(|&a, &b| {
        q_hat[b]
            .partial_cmp(&q_hat[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order
}
