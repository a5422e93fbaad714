//! Monte-Carlo harness: synthetic trial generation, budget accounting,
//! error-probability curves, and the two-stage adaptive scheme.
//!
//! Every trial derives its own ChaCha streams from (master seed, trial
//! index), so trials are independent, order-insensitive, and identical
//! whether executed serially or in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimators::{
    estimate_distances, ls_solve, ml_estimate, rank_from_qualities, wls_weights, ComparisonCounts,
    MlOptions, QualityEstimate,
};
use crate::graphs::{build_graph, knn_quality_graph, ComparisonGraph, GraphSpec};
use crate::metrics::{aligned_mse, epsilon_error, kendall_tau, raw_mse};
use crate::models::PreferenceModel;

/// How object qualities are drawn in a synthetic trial.
#[derive(Debug, Clone, PartialEq)]
pub enum QualitySpec {
    /// `q_i = i / n`, equally spaced in `[0, 1)`.
    EquallySpaced,
    /// Independent uniform draws from `[0, 1)`.
    UniformRandom,
    Explicit(Vec<f64>),
}

/// Comparison budget of a sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    /// Workers per edge.
    PerEdge(u64),
    /// Total comparisons per object, `C / N`; resolved to
    /// `W = floor(C / |E|)` once the graph is built.
    PerObject(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Ls,
    Wls,
    Ml,
}

impl Algo {
    pub fn name(&self) -> &'static str {
        match self {
            Algo::Ls => "ls",
            Algo::Wls => "wls",
            Algo::Ml => "ml",
        }
    }

    pub fn parse(s: &str) -> Result<Algo> {
        match s.to_ascii_lowercase().as_str() {
            "ls" => Ok(Algo::Ls),
            "wls" => Ok(Algo::Wls),
            "ml" => Ok(Algo::Ml),
            other => Err(Error::Config(format!(
                "unknown algorithm '{other}' (expected ls, wls or ml)"
            ))),
        }
    }
}

/// What happens on edges that appear in both stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SharedEdgePolicy {
    /// Resample and add the stage-2 counts on top of stage 1.
    #[default]
    Accumulate,
    /// Keep the stage-1 counts; only genuinely new edges are sampled.
    Reuse,
    /// Resample and discard the stage-1 counts (their cost still counts).
    Fresh,
}

impl SharedEdgePolicy {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "accumulate" => Ok(SharedEdgePolicy::Accumulate),
            "reuse" => Ok(SharedEdgePolicy::Reuse),
            "fresh" => Ok(SharedEdgePolicy::Fresh),
            other => Err(Error::Config(format!(
                "unknown shared-edge policy '{other}' (expected accumulate, reuse or fresh)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SharedEdgePolicy::Accumulate => "accumulate",
            SharedEdgePolicy::Reuse => "reuse",
            SharedEdgePolicy::Fresh => "fresh",
        }
    }
}

/// Two-stage adaptive settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    /// Degree of the random regular stage-1 graph.
    pub rho1: usize,
    /// Each node connects to this many quality-nearest neighbors in stage 2.
    pub rho2: usize,
    /// Workers per stage-2 edge; defaults to the stage-1 budget.
    pub stage2_workers: Option<u64>,
    /// Treatment of edges sampled in both stages.
    pub shared: SharedEdgePolicy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub quality: QualitySpec,
    pub model: PreferenceModel,
    pub graph: GraphSpec,
    pub budget: Budget,
    /// Quality-gap threshold for the ranking error indicator.
    pub eps: f64,
    /// Target error probability for budget reporting; sweeps can be asked
    /// for the interpolated budget at which a curve first meets it.
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub algos: Vec<Algo>,
    pub chi: f64,
    /// Reference object; defaults to the last one.
    pub reference: Option<usize>,
    pub adaptive: Option<AdaptiveOptions>,
}

impl ExperimentConfig {
    pub fn reference(&self) -> usize {
        self.reference.unwrap_or(self.n - 1)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!(
                "need at least 2 objects, got {}",
                self.n
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("need at least one trial".into()));
        }
        if !(self.delta.is_finite() && (0.0..=1.0).contains(&self.delta)) {
            return Err(Error::Config(format!(
                "target error probability must lie in [0, 1], got {}",
                self.delta
            )));
        }
        if self.algos.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if self.reference() >= self.n {
            return Err(Error::Config(format!(
                "reference object {} out of range for {} objects",
                self.reference() + 1,
                self.n
            )));
        }
        if let Some(ad) = &self.adaptive {
            if ad.rho1 == 0 || ad.rho1 >= self.n || ad.rho2 >= self.n {
                return Err(Error::Config(format!(
                    "adaptive degrees (rho1 {}, rho2 {}) infeasible for {} objects",
                    ad.rho1, ad.rho2, self.n
                )));
            }
            if !matches!(self.budget, Budget::PerEdge(_)) {
                return Err(Error::Config(
                    "adaptive runs take a per-edge stage budget".into(),
                ));
            }
        }
        if let QualitySpec::Explicit(q) = &self.quality {
            if q.len() != self.n {
                return Err(Error::Config(format!(
                    "explicit qualities have {} entries for {} objects",
                    q.len(),
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// Stream channels: 0 draws the shared instance, 1 + algo index drives the
/// per-algorithm stage-2 sampling.
fn trial_rng(seed: u64, trial: u64, channel: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream((trial << 8) | channel);
    rng
}

pub fn draw_qualities(spec: &QualitySpec, n: usize, rng: &mut ChaCha12Rng) -> Result<Vec<f64>> {
    use rand::Rng;
    Ok(match spec {
        QualitySpec::EquallySpaced => (0..n).map(|i| i as f64 / n as f64).collect(),
        QualitySpec::UniformRandom => (0..n).map(|_| rng.random_range(0.0..1.0)).collect(),
        QualitySpec::Explicit(q) => {
            if q.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain("explicit qualities must be finite".into()));
            }
            q.clone()
        }
    })
}

/// Samples `workers` comparisons on every edge of `g`.
pub fn sample_counts(
    g: &ComparisonGraph,
    q: &[f64],
    model: PreferenceModel,
    workers: u64,
    rng: &mut ChaCha12Rng,
) -> Result<ComparisonCounts> {
    let mut counts = ComparisonCounts::new(g.n())?;
    for e in g.edges() {
        let delta = q[e.hi()] - q[e.lo()];
        let wins = model.sample_comparisons(delta, workers, rng)?;
        counts.record(e.hi(), e.lo(), wins as f64, workers as f64)?;
    }
    Ok(counts)
}

/// Runs one estimator on the given counts.
pub fn estimate_with(
    algo: Algo,
    g: &ComparisonGraph,
    counts: &ComparisonCounts,
    model: PreferenceModel,
    chi: f64,
    reference: usize,
) -> Result<QualityEstimate> {
    match algo {
        Algo::Ls => {
            let est = estimate_distances(counts, model, chi)?;
            ls_solve(g, &est, reference)
        }
        Algo::Wls => {
            let mut est = estimate_distances(counts, model, chi)?;
            wls_weights(&mut est);
            ls_solve(g, &est, reference)
        }
        Algo::Ml => {
            let mut est = estimate_distances(counts, model, chi)?;
            wls_weights(&mut est);
            let init = ls_solve(g, &est, reference)?;
            ml_estimate(
                counts,
                model,
                reference,
                Some(&init.q_hat),
                &MlOptions::default(),
            )
        }
    }
}

/// One synthetic instance: qualities, stage-1 graph, counts, budget.
struct Instance {
    q: Vec<f64>,
    graph: ComparisonGraph,
    counts: ComparisonCounts,
    workers: u64,
    spent: u64,
}

fn generate_instance(cfg: &ExperimentConfig, rng: &mut ChaCha12Rng) -> Result<Instance> {
    let q = draw_qualities(&cfg.quality, cfg.n, rng)?;
    let spec = match &cfg.adaptive {
        Some(ad) => GraphSpec::RandomRegular {
            n: cfg.n,
            degree: ad.rho1,
        },
        None => cfg.graph.clone(),
    };
    if spec.n() != cfg.n {
        return Err(Error::Config(format!(
            "graph spec is for {} objects but the experiment has {}",
            spec.n(),
            cfg.n
        )));
    }
    let graph = build_graph(&spec, rng)?;
    let workers = match cfg.budget {
        Budget::PerEdge(w) => w,
        Budget::PerObject(per_object) => {
            let total = per_object * cfg.n as f64;
            (total / graph.edge_count() as f64).floor() as u64
        }
    };
    if workers == 0 {
        return Err(Error::Config(
            "budget resolves to zero comparisons per edge".into(),
        ));
    }
    let counts = sample_counts(&graph, &q, cfg.model, workers, rng)?;
    let spent = workers * graph.edge_count() as u64;
    Ok(Instance {
        q,
        graph,
        counts,
        workers,
        spent,
    })
}

/// Outcome of one estimator on one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub algo: Algo,
    pub eps_error: bool,
    pub kendall: u64,
    pub mse_aligned: f64,
    pub mse_raw: f64,
    pub budget_spent: u64,
}

fn score(
    cfg: &ExperimentConfig,
    algo: Algo,
    q_true: &[f64],
    estimate: &QualityEstimate,
    spent: u64,
) -> Result<TrialOutcome> {
    let order = rank_from_qualities(&estimate.q_hat);
    let true_order = rank_from_qualities(q_true);
    Ok(TrialOutcome {
        algo,
        eps_error: epsilon_error(q_true, &order, cfg.eps)?,
        kendall: kendall_tau(&order, &true_order)?,
        mse_aligned: aligned_mse(&estimate.q_hat, q_true)?,
        mse_raw: raw_mse(&estimate.q_hat, q_true, estimate.reference)?,
        budget_spent: spent,
    })
}

/// Result of a two-stage adaptive run.
#[derive(Debug, Clone)]
pub struct TwoStageResult {
    pub estimate: QualityEstimate,
    pub stage1_estimate: QualityEstimate,
    /// Total comparisons across both stages.
    pub budget_spent: u64,
}

/// Runs the two-stage scheme on a fresh instance: estimate on a random
/// regular graph, connect quality-neighbors, re-estimate on the union.
pub fn two_stage(
    cfg: &ExperimentConfig,
    algo: Algo,
    rng: &mut ChaCha12Rng,
) -> Result<TwoStageResult> {
    cfg.validate()?;
    if cfg.adaptive.is_none() {
        return Err(Error::Config("two_stage needs adaptive options".into()));
    }
    let mut stage2_rng = rng.clone();
    stage2_rng.set_stream(rng.get_stream().wrapping_add(1));
    let instance = generate_instance(cfg, rng)?;
    two_stage_from(cfg, algo, &instance, &mut stage2_rng)
}

fn two_stage_from(
    cfg: &ExperimentConfig,
    algo: Algo,
    instance: &Instance,
    stage2_rng: &mut ChaCha12Rng,
) -> Result<TwoStageResult> {
    let ad = cfg
        .adaptive
        .expect("two_stage_from requires adaptive options");
    let reference = cfg.reference();
    let stage1_estimate = estimate_with(
        algo,
        &instance.graph,
        &instance.counts,
        cfg.model,
        cfg.chi,
        reference,
    )?;
    if ad.rho2 == 0 {
        // Degenerate second stage: nothing to add.
        return Ok(TwoStageResult {
            estimate: stage1_estimate.clone(),
            stage1_estimate,
            budget_spent: instance.spent,
        });
    }
    let w2 = ad.stage2_workers.unwrap_or(instance.workers);
    let g2 = knn_quality_graph(&stage1_estimate.q_hat, ad.rho2)?;
    let union = instance.graph.union(&g2)?;

    let mut counts = if ad.shared == SharedEdgePolicy::Fresh {
        // Shared edges keep only their stage-2 samples; stage-1 spending
        // still counts against the budget.
        let mut kept = ComparisonCounts::new(cfg.n)?;
        for (e, c) in instance.counts.iter() {
            if !g2.contains(e) {
                kept.record(e.hi(), e.lo(), c.wins_hi, c.total)?;
            }
        }
        kept
    } else {
        instance.counts.clone()
    };
    let mut spent = instance.spent;
    for e in g2.edges() {
        if ad.shared == SharedEdgePolicy::Reuse && instance.graph.contains(*e) {
            continue;
        }
        let delta = instance.q[e.hi()] - instance.q[e.lo()];
        let wins = cfg.model.sample_comparisons(delta, w2, stage2_rng)?;
        counts.record(e.hi(), e.lo(), wins as f64, w2 as f64)?;
        spent += w2;
    }

    let estimate = estimate_with(algo, &union, &counts, cfg.model, cfg.chi, reference)?;
    Ok(TwoStageResult {
        estimate,
        stage1_estimate,
        budget_spent: spent,
    })
}

/// Runs one trial (all configured algorithms on a shared instance) and
/// returns one outcome per algorithm, in the configured order.
pub fn run_trial(cfg: &ExperimentConfig, trial: u64) -> Result<Vec<TrialOutcome>> {
    cfg.validate()?;
    let mut instance_rng = trial_rng(cfg.seed, trial, 0);
    let instance = generate_instance(cfg, &mut instance_rng)?;
    let mut outcomes = Vec::with_capacity(cfg.algos.len());
    for (k, &algo) in cfg.algos.iter().enumerate() {
        let outcome = if cfg.adaptive.is_some() {
            let mut stage2_rng = trial_rng(cfg.seed, trial, 1 + k as u64);
            let ts = two_stage_from(cfg, algo, &instance, &mut stage2_rng)?;
            score(cfg, algo, &instance.q, &ts.estimate, ts.budget_spent)?
        } else {
            let est = estimate_with(
                algo,
                &instance.graph,
                &instance.counts,
                cfg.model,
                cfg.chi,
                cfg.reference(),
            )?;
            score(cfg, algo, &instance.q, &est, instance.spent)?
        };
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

/// Aggregated sweep point for one algorithm at one budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub algo: Algo,
    /// Nominal budget per object for per-object sweeps; otherwise the
    /// realized mean.
    pub budget_per_object: f64,
    /// Mean comparisons actually spent per object.
    pub mean_spent_per_object: f64,
    pub error_prob: f64,
    /// Binomial standard error of `error_prob`.
    pub stderr: f64,
    pub mse_aligned_mean: f64,
    pub mse_raw_mean: f64,
    pub trials: usize,
}

/// One retained per-trial record, for detailed CSV output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub point: usize,
    pub trial: u64,
    pub outcome: TrialOutcome,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub points: Vec<CurvePoint>,
    pub records: Vec<TrialRecord>,
}

impl SweepResult {
    /// Spent budget per object at which an algorithm's error curve first
    /// meets `level`, log-linearly interpolated between bracketing sweep
    /// points. None when the curve never crosses the level.
    pub fn budget_to_reach(&self, algo: Algo, level: f64) -> Option<f64> {
        let curve: Vec<(f64, f64)> = self
            .points
            .iter()
            .filter(|p| p.algo == algo)
            .map(|p| (p.mean_spent_per_object, p.error_prob))
            .collect();
        if let Some(&(b0, e0)) = curve.first() {
            if e0 <= level {
                return Some(b0);
            }
        }
        for pair in curve.windows(2) {
            let (b1, e1) = pair[0];
            let (b2, e2) = pair[1];
            if e1 > level && e2 <= level {
                if e2 > 0.0 && level > 0.0 {
                    let f = (e1.ln() - level.ln()) / (e1.ln() - e2.ln());
                    return Some(b1 * (b2 / b1).powf(f));
                }
                // A point at exactly zero error: interpolate linearly.
                let f = (e1 - level) / (e1 - e2);
                return Some(b1 + f * (b2 - b1));
            }
        }
        None
    }
}

/// Runs `cfg.trials` independent trials at every budget. Trials execute in
/// parallel; aggregation happens in trial order, so results match a serial
/// run bit for bit.
pub fn sweep(cfg: &ExperimentConfig, budgets: &[Budget]) -> Result<SweepResult> {
    cfg.validate()?;
    if budgets.is_empty() {
        return Err(Error::Config("no budget points given".into()));
    }
    let mut points = Vec::new();
    let mut records = Vec::new();
    for (p, &budget) in budgets.iter().enumerate() {
        let point_cfg = ExperimentConfig {
            budget,
            ..cfg.clone()
        };
        let base = (p * cfg.trials) as u64;
        let per_trial: Vec<Vec<TrialOutcome>> = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|t| run_trial(&point_cfg, base + t))
            .collect::<Result<Vec<_>>>()?;

        for (k, &algo) in cfg.algos.iter().enumerate() {
            let mut errors = 0usize;
            let mut mse_a = 0.0;
            let mut mse_r = 0.0;
            let mut spent = 0.0;
            for outcomes in &per_trial {
                let o = outcomes[k];
                errors += o.eps_error as usize;
                mse_a += o.mse_aligned;
                mse_r += o.mse_raw;
                spent += o.budget_spent as f64;
            }
            let t = cfg.trials as f64;
            let error_prob = errors as f64 / t;
            let mean_spent_per_object = spent / t / cfg.n as f64;
            points.push(CurvePoint {
                algo,
                budget_per_object: match budget {
                    Budget::PerObject(x) => x,
                    Budget::PerEdge(_) => mean_spent_per_object,
                },
                mean_spent_per_object,
                error_prob,
                stderr: (error_prob * (1.0 - error_prob) / t).sqrt(),
                mse_aligned_mean: mse_a / t,
                mse_raw_mean: mse_r / t,
                trials: cfg.trials,
            });
        }
        for (t, outcomes) in per_trial.iter().enumerate() {
            for o in outcomes {
                records.push(TrialRecord {
                    point: p,
                    trial: t as u64,
                    outcome: *o,
                });
            }
        }
    }
    Ok(SweepResult { points, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::PreferenceModel;

    fn base_cfg() -> ExperimentConfig {
        ExperimentConfig {
            n: 10,
            quality: QualitySpec::EquallySpaced,
            model: PreferenceModel::thurstone(0.4).unwrap(),
            graph: GraphSpec::RandomRegular { n: 10, degree: 4 },
            budget: Budget::PerEdge(20),
            eps: 0.04,
            delta: 0.1,
            trials: 4,
            seed: 99,
            algos: vec![Algo::Ls, Algo::Wls, Algo::Ml],
            chi: 1e-4,
            reference: None,
            adaptive: None,
        }
    }

    #[test]
    fn trials_are_deterministic_and_stateless() {
        let cfg = base_cfg();
        let a = run_trial(&cfg, 3).unwrap();
        let b = run_trial(&cfg, 3).unwrap();
        assert_eq!(a, b);
        let c = run_trial(&cfg, 4).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sweep_matches_individual_trials() {
        let cfg = base_cfg();
        let sw = sweep(&cfg, &[Budget::PerEdge(20)]).unwrap();
        let lone = run_trial(&cfg, 2).unwrap();
        let rec: Vec<_> = sw
            .records
            .iter()
            .filter(|r| r.trial == 2)
            .map(|r| r.outcome)
            .collect();
        assert_eq!(rec, lone);
    }

    #[test]
    fn budget_ledger_is_exact() {
        let cfg = base_cfg();
        // Single stage: every edge gets the per-edge budget.
        let outcomes = run_trial(&cfg, 0).unwrap();
        for o in &outcomes {
            assert_eq!(o.budget_spent, 20 * (10 * 4 / 2));
        }

        // Two stages: spending covers both graphs even when stage-1
        // counts are discarded on shared edges.
        for shared in [
            SharedEdgePolicy::Accumulate,
            SharedEdgePolicy::Reuse,
            SharedEdgePolicy::Fresh,
        ] {
            let mut ad_cfg = base_cfg();
            ad_cfg.adaptive = Some(AdaptiveOptions {
                rho1: 4,
                rho2: 3,
                stage2_workers: None,
                shared,
            });
            let mut rng = trial_rng(7, 0, 0);
            let ts = two_stage(&ad_cfg, Algo::Wls, &mut rng).unwrap();
            let e1 = 10 * 4 / 2;
            assert!(ts.budget_spent >= (e1 as u64) * 20);
            assert_eq!((ts.budget_spent - e1 as u64 * 20) % 20, 0);
        }
    }

    #[test]
    fn per_object_budget_resolves_to_floor() {
        let mut cfg = base_cfg();
        cfg.budget = Budget::PerObject(50.0);
        // C = 500 over 20 edges: 25 workers per edge.
        let outcomes = run_trial(&cfg, 0).unwrap();
        assert_eq!(outcomes[0].budget_spent, 25 * 20);

        cfg.budget = Budget::PerObject(0.5);
        assert!(run_trial(&cfg, 0).is_err());
    }

    #[test]
    fn huge_budget_recovers_the_ranking() {
        let mut cfg = base_cfg();
        cfg.n = 6;
        cfg.graph = GraphSpec::Complete { n: 6 };
        cfg.budget = Budget::PerEdge(1_000_000);
        cfg.trials = 5;
        cfg.algos = vec![Algo::Wls];
        let sw = sweep(&cfg, &[cfg.budget]).unwrap();
        assert_eq!(sw.points[0].error_prob, 0.0);
    }

    #[test]
    fn two_object_error_rate_matches_binomial() {
        // One edge, one worker: the better object loses with probability
        // 1 - F(|q1 - q0|).
        let model = PreferenceModel::btl();
        let cfg = ExperimentConfig {
            n: 2,
            quality: QualitySpec::Explicit(vec![0.0, 0.8]),
            model,
            graph: GraphSpec::Complete { n: 2 },
            budget: Budget::PerEdge(1),
            eps: 0.0,
            delta: 0.1,
            trials: 4000,
            seed: 5,
            algos: vec![Algo::Ls],
            chi: 1e-4,
            reference: None,
            adaptive: None,
        };
        let sw = sweep(&cfg, &[cfg.budget]).unwrap();
        let p_wrong = 1.0 - model.preference_prob(0.8).unwrap();
        let got = sw.points[0].error_prob;
        let se = (p_wrong * (1.0 - p_wrong) / 4000.0).sqrt();
        assert!(
            (got - p_wrong).abs() < 4.0 * se,
            "error rate {got} vs binomial {p_wrong}"
        );
    }

    #[test]
    fn rho2_zero_reduces_to_single_stage() {
        let mut cfg = base_cfg();
        cfg.algos = vec![Algo::Wls];
        cfg.adaptive = Some(AdaptiveOptions {
            rho1: 4,
            rho2: 0,
            stage2_workers: None,
            shared: SharedEdgePolicy::Accumulate,
        });
        let mut rng = trial_rng(cfg.seed, 0, 0);
        let ts = two_stage(&cfg, Algo::Wls, &mut rng).unwrap();
        assert_eq!(ts.estimate.q_hat, ts.stage1_estimate.q_hat);
        assert_eq!(ts.budget_spent, 20 * (10 * 4 / 2));
    }

    #[test]
    fn shared_edges_accumulate_counts() {
        let mut cfg = base_cfg();
        cfg.adaptive = Some(AdaptiveOptions {
            rho1: 4,
            rho2: 9, // complete second stage guarantees overlap
            stage2_workers: Some(13),
            shared: SharedEdgePolicy::Accumulate,
        });
        let mut instance_rng = trial_rng(cfg.seed, 0, 0);
        let instance = generate_instance(&cfg, &mut instance_rng).unwrap();
        let mut stage2_rng = trial_rng(cfg.seed, 0, 1);
        let ts = two_stage_from(&cfg, Algo::Wls, &instance, &mut stage2_rng).unwrap();
        // Stage-2 covered every pair, so spending is exact.
        let e1 = instance.graph.edge_count() as u64;
        let e2 = (cfg.n * (cfg.n - 1) / 2) as u64;
        assert_eq!(ts.budget_spent, e1 * 20 + e2 * 13);
    }

    #[test]
    fn single_trial_error_prob_is_degenerate() {
        let mut cfg = base_cfg();
        cfg.trials = 1;
        cfg.algos = vec![Algo::Ls];
        let sw = sweep(&cfg, &[Budget::PerEdge(3), Budget::PerEdge(5000)]).unwrap();
        for p in &sw.points {
            assert!(p.error_prob == 0.0 || p.error_prob == 1.0);
            assert_eq!(p.stderr, 0.0);
        }
    }

    #[test]
    fn adaptive_rejects_per_object_budgets() {
        let mut cfg = base_cfg();
        cfg.budget = Budget::PerObject(100.0);
        cfg.adaptive = Some(AdaptiveOptions {
            rho1: 4,
            rho2: 3,
            stage2_workers: None,
            shared: SharedEdgePolicy::Accumulate,
        });
        assert!(run_trial(&cfg, 0).is_err());
    }
}
