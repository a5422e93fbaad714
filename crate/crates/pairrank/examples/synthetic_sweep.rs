//! A small error-probability sweep: three estimators, four budgets.
//!
//! The full-size experiment lives behind `pairrank simulate`; this is the
//! same machinery at a fraction of the trial count.
//!
//! ```bash
//! cargo run --release --example synthetic_sweep
//! ```

use pairrank::experiments::{sweep, Algo, Budget, ExperimentConfig, QualitySpec};
use pairrank::graphs::GraphSpec;
use pairrank::models::PreferenceModel;

fn main() -> pairrank::Result<()> {
    let n = 50;
    let cfg = ExperimentConfig {
        n,
        quality: QualitySpec::EquallySpaced,
        model: PreferenceModel::thurstone(0.4)?,
        graph: GraphSpec::RandomRegular { n, degree: 6 },
        budget: Budget::PerObject(50.0),
        eps: 0.04,
        delta: 0.1,
        trials: 200,
        seed: 2024,
        algos: vec![Algo::Ls, Algo::Wls, Algo::Ml],
        chi: 1e-4,
        reference: None,
        adaptive: None,
    };
    let budgets: Vec<Budget> = [50.0, 100.0, 200.0, 400.0]
        .into_iter()
        .map(Budget::PerObject)
        .collect();

    let result = sweep(&cfg, &budgets)?;
    println!(
        "{:>5} {:>8} {:>12} {:>10} {:>12}",
        "algo", "C/N", "error_prob", "stderr", "mse_aligned"
    );
    for p in &result.points {
        println!(
            "{:>5} {:>8.0} {:>12.4} {:>10.4} {:>12.5}",
            p.algo.name(),
            p.budget_per_object,
            p.error_prob,
            p.stderr,
            p.mse_aligned_mean
        );
    }
    println!(
        "\n({} trials per point; raise for smoother curves)",
        cfg.trials
    );
    Ok(())
}
