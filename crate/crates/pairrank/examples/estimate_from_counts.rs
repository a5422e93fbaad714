//! LS, WLS, and ML estimation on one synthetic set of comparison counts.
//!
//! ```bash
//! cargo run --example estimate_from_counts
//! ```

use pairrank::estimators::{rank_from_qualities, ComparisonCounts};
use pairrank::experiments::{estimate_with, Algo};
use pairrank::graphs::{build_graph, GraphSpec};
use pairrank::models::PreferenceModel;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> pairrank::Result<()> {
    let n = 8;
    let model = PreferenceModel::thurstone(0.4)?;
    let mut rng = ChaCha12Rng::seed_from_u64(3);

    // True qualities and a sparse comparison design.
    let q_true: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
    let graph = build_graph(&GraphSpec::RandomRegular { n, degree: 3 }, &mut rng)?;

    // Forty comparisons per edge.
    let workers = 40u64;
    let mut counts = ComparisonCounts::new(n)?;
    for e in graph.edges() {
        let wins = model.sample_comparisons(q_true[e.hi()] - q_true[e.lo()], workers, &mut rng)?;
        counts.record(e.hi(), e.lo(), wins as f64, workers as f64)?;
    }

    println!(
        "{} objects, {} edges, {} comparisons per edge",
        n,
        graph.edge_count(),
        workers
    );
    println!("true qualities: {q_true:.3?}");
    for algo in [Algo::Ls, Algo::Wls, Algo::Ml] {
        let est = estimate_with(algo, &graph, &counts, model, 1e-4, n - 1)?;
        let order = rank_from_qualities(&est.q_hat);
        let ranked: Vec<usize> = order.iter().map(|&v| v + 1).collect();
        println!(
            "{:>3}: ranking (best first) {ranked:?}   converged: {}, clamped edges: {}",
            algo.name(),
            est.diagnostics.converged,
            est.diagnostics.clamped_edges
        );
    }
    Ok(())
}
