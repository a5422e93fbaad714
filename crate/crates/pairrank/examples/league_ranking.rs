//! Ranking teams from match scores.
//!
//! Goals convert to pairwise preferences (`K = alpha * goals + beta` per
//! side), the season becomes a comparison graph with per-pair budgets,
//! and the estimator ranks the teams. Here the "season" is synthetic and
//! perfectly transitive, so the recovered table matches the standings.
//!
//! With a real season file, use the CLI instead:
//!
//! ```bash
//! pairrank rank-real --matches season.csv --standings standings.txt \
//!     --model thurstone --sigma 0.4
//! ```

use pairrank::experiments::Algo;
use pairrank::io::{matches_to_counts, rank_real, MatchRecord};
use pairrank::models::PreferenceModel;

fn main() -> pairrank::Result<()> {
    let teams = [
        "Arsenal",
        "Brentford",
        "Chelsea",
        "Everton",
        "Fulham",
        "Liverpool",
    ];
    // Strength follows the listing order; stronger teams score more in
    // both legs of every pairing.
    let mut records = Vec::new();
    for i in 0..teams.len() {
        for j in (i + 1)..teams.len() {
            records.push(MatchRecord {
                team_a: teams[i].min(teams[j]).to_string(),
                team_b: teams[i].max(teams[j]).to_string(),
                goals_a: if teams[i] < teams[j] { 4 } else { 1 },
                goals_b: if teams[i] < teams[j] { 1 } else { 4 },
            });
        }
    }

    let league = matches_to_counts(&records, 1.0, 1.0)?;
    println!(
        "{} teams, {} pairings, {} comparisons total",
        league.teams.len(),
        league.graph.edge_count(),
        league.counts.total_comparisons()
    );

    let standings: Vec<String> = teams.iter().map(|t| t.to_string()).collect();
    for model in [PreferenceModel::thurstone(0.4)?, PreferenceModel::btl()] {
        let report = rank_real(&league, model, Algo::Wls, 1e-4, &standings)?;
        println!("\n{model:?}: kendall tau distance = {}", report.kendall);
        for (pos, (team, q)) in report.order.iter().enumerate() {
            println!("  {}. {team:<10} q = {q:+.4}", pos + 1);
        }
    }
    Ok(())
}
