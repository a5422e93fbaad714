//! File formats and the match-score ingestion path.
//!
//! Everything on disk is plain CSV with 1-based object indices and edges
//! in canonical `i > j` orientation. Team names in fixture files must not
//! contain commas.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::estimators::{rank_from_qualities, ComparisonCounts, QualityEstimate};
use crate::experiments::{Algo, CurvePoint, TrialRecord};
use crate::graphs::{ComparisonGraph, Edge, EdgeWeights};
use crate::metrics::kendall_tau;
use crate::models::PreferenceModel;

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(text.lines().map(|l| l.trim().to_string()).collect())
}

fn split_row<'a>(line: &'a str, want: usize, path: &Path, lineno: usize) -> Result<Vec<&'a str>> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    if fields.len() != want {
        return Err(Error::Data(format!(
            "{}:{}: expected {want} fields, found {}",
            path.display(),
            lineno,
            fields.len()
        )));
    }
    Ok(fields)
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str, path: &Path, lineno: usize) -> Result<T> {
    s.parse().map_err(|_| {
        Error::Data(format!(
            "{}:{}: invalid {what} '{s}'",
            path.display(),
            lineno
        ))
    })
}

/// Reads a graph CSV with header `i,j[,w_ij]` (1-based, `i > j`). Returns
/// the graph and the per-edge weights when the third column is present.
pub fn read_graph_csv(path: &Path) -> Result<(ComparisonGraph, Option<EdgeWeights>)> {
    let lines = read_lines(path)?;
    let mut rows = lines.iter().enumerate().filter(|(_, l)| !l.is_empty());
    let (_, header) = rows
        .next()
        .ok_or_else(|| Error::Data(format!("{}: empty file", path.display())))?;
    let has_weights = match header.replace(' ', "").as_str() {
        "i,j" => false,
        "i,j,w_ij" => true,
        other => {
            return Err(Error::Data(format!(
                "{}: unexpected header '{other}' (want 'i,j' or 'i,j,w_ij')",
                path.display()
            )))
        }
    };
    let mut edges = Vec::new();
    let mut weights = EdgeWeights::new();
    let mut n = 0usize;
    for (lineno, line) in rows {
        let fields = split_row(line, if has_weights { 3 } else { 2 }, path, lineno + 1)?;
        let i: usize = parse_num(fields[0], "object index", path, lineno + 1)?;
        let j: usize = parse_num(fields[1], "object index", path, lineno + 1)?;
        if i <= j || j == 0 {
            return Err(Error::Data(format!(
                "{}:{}: edges must satisfy i > j >= 1, got ({i}, {j})",
                path.display(),
                lineno + 1
            )));
        }
        let e = Edge::new(i - 1, j - 1)?;
        if has_weights {
            let w: f64 = parse_num(fields[2], "weight", path, lineno + 1)?;
            weights.insert(e, w);
        }
        edges.push(e);
        n = n.max(i);
    }
    let g = ComparisonGraph::from_edges(n, edges)?;
    Ok((g, if has_weights { Some(weights) } else { None }))
}

pub fn write_graph_csv(g: &ComparisonGraph, weights: Option<&EdgeWeights>) -> String {
    let mut out = String::new();
    match weights {
        Some(w) => {
            out.push_str("i,j,w_ij\n");
            for e in g.edges() {
                let _ = writeln!(out, "{},{},{}", e.hi() + 1, e.lo() + 1, w[e]);
            }
        }
        None => {
            out.push_str("i,j\n");
            for e in g.edges() {
                let _ = writeln!(out, "{},{}", e.hi() + 1, e.lo() + 1);
            }
        }
    }
    out
}

/// Reads a counts CSV with header `i,j,w,k` (1-based, `i > j`, `k` wins
/// for `i`). Duplicate edges are a data error.
pub fn read_counts_csv(path: &Path) -> Result<ComparisonCounts> {
    let lines = read_lines(path)?;
    let mut rows = lines.iter().enumerate().filter(|(_, l)| !l.is_empty());
    let (_, header) = rows
        .next()
        .ok_or_else(|| Error::Data(format!("{}: empty file", path.display())))?;
    if header.replace(' ', "") != "i,j,w,k" {
        return Err(Error::Data(format!(
            "{}: unexpected header '{header}' (want 'i,j,w,k')",
            path.display()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut entries = Vec::new();
    let mut n = 0usize;
    for (lineno, line) in rows {
        let fields = split_row(line, 4, path, lineno + 1)?;
        let i: usize = parse_num(fields[0], "object index", path, lineno + 1)?;
        let j: usize = parse_num(fields[1], "object index", path, lineno + 1)?;
        let w: u64 = parse_num(fields[2], "comparison count", path, lineno + 1)?;
        let k: u64 = parse_num(fields[3], "win count", path, lineno + 1)?;
        if i <= j || j == 0 {
            return Err(Error::Data(format!(
                "{}:{}: edges must satisfy i > j >= 1, got ({i}, {j})",
                path.display(),
                lineno + 1
            )));
        }
        if !seen.insert((i, j)) {
            return Err(Error::Data(format!(
                "{}:{}: duplicate edge ({i}, {j})",
                path.display(),
                lineno + 1
            )));
        }
        entries.push((i - 1, j - 1, k as f64, w as f64));
        n = n.max(i);
    }
    let mut counts = ComparisonCounts::new(n.max(2))?;
    for (i, j, k, w) in entries {
        counts.record(i, j, k, w)?;
    }
    Ok(counts)
}

pub fn write_counts_csv(counts: &ComparisonCounts) -> String {
    let mut out = String::from("i,j,w,k\n");
    for (e, c) in counts.iter() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            e.hi() + 1,
            e.lo() + 1,
            c.total,
            c.wins_hi
        );
    }
    out
}

/// Estimate CSV: `object,q_hat,rank` with rank 1 as the best object.
pub fn write_estimate_csv(estimate: &QualityEstimate) -> String {
    let order = rank_from_qualities(&estimate.q_hat);
    let mut rank_of = vec![0usize; order.len()];
    for (rank, &obj) in order.iter().enumerate() {
        rank_of[obj] = rank + 1;
    }
    let mut out = String::from("object,q_hat,rank\n");
    for (obj, q) in estimate.q_hat.iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", obj + 1, q, rank_of[obj]);
    }
    out
}

/// Sweep curve CSV: `algo,budget_per_object,error_prob,stderr,mse_aligned`.
pub fn write_curve_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("algo,budget_per_object,error_prob,stderr,mse_aligned\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            p.algo.name(),
            p.budget_per_object,
            p.error_prob,
            p.stderr,
            p.mse_aligned_mean
        );
    }
    out
}

/// Adaptive curve CSV; records the per-stage budgets alongside the
/// realized total. Columns:
/// `algo,stage1_w,stage2_w,budget_per_object,error_prob,stderr,mse_aligned`.
pub fn write_adaptive_csv(rows: &[(u64, u64, CurvePoint)]) -> String {
    let mut out =
        String::from("algo,stage1_w,stage2_w,budget_per_object,error_prob,stderr,mse_aligned\n");
    for (w1, w2, p) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.algo.name(),
            w1,
            w2,
            p.mean_spent_per_object,
            p.error_prob,
            p.stderr,
            p.mse_aligned_mean
        );
    }
    out
}

/// Per-trial metrics CSV:
/// `trial,algo,budget_per_object,eps_error,kendall,mse_aligned,mse_raw`.
pub fn write_trial_csv(records: &[TrialRecord], n: usize) -> String {
    let mut out =
        String::from("trial,algo,budget_per_object,eps_error,kendall,mse_aligned,mse_raw\n");
    for r in records {
        let o = r.outcome;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.trial,
            o.algo.name(),
            o.budget_spent as f64 / n as f64,
            o.eps_error as u8,
            o.kendall,
            o.mse_aligned,
            o.mse_raw
        );
    }
    out
}

/// A pair of teams with goals aggregated over their (up to two) fixtures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchRecord {
    pub team_a: String,
    pub team_b: String,
    pub goals_a: u64,
    pub goals_b: u64,
}

/// Loads a fixture CSV with header `home,away,home_goals,away_goals` and
/// aggregates the two legs of every pairing. A pairing may appear at most
/// twice and each orientation at most once.
pub fn load_matches(path: &Path) -> Result<Vec<MatchRecord>> {
    let lines = read_lines(path)?;
    let mut rows = lines.iter().enumerate().filter(|(_, l)| !l.is_empty());
    let (_, header) = rows
        .next()
        .ok_or_else(|| Error::Data(format!("{}: empty file", path.display())))?;
    if header.replace(' ', "") != "home,away,home_goals,away_goals" {
        return Err(Error::Data(format!(
            "{}: unexpected header '{header}' (want 'home,away,home_goals,away_goals')",
            path.display()
        )));
    }
    let mut agg: BTreeMap<(String, String), MatchRecord> = BTreeMap::new();
    let mut seen_oriented = std::collections::BTreeSet::new();
    for (lineno, line) in rows {
        let fields = split_row(line, 4, path, lineno + 1)?;
        let home = fields[0].to_string();
        let away = fields[1].to_string();
        if home.is_empty() || away.is_empty() {
            return Err(Error::Data(format!(
                "{}:{}: empty team name",
                path.display(),
                lineno + 1
            )));
        }
        if home == away {
            return Err(Error::Data(format!(
                "{}:{}: team '{home}' cannot play itself",
                path.display(),
                lineno + 1
            )));
        }
        let hg: u64 = parse_num(fields[2], "goal count", path, lineno + 1)?;
        let ag: u64 = parse_num(fields[3], "goal count", path, lineno + 1)?;
        if !seen_oriented.insert((home.clone(), away.clone())) {
            return Err(Error::Data(format!(
                "{}:{}: duplicate fixture {home} vs {away}",
                path.display(),
                lineno + 1
            )));
        }
        let key = if home < away {
            (home.clone(), away.clone())
        } else {
            (away.clone(), home.clone())
        };
        let entry = agg.entry(key.clone()).or_insert(MatchRecord {
            team_a: key.0,
            team_b: key.1,
            goals_a: 0,
            goals_b: 0,
        });
        if home == entry.team_a {
            entry.goals_a += hg;
            entry.goals_b += ag;
        } else {
            entry.goals_a += ag;
            entry.goals_b += hg;
        }
    }
    Ok(agg.into_values().collect())
}

/// Comparison data derived from match scores.
#[derive(Debug, Clone)]
pub struct LeagueData {
    pub counts: ComparisonCounts,
    pub graph: ComparisonGraph,
    /// Index-to-name mapping, lexicographically sorted.
    pub teams: Vec<String>,
    /// Pairings dropped because they produced zero comparisons.
    pub dropped_edges: usize,
}

fn round_half_up(v: f64) -> u64 {
    (v + 0.5).floor() as u64
}

/// Converts aggregated scores into comparison counts: a team scoring `x`
/// goals against an opponent earns `round(alpha x + beta)` preferences;
/// the pair's comparison total is the two preference counts summed.
/// Zero-total pairs are omitted.
pub fn matches_to_counts(records: &[MatchRecord], alpha: f64, beta: f64) -> Result<LeagueData> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Config(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::Config(format!(
            "beta must be non-negative, got {beta}"
        )));
    }
    let mut teams: Vec<String> = Vec::new();
    for r in records {
        teams.push(r.team_a.clone());
        teams.push(r.team_b.clone());
    }
    teams.sort();
    teams.dedup();
    if teams.len() < 2 {
        return Err(Error::Data("need at least two teams".into()));
    }
    let index: BTreeMap<&str, usize> = teams
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_str(), i))
        .collect();
    let mut counts = ComparisonCounts::new(teams.len())?;
    let mut dropped = 0usize;
    for r in records {
        let ka = round_half_up(alpha * r.goals_a as f64 + beta);
        let kb = round_half_up(alpha * r.goals_b as f64 + beta);
        let w = ka + kb;
        if w == 0 {
            dropped += 1;
            continue;
        }
        counts.record(
            index[r.team_a.as_str()],
            index[r.team_b.as_str()],
            ka as f64,
            w as f64,
        )?;
    }
    if counts.is_empty() {
        return Err(Error::Data(
            "every pairing produced zero comparisons".into(),
        ));
    }
    let graph = counts.graph()?;
    Ok(LeagueData {
        counts,
        graph,
        teams,
        dropped_edges: dropped,
    })
}

/// Loads a standings file: one team name per line, best first.
pub fn load_standings(path: &Path) -> Result<Vec<String>> {
    let names: Vec<String> = read_lines(path)?
        .into_iter()
        .filter(|l| !l.is_empty())
        .collect();
    let mut unique = names.clone();
    unique.sort();
    unique.dedup();
    if unique.len() != names.len() {
        return Err(Error::Data(format!(
            "{}: standings contain duplicate teams",
            path.display()
        )));
    }
    if names.is_empty() {
        return Err(Error::Data(format!("{}: empty standings", path.display())));
    }
    Ok(names)
}

/// Outcome of ranking real match data against reference standings.
#[derive(Debug, Clone)]
pub struct RankReport {
    /// Teams with their estimated qualities, best first.
    pub order: Vec<(String, f64)>,
    pub kendall: u64,
    pub estimate: QualityEstimate,
    /// Teams outside the largest connected component, excluded from the
    /// ranking (non-empty only when the comparison graph is disconnected).
    pub excluded: Vec<String>,
}

/// Ranks teams from league data and scores the result against the final
/// standings. Disconnected data is restricted to its largest component,
/// with the excluded teams reported.
pub fn rank_real(
    league: &LeagueData,
    model: PreferenceModel,
    algo: Algo,
    chi: f64,
    standings: &[String],
) -> Result<RankReport> {
    let mut stand_sorted: Vec<&String> = standings.iter().collect();
    stand_sorted.sort();
    let teams_match = stand_sorted.len() == league.teams.len()
        && stand_sorted
            .iter()
            .zip(league.teams.iter())
            .all(|(a, b)| a.as_str() == b.as_str());
    if !teams_match {
        return Err(Error::Data(
            "standings do not list exactly the teams present in the match data".into(),
        ));
    }

    let (counts, kept): (ComparisonCounts, Vec<usize>) = if league.graph.is_connected() {
        (league.counts.clone(), (0..league.teams.len()).collect())
    } else {
        let comps = league.graph.components();
        let kept = comps[0].clone();
        (league.counts.restrict(&kept)?, kept)
    };
    let kept_names: Vec<String> = kept.iter().map(|&i| league.teams[i].clone()).collect();
    let excluded: Vec<String> = league
        .teams
        .iter()
        .filter(|t| !kept_names.contains(t))
        .cloned()
        .collect();

    let graph = counts.graph()?;
    let reference = counts.n() - 1;
    let estimate = crate::experiments::estimate_with(algo, &graph, &counts, model, chi, reference)?;
    let order_idx = rank_from_qualities(&estimate.q_hat);
    let order: Vec<(String, f64)> = order_idx
        .iter()
        .map(|&i| (kept_names[i].clone(), estimate.q_hat[i]))
        .collect();

    // Kendall distance against the standings, restricted to ranked teams.
    let true_order: Vec<usize> = standings
        .iter()
        .filter_map(|t| kept_names.iter().position(|k| k == t))
        .collect();
    let kendall = kendall_tau(&order_idx, &true_order)?;

    Ok(RankReport {
        order,
        kendall,
        estimate,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::Algo;
    use std::io::Write;
    use tempfile::NamedTempFile;

    fn tmp(content: &str) -> NamedTempFile {
        let mut f = NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn counts_roundtrip() {
        let mut counts = ComparisonCounts::new(4).unwrap();
        counts.record(2, 0, 7.0, 12.0).unwrap();
        counts.record(3, 1, 4.0, 9.0).unwrap();
        let csv = write_counts_csv(&counts);
        let f = tmp(&csv);
        let back = read_counts_csv(f.path()).unwrap();
        assert_eq!(back, counts);
    }

    #[test]
    fn counts_csv_rejects_bad_rows() {
        for bad in [
            "i,j,w,k\n1,2,10,5\n",          // i <= j
            "i,j,w,k\n3,1,10,5\n3,1,8,2\n", // duplicate
            "i,j,w,k\n3,1,10,eleven\n",     // non-numeric
            "i,j\n2,1\n",                   // wrong header
        ] {
            let f = tmp(bad);
            assert!(read_counts_csv(f.path()).is_err(), "accepted: {bad:?}");
        }
    }

    #[test]
    fn graph_csv_roundtrip_with_weights() {
        let g = ComparisonGraph::from_edges(
            3,
            vec![Edge::new(1, 0).unwrap(), Edge::new(2, 1).unwrap()],
        )
        .unwrap();
        let mut w = EdgeWeights::new();
        w.insert(Edge::new(1, 0).unwrap(), 2.5);
        w.insert(Edge::new(2, 1).unwrap(), 1.0);
        let csv = write_graph_csv(&g, Some(&w));
        let f = tmp(&csv);
        let (g2, w2) = read_graph_csv(f.path()).unwrap();
        assert_eq!(g2, g);
        assert_eq!(w2.unwrap(), w);
    }

    #[test]
    fn match_aggregation_sums_both_legs() {
        let f = tmp("home,away,home_goals,away_goals\nA,B,2,0\nB,A,1,1\n");
        let recs = load_matches(f.path()).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!((r.team_a.as_str(), r.team_b.as_str()), ("A", "B"));
        assert_eq!((r.goals_a, r.goals_b), (3, 1));
    }

    #[test]
    fn single_leg_is_accepted() {
        let f = tmp("home,away,home_goals,away_goals\nA,B,2,0\n");
        let recs = load_matches(f.path()).unwrap();
        assert_eq!(recs[0].goals_a, 2);
        assert_eq!(recs[0].goals_b, 0);
    }

    #[test]
    fn duplicate_fixture_is_rejected() {
        let f = tmp("home,away,home_goals,away_goals\nA,B,2,0\nA,B,1,1\n");
        assert!(load_matches(f.path()).is_err());
        let g = tmp("home,away,home_goals,away_goals\nA,B,2,0\nB,A,1,1\nA,B,3,3\n");
        assert!(load_matches(g.path()).is_err());
    }

    #[test]
    fn ingestion_is_row_order_independent() {
        let a = tmp("home,away,home_goals,away_goals\nA,B,2,0\nC,A,1,2\nB,C,0,0\nB,A,1,1\n");
        let b = tmp("home,away,home_goals,away_goals\nB,A,1,1\nB,C,0,0\nA,B,2,0\nC,A,1,2\n");
        let la = matches_to_counts(&load_matches(a.path()).unwrap(), 1.0, 1.0).unwrap();
        let lb = matches_to_counts(&load_matches(b.path()).unwrap(), 1.0, 1.0).unwrap();
        assert_eq!(la.counts, lb.counts);
        assert_eq!(la.teams, lb.teams);
    }

    #[test]
    fn goal_conversion_formula() {
        let recs = vec![MatchRecord {
            team_a: "A".into(),
            team_b: "B".into(),
            goals_a: 3,
            goals_b: 1,
        }];
        let league = matches_to_counts(&recs, 1.0, 1.0).unwrap();
        let c = league.counts.get(Edge::new(1, 0).unwrap()).unwrap();
        // K for B (index 1, the hi end) is 1*1+1 = 2; total is 4+2.
        assert_eq!(c.total, 6.0);
        assert_eq!(c.wins_hi, 2.0);
    }

    #[test]
    fn goalless_pair_with_zero_beta_is_dropped() {
        let recs = vec![
            MatchRecord {
                team_a: "A".into(),
                team_b: "B".into(),
                goals_a: 0,
                goals_b: 0,
            },
            MatchRecord {
                team_a: "A".into(),
                team_b: "C".into(),
                goals_a: 1,
                goals_b: 2,
            },
            MatchRecord {
                team_a: "B".into(),
                team_b: "C".into(),
                goals_a: 2,
                goals_b: 2,
            },
        ];
        let league = matches_to_counts(&recs, 1.0, 0.0).unwrap();
        assert_eq!(league.dropped_edges, 1);
        assert_eq!(league.graph.edge_count(), 2);
        // With beta > 0 every pairing stays.
        let full = matches_to_counts(&recs, 1.0, 1.0).unwrap();
        assert_eq!(full.dropped_edges, 0);
        assert_eq!(full.graph.edge_count(), 3);
    }

    #[test]
    fn positive_beta_keeps_every_pairing_of_a_full_league() {
        let mut records = Vec::new();
        for i in 0..20 {
            for j in (i + 1)..20 {
                records.push(MatchRecord {
                    team_a: format!("T{i:02}"),
                    team_b: format!("T{j:02}"),
                    goals_a: 0,
                    goals_b: 0,
                });
            }
        }
        let league = matches_to_counts(&records, 1.0, 1.0).unwrap();
        assert_eq!(league.graph.edge_count(), 190);
        assert!(league.graph.is_connected());
    }

    #[test]
    fn fractional_counts_round_half_up() {
        let recs = vec![MatchRecord {
            team_a: "A".into(),
            team_b: "B".into(),
            goals_a: 1,
            goals_b: 0,
        }];
        let league = matches_to_counts(&recs, 0.5, 0.25).unwrap();
        let c = league.counts.get(Edge::new(1, 0).unwrap()).unwrap();
        // A gets round(0.75) = 1, B gets round(0.25) = 0.
        assert_eq!(c.total, 1.0);
        assert_eq!(c.wins_hi, 0.0);
    }

    #[test]
    fn transitive_league_ranks_perfectly() {
        // Better teams always score more: the estimate must reproduce the
        // standings exactly.
        let teams = ["Ath", "Bor", "Cel", "Din", "Esp"];
        let mut rows = String::from("home,away,home_goals,away_goals\n");
        for i in 0..teams.len() {
            for j in 0..teams.len() {
                if i == j {
                    continue;
                }
                // Team with the lower index is stronger.
                let (hg, ag) = if i < j { (3, 0) } else { (0, 3) };
                rows.push_str(&format!("{},{},{},{}\n", teams[i], teams[j], hg, ag));
            }
        }
        let f = tmp(&rows);
        let league = matches_to_counts(&load_matches(f.path()).unwrap(), 1.0, 1.0).unwrap();
        let standings: Vec<String> = teams.iter().map(|t| t.to_string()).collect();
        let report = rank_real(
            &league,
            PreferenceModel::thurstone(0.4).unwrap(),
            Algo::Wls,
            1e-4,
            &standings,
        )
        .unwrap();
        assert_eq!(report.kendall, 0);
        let names: Vec<String> = report.order.iter().map(|(t, _)| t.clone()).collect();
        assert_eq!(names, standings);
        assert!(report.excluded.is_empty());
    }

    #[test]
    fn reversed_standings_give_maximal_distance() {
        let teams = ["Ath", "Bor", "Cel", "Din", "Esp"];
        let mut rows = String::from("home,away,home_goals,away_goals\n");
        for i in 0..teams.len() {
            for j in 0..teams.len() {
                if i != j {
                    let (hg, ag) = if i < j { (3, 0) } else { (0, 3) };
                    rows.push_str(&format!("{},{},{},{}\n", teams[i], teams[j], hg, ag));
                }
            }
        }
        let f = tmp(&rows);
        let league = matches_to_counts(&load_matches(f.path()).unwrap(), 1.0, 1.0).unwrap();
        let reversed: Vec<String> = teams.iter().rev().map(|t| t.to_string()).collect();
        let report = rank_real(
            &league,
            PreferenceModel::thurstone(0.4).unwrap(),
            Algo::Wls,
            1e-4,
            &reversed,
        )
        .unwrap();
        assert_eq!(report.kendall, (5 * 4 / 2) as u64);
    }

    #[test]
    fn disconnected_league_restricts_to_largest_component() {
        // Two clusters with no cross scores at beta = 0.
        let rows = "home,away,home_goals,away_goals\n\
                    A,B,2,1\nB,C,2,1\nA,C,2,1\nD,E,1,0\nA,D,0,0\n";
        let f = tmp(rows);
        let league = matches_to_counts(&load_matches(f.path()).unwrap(), 1.0, 0.0).unwrap();
        assert!(!league.graph.is_connected());
        let standings: Vec<String> = ["A", "B", "C", "D", "E"]
            .iter()
            .map(|t| t.to_string())
            .collect();
        let report =
            rank_real(&league, PreferenceModel::btl(), Algo::Wls, 1e-4, &standings).unwrap();
        assert_eq!(report.excluded, vec!["D".to_string(), "E".to_string()]);
        assert_eq!(report.order.len(), 3);
    }

    #[test]
    fn estimate_csv_lists_ranks() {
        let est = QualityEstimate {
            q_hat: vec![0.5, -0.2, 0.0],
            reference: 2,
            diagnostics: crate::estimators::SolveDiagnostics {
                residual_norm: 0.0,
                iterations: 0,
                converged: true,
                clamped_edges: 0,
            },
        };
        let csv = write_estimate_csv(&est);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "object,q_hat,rank");
        assert_eq!(lines[1], "1,0.5,1");
        assert_eq!(lines[2], "2,-0.2,3");
        assert_eq!(lines[3], "3,0,2");
    }
}
