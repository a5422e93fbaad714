//! Command-line interface: `simulate`, `adaptive`, `estimate`, `analyze`,
//! `ingest`, `rank-real`.
//!
//! Every command writes CSV to `--out` (or stdout) and is deterministic
//! given `--seed`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{mse_bound, walk_analysis};
use crate::error::{Error, Result};
use crate::experiments::{
    sweep, AdaptiveOptions, Algo, Budget, ExperimentConfig, QualitySpec, SharedEdgePolicy,
};
use crate::graphs::{unit_weights, GraphSpec};
use crate::io;
use crate::models::PreferenceModel;

#[derive(Parser)]
#[command(
    name = "pairrank",
    about = "Rank objects from noisy pairwise comparisons",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Master seed for all randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker model: thurstone or btl.
    #[arg(long, global = true)]
    model: Option<String>,

    /// Noise scale of the thurstone model.
    #[arg(long, global = true)]
    sigma: Option<f64>,

    /// Clamp parameter for empirical preference rates.
    #[arg(long, global = true)]
    chi: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo sweep of ranking error versus comparison budget.
    Simulate(SimulateArgs),
    /// Two-stage adaptive sweep: estimate, connect quality-neighbors,
    /// re-estimate on the union.
    Adaptive(AdaptiveArgs),
    /// Estimate qualities from a comparison-counts CSV.
    Estimate(EstimateArgs),
    /// Random-walk diagnostics of a comparison graph.
    Analyze(AnalyzeArgs),
    /// Convert match scores into comparison counts.
    Ingest(IngestArgs),
    /// Rank teams from match scores and compare with final standings.
    RankReal(RankRealArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Flat key=value file mirroring these flags; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of objects.
    #[arg(long)]
    n: Option<usize>,
    /// Quality layout: equally-spaced or uniform.
    #[arg(long)]
    qualities: Option<String>,
    /// Graph family: regular, complete, star, wheel, hub, or file:<path>.
    #[arg(long)]
    graph: Option<String>,
    /// Degree for regular graphs.
    #[arg(long)]
    degree: Option<usize>,
    /// Hub count for hub graphs.
    #[arg(long)]
    hubs: Option<usize>,
    /// Cluster degree cap for hub graphs.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Star center (1-based).
    #[arg(long)]
    center: Option<usize>,
    /// Comma-separated budgets per object (C/N).
    #[arg(long)]
    budgets: Option<String>,
    /// Comma-separated per-edge budgets, overriding --budgets.
    #[arg(long)]
    budget_w: Option<String>,
    /// Quality-gap threshold for the error indicator.
    #[arg(long)]
    eps: Option<f64>,
    /// Target error probability: reports the interpolated budget reaching
    /// it on stderr.
    #[arg(long)]
    delta: Option<f64>,
    /// Trials per budget point.
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated algorithms: ls, wls, ml.
    #[arg(long)]
    algos: Option<String>,
    /// Reference object (1-based); defaults to the last.
    #[arg(long)]
    reference: Option<usize>,
    /// Also write per-trial metric rows to this path.
    #[arg(long)]
    per_trial: Option<PathBuf>,
}

#[derive(Args)]
struct AdaptiveArgs {
    /// Number of objects.
    #[arg(long, default_value_t = 50)]
    n: usize,
    /// Degree of the random regular stage-1 graph.
    #[arg(long, default_value_t = 6)]
    rho1: usize,
    /// Quality-nearest neighbors per node in stage 2.
    #[arg(long, default_value_t = 6)]
    rho2: usize,
    /// Comma-separated stage-1 workers per edge, one sweep point each.
    #[arg(long, default_value = "16,32,64,128")]
    stage_w: String,
    /// Stage-2 workers per edge per point; defaults to the stage-1 values.
    #[arg(long)]
    stage2_w: Option<String>,
    /// Shared-edge treatment: accumulate, reuse or fresh.
    #[arg(long, default_value = "accumulate", conflicts_with = "fresh_stage2")]
    stage2_shared: String,
    /// Shorthand for --stage2-shared fresh.
    #[arg(long, default_value_t = false)]
    fresh_stage2: bool,
    /// Quality layout: equally-spaced or uniform.
    #[arg(long, default_value = "equally-spaced")]
    qualities: String,
    #[arg(long, default_value_t = 0.04)]
    eps: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Comma-separated algorithms: ls, wls, ml.
    #[arg(long, default_value = "wls")]
    algos: String,
    /// Reference object (1-based); defaults to the last.
    #[arg(long)]
    reference: Option<usize>,
}

#[derive(Args)]
struct EstimateArgs {
    /// Comparison counts CSV (header i,j,w,k).
    #[arg(long)]
    counts: PathBuf,
    /// Estimator: ls, wls or ml.
    #[arg(long, default_value = "wls")]
    algo: String,
    /// Reference object (1-based); defaults to the last.
    #[arg(long)]
    reference: Option<usize>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Graph CSV (header i,j[,w_ij]).
    #[arg(long)]
    graph: PathBuf,
    /// Reference object (1-based); defaults to the last.
    #[arg(long)]
    reference: Option<usize>,
    /// Workers per edge entering the error-bound value.
    #[arg(long, default_value_t = 1)]
    workers: u64,
    /// Leading constant of the bound.
    #[arg(long, default_value_t = 1.0)]
    bound_constant: f64,
}

#[derive(Args)]
struct IngestArgs {
    /// Fixture CSV (header home,away,home_goals,away_goals).
    #[arg(long)]
    matches: PathBuf,
    /// Preferences per goal scored.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Baseline preferences per pairing side.
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Also write the index-to-team mapping to this path.
    #[arg(long)]
    teams: Option<PathBuf>,
}

#[derive(Args)]
struct RankRealArgs {
    /// Fixture CSV (header home,away,home_goals,away_goals).
    #[arg(long)]
    matches: PathBuf,
    /// Standings file: one team per line, best first.
    #[arg(long)]
    standings: PathBuf,
    /// Estimator: ls, wls or ml.
    #[arg(long, default_value = "wls")]
    algo: String,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
}

impl Cli {
    pub fn run(self) -> Result<()> {
        let globals = Globals {
            seed: self.seed,
            out: self.out,
            model: self.model,
            sigma: self.sigma,
            chi: self.chi,
        };
        match self.command {
            Command::Simulate(args) => simulate(args, globals),
            Command::Adaptive(args) => adaptive(args, globals),
            Command::Estimate(args) => estimate(args, globals),
            Command::Analyze(args) => analyze(args, globals),
            Command::Ingest(args) => ingest(args, globals),
            Command::RankReal(args) => rank_real(args, globals),
        }
    }
}

struct Globals {
    seed: Option<u64>,
    out: Option<PathBuf>,
    model: Option<String>,
    sigma: Option<f64>,
    chi: Option<f64>,
}

impl Globals {
    fn model(&self) -> Result<PreferenceModel> {
        let name = self.model.as_deref().unwrap_or("thurstone");
        match name.to_ascii_lowercase().as_str() {
            "thurstone" => PreferenceModel::thurstone(self.sigma.unwrap_or(0.4)),
            "btl" => {
                if self.sigma.is_some() {
                    return Err(Error::Config(
                        "--sigma only applies to the thurstone model".into(),
                    ));
                }
                Ok(PreferenceModel::btl())
            }
            other => Err(Error::Config(format!(
                "unknown model '{other}' (expected thurstone or btl)"
            ))),
        }
    }

    fn chi(&self) -> f64 {
        self.chi.unwrap_or(1e-4)
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    fn emit(&self, content: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, content)?;
                Ok(())
            }
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Error::Config(format!("invalid {what} '{tok}'")))
        })
        .collect()
}

fn parse_algos(s: &str) -> Result<Vec<Algo>> {
    s.split(',').map(|tok| Algo::parse(tok.trim())).collect()
}

fn parse_qualities(s: &str) -> Result<QualitySpec> {
    match s.to_ascii_lowercase().as_str() {
        "equally-spaced" => Ok(QualitySpec::EquallySpaced),
        "uniform" => Ok(QualitySpec::UniformRandom),
        other => Err(Error::Config(format!(
            "unknown quality layout '{other}' (expected equally-spaced or uniform)"
        ))),
    }
}

/// 1-based reference flag to internal index.
fn resolve_reference(reference: Option<usize>, n: usize) -> Result<usize> {
    match reference {
        None => Ok(n - 1),
        Some(0) => Err(Error::Config(
            "reference objects are numbered from 1".into(),
        )),
        Some(r) => Ok(r - 1),
    }
}

struct GraphFlags {
    degree: Option<usize>,
    hubs: Option<usize>,
    max_degree: Option<usize>,
    center: Option<usize>,
}

fn parse_graph_spec(kind: &str, n: usize, flags: &GraphFlags) -> Result<GraphSpec> {
    if let Some(path) = kind.strip_prefix("file:") {
        let (g, _) = io::read_graph_csv(Path::new(path))?;
        if g.n() != n {
            return Err(Error::Config(format!(
                "graph file covers {} objects but --n is {n}",
                g.n()
            )));
        }
        return Ok(GraphSpec::FromEdges {
            n,
            edges: g.edges().to_vec(),
        });
    }
    match kind.to_ascii_lowercase().as_str() {
        "regular" => Ok(GraphSpec::RandomRegular {
            n,
            degree: flags.degree.unwrap_or(6),
        }),
        "complete" => Ok(GraphSpec::Complete { n }),
        "star" => Ok(GraphSpec::Star {
            n,
            center: match flags.center {
                None => n - 1,
                Some(0) => return Err(Error::Config("star centers are numbered from 1".into())),
                Some(c) => c - 1,
            },
        }),
        "wheel" => Ok(GraphSpec::Wheel { n }),
        "hub" => Ok(GraphSpec::Hub {
            n,
            hubs: flags.hubs.unwrap_or(2),
            max_degree: flags.max_degree.unwrap_or(3),
        }),
        other => Err(Error::Config(format!(
            "unknown graph family '{other}' (expected regular, complete, star, wheel, hub or file:<path>)"
        ))),
    }
}

/// Flat key=value config file mirroring the simulate flags.
fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Data(format!(
                "{}:{}: expected key=value, got '{line}'",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn config_get<T: std::str::FromStr>(
    cfg: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>> {
    match cfg.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("config key '{key}' has invalid value '{v}'"))),
    }
}

fn simulate(args: SimulateArgs, globals: Globals) -> Result<()> {
    let file_cfg = match &args.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let n: usize = args.n.or(config_get(&file_cfg, "n")?).unwrap_or(50);
    if n < 2 {
        return Err(Error::Config("need at least 2 objects".into()));
    }
    let quality = parse_qualities(
        &args
            .qualities
            .or_else(|| file_cfg.get("qualities").cloned())
            .unwrap_or_else(|| "equally-spaced".into()),
    )?;
    let graph_kind = args
        .graph
        .or_else(|| file_cfg.get("graph").cloned())
        .unwrap_or_else(|| "regular".into());
    let flags = GraphFlags {
        degree: args.degree.or(config_get(&file_cfg, "degree")?),
        hubs: args.hubs.or(config_get(&file_cfg, "hubs")?),
        max_degree: args.max_degree.or(config_get(&file_cfg, "max-degree")?),
        center: args.center.or(config_get(&file_cfg, "center")?),
    };
    let graph = parse_graph_spec(&graph_kind, n, &flags)?;

    let budgets: Vec<Budget> = match args.budget_w.or_else(|| file_cfg.get("budget-w").cloned()) {
        Some(list) => parse_list::<u64>(&list, "per-edge budget")?
            .into_iter()
            .map(Budget::PerEdge)
            .collect(),
        None => {
            let list = args
                .budgets
                .or_else(|| file_cfg.get("budgets").cloned())
                .unwrap_or_else(|| "50,100,200,400".into());
            parse_list::<f64>(&list, "per-object budget")?
                .into_iter()
                .map(Budget::PerObject)
                .collect()
        }
    };

    let globals = Globals {
        seed: globals.seed.or(config_get(&file_cfg, "seed")?),
        model: globals.model.or_else(|| file_cfg.get("model").cloned()),
        sigma: globals.sigma.or(config_get(&file_cfg, "sigma")?),
        chi: globals.chi.or(config_get(&file_cfg, "chi")?),
        out: globals
            .out
            .or_else(|| file_cfg.get("out").map(PathBuf::from)),
    };

    let cfg = ExperimentConfig {
        n,
        quality,
        model: globals.model()?,
        graph,
        budget: budgets[0],
        eps: args.eps.or(config_get(&file_cfg, "eps")?).unwrap_or(0.04),
        delta: args
            .delta
            .or(config_get(&file_cfg, "delta")?)
            .unwrap_or(0.1),
        trials: args
            .trials
            .or(config_get(&file_cfg, "trials")?)
            .unwrap_or(1000),
        seed: globals.seed(),
        algos: parse_algos(
            &args
                .algos
                .or_else(|| file_cfg.get("algos").cloned())
                .unwrap_or_else(|| "ls,wls,ml".into()),
        )?,
        chi: globals.chi(),
        reference: Some(resolve_reference(
            args.reference.or(config_get(&file_cfg, "reference")?),
            n,
        )?),
        adaptive: None,
    };

    let result = sweep(&cfg, &budgets)?;
    if let Some(path) = args
        .per_trial
        .or_else(|| file_cfg.get("per-trial").map(PathBuf::from))
    {
        std::fs::write(&path, io::write_trial_csv(&result.records, n))?;
    }
    for &algo in &cfg.algos {
        match result.budget_to_reach(algo, cfg.delta) {
            Some(budget) => eprintln!(
                "{}: error {} reached at budget {budget:.1} per object",
                algo.name(),
                cfg.delta
            ),
            None => eprintln!(
                "{}: error {} not reached on the swept budgets",
                algo.name(),
                cfg.delta
            ),
        }
    }
    globals.emit(&io::write_curve_csv(&result.points))
}

fn adaptive(args: AdaptiveArgs, globals: Globals) -> Result<()> {
    let stage1: Vec<u64> = parse_list(&args.stage_w, "stage-1 budget")?;
    let stage2: Vec<u64> = match &args.stage2_w {
        Some(list) => {
            let parsed: Vec<u64> = parse_list(list, "stage-2 budget")?;
            if parsed.len() != stage1.len() {
                return Err(Error::Config(format!(
                    "--stage2-w lists {} budgets for {} stage-1 points",
                    parsed.len(),
                    stage1.len()
                )));
            }
            parsed
        }
        None => stage1.clone(),
    };

    let shared = if args.fresh_stage2 {
        SharedEdgePolicy::Fresh
    } else {
        SharedEdgePolicy::parse(&args.stage2_shared)?
    };
    let base = ExperimentConfig {
        n: args.n,
        quality: parse_qualities(&args.qualities)?,
        model: globals.model()?,
        graph: GraphSpec::RandomRegular {
            n: args.n,
            degree: args.rho1,
        },
        budget: Budget::PerEdge(1),
        eps: args.eps,
        delta: 0.1,
        trials: args.trials,
        seed: globals.seed(),
        algos: parse_algos(&args.algos)?,
        chi: globals.chi(),
        reference: Some(resolve_reference(args.reference, args.n)?),
        adaptive: None,
    };

    let mut rows = Vec::new();
    for (point, (&w1, &w2)) in stage1.iter().zip(&stage2).enumerate() {
        let cfg = ExperimentConfig {
            budget: Budget::PerEdge(w1),
            seed: base.seed.wrapping_add((point as u64) << 32),
            adaptive: Some(AdaptiveOptions {
                rho1: args.rho1,
                rho2: args.rho2,
                stage2_workers: Some(w2),
                shared,
            }),
            ..base.clone()
        };
        let result = sweep(&cfg, &[cfg.budget])?;
        for p in result.points {
            rows.push((w1, w2, p));
        }
    }
    globals.emit(&io::write_adaptive_csv(&rows))
}

fn estimate(args: EstimateArgs, globals: Globals) -> Result<()> {
    let counts = io::read_counts_csv(&args.counts)?;
    let graph = counts.graph()?;
    let reference = resolve_reference(args.reference, counts.n())?;
    let estimate = crate::experiments::estimate_with(
        Algo::parse(&args.algo)?,
        &graph,
        &counts,
        globals.model()?,
        globals.chi(),
        reference,
    )?;
    globals.emit(&io::write_estimate_csv(&estimate))
}

fn analyze(args: AnalyzeArgs, globals: Globals) -> Result<()> {
    let (graph, weights) = io::read_graph_csv(&args.graph)?;
    let weights = weights.unwrap_or_else(|| unit_weights(&graph));
    let reference = resolve_reference(args.reference, graph.n())?;
    let wa = walk_analysis(&graph, &weights, reference)?;
    let bound = mse_bound(&wa, args.workers, args.bound_constant)?;
    let mut out =
        String::from("node,theta_row_sum,lambda_c_max,inf_norm_m_inv,rho_inf,mse_bound\n");
    for v in 0..graph.n() {
        use std::fmt::Write as _;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            v + 1,
            wa.theta_row_sum(v),
            wa.lambda_c_max,
            wa.inf_norm_m_inv,
            wa.rho_inf,
            bound
        );
    }
    globals.emit(&out)
}

fn ingest(args: IngestArgs, globals: Globals) -> Result<()> {
    let records = io::load_matches(&args.matches)?;
    let league = io::matches_to_counts(&records, args.alpha, args.beta)?;
    if !league.graph.is_connected() {
        eprintln!(
            "warning: comparison graph is disconnected ({} components); \
             rank-real will restrict to the largest",
            league.graph.components().len()
        );
    }
    if league.dropped_edges > 0 {
        eprintln!(
            "warning: {} pairings produced zero comparisons and were dropped",
            league.dropped_edges
        );
    }
    if let Some(path) = &args.teams {
        let mut teams_csv = String::from("index,team\n");
        for (i, t) in league.teams.iter().enumerate() {
            use std::fmt::Write as _;
            let _ = writeln!(teams_csv, "{},{}", i + 1, t);
        }
        std::fs::write(path, teams_csv)?;
    }
    globals.emit(&io::write_counts_csv(&league.counts))
}

fn rank_real(args: RankRealArgs, globals: Globals) -> Result<()> {
    let records = io::load_matches(&args.matches)?;
    let league = io::matches_to_counts(&records, args.alpha, args.beta)?;
    let standings = io::load_standings(&args.standings)?;
    let report = io::rank_real(
        &league,
        globals.model()?,
        Algo::parse(&args.algo)?,
        globals.chi(),
        &standings,
    )?;
    if !report.excluded.is_empty() {
        eprintln!(
            "warning: {} teams outside the largest component were not ranked: {}",
            report.excluded.len(),
            report.excluded.join(", ")
        );
    }
    use std::fmt::Write as _;
    let mut out = String::from("rank,team,q_hat\n");
    for (pos, (team, q)) in report.order.iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", pos + 1, team, q);
    }
    let _ = writeln!(out, "kendall_tau,{},", report.kendall);
    globals.emit(&out)
}
