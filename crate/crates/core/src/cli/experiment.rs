use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, Method};
use super::constraints::build_constraints;
use super::dataset::{ingest, Dataset};
use super::CliError;
use crate::assembly::{assemble_ranking, sample_assignment, Backend, RepresentationSampler};
use crate::dp::CountTable;
use crate::error::{Error, Result};
use crate::eval::metrics::mean_std;
use crate::eval::{
    fair_epsilon_greedy, min_max_normalize, ndcg_at, representation_curve, SampleStatistics,
};
use crate::model::{representation_of, FairnessConstraints, Ranking};
use crate::prefix::{sample_prefix_fair_ranking, PrefixConstraints};
use crate::walk::WalkConfig;

/// Samples drawn sequentially from one RNG stream (and one walk chain).
pub const CHUNK: usize = 64;

/// RNG for stream `stream` of master seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Six significant digits, trailing zeros trimmed.
pub fn fmt6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{v:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

/// A resolved experiment: dataset loaded and constraints built.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub dataset: Dataset,
    pub constraints: FairnessConstraints,
    pub prefix: Option<PrefixConstraints>,
}

impl Experiment {
    pub fn prepare(config: &ExperimentConfig) -> std::result::Result<Self, CliError> {
        let dataset = ingest(
            &config.dataset,
            &config.group_column,
            &config.score_column,
            &config.protected,
        )?;
        if config.k > dataset.len() {
            return Err(Error::InvalidArgument(format!(
                "k = {} exceeds the dataset size {}",
                config.k,
                dataset.len()
            ))
            .into());
        }
        let constraints = match (&config.lower, &config.upper) {
            (Some(l), Some(u)) => {
                if l.len() != dataset.labels.len() || u.len() != dataset.labels.len() {
                    return Err(Error::InvalidArgument(format!(
                        "bounds list {} groups but the dataset has {}",
                        l.len(),
                        dataset.labels.len()
                    ))
                    .into());
                }
                FairnessConstraints::new(config.k, l.clone(), u.clone())?
            }
            _ => build_constraints(&dataset.proportions, config.k, config.eta)?,
        };
        let prefix = match config.prefix_block {
            Some(_) if config.lower.is_some() => {
                return Err(Error::InvalidArgument(
                    "prefix_block cannot be combined with explicit bounds".into(),
                )
                .into())
            }
            Some(block) => Some(PrefixConstraints::from_proportions(
                &dataset.proportions,
                config.k,
                config.eta,
                block,
            )?),
            None => None,
        };
        Ok(Self {
            config: config.clone(),
            dataset,
            constraints,
            prefix,
        })
    }

    pub fn walk_config(&self) -> WalkConfig {
        WalkConfig::with_tv_delta(self.config.tv_delta)
    }

    /// Draws `count` rankings in parallel; chunk `c` uses stream `c`, so the
    /// result does not depend on the thread count.
    pub fn sample_rankings(&self, count: usize) -> Result<Vec<Ranking>> {
        let cfg = self.walk_config();
        cfg.validate()?;
        let table = match (self.config.method, &self.prefix) {
            (Method::Fair(Backend::Dp), None) => Some(CountTable::build(&self.constraints)?),
            _ => None,
        };
        let chunks = count.div_ceil(CHUNK);
        let parts = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = stream_rng(self.config.seed, c as u64);
                let n = CHUNK.min(count - c * CHUNK);
                self.sample_chunk(n, table.as_ref(), &cfg, &mut rng)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.into_iter().flatten().collect())
    }

    fn sample_chunk(
        &self,
        n: usize,
        table: Option<&CountTable>,
        cfg: &WalkConfig,
        rng: &mut ChaCha8Rng,
    ) -> Result<Vec<Ranking>> {
        let in_group = &self.dataset.in_group;
        match (self.config.method, &self.prefix) {
            (Method::EpsilonGreedy, _) => (0..n)
                .map(|_| {
                    fair_epsilon_greedy(
                        self.config.k,
                        self.constraints.lower(),
                        self.config.epsilon,
                        in_group,
                        rng,
                    )
                })
                .collect(),
            (Method::Fair(backend), Some(pc)) => (0..n)
                .map(|_| sample_prefix_fair_ranking(pc, in_group, backend, cfg, rng))
                .collect(),
            (Method::Fair(backend), None) => {
                self.constraints.check_in_group(in_group)?;
                let mut walk = match table {
                    Some(_) => None,
                    None => Some(RepresentationSampler::new(
                        &self.constraints,
                        backend,
                        cfg,
                        rng,
                    )?),
                };
                (0..n)
                    .map(|_| {
                        let x = match (table, walk.as_mut()) {
                            (Some(t), _) => t.sample(rng),
                            (None, Some(w)) => w.sample(rng)?,
                            (None, None) => unreachable!("one sampler is always built"),
                        };
                        assemble_ranking(&sample_assignment(&x, rng), in_group)
                    })
                    .collect()
            }
        }
    }

    /// Index of the first sample breaking the constraints, if any.
    /// The greedy baseline is exempt.
    pub fn first_violation(&self, rankings: &[Ranking]) -> Option<usize> {
        if self.config.method == Method::EpsilonGreedy {
            return None;
        }
        rankings.iter().position(|r| {
            let y = r.assignment();
            !representation_of(&y, self.constraints.ell()).is_group_fair(&self.constraints)
                || self
                    .prefix
                    .as_ref()
                    .is_some_and(|pc| !pc.is_satisfied_by(&y))
        })
    }

    /// Mean seconds to build a sampler and draw one ranking.
    pub fn time_one_ranking(&self) -> Result<f64> {
        let runs = self.config.timing_runs;
        let start = Instant::now();
        for r in 0..runs {
            let mut rng = stream_rng(self.config.seed, u64::MAX - r as u64);
            let table = match (self.config.method, &self.prefix) {
                (Method::Fair(Backend::Dp), None) => Some(CountTable::build(&self.constraints)?),
                _ => None,
            };
            self.sample_chunk(1, table.as_ref(), &self.walk_config(), &mut rng)?;
        }
        Ok(start.elapsed().as_secs_f64() / runs as f64)
    }
}

/// Everything an experiment produced.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub experiment: Experiment,
    pub rankings: Vec<Ranking>,
    pub files: Vec<PathBuf>,
}

fn csv_file(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for row in rows {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

/// Renders the artifact files in memory.
pub fn render_artifacts(
    exp: &Experiment,
    rankings: &[Ranking],
    timing: Option<f64>,
) -> Result<Vec<(String, String)>> {
    let c = &exp.constraints;
    let (k, ell) = (c.k(), c.ell());
    let labels = &exp.dataset.labels;
    let checkpoints = exp.config.report_checkpoints();

    let mut curve = Vec::new();
    for j in 0..ell {
        for p in representation_curve(rankings, j, &checkpoints) {
            curve.push((p.checkpoint, j, p));
        }
    }
    curve.sort_by_key(|(i, j, _)| (*i, *j));
    let curve_rows = curve
        .iter()
        .map(|(i, j, p)| format!("{i},{},{},{}", labels[*j], fmt6(p.mean), fmt6(p.std)));

    let mut stats = SampleStatistics::new(k, ell);
    for r in rankings {
        stats.record(&r.assignment());
    }
    let mut fraction_rows = Vec::with_capacity(k * ell);
    for i in 1..=k {
        for (j, label) in labels.iter().enumerate() {
            fraction_rows.push(format!(
                "{i},{label},{},{},{}",
                fmt6(stats.rank_frequency(i, j)),
                fmt6(c.lower()[j] as f64 / k as f64),
                fmt6(c.upper()[j] as f64 / k as f64),
            ));
        }
    }

    let scores = min_max_normalize(&exp.dataset.scores);
    let mut ndcg_rows = Vec::new();
    for &i in &checkpoints {
        let values = rankings
            .iter()
            .map(|r| ndcg_at(r, &scores, i))
            .collect::<Result<Vec<_>>>()?;
        let (mean, std) = mean_std(&values);
        ndcg_rows.push(format!("{i},{},{}", fmt6(mean), fmt6(std)));
    }

    let mut files = vec![
        (
            "representation_curve.csv".to_owned(),
            csv_file("checkpoint,group,mean,std", curve_rows),
        ),
        (
            "fraction_of_rankings.csv".to_owned(),
            csv_file("rank,group,fraction,lower_bound,upper_bound", fraction_rows),
        ),
        (
            "ndcg.csv".to_owned(),
            csv_file("checkpoint,mean,std", ndcg_rows),
        ),
    ];
    if let Some(seconds) = timing {
        files.push((
            "timing.csv".to_owned(),
            csv_file(
                "backend,k,ell,mean_seconds",
                [format!("{},{k},{ell},{}", exp.config.method, fmt6(seconds))],
            ),
        ));
    }
    let mut manifest = String::new();
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    writeln!(manifest, "# fairrank {}", env!("CARGO_PKG_VERSION")).expect("write to string");
    writeln!(manifest, "# seed {}", exp.config.seed).expect("write to string");
    writeln!(manifest, "# groups {}", labels.join(",")).expect("write to string");
    writeln!(
        manifest,
        "# resolved lower {} upper {}",
        join(c.lower()),
        join(c.upper())
    )
    .expect("write to string");
    manifest.push_str(&exp.config.to_text());
    files.push(("manifest.txt".to_owned(), manifest));
    Ok(files)
}

/// Writes all files or none.
pub fn write_all(
    dir: &Path,
    files: &[(String, String)],
) -> std::result::Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (name, content) in files {
        let path = dir.join(name);
        if let Err(e) = std::fs::write(&path, content) {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            return Err(CliError::Io(format!("{}: {e}", path.display())));
        }
        written.push(path);
    }
    Ok(written)
}

pub fn run_experiment(
    config: &ExperimentConfig,
) -> std::result::Result<ExperimentOutcome, CliError> {
    let experiment = Experiment::prepare(config)?;
    let rankings = experiment.sample_rankings(config.samples)?;
    if let Some(sample) = experiment.first_violation(&rankings) {
        return Err(CliError::ExPost { sample });
    }
    let timing = if config.timing {
        Some(experiment.time_one_ranking()?)
    } else {
        None
    };
    let files = render_artifacts(&experiment, &rankings, timing)?;
    let files = write_all(&config.output, &files)?;
    Ok(ExperimentOutcome {
        experiment,
        rankings,
        files,
    })
}

/// `sample,rank,item,group` rows for every ranking.
pub fn render_sample_dump(rankings: &[Ranking], labels: &[String]) -> String {
    let mut s = String::from("sample,rank,item,group\n");
    for (n, r) in rankings.iter().enumerate() {
        for (i, e) in r.entries.iter().enumerate() {
            writeln!(s, "{},{},{},{}", n + 1, i + 1, e.item, labels[e.group])
                .expect("write to string");
        }
    }
    s
}
