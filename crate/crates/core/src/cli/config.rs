use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::assembly::Backend;

#[derive(Debug, Error, PartialEq)]
#[error("config line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

/// How rankings are produced in an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Fair(Backend),
    EpsilonGreedy,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "eps-greedy" => Ok(Method::EpsilonGreedy),
            other => other.parse().map(Method::Fair).map_err(|_| {
                format!("unknown backend {other:?} (expected dp, walk or eps-greedy)")
            }),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Fair(b) => write!(f, "{b}"),
            Method::EpsilonGreedy => f.write_str("eps-greedy"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset: PathBuf,
    pub group_column: String,
    pub score_column: String,
    /// Labels placed after all other groups, in this order.
    pub protected: Vec<String>,
    pub k: usize,
    pub eta: f64,
    /// Explicit bounds replacing the proportional ones.
    pub lower: Option<Vec<usize>>,
    pub upper: Option<Vec<usize>>,
    pub method: Method,
    pub epsilon: f64,
    /// Checkpoint spacing for prefix constraints; `None` means flat.
    pub prefix_block: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub tv_delta: f64,
    pub output: PathBuf,
    /// Prefix lengths reported in the curve and nDCG files.
    pub checkpoints: Option<Vec<usize>>,
    pub timing: bool,
    pub timing_runs: usize,
}

const KEYS: &[&str] = &[
    "dataset",
    "group_column",
    "score_column",
    "protected",
    "k",
    "eta",
    "lower",
    "upper",
    "backend",
    "epsilon",
    "prefix_block",
    "samples",
    "seed",
    "tv_delta",
    "output",
    "checkpoints",
    "timing",
    "timing_runs",
];

fn list<T: FromStr>(value: &str) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<T>()
                .map_err(|_| format!("bad list entry {:?}", v.trim()))
        })
        .collect()
}

fn scalar<T: FromStr>(value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse {value:?}"))
}

impl ExperimentConfig {
    /// Parses `key = value` lines; `#` starts a comment. Relative paths are
    /// resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let mut cfg = Self {
            dataset: PathBuf::new(),
            group_column: "group".into(),
            score_column: "score".into(),
            protected: Vec::new(),
            k: 0,
            eta: 0.1,
            lower: None,
            upper: None,
            method: Method::Fair(Backend::Dp),
            epsilon: 0.3,
            prefix_block: None,
            samples: 1000,
            seed: 0,
            tv_delta: 0.05,
            output: PathBuf::new(),
            checkpoints: None,
            timing: true,
            timing_runs: 5,
        };
        let mut seen = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| ConfigError { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got {content:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(err(format!("unknown key {key:?}")));
            }
            if seen.contains(&key) {
                return Err(err(format!("duplicate key {key:?}")));
            }
            seen.push(key);
            let resolve = |v: &str| {
                let p = PathBuf::from(v);
                if p.is_relative() {
                    base.join(p)
                } else {
                    p
                }
            };
            match key {
                "dataset" => cfg.dataset = resolve(value),
                "group_column" => cfg.group_column = value.into(),
                "score_column" => cfg.score_column = value.into(),
                "protected" => {
                    cfg.protected = value.split(',').map(|s| s.trim().to_owned()).collect()
                }
                "k" => cfg.k = scalar(value).map_err(err)?,
                "eta" => cfg.eta = scalar(value).map_err(err)?,
                "lower" => cfg.lower = Some(list(value).map_err(err)?),
                "upper" => cfg.upper = Some(list(value).map_err(err)?),
                "backend" => cfg.method = value.parse().map_err(err)?,
                "epsilon" => cfg.epsilon = scalar(value).map_err(err)?,
                "prefix_block" => cfg.prefix_block = Some(scalar(value).map_err(err)?),
                "samples" => cfg.samples = scalar(value).map_err(err)?,
                "seed" => cfg.seed = scalar(value).map_err(err)?,
                "tv_delta" => cfg.tv_delta = scalar(value).map_err(err)?,
                "output" => cfg.output = resolve(value),
                "checkpoints" => cfg.checkpoints = Some(list(value).map_err(err)?),
                "timing" => cfg.timing = scalar(value).map_err(err)?,
                "timing_runs" => cfg.timing_runs = scalar(value).map_err(err)?,
                _ => unreachable!("key list checked above"),
            }
        }
        let end = text.lines().count().max(1);
        let err = |message: &str| {
            Err(ConfigError {
                line: end,
                message: message.into(),
            })
        };
        for required in ["dataset", "k", "output"] {
            if !seen.contains(&required) {
                return err(&format!("missing required key {required:?}"));
            }
        }
        if cfg.k == 0 {
            return err("k must be positive");
        }
        if !(0.0..1.0).contains(&cfg.eta) {
            return err("eta must lie in [0, 1)");
        }
        if cfg.samples == 0 {
            return err("samples must be at least 1");
        }
        if !(0.0..=1.0).contains(&cfg.epsilon) {
            return err("epsilon must lie in [0, 1]");
        }
        if cfg.lower.is_some() != cfg.upper.is_some() {
            return err("lower and upper must be given together");
        }
        if cfg.prefix_block == Some(0) {
            return err("prefix_block must be positive");
        }
        if cfg.timing_runs == 0 {
            return err("timing_runs must be at least 1");
        }
        if let Some(c) = &cfg.checkpoints {
            if c.iter().any(|&i| i == 0 || i > cfg.k) {
                return err("checkpoints must lie in 1..=k");
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, super::CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| super::CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(Self::parse(&text, path.parent().unwrap_or(Path::new(".")))?)
    }

    /// Report checkpoints: the configured ones, or five evenly spaced.
    pub fn report_checkpoints(&self) -> Vec<usize> {
        self.checkpoints.clone().unwrap_or_else(|| {
            let mut c: Vec<usize> = (1..=5).map(|m| (m * self.k / 5).max(1)).collect();
            c.dedup();
            c
        })
    }

    /// Canonical `key = value` echo, one line per key.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut s = String::new();
        let mut put = |k: &str, v: String| writeln!(s, "{k} = {v}").expect("write to string");
        put("dataset", self.dataset.display().to_string());
        put("group_column", self.group_column.clone());
        put("score_column", self.score_column.clone());
        if !self.protected.is_empty() {
            put("protected", self.protected.join(","));
        }
        put("k", self.k.to_string());
        put("eta", self.eta.to_string());
        if let (Some(l), Some(u)) = (&self.lower, &self.upper) {
            put("lower", join(l));
            put("upper", join(u));
        }
        put("backend", self.method.to_string());
        put("epsilon", self.epsilon.to_string());
        if let Some(b) = self.prefix_block {
            put("prefix_block", b.to_string());
        }
        put("samples", self.samples.to_string());
        put("seed", self.seed.to_string());
        put("tv_delta", self.tv_delta.to_string());
        put("output", self.output.display().to_string());
        put("checkpoints", join(&self.report_checkpoints()));
        put("timing", self.timing.to_string());
        put("timing_runs", self.timing_runs.to_string());
        s
    }
}
