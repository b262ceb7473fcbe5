use std::collections::{HashMap, HashSet};
use std::io::Read;
use std::path::Path;

use thiserror::Error;

use crate::model::InGroupRanking;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read dataset {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("unknown column {0:?}")]
    UnknownColumn(String),
    #[error("group {0:?} has no items")]
    EmptyGroup(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRecord {
    pub item_id: String,
    pub group: String,
    pub score: f64,
}

/// Items split into score-sorted in-group rankings.
#[derive(Debug, Clone)]
pub struct Dataset {
    /// Group labels; index `j` is group `j` everywhere else.
    pub labels: Vec<String>,
    pub in_group: Vec<InGroupRanking>,
    /// Share of items in each group.
    pub proportions: Vec<f64>,
    /// Raw scores by item id.
    pub scores: HashMap<String, f64>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn group_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Groups ordered by first appearance, except that `last` labels are
    /// moved to the end in the order given.
    pub fn from_records(
        records: Vec<DatasetRecord>,
        last: &[String],
    ) -> Result<Self, DatasetError> {
        let mut labels: Vec<String> = Vec::new();
        for r in &records {
            if !labels.contains(&r.group) {
                labels.push(r.group.clone());
            }
        }
        for label in last {
            let Some(pos) = labels.iter().position(|l| l == label) else {
                return Err(DatasetError::EmptyGroup(label.clone()));
            };
            let l = labels.remove(pos);
            labels.push(l);
        }
        let mut by_group: Vec<Vec<&DatasetRecord>> = vec![Vec::new(); labels.len()];
        for r in &records {
            let g = labels
                .iter()
                .position(|l| *l == r.group)
                .expect("label collected above");
            by_group[g].push(r);
        }
        let total = records.len() as f64;
        let proportions = by_group.iter().map(|g| g.len() as f64 / total).collect();
        let in_group = by_group
            .into_iter()
            .enumerate()
            .map(|(g, mut items)| {
                // stable: equal scores keep file order
                items.sort_by(|a, b| b.score.total_cmp(&a.score));
                InGroupRanking::new(g, items.into_iter().map(|r| r.item_id.clone()))
            })
            .collect();
        let scores = records.into_iter().map(|r| (r.item_id, r.score)).collect();
        Ok(Self {
            labels,
            in_group,
            proportions,
            scores,
        })
    }
}

/// Reads `id`, group and score columns from a headed CSV.
pub fn read_records<R: Read>(
    reader: R,
    group_column: &str,
    score_column: &str,
) -> Result<Vec<DatasetRecord>, DatasetError> {
    let mut csv = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = csv
        .headers()
        .map_err(|e| DatasetError::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let column = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| DatasetError::UnknownColumn(name.to_owned()))
    };
    let (id_col, group_col, score_col) =
        (column("id")?, column(group_column)?, column(score_column)?);

    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for row in csv.records() {
        let row = row.map_err(|e| DatasetError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let parse_err = |message: String| DatasetError::Parse { line, message };
        let id = row[id_col].to_owned();
        if id.is_empty() {
            return Err(parse_err("empty id".into()));
        }
        let score: f64 = row[score_col]
            .parse()
            .map_err(|_| parse_err(format!("score {:?} is not a number", &row[score_col])))?;
        if !score.is_finite() {
            return Err(parse_err(format!("score {score} is not finite")));
        }
        if !seen.insert(id.clone()) {
            return Err(parse_err(format!("duplicate id {id:?}")));
        }
        records.push(DatasetRecord {
            item_id: id,
            group: row[group_col].to_owned(),
            score,
        });
    }
    if records.is_empty() {
        return Err(DatasetError::Parse {
            line: 1,
            message: "dataset has no rows".into(),
        });
    }
    Ok(records)
}

pub fn ingest(
    path: &Path,
    group_column: &str,
    score_column: &str,
    last: &[String],
) -> Result<Dataset, DatasetError> {
    let file = std::fs::File::open(path).map_err(|source| DatasetError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Dataset::from_records(read_records(file, group_column, score_column)?, last)
}
