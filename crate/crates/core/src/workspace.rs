//! The JSON workspace document: a measure space, a process, a filtration
//! specification and an optional betting process for the transform.
//!
//! Parsing only checks syntax and per-value shape; [`WorkspaceFile::resolve`]
//! cross-checks sizes, horizons, dimensions, weights and monotonicity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::to_canonical_string;
use crate::measure::{FnTable, MeasureSpace};
use crate::numeric::{Rat, VecD};
use crate::process::{natural_filtration, Filtration, ProcessTable};
use crate::sigma::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<Vec<String>>,
    pub weights: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FiltrationSpec {
    /// Generated by the process itself.
    Natural,
    Constant { partition: Partition },
    Explicit { partitions: Vec<Partition> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub dimension: usize,
    pub space: SpaceSpec,
    pub process: ProcessTable,
    pub filtration: FiltrationSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<ProcessTable>,
}

/// A workspace whose cross-references have been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub space: MeasureSpace,
    pub process: ProcessTable,
    pub filtration: Filtration,
    pub transform: Option<ProcessTable>,
}

impl WorkspaceFile {
    /// Parse JSON text. Errors carry the JSON path and line/column.
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." || path.is_empty() {
                Error::Workspace(inner.to_string())
            } else {
                Error::Workspace(format!("{path}: {inner}"))
            }
        })
    }

    pub fn to_canonical_json(&self) -> String {
        to_canonical_string(self).expect("workspace serializes")
    }

    pub fn resolve(&self) -> Result<Workspace> {
        let d = self.dimension;
        if d == 0 {
            return Err(Error::Workspace("dimension must be at least 1".into()));
        }
        let space = match &self.space.outcomes {
            Some(labels) => MeasureSpace::with_labels(labels.clone(), self.space.weights.clone()),
            None => MeasureSpace::new(self.space.weights.clone()),
        }
        .map_err(|e| match e {
            Error::UniverseMismatch { left, right } => Error::Workspace(format!(
                "space lists {left} outcomes but {right} weights"
            )),
            other => other,
        })?;
        let n = space.len();
        check_process("process", &self.process, n, d)?;
        let horizon = self.process.horizon();
        let filtration = match &self.filtration {
            FiltrationSpec::Natural => natural_filtration(&self.process),
            FiltrationSpec::Constant { partition } => {
                check_partition("filtration.partition", partition, n)?;
                Filtration::constant(partition.clone(), horizon)
            }
            FiltrationSpec::Explicit { partitions } => {
                if partitions.len() != self.process.times() {
                    return Err(Error::Workspace(format!(
                        "filtration has {} partitions but the process has {} times",
                        partitions.len(),
                        self.process.times()
                    )));
                }
                for (t, p) in partitions.iter().enumerate() {
                    check_partition(&format!("filtration.partitions[{t}]"), p, n)?;
                }
                Filtration::new(partitions.clone())?
            }
        };
        if let Some((earlier, later)) = filtration.monotonicity_violation() {
            return Err(Error::NotMonotone { earlier, later });
        }
        if let Some(c) = &self.transform {
            check_process("transform", c, n, 1)?;
            if c.horizon() != horizon {
                return Err(Error::Workspace(format!(
                    "transform has {} times but the process has {}",
                    c.times(),
                    self.process.times()
                )));
            }
        }
        Ok(Workspace { space, process: self.process.clone(), filtration, transform: self.transform.clone() })
    }
}

fn check_process(name: &str, x: &ProcessTable, n: usize, d: usize) -> Result<()> {
    if x.universe_size() != n {
        return Err(Error::Workspace(format!(
            "{name} tables have {} entries but the space has {n} outcomes",
            x.universe_size()
        )));
    }
    if x.dim() != d {
        return Err(Error::Workspace(format!("{name} values have dimension {} but {d} was declared", x.dim())));
    }
    Ok(())
}

fn check_partition(name: &str, p: &Partition, n: usize) -> Result<()> {
    if p.universe_size() != n {
        return Err(Error::Workspace(format!(
            "{name} covers {} outcomes but the space has {n}",
            p.universe_size()
        )));
    }
    Ok(())
}

impl Workspace {
    /// Workspace document with `process` replaced by `new_process`, the
    /// resolved filtration written out explicitly and no transform.
    pub fn with_process(&self, new_process: ProcessTable) -> WorkspaceFile {
        WorkspaceFile {
            dimension: new_process.dim(),
            space: SpaceSpec {
                outcomes: self.space.labels().map(<[String]>::to_vec),
                weights: self.space.weights().to_vec(),
            },
            process: new_process,
            filtration: FiltrationSpec::Explicit { partitions: self.filtration.parts().to_vec() },
            transform: None,
        }
    }
}

/// Outcome weights for `tosses` independent coin tosses with heads
/// probability `p`. Outcome `k` spells the tosses in binary, most
/// significant first, with a 0 bit for heads; for two tosses the order is
/// HH, HT, TH, TT.
pub fn coin_weights(p: &Rat, tosses: usize) -> Vec<Rat> {
    let q = &Rat::one() - p;
    (0..1usize << tosses)
        .map(|k| {
            (0..tosses).fold(Rat::one(), |acc, s| {
                let tails = k >> (tosses - 1 - s) & 1 == 1;
                acc * if tails { &q } else { p }
            })
        })
        .collect()
}

/// The gambler's fortune: `+1` per head and `-1` per tail, starting at 0.
pub fn coin_walk(tosses: usize) -> ProcessTable {
    let n = 1usize << tosses;
    let tables = (0..=tosses)
        .map(|t| {
            let values = (0..n)
                .map(|k| {
                    let mut fortune = 0i64;
                    for s in 0..t {
                        fortune += if k >> (tosses - 1 - s) & 1 == 1 { -1 } else { 1 };
                    }
                    VecD::ints(&[fortune])
                })
                .collect();
            FnTable::new(values).expect("nonempty")
        })
        .collect();
    ProcessTable::new(tables).expect("consistent shape")
}

/// Coin-toss workspace with the walk as process and its natural filtration.
pub fn coin_workspace(p: &Rat, tosses: usize) -> WorkspaceFile {
    let outcomes = (0..1usize << tosses)
        .map(|k| {
            (0..tosses)
                .map(|s| if k >> (tosses - 1 - s) & 1 == 1 { 'T' } else { 'H' })
                .collect()
        })
        .collect();
    WorkspaceFile {
        dimension: 1,
        space: SpaceSpec { outcomes: Some(outcomes), weights: coin_weights(p, tosses) },
        process: coin_walk(tosses),
        filtration: FiltrationSpec::Natural,
        transform: None,
    }
}
