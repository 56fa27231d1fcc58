//! Exact measure theory on finite probability spaces.
//!
//! σ-algebras are partitions into atoms, random variables are value tables
//! over `Q^d`, and conditional expectation is the atom average. On top of
//! that sit filtrations, the adapted / progressive / predictable
//! classification of processes, and martingale checks through four
//! equivalent characterizations. All arithmetic is arbitrary-precision
//! rational.

pub mod condexp;
pub mod error;
pub mod json;
pub mod martingale;
pub mod measure;
pub mod numeric;
pub mod process;
pub mod sigma;
pub mod testkit;
pub mod workspace;

pub use condexp::{cond_exp, cond_exp_indep, cond_exp_pull_out, has_cond_exp, CondExpResult};
pub use error::{Error, Result};
pub use martingale::{
    classify, cond_exp_process, transform, Characterization, ClassificationReport, Counterexample, Kind,
    Relation,
};
pub use measure::{EventCap, FnTable, MeasureSpace};
pub use numeric::{diameter, Rat, VecD};
pub use process::{natural_filtration, Filtration, ProcessTable};
pub use sigma::{Partition, TimedPartition};
pub use workspace::{Workspace, WorkspaceFile};
