//! Evaluation engine for Declare constraints over finite traces.

pub mod activity;
pub mod automata;
pub mod direct;
pub mod ingest;
pub mod error;
pub mod log;
pub mod loggen;
pub mod ltlf;
pub mod model;
pub mod tasks;
pub mod xcheck;

pub use activity::Activity;
pub use error::{Error, Result};
pub use log::{EventLog, Trace};
pub use model::{Constraint, DeclareModel, TemplateKind};
pub use tasks::Backend;

/// Exact fraction of traces in a log.
pub type Support = num_rational::Ratio<u64>;

/// Exact path counts for the log generator.
pub type ExactPathCounts = loggen::PathCountTable<num_bigint::BigUint>;
