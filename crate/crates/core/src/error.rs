use thiserror::Error;

use crate::activity::ActivityError;
use crate::model::TemplateKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Activity(#[from] ActivityError),

    #[error("duplicate trace id {0}")]
    DuplicateTraceId(u64),

    #[error("duplicate constraint id {0}")]
    DuplicateConstraintId(u64),

    #[error("unknown template {0:?}; valid templates: {valid}", valid = valid_templates())]
    UnknownTemplate(String),

    #[error("formula syntax error at byte {offset}: {message}")]
    FormulaSyntax { offset: usize, message: String },

    #[error("automaton exceeds the state budget of {0} states")]
    StateBudget(usize),

    #[error("support is undefined on an empty log")]
    EmptyLog,

    #[error("support threshold {0} is outside (0, 1]")]
    Threshold(String),

    #[error("variable ?{0} has an empty domain")]
    EmptyDomain(String),

    #[error("{0}")]
    Query(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("xes: {0}")]
    Xes(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error("{0}")]
    Unrepresentable(String),

    #[error("no {polarity} trace of length {length} exists for {constraint}")]
    EmptyLanguage {
        polarity: &'static str,
        length: usize,
        constraint: String,
    },

    #[error("{0}")]
    Generator(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn valid_templates() -> String {
    TemplateKind::ALL.map(TemplateKind::name).join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
