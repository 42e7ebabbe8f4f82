//! Conformance checking and query checking with a selectable backend.

mod query;

pub use query::{query_check, query_check_with, Query, QueryAnswer, QueryConstraint, QueryOptions, Slot};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::automata::ConstraintAutomaton;
use crate::direct::{holds_direct, TraceIndex};
use crate::error::Error;
use crate::log::{EventLog, Trace};
use crate::ltlf::{constraint_formula, SyntaxTree};
use crate::model::{Constraint, DeclareModel};
use crate::Support;

/// Evaluation strategy for a constraint over a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Direct,
    #[serde(rename = "tree")]
    SyntaxTree,
    #[serde(rename = "dfa")]
    Automaton,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Direct, Backend::SyntaxTree, Backend::Automaton];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Direct => "direct",
            Backend::SyntaxTree => "tree",
            Backend::Automaton => "dfa",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "direct" => Ok(Backend::Direct),
            "tree" | "syntaxtree" | "syntax-tree" => Ok(Backend::SyntaxTree),
            "dfa" | "automaton" => Ok(Backend::Automaton),
            _ => Err(Error::Query(format!("unknown backend {s:?}; expected direct, tree or dfa"))),
        }
    }
}

#[derive(Debug, Clone)]
enum Evaluator {
    Direct,
    Tree(SyntaxTree),
    Automaton(ConstraintAutomaton),
}

/// A constraint with whatever its backend precomputes (syntax tree or bound DFA).
#[derive(Debug, Clone)]
pub struct PreparedConstraint {
    constraint: Constraint,
    eval: Evaluator,
}

impl PreparedConstraint {
    pub fn new(c: &Constraint, backend: Backend) -> Self {
        let eval = match backend {
            Backend::Direct => Evaluator::Direct,
            Backend::SyntaxTree => Evaluator::Tree(SyntaxTree::new(&constraint_formula(c))),
            Backend::Automaton => Evaluator::Automaton(ConstraintAutomaton::new(c)),
        };
        PreparedConstraint { constraint: *c, eval }
    }

    /// Automaton backend with a caller-supplied automaton.
    pub fn with_automaton(c: &Constraint, automaton: ConstraintAutomaton) -> Self {
        PreparedConstraint { constraint: *c, eval: Evaluator::Automaton(automaton) }
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    /// `index` is only consulted by the direct backend.
    pub fn holds(&self, trace: &Trace, index: Option<&TraceIndex>) -> bool {
        match &self.eval {
            Evaluator::Direct => match index {
                Some(ix) => holds_direct(&self.constraint, trace, ix),
                None => holds_direct(&self.constraint, trace, &TraceIndex::new(trace)),
            },
            Evaluator::Tree(tree) => tree.eval(&trace.events),
            Evaluator::Automaton(a) => a.run(&trace.events),
        }
    }
}

/// Single (constraint, trace) check.
pub fn check(c: &Constraint, trace: &Trace, backend: Backend) -> bool {
    PreparedConstraint::new(c, backend).holds(trace, None)
}

/// Satisfaction matrix of a log against a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub backend: Backend,
    /// Trace ids in log order (row order of `sat`).
    pub trace_ids: Vec<u64>,
    /// Constraint ids in model order (column order of `sat`).
    pub constraint_ids: Vec<u64>,
    pub sat: Vec<Vec<bool>>,
    pub compliant: BTreeSet<u64>,
    /// Fraction of satisfying traces per constraint; empty for an empty log.
    pub support: BTreeMap<u64, Support>,
}

impl CheckReport {
    pub fn is_sat(&self, trace_id: u64, constraint_id: u64) -> Option<bool> {
        let row = self.trace_ids.iter().position(|&t| t == trace_id)?;
        let col = self.constraint_ids.iter().position(|&c| c == constraint_id)?;
        Some(self.sat[row][col])
    }
}

fn indexes(log: &EventLog, backend: Backend) -> Option<Vec<TraceIndex>> {
    (backend == Backend::Direct).then(|| log.traces().par_iter().map(TraceIndex::new).collect())
}

pub fn conformance_check(log: &EventLog, model: &DeclareModel, backend: Backend) -> CheckReport {
    let prepared: Vec<PreparedConstraint> =
        model.constraints().iter().map(|c| PreparedConstraint::new(c, backend)).collect();
    let index = indexes(log, backend);
    let sat: Vec<Vec<bool>> = log
        .traces()
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let ix = index.as_ref().map(|v| &v[i]);
            prepared.iter().map(|p| p.holds(t, ix)).collect()
        })
        .collect();

    let trace_ids: Vec<u64> = log.traces().iter().map(|t| t.id).collect();
    let constraint_ids: Vec<u64> = model.constraints().iter().map(|c| c.id).collect();
    let compliant = trace_ids
        .iter()
        .zip(&sat)
        .filter(|(_, row)| row.iter().all(|&b| b))
        .map(|(&id, _)| id)
        .collect();
    let support = if log.is_empty() {
        BTreeMap::new()
    } else {
        constraint_ids
            .iter()
            .enumerate()
            .map(|(j, &cid)| {
                let n = sat.iter().filter(|row| row[j]).count() as u64;
                (cid, Support::new(n, log.len() as u64))
            })
            .collect()
    };
    CheckReport { backend, trace_ids, constraint_ids, sat, compliant, support }
}

/// Exact fraction of traces satisfying `c`.
pub fn support(c: &Constraint, log: &EventLog, backend: Backend) -> Result<Support, Error> {
    if log.is_empty() {
        return Err(Error::EmptyLog);
    }
    let p = PreparedConstraint::new(c, backend);
    let n = log.traces().par_iter().filter(|t| p.holds(t, None)).count() as u64;
    Ok(Support::new(n, log.len() as u64))
}
