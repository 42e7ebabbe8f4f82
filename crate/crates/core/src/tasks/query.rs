use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::activity::Activity;
use crate::direct::TraceIndex;
use crate::error::Error;
use crate::log::EventLog;
use crate::model::{Constraint, TemplateKind};
use crate::tasks::{indexes, Backend, PreparedConstraint};
use crate::Support;

/// Argument slot of a query constraint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Bound(Activity),
    /// Variable name, without the leading `?`.
    Var(String),
}

impl Slot {
    pub fn var(name: &str) -> Self {
        Slot::Var(name.trim_start_matches('?').to_string())
    }

    fn resolve(&self, binding: &BTreeMap<String, Activity>) -> Activity {
        match self {
            Slot::Bound(a) => *a,
            Slot::Var(v) => binding[v],
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Bound(a) => write!(f, "{a}"),
            Slot::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QueryConstraint {
    pub kind: TemplateKind,
    pub activation: Slot,
    pub target: Slot,
}

impl QueryConstraint {
    pub fn new(kind: TemplateKind, activation: Slot, target: Slot) -> Self {
        QueryConstraint { kind, activation, target }
    }
}

impl fmt::Display for QueryConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.kind, self.activation, self.target)
    }
}

/// A conjunction of template instances with variable slots.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Query {
    pub constraints: Vec<QueryConstraint>,
    /// Explicit domains; variables not listed range over the log alphabet.
    pub domains: BTreeMap<String, Vec<Activity>>,
}

impl Query {
    pub fn new(constraints: Vec<QueryConstraint>) -> Self {
        Query { constraints, domains: BTreeMap::new() }
    }

    pub fn single(kind: TemplateKind, activation: Slot, target: Slot) -> Self {
        Self::new(vec![QueryConstraint::new(kind, activation, target)])
    }

    pub fn with_domain(mut self, var: &str, domain: impl IntoIterator<Item = Activity>) -> Self {
        self.domains.insert(var.trim_start_matches('?').to_string(), domain.into_iter().collect());
        self
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        for c in &self.constraints {
            for s in [&c.activation, &c.target] {
                if let Slot::Var(v) = s {
                    vars.insert(v.clone());
                }
            }
        }
        vars
    }

    /// Instantiates every constraint under `binding`, numbering them from 0.
    pub fn instantiate(&self, binding: &BTreeMap<String, Activity>) -> Vec<Constraint> {
        self.constraints
            .iter()
            .enumerate()
            .map(|(i, c)| Constraint::new(i as u64, c.kind, c.activation.resolve(binding), c.target.resolve(binding)))
            .collect()
    }

    fn domain_of(&self, var: &str, log: &EventLog) -> Result<Vec<Activity>, Error> {
        let dom: Vec<Activity> = match self.domains.get(var) {
            Some(d) => d.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
            None => log.alphabet().iter().copied().collect(),
        };
        if dom.is_empty() {
            return Err(Error::EmptyDomain(var.to_string()));
        }
        Ok(dom)
    }

    /// All bindings in lexicographic order of (variable, activity).
    pub fn bindings(&self, log: &EventLog) -> Result<Vec<BTreeMap<String, Activity>>, Error> {
        let mut out = vec![BTreeMap::new()];
        for var in self.variables() {
            let dom = self.domain_of(&var, log)?;
            let mut next = Vec::with_capacity(out.len() * dom.len());
            for b in &out {
                for &a in &dom {
                    let mut b = b.clone();
                    b.insert(var.clone(), a);
                    next.push(b);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryAnswer {
    pub binding: BTreeMap<String, Activity>,
    pub support: Support,
}

impl fmt::Display for QueryAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.binding.iter().map(|(v, a)| format!("?{v}={a}")).collect();
        write!(f, "{{{}}} support={}", parts.join(", "), self.support)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryOptions {
    /// Stop evaluating a binding as soon as it cannot reach the threshold.
    pub early_abort: bool,
}

impl Default for QueryOptions {
    fn default() -> Self {
        QueryOptions { early_abort: true }
    }
}

pub fn query_check(q: &Query, log: &EventLog, threshold: Support, backend: Backend) -> Result<Vec<QueryAnswer>, Error> {
    query_check_with(q, log, threshold, backend, QueryOptions::default())
}

pub fn query_check_with(
    q: &Query,
    log: &EventLog,
    threshold: Support,
    backend: Backend,
    opts: QueryOptions,
) -> Result<Vec<QueryAnswer>, Error> {
    if threshold <= Support::zero() || threshold > Support::one() {
        return Err(Error::Threshold(threshold.to_string()));
    }
    if log.is_empty() {
        return Err(Error::EmptyLog);
    }
    let bindings = q.bindings(log)?;
    let n = log.len() as u64;
    let max_violations = ((Support::one() - threshold) * Support::from_integer(n)).floor().to_integer();
    let index = indexes(log, backend);

    let mut answers: Vec<QueryAnswer> = bindings
        .into_par_iter()
        .filter_map(|binding| {
            let prepared: Vec<PreparedConstraint> =
                q.instantiate(&binding).iter().map(|c| PreparedConstraint::new(c, backend)).collect();
            let violations = count_violations(&prepared, log, index.as_deref(), opts.early_abort.then_some(max_violations));
            let support = Support::new(n - violations, n);
            (support >= threshold).then_some(QueryAnswer { binding, support })
        })
        .collect();
    answers.sort_by(|x, y| y.support.cmp(&x.support).then_with(|| x.binding.cmp(&y.binding)));
    Ok(answers)
}

fn count_violations(prepared: &[PreparedConstraint], log: &EventLog, index: Option<&[TraceIndex]>, cap: Option<u64>) -> u64 {
    let mut violations = 0;
    for (i, t) in log.traces().iter().enumerate() {
        let ix = index.map(|v| &v[i]);
        if !prepared.iter().all(|p| p.holds(t, ix)) {
            violations += 1;
            if cap.is_some_and(|m| violations > m) {
                break;
            }
        }
    }
    violations
}
