//! Searches for traces on which the three backends disagree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::activity::Activity;
use crate::automata::{ConstraintAutomaton, Dfa};
use crate::direct::TraceIndex;
use crate::ingest::write_factlog;
use crate::log::{EventLog, Trace};
use crate::loggen::trace_rng;
use crate::model::{Constraint, TemplateKind};
use crate::tasks::{Backend, PreparedConstraint};

/// Activation, target and the stand-in for "any other activity".
pub fn xcheck_alphabet() -> [Activity; 3] {
    [Activity::named("a"), Activity::named("b"), Activity::named("c")]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub kind: TemplateKind,
    pub trace: Vec<&'static str>,
    pub verdicts: BTreeMap<Backend, bool>,
    /// `trace/3` facts replaying the trace (empty for the empty trace).
    pub facts: String,
}

/// Backends under comparison; the automaton of a kind can be replaced.
#[derive(Debug, Clone, Default)]
pub struct Harness {
    automata: HashMap<TemplateKind, Arc<Dfa>>,
}

struct Prepared {
    kind: TemplateKind,
    backends: Vec<(Backend, PreparedConstraint)>,
}

impl Harness {
    pub fn new() -> Self {
        Self::default()
    }

    /// Uses `dfa` (over the `arg_0`/`arg_1` placeholders) for `kind`.
    pub fn with_automaton(mut self, kind: TemplateKind, dfa: Arc<Dfa>) -> Self {
        self.automata.insert(kind, dfa);
        self
    }

    fn prepare(&self, kinds: &[TemplateKind]) -> Vec<Prepared> {
        let [a, b, _] = xcheck_alphabet();
        kinds
            .iter()
            .map(|&kind| {
                let c = Constraint::new(0, kind, a, b);
                let backends = Backend::ALL
                    .into_iter()
                    .map(|backend| {
                        let p = match (backend, self.automata.get(&kind)) {
                            (Backend::Automaton, Some(d)) => {
                                PreparedConstraint::with_automaton(&c, ConstraintAutomaton::with_dfa(&c, d.clone()))
                            }
                            _ => PreparedConstraint::new(&c, backend),
                        };
                        (backend, p)
                    })
                    .collect();
                Prepared { kind, backends }
            })
            .collect()
    }

    fn compare(prepared: &[Prepared], events: Vec<Activity>, out: &mut Vec<Disagreement>) {
        let trace = Trace::new(0, events);
        let index = TraceIndex::new(&trace);
        for p in prepared {
            let verdicts: BTreeMap<Backend, bool> =
                p.backends.iter().map(|(b, c)| (*b, c.holds(&trace, Some(&index)))).collect();
            let first = verdicts.values().next().copied();
            if verdicts.values().any(|&v| Some(v) != first) {
                let facts = EventLog::new(vec![trace.clone()])
                    .ok()
                    .and_then(|log| write_factlog(&log).ok())
                    .unwrap_or_default();
                out.push(Disagreement {
                    kind: p.kind,
                    trace: trace.events.iter().map(|a| a.as_str()).collect(),
                    verdicts,
                    facts,
                });
            }
        }
    }

    /// Every trace over {a, b, c} of length `0..=max_len`.
    pub fn exhaustive_check(&self, kinds: &[TemplateKind], max_len: usize) -> Vec<Disagreement> {
        let prepared = self.prepare(kinds);
        let sigma = xcheck_alphabet();
        let mut jobs: Vec<(usize, u64)> = Vec::new();
        for len in 0..=max_len {
            // split each length by its first symbol
            let parts = if len == 0 { 1 } else { 3 };
            jobs.extend((0..parts).map(|p| (len, p)));
        }
        let mut out: Vec<Disagreement> = jobs
            .into_par_iter()
            .flat_map_iter(|(len, first)| {
                let mut found = Vec::new();
                let rest = len.saturating_sub(1) as u32;
                for code in 0..3u64.pow(rest) {
                    let mut events = Vec::with_capacity(len);
                    if len > 0 {
                        events.push(sigma[first as usize]);
                    }
                    let mut x = code;
                    for _ in 0..rest {
                        events.push(sigma[(x % 3) as usize]);
                        x /= 3;
                    }
                    Self::compare(&prepared, events, &mut found);
                }
                found
            })
            .collect();
        canonical_order(&mut out);
        out
    }

    /// `n` traces with length uniform in `0..=max_len` and uniform symbols.
    pub fn random_check(&self, kinds: &[TemplateKind], n: usize, max_len: usize, seed: u64) -> Vec<Disagreement> {
        let prepared = self.prepare(kinds);
        let mut out: Vec<Disagreement> = (0..n as u64)
            .into_par_iter()
            .flat_map_iter(|i| {
                let events = random_trace(seed, i, max_len);
                let mut found = Vec::new();
                Self::compare(&prepared, events, &mut found);
                found
            })
            .collect();
        canonical_order(&mut out);
        out.dedup();
        out
    }
}

/// The `i`-th trace of the random sample for `seed`.
pub fn random_trace(seed: u64, i: u64, max_len: usize) -> Vec<Activity> {
    let sigma = xcheck_alphabet();
    let mut rng = trace_rng(seed, i);
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| sigma[rng.gen_range(0..3)]).collect()
}

fn canonical_order(out: &mut [Disagreement]) {
    out.sort_by(|x, y| (x.trace.len(), &x.trace, x.kind).cmp(&(y.trace.len(), &y.trace, y.kind)));
}

pub fn exhaustive_check(kinds: &[TemplateKind], max_len: usize) -> Vec<Disagreement> {
    Harness::new().exhaustive_check(kinds, max_len)
}

pub fn random_check(kinds: &[TemplateKind], n: usize, max_len: usize, seed: u64) -> Vec<Disagreement> {
    Harness::new().random_check(kinds, n, max_len, seed)
}
