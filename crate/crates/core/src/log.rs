//! Traces and event logs.

use std::collections::{BTreeSet, HashSet};

use crate::activity::Activity;
use crate::error::Error;

/// One process execution: exactly one activity per position `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trace {
    pub id: u64,
    pub events: Vec<Activity>,
}

impl Trace {
    pub fn new(id: u64, events: Vec<Activity>) -> Self {
        Trace { id, events }
    }

    /// Builds a trace from single-character labels, e.g. `"abac"`.
    pub fn from_chars(id: u64, letters: &str) -> Self {
        let events = letters
            .chars()
            .map(|c| Activity::named(c.encode_utf8(&mut [0; 4])))
            .collect();
        Trace { id, events }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn contains(&self, activity: Activity) -> bool {
        self.events.contains(&activity)
    }
}

/// A multiset of traces with unique ids, kept in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EventLog {
    traces: Vec<Trace>,
    alphabet: BTreeSet<Activity>,
}

impl EventLog {
    pub fn new(mut traces: Vec<Trace>) -> Result<Self, Error> {
        let mut seen = HashSet::with_capacity(traces.len());
        for t in &traces {
            if !seen.insert(t.id) {
                return Err(Error::DuplicateTraceId(t.id));
            }
        }
        traces.sort_by_key(|t| t.id);
        let alphabet = traces.iter().flat_map(|t| t.events.iter().copied()).collect();
        Ok(EventLog { traces, alphabet })
    }

    /// Convenience constructor assigning ids `0..n` to character-labelled traces.
    pub fn from_strs(traces: &[&str]) -> Self {
        let traces = traces
            .iter()
            .enumerate()
            .map(|(i, s)| Trace::from_chars(i as u64, s))
            .collect();
        EventLog::new(traces).expect("ids are unique by construction")
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn alphabet(&self) -> &BTreeSet<Activity> {
        &self.alphabet
    }

    pub fn total_events(&self) -> usize {
        self.traces.iter().map(Trace::len).sum()
    }
}

/// The set of activities occurring in at least one trace.
pub fn alphabet(log: &EventLog) -> BTreeSet<Activity> {
    log.alphabet().clone()
}
