use std::collections::BTreeMap;
use std::fmt::Write;

use crate::activity::Activity;
use crate::error::Error;
use crate::ingest::facts::{label, parse_facts, Fact, Term};
use crate::log::{EventLog, Trace};

pub(crate) fn activity_arg(f: &Fact, term: &Term) -> Result<Activity, Error> {
    let text = term.text().ok_or_else(|| f.error(format!("expected an activity label, found {term}")))?;
    Activity::new(text).map_err(|e| f.error(e.to_string()))
}

/// Parses `trace(I,T,A).` facts. Positions of every trace must be dense
/// from 0.
pub fn parse_factlog(text: &str) -> Result<EventLog, Error> {
    let mut traces: BTreeMap<u64, BTreeMap<u64, (Activity, usize)>> = BTreeMap::new();
    for f in parse_facts(text)? {
        if f.name != "trace" || f.args.len() != 3 {
            return Err(f.error(format!("unexpected fact {}; only trace/3 is allowed", f.signature())));
        }
        let id = f.args[0].int().ok_or_else(|| f.error("trace id must be a non-negative integer"))?;
        let pos = f.args[1].int().ok_or_else(|| f.error("position must be a non-negative integer"))?;
        let act = activity_arg(&f, &f.args[2])?;
        if traces.entry(id).or_default().insert(pos, (act, f.line)).is_some() {
            return Err(f.error(format!("duplicate position {pos} in trace {id}")));
        }
    }
    let mut out = Vec::with_capacity(traces.len());
    for (id, events) in traces {
        for (expected, (&pos, &(_, line))) in events.iter().enumerate() {
            if pos != expected as u64 {
                return Err(Error::Syntax {
                    line,
                    message: format!("trace {id} has no event at position {expected}"),
                });
            }
        }
        out.push(Trace::new(id, events.into_values().map(|(a, _)| a).collect()));
    }
    EventLog::new(out)
}

/// One `trace(I,T,A).` fact per line, ids and positions ascending.
/// Empty traces have no fact representation and are rejected.
pub fn write_factlog(log: &EventLog) -> Result<String, Error> {
    let mut out = String::new();
    for t in log.traces() {
        if t.is_empty() {
            return Err(Error::Unrepresentable(format!("trace {} is empty and has no fact encoding", t.id)));
        }
        for (pos, a) in t.events.iter().enumerate() {
            writeln!(out, "trace({},{},{}).", t.id, pos, label(a.as_str())).unwrap();
        }
    }
    Ok(out)
}
