use std::collections::HashMap;
use std::io::Read;

use crate::activity::Activity;
use crate::error::Error;
use crate::log::{EventLog, Trace};

/// Reads `case_id,activity[,position]` rows. Cases become traces in order
/// of first appearance; events follow `position` when present and arrival
/// order otherwise.
pub fn parse_csv<R: Read>(input: R, has_position: bool) -> Result<EventLog, Error> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = rdr.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
    let column = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Csv(format!("missing column {name:?}")))
    };
    let case_col = column("case_id")?;
    let act_col = column("activity")?;
    let pos_col = if has_position { Some(column("position")?) } else { None };

    let mut case_index: HashMap<String, usize> = HashMap::new();
    let mut cases: Vec<Vec<(u64, Activity)>> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| Error::Csv(format!("row {row}: {e}")))?;
        let field = |c: usize| rec.get(c).ok_or_else(|| Error::Csv(format!("row {row}: too few fields")));
        let case = field(case_col)?;
        let act = Activity::new(field(act_col)?).map_err(|e| Error::Csv(format!("row {row}: {e}")))?;
        let next = cases.len();
        let idx = *case_index.entry(case.to_string()).or_insert(next);
        if idx == next {
            cases.push(Vec::new());
        }
        let pos = match pos_col {
            Some(c) => {
                let p = field(c)?;
                p.parse().map_err(|_| Error::Csv(format!("row {row}: invalid position {p:?}")))?
            }
            None => cases[idx].len() as u64,
        };
        cases[idx].push((pos, act));
    }

    let mut traces = Vec::with_capacity(cases.len());
    for (id, mut events) in cases.into_iter().enumerate() {
        events.sort_by_key(|e| e.0);
        if let Some(w) = events.windows(2).find(|w| w[0].0 == w[1].0) {
            let case = case_index.iter().find(|(_, &i)| i == id).unwrap().0;
            return Err(Error::Csv(format!("case {case:?} has two events at position {}", w[0].0)));
        }
        traces.push(Trace::new(id as u64, events.into_iter().map(|e| e.1).collect()));
    }
    EventLog::new(traces)
}

pub fn write_csv_log(log: &EventLog) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Csv(e.to_string());
    w.write_record(["case_id", "activity", "position"]).map_err(err)?;
    for t in log.traces() {
        for (i, a) in t.events.iter().enumerate() {
            w.write_record([t.id.to_string().as_str(), a.as_str(), i.to_string().as_str()]).map_err(err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
