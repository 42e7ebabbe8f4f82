use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::tasks::{Backend, CheckReport, QueryAnswer};
use crate::Support;

/// `p/q`, also for integers.
pub fn fmt_ratio(r: &Support) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, a bare integer or a decimal like `0.75`.
pub fn parse_ratio(s: &str) -> Result<Support, Error> {
    let bad = || Error::Threshold(s.to_string());
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let (p, q): (u64, u64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
        if q == 0 {
            return Err(bad());
        }
        return Ok(Support::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if (int.is_empty() && frac.is_empty()) || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 18 {
        return Err(bad());
    }
    let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let den = 10u64.pow(frac.len() as u32);
    let num: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    Ok(Support::from_integer(int) + Support::new(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Query(format!("unknown report format {s:?}; expected json or csv"))),
        }
    }
}

#[derive(Serialize)]
struct Row<'a> {
    trace: u64,
    sat: &'a [bool],
}

#[derive(Serialize)]
struct Matrix<'a> {
    constraints: &'a [u64],
    rows: Vec<Row<'a>>,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    log: &'a str,
    model: &'a str,
    backend: Backend,
    matrix: Matrix<'a>,
    compliant: Vec<u64>,
    supports: BTreeMap<u64, String>,
}

/// Serializes a report. `log` and `model` name the inputs.
pub fn write_report(report: &CheckReport, log: &str, model: &str, format: ReportFormat) -> Result<Vec<u8>, Error> {
    match format {
        ReportFormat::Json => {
            let doc = CheckJson {
                log,
                model,
                backend: report.backend,
                matrix: Matrix {
                    constraints: &report.constraint_ids,
                    rows: report.trace_ids.iter().zip(&report.sat).map(|(&trace, sat)| Row { trace, sat }).collect(),
                },
                compliant: report.compliant.iter().copied().collect(),
                supports: report.support.iter().map(|(&k, v)| (k, fmt_ratio(v))).collect(),
            };
            let mut out = serde_json::to_vec_pretty(&doc)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let err = |e: csv::Error| Error::Csv(e.to_string());
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["trace_id".to_string()];
            header.extend(report.constraint_ids.iter().map(|c| format!("c{c}")));
            header.push("compliant".into());
            w.write_record(&header).map_err(err)?;
            for (id, row) in report.trace_ids.iter().zip(&report.sat) {
                let mut rec = vec![id.to_string()];
                rec.extend(row.iter().map(|&b| u8::from(b).to_string()));
                rec.push(u8::from(report.compliant.contains(id)).to_string());
                w.write_record(&rec).map_err(err)?;
            }
            w.into_inner().map_err(|e| Error::Csv(e.to_string()))
        }
    }
}

#[derive(Serialize)]
struct AnswerJson<'a> {
    binding: BTreeMap<&'a str, &'static str>,
    support: String,
}

#[derive(Serialize)]
struct QueryJson<'a> {
    log: &'a str,
    backend: Backend,
    threshold: String,
    answers: Vec<AnswerJson<'a>>,
}

pub fn write_answers(answers: &[QueryAnswer], log: &str, threshold: &Support, backend: Backend) -> Result<Vec<u8>, Error> {
    let doc = QueryJson {
        log,
        backend,
        threshold: fmt_ratio(threshold),
        answers: answers
            .iter()
            .map(|a| AnswerJson {
                binding: a.binding.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect(),
                support: fmt_ratio(&a.support),
            })
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&doc)?;
    out.push(b'\n');
    Ok(out)
}
