use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use declare_core::automata::{compile as compile_formula, minimize, template_dfa};
use declare_core::ingest::{
    parse_model, parse_query, parse_ratio, read_log, write_answers, write_log, write_report, ReportFormat,
};
use declare_core::loggen::generate_log;
use declare_core::ltlf::parse_formula;
use declare_core::tasks::{conformance_check, query_check_with, Query, QueryOptions, Slot};
use declare_core::xcheck::Harness;
use declare_core::{Activity, Constraint, DeclareModel, Error, EventLog, TemplateKind};

use crate::{BenchArgs, CheckArgs, CompileArgs, ConvertArgs, GenerateArgs, QueryArgs, ValidateArgs};

type Result<T> = std::result::Result<T, Error>;

fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Io(io) => Error::Io(io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        e => e,
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| located(path, e.into()))
}

fn load_log(path: &Path) -> Result<EventLog> {
    read_log(path).map_err(|e| located(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| located(path, e.into()))
}

fn write_out(out: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => write_file(p, bytes),
        None => {
            use io::Write;
            io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

/// `arg_0=A` / `arg_1=B` pairs.
fn parse_binds(binds: &[String]) -> Result<[Option<Activity>; 2]> {
    let mut out = [None, None];
    for b in binds {
        let (slot, value) = b
            .split_once('=')
            .ok_or_else(|| Error::Query(format!("binding {b:?} is not of the form arg_0=A")))?;
        let i = match slot.trim() {
            "arg_0" => 0,
            "arg_1" => 1,
            s => return Err(Error::Query(format!("unknown argument {s:?}; expected arg_0 or arg_1"))),
        };
        out[i] = Some(Activity::new(value.trim())?);
    }
    Ok(out)
}

pub fn check(a: CheckArgs) -> Result<u8> {
    let log = load_log(&a.log)?;
    let model = parse_model(&read_text(&a.model)?)?;
    let start = Instant::now();
    let report = conformance_check(&log, &model, a.backend);
    let elapsed = start.elapsed();
    let format: ReportFormat = a.format.parse()?;
    let bytes = write_report(&report, &a.log.display().to_string(), &a.model.display().to_string(), format)?;
    write_out(a.out.as_ref(), &bytes)?;
    let summary = format!(
        "{}/{} constraints={} backend={} elapsed={:.3}s",
        report.compliant.len(),
        log.len(),
        model.len(),
        a.backend,
        elapsed.as_secs_f64()
    );
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}

pub fn query(a: QueryArgs) -> Result<u8> {
    let log = load_log(&a.log)?;
    let threshold = parse_ratio(&a.support)?;
    let q = match (&a.template, &a.query_file) {
        (Some(t), _) => {
            let kind: TemplateKind = t.parse()?;
            let [x, y] = parse_binds(&a.bind)?;
            Query::single(kind, x.map_or_else(|| Slot::var("x"), Slot::Bound), y.map_or_else(|| Slot::var("y"), Slot::Bound))
        }
        (None, Some(path)) => {
            if !a.bind.is_empty() {
                return Err(Error::Query("--bind applies to --template only".into()));
            }
            parse_query(&read_text(path)?)?
        }
        (None, None) => return Err(Error::Query("either --template or --query-file is required".into())),
    };
    let opts = QueryOptions { early_abort: !a.no_early_abort };
    let answers = query_check_with(&q, &log, threshold, a.backend, opts)?;
    let json = write_answers(&answers, &a.log.display().to_string(), &threshold, a.backend)?;
    if let Some(p) = &a.out {
        write_file(p, &json)?;
    }
    if a.json {
        write_out(None, &json)?;
    } else {
        for ans in &answers {
            let binding: Vec<String> = ans.binding.iter().map(|(v, x)| format!("?{v}={x}")).collect();
            println!("{} {}", declare_core::ingest::fmt_ratio(&ans.support), binding.join(" "));
        }
    }
    eprintln!("{} answers at support >= {}", answers.len(), declare_core::ingest::fmt_ratio(&threshold));
    Ok(0)
}

pub fn compile(a: CompileArgs) -> Result<u8> {
    let (name, dfa) = match (&a.template, &a.formula) {
        (Some(t), _) => {
            let kind: TemplateKind = t.parse()?;
            (kind.name().to_string(), (*template_dfa(kind, false)).clone())
        }
        (None, Some(f)) => ("formula".to_string(), minimize(&compile_formula(&parse_formula(f)?)?)),
        (None, None) => return Err(Error::Query("either --template or --formula is required".into())),
    };
    if a.dot {
        print!("{}", dfa.to_dot(&name));
    } else if a.facts_json {
        let mut out = serde_json::to_string_pretty(&dfa.to_facts_json(&name))?;
        out.push('\n');
        print!("{out}");
    } else {
        print!("{}", dfa.to_facts(&name));
    }
    Ok(0)
}

pub fn validate(a: ValidateArgs) -> Result<u8> {
    let kinds: Vec<TemplateKind> = if a.templates.is_empty() {
        TemplateKind::ALL.to_vec()
    } else {
        a.templates.iter().map(|t| t.parse()).collect::<Result<_>>()?
    };
    let harness = Harness::new();
    let start = Instant::now();
    let mut found = harness.exhaustive_check(&kinds, a.max_len);
    if a.samples > 0 {
        found.extend(harness.random_check(&kinds, a.samples, a.sample_len, a.seed));
    }
    for d in &found {
        eprintln!("{}: {:?} {:?}", d.kind, d.trace.concat(), d.verdicts);
    }
    if let Some(p) = &a.out {
        let mut json = serde_json::to_vec_pretty(&found)?;
        json.push(b'\n');
        write_file(p, &json)?;
    }
    println!(
        "{} disagreements ({} templates, exhaustive length <= {}, {} random samples, {:.2}s)",
        found.len(),
        kinds.len(),
        a.max_len,
        a.samples,
        start.elapsed().as_secs_f64()
    );
    Ok(u8::from(!found.is_empty()))
}

pub fn generate(a: GenerateArgs) -> Result<u8> {
    let kind: TemplateKind = a.template.parse()?;
    let [x, y] = parse_binds(&a.bind)?;
    let c = Constraint::new(
        0,
        kind,
        x.unwrap_or_else(|| Activity::named("a_0")),
        y.unwrap_or_else(|| Activity::named("a_1")),
    );
    let generated = generate_log(&c, a.n, a.len, a.alphabet, a.seed)?;
    write_log(&a.out, &generated.log).map_err(|e| located(&a.out, e))?;
    let labels = a.labels.unwrap_or_else(|| {
        let mut p = a.out.clone().into_os_string();
        p.push(".labels.csv");
        p.into()
    });
    write_file(&labels, generated.manifest_csv().as_bytes())?;
    println!("{} traces of length {} for {c} written to {}", a.n, a.len, a.out.display());
    Ok(0)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn bench(a: BenchArgs) -> Result<u8> {
    let log = load_log(&a.log)?;
    let model = match &a.model {
        Some(p) => parse_model(&read_text(p)?)?,
        None => {
            let (x, y) = (Activity::named("a_0"), Activity::named("a_1"));
            let cs = TemplateKind::ALL.iter().enumerate().map(|(i, &k)| Constraint::new(i as u64, k, x, y)).collect();
            DeclareModel::new(cs)?
        }
    };
    let mut out = String::from("task,backend,run,elapsed_ms\n");
    for c in model.constraints() {
        let single = DeclareModel::new(vec![*c])?;
        for &backend in &a.backends {
            for run in 0..a.repeat {
                let start = Instant::now();
                let report = conformance_check(&log, &single, backend);
                let ms = start.elapsed().as_secs_f64() * 1e3;
                std::hint::black_box(report);
                out.push_str(&format!("{},{backend},{run},{ms:.3}\n", csv_field(&c.to_string())));
            }
        }
    }
    write_out(a.out.as_ref(), out.as_bytes())?;
    Ok(0)
}

pub fn convert(a: ConvertArgs) -> Result<u8> {
    let log = load_log(&a.input)?;
    write_log(&a.out, &log).map_err(|e| located(&a.out, e))?;
    eprintln!("{} traces converted to {}", log.len(), a.out.display());
    Ok(0)
}
