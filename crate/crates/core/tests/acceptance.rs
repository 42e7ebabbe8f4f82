//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero only when a criterion outside `KNOWN_FAILURES` fails.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::time::{Duration, Instant};

use declare_core::automata::{compile, minimize, template_dfa};
use declare_core::ingest::{fmt_ratio, parse_factlog, read_xes_file, write_answers, write_factlog, write_report, ReportFormat};
use declare_core::loggen::{alphabet_label, build_generator, generate_log, trace_rng};
use declare_core::ltlf::{placeholders, template_formula};
use declare_core::tasks::{check, conformance_check, query_check, Query, Slot};
use declare_core::xcheck::{exhaustive_check, random_check};
use declare_core::{Activity, Backend, Constraint, DeclareModel, EventLog, Support, TemplateKind, Trace};
use num_bigint::BigUint;
use rand::Rng;

/// Criteria that cannot hold as stated; see the README.
const KNOWN_FAILURES: &[u32] = &[2];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn act(s: &str) -> Activity {
    Activity::named(s)
}

fn ratio(p: u64, q: u64) -> Support {
    Support::new(p, q)
}

fn response_family_verdicts() -> Outcome {
    use TemplateKind::*;
    let log = EventLog::from_strs(&["aaabc", "abacb", "abab"]);
    let expected = [(Response, [true, true, true]), (AlternateResponse, [false, true, true]), (ChainResponse, [false, false, true])];
    for (kind, want) in expected {
        let c = Constraint::new(0, kind, act("a"), act("b"));
        for backend in Backend::ALL {
            let got: Vec<bool> = log.traces().iter().map(|t| check(&c, t, backend)).collect();
            ensure(got == want, || format!("{kind} with {backend}: {got:?}, expected {want:?}"))?;
        }
    }
    Ok("Response sat on all, AlternateResponse fails on aaabc, ChainResponse holds only on abab".into())
}

fn response_query() -> Outcome {
    let log = EventLog::from_strs(&["abab", "abac", "abadabd"]);
    let q = Query::single(TemplateKind::Response, Slot::Bound(act("a")), Slot::var("y"));
    let mut report = Vec::new();
    let mut problems = Vec::new();
    for backend in Backend::ALL {
        let all = query_check(&q, &log, ratio(1, 1000), backend).map_err(|e| e.to_string())?;
        let supports: BTreeMap<&str, Support> = all.iter().map(|a| (a.binding["y"].as_str(), a.support)).collect();
        let at_half: Vec<(String, String)> = query_check(&q, &log, ratio(1, 2), backend)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|a| (a.binding["y"].to_string(), fmt_ratio(&a.support)))
            .collect();
        let get = |y: &str| supports.get(y).copied().unwrap_or(ratio(0, 1));
        let want = [("a", ratio(0, 1)), ("b", ratio(1, 1)), ("c", ratio(1, 3)), ("d", ratio(2, 3))];
        for (y, s) in want {
            if get(y) != s {
                problems.push(format!("{backend}: ?y={y} has support {}, expected {}", fmt_ratio(&get(y)), fmt_ratio(&s)));
            }
        }
        let want_half = vec![("b".to_string(), "1/1".to_string()), ("d".to_string(), "2/3".to_string())];
        if at_half != want_half {
            problems.push(format!("{backend}: answers at 1/2 are {at_half:?}"));
        }
        if backend == Backend::Direct {
            report.push(format!(
                "computed a={} b={} c={} d={}",
                fmt_ratio(&get("a")),
                fmt_ratio(&get("b")),
                fmt_ratio(&get("c")),
                fmt_ratio(&get("d"))
            ));
        }
    }
    if problems.is_empty() {
        Ok(report.join("; "))
    } else {
        problems.dedup_by(|x, y| x.split_once(':').map(|p| p.1) == y.split_once(':').map(|p| p.1));
        Err(format!("{}; {}", report.join("; "), problems.join("; ")))
    }
}

fn response_automaton() -> Outcome {
    let (p0, p1) = placeholders();
    let compiled = minimize(&compile(&template_formula(TemplateKind::Response, p0, p1)).map_err(|e| e.to_string())?);
    let cached = template_dfa(TemplateKind::Response, false);
    let mut want: Vec<(usize, String, usize)> =
        [(0, "*", 0), (0, "arg_1", 0), (0, "arg_0", 1), (1, "arg_1", 0), (1, "*", 1), (1, "arg_0", 1)]
            .map(|(s, x, t)| (s, x.to_string(), t))
            .to_vec();
    want.sort();
    for d in [&compiled, &*cached] {
        let facts = d.to_facts_json("Response");
        let mut got = facts.transitions.clone();
        got.sort();
        ensure(d.num_states() == 2, || format!("{} states", d.num_states()))?;
        ensure(facts.initial == 0 && facts.accepting == vec![0], || format!("initial {} accepting {:?}", facts.initial, facts.accepting))?;
        ensure(got == want, || format!("transitions {got:?}"))?;
    }
    Ok("2 states, six transitions identical, accepting {0}".into())
}

fn agreement_gate() -> Outcome {
    let exhaustive = exhaustive_check(&TemplateKind::ALL, 10);
    ensure(exhaustive.is_empty(), || format!("{} disagreements, first {:?}", exhaustive.len(), exhaustive[0]))?;
    let random = random_check(&TemplateKind::ALL, 100_000, 20, 2024);
    ensure(random.is_empty(), || format!("{} random disagreements, first {:?}", random.len(), random[0]))?;
    Ok("13 templates, 88573 traces of length <= 10 plus 100000 random traces of length <= 20, 0 disagreements".into())
}

fn subsumption() -> Outcome {
    use TemplateKind::*;
    let sigma: Vec<Activity> = (0..5).map(alphabet_label).collect();
    let (a, b) = (sigma[0], sigma[1]);
    let chains: [&[TemplateKind]; 2] =
        [&[ChainResponse, AlternateResponse, Response, RespondedExistence], &[ChainPrecedence, AlternatePrecedence, Precedence]];
    let mut checked = 0usize;
    for i in 0..10_000u64 {
        let mut rng = trace_rng(55, i);
        let len = rng.gen_range(0..=60);
        let t = Trace::new(i, (0..len).map(|_| sigma[rng.gen_range(0..5)]).collect());
        for backend in Backend::ALL {
            let holds = |k| check(&Constraint::new(0, k, a, b), &t, backend);
            for chain in chains {
                for w in chain.windows(2) {
                    ensure(!holds(w[0]) || holds(w[1]), || format!("{} does not imply {} on {:?} ({backend})", w[0], w[1], t.events))?;
                    checked += 1;
                }
            }
            for kind in [Succession, AlternateSuccession, ChainSuccession] {
                let (r, p) = kind.succession_parts().unwrap();
                ensure(holds(kind) == (holds(r) && holds(p)), || format!("{kind} is not {r} & {p} on {:?} ({backend})", t.events))?;
            }
        }
    }
    Ok(format!("10000 traces, {checked} implication checks, 0 violations"))
}

fn generator() -> Outcome {
    use TemplateKind::*;
    let family = [Response, Precedence, AlternateResponse, AlternatePrecedence, ChainResponse, ChainPrecedence];
    for kind in family {
        let c = Constraint::new(0, kind, alphabet_label(0), alphabet_label(1));
        for len in [50, 100] {
            let g = generate_log(&c, 1000, len, 15, 9).map_err(|e| e.to_string())?;
            let mut pos = 0;
            for (t, &(_, positive)) in g.log.traces().iter().zip(&g.labels) {
                ensure(t.len() == len, || format!("{c}: trace {} has length {}", t.id, t.len()))?;
                ensure(t.contains(c.activation) && t.contains(c.target), || format!("{c}: trace {} misses an activity", t.id))?;
                ensure(check(&c, t, Backend::Direct) == positive, || format!("{c}: trace {} mislabeled", t.id))?;
                pos += usize::from(positive);
            }
            ensure(pos == 500, || format!("{c}: {pos} positives"))?;
        }
    }
    let mut tables = 0;
    for kind in TemplateKind::ALL {
        let c = Constraint::new(0, kind, alphabet_label(0), alphabet_label(1));
        for k in 2..=3 {
            for positive in [true, false] {
                let g = build_generator(&c, k, positive).map_err(|e| e.to_string())?;
                let mut sigma: Vec<Activity> = g.dfa().named().to_vec();
                sigma.extend_from_slice(g.fillers());
                let mut layer: Vec<Vec<Activity>> = vec![vec![]];
                for len in 0..=7 {
                    let want = layer
                        .iter()
                        .filter(|t| {
                            t.contains(&c.activation)
                                && t.contains(&c.target)
                                && check(&c, &Trace::new(0, t.to_vec()), Backend::Direct) == positive
                        })
                        .count();
                    let got = g.count(len).map_err(|e| e.to_string())?;
                    ensure(got == BigUint::from(want), || format!("{c} k={k} len={len}: {got} vs {want}"))?;
                    tables += 1;
                    layer = layer
                        .iter()
                        .flat_map(|t| sigma.iter().map(move |&x| t.iter().copied().chain([x]).collect()))
                        .collect();
                }
            }
        }
    }
    Ok(format!("6 templates x lengths 50/100: 500+500 traces verified; {tables} count tables match enumeration"))
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn bench() -> Outcome {
    let seed_constraint = Constraint::new(0, TemplateKind::Response, alphabet_label(0), alphabet_label(1));
    let log = generate_log(&seed_constraint, 1000, 50, 15, 1).map_err(|e| e.to_string())?.log;
    let mut medians = HashMap::new();
    let mut totals = Vec::new();
    for backend in Backend::ALL {
        let start = Instant::now();
        let mut times = Vec::new();
        for (i, kind) in TemplateKind::ALL.into_iter().enumerate() {
            let model = DeclareModel::new(vec![Constraint::new(i as u64, kind, alphabet_label(0), alphabet_label(1))]).unwrap();
            let t = Instant::now();
            std::hint::black_box(conformance_check(&log, &model, backend));
            times.push(t.elapsed());
        }
        let total = start.elapsed();
        ensure(total < Duration::from_secs(10), || format!("{backend} took {total:?}"))?;
        medians.insert(backend, median(times));
        totals.push(format!("{backend} {:.1}ms", total.as_secs_f64() * 1e3));
    }
    let trend = if medians[&Backend::Direct] <= medians[&Backend::Automaton] { "holds" } else { "does not hold" };
    Ok(format!(
        "1000x50 log, 13 models: {}; median direct {:.2}ms vs dfa {:.2}ms (direct <= dfa {trend}, informational)",
        totals.join(", "),
        medians[&Backend::Direct].as_secs_f64() * 1e3,
        medians[&Backend::Automaton].as_secs_f64() * 1e3
    ))
}

fn outputs(threads: usize) -> Result<Vec<Vec<u8>>, String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
    pool.install(|| {
        let err = |e: declare_core::Error| e.to_string();
        let c = Constraint::new(0, TemplateKind::AlternateResponse, alphabet_label(0), alphabet_label(1));
        let log = generate_log(&c, 200, 30, 6, 4).map_err(err)?.log;
        let model = DeclareModel::new(
            TemplateKind::ALL.into_iter().enumerate().map(|(i, k)| Constraint::new(i as u64, k, alphabet_label(i % 3), alphabet_label(3))).collect(),
        )
        .map_err(err)?;
        let mut out = Vec::new();
        for backend in Backend::ALL {
            let report = conformance_check(&log, &model, backend);
            out.push(write_report(&report, "gen", "all", ReportFormat::Json).map_err(err)?);
            let q = Query::single(TemplateKind::Response, Slot::var("x"), Slot::var("y"));
            let answers = query_check(&q, &log, ratio(1, 4), backend).map_err(err)?;
            out.push(write_answers(&answers, "gen", &ratio(1, 4), backend).map_err(err)?);
        }
        let disagreements = exhaustive_check(&TemplateKind::ALL, 4);
        out.push(serde_json::to_vec(&disagreements).map_err(|e| e.to_string())?);
        let facts = template_dfa(TemplateKind::AlternatePrecedence, false).to_facts_json("AlternatePrecedence");
        out.push(serde_json::to_vec(&facts).map_err(|e| e.to_string())?);
        Ok(out)
    })
}

fn round_trip() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut fixtures = 0;
    for name in ["claims.xes", "running.xes"] {
        let log = read_xes_file(dir.join(name)).map_err(|e| format!("{name}: {e}"))?;
        let facts = write_factlog(&log).map_err(|e| format!("{name}: {e}"))?;
        let back = parse_factlog(&facts).map_err(|e| format!("{name}: {e}"))?;
        ensure(back == log, || format!("{name}: fact round trip changed the log"))?;
        fixtures += 1;
    }
    let reference = outputs(1)?;
    for threads in [1, 2, 4, 8] {
        for _ in 0..2 {
            ensure(outputs(threads)? == reference, || format!("JSON differs with {threads} threads"))?;
        }
    }
    Ok(format!("{fixtures} fixtures round-trip; {} JSON documents byte-identical across 1/2/4/8 threads", reference.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "trace-level verdicts of Response/AlternateResponse/ChainResponse", response_family_verdicts),
        (2, "Response(a,?y) query supports", response_query),
        (3, "minimal Response automaton facts", response_automaton),
        (4, "backend agreement gate", agreement_gate),
        (5, "subsumption hierarchy", subsumption),
        (6, "synthetic log generator", generator),
        (7, "benchmark budget", bench),
        (8, "round trip and determinism", round_trip),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({title}) [{secs:.2}s]: {detail}"),
            Err(detail) => {
                let known = KNOWN_FAILURES.contains(&id);
                println!("FAIL criterion {id} ({title}) [{secs:.2}s]{}: {detail}", if known { " [known]" } else { "" });
                if !known {
                    unexpected.push(id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
