mod common;

use std::collections::HashMap;

use common::*;
use declare_core::loggen::{alphabet_label, build_generator, generate_log, sample_trace, Generator};
use declare_core::tasks::check;
use declare_core::{Activity, Backend, Constraint, Error, TemplateKind};
use num_bigint::BigUint;
use proptest::prelude::*;

fn sigma(g: &Generator) -> Vec<Activity> {
    let mut s: Vec<Activity> = g.dfa().named().to_vec();
    s.extend_from_slice(g.fillers());
    s
}

fn in_language(c: &Constraint, positive: bool, t: &[Activity]) -> bool {
    t.contains(&c.activation) && t.contains(&c.target) && declare_holds(c.kind, c.activation, c.target, t) == positive
}

#[test]
fn counts_match_enumeration() {
    for kind in TemplateKind::ALL {
        for k in 2..=3 {
            for (x, y) in [(0, 1), (1, 0), (0, 0)] {
                let c = Constraint::new(0, kind, alphabet_label(x), alphabet_label(y));
                for positive in [true, false] {
                    let g = build_generator(&c, k, positive).unwrap();
                    let s = sigma(&g);
                    assert_eq!(s.len(), k);
                    for len in 0..=7 {
                        let want = traces_of_len(&s, len).iter().filter(|t| in_language(&c, positive, t)).count();
                        assert_eq!(g.count(len).unwrap(), BigUint::from(want), "{c} k={k} len={len} positive={positive}");
                    }
                }
            }
        }
    }
}

#[test]
fn fixed_width_counts_agree_until_overflow() {
    let c = Constraint::new(0, TemplateKind::Response, act("a_0"), act("a_1"));
    let g = build_generator(&c, 15, true).unwrap();
    let exact = g.count(12).unwrap();
    assert_eq!(BigUint::from(*g.count_table::<u64>(12).unwrap().total()), exact);
    assert_eq!(BigUint::from(*g.count_table::<u128>(12).unwrap().total()), exact);
    let approx = *g.count_table::<f64>(12).unwrap().total();
    let rel = (approx - exact.to_string().parse::<f64>().unwrap()).abs() / approx;
    assert!(rel < 1e-12);
    assert!(matches!(g.count_table::<u64>(100), Err(Error::Generator(_))));
    assert!(g.count_table::<BigUint>(100).is_ok());
}

#[test]
fn samples_are_uniform() {
    for kind in [TemplateKind::Response, TemplateKind::AlternatePrecedence, TemplateKind::ChainSuccession, TemplateKind::Choice] {
        let c = Constraint::new(0, kind, act("a_0"), act("a_1"));
        for positive in [true, false] {
            let g = build_generator(&c, 2, positive).unwrap();
            for len in 2..=6 {
                let support = g.count(len).unwrap();
                let m: usize = support.to_string().parse().unwrap();
                if m < 2 {
                    continue;
                }
                let draws = 400 * m;
                let table = g.count_table::<BigUint>(len).unwrap();
                let mut rng = declare_core::loggen::trace_rng(7, len as u64);
                let mut hist: HashMap<Vec<Activity>, usize> = HashMap::new();
                for _ in 0..draws {
                    let t = g.sample(&table, &mut rng).unwrap();
                    assert!(in_language(&c, positive, &t));
                    *hist.entry(t).or_default() += 1;
                }
                assert_eq!(hist.len(), m, "{c} len={len}");
                let p = 1.0 / m as f64;
                let mean = draws as f64 * p;
                let sd = (draws as f64 * p * (1.0 - p)).sqrt();
                // Bonferroni-style slack over m cells
                let bound = sd * (3.0 + (m as f64).ln().sqrt());
                for (t, &n) in &hist {
                    assert!((n as f64 - mean).abs() <= bound, "{c} {t:?}: {n} vs {mean}");
                }
            }
        }
    }
}

#[test]
fn generated_logs_carry_correct_labels() {
    for kind in TemplateKind::ALL {
        let c = Constraint::new(0, kind, act("a_0"), act("a_1"));
        let g = match kind {
            TemplateKind::Choice | TemplateKind::RespondedExistence | TemplateKind::Coexistence | TemplateKind::ExclusiveChoice => {
                let want = if kind == TemplateKind::ExclusiveChoice { "positive" } else { "negative" };
                assert!(matches!(generate_log(&c, 40, 12, 5, 3), Err(Error::EmptyLanguage { polarity, .. }) if polarity == want));
                continue;
            }
            _ => generate_log(&c, 40, 12, 5, 3).unwrap(),
        };
        assert_eq!(g.log.len(), 40);
        for (t, &(id, positive)) in g.log.traces().iter().zip(&g.labels) {
            assert_eq!(t.id, id);
            assert_eq!(t.len(), 12);
            assert!(t.contains(c.activation) && t.contains(c.target));
            for backend in Backend::ALL {
                assert_eq!(check(&c, t, backend), positive, "{c} {backend} {:?}", t.events);
            }
        }
        assert_eq!(g.labels.iter().filter(|l| l.1).count(), 20);
    }
}

#[test]
fn generation_is_deterministic() {
    let c = Constraint::new(0, TemplateKind::AlternateResponse, act("a_0"), act("a_1"));
    let a = generate_log(&c, 20, 30, 6, 11).unwrap();
    let b = generate_log(&c, 20, 30, 6, 11).unwrap();
    assert_eq!(a, b);
    let g = build_generator(&c, 6, false).unwrap();
    assert_eq!(sample_trace(&g, 30, 15, 11).unwrap().events, a.log.traces()[15].events);
    let other = generate_log(&c, 20, 30, 6, 12).unwrap();
    assert_ne!(a, other);
}

#[test]
fn generator_errors() {
    let c = Constraint::new(0, TemplateKind::Response, act("a_0"), act("a_1"));
    assert!(matches!(generate_log(&c, 3, 5, 4, 0), Err(Error::Generator(_))));
    assert!(matches!(build_generator(&c, 1, true), Err(Error::Generator(_))));
    let err = generate_log(&c, 2, 1, 4, 0).unwrap_err();
    assert!(matches!(err, Error::EmptyLanguage { polarity: "positive", length: 1, .. }), "{err}");
    let chain = Constraint::new(0, TemplateKind::ChainResponse, act("a_0"), act("a_1"));
    let g = generate_log(&chain, 2, 2, 2, 0).unwrap();
    assert_eq!(g.log.traces()[0].events, vec![act("a_0"), act("a_1")]);
    assert_eq!(g.log.traces()[1].events, vec![act("a_1"), act("a_0")]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_traces_satisfy_their_label(kind in proptest::sample::select(TemplateKind::ALL.to_vec()), len in 4usize..40, k in 2usize..10, seed in any::<u64>(), positive in any::<bool>()) {
        let c = Constraint::new(0, kind, act("a_0"), act("a_1"));
        let g = build_generator(&c, k, positive).unwrap();
        prop_assume!(g.count(len).unwrap() > BigUint::from(0u32));
        let t = sample_trace(&g, len, 0, seed).unwrap();
        prop_assert_eq!(t.len(), len);
        prop_assert!(in_language(&c, positive, &t.events));
        prop_assert!(t.events.iter().all(|a| sigma(&g).contains(a)));
    }
}
