//! Reference evaluators written straight from the definitions, used as
//! test oracles. They favour obviousness over speed.
#![allow(dead_code)]

use declare_core::ltlf::Formula;
use declare_core::{Activity, TemplateKind, Trace};
use proptest::prelude::*;

pub fn act(s: &str) -> Activity {
    Activity::named(s)
}

pub fn letters(s: &str) -> Vec<Activity> {
    s.chars().map(|c| act(&c.to_string())).collect()
}

pub fn trace(s: &str) -> Trace {
    Trace::from_chars(0, s)
}

/// `π, i ⊨ f` for `i < |π|`.
pub fn holds(f: &Formula, t: &[Activity], i: usize) -> bool {
    use Formula::*;
    let n = t.len();
    match f {
        True => true,
        False => false,
        Atom(a) => t[i] == *a,
        Not(x) => !holds(x, t, i),
        And(xs) => xs.iter().all(|x| holds(x, t, i)),
        Or(xs) => xs.iter().any(|x| holds(x, t, i)),
        Implies(a, b) => !holds(a, t, i) || holds(b, t, i),
        Iff(a, b) => holds(a, t, i) == holds(b, t, i),
        Next(x) => i + 1 < n && holds(x, t, i + 1),
        WeakNext(x) => i + 1 >= n || holds(x, t, i + 1),
        Until(a, b) => (i..n).any(|j| holds(b, t, j) && (i..j).all(|k| holds(a, t, k))),
        Release(a, b) => (i..n).all(|j| holds(b, t, j) || (i..j).any(|k| holds(a, t, k))),
        WeakUntil(a, b) => {
            (i..n).all(|k| holds(a, t, k)) || (i..n).any(|j| holds(b, t, j) && (i..j).all(|k| holds(a, t, k)))
        }
        Eventually(x) => (i..n).any(|j| holds(x, t, j)),
        Globally(x) => (i..n).all(|j| holds(x, t, j)),
    }
}

/// Empty-trace convention: operators that demand a position are false,
/// their weak duals true.
pub fn holds_empty(f: &Formula) -> bool {
    use Formula::*;
    match f {
        True => true,
        False | Atom(_) | Next(_) | Until(..) | Eventually(_) => false,
        WeakNext(_) | Release(..) | WeakUntil(..) | Globally(_) => true,
        Not(x) => !holds_empty(x),
        And(xs) => xs.iter().all(holds_empty),
        Or(xs) => xs.iter().any(holds_empty),
        Implies(a, b) => !holds_empty(a) || holds_empty(b),
        Iff(a, b) => holds_empty(a) == holds_empty(b),
    }
}

pub fn sat(f: &Formula, t: &[Activity]) -> bool {
    if t.is_empty() {
        holds_empty(f)
    } else {
        holds(f, t, 0)
    }
}

/// Declare templates as plain quantified statements over positions.
pub fn declare_holds(kind: TemplateKind, a: Activity, b: Activity, t: &[Activity]) -> bool {
    use TemplateKind::*;
    let n = t.len();
    let has = |x: Activity| t.contains(&x);
    let at = |i: usize, x: Activity| t[i] == x;
    match kind {
        Choice => has(a) || has(b),
        ExclusiveChoice => (has(a) || has(b)) && !(has(a) && has(b)),
        RespondedExistence => !has(a) || has(b),
        Coexistence => has(a) == has(b),
        Response => (0..n).all(|i| !at(i, a) || (i + 1..n).any(|j| at(j, b))),
        Precedence => (0..n).all(|j| !at(j, b) || (0..=j).any(|i| at(i, a))),
        AlternateResponse => (0..n).all(|i| {
            !at(i, a) || (i + 1..n).any(|j| at(j, b) && (i + 1..j).all(|k| !at(k, a)))
        }),
        AlternatePrecedence => (0..n).all(|j| {
            !at(j, b) || (0..=j).any(|i| at(i, a) && (i + 1..j).all(|k| !at(k, b)))
        }),
        ChainResponse => (0..n).all(|i| !at(i, a) || (i + 1 < n && at(i + 1, b))),
        ChainPrecedence => (0..n).all(|j| !at(j, b) || (j > 0 && at(j - 1, a))),
        Succession => declare_holds(Response, a, b, t) && declare_holds(Precedence, a, b, t),
        AlternateSuccession => {
            declare_holds(AlternateResponse, a, b, t) && declare_holds(AlternatePrecedence, a, b, t)
        }
        ChainSuccession => declare_holds(ChainResponse, a, b, t) && declare_holds(ChainPrecedence, a, b, t),
    }
}

/// Every sequence over `sigma` of length `0..=max_len`.
pub fn all_traces(sigma: &[Activity], max_len: usize) -> Vec<Vec<Activity>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|p: &Vec<Activity>| {
                sigma.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Sequences of exactly `len` over `sigma`.
pub fn traces_of_len(sigma: &[Activity], len: usize) -> Vec<Vec<Activity>> {
    all_traces(sigma, len).into_iter().filter(|t| t.len() == len).collect()
}

pub fn arb_formula(atoms: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => proptest::sample::select(atoms).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            inner.clone().prop_map(Formula::next),
            inner.clone().prop_map(Formula::weak_next),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::until(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::release(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::weak_until(a, b)),
            inner.clone().prop_map(Formula::eventually),
            inner.prop_map(Formula::globally),
        ]
    })
}

pub fn arb_trace(atoms: &'static [&'static str], max_len: usize) -> impl Strategy<Value = Vec<Activity>> {
    proptest::collection::vec(proptest::sample::select(atoms).prop_map(act), 0..=max_len)
}
