//! Direct backend: per-template failure and witness conditions evaluated
//! as positional scans over occurrence lists.
//!
//! A constraint holds on a trace iff no failure is found. Minima and maxima
//! over empty position sets are the sentinels [`Bound::PosInf`] and
//! [`Bound::NegInf`].

use std::collections::{BTreeMap, HashMap};

use crate::activity::Activity;
use crate::log::Trace;
use crate::ltlf::{ev_empty, template_formula};
use crate::model::{Constraint, TemplateKind};

/// A trace position extended with `−∞` and `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    At(usize),
    PosInf,
}

impl Bound {
    /// Minimum of a set of positions, `+∞` when empty.
    pub fn min_of(positions: impl IntoIterator<Item = usize>) -> Bound {
        positions.into_iter().min().map_or(Bound::PosInf, Bound::At)
    }

    /// Maximum of a set of positions, `−∞` when empty.
    pub fn max_of(positions: impl IntoIterator<Item = usize>) -> Bound {
        positions.into_iter().max().map_or(Bound::NegInf, Bound::At)
    }
}

/// Sorted occurrence positions of every activity of one trace.
#[derive(Debug, Clone, Default)]
pub struct TraceIndex {
    len: usize,
    positions: HashMap<Activity, Vec<usize>>,
}

impl TraceIndex {
    pub fn new(trace: &Trace) -> Self {
        let mut positions: HashMap<Activity, Vec<usize>> = HashMap::new();
        for (t, &a) in trace.events.iter().enumerate() {
            positions.entry(a).or_default().push(t);
        }
        TraceIndex { len: trace.len(), positions }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn occurrences(&self, a: Activity) -> &[usize] {
        self.positions.get(&a).map_or(&[], Vec::as_slice)
    }

    pub fn occurs(&self, a: Activity) -> bool {
        self.positions.contains_key(&a)
    }
}

/// Where a failure was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Site {
    Position(usize),
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reason {
    /// Activation with no later target.
    NoTargetAfter,
    /// Activation with no target before the next activation.
    NoTargetBeforeNextActivation,
    /// Activation not immediately followed by the target.
    NotFollowedByTarget,
    /// Target before the first activation.
    TargetBeforeActivation,
    /// Target occurs but the activation never does.
    TargetWithoutActivation,
    /// Two targets with no activation in between.
    TargetsNotAlternating,
    /// Target not immediately preceded by the activation.
    NotPrecededByActivation,
    /// Target at the first position.
    TargetAtStart,
    /// Target without an activation since the previous target.
    NoActivationSincePreviousTarget,
    /// Neither activity occurs in a non-empty trace.
    NeitherOccurs,
    /// Both activities occur.
    BothOccur,
    /// Activation occurs, target does not.
    MissingTarget,
    /// Target occurs, activation does not.
    MissingActivation,
    /// Trace ends with the target (optional compatibility rule).
    EndsWithTarget,
    /// The empty trace does not satisfy the template formula.
    EmptyTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub site: Site,
    pub reason: Reason,
}

/// Outcome of a direct check: `sat` iff `failures` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirectVerdict {
    pub sat: bool,
    pub failures: Vec<Failure>,
    /// Activation (or, for the alternate-succession precedence side,
    /// target) position mapped to the position that discharges it.
    pub witnesses: BTreeMap<usize, usize>,
    /// Elementary scan steps performed; bounded by trace length plus
    /// occurrence counts.
    pub steps: usize,
}

/// Behaviour switches for rules that deviate from the LTLp definitions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DirectOptions {
    /// Additionally fail AlternateSuccession on traces whose last event is
    /// the target.
    pub alternate_succession_last_target: bool,
}

#[derive(Default)]
struct Scan {
    failures: Vec<Failure>,
    witnesses: BTreeMap<usize, usize>,
    steps: usize,
}

impl Scan {
    fn fail(&mut self, site: Site, reason: Reason) {
        self.failures.push(Failure { site, reason });
    }

    fn fail_at(&mut self, t: usize, reason: Reason) {
        self.fail(Site::Position(t), reason);
    }
}

pub fn check_direct(c: &Constraint, trace: &Trace) -> DirectVerdict {
    check_direct_indexed(c, trace, &TraceIndex::new(trace), DirectOptions::default())
}

/// Checks `c` using a prebuilt occurrence index of `trace`.
pub fn check_direct_indexed(c: &Constraint, trace: &Trace, index: &TraceIndex, opts: DirectOptions) -> DirectVerdict {
    let mut scan = Scan::default();
    if trace.is_empty() {
        if !ev_empty(&template_formula(c.kind, c.activation, c.target)) {
            scan.fail(Site::Trace, Reason::EmptyTrace);
        }
    } else {
        check_kind(c.kind, c, trace, index, &mut scan);
        if c.kind == TemplateKind::AlternateSuccession
            && opts.alternate_succession_last_target
            && trace.events.last() == Some(&c.target)
        {
            scan.fail_at(trace.len() - 1, Reason::EndsWithTarget);
        }
    }
    scan.failures.sort();
    scan.failures.dedup();
    DirectVerdict { sat: scan.failures.is_empty(), failures: scan.failures, witnesses: scan.witnesses, steps: scan.steps }
}

/// Shorthand for `check_direct_indexed(..).sat` with default options.
pub fn holds_direct(c: &Constraint, trace: &Trace, index: &TraceIndex) -> bool {
    check_direct_indexed(c, trace, index, DirectOptions::default()).sat
}

fn check_kind(kind: TemplateKind, c: &Constraint, trace: &Trace, ix: &TraceIndex, scan: &mut Scan) {
    use TemplateKind::*;
    let (act, tgt) = (c.activation, c.target);
    match kind {
        Response => response(ix.occurrences(act), ix.occurrences(tgt), scan),
        Precedence => precedence(ix.occurrences(act), ix.occurrences(tgt), scan),
        AlternateResponse => alternate_response(ix.occurrences(act), ix.occurrences(tgt), scan),
        AlternatePrecedence => {
            precedence(ix.occurrences(act), ix.occurrences(tgt), scan);
            targets_alternate(ix.occurrences(act), ix.occurrences(tgt), scan);
        }
        ChainResponse => chain_response(&trace.events, ix.occurrences(act), tgt, scan),
        ChainPrecedence => chain_precedence(&trace.events, act, ix.occurrences(tgt), scan),
        Succession | ChainSuccession => {
            let (r, p) = kind.succession_parts().unwrap();
            check_kind(r, c, trace, ix, scan);
            check_kind(p, c, trace, ix, scan);
        }
        AlternateSuccession => {
            alternate_response(ix.occurrences(act), ix.occurrences(tgt), scan);
            activation_since_previous_target(ix.occurrences(act), ix.occurrences(tgt), scan);
        }
        Choice => {
            if !ix.occurs(act) && !ix.occurs(tgt) {
                scan.fail(Site::Trace, Reason::NeitherOccurs);
            }
        }
        ExclusiveChoice => match (ix.occurs(act), ix.occurs(tgt)) {
            (true, true) => scan.fail(Site::Trace, Reason::BothOccur),
            (false, false) => scan.fail(Site::Trace, Reason::NeitherOccurs),
            _ => {}
        },
        RespondedExistence => {
            if ix.occurs(act) && !ix.occurs(tgt) {
                scan.fail(Site::Trace, Reason::MissingTarget);
            }
        }
        Coexistence => match (ix.occurs(act), ix.occurs(tgt)) {
            (true, false) => scan.fail(Site::Trace, Reason::MissingTarget),
            (false, true) => scan.fail(Site::Trace, Reason::MissingActivation),
            _ => {}
        },
    }
}

/// First element of sorted `xs` strictly greater than `t`, advancing `cursor`.
fn next_after(xs: &[usize], cursor: &mut usize, t: usize, steps: &mut usize) -> Bound {
    while *cursor < xs.len() && xs[*cursor] <= t {
        *cursor += 1;
        *steps += 1;
    }
    xs.get(*cursor).map_or(Bound::PosInf, |&q| Bound::At(q))
}

// witness(t) :- act at t, tgt at t' > t.
fn response(acts: &[usize], tgts: &[usize], scan: &mut Scan) {
    let mut cur = 0;
    for &t in acts {
        scan.steps += 1;
        match next_after(tgts, &mut cur, t, &mut scan.steps) {
            Bound::At(w) => {
                scan.witnesses.insert(t, w);
            }
            _ => scan.fail_at(t, Reason::NoTargetAfter),
        }
    }
}

// fail :- tgt at t' < min{act}; fail :- tgt occurs, act never does.
fn precedence(acts: &[usize], tgts: &[usize], scan: &mut Scan) {
    if tgts.is_empty() {
        return;
    }
    if acts.is_empty() {
        scan.fail(Site::Trace, Reason::TargetWithoutActivation);
        return;
    }
    let first = Bound::min_of(acts.first().copied());
    for &t in tgts {
        scan.steps += 1;
        if Bound::At(t) < first {
            scan.fail_at(t, Reason::TargetBeforeActivation);
        } else {
            break;
        }
    }
}

// witness(t) :- act at t, tgt at t' with t < t' < min{act q > t} (+∞ if none).
fn alternate_response(acts: &[usize], tgts: &[usize], scan: &mut Scan) {
    let mut cur = 0;
    for (i, &t) in acts.iter().enumerate() {
        scan.steps += 1;
        let next_act = Bound::min_of(acts.get(i + 1).copied());
        match next_after(tgts, &mut cur, t, &mut scan.steps) {
            Bound::At(w) if Bound::At(w) < next_act => {
                scan.witnesses.insert(t, w);
            }
            _ => scan.fail_at(t, Reason::NoTargetBeforeNextActivation),
        }
    }
}

// fail :- tgt at t0 < t2 with no act in [t0, t2]; consecutive targets suffice.
fn targets_alternate(acts: &[usize], tgts: &[usize], scan: &mut Scan) {
    let mut cur = 0;
    for pair in tgts.windows(2) {
        scan.steps += 1;
        let (t0, t2) = (pair[0], pair[1]);
        while cur < acts.len() && acts[cur] < t0 {
            cur += 1;
            scan.steps += 1;
        }
        if Bound::min_of(acts.get(cur).copied()) > Bound::At(t2) {
            scan.fail_at(t2, Reason::TargetsNotAlternating);
        }
    }
}

// witness(t2) :- tgt at t2, act at t1 with max{tgt t < t2} (−∞ if none) < t1 < t2.
fn activation_since_previous_target(acts: &[usize], tgts: &[usize], scan: &mut Scan) {
    let mut cur = 0;
    let mut prev = Bound::NegInf;
    for &t2 in tgts {
        scan.steps += 1;
        let after = match prev {
            Bound::At(p) => next_after(acts, &mut cur, p, &mut scan.steps),
            _ => Bound::min_of(acts.first().copied()),
        };
        match after {
            Bound::At(t1) if t1 < t2 && Bound::At(t1) > prev => {
                scan.witnesses.insert(t2, t1);
            }
            _ => scan.fail_at(t2, Reason::NoActivationSincePreviousTarget),
        }
        prev = Bound::At(t2);
    }
}

// fail :- act at t, not tgt at t + 1.
fn chain_response(events: &[Activity], acts: &[usize], tgt: Activity, scan: &mut Scan) {
    for &t in acts {
        scan.steps += 1;
        if events.get(t + 1) == Some(&tgt) {
            scan.witnesses.insert(t, t + 1);
        } else {
            scan.fail_at(t, Reason::NotFollowedByTarget);
        }
    }
}

// fail :- tgt at t + 1, not act at t;  fail :- tgt at 0.
fn chain_precedence(events: &[Activity], act: Activity, tgts: &[usize], scan: &mut Scan) {
    for &t in tgts {
        scan.steps += 1;
        if t == 0 {
            scan.fail_at(0, Reason::TargetAtStart);
        } else if events[t - 1] != act {
            scan.fail_at(t, Reason::NotPrecededByActivation);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(kind: TemplateKind, a: &str, b: &str) -> Constraint {
        Constraint::new(0, kind, Activity::named(a), Activity::named(b))
    }

    fn verdict(kind: TemplateKind, trace: &str) -> DirectVerdict {
        check_direct(&c(kind, "a", "b"), &Trace::from_chars(0, trace))
    }

    #[test]
    fn response_witnesses() {
        let v = verdict(TemplateKind::Response, "abacb");
        assert!(v.sat);
        assert_eq!(v.witnesses, BTreeMap::from([(0, 1), (2, 4)]));
    }

    #[test]
    fn alternate_response_fails_at_first_activation() {
        let v = verdict(TemplateKind::AlternateResponse, "aaabc");
        assert!(!v.sat);
        assert_eq!(
            v.failures,
            vec![
                Failure { site: Site::Position(0), reason: Reason::NoTargetBeforeNextActivation },
                Failure { site: Site::Position(1), reason: Reason::NoTargetBeforeNextActivation },
            ]
        );
    }

    #[test]
    fn chain_response() {
        assert!(verdict(TemplateKind::ChainResponse, "abab").sat);
        assert!(!verdict(TemplateKind::ChainResponse, "abacb").sat);
    }

    #[test]
    fn complaint_example() {
        let labels = ["customer_complains", "logging_complain", "address_complain", "customer_complains", "feedback_collection"];
        let trace = Trace::new(0, labels.iter().map(|l| Activity::named(l)).collect());
        let rule = c(TemplateKind::Response, "customer_complains", "address_complain");
        let v = check_direct(&rule, &trace);
        assert!(!v.sat);
        assert_eq!(v.failures, vec![Failure { site: Site::Position(3), reason: Reason::NoTargetAfter }]);
        let ok = Trace::new(0, labels[..3].iter().map(|l| Activity::named(l)).collect());
        assert!(check_direct(&rule, &ok).sat);
    }

    #[test]
    fn exclusive_choice() {
        assert!(!verdict(TemplateKind::ExclusiveChoice, "ab").sat);
        assert!(verdict(TemplateKind::ExclusiveChoice, "accc").sat);
        assert!(!verdict(TemplateKind::ExclusiveChoice, "ccc").sat);
    }

    #[test]
    fn precedence_rules() {
        assert!(verdict(TemplateKind::Precedence, "cab").sat);
        let v = verdict(TemplateKind::Precedence, "bcab");
        assert_eq!(v.failures, vec![Failure { site: Site::Position(0), reason: Reason::TargetBeforeActivation }]);
        let v = verdict(TemplateKind::Precedence, "cb");
        assert_eq!(v.failures, vec![Failure { site: Site::Trace, reason: Reason::TargetWithoutActivation }]);
    }

    #[test]
    fn alternate_precedence_needs_activation_between_targets() {
        assert!(verdict(TemplateKind::AlternatePrecedence, "abab").sat);
        assert!(!verdict(TemplateKind::AlternatePrecedence, "abcb").sat);
        assert!(!verdict(TemplateKind::AlternatePrecedence, "abb").sat);
    }

    #[test]
    fn chain_precedence_rules() {
        assert!(verdict(TemplateKind::ChainPrecedence, "cab").sat);
        assert!(!verdict(TemplateKind::ChainPrecedence, "bab").sat);
        assert!(!verdict(TemplateKind::ChainPrecedence, "acb").sat);
    }

    #[test]
    fn alternate_succession_compat_rule() {
        let rule = c(TemplateKind::AlternateSuccession, "a", "b");
        let t = Trace::from_chars(0, "ab");
        assert!(check_direct(&rule, &t).sat);
        let strict = DirectOptions { alternate_succession_last_target: true };
        assert!(!check_direct_indexed(&rule, &t, &TraceIndex::new(&t), strict).sat);
    }

    #[test]
    fn empty_trace_follows_formula() {
        assert!(!verdict(TemplateKind::Choice, "").sat);
        assert!(!verdict(TemplateKind::ExclusiveChoice, "").sat);
        for k in TemplateKind::ALL {
            if !matches!(k, TemplateKind::Choice | TemplateKind::ExclusiveChoice) {
                assert!(verdict(k, "").sat, "{k}");
            }
        }
    }

    #[test]
    fn sentinels_order() {
        assert!(Bound::NegInf < Bound::At(0));
        assert!(Bound::At(usize::MAX) < Bound::PosInf);
        assert_eq!(Bound::min_of([]), Bound::PosInf);
        assert_eq!(Bound::max_of([]), Bound::NegInf);
        assert_eq!(Bound::max_of([3, 9]), Bound::At(9));
    }

    #[test]
    fn response_is_strict_for_equal_arguments() {
        let rule = c(TemplateKind::Response, "a", "a");
        assert!(!check_direct(&rule, &Trace::from_chars(0, "aba")).sat);
    }
}
