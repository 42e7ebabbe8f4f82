//! Labeled synthetic logs sampled uniformly from constraint automata.

mod counts;

pub use counts::{PathCount, PathCountTable};

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::activity::Activity;
use crate::automata::{minimize, template_dfa, Dfa};
use crate::error::Error;
use crate::ltlf::placeholders;
use crate::log::{EventLog, Trace};
use crate::model::Constraint;

/// SplitMix64 finalizer; seeds the per-trace streams as
/// `splitmix64(seed ^ trace_id)`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn trace_rng(seed: u64, trace_id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ trace_id))
}

/// Label `a_i`.
pub fn alphabet_label(i: usize) -> Activity {
    Activity::named(&format!("a_{i}"))
}

/// Strings over `k` activities accepted (or rejected, if `!positive`) by a
/// constraint, restricted to those containing both its activities.
#[derive(Debug, Clone)]
pub struct Generator {
    constraint: Constraint,
    positive: bool,
    dfa: Dfa,
    fillers: Vec<Activity>,
}

pub fn build_generator(c: &Constraint, k: usize, positive: bool) -> Result<Generator, Error> {
    let named: Vec<Activity> =
        if c.activation == c.target { vec![c.activation] } else { vec![c.activation, c.target] };
    if k < 2 || k < named.len() {
        return Err(Error::Generator(format!("alphabet size {k} is too small for {c}")));
    }
    let fillers: Vec<Activity> =
        (0..).map(alphabet_label).filter(|a| !named.contains(a)).take(k - named.len()).collect();

    let t = template_dfa(c.kind, named.len() == 1);
    let (p0, p1) = placeholders();
    let tclass = [t.class_of(p0), t.class_of(if named.len() == 1 { p0 } else { p1 }), t.other_class()];

    // product state: (template state, seen activation, seen target)
    let classes = named.len() + 1;
    let start = (t.initial(), false, false);
    let mut ids: HashMap<(usize, bool, bool), usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut queue = VecDeque::from([start]);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    while let Some((q, sa, sb)) = queue.pop_front() {
        let mut row = Vec::with_capacity(classes);
        for c in 0..classes {
            let (tc, na, nb) = match (c, named.len()) {
                (0, 1) => (tclass[0], true, true),
                (0, _) => (tclass[0], true, sb),
                (1, 2) => (tclass[1], sa, true),
                _ => (tclass[2], sa, sb),
            };
            let next = (t.step(q, tc), na, nb);
            let fresh = ids.len();
            let id = *ids.entry(next).or_insert_with(|| {
                states.push(next);
                queue.push_back(next);
                fresh
            });
            row.push(id);
        }
        delta.push(row);
    }
    let accepting = states.iter().map(|&(q, sa, sb)| sa && sb && t.is_accepting(q) == positive).collect();
    let dfa = minimize(&Dfa::new(named, delta, 0, accepting));
    Ok(Generator { constraint: *c, positive, dfa, fillers })
}

impl Generator {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    pub fn positive(&self) -> bool {
        self.positive
    }

    /// Concrete activities standing for the `Other` class.
    pub fn fillers(&self) -> &[Activity] {
        &self.fillers
    }

    pub fn count_table<C: PathCount>(&self, length: usize) -> Result<PathCountTable<C>, Error> {
        PathCountTable::build(&self.dfa, self.fillers.len() as u64, length)
    }

    /// Number of accepted strings of `length` over the `k` activities.
    pub fn count(&self, length: usize) -> Result<BigUint, Error> {
        Ok(self.count_table::<BigUint>(length)?.total().clone())
    }

    fn empty_language(&self, length: usize) -> Error {
        Error::EmptyLanguage {
            polarity: if self.positive { "positive" } else { "negative" },
            length,
            constraint: self.constraint.to_string(),
        }
    }

    /// Samples one string uniformly from the accepted strings of the table's length.
    pub fn sample<C: PathCount, R: Rng + ?Sized>(&self, table: &PathCountTable<C>, rng: &mut R) -> Result<Vec<Activity>, Error> {
        let classes = table.sample_classes(&self.dfa, rng).ok_or_else(|| self.empty_language(table.length()))?;
        let other = self.dfa.other_class();
        Ok(classes
            .into_iter()
            .map(|c| if c == other { self.fillers[rng.gen_range(0..self.fillers.len())] } else { self.dfa.named()[c] })
            .collect())
    }
}

/// One trace of length `length` seeded from `(seed, id)`.
pub fn sample_trace(g: &Generator, length: usize, id: u64, seed: u64) -> Result<Trace, Error> {
    let table = g.count_table::<BigUint>(length)?;
    Ok(Trace::new(id, g.sample(&table, &mut trace_rng(seed, id))?))
}

/// A generated log with the polarity of every trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedLog {
    pub log: EventLog,
    /// `(trace id, positive)` in id order.
    pub labels: Vec<(u64, bool)>,
}

impl GeneratedLog {
    /// `trace_id,label` CSV with `positive`/`negative` labels.
    pub fn manifest_csv(&self) -> String {
        let mut out = String::from("trace_id,label\n");
        for (id, pos) in &self.labels {
            out.push_str(&format!("{id},{}\n", if *pos { "positive" } else { "negative" }));
        }
        out
    }
}

/// `n/2` positive traces (ids `0..n/2`) followed by `n/2` negative ones,
/// each of exactly `length` events over `k` activities.
pub fn generate_log(c: &Constraint, n: usize, length: usize, k: usize, seed: u64) -> Result<GeneratedLog, Error> {
    if !n.is_multiple_of(2) {
        return Err(Error::Generator(format!("trace count {n} must be even")));
    }
    let half = n / 2;
    let mut traces = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (positive, offset) in [(true, 0), (false, half)] {
        let g = build_generator(c, k, positive)?;
        let table = g.count_table::<BigUint>(length)?;
        if table.total().is_zero() {
            return Err(g.empty_language(length));
        }
        let part: Result<Vec<Trace>, Error> = (offset..offset + half)
            .into_par_iter()
            .map(|id| {
                let id = id as u64;
                Ok(Trace::new(id, g.sample(&table, &mut trace_rng(seed, id))?))
            })
            .collect();
        traces.extend(part?);
        labels.extend((offset..offset + half).map(|id| (id as u64, positive)));
    }
    Ok(GeneratedLog { log: EventLog::new(traces)?, labels })
}
