use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::activity::{Activity, WILDCARD};

/// Input class of a transition: a named activity, or any other activity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolClass {
    Named(Activity),
    Other,
}

/// Total DFA over `named ∪ {Other}`.
///
/// Class index `i < named.len()` is `Named(named[i])`; class
/// `named.len()` is `Other`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    named: Vec<Activity>,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Panics if the transition table is not total or references a missing state.
    pub fn new(named: Vec<Activity>, delta: Vec<Vec<usize>>, initial: usize, accepting: Vec<bool>) -> Self {
        let classes = named.len() + 1;
        assert!(!delta.is_empty(), "a DFA needs at least one state");
        assert_eq!(delta.len(), accepting.len());
        assert!(initial < delta.len());
        for row in &delta {
            assert_eq!(row.len(), classes, "transition table must be total");
            assert!(row.iter().all(|&s| s < delta.len()));
        }
        Dfa { named, delta, initial, accepting }
    }

    pub fn named(&self) -> &[Activity] {
        &self.named
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    /// `named.len() + 1`.
    pub fn num_classes(&self) -> usize {
        self.named.len() + 1
    }

    pub fn other_class(&self) -> usize {
        self.named.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn step(&self, state: usize, class: usize) -> usize {
        self.delta[state][class]
    }

    pub fn class(&self, index: usize) -> SymbolClass {
        self.named.get(index).map_or(SymbolClass::Other, |&a| SymbolClass::Named(a))
    }

    /// Class index of a concrete activity.
    pub fn class_of(&self, activity: Activity) -> usize {
        self.named.iter().position(|&a| a == activity).unwrap_or(self.named.len())
    }

    pub fn run_classes(&self, classes: impl IntoIterator<Item = usize>) -> bool {
        let end = classes.into_iter().fold(self.initial, |s, c| self.delta[s][c]);
        self.accepting[end]
    }

    /// Runs the DFA on concrete activities; activities outside `named` read as `Other`.
    pub fn run(&self, events: &[Activity]) -> bool {
        self.run_classes(events.iter().map(|&e| self.class_of(e)))
    }

    /// Same automaton with the accepting set swapped.
    pub fn complement(&self) -> Dfa {
        Dfa { accepting: self.accepting.iter().map(|a| !a).collect(), ..self.clone() }
    }

    /// Renumbers reachable states in breadth-first order from the initial
    /// state (which becomes 0), dropping unreachable ones.
    pub fn canonical(&self) -> Dfa {
        let mut order = vec![usize::MAX; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        let mut seq = Vec::new();
        order[self.initial] = 0;
        seq.push(self.initial);
        while let Some(s) = queue.pop_front() {
            for &t in &self.delta[s] {
                if order[t] == usize::MAX {
                    order[t] = seq.len();
                    seq.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = seq.iter().map(|&s| self.delta[s].iter().map(|&t| order[t]).collect()).collect();
        let accepting = seq.iter().map(|&s| self.accepting[s]).collect();
        Dfa { named: self.named.clone(), delta, initial: 0, accepting }
    }

    /// Transitions as `(from, class, to)` in state-major, class-minor order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, SymbolClass, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(move |(s, row)| {
            row.iter().enumerate().map(move |(c, &t)| (s, self.class(c), t))
        })
    }

    fn symbol_label(class: SymbolClass) -> &'static str {
        match class {
            SymbolClass::Named(a) => a.as_str(),
            SymbolClass::Other => WILDCARD,
        }
    }

    /// JSON mirror of the `template/4`, `initial/2`, `accepting/2` facts.
    pub fn to_facts_json(&self, kind: &str) -> FactsJson {
        FactsJson {
            kind: kind.to_owned(),
            initial: self.initial,
            accepting: (0..self.num_states()).filter(|&s| self.accepting[s]).collect(),
            transitions: self
                .transitions()
                .map(|(s, c, t)| (s, Self::symbol_label(c).to_owned(), t))
                .collect(),
        }
    }

    /// The automaton as ASP facts, e.g. `template("Response",0,arg_1,0).`
    pub fn to_facts(&self, kind: &str) -> String {
        let mut out = String::new();
        for (s, c, t) in self.transitions() {
            let sym = match c {
                SymbolClass::Named(a) => a.as_str().to_owned(),
                SymbolClass::Other => format!("\"{WILDCARD}\""),
            };
            writeln!(out, "template({kind:?},{s},{sym},{t}).").unwrap();
        }
        for s in (0..self.num_states()).filter(|&s| self.accepting[s]) {
            writeln!(out, "accepting({kind:?},{s}).").unwrap();
        }
        writeln!(out, "initial({kind:?},{}).", self.initial).unwrap();
        out
    }

    /// Graphviz rendering; parallel edges are merged into one comma-separated label.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {name:?} {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  start [shape=point];").unwrap();
        for s in 0..self.num_states() {
            let shape = if self.accepting[s] { "doublecircle" } else { "circle" };
            writeln!(out, "  {s} [shape={shape}];").unwrap();
        }
        writeln!(out, "  start -> {};", self.initial).unwrap();
        for s in 0..self.num_states() {
            let mut targets: Vec<usize> = self.delta[s].clone();
            targets.sort_unstable();
            targets.dedup();
            for t in targets {
                let labels: Vec<&str> = (0..self.num_classes())
                    .filter(|&c| self.delta[s][c] == t)
                    .map(|c| Self::symbol_label(self.class(c)))
                    .collect();
                writeln!(out, "  {s} -> {t} [label={:?}];", labels.join(",")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Serialized automaton: `transitions` entries are `[from, symbol, to]`
/// with `symbol` a named label or `"*"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactsJson {
    pub kind: String,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}
