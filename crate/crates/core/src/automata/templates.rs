//! Per-template automata compiled once over the placeholder atoms
//! `arg_0`/`arg_1` and bound to concrete activities at run time.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::activity::Activity;
use crate::automata::{compile, minimize, Dfa};
use crate::ltlf::{placeholders, template_formula};
use crate::model::{Constraint, TemplateKind};

/// Minimal DFA of `kind` over placeholders. With `same_args` both
/// arguments are the same placeholder (activation = target).
pub fn template_dfa(kind: TemplateKind, same_args: bool) -> Arc<Dfa> {
    static CACHE: OnceLock<Mutex<HashMap<(TemplateKind, bool), Arc<Dfa>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&(kind, same_args)) {
        return d.clone();
    }
    let (p0, p1) = placeholders();
    let f = template_formula(kind, p0, if same_args { p0 } else { p1 });
    let dfa = Arc::new(minimize(&compile(&f).expect("template automata fit the default budget")));
    cache.lock().unwrap().entry((kind, same_args)).or_insert(dfa).clone()
}

/// A template automaton bound to one constraint's activities.
#[derive(Debug, Clone)]
pub struct ConstraintAutomaton {
    dfa: Arc<Dfa>,
    activation: Activity,
    target: Activity,
    activation_class: usize,
    target_class: usize,
}

impl ConstraintAutomaton {
    pub fn new(c: &Constraint) -> Self {
        let dfa = template_dfa(c.kind, c.activation == c.target);
        Self::with_dfa(c, dfa)
    }

    /// Binds an arbitrary automaton over the placeholders (used to inject
    /// mutants when testing the cross-checker).
    pub fn with_dfa(c: &Constraint, dfa: Arc<Dfa>) -> Self {
        let (p0, p1) = placeholders();
        let activation_class = dfa.class_of(p0);
        let target_class = if c.activation == c.target { activation_class } else { dfa.class_of(p1) };
        ConstraintAutomaton { dfa, activation: c.activation, target: c.target, activation_class, target_class }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    fn class(&self, e: Activity) -> usize {
        if e == self.activation {
            self.activation_class
        } else if e == self.target {
            self.target_class
        } else {
            self.dfa.other_class()
        }
    }

    pub fn run(&self, events: &[Activity]) -> bool {
        self.dfa.run_classes(events.iter().map(|&e| self.class(e)))
    }
}
