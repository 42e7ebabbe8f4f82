//! Automaton backend: DFAs over named activities plus a wildcard class.

mod compile;
mod dfa;
mod minimize;
mod templates;

pub use compile::{compile, compile_with_budget, normalize, progress, simplify, DEFAULT_STATE_BUDGET};
pub use dfa::{Dfa, FactsJson, SymbolClass};
pub use minimize::minimize;
pub use templates::{template_dfa, ConstraintAutomaton};

use crate::activity::Activity;
use crate::log::Trace;

/// Runs `d` on `trace`, reading every activity outside `named` as `Other`.
pub fn run(d: &Dfa, trace: &Trace, named: &[Activity]) -> bool {
    let other = d.other_class();
    d.run_classes(trace.events.iter().map(|e| {
        if named.contains(e) {
            d.class_of(*e)
        } else {
            other
        }
    }))
}
