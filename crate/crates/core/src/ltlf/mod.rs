//! Linear temporal logic over finite traces.

mod eval;
mod formula;
mod nnf;
mod parse;
mod templates;

pub use eval::{ev_empty, eval_table, eval_tree, EvalTable, Node, Op, SyntaxTree};
pub use formula::Formula;
pub use nnf::{desugar, is_nnf, nnf};
pub use parse::parse_formula;
pub use templates::{constraint_formula, placeholders, template_formula};

