//! Syntax-tree evaluation: a backward dynamic program over trace positions
//! filling one truth value per (sub-formula, position).

use std::fmt;

use crate::activity::Activity;
use crate::log::Trace;
use crate::ltlf::formula::write_label;
use crate::ltlf::Formula;

/// Node operator of a reified syntax tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    True,
    False,
    Atom(Activity),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    WeakNext,
    Until,
    Release,
    WeakUntil,
    Eventually,
    Globally,
}

impl Op {
    fn fact_name(self) -> &'static str {
        match self {
            Op::True => "true",
            Op::False => "false",
            Op::Atom(_) => "atom",
            Op::Not => "negate",
            Op::And => "conjunction",
            Op::Or => "disjunction",
            Op::Implies => "implies",
            Op::Iff => "equivalent",
            Op::Next => "next",
            Op::WeakNext => "weak_next",
            Op::Until => "until",
            Op::Release => "release",
            Op::WeakUntil => "weak_until",
            Op::Eventually => "eventually",
            Op::Globally => "always",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub op: Op,
    pub children: Vec<usize>,
}

/// A formula flattened into nodes numbered in pre-order: the root is 0 and
/// every child has a larger id than its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxTree {
    nodes: Vec<Node>,
}

impl SyntaxTree {
    pub fn new(f: &Formula) -> Self {
        let mut nodes = Vec::with_capacity(f.size());
        Self::push(f, &mut nodes);
        SyntaxTree { nodes }
    }

    fn push(f: &Formula, nodes: &mut Vec<Node>) -> usize {
        use Formula as F;
        let id = nodes.len();
        let op = match f {
            F::True => Op::True,
            F::False => Op::False,
            F::Atom(a) => Op::Atom(*a),
            F::Not(_) => Op::Not,
            F::And(_) => Op::And,
            F::Or(_) => Op::Or,
            F::Implies(..) => Op::Implies,
            F::Iff(..) => Op::Iff,
            F::Next(_) => Op::Next,
            F::WeakNext(_) => Op::WeakNext,
            F::Until(..) => Op::Until,
            F::Release(..) => Op::Release,
            F::WeakUntil(..) => Op::WeakUntil,
            F::Eventually(_) => Op::Eventually,
            F::Globally(_) => Op::Globally,
        };
        nodes.push(Node { op, children: Vec::new() });
        let children = f.children().into_iter().map(|c| Self::push(c, nodes)).collect();
        nodes[id].children = children;
        id
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Truth value on the empty trace, see [`ev_empty`].
    pub fn ev_empty(&self) -> bool {
        let mut vals = vec![false; self.nodes.len()];
        for id in (0..self.nodes.len()).rev() {
            let n = &self.nodes[id];
            let c = |k: usize| vals[n.children[k]];
            vals[id] = match n.op {
                Op::True => true,
                Op::False | Op::Atom(_) => false,
                Op::Not => !c(0),
                Op::And => n.children.iter().all(|&k| vals[k]),
                Op::Or => n.children.iter().any(|&k| vals[k]),
                Op::Implies => !c(0) || c(1),
                Op::Iff => c(0) == c(1),
                Op::Next | Op::Until | Op::Eventually => false,
                Op::WeakNext | Op::Release | Op::Globally | Op::WeakUntil => true,
            };
        }
        vals[0]
    }

    /// Fills the full (node, position) table for `events`.
    pub fn eval_table(&self, events: &[Activity]) -> EvalTable {
        let n = events.len();
        let width = self.nodes.len();
        let mut table = EvalTable { nodes: width, len: n, cells: vec![false; width * n], fills: 0 };
        for t in (0..n).rev() {
            let last = t + 1 == n;
            for id in (0..width).rev() {
                let node = &self.nodes[id];
                let at = |k: usize, pos: usize| table.cells[pos * width + node.children[k]];
                let here = |k: usize| at(k, t);
                let own_next = || !last && table.cells[(t + 1) * width + id];
                let v = match node.op {
                    Op::True => true,
                    Op::False => false,
                    Op::Atom(a) => events[t] == a,
                    Op::Not => !here(0),
                    Op::And => node.children.iter().all(|&k| table.cells[t * width + k]),
                    Op::Or => node.children.iter().any(|&k| table.cells[t * width + k]),
                    Op::Implies => !here(0) || here(1),
                    Op::Iff => here(0) == here(1),
                    Op::Next => !last && at(0, t + 1),
                    Op::WeakNext => last || at(0, t + 1),
                    Op::Until => here(1) || (here(0) && own_next()),
                    Op::Release => here(1) && (here(0) || last || own_next()),
                    Op::WeakUntil => here(1) || (here(0) && (last || own_next())),
                    Op::Eventually => here(0) || own_next(),
                    Op::Globally => here(0) && (last || own_next()),
                };
                table.cells[t * width + id] = v;
                table.fills += 1;
            }
        }
        table
    }

    /// `π ⊨ f`, with the empty trace decided by [`SyntaxTree::ev_empty`].
    pub fn eval(&self, events: &[Activity]) -> bool {
        if events.is_empty() {
            self.ev_empty()
        } else {
            self.eval_table(events).get(0, 0)
        }
    }

    /// Writes the tree as `op(id, children...)` facts, one per line.
    pub fn facts(&self) -> String {
        let mut out = String::new();
        for (id, n) in self.nodes.iter().enumerate() {
            out.push_str(n.op.fact_name());
            out.push('(');
            out.push_str(&id.to_string());
            if let Op::Atom(a) = n.op {
                out.push(',');
                write_label(&mut out, a.as_str()).unwrap();
            }
            for c in &n.children {
                out.push(',');
                out.push_str(&c.to_string());
            }
            out.push_str(").\n");
        }
        out
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.facts())
    }
}

/// Truth of every sub-formula at every position of one trace.
#[derive(Debug, Clone)]
pub struct EvalTable {
    nodes: usize,
    len: usize,
    cells: Vec<bool>,
    fills: usize,
}

impl EvalTable {
    /// Whether sub-formula `node` holds at position `t`.
    pub fn get(&self, node: usize, t: usize) -> bool {
        assert!(node < self.nodes && t < self.len, "({node}, {t}) out of range");
        self.cells[t * self.nodes + node]
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn trace_len(&self) -> usize {
        self.len
    }

    /// Number of cells written while filling the table.
    pub fn fills(&self) -> usize {
        self.fills
    }
}

/// Evaluates `f` on the empty trace: atoms, `X`, `U`, `F` are false;
/// `Xw`, `R`, `G`, `W` are true; connectives are structural.
pub fn ev_empty(f: &Formula) -> bool {
    use Formula::*;
    match f {
        True => true,
        False | Atom(_) => false,
        Not(x) => !ev_empty(x),
        And(xs) => xs.iter().all(ev_empty),
        Or(xs) => xs.iter().any(ev_empty),
        Implies(a, b) => !ev_empty(a) || ev_empty(b),
        Iff(a, b) => ev_empty(a) == ev_empty(b),
        Next(_) | Until(..) | Eventually(_) => false,
        WeakNext(_) | Release(..) | Globally(_) | WeakUntil(..) => true,
    }
}

pub fn eval_table(f: &Formula, trace: &Trace) -> EvalTable {
    SyntaxTree::new(f).eval_table(&trace.events)
}

/// `π, 0 ⊨ f`.
pub fn eval_tree(f: &Formula, trace: &Trace) -> bool {
    SyntaxTree::new(f).eval(&trace.events)
}
