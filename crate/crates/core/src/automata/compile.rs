//! LTLf to DFA by formula progression.
//!
//! A state is a residual obligation (a simplified NNF formula) for the rest
//! of the trace. Reading a symbol progresses the obligation one step; a
//! state accepts iff its residual holds on the empty remainder.
//! Strong next leaves `F true` ("something follows") in the residual and
//! weak next leaves `G false` ("nothing follows") as an alternative, which
//! keeps progression exact at the trace end.

use std::collections::{HashMap, VecDeque};

use crate::activity::Activity;
use crate::automata::Dfa;
use crate::error::Error;
use crate::ltlf::{ev_empty, nnf, Formula};

pub const DEFAULT_STATE_BUDGET: usize = 4096;

/// Compiles `f` (normalized with [`nnf`] first) with the default state budget.
pub fn compile(f: &Formula) -> Result<Dfa, Error> {
    compile_with_budget(f, DEFAULT_STATE_BUDGET)
}

pub fn compile_with_budget(f: &Formula, budget: usize) -> Result<Dfa, Error> {
    let f = nnf(f);
    let named: Vec<Activity> = f.atoms().into_iter().collect();
    let classes: Vec<Option<Activity>> = named.iter().copied().map(Some).chain([None]).collect();

    let start = normalize(&f)?;
    let mut ids: HashMap<Formula, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let mut row = Vec::with_capacity(classes.len());
        for &sym in &classes {
            let next = normalize(&progress(&states[s], sym))?;
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= budget {
                        return Err(Error::StateBudget(budget));
                    }
                    let id = states.len();
                    ids.insert(next.clone(), id);
                    states.push(next);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        if delta.len() <= s {
            delta.resize(s + 1, Vec::new());
        }
        delta[s] = row;
    }
    let accepting = states.iter().map(ev_empty).collect();
    Ok(Dfa::new(named, delta, 0, accepting))
}

/// One progression step of an NNF formula over `symbol` (`None` = any
/// activity outside the formula's atoms).
pub fn progress(f: &Formula, symbol: Option<Activity>) -> Formula {
    use Formula::*;
    let p = |x: &Formula| progress(x, symbol);
    let constant = |b: bool| if b { True } else { False };
    match f {
        True => True,
        False => False,
        Atom(a) => constant(symbol == Some(*a)),
        Not(x) => match **x {
            Atom(a) => constant(symbol != Some(a)),
            _ => panic!("progress expects negation normal form, got {f}"),
        },
        And(xs) => And(xs.iter().map(p).collect()),
        Or(xs) => Or(xs.iter().map(p).collect()),
        Next(x) => Formula::and(Formula::eventually(True), (**x).clone()),
        WeakNext(x) => Formula::or(Formula::globally(False), (**x).clone()),
        Until(a, b) => Formula::or(p(b), Formula::and(p(a), f.clone())),
        Release(a, b) => Formula::and(p(b), Formula::or(p(a), f.clone())),
        WeakUntil(a, b) => Formula::or(p(b), Formula::and(p(a), f.clone())),
        Eventually(x) => Formula::or(p(x), f.clone()),
        Globally(x) => Formula::and(p(x), f.clone()),
        Implies(..) | Iff(..) => panic!("progress expects negation normal form, got {f}"),
    }
}

/// Canonical form: constant folding, flattened/sorted/deduplicated `&`
/// and `|`, and removal of `true`/`false` operands. Preserves truth on
/// every trace including the empty one (so `F true` is kept).
pub fn simplify(f: &Formula) -> Formula {
    use Formula::*;
    let s = |x: &Formula| Box::new(simplify(x));
    match f {
        True | False | Atom(_) => f.clone(),
        Not(x) => match simplify(x) {
            True => False,
            False => True,
            Not(y) => *y,
            y => Not(Box::new(y)),
        },
        And(xs) => nary(xs, true),
        Or(xs) => nary(xs, false),
        Implies(a, b) => Implies(s(a), s(b)),
        Iff(a, b) => Iff(s(a), s(b)),
        Next(x) => match simplify(x) {
            False => False,
            y => Next(Box::new(y)),
        },
        WeakNext(x) => match simplify(x) {
            True => True,
            y => WeakNext(Box::new(y)),
        },
        Eventually(x) => match simplify(x) {
            False => False,
            y => Eventually(Box::new(y)),
        },
        Globally(x) => match simplify(x) {
            True => True,
            y => Globally(Box::new(y)),
        },
        Until(a, b) => match simplify(b) {
            False => False,
            b => Until(s(a), Box::new(b)),
        },
        Release(a, b) => match simplify(b) {
            True => True,
            b => Release(s(a), Box::new(b)),
        },
        WeakUntil(a, b) => match simplify(b) {
            True => True,
            b => WeakUntil(s(a), Box::new(b)),
        },
    }
}

fn nary(xs: &[Formula], conj: bool) -> Formula {
    let (unit, zero) = if conj { (Formula::True, Formula::False) } else { (Formula::False, Formula::True) };
    let mut items = Vec::with_capacity(xs.len());
    let mut stack: Vec<Formula> = xs.iter().rev().map(simplify).collect();
    while let Some(x) = stack.pop() {
        match x {
            Formula::And(ys) if conj => stack.extend(ys.into_iter().rev()),
            Formula::Or(ys) if !conj => stack.extend(ys.into_iter().rev()),
            x if x == unit => {}
            x if x == zero => return zero,
            x => items.push(x),
        }
    }
    items.sort();
    items.dedup();
    let mut items = absorb(items, conj);
    match items.len() {
        0 => unit,
        1 => items.pop().unwrap(),
        _ if conj => Formula::And(items),
        _ => Formula::Or(items),
    }
}

/// Clause count above which a single state is rejected as too large.
const CLAUSE_LIMIT: usize = 1 << 14;

/// State key: [`simplify`] followed by disjunctive normal form over
/// temporal literals, with subsumed clauses removed. Clauses that need
/// both a next position (`F true`) and none (`G false`) are dropped.
pub fn normalize(f: &Formula) -> Result<Formula, Error> {
    let clauses = dnf(&simplify(f))?;
    let mut out: Vec<Formula> = clauses
        .into_iter()
        .map(|mut c| match c.len() {
            1 => c.pop().unwrap(),
            _ => Formula::And(c),
        })
        .collect();
    Ok(match out.len() {
        0 => Formula::False,
        1 => out.pop().unwrap(),
        _ => Formula::Or(out),
    })
}

type Clauses = Vec<Vec<Formula>>;

fn dnf(f: &Formula) -> Result<Clauses, Error> {
    let clauses = match f {
        Formula::True => vec![Vec::new()],
        Formula::False => Vec::new(),
        Formula::Or(xs) => {
            let mut all = Vec::new();
            for x in xs {
                all.extend(dnf(x)?);
            }
            all
        }
        Formula::And(xs) => {
            let mut acc: Clauses = vec![Vec::new()];
            for x in xs {
                let part = dnf(x)?;
                if acc.len().saturating_mul(part.len()) > CLAUSE_LIMIT {
                    return Err(Error::StateBudget(CLAUSE_LIMIT));
                }
                acc = acc
                    .iter()
                    .flat_map(|c| part.iter().map(move |d| c.iter().chain(d).cloned().collect()))
                    .collect();
            }
            acc
        }
        lit => vec![vec![lit.clone()]],
    };
    Ok(reduce(clauses))
}

fn contradictory(clause: &[Formula]) -> bool {
    let nonempty = Formula::eventually(Formula::True);
    let empty = Formula::globally(Formula::False);
    if clause.contains(&nonempty) && clause.contains(&empty) {
        return true;
    }
    clause.iter().any(|x| matches!(x, Formula::Not(a) if clause.contains(a)))
}

fn reduce(clauses: Clauses) -> Clauses {
    let mut cs: Clauses = clauses
        .into_iter()
        .map(|mut c| {
            c.sort();
            c.dedup();
            c
        })
        .filter(|c| !contradictory(c))
        .collect();
    cs.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    cs.dedup();
    let mut kept: Clauses = Vec::with_capacity(cs.len());
    for c in cs {
        if !kept.iter().any(|k| is_sorted_subset(k, &c)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

fn is_sorted_subset(small: &[Formula], big: &[Formula]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Operands of the dual connective, or the formula itself.
fn dual_operands(f: &Formula, conj: bool) -> &[Formula] {
    match f {
        Formula::Or(ys) if conj => ys,
        Formula::And(ys) if !conj => ys,
        _ => std::slice::from_ref(f),
    }
}

/// Absorption: in `x & (x | y)` drops `x | y`, in `x | (x & y)` drops
/// `x & y`. Operand lists are sorted, so containment is a merge walk.
fn absorb(items: Vec<Formula>, conj: bool) -> Vec<Formula> {
    let subset = is_sorted_subset;
    let keep: Vec<bool> = items
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let big = dual_operands(f, conj);
            big.len() < 2
                || !items.iter().enumerate().any(|(j, g)| {
                    let small = dual_operands(g, conj);
                    j != i && small.len() < big.len() && subset(small, big)
                })
        })
        .collect();
    items.into_iter().zip(keep).filter_map(|(f, k)| k.then_some(f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltlf::parse_formula;

    #[test]
    fn absorption() {
        let p = |s: &str| simplify(&parse_formula(s).unwrap());
        assert_eq!(p("a & (a | b)"), p("a"));
        assert_eq!(p("(a & b) | a | (c & a & b)"), p("a"));
        assert_eq!(p("(a | b) & (a | b | c) & (c | X a)"), p("(a | b) & (c | X a)"));
    }

    #[test]
    fn simplify_is_canonical() {
        let f = parse_formula("(b & true) & (a & b)").unwrap();
        let g = parse_formula("a & (b & b)").unwrap();
        assert_eq!(simplify(&f), simplify(&g));
        assert_eq!(simplify(&parse_formula("a | false | (b | true)").unwrap()), Formula::True);
        // F true means "non-empty" and must survive
        let nonempty = Formula::eventually(Formula::True);
        assert_eq!(simplify(&nonempty), nonempty);
    }

    #[test]
    fn tautology_has_one_state() {
        let d = compile(&Formula::True).unwrap();
        assert_eq!(d.num_states(), 1);
        assert!(d.is_accepting(0));
        assert!(d.transitions().all(|(s, _, t)| s == t));
    }

    #[test]
    fn budget_is_enforced() {
        let f = parse_formula("G(a -> X(!a U b))").unwrap();
        assert!(matches!(compile_with_budget(&f, 1), Err(Error::StateBudget(1))));
    }
}
