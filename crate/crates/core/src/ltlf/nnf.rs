//! Negation normal form and desugaring into the core grammar.

use crate::ltlf::Formula;

/// Pushes negations down to atoms. The result contains no `Not` except
/// directly above an atom, and no `->` or `<->`.
pub fn nnf(f: &Formula) -> Formula {
    pos(f)
}

fn pos(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        True | False | Atom(_) => f.clone(),
        Not(x) => neg(x),
        And(xs) => And(xs.iter().map(pos).collect()),
        Or(xs) => Or(xs.iter().map(pos).collect()),
        Implies(a, b) => Formula::or(neg(a), pos(b)),
        Iff(a, b) => Formula::or(Formula::and(pos(a), pos(b)), Formula::and(neg(a), neg(b))),
        Next(x) => Formula::next(pos(x)),
        WeakNext(x) => Formula::weak_next(pos(x)),
        Until(a, b) => Formula::until(pos(a), pos(b)),
        Release(a, b) => Formula::release(pos(a), pos(b)),
        WeakUntil(a, b) => Formula::weak_until(pos(a), pos(b)),
        Eventually(x) => Formula::eventually(pos(x)),
        Globally(x) => Formula::globally(pos(x)),
    }
}

fn neg(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        True => False,
        False => True,
        Atom(_) => Formula::not(f.clone()),
        Not(x) => pos(x),
        And(xs) => Or(xs.iter().map(neg).collect()),
        Or(xs) => And(xs.iter().map(neg).collect()),
        Implies(a, b) => Formula::and(pos(a), neg(b)),
        Iff(a, b) => Formula::or(Formula::and(pos(a), neg(b)), Formula::and(neg(a), pos(b))),
        Next(x) => Formula::weak_next(neg(x)),
        WeakNext(x) => Formula::next(neg(x)),
        Until(a, b) => Formula::release(neg(a), neg(b)),
        Release(a, b) => Formula::until(neg(a), neg(b)),
        // !(G a | a U b) == F !a & (!a R !b)
        WeakUntil(a, b) => Formula::and(Formula::eventually(neg(a)), Formula::release(neg(a), neg(b))),
        Eventually(x) => Formula::globally(neg(x)),
        Globally(x) => Formula::eventually(neg(x)),
    }
}

pub fn is_nnf(f: &Formula) -> bool {
    use Formula::*;
    match f {
        Not(x) => matches!(**x, Atom(_)),
        Implies(..) | Iff(..) => false,
        _ => f.children().into_iter().all(is_nnf),
    }
}

/// Rewrites derived operators into `true`, atoms, `!`, `&`, `X`, `U`:
/// `F φ = true U φ`, `G φ = !F !φ`, `φ W ψ = G φ | φ U ψ`, `Xw φ = !X !φ`,
/// `φ R ψ = !(!φ U !ψ)`.
pub fn desugar(f: &Formula) -> Formula {
    use Formula::*;
    let d = desugar;
    let not = Formula::not;
    let or = |a: Formula, b: Formula| not(Formula::and(not(a), not(b)));
    match f {
        True => True,
        False => not(True),
        Atom(_) => f.clone(),
        Not(x) => not(d(x)),
        And(xs) => And(xs.iter().map(d).collect()),
        Or(xs) => not(And(xs.iter().map(|x| not(d(x))).collect())),
        Implies(a, b) => or(not(d(a)), d(b)),
        Iff(a, b) => Formula::and(or(not(d(a)), d(b)), or(not(d(b)), d(a))),
        Next(x) => Formula::next(d(x)),
        WeakNext(x) => not(Formula::next(not(d(x)))),
        Until(a, b) => Formula::until(d(a), d(b)),
        Release(a, b) => not(Formula::until(not(d(a)), not(d(b)))),
        WeakUntil(a, b) => {
            let g = not(Formula::until(True, not(d(a))));
            or(g, Formula::until(d(a), d(b)))
        }
        Eventually(x) => Formula::until(True, d(x)),
        Globally(x) => not(Formula::until(True, not(d(x)))),
    }
}
