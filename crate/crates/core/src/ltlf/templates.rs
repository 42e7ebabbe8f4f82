//! LTLp definitions of the Declare templates.
//!
//! ChainPrecedence and AlternatePrecedence use the process-mining variants:
//! `G(X b -> a) & !b` and `Precedence & G(b -> Xw Precedence)`.

use crate::activity::Activity;
use crate::ltlf::Formula;
use crate::model::{Constraint, TemplateKind};

/// The formula of `kind` with `arg_0 := activation`, `arg_1 := target`.
pub fn template_formula(kind: TemplateKind, activation: Activity, target: Activity) -> Formula {
    use Formula as F;
    use TemplateKind::*;
    let a = || F::Atom(activation);
    let b = || F::Atom(target);
    let responded = |x: F, y: F| F::implies(F::eventually(x), F::eventually(y));
    let precedence = || F::weak_until(F::not(b()), a());
    match kind {
        Choice => F::eventually(F::or(a(), b())),
        ExclusiveChoice => F::and(
            F::eventually(F::or(a(), b())),
            F::not(F::and(F::eventually(a()), F::eventually(b()))),
        ),
        RespondedExistence => responded(a(), b()),
        Coexistence => F::and(responded(a(), b()), responded(b(), a())),
        // identical under simplicity when a != b; for a = b only the strict
        // form matches the direct backend (Response(a, a) is unsatisfiable
        // on traces containing a)
        Response if activation == target => F::globally(F::implies(a(), F::next(F::eventually(b())))),
        Response => F::globally(F::implies(a(), F::eventually(b()))),
        Precedence => precedence(),
        AlternateResponse => F::globally(F::implies(a(), F::next(F::until(F::not(a()), b())))),
        AlternatePrecedence => {
            F::and(precedence(), F::globally(F::implies(b(), F::weak_next(precedence()))))
        }
        ChainResponse => F::globally(F::implies(a(), F::next(b()))),
        ChainPrecedence => F::and(F::globally(F::implies(F::next(b()), a())), F::not(b())),
        Succession | AlternateSuccession | ChainSuccession => {
            let (r, p) = kind.succession_parts().unwrap();
            F::and(template_formula(r, activation, target), template_formula(p, activation, target))
        }
    }
}

pub fn constraint_formula(c: &Constraint) -> Formula {
    template_formula(c.kind, c.activation, c.target)
}

/// Placeholder activities used for unbound template formulas and automata.
pub fn placeholders() -> (Activity, Activity) {
    (Activity::named("arg_0"), Activity::named("arg_1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltlf::parse_formula;

    fn check(kind: TemplateKind, text: &str) {
        let (a, b) = (Activity::named("a"), Activity::named("b"));
        assert_eq!(template_formula(kind, a, b), parse_formula(text).unwrap(), "{kind}");
    }

    #[test]
    fn table_rows() {
        use TemplateKind::*;
        check(Response, "G(a -> F b)");
        check(ChainResponse, "G(a -> X b)");
        check(Succession, "G(a -> F b) & (!b W a)");
        check(Precedence, "!b W a");
        check(AlternateResponse, "G(a -> X(!a U b))");
        check(AlternatePrecedence, "(!b W a) & G(b -> Xw(!b W a))");
        check(ChainPrecedence, "G(X b -> a) & !b");
        check(Choice, "F(a | b)");
        check(ExclusiveChoice, "F(a | b) & !(F a & F b)");
        check(RespondedExistence, "F a -> F b");
        check(Coexistence, "(F a -> F b) & (F b -> F a)");
    }
}
