use std::collections::BTreeMap;
use std::fmt::Write;

use crate::activity::Activity;
use crate::error::Error;
use crate::ingest::factlog::activity_arg;
use crate::ingest::facts::{label, parse_facts, Fact, Term};
use crate::model::{Constraint, DeclareModel, TemplateKind};
use crate::tasks::{Query, QueryConstraint, Slot};

fn kind_arg(f: &Fact, term: &Term) -> Result<TemplateKind, Error> {
    let text = term.text().ok_or_else(|| f.error(format!("expected a template name, found {term}")))?;
    text.parse()
}

fn arg_index(f: &Fact, term: &Term) -> Result<usize, Error> {
    match term.text() {
        Some("arg_0") => Ok(0),
        Some("arg_1") => Ok(1),
        _ => Err(f.error(format!("expected arg_0 or arg_1, found {term}"))),
    }
}

struct Pending<S> {
    line: usize,
    kind: Option<TemplateKind>,
    args: [Option<S>; 2],
}

impl<S> Default for Pending<S> {
    fn default() -> Self {
        Pending { line: 0, kind: None, args: [None, None] }
    }
}

/// Collects constraint/2 and argument facts keyed by constraint id.
fn collect<K: Ord + Clone + std::fmt::Display, S>(
    facts: &[Fact],
    key: impl Fn(&Fact) -> Result<K, Error>,
    mut slot: impl FnMut(&Fact) -> Result<Option<S>, Error>,
    mut other: impl FnMut(&Fact) -> Result<bool, Error>,
) -> Result<(Vec<K>, BTreeMap<K, Pending<S>>), Error> {
    let mut order = Vec::new();
    let mut pending: BTreeMap<K, Pending<S>> = BTreeMap::new();
    for f in facts {
        match (f.name.as_str(), f.args.len()) {
            ("constraint", 2) => {
                let id = key(f)?;
                let p = pending.entry(id.clone()).or_default();
                if p.kind.is_some() {
                    return Err(f.error(format!("constraint {id} declared twice")));
                }
                p.kind = Some(kind_arg(f, &f.args[1])?);
                p.line = f.line;
                order.push(id);
            }
            (_, 3) if f.name == "bind" || f.name == "var_bind" => {
                let id = key(f)?;
                let i = arg_index(f, &f.args[1])?;
                let Some(s) = slot(f)? else {
                    return Err(f.error(format!("unexpected fact {}", f.signature())));
                };
                let p = pending.entry(id.clone()).or_default();
                if p.args[i].is_some() {
                    return Err(f.error(format!("constraint {id} binds arg_{i} twice")));
                }
                if p.kind.is_none() {
                    p.line = f.line;
                }
                p.args[i] = Some(s);
            }
            _ => {
                if !other(f)? {
                    return Err(f.error(format!("unexpected fact {}", f.signature())));
                }
            }
        }
    }
    for (id, p) in &pending {
        let line = p.line;
        if p.kind.is_none() {
            return Err(Error::Syntax { line, message: format!("constraint {id} is bound but never declared") });
        }
        if let Some(i) = p.args.iter().position(Option::is_none) {
            return Err(Error::Syntax { line, message: format!("constraint {id} has no binding for arg_{i}") });
        }
    }
    Ok((order, pending))
}

/// Parses `constraint(ID,"Kind").` with `bind(ID,arg_0,A). bind(ID,arg_1,B).`
pub fn parse_model(text: &str) -> Result<DeclareModel, Error> {
    let facts = parse_facts(text)?;
    let (order, mut pending) = collect(
        &facts,
        |f| f.args[0].int().ok_or_else(|| f.error("constraint id must be a non-negative integer")),
        |f| if f.name == "bind" { activity_arg(f, &f.args[2]).map(Some) } else { Ok(None) },
        |_| Ok(false),
    )?;
    let constraints = order
        .into_iter()
        .map(|id| {
            let p = pending.remove(&id).unwrap();
            let [a, b] = p.args;
            Constraint::new(id, p.kind.unwrap(), a.unwrap(), b.unwrap())
        })
        .collect();
    DeclareModel::new(constraints)
}

pub fn write_model(model: &DeclareModel) -> String {
    let mut out = String::new();
    for c in model.constraints() {
        writeln!(out, "constraint({},\"{}\").", c.id, c.kind.label()).unwrap();
        writeln!(
            out,
            "bind({},arg_0,{}). bind({},arg_1,{}).",
            c.id,
            label(c.activation.as_str()),
            c.id,
            label(c.target.as_str())
        )
        .unwrap();
    }
    out
}

fn var_name(f: &Fact, term: &Term) -> Result<String, Error> {
    match term {
        Term::Compound(name, args) if name == "var" && args.len() == 1 => args[0]
            .text()
            .map(str::to_string)
            .or_else(|| args[0].int().map(|n| n.to_string()))
            .ok_or_else(|| f.error(format!("invalid variable {term}"))),
        _ => Err(f.error(format!("expected var(Name), found {term}"))),
    }
}

/// Parses a query: `constraint/2`, `bind/3` for fixed arguments,
/// `var_bind(C,arg_i,var(X))` for variables and optional
/// `domain(var(X),A)` facts. Constraint ids may be integers or names.
pub fn parse_query(text: &str) -> Result<Query, Error> {
    let facts = parse_facts(text)?;
    let mut domains: BTreeMap<String, Vec<Activity>> = BTreeMap::new();
    let (order, mut pending) = collect(
        &facts,
        |f| match &f.args[0] {
            Term::Int(n) => Ok(n.to_string()),
            Term::Ident(s) | Term::Str(s) => Ok(s.clone()),
            t => Err(f.error(format!("invalid constraint id {t}"))),
        },
        |f| match f.name.as_str() {
            "bind" => activity_arg(f, &f.args[2]).map(|a| Some(Slot::Bound(a))),
            _ => var_name(f, &f.args[2]).map(|v| Some(Slot::Var(v))),
        },
        |f| {
            if f.name != "domain" || f.args.len() != 2 {
                return Ok(false);
            }
            let v = var_name(f, &f.args[0])?;
            domains.entry(v).or_default().push(activity_arg(f, &f.args[1])?);
            Ok(true)
        },
    )?;
    if order.is_empty() {
        return Err(Error::Query("query declares no constraints".into()));
    }
    let constraints = order
        .into_iter()
        .map(|id| {
            let p = pending.remove(&id).unwrap();
            let [a, b] = p.args;
            QueryConstraint::new(p.kind.unwrap(), a.unwrap(), b.unwrap())
        })
        .collect();
    Ok(Query { constraints, domains })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Activity {
        Activity::named(s)
    }

    #[test]
    fn two_constraint_model() {
        let text = "constraint(0,\"Response\").\nbind(0,arg_0,a_1). bind(0,arg_1,a_2).\n\
                    constraint(1,\"Precedence\").\nbind(1,arg_0,a_2). bind(1,arg_1,a_3).\n";
        let m = parse_model(text).unwrap();
        assert_eq!(
            m.constraints(),
            &[
                Constraint::new(0, TemplateKind::Response, a("a_1"), a("a_2")),
                Constraint::new(1, TemplateKind::Precedence, a("a_2"), a("a_3")),
            ]
        );
        assert_eq!(write_model(&m), text);
    }

    #[test]
    fn labels_with_spaces_round_trip() {
        let m = parse_model("constraint(4,\"Alternate Precedence\"). bind(4,arg_1,\"Pay Invoice\"). bind(4,arg_0,x).").unwrap();
        let c = m.constraints()[0];
        assert_eq!((c.kind, c.activation, c.target), (TemplateKind::AlternatePrecedence, a("x"), a("Pay Invoice")));
        assert_eq!(parse_model(&write_model(&m)).unwrap(), m);
    }

    #[test]
    fn malformed_models() {
        assert!(matches!(parse_model("constraint(0,\"Foo\")."), Err(Error::UnknownTemplate(_))));
        assert!(matches!(parse_model("constraint(0,\"Response\"). bind(0,arg_0,a)."), Err(Error::Syntax { .. })));
        assert!(matches!(parse_model("bind(0,arg_0,a). bind(0,arg_1,b)."), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_model("constraint(0,\"Response\"). bind(0,arg_0,a). bind(0,arg_0,b)."),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_model("constraint(0,\"Response\").\nconstraint(0,\"Precedence\")."),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn query_with_variables_and_domains() {
        let q = parse_query(
            "constraint(c,\"Response\"). var_bind(c,arg_0,var(a)). var_bind(c,arg_1,var(b)).\n\
             constraint(d,\"Precedence\"). var_bind(d,arg_0,var(a)). bind(d,arg_1,z).\n\
             domain(var(b),x). domain(var(b),y).\n",
        )
        .unwrap();
        assert_eq!(q.constraints.len(), 2);
        assert_eq!(q.constraints[1], QueryConstraint::new(TemplateKind::Precedence, Slot::var("a"), Slot::Bound(a("z"))));
        assert_eq!(q.domains["b"], vec![a("x"), a("y")]);
        assert!(parse_query("domain(var(b),x).").is_err());
    }
}
