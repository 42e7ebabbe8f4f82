use std::collections::BTreeSet;
use std::fmt;

use crate::activity::Activity;

/// LTLf formula over activity atoms.
///
/// Derived operators (`F`, `G`, `W`, `R`, `Xw`, `->`, `<->`) are kept as
/// first-class nodes; [`crate::ltlf::desugar`] rewrites them into the core
/// grammar when needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Activity),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// Strong next: false at the last position.
    Next(Box<Formula>),
    /// Weak next: true at the last position.
    WeakNext(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Globally(Box<Formula>),
}

impl Formula {
    pub fn atom(label: &str) -> Formula {
        Formula::Atom(Activity::named(label))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(vec![a, b])
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![a, b])
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn weak_next(f: Formula) -> Formula {
        Formula::WeakNext(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Formula {
        Formula::Release(Box::new(a), Box::new(b))
    }

    pub fn weak_until(a: Formula, b: Formula) -> Formula {
        Formula::WeakUntil(Box::new(a), Box::new(b))
    }

    pub fn eventually(f: Formula) -> Formula {
        Formula::Eventually(Box::new(f))
    }

    pub fn globally(f: Formula) -> Formula {
        Formula::Globally(Box::new(f))
    }

    /// Direct sub-formulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Atom(_) => vec![],
            Not(f) | Next(f) | WeakNext(f) | Eventually(f) | Globally(f) => vec![f],
            And(fs) | Or(fs) => fs.iter().collect(),
            Implies(a, b) | Iff(a, b) | Until(a, b) | Release(a, b) | WeakUntil(a, b) => {
                vec![a, b]
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Activity> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Activity>) {
        if let Formula::Atom(a) = self {
            out.insert(*a);
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// Replaces every atom through `f`.
    pub fn map_atoms(&self, f: &impl Fn(Activity) -> Activity) -> Formula {
        use Formula::*;
        let b = |x: &Formula| Box::new(x.map_atoms(f));
        match self {
            True => True,
            False => False,
            Atom(a) => Atom(f(*a)),
            Not(x) => Not(b(x)),
            And(xs) => And(xs.iter().map(|x| x.map_atoms(f)).collect()),
            Or(xs) => Or(xs.iter().map(|x| x.map_atoms(f)).collect()),
            Implies(x, y) => Implies(b(x), b(y)),
            Iff(x, y) => Iff(b(x), b(y)),
            Next(x) => Next(b(x)),
            WeakNext(x) => WeakNext(b(x)),
            Until(x, y) => Until(b(x), b(y)),
            Release(x, y) => Release(b(x), b(y)),
            WeakUntil(x, y) => WeakUntil(b(x), b(y)),
            Eventually(x) => Eventually(b(x)),
            Globally(x) => Globally(b(x)),
        }
    }

    // Binding strength used by the printer; mirrors the parser.
    fn level(&self) -> u8 {
        use Formula::*;
        match self {
            Iff(..) => 1,
            Implies(..) => 2,
            Or(fs) if fs.len() >= 2 => 3,
            And(fs) if fs.len() >= 2 => 4,
            Until(..) | Release(..) | WeakUntil(..) => 5,
            Not(_) | Next(_) | WeakNext(_) | Eventually(_) | Globally(_) => 6,
            _ => 7,
        }
    }
}

pub(crate) const KEYWORDS: [&str; 9] = ["X", "Xw", "F", "G", "U", "W", "R", "true", "false"];

pub(crate) fn is_bare_identifier(label: &str) -> bool {
    let mut chars = label.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&label)
}

/// Writes `label` bare when it lexes as an identifier, double-quoted otherwise.
pub(crate) fn write_label(f: &mut impl fmt::Write, label: &str) -> fmt::Result {
    if is_bare_identifier(label) {
        f.write_str(label)
    } else {
        f.write_char('"')?;
        for c in label.chars() {
            if c == '"' || c == '\\' {
                f.write_char('\\')?;
            }
            f.write_char(c)?;
        }
        f.write_char('"')
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let sub = |f: &mut fmt::Formatter<'_>, x: &Formula, min: u8| -> fmt::Result {
            if x.level() < min {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        };
        let nary = |f: &mut fmt::Formatter<'_>, xs: &[Formula], op: &str, lvl: u8| {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                sub(f, x, lvl + 1)?;
            }
            Ok(())
        };
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(a) => write_label(f, a.as_str()),
            Not(x) => {
                f.write_str("!")?;
                sub(f, x, 6)
            }
            Next(x) => {
                f.write_str("X ")?;
                sub(f, x, 6)
            }
            WeakNext(x) => {
                f.write_str("Xw ")?;
                sub(f, x, 6)
            }
            Eventually(x) => {
                f.write_str("F ")?;
                sub(f, x, 6)
            }
            Globally(x) => {
                f.write_str("G ")?;
                sub(f, x, 6)
            }
            And(xs) if xs.is_empty() => f.write_str("true"),
            Or(xs) if xs.is_empty() => f.write_str("false"),
            And(xs) | Or(xs) if xs.len() == 1 => write!(f, "{}", xs[0]),
            And(xs) => nary(f, xs, "&", 4),
            Or(xs) => nary(f, xs, "|", 3),
            Until(a, b) | Release(a, b) | WeakUntil(a, b) => {
                let op = match self {
                    Until(..) => "U",
                    Release(..) => "R",
                    _ => "W",
                };
                sub(f, a, 6)?;
                write!(f, " {op} ")?;
                sub(f, b, 5)
            }
            Implies(a, b) => {
                sub(f, a, 3)?;
                f.write_str(" -> ")?;
                sub(f, b, 2)
            }
            Iff(a, b) => {
                sub(f, a, 2)?;
                f.write_str(" <-> ")?;
                sub(f, b, 1)
            }
        }
    }
}
