//! Declare templates, constraints and models.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::activity::Activity;
use crate::error::Error;

/// The thirteen binary templates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TemplateKind {
    Choice,
    ExclusiveChoice,
    RespondedExistence,
    Coexistence,
    Response,
    Precedence,
    AlternateResponse,
    AlternatePrecedence,
    ChainResponse,
    ChainPrecedence,
    Succession,
    AlternateSuccession,
    ChainSuccession,
}

impl TemplateKind {
    pub const ALL: [TemplateKind; 13] = [
        TemplateKind::Choice,
        TemplateKind::ExclusiveChoice,
        TemplateKind::RespondedExistence,
        TemplateKind::Coexistence,
        TemplateKind::Response,
        TemplateKind::Precedence,
        TemplateKind::AlternateResponse,
        TemplateKind::AlternatePrecedence,
        TemplateKind::ChainResponse,
        TemplateKind::ChainPrecedence,
        TemplateKind::Succession,
        TemplateKind::AlternateSuccession,
        TemplateKind::ChainSuccession,
    ];

    /// Label used in model documents (`constraint(0,"Alternate Response").`).
    pub fn label(self) -> &'static str {
        use TemplateKind::*;
        match self {
            Choice => "Choice",
            ExclusiveChoice => "Exclusive Choice",
            RespondedExistence => "Responded Existence",
            Coexistence => "Co-Existence",
            Response => "Response",
            Precedence => "Precedence",
            AlternateResponse => "Alternate Response",
            AlternatePrecedence => "Alternate Precedence",
            ChainResponse => "Chain Response",
            ChainPrecedence => "Chain Precedence",
            Succession => "Succession",
            AlternateSuccession => "Alternate Succession",
            ChainSuccession => "Chain Succession",
        }
    }

    /// CamelCase identifier, e.g. `AlternateResponse`.
    pub fn name(self) -> &'static str {
        use TemplateKind::*;
        match self {
            Choice => "Choice",
            ExclusiveChoice => "ExclusiveChoice",
            RespondedExistence => "RespondedExistence",
            Coexistence => "Coexistence",
            Response => "Response",
            Precedence => "Precedence",
            AlternateResponse => "AlternateResponse",
            AlternatePrecedence => "AlternatePrecedence",
            ChainResponse => "ChainResponse",
            ChainPrecedence => "ChainPrecedence",
            Succession => "Succession",
            AlternateSuccession => "AlternateSuccession",
            ChainSuccession => "ChainSuccession",
        }
    }

    /// For the Succession family, the (Response-side, Precedence-side) kinds.
    pub fn succession_parts(self) -> Option<(TemplateKind, TemplateKind)> {
        use TemplateKind::*;
        match self {
            Succession => Some((Response, Precedence)),
            AlternateSuccession => Some((AlternateResponse, AlternatePrecedence)),
            ChainSuccession => Some((ChainResponse, ChainPrecedence)),
            _ => None,
        }
    }
}

impl fmt::Display for TemplateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TemplateKind {
    type Err = Error;

    /// Accepts both the document label ("Co-Existence") and the CamelCase
    /// name ("Coexistence"); case, spaces, hyphens and underscores are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = |x: &str| -> String {
            x.chars()
                .filter(|c| !matches!(c, ' ' | '-' | '_'))
                .flat_map(char::to_lowercase)
                .collect()
        };
        let wanted = key(s);
        TemplateKind::ALL
            .into_iter()
            .find(|k| key(k.name()) == wanted)
            .ok_or_else(|| Error::UnknownTemplate(s.to_owned()))
    }
}

/// A template bound to an activation (`arg_0`) and a target (`arg_1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub id: u64,
    pub kind: TemplateKind,
    pub activation: Activity,
    pub target: Activity,
}

impl Constraint {
    pub fn new(id: u64, kind: TemplateKind, activation: Activity, target: Activity) -> Self {
        Constraint { id, kind, activation, target }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind, self.activation, self.target)
    }
}

/// A set of constraints with unique ids, kept sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeclareModel {
    constraints: Vec<Constraint>,
}

impl DeclareModel {
    pub fn new(mut constraints: Vec<Constraint>) -> Result<Self, Error> {
        let mut seen = HashSet::new();
        for c in &constraints {
            if !seen.insert(c.id) {
                return Err(Error::DuplicateConstraintId(c.id));
            }
        }
        constraints.sort_by_key(|c| c.id);
        Ok(DeclareModel { constraints })
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labels_and_names() {
        for k in TemplateKind::ALL {
            assert_eq!(k.label().parse::<TemplateKind>().unwrap(), k);
            assert_eq!(k.name().parse::<TemplateKind>().unwrap(), k);
        }
        assert_eq!("co-existence".parse::<TemplateKind>().unwrap(), TemplateKind::Coexistence);
        assert!(matches!("Absence".parse::<TemplateKind>(), Err(Error::UnknownTemplate(_))));
    }

    #[test]
    fn model_rejects_duplicate_ids() {
        let a = Activity::named("a");
        let c = Constraint::new(0, TemplateKind::Response, a, a);
        assert!(DeclareModel::new(vec![c, c]).is_err());
    }
}
