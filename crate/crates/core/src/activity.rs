//! Interned activity labels.
//!
//! Every label is interned once into a process-wide table and afterwards
//! handled as a `u32`. Equality and hashing use the id; ordering uses the
//! label text so that anything sorted by activity is independent of the
//! order in which labels were first seen.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

/// The label reserved for the wildcard symbol class of automata.
pub const WILDCARD: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActivityError {
    #[error("activity label must not be empty")]
    Empty,
    #[error("activity label \"*\" is reserved for the automaton wildcard")]
    Wildcard,
}

#[derive(Default)]
struct Interner {
    ids: HashMap<&'static str, u32>,
    labels: Vec<&'static str>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// A case-sensitive activity label.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Activity(u32);

impl Activity {
    /// Interns `label`, rejecting the empty string and the wildcard.
    pub fn new(label: &str) -> Result<Self, ActivityError> {
        if label.is_empty() {
            return Err(ActivityError::Empty);
        }
        if label == WILDCARD {
            return Err(ActivityError::Wildcard);
        }
        if let Some(&id) = interner().read().unwrap().ids.get(label) {
            return Ok(Activity(id));
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(label) {
            return Ok(Activity(id));
        }
        let leaked: &'static str = Box::leak(label.to_owned().into_boxed_str());
        let id = u32::try_from(table.labels.len()).expect("activity table overflow");
        table.labels.push(leaked);
        table.ids.insert(leaked, id);
        Ok(Activity(id))
    }

    /// Like [`Activity::new`] for labels known to be valid (literals, generated names).
    ///
    /// Panics on the empty label or the wildcard.
    pub fn named(label: &str) -> Self {
        Self::new(label).unwrap_or_else(|e| panic!("invalid activity label {label:?}: {e}"))
    }

    pub fn as_str(self) -> &'static str {
        interner().read().unwrap().labels[self.0 as usize]
    }

    /// The interned id. Stable only within one process.
    pub fn id(self) -> u32 {
        self.0
    }
}

impl Ord for Activity {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            Ordering::Equal
        } else {
            self.as_str().cmp(other.as_str())
        }
    }
}

impl PartialOrd for Activity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Activity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

impl fmt::Display for Activity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Activity {
    type Err = ActivityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Activity::new(s)
    }
}
