//! Dimension values with their kind, group, certainty and provenance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::census::ExtNat;
use crate::error::Error;

/// Weak <= plain <= strong for any fixed action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimKind {
    Weak,
    Plain,
    Strong,
}

impl DimKind {
    pub const ALL: [DimKind; 3] = [DimKind::Weak, DimKind::Plain, DimKind::Strong];
}

impl fmt::Display for DimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimKind::Weak => "weak",
            DimKind::Plain => "plain",
            DimKind::Strong => "strong",
        })
    }
}

/// The acting group: a finite cyclic subgroup `Z/k` of the circle, or the
/// circle itself. Serialized as `"Z/k"` or `"S1"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Group {
    Cyclic(usize),
    Circle,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Cyclic(k) => write!(f, "Z/{k}"),
            Group::Circle => f.write_str("S1"),
        }
    }
}

impl From<Group> for String {
    fn from(g: Group) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for Group {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        if s == "S1" {
            return Ok(Group::Circle);
        }
        s.strip_prefix("Z/")
            .and_then(|k| k.parse().ok())
            .filter(|&k: &usize| k >= 2)
            .map(Group::Cyclic)
            .ok_or_else(|| Error::Parse(format!("bad group `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    Exact,
    UpperBound,
    LowerBound,
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certainty::Exact => "=",
            Certainty::UpperBound => "<=",
            Certainty::LowerBound => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimResult {
    pub kind: DimKind,
    pub group: Group,
    pub value: ExtNat,
    pub certainty: Certainty,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    /// Sink attaining the value (maximizing or failing), when applicable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sink: Option<String>,
}

impl DimResult {
    pub fn with_kind(&self, kind: DimKind) -> DimResult {
        DimResult {
            kind,
            ..self.clone()
        }
    }

    /// Closed interval `[lo, hi]` of values compatible with this result.
    pub fn interval(&self) -> (ExtNat, ExtNat) {
        match self.certainty {
            Certainty::Exact => (self.value, self.value),
            Certainty::UpperBound => (ExtNat::ZERO, self.value),
            Certainty::LowerBound => (self.value, ExtNat::Infinite),
        }
    }
}

impl fmt::Display for DimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.kind, self.group, self.certainty, self.value
        )
    }
}
