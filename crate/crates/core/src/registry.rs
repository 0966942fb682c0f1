//! Known dimension values for graph families that are not acyclic (and for
//! the path presentation of matrix algebras), kept as a checked-in table in
//! `data/registry.json`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::census::ExtNat;
use crate::dim::{Certainty, DimKind, DimResult, Group};
use crate::error::{Error, Result};
use crate::families::{Family, FamilyTag};

const TABLE: &str = include_str!("../data/registry.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Always,
    KDividesN,
    KNotDividesN,
    KPowerOfTwo,
    #[serde(rename = "k_eq_2")]
    KEq2,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl Relation {
    pub fn certainty(self) -> Certainty {
        match self {
            Relation::Eq => Certainty::Exact,
            Relation::Le => Certainty::UpperBound,
            Relation::Ge => Certainty::LowerBound,
        }
    }
}

/// The action a row speaks about. Only gauge rows take part in
/// consistency checks against computed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Gauge,
    Antipodal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryRow {
    pub family: Family,
    pub condition: Condition,
    /// `"Z/k"` or `"S1"`.
    pub group: String,
    pub kind: DimKind,
    pub relation: Relation,
    /// `"0"`, `"1"`, `"inf"`, `"2n-1"`, `"2n"` or `"matrix_weak"`.
    pub value: String,
    pub action: Action,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownResult {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub group: Group,
    pub kind: DimKind,
    pub relation: Relation,
    pub value: ExtNat,
    pub action: Action,
    pub citation: String,
}

impl KnownResult {
    pub fn to_dim_result(&self) -> DimResult {
        DimResult {
            kind: self.kind,
            group: self.group,
            value: self.value,
            certainty: self.relation.certainty(),
            provenance: format!("registry: {}", self.citation),
            certificate: None,
            sink: None,
        }
    }
}

pub fn rows() -> &'static [RegistryRow] {
    static ROWS: OnceLock<Vec<RegistryRow>> = OnceLock::new();
    ROWS.get_or_init(|| serde_json::from_str(TABLE).expect("registry table parses"))
}

fn condition_holds(c: Condition, k: usize, n: Option<usize>) -> bool {
    match c {
        Condition::Always => true,
        Condition::KDividesN => n.is_some_and(|n| n % k == 0),
        Condition::KNotDividesN => n.is_some_and(|n| n % k != 0),
        Condition::KPowerOfTwo => k.is_power_of_two(),
        Condition::KEq2 => k == 2,
        Condition::Circle => false,
    }
}

fn evaluate(value: &str, n: Option<usize>, k: Option<usize>) -> Result<ExtNat> {
    let need_n = || n.map(|n| n as u64).ok_or_else(|| Error::Parse(format!("value `{value}` needs n")));
    Ok(match value {
        "0" => ExtNat::ZERO,
        "1" => ExtNat::Finite(1),
        "inf" => ExtNat::Infinite,
        "2n-1" => ExtNat::Finite(2 * need_n()? - 1),
        "2n" => ExtNat::Finite(2 * need_n()?),
        "matrix_weak" => {
            let n = need_n()?;
            let k = k.ok_or_else(|| Error::Parse("matrix_weak needs a cyclic group".into()))? as u64;
            if k > n {
                ExtNat::Infinite
            } else {
                ExtNat::Finite(n.div_ceil(k).div_ceil(n / k) - 1)
            }
        }
        other => return Err(Error::Parse(format!("unknown registry value `{other}`"))),
    })
}

/// Rows about `tag` for the given group, with values evaluated.
pub fn lookup_known(tag: &FamilyTag, group: Group) -> Vec<KnownResult> {
    rows()
        .iter()
        .filter(|row| row.family == tag.family)
        .filter(|row| match group {
            Group::Circle => row.condition == Condition::Circle,
            Group::Cyclic(k) => row.group == "Z/k" && condition_holds(row.condition, k, tag.n),
        })
        .map(|row| {
            let k = match group {
                Group::Cyclic(k) => Some(k),
                Group::Circle => None,
            };
            KnownResult {
                family: row.family,
                n: tag.n,
                group,
                kind: row.kind,
                relation: row.relation,
                value: evaluate(&row.value, tag.n, k).expect("registry values are well formed"),
                action: row.action,
                citation: row.citation.clone(),
            }
        })
        .collect()
}
