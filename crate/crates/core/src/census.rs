//! Residue-class path census at each sink and the `quot` statistic.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{check_modulus, Result};
use crate::exec::Exec;
use crate::graph::{Graph, LengthHistogram};

/// A natural number or infinity. Every finite value is below `Infinite`
/// and arithmetic with `Infinite` is absorbing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }

    /// Saturates at zero.
    pub fn minus(self, rhs: u64) -> ExtNat {
        match self {
            ExtNat::Finite(n) => ExtNat::Finite(n.saturating_sub(rhs)),
            ExtNat::Infinite => ExtNat::Infinite,
        }
    }

    pub fn plus(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => {
                a.checked_add(b).map_or(ExtNat::Infinite, ExtNat::Finite)
            }
            _ => ExtNat::Infinite,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Finite(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

// JSON form: an integer, or the string "inf".
impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => s.serialize_u64(*n),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExtNatVisitor;
        impl Visitor<'_> for ExtNatVisitor {
            type Value = ExtNat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtNat, E> {
                Ok(ExtNat::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtNat, E> {
                u64::try_from(v)
                    .map(ExtNat::Finite)
                    .map_err(|_| E::custom("negative dimension"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtNat, E> {
                if v == "inf" {
                    Ok(ExtNat::Infinite)
                } else {
                    Err(E::custom(format!("expected \"inf\", found {v:?}")))
                }
            }
        }
        d.deserialize_any(ExtNatVisitor)
    }
}

/// `counts_by_residue[i]` is the number of paths ending at `sink` whose
/// length is `i` mod `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinkCensus {
    pub sink: String,
    pub k: usize,
    pub counts_by_residue: Vec<u64>,
    pub histogram: LengthHistogram,
}

impl SinkCensus {
    pub fn from_histogram(histogram: LengthHistogram, k: usize) -> Result<SinkCensus> {
        check_modulus(k)?;
        Ok(SinkCensus {
            sink: histogram.sink.clone(),
            k,
            counts_by_residue: fold_residues(&histogram.counts, k),
            histogram,
        })
    }

    pub fn total(&self) -> u64 {
        self.counts_by_residue.iter().sum()
    }

    pub fn min_count(&self) -> u64 {
        *self.counts_by_residue.iter().min().expect("k >= 2")
    }

    pub fn max_count(&self) -> u64 {
        *self.counts_by_residue.iter().max().expect("k >= 2")
    }

    pub fn quot(&self) -> ExtNat {
        quot(&self.counts_by_residue)
    }

    pub fn is_balanced(&self) -> bool {
        self.min_count() == self.max_count()
    }
}

pub(crate) fn fold_residues(counts: &[u64], k: usize) -> Vec<u64> {
    let mut residues = vec![0u64; k];
    for (length, &c) in counts.iter().enumerate() {
        residues[length % k] += c;
    }
    residues
}

/// `ceil(max / min)` over the residue counts, `Infinite` if some count is 0.
pub fn quot(counts_by_residue: &[u64]) -> ExtNat {
    let max = counts_by_residue.iter().copied().max().unwrap_or(0);
    let min = counts_by_residue.iter().copied().min().unwrap_or(0);
    if min == 0 {
        ExtNat::Infinite
    } else {
        ExtNat::Finite(max.div_ceil(min))
    }
}

/// One census per sink, in vertex order.
pub fn path_census(g: &Graph, k: usize) -> Result<Vec<SinkCensus>> {
    path_census_with(g, k, Exec::default())
}

pub fn path_census_with(g: &Graph, k: usize, exec: Exec) -> Result<Vec<SinkCensus>> {
    check_modulus(k)?;
    let order = g.require_acyclic()?;
    exec.map(&g.sink_indices(), |&t| {
        SinkCensus::from_histogram(g.histogram_with_order(t, &order)?, k)
    })
    .into_iter()
    .collect()
}

/// JSON record emitted by the `census` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusRecord {
    pub sink: String,
    pub k: usize,
    pub residues: Vec<u64>,
    pub quot: ExtNat,
}

impl From<&SinkCensus> for CensusRecord {
    fn from(c: &SinkCensus) -> Self {
        CensusRecord {
            sink: c.sink.clone(),
            k: c.k,
            residues: c.counts_by_residue.clone(),
            quot: c.quot(),
        }
    }
}
