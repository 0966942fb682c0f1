//! Exact dimension values of the gauge `Z/k`-action for finite acyclic
//! graphs.
//!
//! * weak dimension = max over sinks of `quot - 1`;
//! * plain and strong dimensions coincide and are `0` when every sink has
//!   equal residue counts, `inf` otherwise;
//! * the action is free iff every sink receives a path of length `k - 1`,
//!   iff the weak dimension is finite.

use crate::census::{path_census, ExtNat, SinkCensus};
use crate::dim::{Certainty, DimKind, DimResult, Group};
use crate::error::{check_modulus, Result};
use crate::families::path_graph;
use crate::graph::Graph;

pub const WEAK_PROVENANCE: &str =
    "finite acyclic graph: weak dimension is the maximum over sinks of quot - 1";
pub const PLAIN_PROVENANCE: &str =
    "finite acyclic graph: plain = strong = 0 iff every sink has equal residue counts, else inf";

pub fn weak_dim_from_census(censuses: &[SinkCensus], k: usize) -> DimResult {
    let (value, sink) = censuses
        .iter()
        .map(|c| (c.quot().minus(1), &c.sink))
        .fold((ExtNat::ZERO, None), |(best, at), (q, s)| {
            if at.is_none() || q > best {
                (q, Some(s.clone()))
            } else {
                (best, at)
            }
        });
    DimResult {
        kind: DimKind::Weak,
        group: Group::Cyclic(k),
        value,
        certainty: Certainty::Exact,
        provenance: WEAK_PROVENANCE.into(),
        certificate: None,
        sink,
    }
}

pub fn plain_dim_from_census(censuses: &[SinkCensus], k: usize) -> DimResult {
    let failing = censuses.iter().find(|c| !c.is_balanced());
    DimResult {
        kind: DimKind::Plain,
        group: Group::Cyclic(k),
        value: if failing.is_some() {
            ExtNat::Infinite
        } else {
            ExtNat::ZERO
        },
        certainty: Certainty::Exact,
        provenance: PLAIN_PROVENANCE.into(),
        certificate: None,
        sink: failing.map(|c| c.sink.clone()),
    }
}

pub fn weak_dim_acyclic(g: &Graph, k: usize) -> Result<DimResult> {
    Ok(weak_dim_from_census(&path_census(g, k)?, k))
}

/// Plain-kind result; the same value holds for the strong dimension
/// (see [`DimResult::with_kind`]).
pub fn plain_strong_dim_acyclic(g: &Graph, k: usize) -> Result<DimResult> {
    Ok(plain_dim_from_census(&path_census(g, k)?, k))
}

pub fn is_free_gauge_acyclic(g: &Graph, k: usize) -> Result<bool> {
    check_modulus(k)?;
    g.require_acyclic()?;
    for sink in g.sinks() {
        if !g.has_path_of_length(sink, k - 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(weak, plain)` for `M_n` presented as the `n`-vertex path.
pub fn matrix_algebra_dims(n: usize, k: usize) -> Result<(DimResult, DimResult)> {
    check_modulus(k)?;
    if n == 0 {
        return Err(crate::error::Error::InvalidParameter("n must be at least 1".into()));
    }
    let censuses = path_census(&path_graph(n), k)?;
    Ok((
        weak_dim_from_census(&censuses, k),
        plain_dim_from_census(&censuses, k),
    ))
}
