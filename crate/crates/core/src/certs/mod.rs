//! Certified upper bounds for the gauge `Z/2`-action on finite graphs.
//!
//! Two kinds of certificate are searched for and can be re-checked
//! independently with exact arithmetic:
//!
//! * a [`ChiCertificate`]: nonnegative rationals `chi_v` on a set `X` of
//!   non-sink vertices with `sum_{v in X} chi_v (I + A_E)(v, w) = 1` for
//!   every vertex `w`; with `n = max_w sum_{v in X} A_E(v, w)` the plain
//!   dimension is at most `2n - 1`;
//! * an [`EdgeFamilyCertificate`]: disjoint edge classes `Y_1..Y_n`, each
//!   with pairwise distinct ranges, whose union covers every vertex (some
//!   selected edge ends at it, or it emits edges and all of them are
//!   selected); the weak dimension is then at most `2n - 1`.

pub mod simplex;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::census::ExtNat;
use crate::dim::{Certainty, DimKind, DimResult, Group};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;

/// Supports are minimized exhaustively up to this many non-sink vertices.
pub const SUPPORT_SEARCH_LIMIT: usize = 12;
pub const DEFAULT_EXACT_LIMIT: usize = 20;

/// Exact rational serialized as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn parse(s: &str) -> Result<Rational> {
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(p, q)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rational::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiCertificate {
    /// Vertex labels of `X`, in vertex order.
    pub support: Vec<String>,
    /// `chi[i]` belongs to `support[i]`.
    pub chi: Vec<Rational>,
    pub col_max: u64,
    pub implied_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFamilyCertificate {
    /// Edge ids of each class `Y_j`.
    pub classes: Vec<Vec<String>>,
    pub implied_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Chi(ChiCertificate),
    EdgeFamily(EdgeFamilyCertificate),
}

pub const CHI_PROVENANCE: &str =
    "gauge Z/2: nonnegative rational row combination of I + A_E over non-sinks, plain <= 2n - 1";
pub const NO_SINK_PROVENANCE: &str =
    "gauge Z/2: no sinks, simple adjacency and a row-combination certificate, plain <= 2|E0| - 1";
pub const EDGE_FAMILY_PROVENANCE: &str =
    "gauge Z/2: covering edge classes with distinct ranges, weak <= 2n - 1";
pub const SINGLETON_PROVENANCE: &str =
    "gauge Z/2: singleton edge classes on a graph without isolated vertices, weak <= 2|E1| - 1";

fn upper_bound(kind: DimKind, value: u64, provenance: &str, certificate: Option<&Certificate>) -> DimResult {
    DimResult {
        kind,
        group: Group::Cyclic(2),
        value: ExtNat::Finite(value),
        certainty: Certainty::UpperBound,
        provenance: provenance.into(),
        certificate: certificate.map(|c| serde_json::to_string(c).expect("certificate serializes")),
        sink: None,
    }
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `max_w sum_{v in support} A(v, w)`.
fn column_max(g: &Graph, support: &[usize]) -> u64 {
    let adj = g.adjacency();
    (0..g.vertex_count())
        .map(|w| support.iter().map(|&v| adj.get(v, w)).sum())
        .max()
        .unwrap_or(0)
}

/// Solves the row-combination system restricted to `support`.
fn solve_on_support(g: &Graph, support: &[usize]) -> Option<Vec<BigRational>> {
    if support.is_empty() {
        return None;
    }
    let adj = g.adjacency();
    let a: Vec<Vec<BigRational>> = (0..g.vertex_count())
        .map(|w| {
            support
                .iter()
                .map(|&v| int(adj.get(v, w) + u64::from(v == w)))
                .collect()
        })
        .collect();
    let b = vec![BigRational::one(); g.vertex_count()];
    simplex::find_feasible(&a, &b)
}

fn chi_from_solution(g: &Graph, support: &[usize], chi: Vec<BigRational>) -> ChiCertificate {
    let kept: Vec<(usize, BigRational)> = support
        .iter()
        .copied()
        .zip(chi)
        .filter(|(_, c)| c.is_positive())
        .collect();
    let idx: Vec<usize> = kept.iter().map(|(v, _)| *v).collect();
    let col_max = column_max(g, &idx);
    ChiCertificate {
        support: idx.iter().map(|&v| g.label(v).to_string()).collect(),
        chi: kept.into_iter().map(|(_, c)| Rational(c)).collect(),
        col_max,
        implied_bound: 2 * col_max - 1,
    }
}

pub fn find_chi_certificate(g: &Graph) -> Option<ChiCertificate> {
    find_chi_certificate_with(g, Exec::default())
}

/// With at most [`SUPPORT_SEARCH_LIMIT`] non-sink vertices the support is
/// chosen to minimize `col_max` (ties broken by the smallest vertex mask);
/// otherwise all non-sinks are offered to the solver.
pub fn find_chi_certificate_with(g: &Graph, exec: Exec) -> Option<ChiCertificate> {
    let non_sinks: Vec<usize> = (0..g.vertex_count()).filter(|&v| !g.is_sink(v)).collect();
    if non_sinks.is_empty() {
        return None;
    }
    if non_sinks.len() > SUPPORT_SEARCH_LIMIT {
        let chi = solve_on_support(g, &non_sinks)?;
        return Some(chi_from_solution(g, &non_sinks, chi));
    }
    let s = non_sinks.len();
    let members = |mask: usize| -> Vec<usize> {
        (0..s).filter(|i| mask >> i & 1 == 1).map(|i| non_sinks[i]).collect()
    };
    let full = (1usize << s) - 1;
    let col: Vec<u64> = (0..=full).map(|mask| column_max(g, &members(mask))).collect();
    // feasibility only grows with the support, so only the maximal
    // supports under each threshold need an LP
    let thresholds: BTreeSet<u64> = col[1..].iter().copied().collect();
    for t in thresholds {
        let candidates: Vec<usize> = (1..=full)
            .filter(|&mask| col[mask] <= t)
            .filter(|&mask| (0..s).all(|i| mask >> i & 1 == 1 || col[mask | 1 << i] > t))
            .collect();
        let hit = exec.find_first(candidates.len(), |i| {
            solve_on_support(g, &members(candidates[i])).is_some()
        });
        if let Some(i) = hit {
            let support = members(candidates[i]);
            let chi = solve_on_support(g, &support).expect("feasible support");
            return Some(chi_from_solution(g, &support, chi));
        }
    }
    None
}

pub fn chi_bound(cert: &ChiCertificate) -> DimResult {
    upper_bound(
        DimKind::Plain,
        cert.implied_bound,
        CHI_PROVENANCE,
        Some(&Certificate::Chi(cert.clone())),
    )
}

/// Plain bound `2|E0| - 1` for graphs with no sinks, no parallel edges and
/// a row-combination certificate.
pub fn sink_free_bound(g: &Graph) -> Option<DimResult> {
    if !g.sink_indices().is_empty() {
        return None;
    }
    let adj = g.adjacency();
    let n = g.vertex_count();
    if (0..n).any(|v| adj.row(v).iter().any(|&x| x > 1)) {
        return None;
    }
    let cert = find_chi_certificate(g)?;
    Some(upper_bound(
        DimKind::Plain,
        2 * n as u64 - 1,
        NO_SINK_PROVENANCE,
        Some(&Certificate::Chi(cert)),
    ))
}

pub fn z2_is_free(g: &Graph) -> bool {
    g.isolated_indices().is_empty()
}

pub fn singleton_bound(g: &Graph) -> Option<DimResult> {
    if !z2_is_free(g) {
        return None;
    }
    Some(upper_bound(
        DimKind::Weak,
        2 * g.edge_count() as u64 - 1,
        SINGLETON_PROVENANCE,
        None,
    ))
}

struct CoverSearch<'g> {
    g: &'g Graph,
    cap: usize,
    selected: Vec<bool>,
    count: Vec<usize>,
}

impl CoverSearch<'_> {
    fn covered(&self, v: usize) -> bool {
        self.g.in_edges(v).any(|(e, _)| self.selected[e])
            || (self.g.out_degree(v) > 0 && self.g.out_edges(v).all(|(e, _)| self.selected[e]))
    }

    fn select(&mut self, edges: &[usize]) -> bool {
        let mut extra = vec![0usize; self.count.len()];
        for &e in edges {
            extra[self.g.edges()[e].range] += 1;
        }
        if extra.iter().zip(&self.count).any(|(x, c)| c + x > self.cap) {
            return false;
        }
        for &e in edges {
            self.selected[e] = true;
            self.count[self.g.edges()[e].range] += 1;
        }
        true
    }

    fn unselect(&mut self, edges: &[usize]) {
        for &e in edges {
            self.selected[e] = false;
            self.count[self.g.edges()[e].range] -= 1;
        }
    }

    /// Covers vertices `v..` in order; each uncovered vertex takes one of
    /// its in-edges (in edge order) or its whole out-set.
    fn run(&mut self, v: usize) -> bool {
        if v == self.g.vertex_count() {
            return true;
        }
        if self.covered(v) {
            return self.run(v + 1);
        }
        let ins: Vec<usize> = self.g.in_edges(v).map(|(e, _)| e).collect();
        for e in ins {
            if self.select(&[e]) {
                if self.run(v + 1) {
                    return true;
                }
                self.unselect(&[e]);
            }
        }
        let outs: Vec<usize> = self
            .g
            .out_edges(v)
            .map(|(e, _)| e)
            .filter(|&e| !self.selected[e])
            .collect();
        if self.g.out_degree(v) > 0 && self.select(&outs) {
            if self.run(v + 1) {
                return true;
            }
            self.unselect(&outs);
        }
        false
    }
}

fn cover_with_cap(g: &Graph, cap: usize) -> Option<Vec<bool>> {
    let mut search = CoverSearch {
        g,
        cap,
        selected: vec![false; g.edge_count()],
        count: vec![0; g.vertex_count()],
    };
    search.run(0).then_some(search.selected)
}

/// Out-sets of all sources, then the first in-edge of each vertex still
/// uncovered.
fn greedy_cover(g: &Graph) -> Option<Vec<bool>> {
    if !z2_is_free(g) {
        return None;
    }
    let mut selected = vec![false; g.edge_count()];
    for v in 0..g.vertex_count() {
        if g.in_degree(v) == 0 {
            for (e, _) in g.out_edges(v) {
                selected[e] = true;
            }
        }
    }
    for v in 0..g.vertex_count() {
        if !g.in_edges(v).any(|(e, _)| selected[e]) && g.in_degree(v) > 0 {
            let covered_by_out = g.out_degree(v) > 0 && g.out_edges(v).all(|(e, _)| selected[e]);
            if !covered_by_out {
                let (e, _) = g.in_edges(v).next().expect("in-degree is positive");
                selected[e] = true;
            }
        }
    }
    Some(selected)
}

fn split_round_robin(g: &Graph, selected: &[bool]) -> EdgeFamilyCertificate {
    let mut seen = vec![0usize; g.vertex_count()];
    let mut classes: Vec<Vec<String>> = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if !selected[e] {
            continue;
        }
        let j = seen[edge.range];
        seen[edge.range] += 1;
        if classes.len() <= j {
            classes.resize(j + 1, Vec::new());
        }
        classes[j].push(edge.id.clone());
    }
    EdgeFamilyCertificate {
        implied_bound: 2 * classes.len() as u64 - 1,
        classes,
    }
}

/// Optimal when `|E1| <= exact_limit` (binary search on the per-range cap,
/// depth-first search for each cap), greedy otherwise. `None` exactly when
/// the graph has an isolated vertex.
pub fn find_edge_families(g: &Graph, exact_limit: usize) -> Option<EdgeFamilyCertificate> {
    if !z2_is_free(g) {
        return None;
    }
    let selected = if g.edge_count() > exact_limit {
        greedy_cover(g)?
    } else {
        let mut hi = (0..g.vertex_count()).map(|v| g.in_degree(v)).max().unwrap_or(0).max(1);
        let mut best = cover_with_cap(g, hi)?;
        let mut lo = 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match cover_with_cap(g, mid) {
                Some(s) => {
                    best = s;
                    hi = mid;
                }
                None => lo = mid + 1,
            }
        }
        best
    };
    Some(split_round_robin(g, &selected))
}

pub fn edge_family_bound(cert: &EdgeFamilyCertificate) -> DimResult {
    upper_bound(
        DimKind::Weak,
        cert.implied_bound,
        EDGE_FAMILY_PROVENANCE,
        Some(&Certificate::EdgeFamily(cert.clone())),
    )
}

/// Every `Z/2` bound available for `g`, in a fixed order.
pub fn z2_bounds(g: &Graph, exact_limit: usize) -> Vec<DimResult> {
    let mut out = Vec::new();
    if let Some(c) = find_chi_certificate(g) {
        out.push(chi_bound(&c));
    }
    out.extend(sink_free_bound(g));
    if let Some(c) = find_edge_families(g, exact_limit) {
        out.push(edge_family_bound(&c));
    }
    out.extend(singleton_bound(g));
    out
}

fn mismatch(msg: String) -> Error {
    Error::CertificateMismatch(msg)
}

/// Rechecks a certificate against `g` from scratch, in exact arithmetic.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Result<()> {
    match cert {
        Certificate::Chi(c) => verify_chi(g, c),
        Certificate::EdgeFamily(c) => verify_families(g, c),
    }
}

fn verify_chi(g: &Graph, c: &ChiCertificate) -> Result<()> {
    if c.support.len() != c.chi.len() {
        return Err(mismatch(format!(
            "support has {} vertices but {} coefficients are given",
            c.support.len(),
            c.chi.len()
        )));
    }
    let mut support = Vec::with_capacity(c.support.len());
    let mut seen = HashSet::new();
    for (label, x) in c.support.iter().zip(&c.chi) {
        let v = g
            .vertex_index(label)
            .map_err(|_| mismatch(format!("support vertex {label} is not in the graph")))?;
        if !seen.insert(v) {
            return Err(mismatch(format!("support vertex {label} is repeated")));
        }
        if g.is_sink(v) {
            return Err(mismatch(format!("support vertex {label} is a sink")));
        }
        if x.0.is_negative() {
            return Err(mismatch(format!("coefficient of {label} is negative")));
        }
        support.push(v);
    }
    let adj = g.adjacency();
    for w in 0..g.vertex_count() {
        let total: BigRational = support
            .iter()
            .zip(&c.chi)
            .map(|(&v, x)| &x.0 * int(adj.get(v, w) + u64::from(v == w)))
            .sum();
        if !total.is_one() {
            return Err(mismatch(format!(
                "identity fails at column {}: sum is {}",
                g.label(w),
                Rational(total)
            )));
        }
    }
    let col_max = column_max(g, &support);
    if col_max != c.col_max {
        return Err(mismatch(format!("col_max is {col_max}, certificate says {}", c.col_max)));
    }
    if c.implied_bound != 2 * col_max - 1 {
        return Err(mismatch(format!("implied_bound must be {}", 2 * col_max - 1)));
    }
    Ok(())
}

fn verify_families(g: &Graph, c: &EdgeFamilyCertificate) -> Result<()> {
    if c.classes.is_empty() {
        return Err(mismatch("no classes given".into()));
    }
    let mut union = vec![false; g.edge_count()];
    for (j, class) in c.classes.iter().enumerate() {
        let mut ranges = HashSet::new();
        for id in class {
            let e = g
                .edge_index(id)
                .ok_or_else(|| mismatch(format!("class {} names unknown edge {id}", j + 1)))?;
            if union[e] {
                return Err(mismatch(format!("disjointness: edge {id} appears twice")));
            }
            union[e] = true;
            let r = g.edges()[e].range;
            if !ranges.insert(r) {
                return Err(mismatch(format!(
                    "distinct ranges: class {} has two edges with range {}",
                    j + 1,
                    g.label(r)
                )));
            }
        }
    }
    for v in 0..g.vertex_count() {
        let by_range = g.in_edges(v).any(|(e, _)| union[e]);
        let by_source = g.out_degree(v) > 0 && g.out_edges(v).all(|(e, _)| union[e]);
        if !by_range && !by_source {
            return Err(mismatch(format!("cover: vertex {} is not covered", g.label(v))));
        }
    }
    let n = c.classes.len() as u64;
    if c.implied_bound != 2 * n - 1 {
        return Err(mismatch(format!("implied_bound must be {}", 2 * n - 1)));
    }
    Ok(())
}
