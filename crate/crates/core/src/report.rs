//! Analysis orchestration: exact values and witnesses for acyclic graphs,
//! `Z/2` certificates for every graph, registry annotations for recognized
//! family presentations, and a consistency check that ties them together.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::acyclic::{is_free_gauge_acyclic, plain_dim_from_census, weak_dim_from_census};
use crate::census::{path_census_with, CensusRecord, ExtNat};
use crate::certs::{self, Certificate, DEFAULT_EXACT_LIMIT};
use crate::dim::{Certainty, DimKind, DimResult, Group};
use crate::error::{check_modulus, Error, Result};
use crate::exec::Exec;
use crate::families::{recognize, FamilyTag};
use crate::graph::Graph;
use crate::outsplit::{maximal_out_split_with, OutSplitComponent};
use crate::registry::{lookup_known, Action, KnownResult};
use crate::witness::{
    build_gauge_unitary, build_plain_witness, build_weak_witness, rank_obstruction_test_with, verify_witness,
    ObstructionReport, VerificationReport,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub exact_limit: usize,
    pub obstruction_trials: usize,
    /// Components with more basis vectors than this get no witness.
    pub max_witness_dim: usize,
    pub exec: Exec,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            seed: 0,
            exact_limit: DEFAULT_EXACT_LIMIT,
            obstruction_trials: 100,
            max_witness_dim: 256,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub sinks: Vec<String>,
    pub isolated: Vec<String>,
    pub acyclic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyTag>,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            name: g.name().to_string(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            sinks: g.sinks().into_iter().map(String::from).collect(),
            isolated: g.isolated_vertices().into_iter().map(String::from).collect(),
            acyclic: g.is_acyclic(),
            family: recognize(g),
        }
    }
}

/// Witness checks for one out-split component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessOutcome {
    pub sink: String,
    pub dim: usize,
    pub quot: ExtNat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plain: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl WitnessOutcome {
    /// Every check that was run came out as expected.
    pub fn passed(&self) -> bool {
        self.weak.as_ref().is_none_or(|r| r.passed)
            && self.plain.as_ref().is_none_or(|r| r.passed)
            && self.obstruction.as_ref().is_none_or(|r| r.all_singular)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub k: usize,
    pub graph: GraphSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<bool>,
    pub results: Vec<DimResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub census: Vec<CensusRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub registry: Vec<KnownResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        Ok(serde_json::from_str(text)?)
    }

    /// The tightest computed result of `kind` with the given certainty.
    pub fn result(&self, kind: DimKind, certainty: Certainty) -> Option<&DimResult> {
        self.results
            .iter()
            .find(|r| r.kind == kind && r.certainty == certainty)
    }

    pub fn exact(&self, kind: DimKind) -> Option<ExtNat> {
        self.result(kind, Certainty::Exact).map(|r| r.value)
    }

    pub fn witnesses_passed(&self) -> bool {
        self.witnesses.iter().all(WitnessOutcome::passed)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn witness_outcome(comp: &OutSplitComponent, k: usize, opts: &AnalyzeOptions) -> Result<WitnessOutcome> {
    let u = build_gauge_unitary(&comp.graph, k)?;
    let quot = u.quot();
    let mut out = WitnessOutcome {
        sink: comp.sink.clone(),
        dim: u.dim(),
        quot,
        weak: None,
        plain: None,
        obstruction: None,
        note: None,
    };
    if u.dim() > opts.max_witness_dim {
        out.note = Some(format!("skipped: dimension {} exceeds {}", u.dim(), opts.max_witness_dim));
        return Ok(out);
    }
    match build_weak_witness(&comp.graph, k) {
        Ok(w) => out.weak = Some(verify_witness(&w, &u)?),
        Err(e @ Error::InfiniteQuot { .. }) => out.note = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    if let Ok(w) = build_plain_witness(&comp.graph, k) {
        out.plain = Some(verify_witness(&w, &u)?);
    }
    if let ExtNat::Finite(q) = quot {
        if q > 1 {
            let d = q as usize - 2;
            out.obstruction = Some(rank_obstruction_test_with(&u, d, opts.obstruction_trials, opts.seed, opts.exec)?);
        }
    }
    Ok(out)
}

/// Keeps one result per (kind, certainty): the tightest, earliest first.
fn tighten(results: Vec<DimResult>) -> Vec<DimResult> {
    let mut best: BTreeMap<(DimKind, Certainty), DimResult> = BTreeMap::new();
    for r in results {
        let key = (r.kind, r.certainty);
        let replace = match best.get(&key) {
            None => true,
            Some(old) => match r.certainty {
                Certainty::UpperBound => r.value < old.value,
                Certainty::LowerBound => r.value > old.value,
                Certainty::Exact => false,
            },
        };
        if replace {
            best.insert(key, r);
        }
    }
    best.into_values().collect()
}

/// Intersects all intervals per kind (propagating weak <= plain <= strong)
/// and fails on an empty intersection.
pub fn check_consistency(results: &[DimResult]) -> Result<()> {
    let mut groups: BTreeMap<Group, [(ExtNat, ExtNat); 3]> = BTreeMap::new();
    let mut sources: BTreeMap<(Group, DimKind), Vec<String>> = BTreeMap::new();
    for r in results {
        let slot = groups
            .entry(r.group)
            .or_insert([(ExtNat::ZERO, ExtNat::Infinite); 3]);
        let i = r.kind as usize;
        let (lo, hi) = r.interval();
        slot[i] = (slot[i].0.max(lo), slot[i].1.min(hi));
        sources
            .entry((r.group, r.kind))
            .or_default()
            .push(format!("{r} ({})", r.provenance));
    }
    for (group, mut iv) in groups {
        for i in 1..3 {
            iv[i].0 = iv[i].0.max(iv[i - 1].0);
        }
        for i in (0..2).rev() {
            iv[i].1 = iv[i].1.min(iv[i + 1].1);
        }
        for kind in DimKind::ALL {
            let (lo, hi) = iv[kind as usize];
            if lo > hi {
                let mut msg = format!("{kind} dimension for {group} has no value in [{lo}, {hi}]");
                for k in DimKind::ALL {
                    for s in sources.get(&(group, k)).into_iter().flatten() {
                        let _ = write!(msg, "; {s}");
                    }
                }
                return Err(Error::Consistency(msg));
            }
        }
    }
    Ok(())
}

pub fn analyze(g: &Graph, k: usize, opts: &AnalyzeOptions) -> Result<Report> {
    check_modulus(k)?;
    let summary = GraphSummary::of(g);
    let mut results = Vec::new();
    let mut census = Vec::new();
    let mut witnesses = Vec::new();
    let mut certificates = Vec::new();
    let mut free = None;

    if summary.acyclic {
        let censuses = path_census_with(g, k, opts.exec)?;
        let plain = plain_dim_from_census(&censuses, k);
        results.push(weak_dim_from_census(&censuses, k));
        results.push(plain.with_kind(DimKind::Strong));
        results.push(plain);
        census = censuses.iter().map(CensusRecord::from).collect();
        let split = maximal_out_split_with(g, opts.exec)?;
        witnesses = opts
            .exec
            .map(&split.components, |c| witness_outcome(c, k, opts))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        free = Some(is_free_gauge_acyclic(g, k)?);
    }
    if k == 2 {
        if let Some(c) = certs::find_chi_certificate_with(g, opts.exec) {
            results.push(certs::chi_bound(&c));
            certificates.push(Certificate::Chi(c));
        }
        results.extend(certs::sink_free_bound(g));
        if let Some(c) = certs::find_edge_families(g, opts.exact_limit) {
            results.push(certs::edge_family_bound(&c));
            certificates.push(Certificate::EdgeFamily(c));
        }
        results.extend(certs::singleton_bound(g));
        free.get_or_insert(certs::z2_is_free(g));
    }
    let results = tighten(results);

    let registry: Vec<KnownResult> = summary
        .family
        .map(|tag| {
            let mut hits = lookup_known(&tag, Group::Cyclic(k));
            hits.extend(lookup_known(&tag, Group::Circle));
            hits
        })
        .unwrap_or_default();
    let mut merged = results.clone();
    merged.extend(
        registry
            .iter()
            .filter(|r| r.action == Action::Gauge)
            .map(KnownResult::to_dim_result),
    );
    check_consistency(&merged)?;

    Ok(Report {
        version: VERSION.to_string(),
        seed: opts.seed,
        k,
        graph: summary,
        free,
        results,
        census,
        witnesses,
        certificates,
        registry,
    })
}

/// Analyzes every graph, returning reports in input order.
pub fn analyze_batch(graphs: &[Graph], k: usize, opts: &AnalyzeOptions) -> Vec<Result<Report>> {
    opts.exec.map(graphs, |g| analyze(g, k, opts))
}

pub(crate) fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let _ = write!(s, "{cell:<w$}  ");
            }
        }
        s.trim_end().to_string()
    };
    out.push_str(&line(header.to_vec()));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let g = &self.graph;
        let mut meta = vec![
            vec!["graph".to_string(), g.name.clone()],
            vec!["vertices".into(), g.vertices.to_string()],
            vec!["edges".into(), g.edges.to_string()],
            vec!["sinks".into(), g.sinks.join(" ")],
            vec!["acyclic".into(), if g.acyclic { "yes" } else { "no" }.into()],
        ];
        if let Some(tag) = g.family {
            meta.push(vec!["family".into(), tag.graph_name()]);
        }
        if let Some(free) = self.free {
            meta.push(vec!["free".into(), if free { "yes" } else { "no" }.into()]);
        }
        meta.push(vec!["k".into(), self.k.to_string()]);
        meta.push(vec!["seed".into(), self.seed.to_string()]);
        meta.push(vec!["version".into(), self.version.clone()]);
        table(&mut out, &["field", "value"], &meta);

        out.push('\n');
        let rows: Vec<Vec<String>> = self
            .results
            .iter()
            .map(|r| {
                vec![
                    r.kind.to_string(),
                    r.group.to_string(),
                    r.certainty.to_string(),
                    r.value.to_string(),
                    r.provenance.clone(),
                ]
            })
            .collect();
        table(&mut out, &["kind", "group", "rel", "value", "source"], &rows);

        if !self.census.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .census
                .iter()
                .map(|c| {
                    let res: Vec<String> = c.residues.iter().map(u64::to_string).collect();
                    vec![c.sink.clone(), res.join(" "), c.quot.to_string()]
                })
                .collect();
            table(&mut out, &["sink", "residues", "quot"], &rows);
        }

        if !self.witnesses.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .witnesses
                .iter()
                .map(|w| {
                    let weak = w.weak.as_ref();
                    vec![
                        w.sink.clone(),
                        w.dim.to_string(),
                        w.quot.to_string(),
                        weak.map_or("-".into(), |r| r.matrix_count.to_string()),
                        weak.map_or("-".into(), |r| sci(r.max_defect())),
                        weak.map_or("-".into(), |r| sci(r.lambda_min)),
                        w.obstruction
                            .as_ref()
                            .map_or("-".into(), |o| format!("{}x{}", o.trials, o.d + 1)),
                        if w.passed() { "ok" } else { "FAIL" }.into(),
                        w.note.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            table(
                &mut out,
                &["sink", "dim", "quot", "matrices", "max_defect", "lambda_min", "obstruction", "status", "note"],
                &rows,
            );
        }

        if !self.certificates.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .certificates
                .iter()
                .map(|c| match c {
                    Certificate::Chi(c) => {
                        let terms: Vec<String> = c
                            .support
                            .iter()
                            .zip(&c.chi)
                            .map(|(v, x)| format!("{v}={x}"))
                            .collect();
                        vec!["chi".into(), c.implied_bound.to_string(), terms.join(" ")]
                    }
                    Certificate::EdgeFamily(c) => {
                        let classes: Vec<String> =
                            c.classes.iter().map(|y| format!("{{{}}}", y.join(","))).collect();
                        vec!["edge_family".into(), c.implied_bound.to_string(), classes.join(" ")]
                    }
                })
                .collect();
            table(&mut out, &["certificate", "bound", "data"], &rows);
        }

        if !self.registry.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .registry
                .iter()
                .map(|r| {
                    let action = match r.action {
                        Action::Gauge => "gauge",
                        Action::Antipodal => "antipodal",
                    };
                    vec![
                        r.kind.to_string(),
                        r.group.to_string(),
                        r.relation.certainty().to_string(),
                        r.value.to_string(),
                        action.into(),
                        r.citation.clone(),
                    ]
                })
                .collect();
            table(&mut out, &["known", "group", "rel", "value", "action", "citation"], &rows);
        }
        f.write_str(&out)
    }
}
