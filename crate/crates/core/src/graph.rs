//! Finite directed multigraphs and the structural queries the dimension
//! computations depend on: adjacency, sinks, isolated vertices,
//! acyclicity and path-length histograms.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub range: usize,
}

/// A validated finite directed multigraph. Vertex and edge order is the
/// input order and every matrix index downstream inherits it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
}

/// On-disk graph record. Unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        let edges = file.edges.into_iter().map(|e| (e.id, e.src, e.dst)).collect();
        build_graph(file.name, file.vertices, edges)
    }
}

impl From<Graph> for GraphFile {
    fn from(g: Graph) -> Self {
        let edges = g
            .edges
            .iter()
            .map(|e| EdgeRecord {
                id: e.id.clone(),
                src: g.vertices[e.source].clone(),
                dst: g.vertices[e.range].clone(),
            })
            .collect();
        GraphFile {
            name: g.name,
            vertices: g.vertices,
            edges,
        }
    }
}

/// Validates and builds a graph from labels and `(id, source, range)` triples.
pub fn build_graph<S: Into<String>>(
    name: S,
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
) -> Result<Graph> {
    if vertices.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut index = HashMap::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(v.clone()));
        }
    }
    let mut seen_ids = HashMap::with_capacity(edges.len());
    let mut built = Vec::with_capacity(edges.len());
    for (id, src, dst) in edges {
        if seen_ids.insert(id.clone(), ()).is_some() {
            return Err(Error::DuplicateLabel(id));
        }
        let lookup = |label: &str| {
            index.get(label).copied().ok_or_else(|| Error::UnknownEndpoint {
                edge: id.clone(),
                vertex: label.to_string(),
            })
        };
        let source = lookup(&src)?;
        let range = lookup(&dst)?;
        built.push(Edge { id, source, range });
    }
    Ok(Graph {
        name: name.into(),
        vertices,
        edges: built,
        index,
    })
}

/// `entry(v, w)` is the number of edges with source `v` and range `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    dim: usize,
    entries: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, v: usize, w: usize) -> u64 {
        self.entries[v * self.dim + w]
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.entries[v * self.dim..(v + 1) * self.dim]
    }

    pub fn row_sum(&self, v: usize) -> u64 {
        self.row(v).iter().sum()
    }

    pub fn col_sum(&self, w: usize) -> u64 {
        (0..self.dim).map(|v| self.get(v, w)).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim).map(|v| self.row(v).to_vec()).collect()
    }
}

/// Number of directed paths of each length terminating at a sink.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthHistogram {
    pub sink: String,
    /// `counts[l]` is the number of paths of length `l`; `counts[0] == 1`.
    pub counts: Vec<u64>,
}

impl LengthHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, length: usize) -> u64 {
        self.counts.get(length).copied().unwrap_or(0)
    }

    pub fn max_length(&self) -> usize {
        self.counts.len() - 1
    }
}

impl Graph {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.source == v)
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.range == v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_edges(v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_edges(v).count()
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let dim = self.vertex_count();
        let mut entries = vec![0u64; dim * dim];
        for e in &self.edges {
            entries[e.source * dim + e.range] += 1;
        }
        AdjacencyMatrix { dim, entries }
    }

    pub fn sink_indices(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.vertex_count()];
        for e in &self.edges {
            has_out[e.source] = true;
        }
        (0..self.vertex_count()).filter(|&v| !has_out[v]).collect()
    }

    pub fn sinks(&self) -> Vec<&str> {
        self.sink_indices().into_iter().map(|v| self.label(v)).collect()
    }

    pub fn isolated_indices(&self) -> Vec<usize> {
        let mut touched = vec![false; self.vertex_count()];
        for e in &self.edges {
            touched[e.source] = true;
            touched[e.range] = true;
        }
        (0..self.vertex_count()).filter(|&v| !touched[v]).collect()
    }

    pub fn isolated_vertices(&self) -> Vec<&str> {
        self.isolated_indices().into_iter().map(|v| self.label(v)).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.edges.iter().all(|e| e.source != v)
    }

    /// Depth-first search for a back edge.
    pub fn is_acyclic(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.vertex_count();
        let succ = self.successors();
        let mut mark = vec![Mark::New; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            // explicit stack of (vertex, next successor position)
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Active;
            while let Some(top) = stack.last_mut() {
                let v = top.0;
                let next = succ[v].get(top.1).copied();
                if let Some(w) = next {
                    top.1 += 1;
                    match mark[w] {
                        Mark::Active => return false,
                        Mark::New => {
                            mark[w] = Mark::Active;
                            stack.push((w, 0));
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Kahn's algorithm; `None` when a directed cycle exists. Ties are
    /// broken by vertex order.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.range] += 1;
        }
        let succ = self.successors();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            succ[e.source].push(e.range);
        }
        succ
    }

    pub(crate) fn require_acyclic(&self) -> Result<Vec<usize>> {
        self.topological_order()
            .ok_or_else(|| Error::NotAcyclic(self.name.clone()))
    }

    /// Counts paths ending at `sink`, by length, without materializing
    /// them: each vertex carries the generating polynomial of its paths to
    /// the sink, filled in reverse topological order.
    pub fn path_length_histogram(&self, sink: &str) -> Result<LengthHistogram> {
        let order = self.require_acyclic()?;
        let t = self.vertex_index(sink)?;
        if !self.is_sink(t) {
            return Err(Error::NotASink(sink.to_string()));
        }
        self.histogram_with_order(t, &order)
    }

    pub(crate) fn histogram_with_order(&self, t: usize, order: &[usize]) -> Result<LengthHistogram> {
        let overflow = || Error::PathCountOverflow(self.label(t).to_string());
        let mut poly: Vec<Vec<u64>> = vec![Vec::new(); self.vertex_count()];
        poly[t] = vec![1];
        let mut counts = vec![1u64];
        for &w in order.iter().rev() {
            if w == t {
                continue;
            }
            let mut acc: Vec<u64> = Vec::new();
            for (_, e) in self.out_edges(w) {
                let succ = &poly[e.range];
                if acc.len() < succ.len() + 1 {
                    acc.resize(succ.len() + 1, 0);
                }
                for (l, &c) in succ.iter().enumerate() {
                    acc[l + 1] = acc[l + 1].checked_add(c).ok_or_else(overflow)?;
                }
            }
            if counts.len() < acc.len() {
                counts.resize(acc.len(), 0);
            }
            for (l, &c) in acc.iter().enumerate() {
                counts[l] = counts[l].checked_add(c).ok_or_else(overflow)?;
            }
            poly[w] = acc;
        }
        while counts.len() > 1 && *counts.last().unwrap() == 0 {
            counts.pop();
        }
        Ok(LengthHistogram {
            sink: self.label(t).to_string(),
            counts,
        })
    }

    pub fn has_path_of_length(&self, sink: &str, length: usize) -> Result<bool> {
        Ok(self.path_length_histogram(sink)?.count(length) > 0)
    }

    /// Disjoint union; labels of `other` are prefixed to stay unique.
    pub fn disjoint_union(&self, other: &Graph, name: &str) -> Graph {
        let tag = |side: &str, s: &str| format!("{side}:{s}");
        let mut vertices: Vec<String> = self.vertices.iter().map(|v| tag("a", v)).collect();
        vertices.extend(other.vertices.iter().map(|v| tag("b", v)));
        let mut edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .map(|e| {
                (
                    tag("a", &e.id),
                    tag("a", &self.vertices[e.source]),
                    tag("a", &self.vertices[e.range]),
                )
            })
            .collect();
        edges.extend(other.edges.iter().map(|e| {
            (
                tag("b", &e.id),
                tag("b", &other.vertices[e.source]),
                tag("b", &other.vertices[e.range]),
            )
        }));
        build_graph(name, vertices, edges).expect("prefixed labels stay unique")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialization is infallible")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (|E0| = {}, |E1| = {})",
            self.name,
            self.vertex_count(),
            self.edge_count()
        )
    }
}
