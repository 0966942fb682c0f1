//! Maximal out-splitting of a finite acyclic graph.
//!
//! The vertices of the out-split graph are the directed paths of `E` that
//! terminate at a sink; each path `alpha nu` with a nonempty first edge
//! `alpha` has exactly one outgoing edge, to `nu`. Components are in
//! bijection with the sinks of `E`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exec::Exec;
use crate::graph::{build_graph, Graph};

/// A path of `E` ending at a sink, viewed as a vertex of the out-split graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathVertex {
    pub edge_ids: Vec<String>,
    pub sink: String,
}

impl PathVertex {
    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    /// `sink` for the empty path, otherwise the edge ids joined by `.`.
    pub fn label(&self) -> String {
        if self.edge_ids.is_empty() {
            self.sink.clone()
        } else {
            self.edge_ids.join(".")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutSplitComponent {
    pub sink: String,
    /// Basis order used by every matrix built on this component.
    pub paths: Vec<PathVertex>,
    pub graph: Graph,
}

impl OutSplitComponent {
    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(PathVertex::len).collect()
    }

    /// Number of component vertices of each length.
    pub fn length_counts(&self) -> Vec<u64> {
        let max = self.paths.iter().map(PathVertex::len).max().unwrap_or(0);
        let mut counts = vec![0u64; max + 1];
        for p in &self.paths {
            counts[p.len()] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutSplitGraph {
    pub components: Vec<OutSplitComponent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSize {
    pub vertices: usize,
    pub edges: usize,
}

impl OutSplitGraph {
    pub fn component(&self, sink: &str) -> Option<&OutSplitComponent> {
        self.components.iter().find(|c| c.sink == sink)
    }

    /// `(|F0|, |F1|)` per sink, in sink order.
    pub fn component_sizes(&self) -> Vec<(String, ComponentSize)> {
        self.components
            .iter()
            .map(|c| {
                (
                    c.sink.clone(),
                    ComponentSize {
                        vertices: c.graph.vertex_count(),
                        edges: c.graph.edge_count(),
                    },
                )
            })
            .collect()
    }
}

pub fn maximal_out_split(g: &Graph) -> Result<OutSplitGraph> {
    maximal_out_split_with(g, Exec::default())
}

pub fn maximal_out_split_with(g: &Graph, exec: Exec) -> Result<OutSplitGraph> {
    g.require_acyclic()?;
    let sinks = g.sink_indices();
    let components = exec.map(&sinks, |&t| split_component(g, t));
    Ok(OutSplitGraph { components })
}

/// Builds the component of the out-split graph for sink `t`, ordering its
/// vertices by start vertex of the path, then by edge sequence.
pub(crate) fn split_component(g: &Graph, t: usize) -> OutSplitComponent {
    // (start vertex, edge indices) for every path ending at t
    let mut paths: Vec<(usize, Vec<usize>)> = vec![(t, Vec::new())];
    let mut frontier = 0;
    while frontier < paths.len() {
        let (start, ref suffix) = paths[frontier];
        let suffix = suffix.clone();
        for (ei, e) in g.in_edges(start) {
            let mut extended = Vec::with_capacity(suffix.len() + 1);
            extended.push(ei);
            extended.extend_from_slice(&suffix);
            paths.push((e.source, extended));
        }
        frontier += 1;
    }
    paths.sort();

    let sink = g.label(t).to_string();
    let vertices: Vec<PathVertex> = paths
        .iter()
        .map(|(_, edges)| PathVertex {
            edge_ids: edges.iter().map(|&i| g.edges()[i].id.clone()).collect(),
            sink: sink.clone(),
        })
        .collect();
    let labels: Vec<String> = vertices.iter().map(PathVertex::label).collect();
    let edges = vertices
        .iter()
        .zip(&labels)
        .filter(|(p, _)| !p.is_empty())
        .map(|(p, label)| {
            let rest = PathVertex {
                edge_ids: p.edge_ids[1..].to_vec(),
                sink: sink.clone(),
            };
            (label.clone(), label.clone(), rest.label())
        })
        .collect();
    let graph = build_graph(format!("{}/outsplit/{}", g.name(), sink), labels, edges)
        .expect("path labels are distinct and suffixes are paths");
    OutSplitComponent {
        sink,
        paths: vertices,
        graph,
    }
}
