//! Generators for the named graph presentations: matrix algebras (paths),
//! cycles, Cuntz algebras, the Toeplitz algebra, quantum spheres and the
//! tensor square of a path.
//!
//! Every generator names its graph `family(n)` (or just `toeplitz`); the
//! registry only attributes known results to a graph whose name parses
//! this way *and* whose structure is byte-identical to the generator's
//! output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Cuntz,
    Toeplitz,
    OddSphere,
    EvenSphere,
    TensorPath,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Path,
        Family::Cycle,
        Family::Cuntz,
        Family::Toeplitz,
        Family::OddSphere,
        Family::EvenSphere,
        Family::TensorPath,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Cuntz => "cuntz",
            Family::Toeplitz => "toeplitz",
            Family::OddSphere => "odd_sphere",
            Family::EvenSphere => "even_sphere",
            Family::TensorPath => "tensor_path",
        }
    }

    pub fn takes_parameter(self) -> bool {
        self != Family::Toeplitz
    }

    pub fn min_parameter(self) -> usize {
        match self {
            Family::Cuntz | Family::TensorPath => 2,
            _ => 1,
        }
    }

    pub fn generate(self, n: Option<usize>) -> Result<Graph> {
        if self == Family::Toeplitz {
            return Ok(toeplitz_graph());
        }
        let n = n.ok_or_else(|| {
            Error::InvalidParameter(format!("family `{}` requires --n", self.as_str()))
        })?;
        if n < self.min_parameter() {
            return Err(Error::InvalidParameter(format!(
                "family `{}` requires n >= {}",
                self.as_str(),
                self.min_parameter()
            )));
        }
        Ok(match self {
            Family::Path => path_graph(n),
            Family::Cycle => cycle_graph(n),
            Family::Cuntz => cuntz_graph(n),
            Family::OddSphere => odd_sphere_graph(n),
            Family::EvenSphere => even_sphere_graph(n),
            Family::TensorPath => tensor_path_graph(n),
            Family::Toeplitz => unreachable!(),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{s}`")))
    }
}

/// A recognized generator invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl FamilyTag {
    pub fn graph_name(&self) -> String {
        match self.n {
            Some(n) => format!("{}({n})", self.family),
            None => self.family.to_string(),
        }
    }
}

/// Recovers the generator provenance of `g`: its name must be a canonical
/// generator name and its vertices and edges must equal the generator's.
pub fn recognize(g: &Graph) -> Option<FamilyTag> {
    let name = g.name();
    let (family, n) = match name.split_once('(') {
        Some((fam, rest)) => {
            let n: usize = rest.strip_suffix(')')?.parse().ok()?;
            (fam.parse::<Family>().ok()?, Some(n))
        }
        None => (name.parse::<Family>().ok()?, None),
    };
    if family.takes_parameter() != n.is_some() {
        return None;
    }
    let reference = family.generate(n).ok()?;
    (reference == *g).then_some(FamilyTag { family, n })
}

fn v(i: usize) -> String {
    format!("v{i}")
}

fn e(i: usize, j: usize) -> String {
    format!("e_{i}_{j}")
}

fn assemble(name: String, vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Graph {
    build_graph(name, vertices, edges).expect("generated labels are valid")
}

/// `n`-vertex path v1 -> v2 -> ... -> vn; its algebra is `M_n`.
pub fn path_graph(n: usize) -> Graph {
    assert!(n >= 1);
    let edges = (1..n).map(|i| (e(i, i + 1), v(i), v(i + 1))).collect();
    assemble(format!("path({n})"), (1..=n).map(v).collect(), edges)
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 1);
    let edges = (1..=n)
        .map(|i| {
            let j = i % n + 1;
            (e(i, j), v(i), v(j))
        })
        .collect();
    assemble(format!("cycle({n})"), (1..=n).map(v).collect(), edges)
}

/// One vertex carrying `n` loops `s1..sn`.
pub fn cuntz_graph(n: usize) -> Graph {
    assert!(n >= 2);
    let edges = (1..=n).map(|i| (format!("s{i}"), v(1), v(1))).collect();
    assemble(format!("cuntz({n})"), vec![v(1)], edges)
}

/// Loop at v1 plus an edge v1 -> v2.
pub fn toeplitz_graph() -> Graph {
    assemble(
        "toeplitz".to_string(),
        vec![v(1), v(2)],
        vec![(e(1, 1), v(1), v(1)), (e(1, 2), v(1), v(2))],
    )
}

fn sphere_edges(n: usize) -> Vec<(String, String, String)> {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            edges.push((e(i, j), v(i), v(j)));
        }
    }
    edges
}

/// Vertices v1..vn with edges e_i_j for every i <= j.
pub fn odd_sphere_graph(n: usize) -> Graph {
    assert!(n >= 1);
    assemble(
        format!("odd_sphere({n})"),
        (1..=n).map(v).collect(),
        sphere_edges(n),
    )
}

/// The odd-sphere graph plus sinks w1, w2 and edges f_i_k from v_i to w_k.
pub fn even_sphere_graph(n: usize) -> Graph {
    assert!(n >= 1);
    let mut vertices: Vec<String> = (1..=n).map(v).collect();
    vertices.push("w1".into());
    vertices.push("w2".into());
    let mut edges = sphere_edges(n);
    for i in 1..=n {
        for k in 1..=2 {
            edges.push((format!("f_{i}_{k}"), v(i), format!("w{k}")));
        }
    }
    assemble(format!("even_sphere({n})"), vertices, edges)
}

/// `n` rows, each an `n`-vertex path `v_r_1 -> ... -> v_r_n`, with the
/// right endpoints chained `v_{r+1}_n -> v_r_n`. The unique sink is
/// `v_1_n`. Presents `M_n (x) M_n` with the diagonal gauge action.
pub fn tensor_path_graph(n: usize) -> Graph {
    assert!(n >= 2);
    let node = |r: usize, c: usize| format!("v_{r}_{c}");
    let mut vertices = Vec::with_capacity(n * n);
    let mut edges = Vec::with_capacity(n * n - 1);
    for r in 1..=n {
        for c in 1..=n {
            vertices.push(node(r, c));
            if c < n {
                edges.push((format!("row_{r}_{c}"), node(r, c), node(r, c + 1)));
            }
        }
    }
    for r in 1..n {
        edges.push((format!("chain_{r}"), node(r + 1, n), node(r, n)));
    }
    assemble(format!("tensor_path({n})"), vertices, edges)
}
