//! Local-triviality dimensions of gauge actions on graph C*-algebras.
//!
//! For finite acyclic graphs the weak, plain and strong dimensions of the
//! gauge `Z/k`-action are computed exactly from a residue-class census of
//! paths ending at each sink, and the upper bound is backed by explicit
//! matrix witnesses that are checked numerically. For general finite
//! graphs, `Z/2` upper bounds come with exact certificates (rational row
//! combinations of `I + A_E`, or edge families with distinct ranges).

pub mod acyclic;
pub mod census;
pub mod certs;
pub mod cli;
pub mod dim;
pub mod error;
pub mod exec;
pub mod families;
pub mod graph;
pub mod linalg;
pub mod outsplit;
pub mod registry;
pub mod report;
pub mod witness;

pub use census::{ExtNat, SinkCensus};
pub use dim::{Certainty, DimKind, DimResult, Group};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{build_graph, Graph};
pub use report::{analyze, AnalyzeOptions, Report};
