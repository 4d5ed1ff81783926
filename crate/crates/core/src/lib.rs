//! Spanning-tree partitions with prescribed out-degrees.
//!
//! Given a multigraph `G` and per-vertex targets `b`, `r`, a (b, r)-partition
//! splits `E(G)` into a blue and a red spanning tree such that the blue tree
//! can be oriented with out-degree `b(v)` at every vertex and the red tree
//! with `r(v)`. This crate decides and certifies such partitions and compiles
//! NotAllEqual-3-SAT instances into them, which shows the decision problem is
//! NP-hard.

pub mod dot;
pub mod dsu;
pub mod graph;
pub mod harness;
pub mod json;
pub mod nae;
pub mod orientation;
pub mod reduction;
pub mod solver;
pub mod witness;

pub use graph::{is_spanning_tree, out_degrees, Arc, Color, DegreeVector, EdgeColoring, EdgeId, MultiGraph, Orientation, VertexId};
pub use nae::{NaeInstance, VarColoring};
pub use orientation::{check_hakimi_condition, find_m_orientation};
pub use reduction::{build_reduction, ReductionArtifact};
pub use solver::{decide_partition, verify_witness, Budget, Decision, PartitionWitness, Verdict};
