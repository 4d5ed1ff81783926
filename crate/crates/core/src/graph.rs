//! Undirected multigraph with stable edge identities, plus the per-vertex
//! degree vectors, edge colorings and orientations layered on top of it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsu::UnionFind;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: VertexId },
    #[error("edge {edge} has endpoint {vertex} outside 0..{vertex_count}")]
    EndpointOutOfRange {
        edge: EdgeId,
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("degree vector has {got} entries, graph has {expected} vertices")]
    DegreeVectorLength { expected: usize, got: usize },
    #[error("arc {tail}->{head} does not match the endpoints of edge {edge}")]
    ArcMismatch {
        edge: EdgeId,
        tail: VertexId,
        head: VertexId,
    },
}

/// An undirected multigraph. Edge `i` is the `i`-th entry of [`MultiGraph::edges`];
/// parallel edges are distinct edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (id, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: id,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { edge: id, vertex: a });
            }
            incidence[a].push(id);
            incidence[b].push(id);
        }
        Ok(MultiGraph {
            vertex_count,
            edges,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownEdge(e))
        }
    }

    /// Relabels vertex `v` as `perm[v]`. Edge ids are preserved.
    pub fn relabel(&self, perm: &[VertexId]) -> MultiGraph {
        assert_eq!(perm.len(), self.vertex_count, "permutation length");
        let edges = self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        MultiGraph::new(self.vertex_count, edges).expect("relabeling preserves validity")
    }
}

/// Nonnegative out-degree target per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeVector(Vec<usize>);

impl DegreeVector {
    pub fn new(values: Vec<usize>) -> Self {
        DegreeVector(values)
    }

    pub fn zeros(n: usize) -> Self {
        DegreeVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> usize {
        self.0[v]
    }

    pub fn set(&mut self, v: VertexId, value: usize) {
        self.0[v] = value;
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn check_for(&self, g: &MultiGraph) -> Result<(), GraphError> {
        if self.0.len() == g.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::DegreeVectorLength {
                expected: g.vertex_count(),
                got: self.0.len(),
            })
        }
    }
}

impl std::ops::Index<VertexId> for DegreeVector {
    type Output = usize;

    fn index(&self, v: VertexId) -> &usize {
        &self.0[v]
    }
}

impl From<Vec<usize>> for DegreeVector {
    fn from(values: Vec<usize>) -> Self {
        DegreeVector(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Color::Blue => 0,
            Color::Red => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Red => "red",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Arc {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Arc { tail, head }
    }

    pub fn reversed(self) -> Arc {
        Arc {
            tail: self.head,
            head: self.tail,
        }
    }
}

/// Directions for a subset of the edges, keyed by edge id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Orientation {
    arcs: BTreeMap<EdgeId, Arc>,
}

impl Orientation {
    pub fn new() -> Self {
        Orientation::default()
    }

    /// Orients `e` from `tail` to the other endpoint.
    pub fn orient(&mut self, g: &MultiGraph, e: EdgeId, tail: VertexId) -> Result<(), GraphError> {
        g.check_edge(e)?;
        let (a, b) = g.endpoints(e);
        let head = if tail == a {
            b
        } else if tail == b {
            a
        } else {
            return Err(GraphError::ArcMismatch { edge: e, tail, head: tail });
        };
        self.arcs.insert(e, Arc { tail, head });
        Ok(())
    }

    /// Inserts an arc after checking it against the edge's endpoints.
    pub fn insert(&mut self, g: &MultiGraph, e: EdgeId, arc: Arc) -> Result<(), GraphError> {
        g.check_edge(e)?;
        let (a, b) = g.endpoints(e);
        if (arc.tail, arc.head) != (a, b) && (arc.tail, arc.head) != (b, a) {
            return Err(GraphError::ArcMismatch {
                edge: e,
                tail: arc.tail,
                head: arc.head,
            });
        }
        self.arcs.insert(e, arc);
        Ok(())
    }

    pub fn get(&self, e: EdgeId) -> Option<Arc> {
        self.arcs.get(&e).copied()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Oriented edges in ascending edge id.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, Arc)> + '_ {
        self.arcs.iter().map(|(&e, &a)| (e, a))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.arcs.keys().copied()
    }

    /// Merges `other` into `self`; arcs in `other` win on overlap.
    pub fn extend(&mut self, other: &Orientation) {
        self.arcs.extend(other.arcs.iter().map(|(&e, &a)| (e, a)));
    }

    pub fn reverse(&mut self, e: EdgeId) {
        if let Some(a) = self.arcs.get_mut(&e) {
            *a = a.reversed();
        }
    }
}

/// A color per edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring(Vec<Color>);

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring(colors)
    }

    pub fn uniform(edge_count: usize, c: Color) -> Self {
        EdgeColoring(vec![c; edge_count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, e: EdgeId) -> Color {
        self.0[e]
    }

    pub fn set(&mut self, e: EdgeId, c: Color) {
        self.0[e] = c;
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn class(&self, c: Color) -> Vec<EdgeId> {
        (0..self.0.len()).filter(|&e| self.0[e] == c).collect()
    }

    pub fn swapped(&self) -> EdgeColoring {
        EdgeColoring(self.0.iter().map(|c| c.other()).collect())
    }
}

/// True iff `edge_set` has exactly `|V| - 1` edges and connects every vertex.
///
/// Unknown edge ids make the answer false.
pub fn is_spanning_tree(g: &MultiGraph, edge_set: &[EdgeId]) -> bool {
    let n = g.vertex_count();
    if n == 0 || edge_set.len() != n - 1 {
        return false;
    }
    let mut uf = UnionFind::new(n);
    let mut components = n;
    for &e in edge_set {
        if e >= g.edge_count() {
            return false;
        }
        let (a, b) = g.endpoints(e);
        if uf.union(a, b) {
            components -= 1;
        }
    }
    components == 1
}

/// Number of arcs leaving each vertex.
pub fn out_degrees(g: &MultiGraph, o: &Orientation) -> DegreeVector {
    let mut out = vec![0; g.vertex_count()];
    for (_, arc) in o.iter() {
        out[arc.tail] += 1;
    }
    DegreeVector(out)
}
