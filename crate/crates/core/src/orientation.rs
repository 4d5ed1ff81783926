//! Exact out-degree orientations ("m-orientations") of an edge subset.
//!
//! Orienting an edge is the same as choosing which endpoint is its tail, so an
//! m-orientation of `F` is an assignment of every edge of `F` to one of its
//! endpoints in which vertex `v` receives exactly `m(v)` edges. That is a
//! capacitated bipartite matching between edges and vertices, solved here with
//! augmenting paths.

use thiserror::Error;

use crate::graph::{DegreeVector, EdgeId, GraphError, MultiGraph, Orientation, VertexId};

/// Subset enumeration in [`check_hakimi_condition`] is refused above this many
/// touched vertices.
pub const HAKIMI_VERTEX_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrientationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {0} listed twice in the edge set")]
    DuplicateEdge(EdgeId),
    #[error("edge set touches {touched} vertices, subset enumeration is limited to {limit}")]
    TooManyVertices { touched: usize, limit: usize },
}

fn validate(g: &MultiGraph, edge_set: &[EdgeId], m: &DegreeVector) -> Result<Vec<bool>, OrientationError> {
    m.check_for(g)?;
    let mut seen = vec![false; g.edge_count()];
    let mut touched = vec![false; g.vertex_count()];
    for &e in edge_set {
        g.check_edge(e)?;
        if std::mem::replace(&mut seen[e], true) {
            return Err(OrientationError::DuplicateEdge(e));
        }
        let (a, b) = g.endpoints(e);
        touched[a] = true;
        touched[b] = true;
    }
    Ok(touched)
}

/// Finds an orientation of exactly `edge_set` in which every vertex touched by
/// the set is the tail of `m(v)` arcs, or `None` when there is none.
///
/// Vertices not touched by `edge_set` are ignored. Edges are inserted in
/// ascending id and each tries its smaller endpoint first, so the result is a
/// function of the inputs alone.
pub fn find_m_orientation(
    g: &MultiGraph,
    edge_set: &[EdgeId],
    m: &DegreeVector,
) -> Result<Option<Orientation>, OrientationError> {
    let touched = validate(g, edge_set, m)?;
    let demand: usize = (0..g.vertex_count()).filter(|&v| touched[v]).map(|v| m[v]).sum();
    if demand != edge_set.len() {
        return Ok(None);
    }
    let mut edges = edge_set.to_vec();
    edges.sort_unstable();
    let mut assigner = TailAssigner::new(g, m.values().to_vec());
    for &e in &edges {
        if !assigner.insert(e) {
            return Ok(None);
        }
    }
    let mut o = Orientation::new();
    for &e in &edges {
        let tail = assigner.tail(e).expect("inserted edges carry a tail");
        o.orient(g, e, tail)?;
    }
    Ok(Some(o))
}

/// Subset-sum characterisation of m-orientability: the targets over touched
/// vertices sum to `|F|`, and every set `X` of touched vertices has
/// `m(X) >= |F[X]|`. Exponential in the number of touched vertices.
pub fn check_hakimi_condition(
    g: &MultiGraph,
    edge_set: &[EdgeId],
    m: &DegreeVector,
) -> Result<bool, OrientationError> {
    let touched = validate(g, edge_set, m)?;
    let verts: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| touched[v]).collect();
    if verts.len() > HAKIMI_VERTEX_LIMIT {
        return Err(OrientationError::TooManyVertices {
            touched: verts.len(),
            limit: HAKIMI_VERTEX_LIMIT,
        });
    }
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let total: usize = verts.iter().map(|&v| m[v]).sum();
    if total != edge_set.len() {
        return Ok(false);
    }
    let edge_masks: Vec<u32> = edge_set
        .iter()
        .map(|&e| {
            let (a, b) = g.endpoints(e);
            (1u32 << local[a]) | (1u32 << local[b])
        })
        .collect();
    for subset in 1u32..(1u32 << verts.len()) {
        let capacity: usize = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| subset & (1 << i) != 0)
            .map(|(_, &v)| m[v])
            .sum();
        let inside = edge_masks.iter().filter(|&&em| em & subset == em).count();
        if capacity < inside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Incremental edge-to-tail assignment under per-vertex capacities, with
/// LIFO undo. Used by [`find_m_orientation`] and by the partition search,
/// where capacities are upper bounds on the out-degree of a partial tree.
#[derive(Debug, Clone)]
pub(crate) struct TailAssigner<'g> {
    g: &'g MultiGraph,
    cap: Vec<usize>,
    load: Vec<usize>,
    tail: Vec<Option<VertexId>>,
    log: Vec<(EdgeId, Option<VertexId>)>,
    checkpoints: Vec<usize>,
    visited: Vec<u32>,
    stamp: u32,
}

impl<'g> TailAssigner<'g> {
    pub(crate) fn new(g: &'g MultiGraph, cap: Vec<usize>) -> Self {
        debug_assert_eq!(cap.len(), g.vertex_count());
        TailAssigner {
            g,
            load: vec![0; cap.len()],
            visited: vec![0; cap.len()],
            cap,
            tail: vec![None; g.edge_count()],
            log: Vec::new(),
            checkpoints: Vec::new(),
            stamp: 0,
        }
    }

    pub(crate) fn tail(&self, e: EdgeId) -> Option<VertexId> {
        self.tail[e]
    }

    /// Adds `e`, rerouting earlier edges along an augmenting path if needed.
    /// On failure nothing changes.
    pub(crate) fn insert(&mut self, e: EdgeId) -> bool {
        debug_assert!(self.tail[e].is_none());
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.visited.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let (a, b) = self.g.endpoints(e);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        for w in [lo, hi] {
            if self.make_room(w) {
                self.set_tail(e, Some(w));
                return true;
            }
        }
        false
    }

    fn make_room(&mut self, w: VertexId) -> bool {
        if self.visited[w] == self.stamp {
            return false;
        }
        self.visited[w] = self.stamp;
        if self.load[w] < self.cap[w] {
            return true;
        }
        let g = self.g;
        for &f in g.incident(w) {
            if self.tail[f] != Some(w) {
                continue;
            }
            let x = g.other_endpoint(f, w);
            if self.make_room(x) {
                self.set_tail(f, Some(x));
                return true;
            }
        }
        false
    }

    fn set_tail(&mut self, e: EdgeId, t: Option<VertexId>) {
        let prev = self.tail[e];
        if let Some(p) = prev {
            self.load[p] -= 1;
        }
        if let Some(n) = t {
            self.load[n] += 1;
        }
        self.tail[e] = t;
        self.log.push((e, prev));
    }

    pub(crate) fn checkpoint(&mut self) {
        self.checkpoints.push(self.log.len());
    }

    pub(crate) fn rollback(&mut self) {
        let mark = self.checkpoints.pop().expect("rollback without checkpoint");
        while self.log.len() > mark {
            let (e, prev) = self.log.pop().expect("log entry");
            if let Some(cur) = self.tail[e] {
                self.load[cur] -= 1;
            }
            if let Some(p) = prev {
                self.load[p] += 1;
            }
            self.tail[e] = prev;
        }
    }
}
