//! Deciding and certifying (b, r)-partitions: a split of all edges into a blue
//! spanning tree with a `b`-orientation and a red spanning tree with an
//! `r`-orientation.
//!
//! [`verify_witness`] is the polynomial certificate check. [`decide_partition`]
//! is an exact depth-first search over edge colorings, so it is exponential in
//! the worst case and runs under a [`Budget`].

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::dsu::UnionFind;
use crate::graph::{
    is_spanning_tree, out_degrees, Color, DegreeVector, EdgeColoring, EdgeId, GraphError, MultiGraph,
    Orientation, VertexId,
};
use crate::orientation::{find_m_orientation, TailAssigner};

/// A coloring of every edge plus a direction for every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    pub coloring: EdgeColoring,
    pub orientation: Orientation,
}

impl PartitionWitness {
    pub fn new(coloring: EdgeColoring, orientation: Orientation) -> Self {
        PartitionWitness { coloring, orientation }
    }

    /// Same orientation, colors exchanged.
    pub fn swapped(&self) -> PartitionWitness {
        PartitionWitness {
            coloring: self.coloring.swapped(),
            orientation: self.orientation.clone(),
        }
    }
}

/// Structural problems that make a witness unreadable, as opposed to a
/// well-formed witness that fails the check.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("coloring covers {got} edges, graph has {expected}")]
    ColoringLength { expected: usize, got: usize },
    #[error("edge {0} has no orientation")]
    MissingArc(EdgeId),
    #[error("orientation mentions edge {0}, which is not in the graph")]
    ExtraArc(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    NotSpanningTree(Color),
    OutDegreeMismatch {
        vertex: VertexId,
        color: Color,
        expected: usize,
        actual: usize,
    },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::NotSpanningTree(c) => write!(f, "{c} edges do not form a spanning tree"),
            RejectReason::OutDegreeMismatch {
                vertex,
                color,
                expected,
                actual,
            } => write!(f, "vertex {vertex} has {color} out-degree {actual}, expected {expected}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Checks, in order: blue spanning tree, red spanning tree, then per vertex
/// (ascending) blue and red out-degrees. Reports the first failure.
pub fn verify_witness(
    g: &MultiGraph,
    b: &DegreeVector,
    r: &DegreeVector,
    w: &PartitionWitness,
) -> Result<Verdict, WitnessError> {
    b.check_for(g)?;
    r.check_for(g)?;
    if w.coloring.len() != g.edge_count() {
        return Err(WitnessError::ColoringLength {
            expected: g.edge_count(),
            got: w.coloring.len(),
        });
    }
    if let Some(e) = w.orientation.edge_ids().find(|&e| e >= g.edge_count()) {
        return Err(WitnessError::ExtraArc(e));
    }
    let mut split = [Orientation::new(), Orientation::new()];
    for e in 0..g.edge_count() {
        let arc = w.orientation.get(e).ok_or(WitnessError::MissingArc(e))?;
        split[w.coloring.get(e).index()].insert(g, e, arc)?;
    }
    let (blue, red) = extract_color_classes(w);
    if !is_spanning_tree(g, &blue) {
        return Ok(Verdict::Reject(RejectReason::NotSpanningTree(Color::Blue)));
    }
    if !is_spanning_tree(g, &red) {
        return Ok(Verdict::Reject(RejectReason::NotSpanningTree(Color::Red)));
    }
    let outs = [out_degrees(g, &split[0]), out_degrees(g, &split[1])];
    for v in 0..g.vertex_count() {
        for (color, target) in [(Color::Blue, b), (Color::Red, r)] {
            let actual = outs[color.index()][v];
            if actual != target[v] {
                return Ok(Verdict::Reject(RejectReason::OutDegreeMismatch {
                    vertex: v,
                    color,
                    expected: target[v],
                    actual,
                }));
            }
        }
    }
    Ok(Verdict::Accept)
}

/// Blue and red edge ids, each ascending.
pub fn extract_color_classes(w: &PartitionWitness) -> (Vec<EdgeId>, Vec<EdgeId>) {
    (w.coloring.class(Color::Blue), w.coloring.class(Color::Red))
}

/// Search limits. Node limits give reproducible outcomes; time limits do not.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }

    pub fn time(d: Duration) -> Self {
        Budget {
            max_nodes: None,
            max_time: Some(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(PartitionWitness),
    No,
    BudgetExhausted,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(&self) -> Option<&PartitionWitness> {
        match self {
            Decision::Yes(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub decision: Decision,
    /// Color assignments attempted.
    pub nodes: u64,
}

/// Exact search for a (b, r)-partition.
///
/// Edges are colored in ascending id, Blue before Red. A branch is cut when
/// the new edge closes a monochromatic cycle, when the edges still available
/// to the other color no longer connect the graph, when an endpoint can no
/// longer reach its out-degree target in some color, or when the edges of the
/// new color admit no orientation within the targets (checked incrementally
/// by augmenting paths). Complete colorings are oriented exactly with
/// [`find_m_orientation`].
pub fn decide_partition(
    g: &MultiGraph,
    b: &DegreeVector,
    r: &DegreeVector,
    budget: Budget,
) -> Result<SearchReport, GraphError> {
    b.check_for(g)?;
    r.check_for(g)?;
    let no = SearchReport {
        decision: Decision::No,
        nodes: 0,
    };
    let n = g.vertex_count();
    if n == 0 || g.edge_count() != 2 * (n - 1) || b.sum() != n - 1 || r.sum() != n - 1 {
        return Ok(no);
    }
    if (0..n).any(|v| b[v] + r[v] > g.degree(v)) {
        return Ok(no);
    }
    let mut search = Search::new(g, [b, r], budget);
    let outcome = search.run(0);
    let decision = match outcome {
        Outcome::Found => Decision::Yes(search.witness.take().expect("found implies witness")),
        Outcome::Refuted => Decision::No,
        Outcome::OutOfBudget => Decision::BudgetExhausted,
    };
    Ok(SearchReport {
        decision,
        nodes: search.nodes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Refuted,
    OutOfBudget,
}

struct Search<'g> {
    g: &'g MultiGraph,
    targets: [&'g DegreeVector; 2],
    color: Vec<Option<Color>>,
    forests: [UnionFind; 2],
    tails: [TailAssigner<'g>; 2],
    colored_degree: [Vec<usize>; 2],
    uncolored_degree: Vec<usize>,
    nodes: u64,
    budget: Budget,
    started: Instant,
    witness: Option<PartitionWitness>,
}

impl<'g> Search<'g> {
    fn new(g: &'g MultiGraph, targets: [&'g DegreeVector; 2], budget: Budget) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            targets,
            color: vec![None; g.edge_count()],
            forests: [UnionFind::new(n), UnionFind::new(n)],
            tails: [
                TailAssigner::new(g, targets[0].values().to_vec()),
                TailAssigner::new(g, targets[1].values().to_vec()),
            ],
            colored_degree: [vec![0; n], vec![0; n]],
            uncolored_degree: (0..n).map(|v| g.degree(v)).collect(),
            nodes: 0,
            budget,
            started: Instant::now(),
            witness: None,
        }
    }

    fn out_of_budget(&self) -> bool {
        if let Some(max) = self.budget.max_nodes {
            if self.nodes >= max {
                return true;
            }
        }
        if let Some(limit) = self.budget.max_time {
            if self.nodes % 1024 == 0 && self.started.elapsed() > limit {
                return true;
            }
        }
        false
    }

    fn run(&mut self, e: EdgeId) -> Outcome {
        if e == self.g.edge_count() {
            return self.leaf();
        }
        let (u, v) = self.g.endpoints(e);
        for c in [Color::Blue, Color::Red] {
            if self.out_of_budget() {
                return Outcome::OutOfBudget;
            }
            self.nodes += 1;
            let k = c.index();
            if self.forests[k].same(u, v) {
                continue;
            }
            self.assign(e, c);
            let placed = self.tails[k].insert(e);
            let outcome = if placed && self.degrees_reachable(u) && self.degrees_reachable(v) && self.still_spans(c.other()) {
                self.run(e + 1)
            } else {
                Outcome::Refuted
            };
            self.unassign(e, c);
            if outcome != Outcome::Refuted {
                return outcome;
            }
        }
        Outcome::Refuted
    }

    fn assign(&mut self, e: EdgeId, c: Color) {
        let k = c.index();
        let (u, v) = self.g.endpoints(e);
        self.color[e] = Some(c);
        self.forests[k].union(u, v);
        self.tails[k].checkpoint();
        for w in [u, v] {
            self.colored_degree[k][w] += 1;
            self.uncolored_degree[w] -= 1;
        }
    }

    fn unassign(&mut self, e: EdgeId, c: Color) {
        let k = c.index();
        let (u, v) = self.g.endpoints(e);
        self.color[e] = None;
        self.forests[k].undo();
        self.tails[k].rollback();
        for w in [u, v] {
            self.colored_degree[k][w] -= 1;
            self.uncolored_degree[w] += 1;
        }
    }

    /// Both trees still have enough room at `w` for its out-degree targets.
    fn degrees_reachable(&self, w: VertexId) -> bool {
        (0..2).all(|k| self.targets[k][w] <= self.colored_degree[k][w] + self.uncolored_degree[w])
    }

    /// Edges colored `c` or uncolored connect every vertex.
    fn still_spans(&self, c: Color) -> bool {
        let n = self.g.vertex_count();
        let mut uf = UnionFind::new(n);
        let mut components = n;
        for (e, &(a, z)) in self.g.edges().iter().enumerate() {
            if self.color[e].is_none_or(|x| x == c) && uf.union(a, z) {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
        components == 1
    }

    fn leaf(&mut self) -> Outcome {
        let coloring = EdgeColoring::new(self.color.iter().map(|c| c.expect("leaf is fully colored")).collect());
        let mut orientation = Orientation::new();
        for c in [Color::Blue, Color::Red] {
            let class = coloring.class(c);
            match find_m_orientation(self.g, &class, self.targets[c.index()]) {
                Ok(Some(o)) => orientation.extend(&o),
                _ => return Outcome::Refuted,
            }
        }
        let witness = PartitionWitness::new(coloring, orientation);
        match verify_witness(self.g, self.targets[0], self.targets[1], &witness) {
            Ok(Verdict::Accept) => {
                self.witness = Some(witness);
                Outcome::Found
            }
            _ => Outcome::Refuted,
        }
    }
}
