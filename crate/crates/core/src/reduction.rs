//! Compiles an NAE-3-SAT instance into a graph `G` with targets `b`, `r` such
//! that `E(G)` splits into a blue spanning tree with a `b`-orientation and a
//! red spanning tree with an `r`-orientation exactly when the instance is
//! satisfiable.
//!
//! Layout for `n` clauses (12n + 1 vertices, 24n edges):
//!
//! * hub `s` = vertex 0, with `b(s) = r(s) = 3n`;
//! * for every clause `C = (x, y, z)` an original gadget and a copy gadget,
//!   each with triangle vertices `u_x, u_y, u_z` (`b = r = 1`) and cycle
//!   vertices `v_x, v_y, v_z` (`b = 1, r = 0` in originals, `b = 0, r = 1` in
//!   copies), a triangle on the `u`s, pencil edges `u_t v_t`, and star edges
//!   `s u_t`;
//! * for every variable a cycle through its `v` vertices, alternating
//!   original and copy gadgets in ascending clause order.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DegreeVector, EdgeId, MultiGraph, VertexId};
use crate::nae::{Clause, NaeInstance};

pub const HUB: VertexId = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("instance has no clauses")]
    EmptyInstance,
}

/// Which gadget: clause index (0-based) and whether it is the copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GadgetRef {
    pub clause: usize,
    pub copy: bool,
}

impl fmt::Display for GadgetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}{}", self.clause + 1, if self.copy { "'" } else { "" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Hub,
    Triangle { gadget: GadgetRef, variable: usize },
    Cycle { gadget: GadgetRef, variable: usize },
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Hub => f.write_str("s"),
            VertexLabel::Triangle { gadget, variable } => write!(f, "u/{gadget}/x{variable}"),
            VertexLabel::Cycle { gadget, variable } => write!(f, "v/{gadget}/x{variable}"),
        }
    }
}

impl std::str::FromStr for VertexLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "s" {
            return Ok(VertexLabel::Hub);
        }
        let bad = || format!("unrecognised vertex label {s:?}");
        let mut parts = s.split('/');
        let (kind, gadget, var) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(k), Some(g), Some(v), None) => (k, g, v),
            _ => return Err(bad()),
        };
        let gadget = gadget.strip_prefix('C').ok_or_else(bad)?;
        let (digits, copy) = match gadget.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (gadget, false),
        };
        let clause: usize = digits.parse().map_err(|_| bad())?;
        let variable: usize = var.strip_prefix('x').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if clause == 0 || variable == 0 {
            return Err(bad());
        }
        let gadget = GadgetRef {
            clause: clause - 1,
            copy,
        };
        match kind {
            "u" => Ok(VertexLabel::Triangle { gadget, variable }),
            "v" => Ok(VertexLabel::Cycle { gadget, variable }),
            _ => Err(bad()),
        }
    }
}

/// What each edge is for. Serialised as `{"kind": ..., ...}` with 1-based
/// clause indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeRole {
    Triangle {
        clause: usize,
        copy: bool,
    },
    Pencil {
        clause: usize,
        copy: bool,
        variable: usize,
    },
    Star {
        clause: usize,
        copy: bool,
        slot: usize,
    },
    Cycle {
        variable: usize,
        position: usize,
    },
}

/// Vertices and edges of one clause gadget, indexed by clause slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub at: GadgetRef,
    pub variables: Clause,
    pub u: [VertexId; 3],
    pub v: [VertexId; 3],
    /// `u0 u1`, `u1 u2`, `u0 u2`
    pub triangle: [EdgeId; 3],
    /// `u_t v_t`
    pub pencil: [EdgeId; 3],
    /// `s u_t`
    pub star: [EdgeId; 3],
}

impl Gadget {
    /// Triangle edge joining slots `i` and `j`.
    pub fn triangle_between(&self, i: usize, j: usize) -> EdgeId {
        match (i.min(j), i.max(j)) {
            (0, 1) => self.triangle[0],
            (1, 2) => self.triangle[1],
            (0, 2) => self.triangle[2],
            _ => panic!("no triangle edge between slots {i} and {j}"),
        }
    }

    pub fn slot_of(&self, variable: usize) -> Option<usize> {
        self.variables.iter().position(|&x| x == variable)
    }
}

/// The cycle of one variable: visited `v` vertices and the edge leaving each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableCycle {
    pub variable: usize,
    /// `v` vertices in visiting order: original, copy, original, ...
    pub vertices: Vec<VertexId>,
    /// `edges[j]` joins `vertices[j]` and `vertices[(j + 1) % len]`.
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    instance: NaeInstance,
    graph: MultiGraph,
    b: DegreeVector,
    r: DegreeVector,
    labels: Vec<VertexLabel>,
    roles: Vec<EdgeRole>,
    gadgets: Vec<[Gadget; 2]>,
    cycles: Vec<VariableCycle>,
}

impl ReductionArtifact {
    pub fn instance(&self) -> &NaeInstance {
        &self.instance
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn b(&self) -> &DegreeVector {
        &self.b
    }

    pub fn r(&self) -> &DegreeVector {
        &self.r
    }

    pub fn hub(&self) -> VertexId {
        HUB
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.to_string()).collect()
    }

    pub fn roles(&self) -> &[EdgeRole] {
        &self.roles
    }

    /// `[original, copy]` per clause.
    pub fn clause_gadgets(&self) -> &[[Gadget; 2]] {
        &self.gadgets
    }

    pub fn gadget(&self, at: GadgetRef) -> &Gadget {
        &self.gadgets[at.clause][usize::from(at.copy)]
    }

    /// All 2n gadgets: originals and copies interleaved in clause order.
    pub fn gadgets(&self) -> impl Iterator<Item = &Gadget> {
        self.gadgets.iter().flat_map(|pair| pair.iter())
    }

    /// Cycles of variables that occur in at least one clause, ascending.
    pub fn cycles(&self) -> &[VariableCycle] {
        &self.cycles
    }

    pub fn clause_count(&self) -> usize {
        self.gadgets.len()
    }
}

/// Builds the reduction graph for a nonempty instance. Deterministic.
pub fn build_reduction(inst: &NaeInstance) -> Result<ReductionArtifact, ReductionError> {
    let n = inst.clause_count();
    if n == 0 {
        return Err(ReductionError::EmptyInstance);
    }
    let vertex_count = 12 * n + 1;
    let mut labels = Vec::with_capacity(vertex_count);
    let mut b = vec![0; vertex_count];
    let mut r = vec![0; vertex_count];
    labels.push(VertexLabel::Hub);
    b[HUB] = 3 * n;
    r[HUB] = 3 * n;

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(24 * n);
    let mut roles = Vec::with_capacity(24 * n);
    let mut gadgets = Vec::with_capacity(n);

    for (ci, clause) in inst.clauses().iter().enumerate() {
        let mut make = |copy: bool| {
            let at = GadgetRef { clause: ci, copy };
            let base = labels.len();
            let u = [base, base + 1, base + 2];
            let v = [base + 3, base + 4, base + 5];
            for &variable in clause {
                labels.push(VertexLabel::Triangle { gadget: at, variable });
            }
            for &variable in clause {
                labels.push(VertexLabel::Cycle { gadget: at, variable });
            }
            for t in 0..3 {
                b[u[t]] = 1;
                r[u[t]] = 1;
                b[v[t]] = usize::from(!copy);
                r[v[t]] = usize::from(copy);
            }
            let clause_no = ci + 1;
            let mut push = |a: VertexId, z: VertexId, role: EdgeRole| {
                edges.push((a, z));
                roles.push(role);
                edges.len() - 1
            };
            let star = [0, 1, 2].map(|slot| {
                push(HUB, u[slot], EdgeRole::Star { clause: clause_no, copy, slot })
            });
            let triangle = [(0, 1), (1, 2), (0, 2)].map(|(i, j)| {
                push(u[i], u[j], EdgeRole::Triangle { clause: clause_no, copy })
            });
            let pencil = [0, 1, 2].map(|t| {
                push(
                    u[t],
                    v[t],
                    EdgeRole::Pencil {
                        clause: clause_no,
                        copy,
                        variable: clause[t],
                    },
                )
            });
            Gadget {
                at,
                variables: *clause,
                u,
                v,
                triangle,
                pencil,
                star,
            }
        };
        let original = make(false);
        let copy = make(true);
        gadgets.push([original, copy]);
    }

    let mut cycles = Vec::new();
    for variable in 1..=inst.variable_count() {
        let occurrences = inst.occurrences(variable);
        if occurrences.is_empty() {
            continue;
        }
        let mut vertices = Vec::with_capacity(2 * occurrences.len());
        for &ci in &occurrences {
            for g in &gadgets[ci] {
                let slot = g.slot_of(variable).expect("variable occurs in its clause");
                vertices.push(g.v[slot]);
            }
        }
        let len = vertices.len();
        let cycle_edges = (0..len)
            .map(|position| {
                edges.push((vertices[position], vertices[(position + 1) % len]));
                roles.push(EdgeRole::Cycle { variable, position });
                edges.len() - 1
            })
            .collect();
        cycles.push(VariableCycle {
            variable,
            vertices,
            edges: cycle_edges,
        });
    }

    let graph = MultiGraph::new(vertex_count, edges).expect("gadget edges are well formed");
    Ok(ReductionArtifact {
        instance: inst.clone(),
        graph,
        b: b.into(),
        r: r.into(),
        labels,
        roles,
        gadgets,
        cycles,
    })
}
