//! Moving between NAE colorings and partition witnesses of the reduction
//! graph, and checking the structure every valid witness must have.

use std::fmt;

use thiserror::Error;

use crate::dsu::UnionFind;
use crate::graph::{out_degrees, Color, DegreeVector, EdgeColoring, GraphError, Orientation};
use crate::nae::{first_violated_clause, NaeError, VarColoring};
use crate::orientation::{find_m_orientation, OrientationError};
use crate::reduction::{Gadget, GadgetRef, ReductionArtifact};
use crate::solver::{verify_witness, PartitionWitness, RejectReason, Verdict, WitnessError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Coloring(#[from] NaeError),
    #[error("clause {} is monochrome under the assignment", .0 + 1)]
    Unsatisfied(usize),
    #[error("triangle edges of {color} admit no orientation for the residual targets")]
    TriangleOrientation { color: Color },
    #[error(transparent)]
    Orientation(#[from] OrientationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error(transparent)]
    Malformed(#[from] WitnessError),
    #[error("witness rejected: {0}")]
    Rejected(RejectReason),
    /// An accepted witness whose original pencil edges disagree on a
    /// variable. Cannot happen for a correct verifier.
    #[error("accepted witness colors the original pencil edges of x{variable} inconsistently")]
    InconsistentPencils { variable: usize },
    #[error("extracted coloring leaves clause {} monochrome", .0 + 1)]
    Unsatisfied(usize),
}

/// Builds a (b, r)-partition of the reduction graph from a satisfying
/// assignment.
///
/// Pencil edges take the variable's color in original gadgets and the other
/// color in copies. Inside a gadget, with `x` the slot whose pencil color `M`
/// is in the minority and `y < z` the other two slots: `u_x u_y`, `u_y u_z`
/// and `s u_x` get `M`, while `u_x u_z`, `s u_y`, `s u_z` get the other color.
/// Each variable cycle alternates colors, starting with the variable's color
/// on the edge from its first original vertex to the matching copy, and is
/// oriented as a circuit so that originals leave on a blue arc and copies on
/// a red one. Star arcs leave the hub, pencil arcs leave the triangle, and
/// triangle arcs are solved per color against the residual targets.
pub fn build_witness_from_assignment(
    art: &ReductionArtifact,
    a: &VarColoring,
) -> Result<PartitionWitness, BuildError> {
    let inst = art.instance();
    if let Some(clause) = first_violated_clause(inst, a)? {
        return Err(BuildError::Unsatisfied(clause));
    }
    let g = art.graph();
    let mut coloring = EdgeColoring::uniform(g.edge_count(), Color::Blue);
    let mut fixed = Orientation::new();

    for gadget in art.gadgets() {
        let pencil: [Color; 3] = gadget.variables.map(|x| {
            let c = a.get(x);
            if gadget.at.copy {
                c.other()
            } else {
                c
            }
        });
        let minority = minority_slot(&pencil);
        let major = pencil[minority].other();
        let (y, z) = match minority {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for t in 0..3 {
            coloring.set(gadget.pencil[t], pencil[t]);
            fixed.orient(g, gadget.pencil[t], gadget.u[t])?;
            fixed.orient(g, gadget.star[t], art.hub())?;
        }
        coloring.set(gadget.triangle_between(minority, y), pencil[minority]);
        coloring.set(gadget.triangle_between(y, z), pencil[minority]);
        coloring.set(gadget.triangle_between(minority, z), major);
        coloring.set(gadget.star[minority], pencil[minority]);
        coloring.set(gadget.star[y], major);
        coloring.set(gadget.star[z], major);
    }

    for cycle in art.cycles() {
        let own = a.get(cycle.variable);
        let len = cycle.vertices.len();
        for (j, &e) in cycle.edges.iter().enumerate() {
            coloring.set(e, if j % 2 == 0 { own } else { own.other() });
            let forward = cycle.vertices[j];
            let backward = cycle.vertices[(j + 1) % len];
            fixed.orient(g, e, if own == Color::Blue { forward } else { backward })?;
        }
    }

    let mut orientation = fixed.clone();
    for (color, target) in [(Color::Blue, art.b()), (Color::Red, art.r())] {
        let mut spent = Orientation::new();
        for (e, arc) in fixed.iter() {
            if coloring.get(e) == color {
                spent.insert(g, e, arc)?;
            }
        }
        let spent = out_degrees(g, &spent);
        let residual = DegreeVector::new(
            (0..g.vertex_count())
                .map(|v| target[v].saturating_sub(spent[v]))
                .collect(),
        );
        let triangle_edges: Vec<_> = art
            .gadgets()
            .flat_map(|gd| gd.triangle)
            .filter(|&e| coloring.get(e) == color)
            .collect();
        let solved = find_m_orientation(g, &triangle_edges, &residual)?
            .ok_or(BuildError::TriangleOrientation { color })?;
        orientation.extend(&solved);
    }
    Ok(PartitionWitness::new(coloring, orientation))
}

fn minority_slot(colors: &[Color; 3]) -> usize {
    if colors[0] != colors[1] && colors[0] != colors[2] {
        0
    } else if colors[1] != colors[0] {
        1
    } else {
        2
    }
}

fn accepted(art: &ReductionArtifact, w: &PartitionWitness) -> Result<(), ExtractError> {
    match verify_witness(art.graph(), art.b(), art.r(), w)? {
        Verdict::Accept => Ok(()),
        Verdict::Reject(reason) => Err(ExtractError::Rejected(reason)),
    }
}

/// Reads a variable coloring off an accepted witness: each occurring variable
/// takes the color of its original pencil edges, unused variables are Blue.
pub fn extract_assignment_from_witness(
    art: &ReductionArtifact,
    w: &PartitionWitness,
) -> Result<VarColoring, ExtractError> {
    accepted(art, w)?;
    let inst = art.instance();
    let mut seen: Vec<Option<Color>> = vec![None; inst.variable_count()];
    for [original, _] in art.clause_gadgets() {
        for (t, &x) in original.variables.iter().enumerate() {
            let c = w.coloring.get(original.pencil[t]);
            match seen[x - 1] {
                Some(prev) if prev != c => return Err(ExtractError::InconsistentPencils { variable: x }),
                _ => seen[x - 1] = Some(c),
            }
        }
    }
    let a = VarColoring::new(seen.into_iter().map(|c| c.unwrap_or(Color::Blue)).collect());
    match first_violated_clause(inst, &a).expect("coloring is total") {
        Some(clause) => Err(ExtractError::Unsatisfied(clause)),
        None => Ok(a),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCheck {
    pub gadget: GadgetRef,
    pub pencil_arcs_leave_triangle: bool,
    pub pencils_bicolored: bool,
    pub blue_connects_hub_and_triangle: bool,
    pub red_connects_hub_and_triangle: bool,
}

impl GadgetCheck {
    pub fn all_true(&self) -> bool {
        self.pencil_arcs_leave_triangle
            && self.pencils_bicolored
            && self.blue_connects_hub_and_triangle
            && self.red_connects_hub_and_triangle
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseGadgetReport {
    pub gadgets: Vec<GadgetCheck>,
    /// Every arc at the hub has the hub as its tail.
    pub hub_arcs_leave_hub: bool,
}

impl ClauseGadgetReport {
    pub fn all_true(&self) -> bool {
        self.hub_arcs_leave_hub && self.gadgets.iter().all(GadgetCheck::all_true)
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

impl fmt::Display for ClauseGadgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hub arcs leave s: {}", flag(self.hub_arcs_leave_hub))?;
        for c in &self.gadgets {
            writeln!(
                f,
                "gadget {}: pencils leave U {}, pencils bicolored {}, blue on s+U connected {}, red on s+U connected {}",
                c.gadget,
                flag(c.pencil_arcs_leave_triangle),
                flag(c.pencils_bicolored),
                flag(c.blue_connects_hub_and_triangle),
                flag(c.red_connects_hub_and_triangle),
            )?;
        }
        Ok(())
    }
}

fn restricted_connected(art: &ReductionArtifact, gadget: &Gadget, coloring: &EdgeColoring, color: Color) -> bool {
    // local ids: hub 0, triangle slots 1..=3
    let local = |v| {
        if v == art.hub() {
            0
        } else {
            1 + gadget.u.iter().position(|&u| u == v).expect("edge inside s + U")
        }
    };
    let mut uf = UnionFind::new(4);
    let mut parts = 4;
    for e in gadget.triangle.iter().chain(&gadget.star) {
        if coloring.get(*e) == color {
            let (a, z) = art.graph().endpoints(*e);
            if uf.union(local(a), local(z)) {
                parts -= 1;
            }
        }
    }
    parts == 1
}

/// Per-gadget structure of a witness plus the hub check. Meant for accepted
/// witnesses, where every entry is true.
pub fn check_clause_gadget_properties(art: &ReductionArtifact, w: &PartitionWitness) -> ClauseGadgetReport {
    let g = art.graph();
    let hub = art.hub();
    let hub_arcs_leave_hub = g
        .incident(hub)
        .iter()
        .all(|&e| w.orientation.get(e).is_some_and(|arc| arc.tail == hub));
    let gadgets = art
        .gadgets()
        .map(|gadget| {
            let pencil_arcs_leave_triangle = (0..3).all(|t| {
                w.orientation
                    .get(gadget.pencil[t])
                    .is_some_and(|arc| arc.tail == gadget.u[t])
            });
            let first = w.coloring.get(gadget.pencil[0]);
            let pencils_bicolored = gadget.pencil.iter().any(|&e| w.coloring.get(e) != first);
            GadgetCheck {
                gadget: gadget.at,
                pencil_arcs_leave_triangle,
                pencils_bicolored,
                blue_connects_hub_and_triangle: restricted_connected(art, gadget, &w.coloring, Color::Blue),
                red_connects_hub_and_triangle: restricted_connected(art, gadget, &w.coloring, Color::Red),
            }
        })
        .collect();
    ClauseGadgetReport {
        gadgets,
        hub_arcs_leave_hub,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableCheck {
    pub variable: usize,
    pub originals_monochrome: bool,
    pub copies_opposite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableReport {
    pub variables: Vec<VariableCheck>,
}

impl VariableReport {
    pub fn all_true(&self) -> bool {
        self.variables.iter().all(|v| v.originals_monochrome && v.copies_opposite)
    }
}

impl fmt::Display for VariableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.variables {
            writeln!(
                f,
                "variable x{}: original pencils monochrome {}, copy pencils opposite {}",
                v.variable,
                flag(v.originals_monochrome),
                flag(v.copies_opposite)
            )?;
        }
        Ok(())
    }
}

/// Per occurring variable: do its original pencil edges share one color, and
/// do its copy pencil edges all carry the other one?
pub fn check_variable_monochrome(art: &ReductionArtifact, w: &PartitionWitness) -> VariableReport {
    let inst = art.instance();
    let variables = (1..=inst.variable_count())
        .filter_map(|x| {
            let mut originals = Vec::new();
            let mut copies = Vec::new();
            for ci in inst.occurrences(x) {
                let [original, copy] = &art.clause_gadgets()[ci];
                let slot = original.slot_of(x).expect("occurrence");
                originals.push(w.coloring.get(original.pencil[slot]));
                copies.push(w.coloring.get(copy.pencil[slot]));
            }
            let first = *originals.first()?;
            let originals_monochrome = originals.iter().all(|&c| c == first);
            Some(VariableCheck {
                variable: x,
                originals_monochrome,
                copies_opposite: originals_monochrome && copies.iter().all(|&c| c == first.other()),
            })
        })
        .collect();
    VariableReport { variables }
}
