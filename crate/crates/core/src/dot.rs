//! Graphviz output. Without a witness the graph is undirected and every edge
//! solid; with one, arcs follow the orientation, blue edges are dashed and
//! red edges solid.

use std::fmt::Write;

use thiserror::Error;

use crate::graph::{Color, MultiGraph};
use crate::reduction::ReductionArtifact;
use crate::solver::{verify_witness, PartitionWitness, RejectReason, Verdict, WitnessError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DotError {
    #[error(transparent)]
    Malformed(#[from] WitnessError),
    #[error("refusing to draw a rejected witness: {0}")]
    Rejected(RejectReason),
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders `g` as DOT. `labels`, when given, must have one entry per vertex.
/// The witness is drawn as-is; see [`export_dot`] for the checked variant.
pub fn render_dot(g: &MultiGraph, labels: Option<&[String]>, witness: Option<&PartitionWitness>) -> String {
    let mut out = String::new();
    let (kind, connector) = if witness.is_some() {
        ("digraph", "->")
    } else {
        ("graph", "--")
    };
    writeln!(out, "{kind} G {{").unwrap();
    for v in 0..g.vertex_count() {
        match labels {
            Some(l) => writeln!(out, "  {v} [label=\"{}\"];", escape(&l[v])).unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (e, &(a, z)) in g.edges().iter().enumerate() {
        match witness {
            None => writeln!(out, "  {a} {connector} {z} [id=\"e{e}\", style=solid];").unwrap(),
            Some(w) => {
                let (tail, head) = w.orientation.get(e).map_or((a, z), |arc| (arc.tail, arc.head));
                let color = w.coloring.get(e);
                let style = match color {
                    Color::Blue => "dashed",
                    Color::Red => "solid",
                };
                writeln!(
                    out,
                    "  {tail} {connector} {head} [id=\"e{e}\", color={color}, style={style}];"
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// DOT for a reduction graph with provenance labels, optionally overlaid with
/// a witness that must pass verification first.
pub fn export_dot(art: &ReductionArtifact, witness: Option<&PartitionWitness>) -> Result<String, DotError> {
    if let Some(w) = witness {
        if let Verdict::Reject(reason) = verify_witness(art.graph(), art.b(), art.r(), w)? {
            return Err(DotError::Rejected(reason));
        }
    }
    let labels = art.label_strings();
    Ok(render_dot(art.graph(), Some(&labels), witness))
}
