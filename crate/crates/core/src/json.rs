//! JSON file formats shared with the CLI.
//!
//! Instance files are graph files (`vertex_count`, `edges` as `[a, b]` pairs,
//! edge id = position, optional `labels`) plus `b`, `r` and, for reduction
//! output, `roles` and `variable_count`. Witness files carry `colors`
//! (`"blue"`/`"red"`) and `arcs` (`[tail, head]`), both indexed by edge id.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Arc, Color, DegreeVector, EdgeColoring, GraphError, MultiGraph, Orientation};
use crate::nae::NaeInstance;
use crate::reduction::{build_reduction, EdgeRole, ReductionArtifact, VertexLabel};
use crate::solver::PartitionWitness;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{field} has {got} entries, expected {expected}")]
    Length {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("not a reduction instance: {0}")]
    NotAReduction(String),
}

fn check_len(field: &'static str, expected: usize, got: usize) -> Result<(), FormatError> {
    if expected == got {
        Ok(())
    } else {
        Err(FormatError::Length { field, expected, got })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphJson {
    pub fn from_graph(g: &MultiGraph, labels: Option<Vec<String>>) -> Self {
        GraphJson {
            vertex_count: g.vertex_count(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            labels,
        }
    }

    pub fn to_graph(&self) -> Result<MultiGraph, FormatError> {
        if let Some(l) = &self.labels {
            check_len("labels", self.vertex_count, l.len())?;
        }
        Ok(MultiGraph::new(
            self.vertex_count,
            self.edges.iter().map(|&[a, b]| (a, b)).collect(),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub b: Vec<usize>,
    pub r: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roles: Option<Vec<EdgeRole>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable_count: Option<usize>,
}

/// A graph with its two out-degree target vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    pub graph: MultiGraph,
    pub b: DegreeVector,
    pub r: DegreeVector,
    pub labels: Option<Vec<String>>,
}

impl InstanceJson {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_artifact(art: &ReductionArtifact) -> Self {
        let g = art.graph();
        InstanceJson {
            vertex_count: g.vertex_count(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            labels: Some(art.label_strings()),
            b: art.b().values().to_vec(),
            r: art.r().values().to_vec(),
            roles: Some(art.roles().to_vec()),
            variable_count: Some(art.instance().variable_count()),
        }
    }

    pub fn from_parts(g: &MultiGraph, b: &DegreeVector, r: &DegreeVector, labels: Option<Vec<String>>) -> Self {
        InstanceJson {
            vertex_count: g.vertex_count(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            labels,
            b: b.values().to_vec(),
            r: r.values().to_vec(),
            roles: None,
            variable_count: None,
        }
    }

    pub fn to_instance(&self) -> Result<PartitionInstance, FormatError> {
        let graph = GraphJson {
            vertex_count: self.vertex_count,
            edges: self.edges.clone(),
            labels: self.labels.clone(),
        }
        .to_graph()?;
        check_len("b", self.vertex_count, self.b.len())?;
        check_len("r", self.vertex_count, self.r.len())?;
        if let Some(roles) = &self.roles {
            check_len("roles", self.edges.len(), roles.len())?;
        }
        Ok(PartitionInstance {
            graph,
            b: self.b.clone().into(),
            r: self.r.clone().into(),
            labels: self.labels.clone(),
        })
    }

    /// Recovers the NAE instance from the vertex labels, rebuilds the
    /// reduction and insists that it reproduces this file exactly.
    pub fn to_artifact(&self) -> Result<ReductionArtifact, FormatError> {
        let labels = self
            .labels
            .as_ref()
            .ok_or_else(|| FormatError::NotAReduction("no labels".into()))?;
        let parsed = labels
            .iter()
            .map(|l| l.parse::<VertexLabel>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(FormatError::NotAReduction)?;
        let mut clauses: Vec<Vec<usize>> = Vec::new();
        for label in &parsed {
            if let VertexLabel::Triangle { gadget, variable } = label {
                if gadget.copy {
                    continue;
                }
                if clauses.len() <= gadget.clause {
                    clauses.resize(gadget.clause + 1, Vec::new());
                }
                clauses[gadget.clause].push(*variable);
            }
        }
        let clauses = clauses
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                <[usize; 3]>::try_from(c)
                    .map_err(|_| FormatError::NotAReduction(format!("clause {} does not have 3 triangle vertices", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let max_var = clauses.iter().flatten().copied().max().unwrap_or(0);
        let variable_count = self.variable_count.unwrap_or(max_var);
        let inst = NaeInstance::new(variable_count, clauses).map_err(|e| FormatError::NotAReduction(e.to_string()))?;
        let art = build_reduction(&inst).map_err(|e| FormatError::NotAReduction(e.to_string()))?;
        let mut rebuilt = InstanceJson::from_artifact(&art);
        if self.variable_count.is_none() {
            rebuilt.variable_count = None;
        }
        if self.roles.is_none() {
            rebuilt.roles = None;
        }
        if &rebuilt != self {
            return Err(FormatError::NotAReduction(
                "graph, targets or roles differ from the reduction of the labelled clauses".into(),
            ));
        }
        Ok(art)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub colors: Vec<Color>,
    pub arcs: Vec<[usize; 2]>,
}

impl WitnessJson {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Panics if the witness orientation is not total, which
    /// [`crate::solver::verify_witness`] would have reported.
    pub fn from_witness(w: &PartitionWitness) -> Self {
        WitnessJson {
            colors: w.coloring.colors().to_vec(),
            arcs: (0..w.coloring.len())
                .map(|e| {
                    let arc = w.orientation.get(e).expect("witness orientation is total");
                    [arc.tail, arc.head]
                })
                .collect(),
        }
    }

    pub fn to_witness(&self, g: &MultiGraph) -> Result<PartitionWitness, FormatError> {
        check_len("colors", g.edge_count(), self.colors.len())?;
        check_len("arcs", g.edge_count(), self.arcs.len())?;
        let mut o = Orientation::new();
        for (e, &[tail, head]) in self.arcs.iter().enumerate() {
            o.insert(g, e, Arc::new(tail, head))?;
        }
        Ok(PartitionWitness::new(EdgeColoring::new(self.colors.clone()), o))
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("formats serialize infallibly");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color::{Blue, Red};
    use crate::nae::VarColoring;
    use crate::witness::build_witness_from_assignment;

    fn artifact() -> ReductionArtifact {
        build_reduction(&NaeInstance::new(5, vec![[1, 2, 3], [3, 4, 1]]).unwrap()).unwrap()
    }

    #[test]
    fn field_names() {
        let art = artifact();
        let text = to_json_pretty(&InstanceJson::from_artifact(&art));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["vertex_count", "edges", "labels", "b", "r", "roles", "variable_count"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["edges"][0], serde_json::json!([0, 1]));
        assert_eq!(v["labels"][0], "s");
        assert_eq!(
            v["roles"][0],
            serde_json::json!({"kind": "star", "clause": 1, "copy": false, "slot": 0})
        );
        let w = build_witness_from_assignment(&art, &VarColoring::new(vec![Blue, Red, Red, Blue, Blue])).unwrap();
        let wj: serde_json::Value = serde_json::from_str(&to_json_pretty(&WitnessJson::from_witness(&w))).unwrap();
        assert_eq!(wj["colors"].as_array().unwrap().len(), 48);
        assert!(wj["colors"][0] == "blue" || wj["colors"][0] == "red");
        assert_eq!(wj["arcs"][0], serde_json::json!([0, 1]));
    }

    #[test]
    fn artifact_round_trip() {
        let art = artifact();
        let json = InstanceJson::from_artifact(&art);
        let back: InstanceJson = serde_json::from_str(&to_json_pretty(&json)).unwrap();
        assert_eq!(back.to_artifact().unwrap(), art);

        let mut bare = json.clone();
        bare.roles = None;
        assert_eq!(bare.to_artifact().unwrap(), art);

        let mut tampered = json.clone();
        tampered.b[0] += 1;
        assert!(matches!(tampered.to_artifact(), Err(FormatError::NotAReduction(_))));

        let mut tampered = json;
        tampered.edges.swap(0, 1);
        assert!(tampered.to_artifact().is_err());
    }

    #[test]
    fn plain_graph_instance() {
        let text = r#"{"vertex_count": 2, "edges": [[0, 1], [1, 0]], "b": [1, 0], "r": [0, 1]}"#;
        let inst: InstanceJson = serde_json::from_str(text).unwrap();
        let p = inst.to_instance().unwrap();
        assert_eq!(p.graph.edge_count(), 2);
        assert!(inst.to_artifact().is_err());
        let short = r#"{"vertex_count": 2, "edges": [[0, 1]], "b": [1], "r": [0, 1]}"#;
        let inst: InstanceJson = serde_json::from_str(short).unwrap();
        assert!(matches!(inst.to_instance(), Err(FormatError::Length { field: "b", .. })));
    }

    #[test]
    fn witness_arcs_must_match_edges() {
        let g = MultiGraph::new(2, vec![(0, 1)]).unwrap();
        let ok = WitnessJson {
            colors: vec![Blue],
            arcs: vec![[1, 0]],
        };
        assert!(ok.to_witness(&g).is_ok());
        let bad = WitnessJson {
            colors: vec![Blue],
            arcs: vec![[1, 1]],
        };
        assert!(matches!(bad.to_witness(&g), Err(FormatError::Graph(_))));
        assert!(serde_json::from_str::<WitnessJson>(r#"{"colors": ["green"], "arcs": [[0, 1]]}"#).is_err());
    }
}
