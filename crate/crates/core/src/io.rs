//! JSON and DOT serialization of spectral graphs.
//!
//! The JSON schema is minimal and hand-editable, so a graph matching a
//! drawing can be supplied to the tool and checked by the validation suite:
//!
//! ```json
//! {
//!   "genus": 3,
//!   "vertices": 8,
//!   "vertex_order": [1, 2, 3, 4, 5, 6, 7, 8],
//!   "edges": [{"id": 0, "kind": "l", "index": 1, "ends": [3, 5]}, ...],
//!   "faces": [[0, 17, 4], ...]
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeKind, EdgeLabel, SpectralGraph};

#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub genus: usize,
    pub vertices: usize,
    pub vertex_order: Vec<usize>,
    pub edges: Vec<EdgeJson>,
    pub faces: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: usize,
    pub kind: EdgeKind,
    pub index: usize,
    pub ends: [usize; 2],
}

impl From<&SpectralGraph> for GraphJson {
    fn from(graph: &SpectralGraph) -> Self {
        Self {
            genus: graph.genus(),
            vertices: graph.vertex_count(),
            vertex_order: graph.vertex_order().to_vec(),
            edges: graph
                .edges()
                .iter()
                .enumerate()
                .map(|(id, e)| EdgeJson {
                    id,
                    kind: e.label.kind,
                    index: e.label.index,
                    ends: [e.ends.0, e.ends.1],
                })
                .collect(),
            faces: graph.faces().to_vec(),
        }
    }
}

pub fn graph_to_json(graph: &SpectralGraph) -> String {
    let mut s = serde_json::to_string_pretty(&GraphJson::from(graph)).expect("serialization");
    s.push('\n');
    s
}

pub fn graph_from_json(text: &str) -> Result<SpectralGraph> {
    let parsed: GraphJson = serde_json::from_str(text)?;
    if parsed.vertex_order.len() != parsed.vertices {
        return Err(Error::InvalidGraphData(format!(
            "vertex_order has {} entries for {} vertices",
            parsed.vertex_order.len(),
            parsed.vertices
        )));
    }
    let mut edges = vec![None; parsed.edges.len()];
    for e in &parsed.edges {
        let slot = edges
            .get_mut(e.id)
            .ok_or_else(|| Error::InvalidGraphData(format!("edge id {} out of range", e.id)))?;
        if slot.is_some() {
            return Err(Error::InvalidGraphData(format!(
                "duplicate edge id {}",
                e.id
            )));
        }
        *slot = Some(Edge {
            label: EdgeLabel {
                kind: e.kind,
                index: e.index,
            },
            ends: (e.ends[0], e.ends[1]),
        });
    }
    let edges: Vec<Edge> = edges.into_iter().map(Option::unwrap).collect();
    SpectralGraph::from_parts(parsed.genus, edges, parsed.faces, parsed.vertex_order)
}

/// Renders the graph as an undirected DOT document with labelled edges.
pub fn graph_to_dot(graph: &SpectralGraph) -> String {
    let mut out = String::new();
    out.push_str("graph spectral {\n");
    out.push_str(&format!("  label=\"genus {}\";\n", graph.genus()));
    out.push_str("  layout=circo;\n");
    for v in graph.vertex_order() {
        out.push_str(&format!("  {v};\n"));
    }
    for e in graph.edges() {
        out.push_str(&format!(
            "  {} -- {} [label=\"{}\"];\n",
            e.ends.0, e.ends.1, e.label
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_bit_exact() {
        for g in [3, 4, 6] {
            let graph = SpectralGraph::build(g).unwrap();
            let text = graph_to_json(&graph);
            let back = graph_from_json(&text).unwrap();
            assert_eq!(graph_to_json(&back), text);
            assert_eq!(back.edges(), graph.edges());
            assert_eq!(back.faces(), graph.faces());
            assert_eq!(back.vertex_order(), graph.vertex_order());
        }
    }

    #[test]
    fn dot_output_is_undirected_and_labelled() {
        let graph = SpectralGraph::build(4).unwrap();
        let dot = graph_to_dot(&graph);
        assert!(dot.starts_with("graph "));
        assert!(!dot.contains("digraph"));
        assert!(!dot.contains("->"));
        assert_eq!(dot.matches(" -- ").count(), 22);
        assert!(dot.contains("label=\"l1\""));
        assert!(dot.contains("label=\"b10\""));
    }

    #[test]
    fn rejects_out_of_range_ids() {
        let graph = SpectralGraph::build(3).unwrap();
        let mut json: GraphJson = (&graph).into();
        json.edges[0].ends = [1, 99];
        let text = serde_json::to_string(&json).unwrap();
        assert!(matches!(
            graph_from_json(&text),
            Err(Error::InvalidGraphData(_))
        ));
    }
}
