//! Weighted planar graphs: the input type for the matching engines and the
//! rewrite primitives.

use crate::exactmath::{LaurentMonomial, rational_to_string};
use std::collections::BTreeMap;
use thiserror::Error;

/// Index of a vertex within its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: LaurentMonomial,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge between vertices {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("vertex index {0} out of range")]
    BadVertex(usize),
    #[error("connected sum lists have different lengths ({0} vs {1})")]
    ListLengthMismatch(usize, usize),
}

/// Graph with integer planar coordinates per vertex and Laurent-monomial
/// edge weights. At most one edge per vertex pair; no self-loops; weights
/// are nonzero by the monomial invariant.
#[derive(Debug, Clone, Default)]
pub struct WeightedGraph {
    coords: Vec<(i64, i64)>,
    edges: Vec<Edge>,
    // normalized (min,max) pair -> index into edges
    edge_index: BTreeMap<(usize, usize), usize>,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, x: i64, y: i64) -> VertexId {
        self.coords.push((x, y));
        VertexId(self.coords.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn coords(&self, v: VertexId) -> (i64, i64) {
        self.coords[v.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn add_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        weight: LaurentMonomial,
    ) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u.0));
        }
        for w in [u, v] {
            if w.0 >= self.coords.len() {
                return Err(GraphError::BadVertex(w.0));
            }
        }
        let key = (u.0.min(v.0), u.0.max(v.0));
        if self.edge_index.contains_key(&key) {
            return Err(GraphError::ParallelEdge(key.0, key.1));
        }
        self.edge_index.insert(key, self.edges.len());
        self.edges.push(Edge { u, v, weight });
        Ok(())
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<&Edge> {
        let key = (u.0.min(v.0), u.0.max(v.0));
        self.edge_index.get(&key).map(|&i| &self.edges[i])
    }

    /// Neighbor list of every vertex, in edge insertion order.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, LaurentMonomial)>> {
        let mut adj = vec![Vec::new(); self.coords.len()];
        for e in &self.edges {
            adj[e.u.0].push((e.v, e.weight.clone()));
            adj[e.v.0].push((e.u, e.weight.clone()));
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .count()
    }

    /// Copy the graph dropping a vertex set; vertices are renumbered in
    /// ascending order of their old ids. Edges incident to dropped vertices
    /// disappear.
    pub fn without_vertices(&self, drop: &[VertexId]) -> (WeightedGraph, Vec<Option<VertexId>>) {
        let mut dropped = vec![false; self.coords.len()];
        for v in drop {
            dropped[v.0] = true;
        }
        let mut map: Vec<Option<VertexId>> = vec![None; self.coords.len()];
        let mut g = WeightedGraph::new();
        for (i, &(x, y)) in self.coords.iter().enumerate() {
            if !dropped[i] {
                map[i] = Some(g.add_vertex(x, y));
            }
        }
        for e in &self.edges {
            if let (Some(u), Some(v)) = (map[e.u.0], map[e.v.0]) {
                g.add_edge(u, v, e.weight.clone()).expect("copy preserves simplicity");
            }
        }
        (g, map)
    }

    /// Connected sum: identify `ours[i]` with `theirs[i]` of `other`,
    /// pairwise. Parallel edges arising from the identification are an
    /// error (they would mean the construction glued overlapping pieces).
    pub fn connected_sum(
        &self,
        ours: &[VertexId],
        other: &WeightedGraph,
        theirs: &[VertexId],
    ) -> Result<WeightedGraph, GraphError> {
        if ours.len() != theirs.len() {
            return Err(GraphError::ListLengthMismatch(ours.len(), theirs.len()));
        }
        let mut g = self.clone();
        let mut map: Vec<Option<VertexId>> = vec![None; other.coords.len()];
        for (o, t) in ours.iter().zip(theirs) {
            if o.0 >= self.coords.len() {
                return Err(GraphError::BadVertex(o.0));
            }
            map[t.0] = Some(*o);
        }
        for (i, &(x, y)) in other.coords.iter().enumerate() {
            if map[i].is_none() {
                map[i] = Some(g.add_vertex(x, y));
            }
        }
        for e in &other.edges {
            g.add_edge(map[e.u.0].unwrap(), map[e.v.0].unwrap(), e.weight.clone())?;
        }
        Ok(g)
    }

    /// DOT export with canonical weight labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for (i, (x, y)) in self.coords.iter().enumerate() {
            out.push_str(&format!("  v{i} [pos=\"{x},{y}!\"];\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -- v{} [label=\"{}\"];\n",
                e.u.0,
                e.v.0,
                e.weight.to_poly().to_canonical_json()
            ));
        }
        out.push_str("}\n");
        out
    }

    /// JSON dump: vertex list with coordinates, edge list with canonical
    /// weight text.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self
                .coords
                .iter()
                .map(|(x, y)| serde_json::json!([x, y]))
                .collect::<Vec<_>>(),
            "edges": self
                .edges
                .iter()
                .map(|e| serde_json::json!({
                    "u": e.u.0,
                    "v": e.v.0,
                    "coeff": rational_to_string(&e.weight.coeff),
                    "qexp": e.weight.qexp,
                }))
                .collect::<Vec<_>>(),
        })
    }
}
