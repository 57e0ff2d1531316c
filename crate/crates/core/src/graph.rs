//! The flow-graph value model.
//!
//! A [`FlowGraph`] is a finite, weakly connected, directed multigraph
//! (loops and parallel edges allowed) with a distinguished source and
//! target vertex. Vertices are dense indices `0..vertex_count`; edges
//! carry a stable id equal to their position in [`FlowGraph::edges`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Edge { tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint opposite to `v` (the same vertex for loops).
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    /// One vertex, no edges.
    Trivial,
    /// Non-trivial with source equal to target.
    Infinitesimal,
    GeneralNonInfinitesimal,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlowGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    source: VertexId,
    target: VertexId,
}

impl fmt::Debug for FlowGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FlowGraph(v={}, s={}, t={}, e=[",
            self.vertex_count, self.source, self.target
        )?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}>{}", e.tail, e.head)?;
        }
        f.write_str("])")
    }
}

impl FlowGraph {
    /// Validates and builds a flow graph. Edge ids follow input order.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        source: VertexId,
        target: VertexId,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Validation("a flow graph needs at least one vertex".into()));
        }
        if source >= vertex_count || target >= vertex_count {
            return Err(Error::Validation(format!(
                "anchor out of range: source={source}, target={target}, vertices={vertex_count}"
            )));
        }
        let mut list = Vec::new();
        for (tail, head) in edges {
            if tail >= vertex_count || head >= vertex_count {
                return Err(Error::Validation(format!(
                    "edge ({tail}, {head}) references a vertex outside 0..{vertex_count}"
                )));
            }
            list.push(Edge { tail, head });
        }
        let g = FlowGraph {
            vertex_count,
            edges: list,
            source,
            target,
        };
        if !g.is_connected() {
            return Err(Error::Validation(
                "underlying undirected multigraph is not connected".into(),
            ));
        }
        Ok(g)
    }

    /// Builds a graph the caller already knows to be valid.
    pub(crate) fn from_parts(
        vertex_count: usize,
        edges: Vec<Edge>,
        source: VertexId,
        target: VertexId,
    ) -> Self {
        let g = FlowGraph {
            vertex_count,
            edges,
            source,
            target,
        };
        debug_assert!(g.vertex_count > 0 && g.source < g.vertex_count && g.target < g.vertex_count);
        debug_assert!(g.is_connected(), "from_parts on disconnected graph {g:?}");
        g
    }

    /// F₀: one vertex, no edges.
    pub fn trivial() -> Self {
        FlowGraph::from_parts(1, Vec::new(), 0, 0)
    }

    /// C₁: one vertex carrying one loop.
    pub fn unit_loop() -> Self {
        FlowGraph::from_parts(1, vec![Edge::new(0, 0)], 0, 0)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn classify(&self) -> Class {
        if self.vertex_count == 1 && self.edges.is_empty() {
            Class::Trivial
        } else if self.source == self.target {
            Class::Infinitesimal
        } else {
            Class::GeneralNonInfinitesimal
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.classify() == Class::Trivial
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.classify() == Class::Infinitesimal
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            d[e.tail] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            d[e.head] += 1;
        }
        d
    }

    pub fn loop_counts(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in self.edges.iter().filter(|e| e.is_loop()) {
            d[e.tail] += 1;
        }
        d
    }

    /// For every vertex, the incident edges together with the opposite
    /// endpoint. A loop is listed once at its vertex.
    pub fn incidence(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            inc[e.tail].push((id, e.head));
            if !e.is_loop() {
                inc[e.head].push((id, e.tail));
            }
        }
        inc
    }

    fn is_connected(&self) -> bool {
        let comp = components(self.vertex_count, &self.edges, None, None);
        comp.iter().all(|c| *c == Some(0))
    }

    /// Same graph and anchors with every edge reversed.
    pub fn reversed(&self) -> FlowGraph {
        let edges = self.edges.iter().map(|e| Edge::new(e.head, e.tail)).collect();
        FlowGraph::from_parts(self.vertex_count, edges, self.source, self.target)
    }

    /// Same graph with new anchors.
    pub fn with_anchors(&self, source: VertexId, target: VertexId) -> Result<FlowGraph> {
        if source >= self.vertex_count || target >= self.vertex_count {
            return Err(Error::Validation(format!(
                "anchor out of range: source={source}, target={target}"
            )));
        }
        Ok(FlowGraph::from_parts(self.vertex_count, self.edges.clone(), source, target))
    }

    /// Same graph with source and target exchanged.
    pub fn swapped(&self) -> FlowGraph {
        FlowGraph::from_parts(self.vertex_count, self.edges.clone(), self.target, self.source)
    }

    /// Applies a vertex permutation (`perm[old] = new`). Edge ids are kept.
    pub fn relabeled(&self, perm: &[VertexId]) -> FlowGraph {
        assert_eq!(perm.len(), self.vertex_count);
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.tail], perm[e.head]))
            .collect();
        FlowGraph::from_parts(self.vertex_count, edges, perm[self.source], perm[self.target])
    }

    /// Same labels, edges listed in `(tail, head)` order.
    pub fn sorted(&self) -> FlowGraph {
        let mut edges = self.edges.clone();
        edges.sort();
        FlowGraph::from_parts(self.vertex_count, edges, self.source, self.target)
    }

    /// Subgraph spanned by `edge_ids` plus `extra` vertices, relabelled in
    /// increasing order of the original vertex ids. Returns the graph and
    /// the old→new vertex map. The caller guarantees connectivity.
    pub(crate) fn subgraph(
        &self,
        edge_ids: &[EdgeId],
        extra: &[VertexId],
        source: VertexId,
        target: VertexId,
    ) -> (FlowGraph, Vec<Option<VertexId>>) {
        let mut keep = vec![false; self.vertex_count];
        for &id in edge_ids {
            keep[self.edges[id].tail] = true;
            keep[self.edges[id].head] = true;
        }
        for &v in extra.iter().chain([source, target].iter()) {
            keep[v] = true;
        }
        let mut map = vec![None; self.vertex_count];
        let mut n = 0;
        for v in 0..self.vertex_count {
            if keep[v] {
                map[v] = Some(n);
                n += 1;
            }
        }
        let edges = edge_ids
            .iter()
            .map(|&id| {
                let e = self.edges[id];
                Edge::new(map[e.tail].unwrap(), map[e.head].unwrap())
            })
            .collect();
        let g = FlowGraph::from_parts(n, edges, map[source].unwrap(), map[target].unwrap());
        (g, map)
    }

    pub fn undirected_form(&self) -> UndirectedForm {
        UndirectedForm {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, e)| UndirectedEdge {
                    a: e.tail.min(e.head),
                    b: e.tail.max(e.head),
                    origin: id,
                })
                .collect(),
        }
    }
}

/// Connected components of the undirected multigraph on `n` vertices,
/// optionally ignoring one deleted vertex and/or one deleted edge.
/// Component ids are assigned in order of the smallest member vertex;
/// the deleted vertex maps to `None`.
pub(crate) fn components(
    n: usize,
    edges: &[Edge],
    deleted_vertex: Option<VertexId>,
    deleted_edge: Option<EdgeId>,
) -> Vec<Option<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (id, e) in edges.iter().enumerate() {
        if Some(id) == deleted_edge || deleted_vertex.is_some_and(|w| e.touches(w)) {
            continue;
        }
        let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![None; n];
    for (v, slot) in out.iter_mut().enumerate() {
        if Some(v) == deleted_vertex {
            continue;
        }
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        *slot = Some(label[r]);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UndirectedEdge {
    /// Smaller endpoint.
    pub a: VertexId,
    /// Larger endpoint.
    pub b: VertexId,
    /// Id of the directed edge this one forgets the orientation of.
    pub origin: EdgeId,
}

/// The undirected multigraph underlying a flow graph; one tagged
/// undirected edge per directed edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedForm {
    pub vertex_count: usize,
    pub edges: Vec<UndirectedEdge>,
}

impl UndirectedForm {
    /// Recovers the directed edge behind an undirected one.
    pub fn orient(&self, graph: &FlowGraph, e: &UndirectedEdge) -> Edge {
        graph.edge(e.origin)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}
