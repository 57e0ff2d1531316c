//! Anchored multigraph embeddings and isomorphism witnesses.
//!
//! Embeddings are injective on vertices and on edges. The search assigns
//! vertices by backtracking and then picks edge images greedily (lowest
//! free id per vertex pair), so results are enumerated once per vertex
//! assignment: permuting parallel edges is not counted as a new embedding.

use std::ops::ControlFlow;

use crate::error::Result;
use crate::graph::{EdgeId, FlowGraph, VertexId};
use crate::limits::{Limits, Meter};

/// Structure-preserving injective map: `vertices[v]` is the image of
/// vertex `v`, `edges[e]` the image of edge `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexMap {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl VertexMap {
    pub fn identity(a: &FlowGraph) -> Self {
        VertexMap {
            vertices: (0..a.vertex_count()).collect(),
            edges: (0..a.edge_count()).collect(),
        }
    }

    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertices[v]
    }

    pub fn edge(&self, e: EdgeId) -> EdgeId {
        self.edges[e]
    }

    /// Independent check that this is an embedding of `G_a` into `G_b`.
    pub fn is_embedding(&self, a: &FlowGraph, b: &FlowGraph) -> bool {
        if self.vertices.len() != a.vertex_count() || self.edges.len() != a.edge_count() {
            return false;
        }
        if !injective(&self.vertices, b.vertex_count()) || !injective(&self.edges, b.edge_count()) {
            return false;
        }
        a.edges().iter().zip(&self.edges).all(|(e, &img)| {
            let f = b.edge(img);
            f.tail == self.vertices[e.tail] && f.head == self.vertices[e.head]
        })
    }

    /// Embedding that additionally honours the requested anchors.
    pub fn is_anchored_embedding(&self, a: &FlowGraph, b: &FlowGraph, anchors: Anchors) -> bool {
        self.is_embedding(a, b)
            && (!anchors.source || self.vertices[a.source()] == b.source())
            && (!anchors.target || self.vertices[a.target()] == b.target())
    }

    /// Flow-graph isomorphism check: bijective embedding fixing both anchors.
    pub fn is_isomorphism(&self, a: &FlowGraph, b: &FlowGraph) -> bool {
        a.vertex_count() == b.vertex_count()
            && a.edge_count() == b.edge_count()
            && self.is_anchored_embedding(a, b, Anchors::BOTH)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> VertexMap {
        let mut vertices = vec![0; self.vertices.len()];
        for (v, &w) in self.vertices.iter().enumerate() {
            vertices[w] = v;
        }
        let mut edges = vec![0; self.edges.len()];
        for (e, &f) in self.edges.iter().enumerate() {
            edges[f] = e;
        }
        VertexMap { vertices, edges }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap {
            vertices: self.vertices.iter().map(|&v| other.vertices[v]).collect(),
            edges: self.edges.iter().map(|&e| other.edges[e]).collect(),
        }
    }
}

fn injective(xs: &[usize], bound: usize) -> bool {
    let mut seen = vec![false; bound];
    xs.iter().all(|&x| x < bound && !std::mem::replace(&mut seen[x], true))
}

/// Which anchors an embedding must preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Anchors {
    pub source: bool,
    pub target: bool,
}

impl Anchors {
    pub const NONE: Anchors = Anchors { source: false, target: false };
    pub const SOURCE: Anchors = Anchors { source: true, target: false };
    pub const TARGET: Anchors = Anchors { source: false, target: true };
    pub const BOTH: Anchors = Anchors { source: true, target: true };
}

/// All anchored embeddings of `G_a` into `G_b`, in deterministic order.
pub fn find_anchored_embeddings(a: &FlowGraph, b: &FlowGraph, anchors: Anchors) -> Result<Vec<VertexMap>> {
    let mut out = Vec::new();
    let _ = visit_anchored_embeddings(a, b, anchors, Limits::global(), |m| {
        out.push(m);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Streams anchored embeddings to `visit` until it breaks. Returns whether
/// the visitor stopped the search.
pub fn visit_anchored_embeddings(
    a: &FlowGraph,
    b: &FlowGraph,
    anchors: Anchors,
    limits: &Limits,
    visit: impl FnMut(VertexMap) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let mut pins = Vec::new();
    if anchors.source {
        pins.push((a.source(), b.source()));
    }
    if anchors.target {
        pins.push((a.target(), b.target()));
    }
    let mut meter = limits.meter("embedding search");
    let host = Host::new(b, None);
    search(a, &pins, &host, false, &mut meter, visit)
}

pub fn first_anchored_embedding(
    a: &FlowGraph,
    b: &FlowGraph,
    anchors: Anchors,
    limits: &Limits,
) -> Result<Option<VertexMap>> {
    let mut found = None;
    let _ = visit_anchored_embeddings(a, b, anchors, limits, |m| {
        found = Some(m);
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Isomorphism witness, if any. Exhaustive and unbudgeted: the search is
/// exact for every input, though exponential in the worst case.
pub fn are_isomorphic(a: &FlowGraph, b: &FlowGraph) -> Option<VertexMap> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || (a.source() == a.target()) != (b.source() == b.target())
    {
        return None;
    }
    let mut da = degree_profile(a);
    let mut db = degree_profile(b);
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let pins = [(a.source(), b.source()), (a.target(), b.target())];
    let host = Host::new(b, None);
    let mut meter = Limits::default().with_node_budget(u64::MAX).meter("isomorphism");
    let mut found = None;
    let _ = search(a, &pins, &host, true, &mut meter, |m| {
        found = Some(m);
        ControlFlow::Break(())
    })
    .expect("unbounded search cannot exhaust its budget");
    found
}

/// Cheap exact isomorphism test.
pub fn isomorphic(a: &FlowGraph, b: &FlowGraph) -> bool {
    are_isomorphic(a, b).is_some()
}

/// Isomorphism induced by a known edge correspondence `edge_map[e] = f`,
/// if the correspondence is one. Used to confirm isomorphisms whose edge
/// bijection is known in advance without a search.
pub fn iso_from_edge_map(a: &FlowGraph, b: &FlowGraph, edge_map: &[EdgeId]) -> Option<VertexMap> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() || edge_map.len() != a.edge_count() {
        return None;
    }
    let mut vertices = vec![usize::MAX; n];
    let mut assign = |x: VertexId, y: VertexId| {
        if vertices[x] == usize::MAX {
            vertices[x] = y;
            true
        } else {
            vertices[x] == y
        }
    };
    if !assign(a.source(), b.source()) || !assign(a.target(), b.target()) {
        return None;
    }
    for (e, &f) in a.edges().iter().zip(edge_map) {
        if f >= b.edge_count() {
            return None;
        }
        let g = b.edge(f);
        if !assign(e.tail, g.tail) || !assign(e.head, g.head) {
            return None;
        }
    }
    let m = VertexMap {
        vertices,
        edges: edge_map.to_vec(),
    };
    m.is_isomorphism(a, b).then_some(m)
}

fn degree_profile(a: &FlowGraph) -> Vec<(usize, usize, usize)> {
    let (i, o, l) = (a.in_degrees(), a.out_degrees(), a.loop_counts());
    (0..a.vertex_count()).map(|v| (l[v], i[v], o[v])).collect()
}

/// Host graph with optionally excluded edges, indexed for the search.
pub(crate) struct Host<'a> {
    graph: &'a FlowGraph,
    n: usize,
    /// available multiplicity, `mult[u * n + v]`
    mult: Vec<u32>,
    /// available edge ids per ordered pair, ascending
    pair_edges: Vec<Vec<EdgeId>>,
    neighbours: Vec<Vec<VertexId>>,
    in_deg: Vec<u32>,
    out_deg: Vec<u32>,
}

impl<'a> Host<'a> {
    pub(crate) fn new(graph: &'a FlowGraph, excluded: Option<&[bool]>) -> Self {
        let n = graph.vertex_count();
        let mut mult = vec![0u32; n * n];
        let mut pair_edges = vec![Vec::new(); n * n];
        let mut in_deg = vec![0; n];
        let mut out_deg = vec![0; n];
        for (id, e) in graph.edges().iter().enumerate() {
            if excluded.is_some_and(|x| x[id]) {
                continue;
            }
            mult[e.tail * n + e.head] += 1;
            pair_edges[e.tail * n + e.head].push(id);
            out_deg[e.tail] += 1;
            in_deg[e.head] += 1;
        }
        let neighbours = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&v| v != u && (mult[u * n + v] > 0 || mult[v * n + u] > 0))
                    .collect()
            })
            .collect();
        Host {
            graph,
            n,
            mult,
            pair_edges,
            neighbours,
            in_deg,
            out_deg,
        }
    }

    fn m(&self, u: VertexId, v: VertexId) -> u32 {
        self.mult[u * self.n + v]
    }
}

struct Var {
    v: VertexId,
    pin: Option<VertexId>,
    /// earlier-assigned neighbour whose image's neighbours are the candidates
    parent: Option<usize>,
    /// (earlier position, mult(v, w), mult(w, v)) for adjacent earlier w
    back: Vec<(usize, u32, u32)>,
    loops: u32,
    in_deg: u32,
    out_deg: u32,
}

/// Core backtracking search. `exact` requires equal degrees (isomorphism).
pub(crate) fn search(
    a: &FlowGraph,
    pins: &[(VertexId, VertexId)],
    host: &Host<'_>,
    exact: bool,
    meter: &mut Meter,
    mut visit: impl FnMut(VertexMap) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let n = a.vertex_count();
    if n > host.n || a.edge_count() > host.graph.edge_count() {
        return Ok(ControlFlow::Continue(()));
    }
    // Pins must be consistent with injectivity.
    for &(x, y) in pins {
        for &(x2, y2) in pins {
            if (x == x2) != (y == y2) {
                return Ok(ControlFlow::Continue(()));
            }
        }
    }
    let pin_of = |v: VertexId| pins.iter().find(|p| p.0 == v).map(|p| p.1);

    let mut amult = vec![0u32; n * n];
    for e in a.edges() {
        amult[e.tail * n + e.head] += 1;
    }
    let (ind, outd) = (a.in_degrees(), a.out_degrees());

    // Variable order: pinned vertices first, then BFS over U(G_a); the first
    // unpinned root is a vertex of maximum degree.
    let mut order: Vec<VertexId> = Vec::new();
    let mut placed = vec![false; n];
    for &(x, _) in pins {
        if !placed[x] {
            placed[x] = true;
            order.push(x);
        }
    }
    if order.is_empty() {
        let root = (0..n).max_by_key(|&v| (ind[v] + outd[v], std::cmp::Reverse(v))).unwrap();
        placed[root] = true;
        order.push(root);
    }
    let mut head = 0;
    while order.len() < n {
        if head == order.len() {
            // unreachable for connected patterns; keep going defensively
            let v = (0..n).find(|&v| !placed[v]).unwrap();
            placed[v] = true;
            order.push(v);
            continue;
        }
        let u = order[head];
        head += 1;
        for w in 0..n {
            if !placed[w] && w != u && (amult[u * n + w] > 0 || amult[w * n + u] > 0) {
                placed[w] = true;
                order.push(w);
            }
        }
    }
    let vars: Vec<Var> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let back: Vec<(usize, u32, u32)> = order[..i]
                .iter()
                .enumerate()
                .filter_map(|(j, &w)| {
                    let (f, b) = (amult[v * n + w], amult[w * n + v]);
                    (f > 0 || b > 0).then_some((j, f, b))
                })
                .collect();
            Var {
                v,
                pin: pin_of(v),
                parent: back.first().map(|b| b.0),
                back,
                loops: amult[v * n + v],
                in_deg: ind[v] as u32,
                out_deg: outd[v] as u32,
            }
        })
        .collect();

    let mut st = State {
        a,
        host,
        vars: &vars,
        exact,
        image: vec![usize::MAX; n],
        used: vec![false; host.n],
        meter,
    };
    st.extend(0, &mut visit)
}

struct State<'s, 'h> {
    a: &'s FlowGraph,
    host: &'s Host<'h>,
    vars: &'s [Var],
    exact: bool,
    /// image by variable position
    image: Vec<VertexId>,
    used: Vec<bool>,
    meter: &'s mut Meter,
}

impl State<'_, '_> {
    fn extend(&mut self, i: usize, visit: &mut impl FnMut(VertexMap) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        if i == self.vars.len() {
            return Ok(visit(self.materialize()));
        }
        let var = &self.vars[i];
        let candidates: Vec<VertexId> = match (var.pin, var.parent) {
            (Some(p), _) => vec![p],
            (None, Some(j)) => self.host.neighbours[self.image[j]].clone(),
            (None, None) => (0..self.host.n).collect(),
        };
        for c in candidates {
            if self.used[c] || !self.feasible(var, c) {
                continue;
            }
            self.meter.tick()?;
            self.image[i] = c;
            self.used[c] = true;
            let flow = self.extend(i + 1, visit)?;
            self.used[c] = false;
            self.image[i] = usize::MAX;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn feasible(&self, var: &Var, c: VertexId) -> bool {
        let h = self.host;
        let (l, i, o) = (h.m(c, c), h.in_deg[c], h.out_deg[c]);
        let degrees = if self.exact {
            var.loops == l && var.in_deg == i && var.out_deg == o
        } else {
            var.loops <= l && var.in_deg <= i && var.out_deg <= o
        };
        degrees
            && var.back.iter().all(|&(j, f, b)| {
                let w = self.image[j];
                f <= h.m(c, w) && b <= h.m(w, c)
            })
    }

    fn materialize(&self) -> VertexMap {
        let n = self.a.vertex_count();
        let mut vertices = vec![0; n];
        for (i, var) in self.vars.iter().enumerate() {
            vertices[var.v] = self.image[i];
        }
        let hn = self.host.n;
        let mut next = vec![0usize; hn * hn];
        let edges = self
            .a
            .edges()
            .iter()
            .map(|e| {
                let k = vertices[e.tail] * hn + vertices[e.head];
                let id = self.host.pair_edges[k][next[k]];
                next[k] += 1;
                id
            })
            .collect();
        VertexMap { vertices, edges }
    }
}
