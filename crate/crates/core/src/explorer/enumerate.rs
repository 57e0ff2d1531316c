//! Exhaustive generation of flow graphs up to isomorphism.
//!
//! Connected directed multigraphs are grown one edge at a time: every
//! connected graph with q ≥ 1 edges either has a non-bridge edge (drop it)
//! or is a tree with a leaf (drop the leaf), so extending the (q−1)-level
//! by "new edge between existing vertices" and "new pendant vertex" reaches
//! every class. Classes are deduplicated by unanchored canonical key, then
//! fanned out over all anchor pairs and deduplicated again.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with, unanchored_form, CanonicalKey};
use crate::error::Result;
use crate::graph::{Edge, FlowGraph};
use crate::limits::Limits;
use crate::par::{self, Exec};
use crate::st::is_st_flow_graph;

/// Which flow graphs a universe contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub max_edges: usize,
    pub max_vertices: usize,
    pub st_only: bool,
    pub include_infinitesimals: bool,
}

impl UniverseSpec {
    pub fn new(max_edges: usize) -> Self {
        UniverseSpec {
            max_edges,
            max_vertices: max_edges + 1,
            st_only: false,
            include_infinitesimals: true,
        }
    }

    pub fn st(max_edges: usize) -> Self {
        UniverseSpec {
            st_only: true,
            ..UniverseSpec::new(max_edges)
        }
    }

    pub fn admits(&self, a: &FlowGraph) -> Result<bool> {
        Ok(a.edge_count() <= self.max_edges
            && a.vertex_count() <= self.max_vertices
            && (self.include_infinitesimals || !a.is_infinitesimal())
            && (!self.st_only || is_st_flow_graph(a)?))
    }
}

/// All flow graphs with exactly `q` edges, one per class, canonically
/// labelled, ascending by key.
#[derive(Debug)]
pub struct Level {
    pub graphs: Vec<FlowGraph>,
    pub keys: Vec<CanonicalKey>,
}

struct Shape {
    n: usize,
    edges: Vec<Edge>,
}

static SHAPES: Mutex<Vec<Arc<Vec<Shape>>>> = Mutex::new(Vec::new());
static LEVELS: Mutex<BTreeMap<usize, Arc<Level>>> = Mutex::new(BTreeMap::new());

/// Bare connected multigraphs with `q` edges up to isomorphism.
fn shapes(q: usize, limits: &Limits) -> Result<Arc<Vec<Shape>>> {
    {
        let cache = SHAPES.lock().unwrap();
        if let Some(s) = cache.get(q) {
            return Ok(s.clone());
        }
    }
    let built = if q == 0 {
        vec![Shape { n: 1, edges: Vec::new() }]
    } else {
        let prev = shapes(q - 1, limits)?;
        let children: Vec<Result<Vec<(CanonicalKey, Shape)>>> =
            par::map_collect(Exec::default(), prev.len(), |i| {
                let g = &prev[i];
                let mut out = Vec::new();
                let mut push = |n: usize, edges: Vec<Edge>| -> Result<()> {
                    let (key, perm) = unanchored_form(n, &edges, limits)?;
                    let mut es: Vec<Edge> =
                        edges.iter().map(|e| Edge::new(perm[e.tail], perm[e.head])).collect();
                    es.sort();
                    out.push((key, Shape { n, edges: es }));
                    Ok(())
                };
                for u in 0..g.n {
                    for v in 0..g.n {
                        let mut es = g.edges.clone();
                        es.push(Edge::new(u, v));
                        push(g.n, es)?;
                    }
                    let mut es = g.edges.clone();
                    es.push(Edge::new(u, g.n));
                    push(g.n + 1, es)?;
                    let mut es = g.edges.clone();
                    es.push(Edge::new(g.n, u));
                    push(g.n + 1, es)?;
                }
                Ok(out)
            });
        let mut all = BTreeMap::new();
        for c in children {
            for (k, s) in c? {
                all.entry(k).or_insert(s);
            }
        }
        all.into_values().collect()
    };
    // shapes(q - 1) above guarantees the cache already holds levels < q
    let mut cache = SHAPES.lock().unwrap();
    if cache.len() == q {
        cache.push(Arc::new(built));
    }
    Ok(cache[q].clone())
}

/// Flow graphs with exactly `q` edges.
pub fn level(q: usize) -> Result<Arc<Level>> {
    level_with(q, Limits::global())
}

pub fn level_with(q: usize, limits: &Limits) -> Result<Arc<Level>> {
    if let Some(l) = LEVELS.lock().unwrap().get(&q) {
        return Ok(l.clone());
    }
    let shapes = shapes(q, limits)?;
    let anchored: Vec<Result<Vec<(CanonicalKey, FlowGraph)>>> =
        par::map_collect(Exec::default(), shapes.len(), |i| {
            let sh = &shapes[i];
            let mut out = Vec::new();
            for s in 0..sh.n {
                for t in 0..sh.n {
                    let g = FlowGraph::from_parts(sh.n, sh.edges.clone(), s, t);
                    let (key, perm) = canonical_form_with(&g, limits)?;
                    out.push((key, g.relabeled(&perm).sorted()));
                }
            }
            Ok(out)
        });
    let mut all = BTreeMap::new();
    for a in anchored {
        for (k, g) in a? {
            all.entry(k).or_insert(g);
        }
    }
    let (keys, graphs) = all.into_iter().unzip();
    let level = Arc::new(Level { graphs, keys });
    LEVELS.lock().unwrap().entry(q).or_insert(level.clone());
    Ok(level)
}

/// One representative per class admitted by `spec`, ascending by key.
pub fn enumerate_flow_graphs(spec: &UniverseSpec) -> Result<Vec<FlowGraph>> {
    let mut out: Vec<(CanonicalKey, FlowGraph)> = Vec::new();
    for q in 0..=spec.max_edges {
        let l = level(q)?;
        for (k, g) in l.keys.iter().zip(&l.graphs) {
            if spec.admits(g)? {
                out.push((k.clone(), g.clone()));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|p| p.1).collect())
}
