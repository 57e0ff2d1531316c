//! Canonical labelling by individualization–refinement.
//!
//! The key of a graph is the lexicographically smallest serialization over
//! all leaves of the search tree. Vertex count is serialized first, so
//! graphs with fewer vertices always sort first.

use std::fmt;

use crate::error::Result;
use crate::graph::{Edge, FlowGraph, VertexId};
use crate::limits::{Limits, Meter};

/// Exact isomorphism fingerprint; equal keys ⇔ isomorphic flow graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn from_words(words: &[u32]) -> Self {
        // Fixed-width big-endian keeps byte order equal to word order.
        CanonicalKey(words.iter().flat_map(|w| w.to_be_bytes()).collect())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

const MODE_ANCHORED: u32 = 0;
const MODE_UNANCHORED: u32 = 1;

const ROLE_NONE: u32 = 0;
const ROLE_SOURCE: u32 = 1;
const ROLE_TARGET: u32 = 2;
const ROLE_BOTH: u32 = 3;

pub fn canonical_key(a: &FlowGraph) -> Result<CanonicalKey> {
    Ok(canonical_form_with(a, Limits::global())?.0)
}

pub fn canonical_key_with(a: &FlowGraph, limits: &Limits) -> Result<CanonicalKey> {
    Ok(canonical_form_with(a, limits)?.0)
}

/// Key plus a canonical relabelling `perm[old] = new`.
pub fn canonical_form_with(a: &FlowGraph, limits: &Limits) -> Result<(CanonicalKey, Vec<VertexId>)> {
    let mut roles = vec![ROLE_NONE; a.vertex_count()];
    if a.source() == a.target() {
        roles[a.source()] = ROLE_BOTH;
    } else {
        roles[a.source()] = ROLE_SOURCE;
        roles[a.target()] = ROLE_TARGET;
    }
    canonize(a.vertex_count(), a.edges(), &roles, MODE_ANCHORED, limits)
}

/// The canonically relabelled representative: isomorphic inputs give
/// identical outputs (labels and edge order).
pub fn canonical_graph(a: &FlowGraph) -> Result<FlowGraph> {
    let (_, perm) = canonical_form_with(a, Limits::global())?;
    Ok(a.relabeled(&perm).sorted())
}

/// Key of the bare directed multigraph, ignoring anchors.
pub(crate) fn unanchored_form(
    n: usize,
    edges: &[Edge],
    limits: &Limits,
) -> Result<(CanonicalKey, Vec<VertexId>)> {
    canonize(n, edges, &vec![ROLE_NONE; n], MODE_UNANCHORED, limits)
}

fn canonize(
    n: usize,
    edges: &[Edge],
    roles: &[u32],
    mode: u32,
    limits: &Limits,
) -> Result<(CanonicalKey, Vec<VertexId>)> {
    let mut c = Canonizer::new(n, edges, roles, mode, limits.meter("canonical labelling"));
    let mut colors = c.initial_colors();
    c.search(&mut colors)?;
    let (words, perm) = c.best.expect("search visits at least one leaf");
    Ok((CanonicalKey::from_words(&words), perm))
}

struct Canonizer<'a> {
    n: usize,
    edges: &'a [Edge],
    roles: &'a [u32],
    mode: u32,
    /// Dense multiplicity matrix, `mult[u * n + v]`.
    mult: Vec<u32>,
    out_adj: Vec<Vec<(VertexId, u32)>>,
    in_adj: Vec<Vec<(VertexId, u32)>>,
    best: Option<(Vec<u32>, Vec<VertexId>)>,
    meter: Meter,
}

impl<'a> Canonizer<'a> {
    fn new(n: usize, edges: &'a [Edge], roles: &'a [u32], mode: u32, meter: Meter) -> Self {
        let mut mult = vec![0u32; n * n];
        for e in edges {
            mult[e.tail * n + e.head] += 1;
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                let m = mult[u * n + v];
                if m > 0 && u != v {
                    out_adj[u].push((v, m));
                    in_adj[v].push((u, m));
                }
            }
        }
        Canonizer {
            n,
            edges,
            roles,
            mode,
            mult,
            out_adj,
            in_adj,
            best: None,
            meter,
        }
    }

    fn initial_colors(&self) -> Vec<u32> {
        let role_rank = |r: u32| match r {
            ROLE_SOURCE | ROLE_BOTH => 0,
            ROLE_TARGET => 1,
            _ => 2,
        };
        let keys: Vec<_> = (0..self.n)
            .map(|v| {
                let out: u32 = self.out_adj[v].iter().map(|x| x.1).sum();
                let inn: u32 = self.in_adj[v].iter().map(|x| x.1).sum();
                (role_rank(self.roles[v]), self.mult[v * self.n + v], inn, out)
            })
            .collect();
        rank(&keys)
    }

    /// Colour refinement to the coarsest equitable partition. Colours are
    /// dense ranks whose order depends only on the structure.
    fn refine(&self, colors: &mut Vec<u32>) {
        let mut cells = count_cells(colors);
        loop {
            let sigs: Vec<_> = (0..self.n)
                .map(|v| {
                    let mut out: Vec<(u32, u32)> =
                        self.out_adj[v].iter().map(|&(w, m)| (colors[w], m)).collect();
                    let mut inn: Vec<(u32, u32)> =
                        self.in_adj[v].iter().map(|&(w, m)| (colors[w], m)).collect();
                    out.sort_unstable();
                    inn.sort_unstable();
                    (colors[v], out, inn)
                })
                .collect();
            let next = rank(&sigs);
            let next_cells = count_cells(&next);
            *colors = next;
            if next_cells == cells {
                return;
            }
            cells = next_cells;
        }
    }

    fn search(&mut self, colors: &mut Vec<u32>) -> Result<()> {
        self.meter.tick()?;
        self.refine(colors);
        let cells = count_cells(colors);
        if cells == self.n {
            self.leaf(colors);
            return Ok(());
        }
        // first non-singleton cell, by colour
        let mut sizes = vec![0usize; cells];
        for &c in colors.iter() {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).unwrap() as u32;
        let members: Vec<VertexId> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<VertexId> = Vec::new();
        for &v in &members {
            // Swapping twins is an automorphism fixing the current colouring,
            // so their subtrees yield the same serializations.
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            let keys: Vec<_> = (0..self.n).map(|x| (colors[x], u32::from(x != v))).collect();
            let mut child = rank(&keys);
            self.search(&mut child)?;
            tried.push(v);
        }
        Ok(())
    }

    fn twins(&self, u: VertexId, v: VertexId) -> bool {
        let n = self.n;
        let m = |a: usize, b: usize| self.mult[a * n + b];
        if m(u, u) != m(v, v) || m(u, v) != m(v, u) {
            return false;
        }
        (0..n)
            .filter(|&w| w != u && w != v)
            .all(|w| m(u, w) == m(v, w) && m(w, u) == m(w, v))
    }

    fn leaf(&mut self, colors: &[u32]) {
        let perm: Vec<VertexId> = colors.iter().map(|&c| c as usize).collect();
        let mut inv = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let mut words = Vec::with_capacity(4 + self.n + 2 * self.edges.len());
        words.push(self.n as u32);
        words.push(self.mode);
        words.extend(inv.iter().map(|&v| self.roles[v]));
        words.push(self.edges.len() as u32);
        let mut es: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|e| (perm[e.tail] as u32, perm[e.head] as u32))
            .collect();
        es.sort_unstable();
        for (a, b) in es {
            words.push(a);
            words.push(b);
        }
        match &self.best {
            Some((w, _)) if *w <= words => {}
            _ => self.best = Some((words, perm)),
        }
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn count_cells(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}
