//! Splitting vertices and edges, ranks, the canonical ⊕-decomposition,
//! st-cores, standardness and ⊕-irreducibility.

use crate::algebra::plus;
use crate::embed::isomorphic;
use crate::error::{Error, Result};
use crate::graph::{components, EdgeId, FlowGraph, VertexId};
use crate::limits::Limits;
use crate::st::st_report;

/// One splitting vertex with the edge sets of its three sides. Edges
/// incident to the vertex itself belong to none of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPart {
    pub vertex: VertexId,
    pub s_side: Vec<EdgeId>,
    pub t_side: Vec<EdgeId>,
    pub eps: Vec<EdgeId>,
}

/// χ(A), ascending by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitVertexSet {
    pub members: Vec<SplitPart>,
}

impl SplitVertexSet {
    pub fn vertices(&self) -> Vec<VertexId> {
        self.members.iter().map(|m| m.vertex).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.iter().any(|m| m.vertex == v)
    }
}

/// Components of G − w, or `None` if `w` does not split s from t.
fn split_components(a: &FlowGraph, w: VertexId) -> Option<Vec<Option<usize>>> {
    if w >= a.vertex_count() || w == a.source() || w == a.target() {
        return None;
    }
    let comp = components(a.vertex_count(), a.edges(), Some(w), None);
    (comp[a.source()] != comp[a.target()]).then_some(comp)
}

pub fn is_splitting_vertex(a: &FlowGraph, w: VertexId) -> bool {
    split_components(a, w).is_some()
}

pub fn splitting_vertices(a: &FlowGraph) -> SplitVertexSet {
    let mut members = Vec::new();
    for w in 0..a.vertex_count() {
        let Some(comp) = split_components(a, w) else { continue };
        let (cs, ct) = (comp[a.source()], comp[a.target()]);
        let mut part = SplitPart {
            vertex: w,
            s_side: Vec::new(),
            t_side: Vec::new(),
            eps: Vec::new(),
        };
        for (id, e) in a.edges().iter().enumerate() {
            if e.touches(w) {
                continue;
            }
            let c = comp[e.tail];
            if c == cs {
                part.s_side.push(id);
            } else if c == ct {
                part.t_side.push(id);
            } else {
                part.eps.push(id);
            }
        }
        members.push(part);
    }
    SplitVertexSet { members }
}

/// The splitting (A_s^w, A_t^w) together with the maps from A's vertices
/// into each half (`None` where a vertex is not present).
#[derive(Debug, Clone)]
pub(crate) struct Split {
    pub s_part: FlowGraph,
    pub t_part: FlowGraph,
    pub t_map: Vec<Option<VertexId>>,
}

/// A_s^w keeps the s- and ε-side vertices in their original order and
/// appends the new target; A_t^w starts with the new source followed by
/// the t-side vertices. Edges at `w` follow their other endpoint; loops at
/// `w` become loops at the new target of A_s^w, so that
/// A ≅ A_s^w ⊕ A_t^w holds for every splitting vertex.
pub(crate) fn split_with_maps(a: &FlowGraph, w: VertexId) -> Result<Split> {
    let comp = split_components(a, w).ok_or(Error::NotASplittingVertex(w))?;
    let ct = comp[a.target()];
    let n = a.vertex_count();
    let on_t = |v: VertexId| v != w && comp[v] == ct;

    let mut s_map = vec![None; n];
    let mut t_map = vec![None; n];
    let (mut ns, mut nt) = (0, 1);
    for v in 0..n {
        if v == w {
            continue;
        }
        if on_t(v) {
            t_map[v] = Some(nt);
            nt += 1;
        } else {
            s_map[v] = Some(ns);
            ns += 1;
        }
    }
    let new_t = ns;
    let mut s_edges = Vec::new();
    let mut t_edges = Vec::new();
    for e in a.edges() {
        let t_side = on_t(e.tail) || on_t(e.head);
        if t_side {
            let f = |v: VertexId| if v == w { 0 } else { t_map[v].unwrap() };
            t_edges.push(crate::Edge::new(f(e.tail), f(e.head)));
        } else {
            let f = |v: VertexId| if v == w { new_t } else { s_map[v].unwrap() };
            s_edges.push(crate::Edge::new(f(e.tail), f(e.head)));
        }
    }
    let s_part = FlowGraph::from_parts(ns + 1, s_edges, s_map[a.source()].unwrap(), new_t);
    let t_part = FlowGraph::from_parts(nt, t_edges, 0, t_map[a.target()].unwrap());
    Ok(Split {
        s_part,
        t_part,
        t_map,
    })
}

pub fn split_at(a: &FlowGraph, w: VertexId) -> Result<(FlowGraph, FlowGraph)> {
    let s = split_with_maps(a, w)?;
    Ok((s.s_part, s.t_part))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankPair {
    pub r_s: usize,
    pub r_t: usize,
}

pub fn rank(a: &FlowGraph, w: VertexId) -> Result<RankPair> {
    let comp = split_components(a, w).ok_or(Error::NotASplittingVertex(w))?;
    let chi = splitting_vertices(a).vertices();
    let count = |c| chi.iter().filter(|&&v| v != w && comp[v] == c).count();
    Ok(RankPair {
        r_s: count(comp[a.source()]),
        r_t: count(comp[a.target()]),
    })
}

/// ⟨A⟩: the ⊕-irreducible summands in order from source to target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSeq {
    pub components: Vec<FlowGraph>,
}

impl DecompositionSeq {
    /// Left fold under ⊕.
    pub fn recompose(&self) -> FlowGraph {
        let mut it = self.components.iter();
        let first = it.next().cloned().unwrap_or_else(FlowGraph::trivial);
        it.fold(first, |acc, c| plus(&acc, c))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Cuts A at all splitting vertices at once. With χ(A) sorted by s-rank
/// as v₀ < v₁ < …, a vertex outside χ belongs to summand
/// #{v ∈ χ : it lies on the t-side of v}; each edge goes with its
/// non-splitting endpoint, an edge v_{i}–v_{i+1} to summand i+1, and a
/// loop at v_i to summand i.
pub fn canonical_decomposition(a: &FlowGraph) -> DecompositionSeq {
    let (sorted, edge_sets) = cut_points(a);
    let k = sorted.len();
    let components = (0..=k)
        .map(|i| {
            let s = if i == 0 { a.source() } else { sorted[i - 1] };
            let t = if i == k { a.target() } else { sorted[i] };
            a.subgraph(&edge_sets[i], &[], s, t).0
        })
        .collect();
    DecompositionSeq { components }
}

/// Edge ids of each summand of ⟨A⟩, in summand order.
pub fn decomposition_edge_sets(a: &FlowGraph) -> Vec<Vec<EdgeId>> {
    cut_points(a).1
}

/// χ(A) sorted by s-rank, and the edge set of every summand.
fn cut_points(a: &FlowGraph) -> (Vec<VertexId>, Vec<Vec<EdgeId>>) {
    let chi = splitting_vertices(a).vertices();
    if chi.is_empty() {
        return (chi, vec![(0..a.edge_count()).collect()]);
    }
    let n = a.vertex_count();
    let comps: Vec<Vec<Option<usize>>> =
        chi.iter().map(|&w| components(n, a.edges(), Some(w), None)).collect();
    // position of each splitting vertex when sorted by s-rank
    let mut order: Vec<(usize, usize)> = chi
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let cs = comps[i][a.source()];
            let r_s = chi
                .iter()
                .enumerate()
                .filter(|&(j, &v)| j != i && comps[i][v] == cs)
                .count();
            (r_s, i)
        })
        .collect();
    order.sort();
    let sorted: Vec<VertexId> = order.iter().map(|&(_, i)| chi[i]).collect();
    let mut chi_pos = vec![None; n];
    for (k, &v) in sorted.iter().enumerate() {
        chi_pos[v] = Some(k);
    }
    let summand_of_vertex = |x: VertexId| -> usize {
        (0..chi.len())
            .filter(|&i| comps[i][x] == comps[i][a.target()])
            .count()
    };
    let mut edge_sets: Vec<Vec<EdgeId>> = vec![Vec::new(); sorted.len() + 1];
    for (id, e) in a.edges().iter().enumerate() {
        let c = match (chi_pos[e.tail], chi_pos[e.head]) {
            (None, _) => summand_of_vertex(e.tail),
            (_, None) => summand_of_vertex(e.head),
            (Some(i), Some(j)) => i.max(j),
        };
        edge_sets[c].push(id);
    }
    (sorted, edge_sets)
}

/// ⟨A⟩ by the nested recursion: split at v₀, then split the t-half at v₁
/// (the image of A's next splitting vertex), and so on.
pub fn nested_decomposition(a: &FlowGraph) -> Result<DecompositionSeq> {
    let chi = splitting_vertices(a).vertices();
    let mut ranked: Vec<(usize, VertexId)> =
        chi.iter().map(|&v| Ok((rank(a, v)?.r_s, v))).collect::<Result<_>>()?;
    ranked.sort();
    let mut components = Vec::new();
    let mut rest = a.clone();
    // A's vertex ids → ids in `rest`
    let mut map: Vec<Option<VertexId>> = (0..a.vertex_count()).map(Some).collect();
    for (_, v) in ranked {
        let w = map[v].ok_or(Error::NotASplittingVertex(v))?;
        let split = split_with_maps(&rest, w)?;
        components.push(split.s_part);
        map = map.iter().map(|m| m.and_then(|x| split.t_map[x])).collect();
        rest = split.t_part;
    }
    components.push(rest);
    Ok(DecompositionSeq { components })
}

/// Δ(A): edges whose removal leaves exactly two components, with s and t
/// in different ones.
pub fn splitting_edges(a: &FlowGraph) -> Vec<EdgeId> {
    (0..a.edge_count())
        .filter(|&id| {
            let comp = components(a.vertex_count(), a.edges(), None, Some(id));
            let two = comp.iter().all(|c| c.is_some_and(|c| c < 2)) && comp.contains(&Some(1));
            two && comp[a.source()] != comp[a.target()]
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibilityMode {
    /// χ(A) = ∅.
    SplittingVertex,
    /// No A ≅ B ⊕ C with B, C nontrivial.
    Definitional,
}

pub fn is_oplus_irreducible(a: &FlowGraph, mode: IrreducibilityMode) -> Result<bool> {
    match mode {
        IrreducibilityMode::SplittingVertex => Ok(splitting_vertices(a).is_empty()),
        IrreducibilityMode::Definitional => {
            let splits = oplus_splits(a, Limits::global())?;
            Ok(!splits
                .iter()
                .any(|(b, c)| !b.is_trivial() && !c.is_trivial()))
        }
    }
}

/// Every way of writing A = B ⊕ C, by brute force over edge bipartitions:
/// B takes a set of edges and the source, C the rest and the target, and
/// the two vertex sets must meet in exactly one vertex (the glue). Each
/// pair is confirmed by recomputing B ⊕ C.
pub fn oplus_splits(a: &FlowGraph, limits: &Limits) -> Result<Vec<(FlowGraph, FlowGraph)>> {
    let q = a.edge_count();
    if q >= 63 {
        return Err(Error::SearchBudgetExceeded(format!("{q} edges is too many to bipartition")));
    }
    let mut meter = limits.meter("⊕-decomposition search");
    let n = a.vertex_count();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << q) {
        meter.tick()?;
        let (eb, ec): (Vec<EdgeId>, Vec<EdgeId>) = (0..q).partition(|&i| mask >> i & 1 == 1);
        let mut in_b = vec![false; n];
        let mut in_c = vec![false; n];
        in_b[a.source()] = true;
        in_c[a.target()] = true;
        for &i in &eb {
            in_b[a.edge(i).tail] = true;
            in_b[a.edge(i).head] = true;
        }
        for &i in &ec {
            in_c[a.edge(i).tail] = true;
            in_c[a.edge(i).head] = true;
        }
        let shared: Vec<VertexId> = (0..n).filter(|&v| in_b[v] && in_c[v]).collect();
        if shared.len() != 1 || (0..n).any(|v| !in_b[v] && !in_c[v]) {
            continue;
        }
        let glue = shared[0];
        if !spans_connected(a, &eb, &in_b) || !spans_connected(a, &ec, &in_c) {
            continue;
        }
        let vb: Vec<VertexId> = (0..n).filter(|&v| in_b[v]).collect();
        let vc: Vec<VertexId> = (0..n).filter(|&v| in_c[v]).collect();
        let (b, _) = a.subgraph(&eb, &vb, a.source(), glue);
        let (c, _) = a.subgraph(&ec, &vc, glue, a.target());
        if isomorphic(&plus(&b, &c), a) {
            out.push((b, c));
        }
    }
    Ok(out)
}

fn spans_connected(a: &FlowGraph, edges: &[EdgeId], members: &[bool]) -> bool {
    let n = a.vertex_count();
    let sub: Vec<crate::Edge> = edges.iter().map(|&i| a.edge(i)).collect();
    let comp = components(n, &sub, None, None);
    let mut label = None;
    (0..n).filter(|&v| members[v]).all(|v| {
        let c = comp[v];
        *label.get_or_insert(c) == c
    })
}

/// Â: the subgraph of edges with the st property. F₀ for infinitesimals.
pub fn st_core(a: &FlowGraph) -> Result<FlowGraph> {
    let report = st_report(a)?;
    let keep: Vec<EdgeId> = (0..a.edge_count()).filter(|&e| report.flags[e]).collect();
    if keep.is_empty() {
        return if a.source() == a.target() {
            Ok(FlowGraph::trivial())
        } else {
            Err(Error::CoreUndefined)
        };
    }
    Ok(a.subgraph(&keep, &[], a.source(), a.target()).0)
}

/// No decomposition A = B ⊕ C with B infinitesimal.
pub fn is_s_standard(a: &FlowGraph) -> bool {
    if a.is_infinitesimal() {
        return false;
    }
    if a.loop_counts()[a.source()] > 0 {
        return false;
    }
    if a.is_trivial() {
        return true;
    }
    let comp = components(a.vertex_count(), a.edges(), Some(a.source()), None);
    let ct = comp[a.target()];
    comp.iter().all(|c| c.is_none() || *c == ct)
}

/// No decomposition A = B ⊕ C with C infinitesimal.
pub fn is_t_standard(a: &FlowGraph) -> bool {
    is_s_standard(&a.swapped())
}

/// Definitional s-standardness by exhaustive ⊕-decomposition search.
pub fn is_s_standard_definitional(a: &FlowGraph, limits: &Limits) -> Result<bool> {
    Ok(!oplus_splits(a, limits)?.iter().any(|(b, _)| b.is_infinitesimal()))
}

/// Definitional t-standardness by exhaustive ⊕-decomposition search.
pub fn is_t_standard_definitional(a: &FlowGraph, limits: &Limits) -> Result<bool> {
    Ok(!oplus_splits(a, limits)?.iter().any(|(_, c)| c.is_infinitesimal()))
}
