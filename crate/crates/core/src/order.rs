//! Weak order (via (s,t)-splittings embedded with disjoint edge images) and
//! strong order (a source-anchored and a target-anchored embedding).
//!
//! Both deciders are exact. Witnesses are re-checked by the independent
//! verifiers at the bottom of this module before they are returned.

use std::ops::ControlFlow;

use crate::embed::{search, Host, VertexMap};
use crate::error::{Error, Result};
use crate::graph::{components, Edge, EdgeId, FlowGraph, VertexId};
use crate::limits::{Limits, Meter};

/// One side of a splitting: a set of edges of `G_A` and the vertices they
/// span (plus the anchor). Both lists are ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StPart {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
}

impl StPart {
    /// Position of `v` in `vertices`.
    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

/// An (s,t)-splitting (H₁, H₂): H₁ holds the source, H₂ the target, and
/// their edge sets partition E[G_A].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StSplitting {
    pub h1: StPart,
    pub h2: StPart,
}

/// Embeddings of the two parts of a splitting. `phi1.vertices[i]` is the
/// image of `splitting.h1.vertices[i]`, `phi1.edges[j]` the image of
/// `splitting.h1.edges[j]`; likewise for `phi2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakWitness {
    pub splitting: StSplitting,
    pub phi1: VertexMap,
    pub phi2: VertexMap,
}

/// Two full embeddings of G_A, one fixing the source and one the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongWitness {
    pub phi_s: VertexMap,
    pub phi_t: VertexMap,
}

fn too_big(a: &FlowGraph, limits: &Limits) -> Option<Error> {
    (a.vertex_count() > limits.max_order_vertices || a.edge_count() > limits.max_order_edges).then(|| {
        Error::SearchBudgetExceeded(format!(
            "order search on a graph with {} vertices and {} edges (bound {} / {})",
            a.vertex_count(),
            a.edge_count(),
            limits.max_order_vertices,
            limits.max_order_edges
        ))
    })
}

fn check_operands(a: &FlowGraph, b: &FlowGraph, limits: &Limits) -> Result<()> {
    match too_big(a, limits).or_else(|| too_big(b, limits)) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn part(a: &FlowGraph, edges: Vec<EdgeId>, anchor: VertexId) -> StPart {
    let mut vertices = vec![anchor];
    for &id in &edges {
        let e = a.edge(id);
        vertices.extend([e.tail, e.head]);
    }
    vertices.sort_unstable();
    vertices.dedup();
    StPart { edges, vertices }
}

fn part_connected(a: &FlowGraph, p: &StPart) -> bool {
    let sub: Vec<Edge> = p.edges.iter().map(|&id| a.edge(id)).collect();
    let comp = components(a.vertex_count(), &sub, None, None);
    p.vertices.iter().all(|&v| comp[v] == comp[p.vertices[0]])
}

impl StSplitting {
    /// The splitting whose first part has edge set `h1` (ascending ids);
    /// `None` if the parts are not both connected.
    pub fn from_h1_edges(a: &FlowGraph, h1: &[EdgeId]) -> Option<StSplitting> {
        let mut in_h1 = vec![false; a.edge_count()];
        for &id in h1 {
            *in_h1.get_mut(id)? = true;
        }
        let e1 = (0..a.edge_count()).filter(|&id| in_h1[id]).collect();
        let e2 = (0..a.edge_count()).filter(|&id| !in_h1[id]).collect();
        let sp = StSplitting {
            h1: part(a, e1, a.source()),
            h2: part(a, e2, a.target()),
        };
        (part_connected(a, &sp.h1) && part_connected(a, &sp.h2)).then_some(sp)
    }
}

/// Vertex images induced by edge images on one part; a part without edges
/// consists of its anchor alone, which goes to `anchor_image`.
fn induced_part_map(a: &FlowGraph, b: &FlowGraph, p: &StPart, img: &[EdgeId], anchor_image: VertexId) -> Option<VertexMap> {
    let mut vertices = vec![usize::MAX; p.vertices.len()];
    if p.edges.is_empty() {
        vertices[0] = anchor_image;
    }
    let mut edges = Vec::with_capacity(p.edges.len());
    for &id in &p.edges {
        let f = *img.get(id)?;
        if f >= b.edge_count() {
            return None;
        }
        let (e, g) = (a.edge(id), b.edge(f));
        for (x, y) in [(e.tail, g.tail), (e.head, g.head)] {
            let slot = &mut vertices[p.position(x)?];
            if *slot != usize::MAX && *slot != y {
                return None;
            }
            *slot = y;
        }
        edges.push(f);
    }
    Some(VertexMap { vertices, edges })
}

/// Weak witness built from a splitting (given by the edge set of H₁) and
/// an image for every edge of A; `None` unless it verifies.
pub fn weak_witness_from_edge_images(
    a: &FlowGraph,
    b: &FlowGraph,
    h1: &[EdgeId],
    img: &[EdgeId],
) -> Option<WeakWitness> {
    let splitting = StSplitting::from_h1_edges(a, h1)?;
    let phi1 = induced_part_map(a, b, &splitting.h1, img, b.source())?;
    let phi2 = induced_part_map(a, b, &splitting.h2, img, b.target())?;
    let w = WeakWitness { splitting, phi1, phi2 };
    verify_weak(a, b, &w).then_some(w)
}

/// Full embedding induced by edge images, with `pin` fixing the image of a
/// graph that has no edges; `None` unless it is an anchored embedding.
fn embedding_from_edge_images(a: &FlowGraph, b: &FlowGraph, img: &[EdgeId], pin: (VertexId, VertexId)) -> Option<VertexMap> {
    let whole = StPart {
        edges: (0..a.edge_count()).collect(),
        vertices: (0..a.vertex_count()).collect(),
    };
    let mut m = induced_part_map(a, b, &whole, img, usize::MAX)?;
    if a.edge_count() == 0 {
        m.vertices[pin.0] = pin.1;
    }
    (m.vertices[pin.0] == pin.1 && m.is_embedding(a, b)).then_some(m)
}

/// Strong witness from the edge images of φ_s and φ_t; `None` unless it
/// verifies.
pub fn strong_witness_from_edge_images(
    a: &FlowGraph,
    b: &FlowGraph,
    img_s: &[EdgeId],
    img_t: &[EdgeId],
) -> Option<StrongWitness> {
    let w = StrongWitness {
        phi_s: embedding_from_edge_images(a, b, img_s, (a.source(), b.source()))?,
        phi_t: embedding_from_edge_images(a, b, img_t, (a.target(), b.target()))?,
    };
    verify_strong(a, b, &w).then_some(w)
}

/// Lazy sequence of (s,t)-splittings. Edge masks are visited from "all
/// edges in H₁" downwards, so the degenerate splitting (G_A, {t_A}) comes
/// first and (…, G_A) with H₁ = {s_A} last.
pub struct StSplittings<'a> {
    a: &'a FlowGraph,
    next: Option<u64>,
}

impl Iterator for StSplittings<'_> {
    type Item = StSplitting;

    fn next(&mut self) -> Option<StSplitting> {
        while let Some(mask) = self.next {
            self.next = mask.checked_sub(1);
            let (mut e1, mut e2) = (Vec::new(), Vec::new());
            for id in 0..self.a.edge_count() {
                if mask >> id & 1 == 1 {
                    e1.push(id);
                } else {
                    e2.push(id);
                }
            }
            let h1 = part(self.a, e1, self.a.source());
            let h2 = part(self.a, e2, self.a.target());
            if part_connected(self.a, &h1) && part_connected(self.a, &h2) {
                return Some(StSplitting { h1, h2 });
            }
        }
        None
    }
}

pub fn enumerate_st_splittings(a: &FlowGraph) -> Result<StSplittings<'_>> {
    enumerate_st_splittings_with(a, Limits::global())
}

pub fn enumerate_st_splittings_with<'a>(a: &'a FlowGraph, limits: &Limits) -> Result<StSplittings<'a>> {
    if let Some(e) = too_big(a, limits) {
        return Err(e);
    }
    Ok(StSplittings {
        a,
        next: Some((1u64 << a.edge_count()) - 1),
    })
}

/// A ⩽ B, with a witness.
pub fn weak_leq(a: &FlowGraph, b: &FlowGraph) -> Result<Option<WeakWitness>> {
    weak_leq_with(a, b, Limits::global())
}

pub fn weak_leq_with(a: &FlowGraph, b: &FlowGraph, limits: &Limits) -> Result<Option<WeakWitness>> {
    check_operands(a, b, limits)?;
    if a.edge_count() > b.edge_count() {
        return Ok(None);
    }
    // φ₁ and φ₂ searches draw on separate budgets of the same size.
    let mut outer = limits.meter("weak order search");
    let mut inner = limits.meter("weak order search");
    let host = Host::new(b, None);
    for splitting in enumerate_st_splittings_with(a, limits)? {
        outer.tick()?;
        if let Some(w) = embed_splitting(a, b, &host, splitting, &mut outer, &mut inner)? {
            assert!(verify_weak(a, b, &w), "weak order search produced an invalid witness");
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Fixes φ₁ by backtracking, then looks for φ₂ in what φ₁ leaves free.
/// Which of several parallel host edges φ₁ takes does not matter to φ₂,
/// so one φ₁ per vertex assignment suffices.
fn embed_splitting(
    a: &FlowGraph,
    b: &FlowGraph,
    host: &Host<'_>,
    splitting: StSplitting,
    outer: &mut Meter,
    inner: &mut Meter,
) -> Result<Option<WeakWitness>> {
    let (s, t) = (a.source(), a.target());
    let (g1, map1) = a.subgraph(&splitting.h1.edges, &[], s, s);
    let (g2, map2) = a.subgraph(&splitting.h2.edges, &[], t, t);
    let pin1 = [(map1[s].unwrap(), b.source())];
    let pin2 = [(map2[t].unwrap(), b.target())];
    let mut found: Option<(VertexMap, VertexMap)> = None;
    let mut failure = None;
    let _ = search(&g1, &pin1, host, false, outer, |phi1| {
        let mut excluded = vec![false; b.edge_count()];
        for &f in &phi1.edges {
            excluded[f] = true;
        }
        let rest = Host::new(b, Some(&excluded));
        let mut phi2 = None;
        match search(&g2, &pin2, &rest, false, inner, |m| {
            phi2 = Some(m);
            ControlFlow::Break(())
        }) {
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
            Ok(_) => match phi2 {
                Some(m) => {
                    found = Some((phi1, m));
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            },
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(found.map(|(phi1, phi2)| WeakWitness {
        splitting,
        phi1,
        phi2,
    }))
}

/// A ⪯ B, with a witness.
pub fn strong_leq(a: &FlowGraph, b: &FlowGraph) -> Result<Option<StrongWitness>> {
    strong_leq_with(a, b, Limits::global())
}

pub fn strong_leq_with(a: &FlowGraph, b: &FlowGraph, limits: &Limits) -> Result<Option<StrongWitness>> {
    check_operands(a, b, limits)?;
    let mut meter = limits.meter("strong order search");
    let host = Host::new(b, None);
    let first = |pin: (VertexId, VertexId), meter: &mut Meter| -> Result<Option<VertexMap>> {
        let mut found = None;
        let _ = search(a, &[pin], &host, false, meter, |m| {
            found = Some(m);
            ControlFlow::Break(())
        })?;
        Ok(found)
    };
    let Some(phi_s) = first((a.source(), b.source()), &mut meter)? else {
        return Ok(None);
    };
    let Some(phi_t) = first((a.target(), b.target()), &mut meter)? else {
        return Ok(None);
    };
    let w = StrongWitness { phi_s, phi_t };
    assert!(verify_strong(a, b, &w), "strong order search produced an invalid witness");
    Ok(Some(w))
}

/// Checks that `p` is a valid side of a splitting of `a` anchored at `anchor`.
fn valid_part(a: &FlowGraph, p: &StPart, anchor: VertexId) -> bool {
    let mut expected = vec![anchor];
    for &id in &p.edges {
        if id >= a.edge_count() {
            return false;
        }
        expected.extend([a.edge(id).tail, a.edge(id).head]);
    }
    expected.sort_unstable();
    expected.dedup();
    expected == p.vertices && part_connected(a, p)
}

/// Independent check of the splitting conditions.
pub fn verify_splitting(a: &FlowGraph, sp: &StSplitting) -> bool {
    if !valid_part(a, &sp.h1, a.source()) || !valid_part(a, &sp.h2, a.target()) {
        return false;
    }
    let mut owner = vec![0u8; a.edge_count()];
    for &id in sp.h1.edges.iter().chain(&sp.h2.edges) {
        owner[id] += 1;
    }
    let mut covered = vec![false; a.vertex_count()];
    for &v in sp.h1.vertices.iter().chain(&sp.h2.vertices) {
        covered[v] = true;
    }
    owner.iter().all(|&c| c == 1) && covered.iter().all(|&c| c)
}

/// Checks that `phi` embeds part `p` of `a` into `b`, sending `anchor` to
/// `image`.
fn embeds_part(a: &FlowGraph, b: &FlowGraph, p: &StPart, phi: &VertexMap, anchor: VertexId, image: VertexId) -> bool {
    if phi.vertices.len() != p.vertices.len() || phi.edges.len() != p.edges.len() {
        return false;
    }
    if phi.vertices.iter().chain(&phi.edges).any(|&x| x == usize::MAX) {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !phi.vertices.iter().all(|&v| v < b.vertex_count() && seen.insert(v)) {
        return false;
    }
    seen.clear();
    if !phi.edges.iter().all(|&f| f < b.edge_count() && seen.insert(f)) {
        return false;
    }
    let at = |v: VertexId| p.position(v).map(|i| phi.vertices[i]);
    p.edges.iter().zip(&phi.edges).all(|(&id, &f)| {
        let (e, g) = (a.edge(id), b.edge(f));
        at(e.tail) == Some(g.tail) && at(e.head) == Some(g.head)
    }) && at(anchor) == Some(image)
}

pub fn verify_weak(a: &FlowGraph, b: &FlowGraph, w: &WeakWitness) -> bool {
    let sp = &w.splitting;
    verify_splitting(a, sp)
        && embeds_part(a, b, &sp.h1, &w.phi1, a.source(), b.source())
        && embeds_part(a, b, &sp.h2, &w.phi2, a.target(), b.target())
        && w.phi1.edges.iter().all(|f| !w.phi2.edges.contains(f))
}

pub fn verify_strong(a: &FlowGraph, b: &FlowGraph, w: &StrongWitness) -> bool {
    use crate::embed::Anchors;
    w.phi_s.is_anchored_embedding(a, b, Anchors::SOURCE) && w.phi_t.is_anchored_embedding(a, b, Anchors::TARGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::enumerate::{enumerate_flow_graphs, UniverseSpec};
    use crate::named::{cycle, nat, out_star};

    fn count(a: &FlowGraph) -> usize {
        enumerate_st_splittings(a).unwrap().count()
    }

    #[test]
    fn splitting_counts() {
        assert_eq!(count(&FlowGraph::trivial()), 1);
        assert_eq!(count(&nat(1)), 2);
        assert_eq!(count(&nat(2)), 3);
        let first = enumerate_st_splittings(&nat(2)).unwrap().next().unwrap();
        assert_eq!(first.h1.edges, vec![0, 1]);
        assert_eq!(first.h2.vertices, vec![2]);
        for sp in enumerate_st_splittings(&cycle(4, 0, 2)).unwrap() {
            assert!(verify_splitting(&cycle(4, 0, 2), &sp));
        }
    }

    #[test]
    fn chains_follow_integer_order() {
        for m in 0..=8 {
            for n in 0..=8 {
                let (a, b) = (nat(m), nat(n));
                assert_eq!(weak_leq(&a, &b).unwrap().is_some(), m <= n, "weak {m} {n}");
                assert_eq!(strong_leq(&a, &b).unwrap().is_some(), m <= n, "strong {m} {n}");
            }
        }
    }

    #[test]
    fn four_cycle_is_not_antisymmetric() {
        let a = cycle(4, 0, 2);
        let b = cycle(4, 0, 1);
        assert!(strong_leq(&a, &b).unwrap().is_some());
        assert!(strong_leq(&b, &a).unwrap().is_some());
        assert!(weak_leq(&a, &b).unwrap().is_some());
        assert!(weak_leq(&b, &a).unwrap().is_some());
        assert!(crate::embed::are_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn degree_three_does_not_fit_a_cycle() {
        let a = out_star(3).with_anchors(0, 1).unwrap();
        let b = cycle(6, 0, 3);
        assert!(strong_leq(&a, &b).unwrap().is_none());
    }

    #[test]
    fn oversized_operands_are_refused() {
        let big = nat(13);
        assert!(matches!(weak_leq(&big, &big), Err(Error::SearchBudgetExceeded(_))));
        assert!(matches!(strong_leq(&nat(1), &big), Err(Error::SearchBudgetExceeded(_))));
    }

    #[test]
    fn witnesses_from_edge_images() {
        let (a, b) = (nat(2), nat(3));
        let w = weak_witness_from_edge_images(&a, &b, &[0], &[0, 2]).unwrap();
        assert_eq!(w.splitting.h2.vertices, vec![1, 2]);
        assert!(weak_witness_from_edge_images(&a, &b, &[0], &[0, 1]).is_none());
        assert!(strong_witness_from_edge_images(&a, &b, &[0, 1], &[1, 2]).is_some());
        assert!(strong_witness_from_edge_images(&a, &b, &[1, 2], &[1, 2]).is_none());
        let f0 = FlowGraph::trivial();
        assert!(strong_witness_from_edge_images(&f0, &b, &[], &[]).is_some());
        assert!(weak_witness_from_edge_images(&f0, &b, &[], &[]).is_some());
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let (a, b) = (nat(2), nat(3));
        let mut w = weak_leq(&a, &b).unwrap().unwrap();
        assert!(verify_weak(&a, &b, &w));
        w.phi2.edges = w.phi1.edges.clone();
        assert!(!verify_weak(&a, &b, &w));
    }

    // Oracle: a splitting works iff injective vertex maps f₁ (s ↦ s) and
    // f₂ (t ↦ t) exist whose combined per-pair edge demand fits in B.
    fn injections(k: usize, n: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                injections(k, n, out, cur);
                cur.pop();
            }
        }
    }

    fn brute_weak(a: &FlowGraph, b: &FlowGraph) -> bool {
        let q = a.edge_count();
        let n = b.vertex_count();
        let mut cap = vec![0i32; n * n];
        for e in b.edges() {
            cap[e.tail * n + e.head] += 1;
        }
        for mask in 0u32..1 << q {
            let side = |id: usize| mask >> id & 1 == 1;
            let mut v1 = vec![a.source()];
            let mut v2 = vec![a.target()];
            for (id, e) in a.edges().iter().enumerate() {
                let v = if side(id) { &mut v1 } else { &mut v2 };
                v.extend([e.tail, e.head]);
            }
            for v in [&mut v1, &mut v2] {
                v.sort_unstable();
                v.dedup();
            }
            let connected = |vs: &[usize], want: bool| {
                let sub: Vec<Edge> = (0..q).filter(|&id| side(id) == want).map(|id| a.edge(id)).collect();
                let c = components(a.vertex_count(), &sub, None, None);
                vs.iter().all(|&v| c[v] == c[vs[0]])
            };
            if !connected(&v1, true) || !connected(&v2, false) {
                continue;
            }
            let (mut f1s, mut f2s) = (Vec::new(), Vec::new());
            injections(v1.len(), n, &mut f1s, &mut Vec::new());
            injections(v2.len(), n, &mut f2s, &mut Vec::new());
            let img = |vs: &[usize], f: &[usize], v: usize| f[vs.iter().position(|&x| x == v).unwrap()];
            for f1 in f1s.iter().filter(|f| img(&v1, f, a.source()) == b.source()) {
                for f2 in f2s.iter().filter(|f| img(&v2, f, a.target()) == b.target()) {
                    let mut need = cap.clone();
                    for (id, e) in a.edges().iter().enumerate() {
                        let (vs, f) = if side(id) { (&v1, f1) } else { (&v2, f2) };
                        need[img(vs, f, e.tail) * n + img(vs, f, e.head)] -= 1;
                    }
                    if need.iter().all(|&c| c >= 0) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn brute_strong(a: &FlowGraph, b: &FlowGraph) -> bool {
        let n = b.vertex_count();
        let mut fs = Vec::new();
        injections(a.vertex_count(), n, &mut fs, &mut Vec::new());
        let fits = |f: &Vec<usize>| {
            let mut cap = vec![0i32; n * n];
            for e in b.edges() {
                cap[e.tail * n + e.head] += 1;
            }
            for e in a.edges() {
                cap[f[e.tail] * n + f[e.head]] -= 1;
            }
            cap.iter().all(|&c| c >= 0)
        };
        fs.iter().any(|f| f[a.source()] == b.source() && fits(f))
            && fs.iter().any(|f| f[a.target()] == b.target() && fits(f))
    }

    #[test]
    fn deciders_match_brute_force() {
        let small = enumerate_flow_graphs(&UniverseSpec::new(2)).unwrap();
        let larger = enumerate_flow_graphs(&UniverseSpec::new(3)).unwrap();
        for a in &small {
            for b in &larger {
                assert_eq!(weak_leq(a, b).unwrap().is_some(), brute_weak(a, b), "{a:?} ⩽ {b:?}");
                assert_eq!(strong_leq(a, b).unwrap().is_some(), brute_strong(a, b), "{a:?} ⪯ {b:?}");
            }
        }
        for a in &larger {
            for b in &small {
                assert_eq!(weak_leq(a, b).unwrap().is_some(), brute_weak(a, b), "{a:?} ⩽ {b:?}");
            }
        }
    }
}
