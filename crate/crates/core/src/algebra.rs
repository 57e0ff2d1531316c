//! Sum, product, scalar operations, division and primality.

use crate::canon::{canonical_graph, canonical_key};
use crate::embed::{isomorphic, VertexMap};
use crate::error::{Error, Result};
use crate::explorer::enumerate::level_with;
use crate::graph::{Edge, EdgeId, FlowGraph, VertexId};
use crate::limits::Limits;
use crate::named::{bouquet, head_loop, one_edge_graphs, tail_loop};
use crate::par::{self, Exec};

pub use crate::named::nat;

/// A ⊕ B with its two plus-injections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult {
    pub sum: FlowGraph,
    pub left_map: VertexMap,
    pub right_map: VertexMap,
}

/// Labels: A's vertices keep their ids, B's non-source vertices follow in
/// order; B's source is identified with A's target. Edges: A's, then B's.
pub fn oplus(a: &FlowGraph, b: &FlowGraph) -> SumResult {
    let pa = a.vertex_count();
    let b_vertex = right_vertex_map(a, b);
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|e| Edge::new(b_vertex[e.tail], b_vertex[e.head])));
    let n = pa + b.vertex_count() - 1;
    let sum = FlowGraph::from_parts(n, edges, a.source(), b_vertex[b.target()]);
    SumResult {
        sum,
        left_map: VertexMap::identity(a),
        right_map: VertexMap {
            vertices: b_vertex,
            edges: (a.edge_count()..a.edge_count() + b.edge_count()).collect(),
        },
    }
}

fn right_vertex_map(a: &FlowGraph, b: &FlowGraph) -> Vec<VertexId> {
    let mut next = a.vertex_count();
    (0..b.vertex_count())
        .map(|v| {
            if v == b.source() {
                a.target()
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

/// A ⊕ B without the injections.
pub fn plus(a: &FlowGraph, b: &FlowGraph) -> FlowGraph {
    oplus(a, b).sum
}

/// A ⊗ B with the edge bijection Λ and the vertex embeddings it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductResult {
    pub product: FlowGraph,
    /// `edge_bijection[f] = (e, g)`: product edge `f` is the copy of B's
    /// edge `g` substituted for A's edge `e`.
    pub edge_bijection: Vec<(EdgeId, EdgeId)>,
    /// Image of each vertex of A.
    pub outer: Vec<VertexId>,
    /// `copies[e * p_B + v]`: image of B's vertex `v` in the copy for A's edge `e`.
    pub copies: Vec<VertexId>,
}

impl ProductResult {
    pub fn copy_vertex(&self, b: &FlowGraph, e: EdgeId, v: VertexId) -> VertexId {
        self.copies[e * b.vertex_count() + v]
    }
}

/// A ⊗ B with edges of A substituted in id order.
pub fn otimes(a: &FlowGraph, b: &FlowGraph) -> ProductResult {
    let eta: Vec<EdgeId> = (0..a.edge_count()).collect();
    product(a, b, &eta)
}

/// A ⊗ B substituting A's edges in the order `eta` (a permutation of
/// A's edge ids). Vertex labels and edge ids follow that order.
pub fn otimes_with_order(a: &FlowGraph, b: &FlowGraph, eta: &[EdgeId]) -> Result<ProductResult> {
    let mut seen = vec![false; a.edge_count()];
    if eta.len() != a.edge_count() || !eta.iter().all(|&e| e < seen.len() && !std::mem::replace(&mut seen[e], true)) {
        return Err(Error::Domain("edge enumeration is not a permutation of the edge ids".into()));
    }
    Ok(product(a, b, eta))
}

/// A ⊗ B without the bookkeeping.
pub fn times(a: &FlowGraph, b: &FlowGraph) -> FlowGraph {
    otimes(a, b).product
}

fn product(a: &FlowGraph, b: &FlowGraph, eta: &[EdgeId]) -> ProductResult {
    let (pa, pb) = (a.vertex_count(), b.vertex_count());
    // Raw vertex space: A's vertices, then one block of p_B per copy.
    let total = pa + eta.len() * pb;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let union = |p: &mut Vec<usize>, x: usize, y: usize| {
        let (rx, ry) = (find(p, x), find(p, y));
        if rx != ry {
            p[rx.max(ry)] = rx.min(ry);
        }
    };
    for (k, &e) in eta.iter().enumerate() {
        let base = pa + k * pb;
        let edge = a.edge(e);
        union(&mut parent, base + b.source(), edge.tail);
        union(&mut parent, base + b.target(), edge.head);
    }
    let mut label = vec![usize::MAX; total];
    let mut n = 0;
    for x in 0..total {
        let r = find(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = n;
            n += 1;
        }
        label[x] = label[r];
    }
    let mut edges = Vec::with_capacity(eta.len() * b.edge_count());
    let mut bijection = Vec::with_capacity(edges.capacity());
    let mut copies = vec![0; a.edge_count() * pb];
    for (k, &e) in eta.iter().enumerate() {
        let base = pa + k * pb;
        for v in 0..pb {
            copies[e * pb + v] = label[base + v];
        }
        for (g, be) in b.edges().iter().enumerate() {
            edges.push(Edge::new(label[base + be.tail], label[base + be.head]));
            bijection.push((e, g));
        }
    }
    let outer: Vec<VertexId> = label[..pa].to_vec();
    let product = FlowGraph::from_parts(n, edges, outer[a.source()], outer[a.target()]);
    ProductResult {
        product,
        edge_bijection: bijection,
        outer,
        copies,
    }
}

/// (vertices, edges) of A ⊕ B by the counting formulas.
pub fn sum_counts(a: &FlowGraph, b: &FlowGraph) -> (usize, usize) {
    (a.vertex_count() + b.vertex_count() - 1, a.edge_count() + b.edge_count())
}

/// (vertices, edges) of A ⊗ B by the counting formulas.
pub fn product_counts(a: &FlowGraph, b: &FlowGraph) -> (usize, usize) {
    let (pa, qa, pb, qb) = (a.vertex_count(), a.edge_count(), b.vertex_count(), b.edge_count());
    let p = if b.is_trivial() || b.is_infinitesimal() {
        1 + qa * (pb - 1)
    } else {
        pa + qa * (pb - 2)
    };
    (p, qa * qb)
}

/// kA = (k−1)A ⊕ A.
pub fn scalar_multiple(k: usize, a: &FlowGraph) -> Result<FlowGraph> {
    if k == 0 {
        return Err(Error::Domain("scalar multiple needs k ≥ 1".into()));
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = plus(&acc, a);
    }
    Ok(acc)
}

/// The mirrored definition kA = A ⊕ (k−1)A.
pub fn scalar_multiple_left(k: usize, a: &FlowGraph) -> Result<FlowGraph> {
    if k == 0 {
        return Err(Error::Domain("scalar multiple needs k ≥ 1".into()));
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = plus(a, &acc);
    }
    Ok(acc)
}

/// A^k = A^(k−1) ⊗ A.
pub fn scalar_power(a: &FlowGraph, k: usize) -> Result<FlowGraph> {
    if k == 0 {
        return Err(Error::Domain("scalar power needs k ≥ 1".into()));
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = times(&acc, a);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// A / B = C with A = C ⊗ B.
    Right,
    /// A \ B = C with A = B ⊗ C.
    Left,
}

impl Side {
    fn combine(self, b: &FlowGraph, c: &FlowGraph) -> FlowGraph {
        match self {
            Side::Right => times(c, b),
            Side::Left => times(b, c),
        }
    }
}

/// C with A ≅ C ⊗ B, smallest canonical key first.
pub fn right_divide(a: &FlowGraph, b: &FlowGraph) -> Result<Option<FlowGraph>> {
    divide(a, b, Side::Right, Limits::global())
}

/// C with A ≅ B ⊗ C, smallest canonical key first.
pub fn left_divide(a: &FlowGraph, b: &FlowGraph) -> Result<Option<FlowGraph>> {
    divide(a, b, Side::Left, Limits::global())
}

pub fn divide(a: &FlowGraph, b: &FlowGraph, side: Side, limits: &Limits) -> Result<Option<FlowGraph>> {
    if let Some(r) = degenerate_quotient(a, b)? {
        return Ok(r.into_iter().next());
    }
    let qc = a.edge_count() / b.edge_count();
    if qc >= 2 && b.edge_count() == 1 {
        // closed forms for one-edge divisors, confirmed by multiplying back
        let c = one_edge_quotient(a, b, side)?;
        return Ok(match c {
            Some(c) if isomorphic(&side.combine(b, &c), a) => Some(canonical_graph(&c)?),
            _ => None,
        });
    }
    let cands = candidates(a, b, side, qc, limits)?;
    let hit = par::find_first(Exec::default(), cands.len(), |i| {
        isomorphic(&side.combine(b, &cands[i]), a).then_some(())
    });
    Ok(hit.map(|(i, ())| cands[i].clone()))
}

/// Every quotient class, ascending by canonical key.
pub fn all_quotients(a: &FlowGraph, b: &FlowGraph, side: Side, limits: &Limits) -> Result<Vec<FlowGraph>> {
    if let Some(r) = degenerate_quotient(a, b)? {
        return Ok(r);
    }
    let qc = a.edge_count() / b.edge_count();
    let cands = candidates(a, b, side, qc, limits)?;
    let ok = par::map_collect(Exec::default(), cands.len(), |i| {
        isomorphic(&side.combine(b, &cands[i]), a)
    });
    Ok(cands.into_iter().zip(ok).filter(|p| p.1).map(|p| p.0).collect())
}

/// Answers for trivial operands and impossible edge counts; `None` means
/// the general search has to run.
fn degenerate_quotient(a: &FlowGraph, b: &FlowGraph) -> Result<Option<Vec<FlowGraph>>> {
    match (a.is_trivial(), b.is_trivial()) {
        (true, true) => Err(Error::Domain("0/0 is undefined".into())),
        // C ⊗ F₀ and F₀ ⊗ C are always trivial
        (false, true) => Ok(Some(Vec::new())),
        // a product is trivial iff a factor is, and B is not
        (true, false) => Ok(Some(vec![FlowGraph::trivial()])),
        (false, false) if !a.edge_count().is_multiple_of(b.edge_count()) => Ok(Some(Vec::new())),
        _ => Ok(None),
    }
}

/// Candidate quotients with `qc` edges that pass the counting filters,
/// ascending by canonical key.
fn candidates(a: &FlowGraph, b: &FlowGraph, side: Side, qc: usize, limits: &Limits) -> Result<Vec<FlowGraph>> {
    if qc == 1 {
        let mut v: Vec<_> = one_edge_graphs()
            .into_iter()
            .map(|g| Ok((canonical_key(&g)?, g)))
            .collect::<Result<_>>()?;
        v.sort_by(|x, y| x.0.cmp(&y.0));
        return Ok(v.into_iter().map(|p| p.1).filter(|c| counts_fit(a, b, c, side)).collect());
    }
    limits.check_enum_edges(qc)?;
    let level = level_with(qc, limits)?;
    Ok(level.graphs.iter().filter(|c| counts_fit(a, b, c, side)).cloned().collect())
}

fn counts_fit(a: &FlowGraph, b: &FlowGraph, c: &FlowGraph, side: Side) -> bool {
    let (x, y) = match side {
        Side::Right => (c, b),
        Side::Left => (b, c),
    };
    let inf = x.is_infinitesimal() || y.is_infinitesimal();
    product_counts(x, y) == (a.vertex_count(), a.edge_count()) && inf == a.is_infinitesimal()
}

/// Smallest-key candidate for a one-edge divisor B.
fn one_edge_quotient(a: &FlowGraph, b: &FlowGraph, side: Side) -> Result<Option<FlowGraph>> {
    let q = a.edge_count();
    let [f1, rev, c1, lt, lh] = one_edge_graphs();
    let c = match side {
        Side::Right => {
            if isomorphic(b, &f1) {
                a.clone()
            } else if isomorphic(b, &rev) {
                a.reversed()
            } else if isomorphic(b, &c1) || isomorphic(b, &lt) || isomorphic(b, &lh) {
                // C ⊗ B collapses C to a bouquet / star whatever C is
                bouquet(q)
            } else {
                return Ok(None);
            }
        }
        Side::Left => {
            if isomorphic(b, &f1) {
                a.clone()
            } else if isomorphic(b, &rev) {
                a.swapped()
            } else if isomorphic(b, &c1) {
                // C₁ ⊗ C merges s_C with t_C; A itself is the only
                // candidate with as few vertices as A
                a.clone()
            } else if isomorphic(b, &lt) {
                // Lt ⊗ C = (G_C, s_C, s_C)
                min_key((0..a.vertex_count()).map(|t| a.with_anchors(a.source(), t)))?
            } else if isomorphic(b, &lh) {
                min_key((0..a.vertex_count()).map(|s| a.with_anchors(s, a.target())))?
            } else {
                return Ok(None);
            }
        }
    };
    Ok(Some(c))
}

fn min_key(gs: impl Iterator<Item = Result<FlowGraph>>) -> Result<FlowGraph> {
    let mut best: Option<(crate::CanonicalKey, FlowGraph)> = None;
    for g in gs {
        let g = g?;
        let k = canonical_key(&g)?;
        if best.as_ref().is_none_or(|b| k < b.0) {
            best = Some((k, g));
        }
    }
    Ok(best.expect("at least one vertex").1)
}

/// F₁ and its reversal: the only flow graphs with a two-sided ⊗-inverse.
pub fn is_unit(a: &FlowGraph) -> bool {
    a.edge_count() == 1 && !a.is_infinitesimal()
}

/// Prime: nontrivial, not a unit, and every factorization A ≅ C ⊗ B has a
/// unit factor. Decided by right division.
pub fn is_prime(a: &FlowGraph) -> Result<bool> {
    is_prime_on(a, Side::Right, Limits::global())
}

pub fn is_right_prime(a: &FlowGraph) -> Result<bool> {
    is_prime_on(a, Side::Right, Limits::global())
}

pub fn is_left_prime(a: &FlowGraph) -> Result<bool> {
    is_prime_on(a, Side::Left, Limits::global())
}

pub fn is_prime_on(a: &FlowGraph, side: Side, limits: &Limits) -> Result<bool> {
    if a.is_trivial() || is_unit(a) {
        return Ok(false);
    }
    Ok(!has_proper_factorization(a, side, limits)?)
}

/// Whether A ≅ C ⊗ B with neither factor a unit, searching over the
/// divisor on `side` (B for right division, the left factor for left).
fn has_proper_factorization(a: &FlowGraph, side: Side, limits: &Limits) -> Result<bool> {
    let q = a.edge_count();
    let non_units = [FlowGraph::unit_loop(), tail_loop(), head_loop()];

    // The divisor has one edge: divide by each non-unit one-edge graph.
    for d in &non_units {
        let quotients = if q == 1 {
            all_quotients(a, d, side, limits)?
        } else {
            divide(a, d, side, limits)?.into_iter().collect()
        };
        if quotients.iter().any(|c| !is_unit(c)) {
            return Ok(true);
        }
    }

    // The divisor has all q edges, so the quotient is a one-edge non-unit.
    // For right division C ⊗ B with C ∈ {C₁, Lt, Lh} only depends on G_B and
    // one anchor, so B = A is a witness whenever any B is; for left division
    // B ⊗ C is a bouquet or star whatever B is.
    let whole = match side {
        Side::Right => non_units.iter().any(|c| isomorphic(&times(c, a), a)),
        Side::Left => {
            let rep = if q == 1 { FlowGraph::unit_loop() } else { bouquet(q) };
            non_units.iter().any(|c| isomorphic(&times(&rep, c), a))
        }
    };
    if whole {
        return Ok(true);
    }

    // Proper divisors with at least two edges on both sides.
    for d in 2..q {
        if !q.is_multiple_of(d) || q / d < 2 {
            continue;
        }
        limits.check_enum_edges(d)?;
        let divisors = level_with(d, limits)?;
        let hit = par::try_find_first(Exec::default(), divisors.graphs.len(), |i| {
            Ok::<_, Error>(divide(a, &divisors.graphs[i], side, limits)?.map(|_| ()))
        })?;
        if hit.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}
