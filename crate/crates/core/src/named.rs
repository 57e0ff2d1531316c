//! Small flow graphs that keep coming up.

use crate::graph::{Edge, FlowGraph};

/// Fₙ: the directed chain 0 → 1 → … → n with s = 0, t = n.
pub fn nat(n: usize) -> FlowGraph {
    FlowGraph::from_parts(n + 1, (0..n).map(|i| Edge::new(i, i + 1)).collect(), 0, n)
}

/// A single edge 0 → 1 read backwards: s = 1, t = 0.
pub fn rev() -> FlowGraph {
    FlowGraph::from_parts(2, vec![Edge::new(0, 1)], 1, 0)
}

/// A single edge with both anchors on its tail.
pub fn tail_loop() -> FlowGraph {
    FlowGraph::from_parts(2, vec![Edge::new(0, 1)], 0, 0)
}

/// A single edge with both anchors on its head.
pub fn head_loop() -> FlowGraph {
    FlowGraph::from_parts(2, vec![Edge::new(0, 1)], 1, 1)
}

/// The five one-edge flow graphs: F₁, its reversal, C₁, and the edge
/// anchored at its tail or head.
pub fn one_edge_graphs() -> [FlowGraph; 5] {
    [nat(1), rev(), FlowGraph::unit_loop(), tail_loop(), head_loop()]
}

/// One vertex carrying `q` loops.
pub fn bouquet(q: usize) -> FlowGraph {
    FlowGraph::from_parts(1, vec![Edge::new(0, 0); q], 0, 0)
}

/// Centre 0 with `q` outgoing spokes, s = t = 0.
pub fn out_star(q: usize) -> FlowGraph {
    FlowGraph::from_parts(q + 1, (1..=q).map(|i| Edge::new(0, i)).collect(), 0, 0)
}

/// Centre 0 with `q` incoming spokes, s = t = 0.
pub fn in_star(q: usize) -> FlowGraph {
    FlowGraph::from_parts(q + 1, (1..=q).map(|i| Edge::new(i, 0)).collect(), 0, 0)
}

/// Directed cycle 0 → 1 → … → n−1 → 0 with the given anchors.
pub fn cycle(n: usize, s: usize, t: usize) -> FlowGraph {
    assert!(n >= 1 && s < n && t < n);
    FlowGraph::from_parts(n, (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect(), s, t)
}
