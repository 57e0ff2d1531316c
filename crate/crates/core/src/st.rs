//! The st property: which edges lie on a simple undirected source–target path.

use crate::error::Result;
use crate::graph::{EdgeId, FlowGraph, VertexId};
use crate::limits::{Limits, Meter};

/// Per-edge outcome of the st check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StReport {
    /// `flags[e]` is true iff edge `e` lies on some simple s–t path in U(G).
    pub flags: Vec<bool>,
    /// For each flagged edge, one witnessing path as a sequence of edge ids
    /// starting at the source.
    pub witnesses: Vec<Option<Vec<EdgeId>>>,
}

impl StReport {
    /// True iff every edge is flagged; vacuously true for F₀.
    pub fn is_st(&self) -> bool {
        self.flags.iter().all(|&f| f)
    }
}

pub fn is_st_flow_graph(a: &FlowGraph) -> Result<bool> {
    Ok(st_report(a)?.is_st())
}

pub fn st_report(a: &FlowGraph) -> Result<StReport> {
    st_report_with(a, Limits::global())
}

pub fn st_report_with(a: &FlowGraph, limits: &Limits) -> Result<StReport> {
    let q = a.edge_count();
    let mut report = StReport {
        flags: vec![false; q],
        witnesses: vec![None; q],
    };
    if a.source() == a.target() {
        return Ok(report);
    }
    let mut dfs = PathSearch {
        graph: a,
        inc: a.incidence(),
        on_path: vec![false; a.vertex_count()],
        path: Vec::new(),
        report: &mut report,
        remaining: a.edges().iter().filter(|e| !e.is_loop()).count(),
        meter: limits.meter("st-property path search"),
    };
    dfs.on_path[a.source()] = true;
    dfs.walk(a.source())?;
    Ok(report)
}

struct PathSearch<'a> {
    graph: &'a FlowGraph,
    inc: Vec<Vec<(EdgeId, VertexId)>>,
    on_path: Vec<bool>,
    path: Vec<EdgeId>,
    report: &'a mut StReport,
    /// Non-loop edges not yet flagged; the search stops once this hits zero.
    remaining: usize,
    meter: Meter,
}

impl PathSearch<'_> {
    fn walk(&mut self, v: VertexId) -> Result<()> {
        self.meter.tick()?;
        if v == self.graph.target() {
            for &e in &self.path {
                if !self.report.flags[e] {
                    self.report.flags[e] = true;
                    self.report.witnesses[e] = Some(self.path.clone());
                    self.remaining -= 1;
                }
            }
            return Ok(());
        }
        // Only descend if the target is still reachable avoiding the path;
        // this keeps the search from wandering into dead ends.
        if !self.target_reachable(v) {
            return Ok(());
        }
        for i in 0..self.inc[v].len() {
            if self.remaining == 0 {
                break;
            }
            let (e, w) = self.inc[v][i];
            if self.on_path[w] {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(e);
            self.walk(w)?;
            self.path.pop();
            self.on_path[w] = false;
        }
        Ok(())
    }

    fn target_reachable(&self, from: VertexId) -> bool {
        let mut seen = self.on_path.clone();
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            for &(_, y) in &self.inc[x] {
                if y == self.graph.target() {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

/// Checks that `path` is a simple undirected source→target path in `a`.
pub fn verify_st_path(a: &FlowGraph, path: &[EdgeId]) -> bool {
    let mut at = a.source();
    let mut seen = vec![false; a.vertex_count()];
    seen[at] = true;
    for &id in path {
        if id >= a.edge_count() {
            return false;
        }
        let e = a.edge(id);
        if !e.touches(at) || e.is_loop() {
            return false;
        }
        at = e.other(at);
        if seen[at] {
            return false;
        }
        seen[at] = true;
    }
    at == a.target() && !path.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FlowGraph {
        FlowGraph::new(n + 1, (0..n).map(|i| (i, i + 1)), 0, n).unwrap()
    }

    /// All simple s–t paths by brute force over edge sequences.
    fn brute_flags(a: &FlowGraph) -> Vec<bool> {
        let mut flags = vec![false; a.edge_count()];
        fn go(a: &FlowGraph, path: &mut Vec<usize>, flags: &mut [bool]) {
            if path.len() > a.vertex_count() {
                return;
            }
            if !path.is_empty() && verify_st_path(a, path) {
                for &e in path.iter() {
                    flags[e] = true;
                }
            }
            for e in 0..a.edge_count() {
                if path.contains(&e) {
                    continue;
                }
                path.push(e);
                if is_prefix_simple(a, path) {
                    go(a, path, flags);
                }
                path.pop();
            }
        }
        fn is_prefix_simple(a: &FlowGraph, path: &[usize]) -> bool {
            let mut at = a.source();
            let mut seen = vec![false; a.vertex_count()];
            seen[at] = true;
            for &id in path {
                let e = a.edge(id);
                if !e.touches(at) || e.is_loop() {
                    return false;
                }
                at = e.other(at);
                if seen[at] {
                    return false;
                }
                seen[at] = true;
            }
            true
        }
        if a.source() != a.target() {
            go(a, &mut Vec::new(), &mut flags);
        }
        flags
    }

    #[test]
    fn chains_are_st() {
        assert!(is_st_flow_graph(&chain(5)).unwrap());
        assert!(is_st_flow_graph(&chain(0)).unwrap());
    }

    #[test]
    fn infinitesimals_are_not_st() {
        assert!(!is_st_flow_graph(&FlowGraph::unit_loop()).unwrap());
        let r = st_report(&FlowGraph::unit_loop()).unwrap();
        assert_eq!(r.flags, vec![false]);
    }

    #[test]
    fn pendant_edge_is_the_only_unflagged_one() {
        let a = FlowGraph::new(4, [(0, 1), (1, 2), (1, 3)], 0, 2).unwrap();
        let r = st_report(&a).unwrap();
        assert_eq!(r.flags, brute_flags(&a));
        assert_eq!(r.flags, vec![true, true, false]);
        assert!(!r.is_st());
    }

    #[test]
    fn witnesses_verify() {
        let a = FlowGraph::new(
            5,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (1, 1), (3, 1)],
            0,
            4,
        )
        .unwrap();
        let r = st_report(&a).unwrap();
        assert_eq!(r.flags, brute_flags(&a));
        for (e, w) in r.witnesses.iter().enumerate() {
            match w {
                Some(p) => {
                    assert!(r.flags[e]);
                    assert!(p.contains(&e));
                    assert!(verify_st_path(&a, p));
                }
                None => assert!(!r.flags[e]),
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let a = FlowGraph::new(3, [(0, 1), (1, 2), (0, 2)], 0, 2).unwrap();
        let tiny = Limits::default().with_node_budget(1);
        assert!(matches!(
            st_report_with(&a, &tiny),
            Err(crate::Error::SearchBudgetExceeded(_))
        ));
    }
}
