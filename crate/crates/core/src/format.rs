//! `.fg` text format and DOT export.
//!
//! ```text
//! fg 1
//! v 3
//! s 0
//! t 2
//! e 0 1
//! e 1 2
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::FlowGraph;

/// Serializes with edges sorted by `(tail, head)`.
pub fn write_fg(a: &FlowGraph) -> String {
    let mut out = format!(
        "fg 1\nv {}\ns {}\nt {}\n",
        a.vertex_count(),
        a.source(),
        a.target()
    );
    let mut edges = a.edges().to_vec();
    edges.sort();
    for e in edges {
        let _ = writeln!(out, "e {} {}", e.tail, e.head);
    }
    out
}

pub fn parse_fg(text: &str) -> Result<FlowGraph> {
    let mut header = false;
    let mut n: Option<usize> = None;
    let mut s: Option<usize> = None;
    let mut t: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let tag = words.next().unwrap();
        let nums: Vec<usize> = words
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| Error::format(line_no, format!("expected a decimal index, found `{w}`")))
            })
            .collect::<Result<_>>()?;
        let want = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::format(line_no, format!("`{tag}` takes {k} argument(s)")))
            }
        };
        if !header {
            if tag != "fg" {
                return Err(Error::format(line_no, "missing `fg 1` header"));
            }
            want(1)?;
            if nums[0] != 1 {
                return Err(Error::format(line_no, format!("unsupported format version {}", nums[0])));
            }
            header = true;
            continue;
        }
        match tag {
            "v" if n.is_none() => {
                want(1)?;
                n = Some(nums[0]);
            }
            "s" if n.is_some() && s.is_none() => {
                want(1)?;
                s = Some(check_index(nums[0], n, line_no)?);
            }
            "t" if s.is_some() && t.is_none() => {
                want(1)?;
                t = Some(check_index(nums[0], n, line_no)?);
            }
            "e" if t.is_some() => {
                want(2)?;
                let u = check_index(nums[0], n, line_no)?;
                let v = check_index(nums[1], n, line_no)?;
                edges.push((u, v));
            }
            "v" | "s" | "t" | "e" => {
                return Err(Error::format(line_no, format!("`{tag}` line out of order")));
            }
            other => return Err(Error::format(line_no, format!("unknown record `{other}`"))),
        }
    }
    let (Some(n), Some(s), Some(t)) = (n, s, t) else {
        return Err(Error::format(last_line.max(1), "incomplete header: need `v`, `s` and `t` lines"));
    };
    FlowGraph::new(n, edges, s, t).map_err(|e| match e {
        Error::Validation(m) => Error::format(last_line.max(1), m),
        other => other,
    })
}

fn check_index(x: usize, n: Option<usize>, line: usize) -> Result<usize> {
    let n = n.unwrap_or(0);
    if x < n {
        Ok(x)
    } else {
        Err(Error::format(line, format!("vertex {x} out of range for {n} vertices")))
    }
}

/// Graphviz rendering for inspection; not meant to be parsed back.
pub fn to_dot(a: &FlowGraph) -> String {
    let mut out = String::from("digraph flow {\n");
    for v in 0..a.vertex_count() {
        let label = match (v == a.source(), v == a.target()) {
            (true, true) => Some("s=t"),
            (true, false) => Some("s"),
            (false, true) => Some("t"),
            _ => None,
        };
        match label {
            Some(l) => {
                let _ = writeln!(out, "  {v} [label=\"{l}\"];");
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    let mut edges = a.edges().to_vec();
    edges.sort();
    for e in edges {
        let _ = writeln!(out, "  {} -> {};", e.tail, e.head);
    }
    out.push_str("}\n");
    out
}
