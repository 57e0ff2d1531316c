//! The search engine behind the law suite: a universe with lazily filled
//! caches, and an exhaustive tuple scan that grows the edge bound one step
//! at a time so the first counterexample reported is a smallest one.

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use crate::algebra::{divide, Side};
use crate::canon::{canonical_key, CanonicalKey};
use crate::decomposition::{canonical_decomposition, DecompositionSeq};
use crate::embed::isomorphic;
use crate::error::{Error, Result};
use crate::format::{parse_fg, write_fg};
use crate::graph::FlowGraph;
use crate::limits::Limits;
use crate::order::{strong_leq_with, weak_leq_with, StrongWitness, WeakWitness};
use crate::par::{self, Exec};
use crate::st::is_st_flow_graph;

use super::enumerate::{level, UniverseSpec};
use super::laws::{find_law, Expectation, Law, Source};
use super::report::{LawReport, NamedCheck, Verdict};

/// Outcome of a law on one tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    /// The hypotheses do not apply.
    Vacuous,
    Satisfied,
    Violated,
}

impl Check {
    pub fn holds(ok: bool) -> Check {
        if ok {
            Check::Satisfied
        } else {
            Check::Violated
        }
    }
}

type PairMemo<V> = Mutex<HashMap<(usize, usize), V>>;

fn memo<K: Hash + Eq, V: Clone>(m: &Mutex<HashMap<K, V>>, k: K, f: impl FnOnce() -> Result<V>) -> Result<V> {
    if let Some(v) = m.lock().unwrap().get(&k) {
        return Ok(v.clone());
    }
    let v = f()?;
    m.lock().unwrap().insert(k, v.clone());
    Ok(v)
}

fn cached<T>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

/// Memoized yes/no answers for ordered pairs: a dense byte table for small
/// universes, a map otherwise.
struct PairFlags {
    n: usize,
    dense: Vec<AtomicU8>,
    sparse: PairMemo<bool>,
}

const DENSE_PAIRS: usize = 1 << 25;

impl PairFlags {
    fn new(n: usize) -> PairFlags {
        let dense = if n * n <= DENSE_PAIRS {
            (0..n * n).map(|_| AtomicU8::new(0)).collect()
        } else {
            Vec::new()
        };
        PairFlags {
            n,
            dense,
            sparse: Mutex::default(),
        }
    }

    fn get(&self, i: usize, j: usize, f: impl FnOnce() -> Result<bool>) -> Result<bool> {
        if self.dense.is_empty() {
            return memo(&self.sparse, (i, j), f);
        }
        let cell = &self.dense[i * self.n + j];
        match cell.load(Ordering::Relaxed) {
            1 => Ok(false),
            2 => Ok(true),
            _ => {
                let v = f()?;
                cell.store(1 + v as u8, Ordering::Relaxed);
                Ok(v)
            }
        }
    }
}

/// A list of flow graphs plus per-graph and per-pair caches. Laws address
/// graphs by index.
pub struct Ctx {
    pub graphs: Vec<FlowGraph>,
    pub limits: Limits,
    st: Vec<OnceLock<Result<bool>>>,
    decomp: Vec<OnceLock<DecompositionSeq>>,
    roots: Vec<OnceLock<Result<Vec<CanonicalKey>>>>,
    strong: PairFlags,
    weak: PairFlags,
    strong_w: PairMemo<Option<Arc<StrongWitness>>>,
    weak_w: PairMemo<Option<Arc<WeakWitness>>>,
    quotients: Mutex<HashMap<(bool, usize, usize), Quotient>>,
}

type Quotient = Option<Arc<FlowGraph>>;

impl Ctx {
    pub fn new(graphs: Vec<FlowGraph>, limits: Limits) -> Ctx {
        let n = graphs.len();
        Ctx {
            graphs,
            limits,
            st: (0..n).map(|_| OnceLock::new()).collect(),
            decomp: (0..n).map(|_| OnceLock::new()).collect(),
            roots: (0..n).map(|_| OnceLock::new()).collect(),
            strong: PairFlags::new(n),
            weak: PairFlags::new(n),
            strong_w: Mutex::default(),
            weak_w: Mutex::default(),
            quotients: Mutex::default(),
        }
    }

    pub fn g(&self, i: usize) -> &FlowGraph {
        &self.graphs[i]
    }

    pub fn is_st(&self, i: usize) -> Result<bool> {
        cached(&self.st[i], || is_st_flow_graph(&self.graphs[i])).copied()
    }

    pub fn decomposition(&self, i: usize) -> &DecompositionSeq {
        self.decomp[i].get_or_init(|| canonical_decomposition(&self.graphs[i]))
    }

    /// Keys of every C with A ≅ k·C for some k ≥ 1.
    pub fn roots(&self, i: usize) -> Result<&Vec<CanonicalKey>> {
        cached(&self.roots[i], || super::laws::roots_of(&self.graphs[i]))
    }

    pub fn strong_holds(&self, i: usize, j: usize) -> Result<bool> {
        self.strong.get(i, j, || {
            Ok(strong_leq_with(&self.graphs[i], &self.graphs[j], &self.limits)?.is_some())
        })
    }

    pub fn weak_holds(&self, i: usize, j: usize) -> Result<bool> {
        self.weak.get(i, j, || {
            Ok(weak_leq_with(&self.graphs[i], &self.graphs[j], &self.limits)?.is_some())
        })
    }

    pub fn strong_witness(&self, i: usize, j: usize) -> Result<Option<Arc<StrongWitness>>> {
        if !self.strong_holds(i, j)? {
            return Ok(None);
        }
        memo(&self.strong_w, (i, j), || {
            Ok(strong_leq_with(&self.graphs[i], &self.graphs[j], &self.limits)?.map(Arc::new))
        })
    }

    pub fn weak_witness(&self, i: usize, j: usize) -> Result<Option<Arc<WeakWitness>>> {
        if !self.weak_holds(i, j)? {
            return Ok(None);
        }
        memo(&self.weak_w, (i, j), || {
            Ok(weak_leq_with(&self.graphs[i], &self.graphs[j], &self.limits)?.map(Arc::new))
        })
    }

    /// A/B (right) or A\B (left). Undefined quotients (0/0) count as
    /// non-existent.
    pub fn quotient(&self, a: usize, b: usize, side: Side) -> Result<Option<Arc<FlowGraph>>> {
        memo(&self.quotients, (side == Side::Right, a, b), || {
            match divide(&self.graphs[a], &self.graphs[b], side, &self.limits) {
                Ok(q) => Ok(q.map(Arc::new)),
                Err(Error::Domain(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
    }
}

/// How a run is carried out.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub exec: Exec,
    pub limits: Limits,
    /// Most tuples a single law may examine. A law expected to hold that
    /// would exceed it fails with `SearchBudgetExceeded`; a counterexample
    /// search stops and says how far it got.
    pub max_tuples: u64,
    /// Budget of pairs for the laws searched by key collision.
    pub max_pairs: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            exec: Exec::default(),
            limits: *Limits::global(),
            max_tuples: 300_000_000,
            max_pairs: 6_000_000,
        }
    }
}

/// Result of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scan {
    pub examined: u64,
    pub non_vacuous: u64,
    pub violation: Option<Vec<usize>>,
    /// Largest stage fully examined (`None` if not even stage 0).
    pub completed_stage: Option<usize>,
    /// Whether the scan stopped because the next stage was too large.
    pub truncated: bool,
}

const CHUNK: u64 = 1 << 14;

/// Scans tuples of indices into a list whose stage `k` ends at
/// `stage_ends[k]` (stages nest). Within stage `k` only tuples with at
/// least one index at or beyond `stage_ends[k-1]` are new; they are
/// visited in lexicographic order. Stops at the first violation, or when
/// `opts.max_tuples` tuples have been examined.
pub fn scan(
    arity: usize,
    stage_ends: &[usize],
    opts: &RunOptions,
    eval: impl Fn(&[usize]) -> Result<Check> + Sync,
) -> Result<Scan> {
    let mut out = Scan {
        examined: 0,
        non_vacuous: 0,
        violation: None,
        completed_stage: None,
        truncated: false,
    };
    let mut lo = 0usize;
    for (stage, &hi) in stage_ends.iter().enumerate() {
        let total = (hi as u64).checked_pow(arity as u32).unwrap_or(u64::MAX);
        let decode = |mut x: u64| -> Vec<usize> {
            let mut t = vec![0; arity];
            for d in (0..arity).rev() {
                t[d] = (x % hi as u64) as usize;
                x /= hi as u64;
            }
            t
        };
        let mut start = 0u64;
        while start < total {
            // skip runs of old tuples without decoding them one by one
            let head = decode(start);
            if arity > 0 && head[..arity - 1].iter().all(|&i| i < lo) && head[arity - 1] < lo {
                start += (lo - head[arity - 1]) as u64;
                continue;
            }
            if out.examined >= opts.max_tuples {
                out.truncated = true;
                return Ok(out);
            }
            let budget = opts.max_tuples - out.examined;
            let end = (start + CHUNK).min(total).min(start.saturating_add(budget));
            let results = par::map_collect(opts.exec, (end - start) as usize, |k| {
                let t = decode(start + k as u64);
                if t.iter().all(|&i| i < lo) {
                    return Ok(None);
                }
                eval(&t).map(Some)
            });
            for (k, r) in results.into_iter().enumerate() {
                let Some(c) = r? else { continue };
                out.examined += 1;
                match c {
                    Check::Vacuous => {}
                    Check::Satisfied => out.non_vacuous += 1,
                    Check::Violated => {
                        out.non_vacuous += 1;
                        out.violation = Some(decode(start + k as u64));
                        return Ok(out);
                    }
                }
            }
            start = end;
        }
        out.completed_stage = Some(stage);
        lo = hi;
    }
    Ok(out)
}

/// Scans pairs (A, B) for two B's with isomorphic `combine(A, B)`: a
/// triple (A, B, C) with B ≇ C and combine(A, B) ≅ combine(A, C) is
/// reported as the violation. Equivalent to scanning all triples, but
/// quadratic: each pair is hashed by the canonical key of its image.
/// Stages and ordering are as in [`scan`], with pairs in place of tuples
/// and `opts.max_pairs` as the budget.
pub fn collide_scan(
    graphs: &[FlowGraph],
    stage_ends: &[usize],
    opts: &RunOptions,
    combine: fn(&FlowGraph, &FlowGraph) -> FlowGraph,
) -> Result<Scan> {
    let mut out = Scan {
        examined: 0,
        non_vacuous: 0,
        violation: None,
        completed_stage: None,
        truncated: false,
    };
    // (A, hash of key) → the B's seen so far with that image
    let mut seen: HashMap<(u32, u64), Vec<u32>> = HashMap::new();
    let mut lo = 0usize;
    for (stage, &hi) in stage_ends.iter().enumerate() {
        for a in 0..hi {
            let first = if a >= lo { 0 } else { lo };
            if first >= hi {
                continue;
            }
            if out.examined >= opts.max_pairs {
                out.truncated = true;
                return Ok(out);
            }
            let take = ((hi - first) as u64).min(opts.max_pairs - out.examined) as usize;
            let hashes = par::map_collect(opts.exec, take, |k| {
                let key = canonical_key(&combine(&graphs[a], &graphs[first + k]))?;
                let mut h = DefaultHasher::new();
                key.hash(&mut h);
                Ok::<_, Error>(h.finish())
            });
            for (k, h) in hashes.into_iter().enumerate() {
                let b = first + k;
                out.examined += 1;
                let bucket = seen.entry((a as u32, h?)).or_default();
                let image = combine(&graphs[a], &graphs[b]);
                if let Some(&c) = bucket.iter().find(|&&c| isomorphic(&combine(&graphs[a], &graphs[c as usize]), &image)) {
                    out.non_vacuous += 1;
                    out.violation = Some(vec![a, c as usize, b]);
                    return Ok(out);
                }
                bucket.push(b as u32);
            }
            if take < hi - first {
                out.truncated = true;
                return Ok(out);
            }
        }
        out.completed_stage = Some(stage);
        lo = hi;
    }
    Ok(out)
}

/// Graphs admitted by `spec`, ordered by edge count then canonical key,
/// with the end index of each edge count.
pub fn universe(spec: &UniverseSpec) -> Result<(Vec<FlowGraph>, Vec<usize>)> {
    let mut graphs = Vec::new();
    let mut ends = Vec::new();
    for q in 0..=spec.max_edges {
        for g in &level(q)?.graphs {
            if spec.admits(g)? {
                graphs.push(g.clone());
            }
        }
        ends.push(graphs.len());
    }
    Ok((graphs, ends))
}

/// Re-evaluates a tuple given as `.fg` text, from scratch.
pub fn reevaluate(law: &Law, tuple: &[String], limits: &Limits) -> Result<Check> {
    let graphs = tuple.iter().map(|t| parse_fg(t)).collect::<Result<Vec<_>>>()?;
    let ctx = Ctx::new(graphs, *limits);
    let idx: Vec<usize> = (0..tuple.len()).collect();
    law.eval(&ctx, &idx)
}

pub fn check_law(law_id: &str, spec: &UniverseSpec) -> Result<LawReport> {
    check_law_with(law_id, spec, &RunOptions::default())
}

/// Runs one law over the universe `spec` (intersected with the law's own
/// restriction to st-flow graphs, if any).
pub fn check_law_with(law_id: &str, spec: &UniverseSpec, opts: &RunOptions) -> Result<LawReport> {
    let law = find_law(law_id).ok_or_else(|| Error::UnknownLaw(law_id.to_string()))?;
    let started = Instant::now();
    let mut universe_spec = *spec;
    universe_spec.st_only |= law.st_only;
    let (graphs, ends) = match law.source {
        Source::Universe => universe(&universe_spec)?,
        Source::Chains(n) => {
            universe_spec = UniverseSpec::new(n);
            ((0..=n).map(crate::named::nat).collect(), (1..=n + 1).collect())
        }
    };
    let ctx = Ctx::new(graphs, opts.limits);
    let scan = match law.collide {
        Some(combine) => collide_scan(&ctx.graphs, &ends, opts, combine)?,
        None => scan(law.arity, &ends, opts, |t| law.eval(&ctx, t))?,
    };
    if scan.truncated && scan.violation.is_none() && law.expectation == Expectation::Holds {
        return Err(Error::SearchBudgetExceeded(format!(
            "law `{}` needs more than {} tuples at ≤{} edges",
            law.id,
            if law.collide.is_some() { opts.max_pairs } else { opts.max_tuples },
            universe_spec.max_edges
        )));
    }

    let counterexample: Option<Vec<String>> = scan
        .violation
        .as_ref()
        .map(|t| t.iter().map(|&i| write_fg(ctx.g(i))).collect());
    let reverified = match &counterexample {
        Some(ce) => Some(reevaluate(law, ce, &opts.limits)? == Check::Violated),
        None => None,
    };
    let named_instance = match law.named {
        Some(make) => {
            let tuple: Vec<String> = make().iter().map(write_fg).collect();
            let violated = reevaluate(law, &tuple, &opts.limits)? == Check::Violated;
            Some(NamedCheck { tuple, violated })
        }
        None => None,
    };
    let found = counterexample.is_some();
    let verdict = match law.expectation {
        Expectation::Holds if found => Verdict::CounterexampleFound,
        Expectation::Holds => Verdict::Holds,
        Expectation::Fails if named_instance.as_ref().is_some_and(|n| !n.violated) => {
            Verdict::NamedInstanceNotConfirmed
        }
        Expectation::Fails if found => Verdict::ExpectedFailureConfirmed,
        Expectation::Fails => Verdict::NoCounterexampleFound,
    };
    let elapsed = started.elapsed();
    Ok(LawReport {
        law: law.id.to_string(),
        statement: law.statement.to_string(),
        universe: universe_spec,
        searched_up_to: scan.completed_stage,
        instances_checked: scan.non_vacuous,
        tuples_examined: scan.examined,
        verdict,
        counterexample,
        reverified,
        named_instance,
        elapsed_ms: None,
        elapsed,
    })
}

/// First tuple (smallest edge bound first, then lexicographic by
/// canonical order) on which `holds` is false. The hit is re-checked on
/// graphs parsed back from their `.fg` text before it is returned.
pub fn find_counterexample<F>(holds: F, arity: usize, spec: &UniverseSpec) -> Result<Option<Vec<FlowGraph>>>
where
    F: Fn(&[&FlowGraph]) -> Result<bool> + Sync,
{
    if !(1..=3).contains(&arity) {
        return Err(Error::Domain(format!("arity {arity} is not in 1..=3")));
    }
    let (graphs, ends) = universe(spec)?;
    let opts = RunOptions::default();
    let s = scan(arity, &ends, &opts, |t| {
        let tuple: Vec<&FlowGraph> = t.iter().map(|&i| &graphs[i]).collect();
        Ok(Check::holds(holds(&tuple)?))
    })?;
    let Some(t) = s.violation else {
        if s.truncated {
            return Err(Error::SearchBudgetExceeded(format!(
                "counterexample search stopped after ≤{} edges",
                s.completed_stage.map_or(0, |k| k)
            )));
        }
        return Ok(None);
    };
    let again: Vec<FlowGraph> = t
        .iter()
        .map(|&i| parse_fg(&write_fg(&graphs[i])))
        .collect::<Result<_>>()?;
    let refs: Vec<&FlowGraph> = again.iter().collect();
    assert!(!holds(&refs)?, "counterexample did not survive re-verification");
    Ok(Some(again))
}

/// Runs every law in catalog order with its default universe, capped at
/// `max_edges` if given.
pub fn run_catalog(max_edges: Option<usize>, opts: &RunOptions) -> Result<Vec<LawReport>> {
    super::laws::catalog()
        .iter()
        .map(|law| check_law_with(law.id, &law.universe(max_edges), opts))
        .collect()
}
