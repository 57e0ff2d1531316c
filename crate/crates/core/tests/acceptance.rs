//! Acceptance run: one PASS/FAIL line per criterion, each with its pinned
//! bound. Runs the criteria one after another so the timings are not
//! skewed by each other. Exits non-zero if any criterion is red.
//!
//! `cargo test -p fga-core --test acceptance -- 3 5` runs a subset.

use std::io::Write as _;
use std::time::{Duration, Instant};

use fga_core::decomposition::{is_s_standard_definitional, is_t_standard_definitional};
use fga_core::embed::isomorphic;
use fga_core::{
    are_isomorphic, canonical_decomposition, canonical_key, check_law, enumerate_flow_graphs, find_law,
    is_left_prime, is_prime, is_right_prime, is_s_standard, is_t_standard, nat, nested_decomposition, parse_fg,
    plus, strong_leq, times, weak_leq, write_fg, FlowGraph, LawReport, Limits, UniverseSpec, Verdict,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn say(line: &str) {
    // Bypass the test harness's capture so the lines always show.
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn run(n: usize, title: &str, bound: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let in_time = bound.is_none_or(|b| took <= b);
    let ok = o.ok && in_time;
    let bound_txt = bound.map_or("no time bound".to_string(), |b| format!("bound {}s", b.as_secs()));
    say(&format!(
        "criterion {n}: {} {title} [{:.1}s, {bound_txt}{}] {}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        if in_time { "" } else { ", OVER TIME" },
        o.detail
    ));
    ok
}

fn law(id: &str) -> LawReport {
    let l = find_law(id).unwrap_or_else(|| panic!("law {id} is in the catalog"));
    match check_law(id, &l.universe(None)) {
        Ok(r) => r,
        Err(e) => panic!("{id}: {e}"),
    }
}

fn universe(e: usize) -> Vec<FlowGraph> {
    enumerate_flow_graphs(&UniverseSpec::new(e)).expect("universe enumerates")
}

fn integer_prime(n: usize) -> bool {
    n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
}

fn c1_submodel() -> Outcome {
    let mut bad = Vec::new();
    for m in 0..=8 {
        for n in 0..=8 {
            let (a, b) = (nat(m), nat(n));
            if !isomorphic(&plus(&a, &b), &nat(m + n)) {
                bad.push(format!("F{m}⊕F{n}"));
            }
            if !isomorphic(&times(&a, &b), &nat(m * n)) {
                bad.push(format!("F{m}⊗F{n}"));
            }
            let weak = weak_leq(&a, &b).expect("within budget").is_some();
            let strong = strong_leq(&a, &b).expect("within budget").is_some();
            if weak != (m <= n) {
                bad.push(format!("weak F{m},F{n}"));
            }
            if strong != (m <= n) {
                bad.push(format!("strong F{m},F{n}"));
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("81 pairs × 4 relations, mismatches: {}", summary(&bad)),
    }
}

fn summary(bad: &[String]) -> String {
    if bad.is_empty() {
        "none".into()
    } else {
        bad.join(", ")
    }
}

fn expect(reports: &[LawReport], want: Verdict) -> Vec<String> {
    reports
        .iter()
        .filter(|r| r.verdict != want || r.reverified == Some(false))
        .map(|r| format!("{}={:?}", r.law, r.verdict))
        .collect()
}

fn c2_counts() -> Outcome {
    let reports = vec![law("oplus_count_formulas"), law("otimes_count_formulas")];
    let bad = expect(&reports, Verdict::Holds);
    let n: u64 = reports.iter().map(|r| r.instances_checked).sum();
    let e = reports.iter().map(|r| r.universe.max_edges).min().unwrap_or(0);
    Outcome {
        ok: bad.is_empty() && e >= 4,
        detail: format!("{n} ordered pairs checked at ≤{e} edges, failing: {}", summary(&bad)),
    }
}

const HOLDING: &[&str] = &[
    "oplus_assoc",
    "otimes_assoc",
    "right_distrib",
    "oplus_identity",
    "otimes_identity",
    "otimes_zero",
    "eta_independence",
    "st_closure",
    "st_closure_reverse",
    "core_distributes",
    "decomp_recompose",
    "rank_total",
    "rank_unique",
    "prod_decomp_length",
    "cancel_left",
    "cancel_right",
    "comm_condition",
    "strong_implies_weak",
    "strong_transitive",
    "weak_preserve_all",
    "strong_preserve_right_mul",
];

fn c3_holding() -> Outcome {
    let mut reports = Vec::new();
    for id in HOLDING {
        let r = law(id);
        say(&format!("    {}", r.line(true)));
        reports.push(r);
    }
    let bad = expect(&reports, Verdict::Holds);
    let mut detail = format!("{} laws, not Holds: {}", reports.len(), summary(&bad));
    if let Some(r) = reports.iter().find(|r| r.law == "otimes_identity" && r.verdict != Verdict::Holds) {
        if let Some(ce) = &r.counterexample {
            detail.push_str(&format!(
                "\n    otimes_identity: A⊗G ≅ A ≅ G⊗A forces q_G = 1 and matching vertex counts, which \
                 F₁ and its reversal share; the reversal also fixes A = {} (see otimes_identity_units \
                 and otimes_identity_exception_family for the statements that do hold)",
                fga_core::explorer::report::compact_fg(&ce[0])
            ));
        }
    }
    Outcome { ok: bad.is_empty(), detail }
}

fn c4_named() -> Outcome {
    let ids = ["oplus_comm", "otimes_comm", "left_distrib", "strong_antisym", "weak_antisym", "otimes_identity_exception"];
    let mut bad = Vec::new();
    for id in ids {
        let r = law(id);
        say(&format!("    {}", r.line(true)));
        let named = r.named_instance.as_ref().is_some_and(|n| n.violated);
        if r.verdict != Verdict::ExpectedFailureConfirmed || !named || r.reverified != Some(true) {
            bad.push(format!("{id}={:?}", r.verdict));
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("named instances found and re-verified; failing: {}", summary(&bad)),
    }
}

fn c5_existence() -> Outcome {
    let ids = [
        "weak_transitive",
        "weak_violation_left_mul",
        "strong_violation_plus",
        "strong_violation_plus_left",
        "strong_violation_left_mul",
        "crossing_summands_general",
        "decomp_for_sums_general",
        "cancel_left_general",
        "comm_condition_general",
    ];
    let mut missing = Vec::new();
    let mut bad = Vec::new();
    for id in ids {
        let r = law(id);
        say(&format!("    {}", r.line(true)));
        match r.verdict {
            Verdict::ExpectedFailureConfirmed if r.reverified == Some(true) => {}
            // The criterion accepts an explicit "none found" in place of a
            // counterexample; say exactly how far the search got.
            Verdict::NoCounterexampleFound => missing.push(format!(
                "{id}: no counterexample; every tuple of graphs ≤{}e examined{}",
                r.searched_up_to.map_or("-".into(), |k| k.to_string()),
                if r.searched_up_to < Some(r.universe.max_edges) {
                    format!(", ≤{}e only partially ({} tuples)", r.universe.max_edges, r.tuples_examined)
                } else {
                    String::new()
                }
            )),
            v => bad.push(format!("{id}={v:?}")),
        }
    }
    let mut detail = format!("{} searches, errors: {}", ids.len(), summary(&bad));
    for m in &missing {
        detail.push_str(&format!("\n    NO COUNTEREXAMPLE {m}"));
    }
    Outcome {
        ok: bad.is_empty(),
        detail,
    }
}

fn c6_primality() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=8 {
        if is_prime(&nat(n)).expect("within budget") != integer_prime(n) {
            bad.push(format!("F{n}"));
        }
    }
    let all = universe(4);
    for g in &all {
        let (l, r) = (is_left_prime(g).expect("budget"), is_right_prime(g).expect("budget"));
        if l != r {
            bad.push(format!("{} left={l} right={r}", fga_core::explorer::report::compact_fg(&write_fg(g))));
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("F2…F8 and {} graphs ≤4e, disagreements: {}", all.len(), summary(&bad)),
    }
}

fn c7_oracles() -> Outcome {
    let all = universe(4);
    let keys: Vec<_> = all.iter().map(|g| canonical_key(g).expect("key")).collect();
    let mut key_vs_iso = 0usize;
    for i in 0..all.len() {
        // A relabelled copy must land on the same key and be found isomorphic.
        let n = all[i].vertex_count();
        let perm: Vec<usize> = (0..n).map(|v| (v * 7 + 3) % n).collect();
        let perm = if is_permutation(&perm) { perm } else { (0..n).rev().collect() };
        let copy = all[i].relabeled(&perm);
        if canonical_key(&copy).expect("key") != keys[i] || are_isomorphic(&all[i], &copy).is_none() {
            key_vs_iso += 1;
        }
        for j in i + 1..all.len() {
            let same_key = keys[i] == keys[j];
            if same_key != are_isomorphic(&all[i], &all[j]).is_some() {
                key_vs_iso += 1;
            }
        }
    }
    let limits = Limits::default();
    let mut standard = 0usize;
    let mut decomp = 0usize;
    for g in &all {
        if is_s_standard(g) != is_s_standard_definitional(g, &limits).expect("budget")
            || is_t_standard(g) != is_t_standard_definitional(g, &limits).expect("budget")
        {
            standard += 1;
        }
        let fast = canonical_decomposition(g).components;
        let nested = nested_decomposition(g).expect("budget").components;
        if fast.len() != nested.len() || fast.iter().zip(&nested).any(|(x, y)| !isomorphic(x, y)) {
            decomp += 1;
        }
    }
    let n = all.len();
    Outcome {
        ok: key_vs_iso + standard + decomp == 0,
        detail: format!(
            "{n} graphs ≤4e ({} pairs): key/iso {key_vs_iso}, standardness {standard}, decomposition {decomp} disagreements",
            n * (n - 1) / 2
        ),
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !std::mem::replace(&mut seen[v], true))
}

fn c8_round_trip() -> Outcome {
    let all = universe(4);
    let mut parse_bad = 0;
    let mut recompose_bad = 0;
    for g in &all {
        let text = write_fg(g);
        match parse_fg(&text) {
            Ok(back) if back.sorted() == g.sorted() && write_fg(&back) == text => {}
            _ => parse_bad += 1,
        }
        if !isomorphic(&canonical_decomposition(g).recompose(), g) {
            recompose_bad += 1;
        }
    }
    Outcome {
        ok: parse_bad + recompose_bad == 0,
        detail: format!(
            "{} graphs ≤4e: parse∘write mismatches {parse_bad}, recompose mismatches {recompose_bad}",
            all.len()
        ),
    }
}

fn main() {
    let wanted: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let on = |n: usize| wanted.is_empty() || wanted.contains(&n);
    let secs = Duration::from_secs;
    let mut red = Vec::new();
    let mut check = |n: usize, title: &str, bound: Option<Duration>, f: fn() -> Outcome| {
        if on(n) && !run(n, title, bound, f) {
            red.push(n);
        }
    };
    check(1, "submodel: ⊕, ⊗ and both orders on F0…F8", Some(secs(10)), c1_submodel);
    check(2, "count formulas on ≤4-edge pairs", Some(secs(60)), c2_counts);
    check(3, "holding laws at default universes", Some(secs(15 * 60)), c3_holding);
    check(4, "named counterexamples confirmed", Some(secs(5 * 60)), c4_named);
    check(5, "existence-only counterexamples within ≤5 edges", None, c5_existence);
    check(6, "primality of F2…F8, left/right agreement ≤4e", Some(secs(10 * 60)), c6_primality);
    check(7, "oracle equivalences on ≤4e", None, c7_oracles);
    check(8, "round trips on ≤4e", None, c8_round_trip);
    if red.is_empty() {
        say("acceptance: all criteria PASS");
    } else {
        say(&format!("acceptance: FAIL in criteria {red:?}"));
        std::process::exit(1);
    }
}
