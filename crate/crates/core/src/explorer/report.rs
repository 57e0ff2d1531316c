//! Law reports: one text line per law, or JSON.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::enumerate::UniverseSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// No violation anywhere in the universe.
    Holds,
    /// A law expected to hold was violated.
    CounterexampleFound,
    /// A law expected to fail was seen failing (and its named instance,
    /// if it has one, was confirmed).
    ExpectedFailureConfirmed,
    /// A law expected to fail showed no counterexample within the bounds.
    NoCounterexampleFound,
    /// The instance the law is known to fail at did not fail.
    NamedInstanceNotConfirmed,
}

impl Verdict {
    /// Whether the outcome matches what the catalog expects.
    pub fn as_expected(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::ExpectedFailureConfirmed)
    }
}

/// Confirmation of a specific known counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub tuple: Vec<String>,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub statement: String,
    pub universe: UniverseSpec,
    /// Largest edge bound whose tuples were all examined.
    pub searched_up_to: Option<usize>,
    /// Tuples satisfying the law's hypotheses.
    pub instances_checked: u64,
    /// All tuples looked at, vacuous ones included.
    pub tuples_examined: u64,
    pub verdict: Verdict,
    /// First violating tuple in search order, as `.fg` text.
    pub counterexample: Option<Vec<String>>,
    /// Whether the counterexample, parsed back from its `.fg` form, still
    /// violates the law.
    pub reverified: Option<bool>,
    pub named_instance: Option<NamedCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LawReport {
    /// One line: id, verdict, universe, counts and the counterexample in
    /// compact form. Timing is appended only when asked for, so that
    /// repeated runs print identical text.
    pub fn line(&self, timings: bool) -> String {
        let mut s = format!(
            "{:<32} {:<26} universe=≤{}e{} checked={} examined={}",
            self.law,
            format!("{:?}", self.verdict),
            self.universe.max_edges,
            if self.universe.st_only { ",st" } else { "" },
            self.instances_checked,
            self.tuples_examined
        );
        if let Some(k) = self.searched_up_to.filter(|&k| k < self.universe.max_edges) {
            let _ = write!(s, " searched_up_to=≤{k}e");
        }
        if let Some(ce) = &self.counterexample {
            let compact: Vec<String> = ce.iter().map(|t| compact_fg(t)).collect();
            let _ = write!(s, " counterexample=({})", compact.join(", "));
            if self.reverified == Some(false) {
                s.push_str(" REVERIFY-FAILED");
            }
        }
        if let Some(n) = &self.named_instance {
            let _ = write!(s, " named={}", if n.violated { "confirmed" } else { "NOT-confirmed" });
        }
        if timings {
            let _ = write!(s, " elapsed={:.3}s", self.elapsed.as_secs_f64());
        }
        s
    }

    pub fn to_json(&self, timings: bool) -> String {
        let mut r = self.clone();
        r.elapsed_ms = timings.then_some(self.elapsed.as_millis() as u64);
        serde_json::to_string_pretty(&r).expect("reports serialize")
    }
}

/// `.fg` text squeezed onto one line: `v3 s0 t2 [0>1 1>2]`.
pub fn compact_fg(text: &str) -> String {
    let (mut v, mut s, mut t) = ("?", "?", "?");
    let mut edges = Vec::new();
    for line in text.lines() {
        let mut it = line.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some("v"), Some(x), _) => v = x,
            (Some("s"), Some(x), _) => s = x,
            (Some("t"), Some(x), _) => t = x,
            (Some("e"), Some(a), Some(b)) => edges.push(format!("{a}>{b}")),
            _ => {}
        }
    }
    format!("v{v} s{s} t{t} [{}]", edges.join(" "))
}

/// JSON array of reports, in the order given.
pub fn reports_to_json(reports: &[LawReport], timings: bool) -> String {
    let items: Vec<LawReport> = reports
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.elapsed_ms = timings.then_some(r.elapsed.as_millis() as u64);
            r
        })
        .collect();
    serde_json::to_string_pretty(&items).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_form() {
        let text = "fg 1\nv 3\ns 0\nt 2\ne 0 1\ne 1 2\n";
        assert_eq!(compact_fg(text), "v3 s0 t2 [0>1 1>2]");
    }

    #[test]
    fn json_round_trip_without_timings() {
        let r = LawReport {
            law: "x".into(),
            statement: "y".into(),
            universe: UniverseSpec::new(2),
            searched_up_to: Some(2),
            instances_checked: 3,
            tuples_examined: 4,
            verdict: Verdict::Holds,
            counterexample: None,
            reverified: None,
            named_instance: None,
            elapsed_ms: None,
            elapsed: Duration::from_millis(5),
        };
        let json = r.to_json(false);
        assert!(!json.contains("elapsed"));
        let back: LawReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.verdict, Verdict::Holds);
        assert!(r.to_json(true).contains("\"elapsed_ms\": 5"));
    }
}
