//! Search budgets shared by every exhaustive procedure in the crate.
//!
//! Exceeding a budget is always reported as
//! [`Error::SearchBudgetExceeded`]; no search silently answers `false`
//! because it ran out of room.

use std::sync::OnceLock;

use crate::error::{Error, Result};

static GLOBAL: OnceLock<Limits> = OnceLock::new();

/// Environment variable that overrides [`Limits::node_budget`].
pub const BUDGET_ENV: &str = "FGA_BUDGET_NODES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of search-tree nodes a single call may expand.
    pub node_budget: u64,
    /// Largest operand (vertices) the order deciders accept.
    pub max_order_vertices: usize,
    /// Largest operand (edges) the order deciders accept.
    pub max_order_edges: usize,
    /// Largest edge count for which flow graphs are enumerated on demand
    /// (division and primality candidates).
    pub max_enum_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: 1_000_000,
            max_order_vertices: 12,
            max_order_edges: 14,
            max_enum_edges: 5,
        }
    }
}

impl Limits {
    /// Defaults, with the node budget taken from `FGA_BUDGET_NODES` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&n| n > 0)
        {
            limits.node_budget = n;
        }
        limits
    }

    /// Process-wide limits used by the convenience entry points. The first
    /// call (or [`Limits::install`]) fixes them for the rest of the process.
    pub fn global() -> &'static Limits {
        GLOBAL.get_or_init(Limits::from_env)
    }

    /// Installs process-wide limits. Returns `false` if they were already fixed.
    pub fn install(limits: Limits) -> bool {
        GLOBAL.set(limits).is_ok()
    }

    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub(crate) fn meter(&self, what: &'static str) -> Meter {
        Meter {
            left: self.node_budget,
            what,
        }
    }

    pub(crate) fn check_enum_edges(&self, edges: usize) -> Result<()> {
        if edges > self.max_enum_edges {
            return Err(Error::SearchBudgetExceeded(format!(
                "enumeration of {edges}-edge flow graphs exceeds the bound of {}",
                self.max_enum_edges
            )));
        }
        Ok(())
    }
}

/// Countdown of expanded search nodes for one call.
#[derive(Debug)]
pub(crate) struct Meter {
    left: u64,
    what: &'static str,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::SearchBudgetExceeded(format!(
                "{} exceeded its node budget",
                self.what
            )));
        }
        self.left -= 1;
        Ok(())
    }
}
