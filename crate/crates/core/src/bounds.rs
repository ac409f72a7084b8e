//! Search bounds and budgets for the enumerative operations.
//!
//! Every bounded search either completes (its answer is then definitive)
//! or reports that it ran out of budget. Nothing is ever silently
//! truncated.

use thiserror::Error;

/// Limits for action-extension and reconstruction searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest base (actor) size admitted by the group-signature oracle.
    pub oracle_max_base: usize,
    /// Largest acted-object size admitted by the group-signature oracle.
    pub oracle_max_acted: usize,
    /// In non-group signatures, table enumeration is attempted only when
    /// `|B| * |X|` does not exceed this.
    pub oracle_max_table: usize,
    /// Node budget shared by all backtracking searches.
    pub budget: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            oracle_max_base: 24,
            oracle_max_acted: 8,
            oracle_max_table: 64,
            budget: 1_000_000,
        }
    }
}

impl SearchBounds {
    /// Bounds with every knob set to `budget = k` and the size caps left
    /// at their defaults.
    pub fn with_budget(budget: u64) -> Self {
        SearchBounds { budget, ..SearchBounds::default() }
    }
}

/// Why a search stopped without a definitive answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchLimit {
    #[error("oracle bounds exceeded: {0}")]
    OracleBounds(String),
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
}

/// A decrementing node counter handed through recursive searches.
#[derive(Debug, Clone)]
pub struct Budget {
    total: u64,
    remaining: u64,
}

impl Budget {
    pub fn new(total: u64) -> Self {
        Budget { total, remaining: total }
    }

    /// A budget large enough to never run out at the sizes this crate
    /// handles.
    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn charge(&mut self, nodes: u64) -> Result<(), SearchLimit> {
        if self.remaining < nodes {
            return Err(SearchLimit::BudgetExhausted { budget: self.total });
        }
        self.remaining -= nodes;
        Ok(())
    }
}
