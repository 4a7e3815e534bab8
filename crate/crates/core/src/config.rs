use crate::exec::Execution;

/// Caps and budgets shared by construction and search routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Largest ring or product monoid that may be constructed.
    pub max_size: usize,
    /// Largest source/target monoid accepted by `enumerate_homs`.
    pub max_hom_size: usize,
    /// Largest monoid accepted by `enumerate_automorphisms`.
    pub max_aut_size: usize,
    /// Most factors accepted by the rigidity verifier.
    pub max_factors: usize,
    /// Backtracking node budget per enumeration call.
    pub budget: u64,
    /// Cayley tables are materialized up to this many elements.
    pub table_limit: usize,
    /// Ring axioms are checked over all triples up to this size and on a
    /// seeded sample above it.
    pub exhaustive_axiom_limit: usize,
    pub execution: Execution,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_size: 4096,
            max_hom_size: 64,
            max_aut_size: 128,
            max_factors: 4,
            budget: 10_000_000,
            table_limit: 1024,
            exhaustive_axiom_limit: 128,
            execution: Execution::default(),
        }
    }
}

impl Config {
    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}
