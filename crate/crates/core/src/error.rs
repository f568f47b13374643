use thiserror::Error;

/// Errors raised by poset construction and the brute-force oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("a poset needs at least one element")]
    EmptyPoset,
    #[error("element {index} out of range for a poset of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation ({0}, {0}) is reflexive")]
    Reflexive(usize),
    #[error("relations contain a cycle through element {0}")]
    Cycle(usize),
    #[error("lexicographic sum needs {expected} blocks, got {actual}")]
    BlockCountMismatch { expected: usize, actual: usize },
    #[error("{operation} is limited to {limit} elements, poset has {size}")]
    TooLarge {
        operation: &'static str,
        size: usize,
        limit: usize,
    },
}

/// Errors raised by chain-basis series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("chain-basis index must be at least 1")]
    ZeroIndex,
    #[error("operation is undefined on the zero series")]
    ZeroSeries,
    #[error("coefficient at z{index} is negative")]
    NegativeCoefficient { index: usize },
    #[error("h* solve is inconsistent: {0}")]
    InconsistentSolve(String),
    #[error("cannot parse series: {0}")]
    Syntax(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Parse failure in the operad expression language, with a byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Errors from the representability search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(
        "budget exceeded: query needs {units} leaf units and {d_count} D nodes, \
         budget allows {max_units} and {max_d}"
    )]
    BudgetExceeded {
        units: usize,
        d_count: usize,
        max_units: usize,
        max_d: usize,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Errors from zeta-number evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("zeta tail needs s >= 2, got {0}")]
    ExponentTooSmall(u32),
    #[error("tolerance must be a positive finite number")]
    BadTolerance,
    #[error(transparent)]
    Series(#[from] SeriesError),
}
