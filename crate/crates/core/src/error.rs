use thiserror::Error;

/// Errors raised while constructing the value types in [`crate::sigma`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("matrix size must be positive")]
    EmptyMatrix,
    #[error("position ({i}, {j}) out of range for n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("duplicate entry at ({i}, {j})")]
    DuplicateEntry { i: usize, j: usize },
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("expected {expected} {what} labels, found {found}")]
    LabelCount { what: &'static str, expected: usize, found: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("position ({i}, {j}) is minus infinity")]
    InfinitePosition { i: usize, j: usize },
    #[error("positions do not form a transversal")]
    NotATransversal,
    #[error("not a permutation")]
    NotAPermutation,
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("block sizes must be positive and sum to n")]
    BadBlockSizes,
    #[error("emblem pairs must have equal sizes and partition rows and columns")]
    BadEmblem,
}

/// Errors raised by the structural-analysis algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("structurally ill-posed: no finite transversal")]
    StructurallyIllPosed,
    #[error("structurally singular pattern")]
    StructurallySingular,
    #[error("offsets are not valid for this signature matrix")]
    InvalidOffsets,
    #[error("transversal is not contained in the pattern")]
    TransversalNotInPattern,
    #[error("internal error: fixpoint iteration did not converge within {0} sweeps")]
    InternalNonConvergence(usize),
    #[error("offsets are not constant on fine block {block}")]
    NotBlockConstant { block: usize },
    #[error("lead-time vector violates the edge {from} -> {to}")]
    NotASolution { from: usize, to: usize },
    #[error("internal error: critical subgraph has a cycle")]
    InternalCycle,
    #[error("quotient map is not onto its target set")]
    NotSurjective,
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Sigma(#[from] SigmaError),
}

/// Errors raised by the brute-force reference implementations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for exhaustive search ({what} = {value}, limit {limit})")]
    TooLarge { what: &'static str, value: usize, limit: usize },
    #[error("structurally ill-posed: no finite transversal")]
    StructurallyIllPosed,
}
