//! Error type shared by all toolkit operations.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A bases set failed the matroid axioms. `witness` holds a pair of
    /// offending subsets (a basis pair for exchange failures, a subset pair
    /// for rank submodularity failures), rendered as sorted label lists.
    #[error("axiom violation: {reason} (witness: {witness:?})")]
    AxiomViolation {
        reason: String,
        witness: Option<(Vec<String>, Vec<String>)>,
    },

    #[error("duplicate label {0:?} in ground set")]
    DuplicateLabel(String),

    #[error("label {0:?} is not in the ground set")]
    UnknownLabel(String),

    #[error("label {0:?} collides with an existing element")]
    LabelCollision(String),

    #[error("relabeling map is not a bijection: {0}")]
    NotABijection(String),

    #[error("set {0:?} is not a flat")]
    NotAFlat(Vec<String>),

    #[error("elements must be distinct, got {0:?} twice")]
    SameElement(String),

    #[error("element {0:?} is a loop")]
    LoopElement(String),

    #[error("ground sets do not match")]
    GroundSetMismatch,

    #[error("sets do not partition the ground set")]
    NotAPartition,

    #[error("pin specification violated: {0}")]
    PinSpecViolation(String),

    #[error("({0:?}, {1:?}) is not an exact 3-separation")]
    NotA3Separation(Vec<String>, Vec<String>),

    #[error("construction input invariant violated: {0}")]
    InputInvariantViolation(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("no spanning witness found for an incomparable pair: {0}")]
    NoIncomparableWitness(String),

    #[error("unsupported field order {0} (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedField(u32),

    #[error("search budget exceeded after {0} nodes; result is inconclusive")]
    BudgetExceeded(u64),

    #[error("witness matrix dimensions do not match: {0}")]
    DimensionMismatch(String),

    #[error("ground set of size {size} exceeds the cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("io error: {0}")]
    Io(String),

    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Hard upper bound on ground-set size; subsets are dense bitmasks.
pub const HARD_SIZE_CAP: usize = 24;

/// Effective ground-set cap: `MATROID_SIZE_CAP` when set (clamped to the
/// hard cap), otherwise the hard cap itself.
pub fn size_cap() -> usize {
    match std::env::var("MATROID_SIZE_CAP") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| n.min(HARD_SIZE_CAP))
            .unwrap_or(HARD_SIZE_CAP),
        Err(_) => HARD_SIZE_CAP,
    }
}
