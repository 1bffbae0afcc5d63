use crate::IndexSet;

/// Errors raised by library operations.
///
/// Indices carried by variants are 0-based; messages print them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("a tropical matrix needs at least one row and one column")]
    EmptyShape,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("column {} has empty support", .0 + 1)]
    EmptyColumn(usize),
    #[error("row {} has empty support", .0 + 1)]
    EmptyRow(usize),
    #[error("entry {} must be finite", .0 + 1)]
    NonFinite(usize),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("sizes beyond 64 rows or columns are not supported")]
    TooLarge,
    #[error("the support contains no matching")]
    NoMatchingInSupport,
    #[error("no matching is supported on columns {{{0}}}")]
    NoMatchingOnColumns(IndexSet),
    #[error("the Plücker vector is identically infinite")]
    AllInfinite,
    #[error("rank condition violated: {0}")]
    RankCondition(&'static str),
    #[error("invalid matching multifield: {0}")]
    InvalidMultifield(&'static str),
    #[error("not a support set")]
    NotSupportSet,
    #[error("the underlying matroid is not uniform")]
    NotUniform,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("budget exceeded: {what} needs more than {budget} steps")]
    BudgetExceeded { what: &'static str, budget: u64 },
}

impl Error {
    /// Stable machine-readable code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyShape => "EMPTY_SHAPE",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::EmptyColumn(_) => "EMPTY_COLUMN",
            Error::EmptyRow(_) => "EMPTY_ROW",
            Error::NonFinite(_) => "NON_FINITE_ENTRY",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::TooLarge => "TOO_LARGE",
            Error::NoMatchingInSupport => "NO_MATCHING_IN_SUPPORT",
            Error::NoMatchingOnColumns(_) => "NO_MATCHING_ON_COLUMNS",
            Error::AllInfinite => "ALL_INFINITE",
            Error::RankCondition(_) => "RANK_CONDITION",
            Error::InvalidMultifield(_) => "INVALID_MULTIFIELD",
            Error::NotSupportSet => "NOT_SUPPORT_SET",
            Error::NotUniform => "NOT_UNIFORM",
            Error::Precondition(_) => "PRECONDITION",
            Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
