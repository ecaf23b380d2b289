use thiserror::Error;

use p2walls_core::Error as CoreError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TABLE_MISMATCH: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{mismatched} table row(s) disagree with the golden data")]
    TableMismatch { mismatched: usize },
    #[error("internal assertion failed: {0}")]
    Assertion(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn parse(input: &str, reason: impl Into<String>) -> Self {
        CliError::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io(_) => EXIT_INVALID,
            CliError::TableMismatch { .. } => EXIT_TABLE_MISMATCH,
            CliError::Assertion(_) => EXIT_INTERNAL,
            CliError::Core(e) => match e {
                CoreError::TreeDepthExceeded(_)
                | CoreError::AdmissibilityFailed(_)
                | CoreError::NoAdmissible(_)
                | CoreError::UnexpectedPositiveChi(_)
                | CoreError::EmptyWall(_)
                | CoreError::SearchBudgetExceeded { .. } => EXIT_INTERNAL,
                _ => EXIT_INVALID,
            },
        }
    }

    /// Stable machine-readable name of the error.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::TableMismatch { .. } => "table-mismatch",
            CliError::Assertion(_) => "assertion",
            CliError::Io(_) => "io",
            CliError::Core(e) => core_kind(e),
        }
    }
}

pub fn core_kind(e: &CoreError) -> &'static str {
    match e {
        CoreError::NonPositiveRank => "non-positive-rank",
        CoreError::NotIntegral(_) => "not-integral",
        CoreError::ZeroCharacter => "zero-character",
        CoreError::TreeDepthExceeded(_) => "tree-depth-exceeded",
        CoreError::NoStableCharacter { .. } => "no-stable-character",
        CoreError::AdmissibilityFailed(_) => "admissibility-failed",
        CoreError::NoAdmissible(_) => "no-admissible",
        CoreError::UnexpectedPositiveChi(_) => "unexpected-positive-chi",
        CoreError::DependentCharacters => "dependent-characters",
        CoreError::HeightZeroInput => "height-zero-input",
        CoreError::NotSemistableInput => "not-semistable-input",
        CoreError::ExceptionalInput => "exceptional-input",
        CoreError::EmptyWall(_) => "empty-wall",
        CoreError::SearchBudgetExceeded { .. } => "search-budget-exceeded",
        CoreError::NotSemicircle => "not-semicircle",
    }
}

pub type CliResult<T> = Result<T, CliError>;
