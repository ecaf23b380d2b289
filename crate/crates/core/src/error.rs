use thiserror::Error;

use crate::chern::ChernChar;

/// Admissibility conditions on a decomposition `(ξ′, ξ, ξ″)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// ξ′ semistable
    D1,
    /// ξ″ stable
    D2,
    /// 0 < rk ξ′ ≤ rk ξ
    D3,
    /// μ(ξ′) < μ(ξ)
    D4,
    /// μ(ξ″) − μ(ξ′) < 3 when ξ″ has positive rank
    D5,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be positive")]
    NonPositiveRank,
    #[error("character is not integral: {0}")]
    NotIntegral(String),
    #[error("the zero character is not allowed")]
    ZeroCharacter,
    #[error("exceptional tree walk exceeded depth {0}")]
    TreeDepthExceeded(usize),
    #[error("no stable character of slope {slope} with rank at most {max_rank}")]
    NoStableCharacter { slope: String, max_rank: String },
    #[error("decomposition is not admissible, failing {0:?}")]
    AdmissibilityFailed(Vec<Condition>),
    #[error("no admissible decomposition within {0} lattice steps")]
    NoAdmissible(usize),
    #[error("extremal triple of {0} has χ(ξ′, ξ″) > 0 but is not sporadic")]
    UnexpectedPositiveChi(Box<ChernChar>),
    #[error("characters are linearly dependent")]
    DependentCharacters,
    #[error("character has height zero; its ample cone is a single ray")]
    HeightZeroInput,
    #[error("character is not semistable")]
    NotSemistableInput,
    #[error("character is exceptional and rigid")]
    ExceptionalInput,
    #[error("destabilizing wall of {0} is empty")]
    EmptyWall(Box<ChernChar>),
    #[error("search budget of {budget} candidates exhausted ({} violations so far)", partial.len())]
    SearchBudgetExceeded {
        budget: usize,
        partial: Vec<ChernChar>,
    },
    #[error("wall is not a nonempty semicircle")]
    NotSemicircle,
}

pub type Result<T> = std::result::Result<T, Error>;
