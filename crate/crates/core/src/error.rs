use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Gram matrix is not symmetric")]
    NonSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("form is not definite")]
    NotDefinite,
    #[error("rank {rank} exceeds the enumeration cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },
    #[error("|norm| {norm} exceeds the enumeration cap {cap}")]
    NormTooLarge { norm: i64, cap: i64 },
    #[error("lattice is indefinite")]
    IndefiniteLattice,
    #[error("discriminant quadratic forms need an even lattice")]
    OddLattice,
    #[error("group order {order} exceeds the cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("bad symbol syntax: {0}")]
    SyntaxError(String),
    #[error("symbol is not realizable: {0}")]
    RealizabilityError(String),
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("bad signature: {0}")]
    BadSignature(String),
    #[error("complement is not a rank 2 definite lattice")]
    NotMaximalRank,
    #[error("record has no Aut(S) -> Aut(q_S) surjectivity flag")]
    AssumptionMissing,
    #[error("monomials lie in different weight classes")]
    MixedWeightClasses,
    #[error("data file missing: {0}")]
    DataFileMissing(String),
    #[error("malformed data: {0}")]
    DataFormat(String),
    #[error("unknown lattice name: {0}")]
    UnknownLattice(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonSymmetric => "NonSymmetric",
            Error::Degenerate => "Degenerate",
            Error::ZeroScale => "ZeroScale",
            Error::NotDefinite => "NotDefinite",
            Error::RankTooLarge { .. } => "RankTooLarge",
            Error::NormTooLarge { .. } => "NormTooLarge",
            Error::IndefiniteLattice => "IndefiniteLattice",
            Error::OddLattice => "OddLattice",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::SyntaxError(_) => "SyntaxError",
            Error::RealizabilityError(_) => "RealizabilityError",
            Error::NotIsotropic => "NotIsotropic",
            Error::BadSignature(_) => "BadSignature",
            Error::NotMaximalRank => "NotMaximalRank",
            Error::AssumptionMissing => "AssumptionMissing",
            Error::MixedWeightClasses => "MixedWeightClasses",
            Error::DataFileMissing(_) => "DataFileMissing",
            Error::DataFormat(_) => "DataFormat",
            Error::UnknownLattice(_) => "UnknownLattice",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
