use thiserror::Error;

/// Errors shared across the computation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a Seifert matrix: {0}")]
    NotSeifert(String),

    #[error("undefined resultant: zero input polynomial")]
    ZeroResultant,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("submodule lattice may be infinite; enumeration unsupported")]
    NonCyclicModule,

    #[error("factorisation unavailable: unresolved irreducible factors")]
    UnresolvedFactorisation,

    #[error("cover homology not finite")]
    InfiniteCoverHomology,

    #[error("degenerate double cover")]
    DegenerateDoubleCover,

    #[error("brute force bound exceeded: group order {order} > {bound}")]
    BruteForceBound { order: String, bound: u64 },

    #[error("no metaboliser contains x")]
    NoMetaboliserContains,

    #[error("metaboliser not unique")]
    MetaboliserNotUnique,

    #[error("dimension mismatch")]
    DimensionMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for inputs the tool understands but deliberately refuses to
    /// compute (infinite lattices, unresolved factorisations, bounds).
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::NonCyclicModule
                | Error::UnresolvedFactorisation
                | Error::InfiniteCoverHomology
                | Error::DegenerateDoubleCover
                | Error::BruteForceBound { .. }
        )
    }
}
