use exactalg::{AlgError, GaussRational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("f must be monic in t of positive degree")]
    NotMonic,
    #[error("coefficients must be rational for this operation")]
    NotRational,
    #[error("f is not squarefree: its t-discriminant vanishes identically")]
    NotSquarefree,
    #[error("curve is singular at (x, t) = ({a}, {t0}); only smooth affine curves are supported")]
    NotSmooth { a: GaussRational, t0: GaussRational },
    #[error("branch points are not all Q(i)-rational: {0}")]
    BranchPointNotRational(String),
    #[error("real branch point at x = {0}: a real-rooted smooth curve has none, so f is not real rooted")]
    RealRamification(GaussRational),
    #[error("f is not real rooted: {0}")]
    NotRealRooted(String),
    #[error("point ({a}, {t0}) is not on the curve")]
    NotOnCurve { a: GaussRational, t0: GaussRational },
    #[error("form is not homogeneous in x, y, z")]
    NotHomogeneous,
    #[error("the form vanishes at the direction e")]
    DirectionZero,
    #[error("form is not hyperbolic with respect to e: {0}")]
    NotHyperbolic(String),
    #[error("{count} principal minors for n = {n} exceed the ceiling n <= {ceiling}: minor count too large")]
    TooManyMinors { n: usize, count: u64, ceiling: usize },
    #[error("the zero matrix has no degree valuation")]
    ZeroMatrix,
    #[error("generators span a module of rank below n")]
    ZeroModule,
    #[error("ideal is not invertible")]
    NotInvertible,
    #[error("lattices belong to different curves")]
    AmbientMismatch,
    #[error("representations of different kinds cannot be composed")]
    KindMismatch,
    #[error("form is not unimodular: determinant {0} is not a nonzero constant")]
    NotUnimodular(String),
    #[error("diagonalization made no progress within {0} rounds")]
    NonTermination(usize),
    #[error("form is indefinite or degenerate: {0}")]
    Indefinite(String),
    #[error("no representation found within the search bound")]
    NotFound,
    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Process exit status: 1 negative outcome, 2 violated precondition,
    /// 3 parse or usage error, 4 failed internal check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotFound | Error::NotHyperbolic(_) | Error::NotRealRooted(_) => 1,
            Error::Alg(AlgError::Parse { .. }) | Error::Usage(_) => 3,
            Error::InternalCheckFailed(_) | Error::NonTermination(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
