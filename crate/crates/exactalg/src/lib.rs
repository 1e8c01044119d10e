//! Exact algebra over the rationals and the Gaussian rationals.
//!
//! Generic routines are parameterized by [`Field`]; the aliases below fix the
//! scalar to `Rational` (`Q*`) or `GaussRational` (`G*`).

pub mod bipoly;
pub mod factor;
pub mod gauss;
pub mod hnf;
pub mod matrix;
pub mod modp;
pub mod mpoly;
pub mod poly;
pub mod radical;
pub mod ratfunc;
pub mod roots;
pub mod scalar;
pub mod sturm;

pub use bipoly::{charpoly, BiPoly};
pub use factor::{factor_over_q, Factorization};
pub use gauss::GaussRational;
pub use hnf::{hnf_reduce, is_hnf};
pub use matrix::{inertia, Conj, Matrix};
pub use mpoly::{parse_mpoly, MPoly};
pub use poly::UniPoly;
pub use radical::{RadPoly, RadScalar};
pub use ratfunc::RatFunc;
pub use roots::gaussian_roots;
pub use scalar::{rat, rat_int, ExactDiv, Field, Rational, Ring};
pub use sturm::{nonneg_on_r, squarefree_decompose, sturm_count};

pub type QPoly = UniPoly<Rational>;
pub type GPoly = UniPoly<GaussRational>;
pub type QBiPoly = BiPoly<Rational>;
pub type GBiPoly = BiPoly<GaussRational>;
pub type QMatrix = Matrix<Rational>;
pub type GMatrix = Matrix<GaussRational>;
pub type QPolyMatrix = Matrix<QPoly>;
pub type GPolyMatrix = Matrix<GPoly>;
pub type QRatFunc = RatFunc<Rational>;
pub type GRatFunc = RatFunc<GaussRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("zero polynomial rejected by {0}")]
    ZeroPolynomial(&'static str),
    #[error("generators do not span a full-rank module (row {rank_missing_at} has no pivot)")]
    RankDeficient { rank_missing_at: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
