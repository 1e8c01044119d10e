//! Real-rootedness certificates and exact spectral representations of plane curves.

pub mod algebra;
pub mod certify;
pub mod cli;
pub mod curvedata;
pub mod error;
pub mod hvpipeline;
pub mod ideallat;
pub mod json;
pub mod represent;
pub mod traceform;

pub use error::{Error, Result};

pub use algebra::{Algebra, Elem};
pub use certify::{certify_hyperbolic, certify_real_rooted, hermite_matrix, Certificate, Witness};
pub use curvedata::{analyze_curve, BranchPoint, CurveData};
pub use hvpipeline::{hv_representation, hv_representation_factors, verify_pencil, Pencil};
pub use ideallat::{half_different, prime_at_point, principal_generator_search, IdealLattice};
pub use represent::{block_compose, hermitian_representation, symmetric_representation_search, verify_representation, Kind, SpectralRep};
pub use traceform::{constant_cholesky, diagonalize_unimodular, gram_matrix, is_unimodular, GramForm};

/// Lattices, algebras and forms over the Gaussian rationals.
pub type GAlgebra = Algebra<exactalg::GaussRational>;
pub type GIdealLattice = IdealLattice<exactalg::GaussRational>;
pub type GGramForm = GramForm<exactalg::GaussRational>;
/// Over the rationals.
pub type QAlgebra = Algebra<exactalg::Rational>;
pub type QIdealLattice = IdealLattice<exactalg::Rational>;
pub type QGramForm = GramForm<exactalg::Rational>;
