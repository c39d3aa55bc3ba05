//! Finite-dimensional superalgebras over F_p given by structure constants.

pub mod lie;
pub mod linalg;
pub mod schema;
pub mod superalg;

pub use lie::{
    check_jacobson_family, check_restricted, check_restricted_module, jacobson_solve, s_coefficients, s_sum, s_sum_nested,
    supercommutator, LModule, LieSuperalgebra, PMap, PMapFamily,
};
pub use linalg::{Mat, Vector};
pub use schema::AlgebraJson;
pub use superalg::{build_grassmann, derivation_space, leibniz_defects, BasisElem, GradedLinearMap, SuperAlgebra};

/// Seed used by every sampled check unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_SAMPLES: usize = 200;
