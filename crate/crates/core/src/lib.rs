//! Dimensions of spaces of cusp forms and newforms on Γ₀(N) and Γ₁(N),
//! computed exactly from multiplicative-function formulas.

pub mod analysis;
pub mod arith;
pub mod constants;
pub mod dimension;
pub mod dirichlet;
pub mod error;
pub mod oracle;
pub mod rational;

pub use arith::{
    arithmetic_function, character, divisors, factorize, ArithmeticFunction, Character, Factorization, Factorizer,
};
pub use constants::Constants;
pub use dimension::{dimension, 
    gekeler_squarefree, genus, rho, weight_coeffs, DimensionEngine, DimensionValue, Family, Group, RhoFamily,
    WeightCoefficients,
};
pub use dirichlet::{
    euler_product_constant, registry_lookup, sieve_batch_eval, summatory, CertifiedValue, LocalFactor,
    MultiplicativeFunction, Registry, SummatoryReport,
};
pub use error::{Error, Result};
pub use oracle::{consistency_scan, recursive_newform_dim, recursive_star_dim, ConsistencyReport, OracleTable};
pub use rational::ExactRational;

/// Serialize through `Display`, used for exact rationals.
pub fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
