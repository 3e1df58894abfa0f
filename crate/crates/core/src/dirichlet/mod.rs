//! Multiplicative functions, Dirichlet convolution and Euler products.

mod batch;
mod euler;
mod identities;
mod multiplicative;
mod registry;

pub use batch::{
    sieve_batch_eval, sieve_batch_eval_with_budget, summatory, SummatoryReport, DEFAULT_MEMORY_BUDGET,
};
pub use euler::{euler_product_constant, mean_value_local_factor, poly_mul, CertifiedValue, LocalFactor};
pub use identities::{
    verify_convolution_identities, verify_identity, IdentityReport, IdentityResult, PROOF_IDENTITIES,
};
pub use multiplicative::MultiplicativeFunction;
pub use registry::{registry_lookup, Registry};
