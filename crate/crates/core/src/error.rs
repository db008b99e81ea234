use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("group order must be at least 1, got {0}")]
    InvalidOrder(i64),
    #[error("weight {weight} is not coprime to the group order {k}")]
    InvalidWeight { weight: i64, k: u64 },
    #[error("dimension parameter n must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("operation requires n = {required}, got n = {got}")]
    UnsupportedDimension { required: &'static str, got: usize },
    #[error("resource limit exceeded: {needed} work units requested, budget is {budget}")]
    ResourceLimit { needed: u128, budget: u64 },
    #[error("{0} is not a positive even eigenvalue")]
    InvalidEigenvalue(i64),
    #[error("quadrature did not converge within {0} refinement levels")]
    NonConvergence(u32),
    #[error("lens spaces differ in {0}")]
    MismatchedSpaces(&'static str),
    #[error("point outside the admissible disk: |{which}| = {modulus} > {bound}")]
    DomainViolation {
        which: &'static str,
        modulus: f64,
        bound: f64,
    },
    #[error("need at least {needed} sample points, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse lens space `{0}`: expected `k:l1,l2,...`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
