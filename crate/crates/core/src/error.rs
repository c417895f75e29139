use thiserror::Error;

use crate::tables::TableKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field degree n = {0} is outside the supported range 2..=20")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegree { n: u32, modulus: u64 },
    #[error("modulus {modulus:#x} is reducible: divisible by {factor:#x}")]
    ReducibleModulus { modulus: u64, factor: u64 },
    #[error("element {generator:#x} is not a primitive element modulo {modulus:#x}")]
    NotPrimitive { modulus: u64, generator: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{m} does not divide {n}")]
    NotDivisor { m: u32, n: u32 },
    #[error("element {0:#x} is out of range for the field")]
    ElementOutOfRange(u64),
    #[error("lookup table has {got} entries, expected {expected}")]
    LutLength { expected: usize, got: usize },
    #[error("lookup table value {value:#x} at index {index} exceeds the field")]
    LutValue { index: usize, value: u64 },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("function is not a permutation")]
    NotPermutation,
    #[error("{kind} expects {expected} index coordinates, got {got}")]
    Arity {
        kind: TableKind,
        expected: usize,
        got: usize,
    },
    #[error(
        "a full {kind} sweep at n = {n} needs about {estimated_ops:.3e} operations; \
         the exhaustive budget stops at n = {max_n}, use sampling instead"
    )]
    BudgetExceeded {
        kind: TableKind,
        n: u32,
        max_n: u32,
        estimated_ops: f64,
    },
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("function is not APN: differential uniformity is {0}")]
    NotApn(u32),
    #[error("differential uniformity {uniformity} exceeds {bound}")]
    UniformityTooLarge { uniformity: u32, bound: u32 },
    #[error("{kind} is not covariant under a map of form {form}")]
    FormMismatch { kind: TableKind, form: String },
    #[error("no admissible affine map found after {0} attempts")]
    AffineSampling(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for precondition failures of closed forms or equivalence maps.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::Hypothesis(_)
                | Error::NotApn(_)
                | Error::UniformityTooLarge { .. }
                | Error::NotPermutation
                | Error::FormMismatch { .. }
                | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
