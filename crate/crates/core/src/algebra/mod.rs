//! Prime-field linear algebra: field arithmetic, sparse columns and the
//! column-reduction engine.

mod column;
mod field;
mod reduction;

pub use column::{pivot, SparseColumn, WorkingColumn};
pub use field::{field_inverse, FieldElement, PrimeField, MAX_MODULUS};
pub use reduction::{
    clear_columns, multiply, reduce_matrix, reduce_with_clearing, DegreeBlock, GradingDirection,
    ReducedDecomposition, ReductionStats,
};

pub(crate) use field::is_prime;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("modulus {0} is not a prime below 2^15")]
    InvalidModulus(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("column index {index} out of range for {len} columns")]
    ColumnOutOfRange { index: usize, len: usize },
    #[error("inconsistent grading in degree {degree}: {detail}")]
    InconsistentGrading { degree: usize, detail: String },
}
