//! The image barcode pipeline, its homology-direction reference and the
//! ordinary single-filtration barcode.

mod barcode;
mod cohomology;
mod homology;
mod union_find;

pub use barcode::{Barcode, Interval};
pub use cohomology::{
    assemble_intervals, compute_image_barcode, compute_image_barcode_with, compute_single_barcode,
    compute_single_barcode_with, emergent_shortcut, ColumnStats, DegreeReduction, DegreeStats,
    PipelineOptions, PipelineStats,
};
pub use homology::compute_image_barcode_homology;

use crate::algebra::AlgebraError;
use crate::rips::PairError;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Pair(#[from] PairError),
}
