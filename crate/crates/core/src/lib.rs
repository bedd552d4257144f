//! Image persistence for inclusions of Vietoris-Rips filtrations.
//!
//! Given dissimilarities `d_L >= d_K` on the same points, every Rips complex
//! of `d_L` is a subcomplex of the Rips complex of `d_K` at the same scale.
//! [`compute_image_barcode`] returns the barcode of the image of the induced
//! map `H_*(L) -> H_*(K)`.
//!
//! ```
//! use rips_image::{compute_image_barcode, DistanceMatrix, FiltrationPair};
//!
//! let dl = DistanceMatrix::from_lower(&[vec![2.0]]).unwrap();
//! let dk = DistanceMatrix::from_lower(&[vec![1.0]]).unwrap();
//! let pair = FiltrationPair::new(dl, dk, 1, f64::INFINITY).unwrap();
//! let barcode = compute_image_barcode(&pair, 2).unwrap();
//! assert_eq!(barcode.pairs(0), vec![(0.0, 1.0), (0.0, f64::INFINITY)]);
//! ```

pub mod algebra;
pub mod cli;
pub mod image;
pub mod oracle;
pub mod rips;

pub use image::{
    compute_image_barcode, compute_image_barcode_homology, compute_single_barcode, Barcode,
    Interval, PipelineError, PipelineOptions,
};
pub use oracle::image_barcode_oracle;
pub use rips::{DistanceMatrix, FiltrationPair, InputFormat};
