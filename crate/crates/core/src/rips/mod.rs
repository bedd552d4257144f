//! Vietoris-Rips filtrations: input dissimilarities, simplex indexing,
//! filtration orders and implicit (co)boundary columns.

mod distance;
mod order;
mod pair;
mod simplex;

pub use distance::{
    parse_distance_input, validate_dominance, DistanceMatrix, DominanceError, DominanceViolation,
    InputError, InputFormat, MAX_REPORTED_VIOLATIONS, SYMMETRY_TOLERANCE,
};
pub use order::{
    boundary_column, build_order, coboundary_column, filtration_cmp, FiltrationOrder,
    OrderDirection,
};
pub use pair::{FiltrationPair, PairError};
pub use simplex::{simplex_diameter, BinomialTable, Cofacet, Cofacets, Simplex};
