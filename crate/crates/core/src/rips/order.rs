//! Linear refinements of a Rips filtration in one dimension, and the
//! coboundary and boundary columns expressed in those orders.

use std::cmp::Ordering;

use super::{simplex::vertex_set_diameter, BinomialTable, DistanceMatrix, Simplex};
use crate::algebra::{PrimeField, SparseColumn};

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderDirection {
    /// Increasing value; equal values by decreasing combinatorial index.
    Filtration,
    /// The exact reverse of [`OrderDirection::Filtration`].
    Reverse,
}

/// The simplices of one dimension listed in a linear refinement of their
/// filtration values, with an index-to-position lookup table.
#[derive(Clone, Debug)]
pub struct FiltrationOrder {
    dim: usize,
    direction: OrderDirection,
    simplices: Vec<Simplex>,
    values: Vec<f64>,
    position: Vec<u32>,
}

/// `Less` when `a` enters the filtration before `b`.
pub fn filtration_cmp(a: (f64, Simplex), b: (f64, Simplex)) -> Ordering {
    a.0.total_cmp(&b.0).then_with(|| b.1.index.cmp(&a.1.index))
}

impl FiltrationOrder {
    /// Sorts `entries` (all of dimension `dim`) into the requested order.
    /// `index_bound` must exceed every combinatorial index present.
    pub fn from_values(
        dim: usize,
        index_bound: u64,
        mut entries: Vec<(Simplex, f64)>,
        direction: OrderDirection,
    ) -> Self {
        debug_assert!(entries
            .iter()
            .all(|(s, _)| s.dim == dim && s.index < index_bound));
        entries.sort_unstable_by(|a, b| {
            let ord = filtration_cmp((a.1, a.0), (b.1, b.0));
            match direction {
                OrderDirection::Filtration => ord,
                OrderDirection::Reverse => ord.reverse(),
            }
        });
        assert!(
            entries.len() < ABSENT as usize,
            "too many simplices for a position table"
        );
        let mut position = vec![ABSENT; index_bound as usize];
        for (p, (s, _)) in entries.iter().enumerate() {
            position[s.index as usize] = p as u32;
        }
        let (simplices, values) = entries.into_iter().unzip();
        Self {
            dim,
            direction,
            simplices,
            values,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn direction(&self) -> OrderDirection {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn simplex_at(&self, position: usize) -> Simplex {
        self.simplices[position]
    }

    pub fn value_at(&self, position: usize) -> f64 {
        self.values[position]
    }

    /// Position of `simplex`, or `None` if it is not part of this order.
    #[inline]
    pub fn position(&self, simplex: Simplex) -> Option<usize> {
        debug_assert_eq!(simplex.dim, self.dim);
        match self.position.get(simplex.index as usize) {
            Some(&p) if p != ABSENT => Some(p as usize),
            _ => None,
        }
    }

    pub fn value_of(&self, simplex: Simplex) -> Option<f64> {
        self.position(simplex).map(|p| self.values[p])
    }

    /// The same simplices in the opposite direction.
    pub fn reversed(&self) -> Self {
        let m = self.len();
        let mut position = self.position.clone();
        for p in position.iter_mut().filter(|p| **p != ABSENT) {
            *p = (m - 1) as u32 - *p;
        }
        Self {
            dim: self.dim,
            direction: match self.direction {
                OrderDirection::Filtration => OrderDirection::Reverse,
                OrderDirection::Reverse => OrderDirection::Filtration,
            },
            simplices: self.simplices.iter().rev().copied().collect(),
            values: self.values.iter().rev().copied().collect(),
            position,
        }
    }
}

/// All `dim`-simplices with diameter at most `threshold`, ordered by
/// diameter with ties broken by decreasing combinatorial index (reversed for
/// [`OrderDirection::Reverse`]).
pub fn build_order(
    distances: &DistanceMatrix,
    dim: usize,
    threshold: f64,
    direction: OrderDirection,
    binomials: &BinomialTable,
) -> FiltrationOrder {
    let count = if dim < distances.len() {
        binomials.simplex_count(dim)
    } else {
        0
    };
    let entries = (0..count)
        .filter_map(|idx| {
            let s = Simplex::new(idx, dim);
            let diam = vertex_set_diameter(&s.vertices(binomials), distances);
            (diam <= threshold).then_some((s, diam))
        })
        .collect();
    FiltrationOrder::from_values(dim, count, entries, direction)
}

/// Coboundary of `simplex` with rows at positions of `row_order`. Cofacets
/// missing from the order (beyond the threshold) are omitted.
pub fn coboundary_column(
    simplex: Simplex,
    row_order: &FiltrationOrder,
    binomials: &BinomialTable,
    field: &PrimeField,
) -> SparseColumn {
    debug_assert_eq!(simplex.dim + 1, row_order.dim());
    SparseColumn::from_entries(
        simplex.cofacets(binomials).filter_map(|c| {
            row_order
                .position(c.simplex)
                .map(|p| (p, if c.negative { -1 } else { 1 }))
        }),
        field,
    )
}

/// Boundary of `simplex` with rows at positions of `row_order`.
pub fn boundary_column(
    simplex: Simplex,
    row_order: &FiltrationOrder,
    binomials: &BinomialTable,
    field: &PrimeField,
) -> SparseColumn {
    debug_assert_eq!(simplex.dim, row_order.dim() + 1);
    SparseColumn::from_entries(
        simplex
            .facets(binomials)
            .into_iter()
            .filter_map(|(f, negative)| {
                row_order
                    .position(f)
                    .map(|p| (p, if negative { -1 } else { 1 }))
            }),
        field,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> (DistanceMatrix, DistanceMatrix) {
        use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
        let arc = DistanceMatrix::from_fn(4, |i, j| if (i - j) % 2 == 1 { FRAC_PI_2 } else { PI })
            .unwrap();
        let chord =
            DistanceMatrix::from_fn(4, |i, j| if (i - j) % 2 == 1 { SQRT_2 } else { 2.0 }).unwrap();
        (arc, chord)
    }

    #[test]
    fn ties_broken_by_descending_index() {
        let d = DistanceMatrix::from_fn(3, |_, _| 1.0).unwrap();
        let b = BinomialTable::new(3, 3);
        let order = build_order(&d, 1, f64::INFINITY, OrderDirection::Filtration, &b);
        let idx: Vec<u64> = order.simplices().iter().map(|s| s.index).collect();
        assert_eq!(idx, vec![2, 1, 0]);
        assert!(order.values().iter().all(|&v| v == 1.0));
        let rev = build_order(&d, 1, f64::INFINITY, OrderDirection::Reverse, &b);
        assert_eq!(rev.simplices(), order.reversed().simplices());
        for s in order.simplices() {
            assert_eq!(rev.position(*s), order.reversed().position(*s));
        }
    }

    #[test]
    fn square_edges_sorted_by_arc_length() {
        let (arc, _) = square();
        let b = BinomialTable::new(4, 3);
        let order = build_order(&arc, 1, f64::INFINITY, OrderDirection::Filtration, &b);
        let v = order.values();
        assert_eq!(v.len(), 6);
        assert!(v[..4].iter().all(|&x| x == std::f64::consts::FRAC_PI_2));
        assert!(v[4..].iter().all(|&x| x == std::f64::consts::PI));
    }

    #[test]
    fn threshold_filters_everything() {
        let d = DistanceMatrix::from_fn(4, |_, _| 1.0).unwrap();
        let b = BinomialTable::new(4, 3);
        assert!(build_order(&d, 1, 0.5, OrderDirection::Filtration, &b).is_empty());
        assert_eq!(
            build_order(&d, 0, 0.5, OrderDirection::Filtration, &b).len(),
            4
        );
        assert!(build_order(&d, 4, 10.0, OrderDirection::Filtration, &b).is_empty());
    }

    #[test]
    fn coboundary_respects_threshold() {
        let d =
            DistanceMatrix::from_fn(3, |i, j| if (i, j) == (2, 0) { 3.0 } else { 1.0 }).unwrap();
        let b = BinomialTable::new(3, 3);
        let f = PrimeField::new(3).unwrap();
        let edge = Simplex::from_vertices(&[1, 0], &b);
        let rows = build_order(&d, 2, 2.0, OrderDirection::Reverse, &b);
        assert!(coboundary_column(edge, &rows, &b, &f).is_zero());
        let rows = build_order(&d, 2, 3.0, OrderDirection::Reverse, &b);
        assert_eq!(coboundary_column(edge, &rows, &b, &f).entries(), &[(0, 1)]);
    }

    /// Dense coboundary in reverse order equals the anti-transpose of the
    /// dense boundary in filtration order.
    #[test]
    fn anti_transpose_consistency() {
        let (arc, chord) = square();
        let f = PrimeField::new(5).unwrap();
        for d in [&arc, &chord] {
            let b = BinomialTable::new(4, 4);
            for dim in 0..3 {
                let cols = build_order(d, dim, f64::INFINITY, OrderDirection::Filtration, &b);
                let rows = build_order(d, dim + 1, f64::INFINITY, OrderDirection::Filtration, &b);
                let (m, k) = (cols.len(), rows.len());
                // boundary block: columns (dim+1)-simplices, rows dim-simplices
                let mut boundary = vec![vec![0u32; k]; m];
                for (j, &t) in rows.simplices().iter().enumerate() {
                    for &(i, c) in boundary_column(t, &cols, &b, &f).entries() {
                        boundary[i][j] = c;
                    }
                }
                let rev_cols = cols.reversed();
                let rev_rows = rows.reversed();
                for (j, &s) in rev_cols.simplices().iter().enumerate() {
                    let col = coboundary_column(s, &rev_rows, &b, &f);
                    for i in 0..k {
                        // anti-transpose: (i, j) <- (m - 1 - j, k - 1 - i)
                        assert_eq!(col.coefficient(i), boundary[m - 1 - j][k - 1 - i]);
                    }
                }
            }
        }
    }
}
