//! Reference computation of the image barcode from boundary matrices in the
//! homological direction, with full reduction matrices.

use super::{Barcode, Interval, PipelineError};
use crate::algebra::{reduce_matrix, PrimeField, SparseColumn};
use crate::rips::{boundary_column, FiltrationOrder, FiltrationPair, OrderDirection};

/// Reduces `D^L` (columns and rows in domain order) and `D^f` (columns in
/// codomain order, rows in domain order) in every degree.
///
/// A nonzero column `j` of the reduced `D^f` with pivot `rho` gives the bar
/// `[l(rho), k(tau_j))`. A zero column `j` of the reduced `D^L` that is no
/// pivot of the reduced `D^f` gives `[l(sigma_j), inf)`.
///
/// Intended for small inputs: nothing is cleared and every column of `V` is
/// kept.
pub fn compute_image_barcode_homology(
    pair: &FiltrationPair,
    modulus: u32,
) -> Result<Barcode, PipelineError> {
    let field = PrimeField::new(modulus)?;
    let binomials = pair.binomials();
    let orders: Vec<(FiltrationOrder, FiltrationOrder)> = (0..=pair.max_dim() + 1)
        .map(|d| pair.orders(d, OrderDirection::Filtration, &binomials))
        .collect();
    let mut barcode = Barcode::new();

    for degree in 0..=pair.max_dim() {
        let l_cells = &orders[degree].0;
        let k_cofaces = &orders[degree + 1].1;

        let domain_columns: Vec<SparseColumn> = match degree {
            0 => vec![SparseColumn::zero(); l_cells.len()],
            _ => l_cells
                .simplices()
                .iter()
                .map(|&s| boundary_column(s, &orders[degree - 1].0, &binomials, &field))
                .collect(),
        };
        let domain = reduce_matrix(&domain_columns, &field, false);

        let mixed_columns: Vec<SparseColumn> = k_cofaces
            .simplices()
            .iter()
            .map(|&t| boundary_column(t, l_cells, &binomials, &field))
            .collect();
        let mixed = reduce_matrix(&mixed_columns, &field, true);
        let mixed_v = mixed.v.as_ref().expect("V is tracked");

        for (j, column) in mixed.r.iter().enumerate() {
            let Some(row) = column.pivot() else { continue };
            assert_eq!(mixed_v[j].pivot(), Some(j), "V is not upper-triangular");
            let (birth, death) = (l_cells.value_at(row), k_cofaces.value_at(j));
            if birth < death {
                barcode.push(Interval::new(degree, birth, death).with_witnesses(
                    l_cells.simplex_at(row).vertices(&binomials),
                    Some(k_cofaces.simplex_at(j).vertices(&binomials)),
                ));
            }
        }
        for (j, column) in domain.r.iter().enumerate() {
            let birth = l_cells.value_at(j);
            if column.is_zero() && mixed.column_with_pivot(j).is_none() && birth.is_finite() {
                barcode.push(
                    Interval::essential(degree, birth)
                        .with_witnesses(l_cells.simplex_at(j).vertices(&binomials), None),
                );
            }
        }
    }
    Ok(barcode.sorted())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::compute_image_barcode;
    use crate::rips::DistanceMatrix;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    #[test]
    fn two_points() {
        let dl = DistanceMatrix::from_fn(2, |_, _| 2.0).unwrap();
        let dk = DistanceMatrix::from_fn(2, |_, _| 1.0).unwrap();
        let pair = FiltrationPair::new(dl, dk, 1, f64::INFINITY).unwrap();
        let b = compute_image_barcode_homology(&pair, 2).unwrap();
        assert_eq!(b.pairs(0), vec![(0.0, 1.0), (0.0, f64::INFINITY)]);
        assert_eq!(b, compute_image_barcode(&pair, 2).unwrap());
    }

    #[test]
    fn square() {
        let arc = DistanceMatrix::from_fn(4, |i, j| if (i - j) % 2 == 1 { FRAC_PI_2 } else { PI })
            .unwrap();
        let chord =
            DistanceMatrix::from_fn(4, |i, j| if (i - j) % 2 == 1 { SQRT_2 } else { 2.0 }).unwrap();
        let pair = FiltrationPair::new(arc, chord, 2, f64::INFINITY).unwrap();
        for p in [2, 3] {
            let b = compute_image_barcode_homology(&pair, p).unwrap();
            assert_eq!(b.pairs(1), vec![(FRAC_PI_2, 2.0)]);
            assert_eq!(b, compute_image_barcode(&pair, p).unwrap());
        }
    }
}
