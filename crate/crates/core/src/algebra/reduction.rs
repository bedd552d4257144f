//! Left-to-right column reduction `R = D V`, with and without clearing.

use std::collections::HashMap;

use super::{AlgebraError, PrimeField, SparseColumn, WorkingColumn};

/// Counters collected while reducing a matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionStats {
    /// Number of times a reduced column was added into the working column.
    pub column_additions: usize,
    /// Columns set to zero before reduction started.
    pub cleared_columns: usize,
    /// Columns that were not cleared but still ended up zero.
    pub reduced_to_zero: usize,
}

/// Output of a reduction: the reduced matrix `R`, optionally the reduction
/// matrix `V`, and the map from pivot row to the column owning it.
#[derive(Clone, Debug)]
pub struct ReducedDecomposition {
    pub r: Vec<SparseColumn>,
    pub v: Option<Vec<SparseColumn>>,
    pivot_index: HashMap<usize, usize>,
    stats: ReductionStats,
}

impl ReducedDecomposition {
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// Column of `R` whose pivot is `row`, if any.
    pub fn column_with_pivot(&self, row: usize) -> Option<usize> {
        self.pivot_index.get(&row).copied()
    }

    pub fn pivot_index(&self) -> &HashMap<usize, usize> {
        &self.pivot_index
    }

    /// Sorted pivot rows of the nonzero columns of `R`.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_index.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.r.len()).filter(|&j| self.r[j].is_zero()).collect()
    }

    pub fn stats(&self) -> ReductionStats {
        self.stats
    }

    /// True iff no two nonzero columns share a pivot.
    pub fn is_reduced(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.r
            .iter()
            .filter_map(SparseColumn::pivot)
            .all(|p| seen.insert(p))
    }
}

/// Replaces the columns listed in `zero_set` by the zero column.
pub fn clear_columns(
    zero_set: &[usize],
    mut target: Vec<SparseColumn>,
) -> Result<Vec<SparseColumn>, AlgebraError> {
    for &j in zero_set {
        if j >= target.len() {
            return Err(AlgebraError::ColumnOutOfRange {
                index: j,
                len: target.len(),
            });
        }
        target[j] = SparseColumn::zero();
    }
    Ok(target)
}

/// Standard reduction: columns are processed left to right; while the
/// working column's pivot is owned by an earlier column, a multiple of that
/// column is added to cancel it.
pub fn reduce_matrix(
    columns: &[SparseColumn],
    field: &PrimeField,
    track_v: bool,
) -> ReducedDecomposition {
    reduce_with_preset(columns, field, track_v, &HashMap::new())
}

/// Reduction where the columns in `preset` are known to reduce to zero and
/// are skipped. When `V` is tracked, the preset supplies the corresponding
/// column of `V` (which must satisfy `D v = 0` with pivot at the column's
/// own index); `None` falls back to the unit vector.
fn reduce_with_preset(
    columns: &[SparseColumn],
    field: &PrimeField,
    track_v: bool,
    preset: &HashMap<usize, Option<SparseColumn>>,
) -> ReducedDecomposition {
    let mut r: Vec<SparseColumn> = Vec::with_capacity(columns.len());
    let mut v: Vec<SparseColumn> = Vec::new();
    let mut pivot_index = HashMap::new();
    let mut stats = ReductionStats::default();

    for (j, column) in columns.iter().enumerate() {
        if let Some(v_col) = preset.get(&j) {
            stats.cleared_columns += 1;
            r.push(SparseColumn::zero());
            if track_v {
                v.push(v_col.clone().unwrap_or_else(|| SparseColumn::unit(j)));
            }
            continue;
        }

        let mut work = WorkingColumn::new();
        work.add_scaled(column, 1, field);
        let mut work_v = WorkingColumn::new();
        if track_v {
            work_v.push(j, 1);
        }

        loop {
            match work.pivot(field) {
                None => {
                    stats.reduced_to_zero += 1;
                    break;
                }
                Some((row, c)) => match pivot_index.get(&row) {
                    Some(&k) => {
                        let other: &SparseColumn = &r[k];
                        let (_, other_c) = other.pivot_entry().expect("pivot column is nonzero");
                        let factor = field.neg(field.mul(c, field.inv(other_c)));
                        work.add_scaled(other, factor, field);
                        if track_v {
                            work_v.add_scaled(&v[k], factor, field);
                        }
                        stats.column_additions += 1;
                    }
                    None => {
                        pivot_index.insert(row, j);
                        break;
                    }
                },
            }
        }
        r.push(work.into_column(field));
        if track_v {
            v.push(work_v.into_column(field));
        }
    }

    ReducedDecomposition {
        r,
        v: track_v.then_some(v),
        pivot_index,
        stats,
    }
}

/// Direction in which graded blocks are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingDirection {
    /// Boundary matrices: block `d` has rows in degree `d - 1`; processed
    /// from the top degree down.
    Homological,
    /// Coboundary matrices: block `d` has rows in degree `d + 1`; processed
    /// from degree 0 up.
    Cohomological,
}

/// The (co)boundary columns of one degree. `row_count` is the number of basis
/// elements in the adjacent degree the rows refer to.
#[derive(Clone, Debug, Default)]
pub struct DegreeBlock {
    pub columns: Vec<SparseColumn>,
    pub row_count: usize,
}

fn validate_grading(
    blocks: &[DegreeBlock],
    direction: GradingDirection,
) -> Result<(), AlgebraError> {
    for (d, block) in blocks.iter().enumerate() {
        let adjacent = match direction {
            GradingDirection::Cohomological => blocks.get(d + 1),
            GradingDirection::Homological => d.checked_sub(1).map(|e| &blocks[e]),
        };
        match adjacent {
            Some(adj) if adj.columns.len() != block.row_count => {
                return Err(AlgebraError::InconsistentGrading {
                    degree: d,
                    detail: format!(
                        "block has {} rows but the adjacent degree has {} columns",
                        block.row_count,
                        adj.columns.len()
                    ),
                });
            }
            None if direction == GradingDirection::Homological && block.row_count != 0 => {
                return Err(AlgebraError::InconsistentGrading {
                    degree: d,
                    detail: "degree 0 boundary block must have no rows".into(),
                });
            }
            _ => {}
        }
        for (j, col) in block.columns.iter().enumerate() {
            if let Some(p) = col.pivot() {
                if p >= block.row_count {
                    return Err(AlgebraError::InconsistentGrading {
                        degree: d,
                        detail: format!("column {j} references row {p} of {}", block.row_count),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Reduces every degree block, clearing columns that are known to vanish:
/// each pivot of a reduced block names a column of the adjacent block (the
/// next degree up for coboundaries, down for boundaries) that is zeroed
/// before that block is reduced.
///
/// When `V` is tracked, a cleared column `i = piv r_j` receives `v_i = r_j`,
/// which keeps `R = D V` exact and `V` upper-triangular.
pub fn reduce_with_clearing(
    blocks: &[DegreeBlock],
    direction: GradingDirection,
    field: &PrimeField,
    track_v: bool,
) -> Result<Vec<ReducedDecomposition>, AlgebraError> {
    validate_grading(blocks, direction)?;
    let order: Vec<usize> = match direction {
        GradingDirection::Cohomological => (0..blocks.len()).collect(),
        GradingDirection::Homological => (0..blocks.len()).rev().collect(),
    };
    let mut results: Vec<Option<ReducedDecomposition>> = vec![None; blocks.len()];
    let mut preset: HashMap<usize, Option<SparseColumn>> = HashMap::new();
    for d in order {
        let reduced = reduce_with_preset(&blocks[d].columns, field, track_v, &preset);
        preset = reduced
            .r
            .iter()
            .filter_map(|col| col.pivot().map(|p| (p, track_v.then(|| col.clone()))))
            .collect();
        results[d] = Some(reduced);
    }
    Ok(results
        .into_iter()
        .map(|r| r.expect("every degree reduced"))
        .collect())
}

/// Sparse product `D v` for checking `R = D V`.
pub fn multiply(columns: &[SparseColumn], v: &SparseColumn, field: &PrimeField) -> SparseColumn {
    let mut work = WorkingColumn::new();
    for &(k, c) in v.entries() {
        work.add_scaled(&columns[k], c, field);
    }
    work.into_column(field)
}
