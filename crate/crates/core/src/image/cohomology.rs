//! Image barcode by reducing relative coboundary matrices of the domain and
//! of the mixed domain/codomain matrix, degree by degree with clearing.

use std::borrow::Cow;

use super::union_find::{component_pairs, ComponentPairs};
use super::{Barcode, Interval, PipelineError};
use crate::algebra::{PrimeField, SparseColumn, WorkingColumn};
use crate::rips::{
    coboundary_column, BinomialTable, DistanceMatrix, FiltrationOrder, FiltrationPair,
    OrderDirection, Simplex,
};

/// Switches for the optimizations. All are on by default; turning any of
/// them off must not change the barcode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub clearing: bool,
    pub emergent_shortcut: bool,
    pub union_find_degree0: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            clearing: true,
            emergent_shortcut: true,
            union_find_degree0: true,
        }
    }
}

/// Counters for one matrix in one degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColumnStats {
    pub columns: usize,
    pub cleared: usize,
    pub emergent: usize,
    pub additions: usize,
    pub zero: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeStats {
    pub degree: usize,
    pub domain: ColumnStats,
    pub mixed: ColumnStats,
    /// Mixed columns that were reduced (not cleared) and came out zero.
    pub mixed_zero_after_clearing: usize,
    /// Columns that are zero in exactly one of the two reduced matrices.
    /// Cleared columns count as zero.
    pub zero_set_mismatches: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineStats {
    pub degrees: Vec<DegreeStats>,
}

impl PipelineStats {
    pub fn mixed_zero_after_clearing(&self) -> usize {
        self.degrees
            .iter()
            .map(|d| d.mixed_zero_after_clearing)
            .sum()
    }

    pub fn zero_set_mismatches(&self) -> usize {
        self.degrees.iter().map(|d| d.zero_set_mismatches).sum()
    }

    pub fn emergent_pairs(&self) -> usize {
        self.degrees
            .iter()
            .map(|d| d.domain.emergent + d.mixed.emergent)
            .sum()
    }

    pub fn column_additions(&self) -> usize {
        self.degrees
            .iter()
            .map(|d| d.domain.additions + d.mixed.additions)
            .sum()
    }
}

/// Looks for an emergent pair for the coboundary of `sigma` in `rows`, where
/// `value` is the value of `sigma` in the filtration that orders `rows`.
///
/// Cofacets are visited in decreasing combinatorial index. The first one
/// present in `rows` with the same value as `sigma` is the pivot of the
/// unreduced column; it is returned unless `is_pivot` reports that row as
/// already taken.
pub fn emergent_shortcut(
    sigma: Simplex,
    value: f64,
    rows: &FiltrationOrder,
    binomials: &BinomialTable,
    is_pivot: impl Fn(usize) -> bool,
) -> Option<usize> {
    for c in sigma.cofacets(binomials) {
        let Some(row) = rows.position(c.simplex) else {
            continue;
        };
        if rows.value_at(row) == value {
            return (!is_pivot(row)).then_some(row);
        }
    }
    None
}

enum StoredColumn {
    Pristine(Simplex),
    Reduced(SparseColumn),
}

const NO_OWNER: u32 = u32::MAX;

/// Left-to-right reduction of implicitly generated coboundary columns.
struct CoboundaryReducer<'a> {
    rows: &'a FiltrationOrder,
    binomials: &'a BinomialTable,
    field: &'a PrimeField,
    shortcut: bool,
    owner: Vec<u32>,
    stored: Vec<StoredColumn>,
    stats: ColumnStats,
}

impl<'a> CoboundaryReducer<'a> {
    fn new(
        rows: &'a FiltrationOrder,
        binomials: &'a BinomialTable,
        field: &'a PrimeField,
        shortcut: bool,
    ) -> Self {
        Self {
            rows,
            binomials,
            field,
            shortcut,
            owner: vec![NO_OWNER; rows.len()],
            stored: Vec::new(),
            stats: ColumnStats::default(),
        }
    }

    fn claim(&mut self, row: usize, column: StoredColumn) {
        self.owner[row] = self.stored.len() as u32;
        self.stored.push(column);
    }

    fn column(&self, k: usize) -> Cow<'_, SparseColumn> {
        match &self.stored[k] {
            StoredColumn::Pristine(s) => {
                Cow::Owned(coboundary_column(*s, self.rows, self.binomials, self.field))
            }
            StoredColumn::Reduced(c) => Cow::Borrowed(c),
        }
    }

    fn skip(&mut self) {
        self.stats.columns += 1;
        self.stats.cleared += 1;
    }

    /// Reduces the coboundary of `sigma` and returns its pivot row, or
    /// `None` if it reduces to zero.
    fn reduce(&mut self, sigma: Simplex, value: f64) -> Option<usize> {
        self.stats.columns += 1;
        if self.shortcut {
            let owner = &self.owner;
            if let Some(row) = emergent_shortcut(sigma, value, self.rows, self.binomials, |r| {
                owner[r] != NO_OWNER
            }) {
                self.stats.emergent += 1;
                self.claim(row, StoredColumn::Pristine(sigma));
                return Some(row);
            }
        }
        let field = self.field;
        let mut work = WorkingColumn::new();
        for c in sigma.cofacets(self.binomials) {
            if let Some(row) = self.rows.position(c.simplex) {
                work.push(row, field.sign(c.negative));
            }
        }
        loop {
            let Some((row, c)) = work.pivot(field) else {
                self.stats.zero += 1;
                return None;
            };
            let owner = self.owner[row];
            if owner == NO_OWNER {
                let column = work.into_column(field);
                self.claim(row, StoredColumn::Reduced(column));
                return Some(row);
            }
            let other = self.column(owner as usize);
            let (_, oc) = other.pivot_entry().expect("stored columns are nonzero");
            let factor = field.neg(field.mul(c, field.inv(oc)));
            work.add_scaled(&other, factor, field);
            self.stats.additions += 1;
        }
    }
}

/// Reduces `(D^L)^perp` in one degree. Entry `j` of the result is the pivot
/// row of column `j`, `None` for zero (including cleared) columns.
fn reduce_domain(
    columns: &FiltrationOrder,
    rows: &FiltrationOrder,
    cleared: &[bool],
    options: &PipelineOptions,
    binomials: &BinomialTable,
    field: &PrimeField,
) -> (Vec<Option<usize>>, ColumnStats) {
    let mut reducer = CoboundaryReducer::new(rows, binomials, field, options.emergent_shortcut);
    let pivots = (0..columns.len())
        .map(|j| {
            if options.clearing && cleared[j] {
                reducer.skip();
                None
            } else {
                reducer.reduce(columns.simplex_at(j), columns.value_at(j))
            }
        })
        .collect();
    (pivots, reducer.stats)
}

/// Reduces the mixed matrix `(D^f)^perp`: the columns of the domain matrix
/// with rows in reverse codomain order.
fn reduce_mixed(
    columns: &FiltrationOrder,
    codomain_columns: &FiltrationOrder,
    rows: &FiltrationOrder,
    domain_pivots: &[Option<usize>],
    options: &PipelineOptions,
    binomials: &BinomialTable,
    field: &PrimeField,
) -> (Vec<Option<usize>>, ColumnStats, usize) {
    let mut reducer = CoboundaryReducer::new(rows, binomials, field, options.emergent_shortcut);
    let mut zero_after_clearing = 0;
    let pivots = (0..columns.len())
        .map(|j| {
            if options.clearing && domain_pivots[j].is_none() {
                reducer.skip();
                return None;
            }
            let sigma = columns.simplex_at(j);
            let k = codomain_columns
                .value_of(sigma)
                .expect("both orders hold the same simplices");
            let pivot = reducer.reduce(sigma, k);
            if pivot.is_none() && options.clearing {
                zero_after_clearing += 1;
            }
            pivot
        })
        .collect();
    (pivots, reducer.stats, zero_after_clearing)
}

/// Reduction results of one degree, indexed by the columns of `columns`.
pub struct DegreeReduction<'a> {
    pub degree: usize,
    /// The `degree`-simplices in reverse domain order, with domain values.
    pub columns: &'a FiltrationOrder,
    /// Rows of the mixed matrix: `degree + 1`-simplices in reverse codomain
    /// order, with codomain values.
    pub mixed_rows: &'a FiltrationOrder,
    pub mixed_pivots: &'a [Option<usize>],
    pub domain_pivots: &'a [Option<usize>],
    /// Columns that are pivots of the domain matrix one degree down.
    pub lower_pivots: &'a [bool],
}

/// Image intervals of one degree: `[l(sigma_j), k(tau))` for every nonzero
/// mixed column `j` with pivot `tau`, and `[l(sigma_i), inf)` for every zero
/// domain column `i` that is not a pivot one degree down.
pub fn assemble_intervals(input: &DegreeReduction<'_>, binomials: &BinomialTable) -> Vec<Interval> {
    let DegreeReduction {
        degree,
        columns,
        mixed_rows,
        ..
    } = *input;
    let mut out = Vec::new();
    for (j, pivot) in input.mixed_pivots.iter().enumerate() {
        let Some(row) = *pivot else { continue };
        let (birth, death) = (columns.value_at(j), mixed_rows.value_at(row));
        if birth < death {
            out.push(Interval::new(degree, birth, death).with_witnesses(
                columns.simplex_at(j).vertices(binomials),
                Some(mixed_rows.simplex_at(row).vertices(binomials)),
            ));
        }
    }
    out.extend(essential_intervals(
        degree,
        columns,
        input.domain_pivots,
        input.lower_pivots,
        binomials,
    ));
    out
}

fn essential_intervals<'a>(
    degree: usize,
    columns: &'a FiltrationOrder,
    domain_pivots: &'a [Option<usize>],
    lower_pivots: &'a [bool],
    binomials: &'a BinomialTable,
) -> impl Iterator<Item = Interval> + 'a {
    (0..columns.len())
        .filter(move |&i| {
            domain_pivots[i].is_none() && !lower_pivots[i] && columns.value_at(i).is_finite()
        })
        .map(move |i| {
            Interval::essential(degree, columns.value_at(i))
                .with_witnesses(columns.simplex_at(i).vertices(binomials), None)
        })
}

/// Degree-0 bars: finite bars from the merges of `deaths`, one essential bar
/// per component of `survivors`.
fn degree0_intervals<'a>(
    deaths: &'a ComponentPairs,
    survivors: &'a ComponentPairs,
    binomials: &'a BinomialTable,
) -> impl Iterator<Item = Interval> + 'a {
    let finite = deaths
        .merges
        .iter()
        .filter(|m| m.value > 0.0)
        .map(move |m| {
            Interval::new(0, 0.0, m.value)
                .with_witnesses(vec![m.vertex], Some(m.edge.vertices(binomials)))
        });
    finite.chain(
        survivors
            .essential
            .iter()
            .map(|&v| Interval::essential(0, 0.0).with_witnesses(vec![v], None)),
    )
}

fn lower_pivot_mask(len: usize, rows: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut mask = vec![false; len];
    for r in rows {
        mask[r] = true;
    }
    mask
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Image,
    Single,
}

fn run(
    pair: &FiltrationPair,
    modulus: u32,
    options: &PipelineOptions,
    target: Target,
) -> Result<(Barcode, PipelineStats), PipelineError> {
    let field = PrimeField::new(modulus)?;
    let binomials = pair.binomials();
    let mut barcode = Barcode::new();
    let mut stats = PipelineStats::default();

    let (mut l_cols, mut k_cols) = pair.orders(0, OrderDirection::Reverse, &binomials);
    let mut lower = vec![false; l_cols.len()];
    for degree in 0..=pair.max_dim() {
        let (l_rows, k_rows) = pair.orders(degree + 1, OrderDirection::Reverse, &binomials);
        let mut ds = DegreeStats {
            degree,
            ..DegreeStats::default()
        };
        let next;
        if degree == 0 && options.union_find_degree0 {
            let domain = component_pairs(pair.n(), &l_rows, &binomials);
            next = lower_pivot_mask(l_rows.len(), domain.merges.iter().map(|m| m.edge_position));
            let codomain = match target {
                Target::Image => component_pairs(pair.n(), &k_rows, &binomials),
                Target::Single => domain.clone(),
            };
            barcode.extend(degree0_intervals(&codomain, &domain, &binomials));
            ds.domain.columns = pair.n();
        } else {
            let (domain_pivots, domain_stats) =
                reduce_domain(&l_cols, &l_rows, &lower, options, &binomials, &field);
            ds.domain = domain_stats;
            match target {
                Target::Image => {
                    let (mixed_pivots, mixed_stats, zero_after) = reduce_mixed(
                        &l_cols,
                        &k_cols,
                        &k_rows,
                        &domain_pivots,
                        options,
                        &binomials,
                        &field,
                    );
                    ds.mixed = mixed_stats;
                    ds.mixed_zero_after_clearing = zero_after;
                    ds.zero_set_mismatches = domain_pivots
                        .iter()
                        .zip(&mixed_pivots)
                        .filter(|(r, s)| r.is_none() != s.is_none())
                        .count();
                    debug_assert_eq!(
                        zero_after, 0,
                        "mixed column reduced to zero after clearing in degree {degree}"
                    );
                    barcode.extend(assemble_intervals(
                        &DegreeReduction {
                            degree,
                            columns: &l_cols,
                            mixed_rows: &k_rows,
                            mixed_pivots: &mixed_pivots,
                            domain_pivots: &domain_pivots,
                            lower_pivots: &lower,
                        },
                        &binomials,
                    ));
                }
                Target::Single => {
                    for (j, pivot) in domain_pivots.iter().enumerate() {
                        let Some(row) = *pivot else { continue };
                        let (birth, death) = (l_cols.value_at(j), l_rows.value_at(row));
                        if birth < death {
                            barcode.push(Interval::new(degree, birth, death).with_witnesses(
                                l_cols.simplex_at(j).vertices(&binomials),
                                Some(l_rows.simplex_at(row).vertices(&binomials)),
                            ));
                        }
                    }
                    barcode.extend(essential_intervals(
                        degree,
                        &l_cols,
                        &domain_pivots,
                        &lower,
                        &binomials,
                    ));
                }
            }
            next = lower_pivot_mask(l_rows.len(), domain_pivots.iter().flatten().copied());
        }
        stats.degrees.push(ds);
        lower = next;
        l_cols = l_rows;
        k_cols = k_rows;
    }
    Ok((barcode.sorted(), stats))
}

/// Image barcode of `H_*(L) -> H_*(K)` in degrees `0..=pair.max_dim()`
/// over `F_modulus`, with all optimizations on.
pub fn compute_image_barcode(
    pair: &FiltrationPair,
    modulus: u32,
) -> Result<Barcode, PipelineError> {
    compute_image_barcode_with(pair, modulus, &PipelineOptions::default()).map(|(b, _)| b)
}

pub fn compute_image_barcode_with(
    pair: &FiltrationPair,
    modulus: u32,
    options: &PipelineOptions,
) -> Result<(Barcode, PipelineStats), PipelineError> {
    run(pair, modulus, options, Target::Image)
}

/// Ordinary persistence barcode of the Rips filtration of `distances`.
pub fn compute_single_barcode(
    distances: &DistanceMatrix,
    max_dim: usize,
    threshold: f64,
    modulus: u32,
) -> Result<Barcode, PipelineError> {
    compute_single_barcode_with(
        distances,
        max_dim,
        threshold,
        modulus,
        &PipelineOptions::default(),
    )
    .map(|(b, _)| b)
}

pub fn compute_single_barcode_with(
    distances: &DistanceMatrix,
    max_dim: usize,
    threshold: f64,
    modulus: u32,
    options: &PipelineOptions,
) -> Result<(Barcode, PipelineStats), PipelineError> {
    let pair = FiltrationPair::identity(distances.clone(), max_dim, threshold)?;
    run(&pair, modulus, options, Target::Single)
}
