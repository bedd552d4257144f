//! Sparse columns over a prime field and the heap-based working column used
//! during reduction.

use std::collections::BinaryHeap;

use super::PrimeField;

/// A sparse column: `(row, coefficient)` pairs sorted strictly by row, with
/// no zero coefficients. Coefficients are residues of the [`PrimeField`] the
/// column was built against.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseColumn {
    entries: Vec<(usize, u32)>,
}

impl SparseColumn {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a column from arbitrary entries: sorts, merges duplicate rows
    /// and drops zero sums.
    pub fn from_entries<I>(entries: I, field: &PrimeField) -> Self
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut raw: Vec<(usize, u32)> = entries
            .into_iter()
            .map(|(r, c)| (r, field.reduce(c)))
            .collect();
        raw.sort_by_key(|&(r, _)| r);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(raw.len());
        for (row, c) in raw {
            match merged.last_mut() {
                Some(last) if last.0 == row => last.1 = field.add(last.1, c),
                _ => merged.push((row, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        Self { entries: merged }
    }

    /// Unchecked constructor for entries already sorted, merged and nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(_, c)| c != 0));
        Self { entries }
    }

    /// Column with a single unit entry.
    pub fn unit(row: usize) -> Self {
        Self {
            entries: vec![(row, 1)],
        }
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest row with a nonzero coefficient.
    pub fn pivot(&self) -> Option<usize> {
        self.entries.last().map(|&(r, _)| r)
    }

    pub(crate) fn pivot_entry(&self) -> Option<(usize, u32)> {
        self.entries.last().copied()
    }

    pub fn coefficient(&self, row: usize) -> u32 {
        self.entries
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// `self + factor * other`.
    pub fn axpy(&self, factor: u32, other: &SparseColumn, field: &PrimeField) -> SparseColumn {
        SparseColumn::from_entries(
            self.entries.iter().map(|&(r, c)| (r, c as i64)).chain(
                other
                    .entries
                    .iter()
                    .map(|&(r, c)| (r, field.mul(c, factor) as i64)),
            ),
            field,
        )
    }
}

/// Pivot of a column, `None` for the zero column.
pub fn pivot(column: &SparseColumn) -> Option<usize> {
    column.pivot()
}

/// Accumulator for a column under reduction. Entries are kept in a max-heap
/// keyed by row and merged lazily: duplicate rows are summed only when they
/// surface at the top, and zero sums are dropped immediately.
#[derive(Debug, Default)]
pub struct WorkingColumn {
    heap: BinaryHeap<(usize, u32)>,
}

impl WorkingColumn {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn push(&mut self, row: usize, coefficient: u32) {
        if coefficient != 0 {
            self.heap.push((row, coefficient));
        }
    }

    pub fn add_scaled(&mut self, column: &SparseColumn, factor: u32, field: &PrimeField) {
        for &(row, c) in column.entries() {
            self.push(row, field.mul(c, factor));
        }
    }

    /// Removes and returns the merged top entry, skipping rows that cancel.
    pub fn pop_pivot(&mut self, field: &PrimeField) -> Option<(usize, u32)> {
        while let Some((row, mut c)) = self.heap.pop() {
            while let Some(&(next, d)) = self.heap.peek() {
                if next != row {
                    break;
                }
                c = field.add(c, d);
                self.heap.pop();
            }
            if c != 0 {
                return Some((row, c));
            }
        }
        None
    }

    /// The current pivot, leaving the column unchanged (modulo merging).
    pub fn pivot(&mut self, field: &PrimeField) -> Option<(usize, u32)> {
        let top = self.pop_pivot(field);
        if let Some((row, c)) = top {
            self.heap.push((row, c));
        }
        top
    }

    pub fn into_column(mut self, field: &PrimeField) -> SparseColumn {
        let mut entries = Vec::with_capacity(self.heap.len());
        while let Some(entry) = self.pop_pivot(field) {
            entries.push(entry);
        }
        entries.reverse();
        SparseColumn::from_sorted(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pivot_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let c = SparseColumn::from_entries([(0, 1), (2, 1), (5, 1)], &f2);
        assert_eq!(pivot(&c), Some(5));
        assert_eq!(pivot(&SparseColumn::zero()), None);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(pivot(&SparseColumn::from_entries([(7, 2)], &f3)), Some(7));
    }

    #[test]
    fn from_entries_normalizes() {
        let f3 = PrimeField::new(3).unwrap();
        let c = SparseColumn::from_entries([(4, 1), (1, 2), (4, 2), (0, 3), (2, -1)], &f3);
        assert_eq!(c.entries(), &[(1, 2), (2, 2)]);
        assert_eq!(c.coefficient(2), 2);
        assert_eq!(c.coefficient(4), 0);
    }

    #[test]
    fn working_column_cancels_lazily() {
        let f5 = PrimeField::new(5).unwrap();
        let mut w = WorkingColumn::new();
        let a = SparseColumn::from_entries([(1, 1), (3, 2), (6, 4)], &f5);
        let b = SparseColumn::from_entries([(2, 1), (6, 1)], &f5);
        w.add_scaled(&a, 1, &f5);
        assert_eq!(w.pivot(&f5), Some((6, 4)));
        w.add_scaled(&b, 1, &f5);
        assert_eq!(w.pivot(&f5), Some((3, 2)));
        let col = w.into_column(&f5);
        assert_eq!(col, a.axpy(1, &b, &f5));
    }
}
