//! Intervals and barcodes.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A half-open bar `[birth, death)` in homological degree `degree`. An
/// infinite death is stored as `f64::INFINITY` and serialized as `null`.
///
/// Witnesses, when present, are vertex lists in decreasing order: the
/// birth simplex has dimension `degree`, the death simplex `degree + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub degree: usize,
    pub birth: f64,
    #[serde(with = "death_serde")]
    pub death: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub birth_simplex: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub death_simplex: Option<Vec<usize>>,
}

mod death_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(death: &f64, s: S) -> Result<S::Ok, S::Error> {
        if death.is_infinite() {
            s.serialize_none()
        } else {
            s.serialize_some(death)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl Interval {
    pub fn new(degree: usize, birth: f64, death: f64) -> Self {
        debug_assert!(birth < death, "empty interval [{birth}, {death})");
        Self {
            degree,
            birth,
            death,
            birth_simplex: None,
            death_simplex: None,
        }
    }

    pub fn essential(degree: usize, birth: f64) -> Self {
        Self::new(degree, birth, f64::INFINITY)
    }

    pub fn with_witnesses(mut self, birth: Vec<usize>, death: Option<Vec<usize>>) -> Self {
        self.birth_simplex = Some(birth);
        self.death_simplex = death;
        self
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// Ordering by degree, birth, death, then witnesses.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then(self.birth.total_cmp(&other.birth))
            .then(self.death.total_cmp(&other.death))
            .then_with(|| self.birth_simplex.cmp(&other.birth_simplex))
            .then_with(|| self.death_simplex.cmp(&other.death_simplex))
    }
}

/// A multiset of intervals across degrees. Equality compares the multisets
/// of `(degree, birth, death)` and ignores witnesses.
#[derive(Clone, Debug, Default)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

impl Barcode {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, interval: Interval) {
        self.intervals.push(interval);
    }

    pub fn extend<I: IntoIterator<Item = Interval>>(&mut self, intervals: I) {
        self.intervals.extend(intervals);
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn into_intervals(self) -> Vec<Interval> {
        self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn in_degree(&self, degree: usize) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(move |i| i.degree == degree)
    }

    /// Sorted `(birth, death)` pairs of one degree.
    pub fn pairs(&self, degree: usize) -> Vec<(f64, f64)> {
        let mut p: Vec<(f64, f64)> = self.in_degree(degree).map(|i| (i.birth, i.death)).collect();
        p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        p
    }

    /// Sorts into the canonical output order.
    pub fn sort(&mut self) {
        self.intervals.sort_by(Interval::canonical_cmp);
    }

    pub fn sorted(mut self) -> Self {
        self.sort();
        self
    }

    pub fn without_witnesses(&self) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .map(|i| Interval {
                    birth_simplex: None,
                    death_simplex: None,
                    ..i.clone()
                })
                .collect(),
        }
    }

    fn signature(&self) -> Vec<(usize, u64, u64)> {
        let mut s: Vec<(usize, u64, u64)> = self
            .intervals
            .iter()
            .map(|i| (i.degree, i.birth.to_bits(), i.death.to_bits()))
            .collect();
        s.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then(f64::from_bits(a.1).total_cmp(&f64::from_bits(b.1)))
                .then(f64::from_bits(a.2).total_cmp(&f64::from_bits(b.2)))
        });
        s
    }

    /// Human-readable description of how two barcodes differ, per degree.
    pub fn difference(&self, other: &Barcode) -> Option<String> {
        if self == other {
            return None;
        }
        let max_deg = self
            .intervals
            .iter()
            .chain(&other.intervals)
            .map(|i| i.degree)
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for d in 0..=max_deg {
            let (a, b) = (self.pairs(d), other.pairs(d));
            if a != b {
                out.push_str(&format!("degree {d}: {a:?} vs {b:?}\n"));
            }
        }
        Some(out)
    }
}

impl PartialEq for Barcode {
    fn eq(&self, other: &Self) -> bool {
        self.signature() == other.signature()
    }
}

impl FromIterator<Interval> for Barcode {
    fn from_iter<I: IntoIterator<Item = Interval>>(iter: I) -> Self {
        Self {
            intervals: iter.into_iter().collect(),
        }
    }
}
