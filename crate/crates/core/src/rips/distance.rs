//! Dissimilarity matrices, their text formats, and the dominance check
//! `d_domain >= d_codomain` that makes one Rips filtration a subfiltration of
//! the other.

use std::fmt;

/// Relative tolerance for accepting a full matrix as symmetric.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Maximum number of violating pairs listed in a [`DominanceError`].
pub const MAX_REPORTED_VIOLATIONS: usize = 10;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum InputError {
    #[error("input contains no data")]
    Empty,
    #[error("line {line}: cannot parse '{token}' as a number")]
    Token { line: usize, token: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry ({i}, {j}) = {a} differs from ({j}, {i}) = {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },
    #[error("entry ({i}, {j}) is negative: {value}")]
    Negative { i: usize, j: usize, value: f64 },
    #[error("entry ({i}, {j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("diagonal entry {i} is {value}, expected 0")]
    NonzeroDiagonal { i: usize, value: f64 },
}

/// A symmetric, nonnegative dissimilarity with zero diagonal on `n` points.
/// The triangle inequality is not required.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from `f(i, j)` evaluated for `i > j`.
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self, InputError>
    where
        F: FnMut(usize, usize) -> f64,
    {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                let value = f(i, j);
                check_entry(i, j, value)?;
                data[i * n + j] = value;
                data[j * n + i] = value;
            }
        }
        Ok(Self { n, data })
    }

    /// Lower-triangular rows: row `i` (for points `1..n`) holds `d(i, 0..i)`.
    pub fn from_lower(rows: &[Vec<f64>]) -> Result<Self, InputError> {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(InputError::Ragged {
                    line: r + 1,
                    expected: r + 1,
                    found: row.len(),
                });
            }
        }
        Self::from_fn(rows.len() + 1, |i, j| rows[i - 1][j])
    }

    pub fn from_full(rows: &[Vec<f64>]) -> Result<Self, InputError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(InputError::Ragged {
                    line: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            if row[i] != 0.0 {
                return Err(InputError::NonzeroDiagonal { i, value: row[i] });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &a) in row[..i].iter().enumerate() {
                let b = rows[j][i];
                check_entry(i, j, a)?;
                check_entry(j, i, b)?;
                if (a - b).abs() > SYMMETRY_TOLERANCE * a.abs().max(b.abs()) {
                    return Err(InputError::Asymmetric { i, j, a, b });
                }
            }
        }
        Self::from_fn(n, |i, j| rows[i][j])
    }

    /// Euclidean distances between coordinate rows.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self, InputError> {
        if let Some(first) = points.first() {
            for (i, p) in points.iter().enumerate() {
                if p.len() != first.len() {
                    return Err(InputError::Ragged {
                        line: i + 1,
                        expected: first.len(),
                        found: p.len(),
                    });
                }
                if let Some(k) = p.iter().position(|x| !x.is_finite()) {
                    return Err(InputError::NonFinite { i, j: k });
                }
            }
        }
        Self::from_fn(points.len(), |i, j| {
            points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Lower-triangular rows in the same layout [`DistanceMatrix::from_lower`] reads.
    pub fn lower_rows(&self) -> Vec<Vec<f64>> {
        (1..self.n)
            .map(|i| (0..i).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

fn check_entry(i: usize, j: usize, value: f64) -> Result<(), InputError> {
    if !value.is_finite() {
        return Err(InputError::NonFinite { i, j });
    }
    if value < 0.0 {
        return Err(InputError::Negative { i, j, value });
    }
    Ok(())
}

/// Text layouts accepted by [`parse_distance_input`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    /// Row `i` holds the `i` distances `d(i, 0), ..., d(i, i-1)`; the empty
    /// first row may be omitted.
    LowerDistance,
    /// `n` rows of `n` entries.
    FullMatrix,
    /// One coordinate vector per row; Euclidean distances are computed.
    PointCloud,
}

fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>, InputError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>().map_err(|_| InputError::Token {
                    line: lineno + 1,
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Parses a dissimilarity from text. Tokens are separated by whitespace or
/// commas; lines starting with `#` are comments.
pub fn parse_distance_input(text: &str, format: InputFormat) -> Result<DistanceMatrix, InputError> {
    let rows = parse_rows(text)?;
    if rows.is_empty() {
        return Err(InputError::Empty);
    }
    match format {
        InputFormat::LowerDistance => DistanceMatrix::from_lower(&rows),
        InputFormat::FullMatrix => DistanceMatrix::from_full(&rows),
        InputFormat::PointCloud => DistanceMatrix::from_points(&rows),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DominanceViolation {
    pub i: usize,
    pub j: usize,
    pub domain: f64,
    pub codomain: f64,
}

impl fmt::Display for DominanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): domain {} < codomain {}",
            self.i, self.j, self.domain, self.codomain
        )
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DominanceError {
    #[error("domain has {domain} points but codomain has {codomain}")]
    SizeMismatch { domain: usize, codomain: usize },
    #[error("domain distance is smaller than codomain distance at {total} pairs")]
    Violations {
        total: usize,
        examples: Vec<DominanceViolation>,
    },
}

/// Checks `domain[i][j] >= codomain[i][j]` for all pairs.
pub fn validate_dominance(
    domain: &DistanceMatrix,
    codomain: &DistanceMatrix,
) -> Result<(), DominanceError> {
    if domain.len() != codomain.len() {
        return Err(DominanceError::SizeMismatch {
            domain: domain.len(),
            codomain: codomain.len(),
        });
    }
    let mut total = 0;
    let mut examples = Vec::new();
    for i in 0..domain.len() {
        for j in 0..i {
            let (a, b) = (domain.get(i, j), codomain.get(i, j));
            if a < b {
                total += 1;
                if examples.len() < MAX_REPORTED_VIOLATIONS {
                    examples.push(DominanceViolation {
                        i: j,
                        j: i,
                        domain: a,
                        codomain: b,
                    });
                }
            }
        }
    }
    if total > 0 {
        Err(DominanceError::Violations { total, examples })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_distance_example() {
        let d = parse_distance_input("1\n1 1", InputFormat::LowerDistance).unwrap();
        assert_eq!(d.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(i, j), if i == j { 0.0 } else { 1.0 });
            }
        }
    }

    #[test]
    fn lower_distance_commas_and_comments() {
        let d =
            parse_distance_input("# header\n2.5\n\n3, 4\n", InputFormat::LowerDistance).unwrap();
        assert_eq!(d.get(0, 1), 2.5);
        assert_eq!(d.get(2, 0), 3.0);
        assert_eq!(d.get(1, 2), 4.0);
        assert_eq!(d.lower_rows(), vec![vec![2.5], vec![3.0, 4.0]]);
    }

    #[test]
    fn point_cloud_example() {
        let d = parse_distance_input("0 0\n3 4", InputFormat::PointCloud).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.get(0, 1), 5.0);
    }

    #[test]
    fn full_matrix_symmetry() {
        let ok = parse_distance_input("0 1\n1 0", InputFormat::FullMatrix).unwrap();
        assert_eq!(ok.get(1, 0), 1.0);
        let err = parse_distance_input("0 1\n2 0", InputFormat::FullMatrix).unwrap_err();
        assert!(matches!(err, InputError::Asymmetric { .. }));
        // within relative tolerance
        assert!(parse_distance_input("0 1\n1.0000000000000002 0", InputFormat::FullMatrix).is_ok());
    }

    #[test]
    fn malformed_inputs() {
        use InputFormat::*;
        assert!(matches!(
            parse_distance_input("", LowerDistance),
            Err(InputError::Empty)
        ));
        assert!(matches!(
            parse_distance_input("# only\n", FullMatrix),
            Err(InputError::Empty)
        ));
        assert!(matches!(
            parse_distance_input("1\n1 x", LowerDistance),
            Err(InputError::Token { line: 2, .. })
        ));
        assert!(matches!(
            parse_distance_input("1\n1", LowerDistance),
            Err(InputError::Ragged {
                line: 2,
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_distance_input("0 1\n1", FullMatrix),
            Err(InputError::Ragged { .. })
        ));
        assert!(matches!(
            parse_distance_input("0 0\n1", PointCloud),
            Err(InputError::Ragged { .. })
        ));
        assert!(matches!(
            parse_distance_input("-1", LowerDistance),
            Err(InputError::Negative { .. })
        ));
        assert!(matches!(
            parse_distance_input("inf", LowerDistance),
            Err(InputError::NonFinite { .. })
        ));
        assert!(matches!(
            parse_distance_input("1 1\n1 0", FullMatrix),
            Err(InputError::NonzeroDiagonal { i: 0, .. })
        ));
    }

    #[test]
    fn dominance() {
        let two = DistanceMatrix::from_fn(2, |_, _| 2.0).unwrap();
        let one = DistanceMatrix::from_fn(2, |_, _| 1.0).unwrap();
        assert!(validate_dominance(&two, &one).is_ok());
        assert!(validate_dominance(&one, &one).is_ok());
        match validate_dominance(&one, &two) {
            Err(DominanceError::Violations { total, examples }) => {
                assert_eq!(total, 1);
                assert_eq!((examples[0].i, examples[0].j), (0, 1));
            }
            other => panic!("{other:?}"),
        }
        let three = DistanceMatrix::from_fn(3, |_, _| 1.0).unwrap();
        assert!(matches!(
            validate_dominance(&three, &one),
            Err(DominanceError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn violation_report_is_capped() {
        let small = DistanceMatrix::from_fn(8, |_, _| 1.0).unwrap();
        let big = DistanceMatrix::from_fn(8, |_, _| 2.0).unwrap();
        match validate_dominance(&small, &big) {
            Err(DominanceError::Violations { total, examples }) => {
                assert_eq!(total, 28);
                assert_eq!(examples.len(), MAX_REPORTED_VIOLATIONS);
            }
            other => panic!("{other:?}"),
        }
    }
}
