//! Brute-force image persistence from ranks of the maps
//! `H_d(L_s) -> H_d(K_t)`, computed with dense elimination.
//!
//! Shares no code with the pipeline beyond the input types: simplices,
//! diameters, boundary signs and modular arithmetic are all done here.

use std::collections::HashMap;

use itertools::Itertools;

use crate::image::{Barcode, Interval};
use crate::rips::{DistanceMatrix, FiltrationPair};

/// Largest total simplex count (all dimensions up to `max_dim + 1`) the
/// oracle accepts.
pub const ORACLE_SIMPLEX_LIMIT: usize = 20_000;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("{count} simplices exceed the oracle limit of {limit}")]
    TooLarge { count: usize, limit: usize },
    #[error("rank requested for s = {s} > t = {t}")]
    GridViolation { s: f64, t: f64 },
    #[error("modulus {0} is not a prime below 2^15")]
    InvalidModulus(u32),
    #[error("degree {degree} exceeds the pair's dimension {max_dim}")]
    DegreeOutOfRange { degree: usize, max_dim: usize },
    #[error("negative multiplicity {value} for [{birth}, {death}) in degree {degree}")]
    NegativeMultiplicity {
        degree: usize,
        birth: f64,
        death: f64,
        value: i64,
    },
}

#[derive(Clone, Debug)]
struct Cell {
    vertices: Vec<usize>,
    l: f64,
    k: f64,
}

/// All simplices of the common complex, per dimension, with their domain
/// value (`+inf` past the threshold) and codomain value.
struct Complex {
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

fn diameter(vertices: &[usize], d: &DistanceMatrix) -> f64 {
    vertices
        .iter()
        .tuple_combinations()
        .map(|(&a, &b)| d.get(a, b))
        .fold(0.0, f64::max)
}

impl Complex {
    fn new(pair: &FiltrationPair, top_dim: usize) -> Result<Self, OracleError> {
        let n = pair.n();
        let thr = pair.threshold();
        let mut cells = Vec::new();
        let mut index = Vec::new();
        let mut count = 0;
        for dim in 0..=top_dim {
            let mut level = Vec::new();
            let mut lookup = HashMap::new();
            for vertices in (0..n).combinations(dim + 1) {
                let k = diameter(&vertices, pair.codomain());
                if k > thr {
                    continue;
                }
                let l = diameter(&vertices, pair.domain());
                let l = if l <= thr { l } else { f64::INFINITY };
                lookup.insert(vertices.clone(), level.len());
                level.push(Cell { vertices, l, k });
                count += 1;
                if count > ORACLE_SIMPLEX_LIMIT {
                    return Err(OracleError::TooLarge {
                        count,
                        limit: ORACLE_SIMPLEX_LIMIT,
                    });
                }
            }
            cells.push(level);
            index.push(lookup);
        }
        Ok(Self { cells, index })
    }

    /// Boundary of cell `c` of dimension `dim >= 1` as a dense vector over
    /// the `(dim - 1)`-cells.
    fn boundary(&self, dim: usize, c: usize, p: u64) -> Vec<u64> {
        let mut out = vec![0; self.cells[dim - 1].len()];
        let vs = &self.cells[dim][c].vertices;
        for i in 0..vs.len() {
            let mut face = vs.clone();
            face.remove(i);
            let row = self.index[dim - 1][&face];
            out[row] = if i % 2 == 0 { 1 } else { p - 1 };
        }
        out
    }

    fn len(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn check_prime(p: u32) -> Result<u64, OracleError> {
    let ok = (2..1 << 15).contains(&p)
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d));
    if ok {
        Ok(p as u64)
    } else {
        Err(OracleError::InvalidModulus(p))
    }
}

/// Row-echelon basis of a subspace of `F_p^m`. Each stored vector is
/// normalized to leading coefficient 1, and may carry a companion vector
/// that records it as a combination of the inserted vectors.
#[derive(Clone)]
struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
    by_lead: HashMap<usize, usize>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Self {
            p,
            rows: Vec::new(),
            by_lead: HashMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`. Returns `None` if it was independent, or the companion
    /// of the zero vector it reduced to.
    fn insert(&mut self, mut v: Vec<u64>, mut companion: Vec<u64>) -> Option<Vec<u64>> {
        let p = self.p;
        loop {
            let Some(lead) = v.iter().position(|&x| x != 0) else {
                return Some(companion);
            };
            match self.by_lead.get(&lead) {
                Some(&r) => {
                    let (_, row, comp) = &self.rows[r];
                    let f = v[lead];
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = (*x + (p - f) * y) % p;
                    }
                    for (x, y) in companion.iter_mut().zip(comp) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
                None => {
                    let inv = pow_mod(v[lead], p - 2, p);
                    for x in v.iter_mut().chain(companion.iter_mut()) {
                        *x = *x * inv % p;
                    }
                    self.by_lead.insert(lead, self.rows.len());
                    self.rows.push((lead, v, companion));
                    return None;
                }
            }
        }
    }

    fn insert_plain(&mut self, v: Vec<u64>) -> bool {
        self.insert(v, Vec::new()).is_none()
    }
}

/// Cycles of `L` in one degree, each with the domain value at which it
/// appears, in order of appearance. The cycles born at or before `s` form
/// a basis of `Z_degree(L_s)`.
fn cycle_basis(complex: &Complex, degree: usize, p: u64) -> Vec<(f64, Vec<u64>)> {
    let m = complex.len(degree);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        complex.cells[degree][a]
            .l
            .total_cmp(&complex.cells[degree][b].l)
    });
    let mut echelon = Echelon::new(p);
    let mut cycles = Vec::new();
    for c in order {
        let l = complex.cells[degree][c].l;
        if !l.is_finite() {
            break;
        }
        let mut unit = vec![0; m];
        unit[c] = 1;
        if degree == 0 {
            cycles.push((l, unit));
            continue;
        }
        if let Some(z) = echelon.insert(complex.boundary(degree, c, p), unit) {
            cycles.push((l, z));
        }
    }
    cycles
}

/// Boundaries of `degree + 1`-cells sorted by codomain value.
fn boundaries_by_k(complex: &Complex, degree: usize, p: u64) -> Vec<(f64, Vec<u64>)> {
    let mut out: Vec<(f64, Vec<u64>)> = (0..complex.len(degree + 1))
        .map(|c| {
            (
                complex.cells[degree + 1][c].k,
                complex.boundary(degree + 1, c, p),
            )
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Ranks of `H_degree(L_s) -> H_degree(K_t)` for all grid scales `s <= t`.
#[derive(Clone, Debug)]
pub struct RankGrid {
    pub degree: usize,
    pub scales: Vec<f64>,
    ranks: Vec<Vec<usize>>,
}

impl RankGrid {
    /// `rank(a, b)` for scale indices `a <= b`.
    pub fn rank(&self, a: usize, b: usize) -> Option<usize> {
        (a <= b && b < self.scales.len()).then(|| self.ranks[a][b - a])
    }

    /// Non-increasing in `t`, non-decreasing in `s`.
    pub fn is_monotone(&self) -> bool {
        let m = self.scales.len();
        (0..m).all(|a| {
            (a..m).all(|b| {
                let r = self.rank(a, b).unwrap();
                (b + 1 >= m || self.rank(a, b + 1).unwrap() <= r)
                    && (a == 0 || self.rank(a - 1, b).unwrap() <= r)
            })
        })
    }
}

fn validate(
    pair: &FiltrationPair,
    degree: usize,
    modulus: u32,
) -> Result<(Complex, u64), OracleError> {
    let p = check_prime(modulus)?;
    if degree > pair.max_dim() {
        return Err(OracleError::DegreeOutOfRange {
            degree,
            max_dim: pair.max_dim(),
        });
    }
    Ok((Complex::new(pair, pair.max_dim() + 1)?, p))
}

/// Rank of `H_degree(L_s) -> H_degree(K_t)`: the rank of
/// `[Z_degree(L_s) | B_degree(K_t)]` minus the rank of `B_degree(K_t)`.
pub fn induced_rank(
    pair: &FiltrationPair,
    degree: usize,
    s: f64,
    t: f64,
    modulus: u32,
) -> Result<usize, OracleError> {
    if s > t {
        return Err(OracleError::GridViolation { s, t });
    }
    let (complex, p) = validate(pair, degree, modulus)?;
    let mut echelon = Echelon::new(p);
    for (k, b) in boundaries_by_k(&complex, degree, p) {
        if k <= t {
            echelon.insert_plain(b);
        }
    }
    let base = echelon.rank();
    for (l, z) in cycle_basis(&complex, degree, p) {
        if l <= s {
            echelon.insert_plain(z);
        }
    }
    Ok(echelon.rank() - base)
}

/// Ranks over the grid of all distinct finite domain and codomain values of
/// cells up to dimension `max_dim + 1`.
pub fn rank_grid(
    pair: &FiltrationPair,
    degree: usize,
    modulus: u32,
) -> Result<RankGrid, OracleError> {
    let (complex, p) = validate(pair, degree, modulus)?;
    let mut scales: Vec<f64> = complex
        .cells
        .iter()
        .flatten()
        .flat_map(|c| [c.l, c.k])
        .filter(|v| v.is_finite())
        .collect();
    scales.sort_by(f64::total_cmp);
    scales.dedup();

    let cycles = cycle_basis(&complex, degree, p);
    let boundaries = boundaries_by_k(&complex, degree, p);
    let m = scales.len();
    let mut ranks = vec![Vec::new(); m];
    let mut echelon = Echelon::new(p);
    let mut next_boundary = 0;
    for (b, &t) in scales.iter().enumerate() {
        while next_boundary < boundaries.len() && boundaries[next_boundary].0 <= t {
            echelon.insert_plain(boundaries[next_boundary].1.clone());
            next_boundary += 1;
        }
        let base = echelon.rank();
        let mut with_cycles = echelon.clone();
        let mut next_cycle = 0;
        let mut column = Vec::with_capacity(b + 1);
        for &s in &scales[..=b] {
            while next_cycle < cycles.len() && cycles[next_cycle].0 <= s {
                with_cycles.insert_plain(cycles[next_cycle].1.clone());
                next_cycle += 1;
            }
            column.push(with_cycles.rank() - base);
        }
        for (a, r) in column.into_iter().enumerate() {
            ranks[a].push(r);
        }
    }
    Ok(RankGrid {
        degree,
        scales,
        ranks,
    })
}

/// Intervals by inclusion-exclusion over the rank function. Bars ending at
/// the last scale's rank are essential.
pub fn barcode_from_ranks(grid: &RankGrid) -> Result<Vec<Interval>, OracleError> {
    let m = grid.scales.len();
    let r = |a: Option<usize>, b: usize| -> i64 {
        a.map_or(0, |a| grid.rank(a, b).expect("a <= b") as i64)
    };
    let mut out = Vec::new();
    let mut emit = |birth: f64, death: f64, value: i64| -> Result<(), OracleError> {
        if value < 0 {
            return Err(OracleError::NegativeMultiplicity {
                degree: grid.degree,
                birth,
                death,
                value,
            });
        }
        for _ in 0..value {
            out.push(Interval::new(grid.degree, birth, death));
        }
        Ok(())
    };
    for a in 0..m {
        let prev = a.checked_sub(1);
        for b in a + 1..m {
            let mult = r(Some(a), b - 1) - r(Some(a), b) - r(prev, b - 1) + r(prev, b);
            emit(grid.scales[a], grid.scales[b], mult)?;
        }
        let mult = r(Some(a), m - 1) - r(prev, m - 1);
        emit(grid.scales[a], f64::INFINITY, mult)?;
    }
    Ok(out)
}

/// Image barcode in degrees `0..=pair.max_dim()`.
pub fn image_barcode_oracle(pair: &FiltrationPair, modulus: u32) -> Result<Barcode, OracleError> {
    let mut barcode = Barcode::new();
    for degree in 0..=pair.max_dim() {
        barcode.extend(barcode_from_ranks(&rank_grid(pair, degree, modulus)?)?);
    }
    Ok(barcode.sorted())
}
