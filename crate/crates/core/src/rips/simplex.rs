//! Simplices encoded in the combinatorial number system.
//!
//! A `dim`-simplex with vertices `v_0 < v_1 < ... < v_dim` has index
//! `sum_i C(v_i, i + 1)`. Within a fixed dimension this is a bijection onto
//! `0..C(n, dim + 1)` that orders vertex sets colexicographically.

use super::DistanceMatrix;

/// Binomial coefficients `C(m, k)` for `m <= n`, `k <= max_k`.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    n: usize,
    max_k: usize,
    table: Vec<u64>,
}

impl BinomialTable {
    /// Saturates at `u64::MAX` instead of overflowing.
    pub fn new(n: usize, max_k: usize) -> Self {
        let width = max_k + 1;
        let mut table = vec![0u64; (n + 1) * width];
        for m in 0..=n {
            table[m * width] = 1;
            for k in 1..=max_k.min(m) {
                let above = if k < m { table[(m - 1) * width + k] } else { 0 };
                table[m * width + k] = table[(m - 1) * width + k - 1].saturating_add(above);
            }
        }
        Self { n, max_k, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, m: usize, k: usize) -> u64 {
        debug_assert!(k <= self.max_k, "binomial k={k} beyond table");
        if m > self.n {
            // Only reached by the vertex search for indices that cannot
            // occur; any value larger than every valid index works.
            return u64::MAX;
        }
        self.table[m * (self.max_k + 1) + k]
    }

    /// Number of `dim`-simplices on `n` vertices.
    pub fn simplex_count(&self, dim: usize) -> u64 {
        self.get(self.n, dim + 1)
    }
}

/// A simplex given by its combinatorial index and dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub index: u64,
    pub dim: usize,
}

impl Simplex {
    pub fn new(index: u64, dim: usize) -> Self {
        Self { index, dim }
    }

    pub fn vertex(v: usize) -> Self {
        Self::new(v as u64, 0)
    }

    /// Encodes a vertex set (any order, no duplicates).
    pub fn from_vertices(vertices: &[usize], binomials: &BinomialTable) -> Self {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        debug_assert!(vs.windows(2).all(|w| w[0] < w[1]), "duplicate vertex");
        let index = vs
            .iter()
            .enumerate()
            .map(|(i, &v)| binomials.get(v, i + 1))
            .sum();
        Self::new(index, vs.len() - 1)
    }

    /// Vertices in strictly decreasing order.
    pub fn vertices(&self, binomials: &BinomialTable) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim + 1);
        let mut idx = self.index;
        let mut upper = binomials.n();
        for k in (1..=self.dim + 1).rev() {
            let v = max_vertex(idx, k, upper, binomials);
            out.push(v);
            idx -= binomials.get(v, k);
            upper = v;
        }
        out
    }

    /// Facets with their boundary signs: removing the vertex at ascending
    /// position `i` contributes `(-1)^i`. `true` marks a negative sign.
    pub fn facets(&self, binomials: &BinomialTable) -> Vec<(Simplex, bool)> {
        if self.dim == 0 {
            return Vec::new();
        }
        let vs = self.vertices(binomials);
        let top = vs.len() - 1;
        (0..vs.len())
            .map(|p| {
                let rest: Vec<usize> = vs
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != p)
                    .map(|(_, &v)| v)
                    .collect();
                let ascending_position = top - p;
                (
                    Simplex::from_vertices(&rest, binomials),
                    ascending_position % 2 == 1,
                )
            })
            .collect()
    }

    /// Iterator over cofacets in decreasing index order.
    pub fn cofacets<'a>(&self, binomials: &'a BinomialTable) -> Cofacets<'a> {
        Cofacets::new(*self, binomials)
    }
}

/// Largest `v < upper` with `C(v, k) <= idx`.
fn max_vertex(idx: u64, k: usize, upper: usize, binomials: &BinomialTable) -> usize {
    let (mut lo, mut hi) = (k - 1, upper);
    // invariant: C(lo, k) <= idx < C(hi, k)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if binomials.get(mid, k) <= idx {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Cofacets `sigma + {v}` for `v` from `n - 1` down to `0`, which visits them
/// in decreasing combinatorial index. Each item carries the coboundary sign
/// `(-1)^k` where `k` counts the vertices of `sigma` below `v`.
pub struct Cofacets<'a> {
    binomials: &'a BinomialTable,
    vertices: Vec<usize>,
    next_vertex: Option<usize>,
    passed: usize,
    idx_above: u64,
    idx_below: u64,
    dim: usize,
}

impl<'a> Cofacets<'a> {
    fn new(simplex: Simplex, binomials: &'a BinomialTable) -> Self {
        Self {
            binomials,
            vertices: simplex.vertices(binomials),
            next_vertex: binomials.n().checked_sub(1),
            passed: 0,
            idx_above: 0,
            idx_below: simplex.index,
            dim: simplex.dim,
        }
    }
}

/// One cofacet with its coboundary sign and the vertex that was added.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cofacet {
    pub simplex: Simplex,
    pub negative: bool,
    pub added_vertex: usize,
}

impl Iterator for Cofacets<'_> {
    type Item = Cofacet;

    fn next(&mut self) -> Option<Cofacet> {
        loop {
            let v = self.next_vertex?;
            self.next_vertex = v.checked_sub(1);
            let len = self.vertices.len();
            if self.passed < len && self.vertices[self.passed] == v {
                // v belongs to sigma: it moves up one position in every
                // cofacet formed with a smaller vertex.
                let ascending = len - 1 - self.passed;
                self.idx_below -= self.binomials.get(v, ascending + 1);
                self.idx_above += self.binomials.get(v, ascending + 2);
                self.passed += 1;
                continue;
            }
            let below = len - self.passed;
            let index = self.idx_above + self.binomials.get(v, below + 1) + self.idx_below;
            return Some(Cofacet {
                simplex: Simplex::new(index, self.dim + 1),
                negative: below % 2 == 1,
                added_vertex: v,
            });
        }
    }
}

/// Largest pairwise distance among the vertices; zero for a vertex.
pub fn simplex_diameter(
    simplex: Simplex,
    distances: &DistanceMatrix,
    binomials: &BinomialTable,
) -> f64 {
    vertex_set_diameter(&simplex.vertices(binomials), distances)
}

pub(crate) fn vertex_set_diameter(vertices: &[usize], distances: &DistanceMatrix) -> f64 {
    let mut diam: f64 = 0.0;
    for (a, &u) in vertices.iter().enumerate() {
        for &w in &vertices[a + 1..] {
            diam = diam.max(distances.get(u, w));
        }
    }
    diam
}
