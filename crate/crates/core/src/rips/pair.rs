use super::{
    simplex::vertex_set_diameter, validate_dominance, BinomialTable, DistanceMatrix,
    DominanceError, FiltrationOrder, OrderDirection, Simplex,
};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PairError {
    #[error(transparent)]
    Dominance(#[from] DominanceError),
    #[error("threshold must be positive or infinite, got {0}")]
    InvalidThreshold(f64),
    #[error("dimension {max_dim} on {n} points needs more simplices than an index table can hold")]
    DegreeOverflow { max_dim: usize, n: usize },
}

/// Two dissimilarities on the same points with `domain >= codomain`
/// entrywise, so that `Rips_t(domain)` is a subcomplex of `Rips_t(codomain)`
/// for every `t`.
///
/// With a finite threshold the common simplex set is the codomain complex at
/// the threshold; simplices that enter it but whose domain diameter exceeds
/// the threshold get domain value `+inf`, so both filtrations end on the same
/// complex.
#[derive(Clone, Debug)]
pub struct FiltrationPair {
    domain: DistanceMatrix,
    codomain: DistanceMatrix,
    max_dim: usize,
    threshold: f64,
}

impl FiltrationPair {
    pub fn new(
        domain: DistanceMatrix,
        codomain: DistanceMatrix,
        max_dim: usize,
        threshold: f64,
    ) -> Result<Self, PairError> {
        if threshold.is_nan() || threshold <= 0.0 {
            return Err(PairError::InvalidThreshold(threshold));
        }
        validate_dominance(&domain, &codomain)?;
        let n = domain.len();
        let rows = BinomialTable::new(n, max_dim + 2).get(n, max_dim + 2);
        if rows >= u32::MAX as u64 {
            return Err(PairError::DegreeOverflow { max_dim, n });
        }
        Ok(Self {
            domain,
            codomain,
            max_dim,
            threshold,
        })
    }

    /// The identity inclusion of a single filtration.
    pub fn identity(
        distances: DistanceMatrix,
        max_dim: usize,
        threshold: f64,
    ) -> Result<Self, PairError> {
        Self::new(distances.clone(), distances, max_dim, threshold)
    }

    pub fn domain(&self) -> &DistanceMatrix {
        &self.domain
    }

    pub fn codomain(&self) -> &DistanceMatrix {
        &self.codomain
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn n(&self) -> usize {
        self.domain.len()
    }

    /// Binomial table large enough for cofacets of `max_dim + 1`-simplices.
    pub fn binomials(&self) -> BinomialTable {
        BinomialTable::new(self.n(), self.max_dim + 3)
    }

    /// Domain value `l`, or `+inf` beyond the threshold.
    pub fn domain_value(&self, vertices: &[usize]) -> f64 {
        let l = vertex_set_diameter(vertices, &self.domain);
        if l <= self.threshold {
            l
        } else {
            f64::INFINITY
        }
    }

    /// Codomain value `k`; `None` if the simplex is beyond the threshold.
    pub fn codomain_value(&self, vertices: &[usize]) -> Option<f64> {
        let k = vertex_set_diameter(vertices, &self.codomain);
        (k <= self.threshold).then_some(k)
    }

    /// Orders of the `dim`-simplices by domain and by codomain value, in
    /// the given direction. Both contain exactly the same simplices.
    pub fn orders(
        &self,
        dim: usize,
        direction: OrderDirection,
        binomials: &BinomialTable,
    ) -> (FiltrationOrder, FiltrationOrder) {
        let count = if dim < self.n() {
            binomials.simplex_count(dim)
        } else {
            0
        };
        let mut by_domain = Vec::new();
        let mut by_codomain = Vec::new();
        for idx in 0..count {
            let s = Simplex::new(idx, dim);
            let vs = s.vertices(binomials);
            let Some(k) = self.codomain_value(&vs) else {
                continue;
            };
            let l = self.domain_value(&vs);
            debug_assert!(
                l >= k,
                "dominance violated on simplex {vs:?}: l = {l} < k = {k}"
            );
            by_domain.push((s, l));
            by_codomain.push((s, k));
        }
        (
            FiltrationOrder::from_values(dim, count, by_domain, direction),
            FiltrationOrder::from_values(dim, count, by_codomain, direction),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configuration() {
        let one = DistanceMatrix::from_fn(3, |_, _| 1.0).unwrap();
        let two = DistanceMatrix::from_fn(3, |_, _| 2.0).unwrap();
        assert!(matches!(
            FiltrationPair::new(one.clone(), two.clone(), 1, f64::INFINITY),
            Err(PairError::Dominance(_))
        ));
        assert!(matches!(
            FiltrationPair::new(two.clone(), one.clone(), 1, 0.0),
            Err(PairError::InvalidThreshold(_))
        ));
        assert!(FiltrationPair::new(two, one, 1, f64::INFINITY).is_ok());
        let big = DistanceMatrix::from_fn(2000, |_, _| 1.0).unwrap();
        assert!(matches!(
            FiltrationPair::identity(big, 3, f64::INFINITY),
            Err(PairError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn positions_are_a_permutation() {
        let dl = DistanceMatrix::from_fn(6, |i, j| 1.0 + ((i * 7 + j * 3) % 5) as f64).unwrap();
        let dk =
            DistanceMatrix::from_fn(6, |i, j| 1.0 + ((i * 7 + j * 3) % 5) as f64 / 2.0).unwrap();
        let pair = FiltrationPair::new(dl, dk, 2, 4.0).unwrap();
        let b = pair.binomials();
        for dim in 0..4 {
            let (lo, ko) = pair.orders(dim, OrderDirection::Reverse, &b);
            assert_eq!(lo.len(), ko.len());
            // F: L-position -> K-position, and back
            let forward: Vec<usize> = lo
                .simplices()
                .iter()
                .map(|&s| ko.position(s).unwrap())
                .collect();
            let mut seen = forward.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..lo.len()).collect::<Vec<_>>());
            for (p, &q) in forward.iter().enumerate() {
                assert_eq!(lo.position(ko.simplex_at(q)), Some(p));
            }
            // reverse direction: values non-increasing along positions
            assert!(lo.values().windows(2).all(|w| w[0] >= w[1]));
            assert!(ko.values().windows(2).all(|w| w[0] >= w[1]));
            for (s, &l) in lo.simplices().iter().zip(lo.values()) {
                assert!(l >= ko.value_of(*s).unwrap());
            }
        }
    }
}
