#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rips_image::{DistanceMatrix, FiltrationPair};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Codomain uniform in (0, 1]; domain adds a nonnegative perturbation that
/// is zero on about a third of the pairs.
pub fn random_pair(rng: &mut impl Rng, n: usize, max_dim: usize, threshold: f64) -> FiltrationPair {
    let mut dk = vec![0.0; n * n];
    let mut dl = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let k = 1.0 - rng.random::<f64>();
            let bump = if rng.random_bool(1.0 / 3.0) {
                0.0
            } else {
                rng.random::<f64>() * 0.5
            };
            dk[i * n + j] = k;
            dl[i * n + j] = k + bump;
        }
    }
    build(n, &dl, &dk, max_dim, threshold)
}

/// Values on a coarse grid so that many simplices share a value in both
/// filtrations.
pub fn quantized_pair(
    rng: &mut impl Rng,
    n: usize,
    max_dim: usize,
    threshold: f64,
) -> FiltrationPair {
    let mut dk = vec![0.0; n * n];
    let mut dl = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let k = rng.random_range(1..=4) as f64 / 4.0;
            dk[i * n + j] = k;
            dl[i * n + j] = k + rng.random_range(0..=2) as f64 / 4.0;
        }
    }
    build(n, &dl, &dk, max_dim, threshold)
}

fn build(n: usize, dl: &[f64], dk: &[f64], max_dim: usize, threshold: f64) -> FiltrationPair {
    let dl = DistanceMatrix::from_fn(n, |i, j| dl[i * n + j]).unwrap();
    let dk = DistanceMatrix::from_fn(n, |i, j| dk[i * n + j]).unwrap();
    FiltrationPair::new(dl, dk, max_dim, threshold).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> DistanceMatrix {
    let vals: Vec<f64> = (0..n * n).map(|_| 1.0 - rng.random::<f64>()).collect();
    DistanceMatrix::from_fn(n, |i, j| vals[i * n + j]).unwrap()
}

/// Uniform points on the unit sphere: geodesic distance as domain, chord
/// length as codomain.
pub fn sphere_pair(seed: u64, n: usize, max_dim: usize) -> FiltrationPair {
    let mut rng = rng(seed);
    let points: Vec<[f64; 3]> = (0..n)
        .map(|_| loop {
            let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-9 {
                break v.map(|x| x / norm);
            }
        })
        .collect();
    let chord = DistanceMatrix::from_fn(n, |i, j| {
        points[i]
            .iter()
            .zip(&points[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    })
    .unwrap();
    let geodesic =
        DistanceMatrix::from_fn(n, |i, j| 2.0 * (chord.get(i, j) / 2.0).min(1.0).asin()).unwrap();
    FiltrationPair::new(geodesic, chord, max_dim, f64::INFINITY).unwrap()
}

/// The six points `+-e_i` in R^3, each coordinate jittered by up to
/// `jitter`: geodesic distance on the unit sphere as domain, chord length as
/// codomain. Without jitter both have a 2-cycle.
pub fn octahedron_pair(rng: &mut impl Rng, jitter: f64, max_dim: usize) -> FiltrationPair {
    let points: Vec<[f64; 3]> = (0..6)
        .map(|i| {
            let mut v = [0.0; 3];
            v[i / 2] = if i % 2 == 0 { 1.0 } else { -1.0 };
            let v = v.map(|x| x + jitter * (2.0 * rng.random::<f64>() - 1.0));
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.map(|x| x / norm)
        })
        .collect();
    let chord = |i: usize, j: usize| {
        points[i]
            .iter()
            .zip(&points[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    };
    let dk = DistanceMatrix::from_fn(6, chord).unwrap();
    let dl = DistanceMatrix::from_fn(6, |i, j| 2.0 * (chord(i, j) / 2.0).min(1.0).asin()).unwrap();
    FiltrationPair::new(dl, dk, max_dim, f64::INFINITY).unwrap()
}

pub fn square_pair(max_dim: usize) -> FiltrationPair {
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
    let arc =
        DistanceMatrix::from_fn(4, |i, j| if (i - j) % 2 == 1 { FRAC_PI_2 } else { PI }).unwrap();
    let chord =
        DistanceMatrix::from_fn(4, |i, j| if (i - j) % 2 == 1 { SQRT_2 } else { 2.0 }).unwrap();
    FiltrationPair::new(arc, chord, max_dim, f64::INFINITY).unwrap()
}

/// Sorted values, for multiset comparisons.
pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// Whether the multiset `small` is contained in the multiset `big`.
pub fn is_submultiset(small: &[f64], big: &[f64]) -> bool {
    let (small, big) = (sorted(small.to_vec()), sorted(big.to_vec()));
    let mut j = 0;
    for x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}
