//! Random and exhaustive generators of finite metric spaces.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::metric::FiniteMetricSpace;
use crate::scalar::Scalar;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Shortest-path closure of random edge weights `a/b` with
/// `1 <= a <= max_numerator` and `1 <= b <= 4`. Always a metric.
pub fn random_metric<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, max_numerator: i64) -> FiniteMetricSpace<S> {
    let mut d = vec![vec![S::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = S::from_ratio(rng.gen_range(1..=max_numerator), rng.gen_range(1..=4));
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i == j || i == k || j == k {
                    continue;
                }
                let via = d[i][k].clone() + d[k][j].clone();
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::new(labels(n), d).expect("shortest-path closure is a metric")
}

/// Random points on a line with integer coordinates in `0..span`, kept distinct.
pub fn random_line<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, span: i64) -> FiniteMetricSpace<S> {
    assert!(span >= n as i64, "not enough room for distinct points");
    let mut xs: Vec<i64> = (0..span).collect();
    xs.shuffle(rng);
    xs.truncate(n);
    FiniteMetricSpace::new(
        labels(n),
        (0..n)
            .map(|i| (0..n).map(|j| S::from_i64((xs[i] - xs[j]).abs())).collect())
            .collect(),
    )
    .expect("distinct points on a line")
}

/// Agglomerative ultrametric: random clusters merge at the heights produced
/// by `next_height`, which must be positive and nondecreasing.
fn merged_ultrametric<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    mut next_height: impl FnMut(&mut R) -> S,
) -> FiniteMetricSpace<S> {
    let mut d = vec![vec![S::zero(); n]; n];
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while clusters.len() > 1 {
        let a = rng.gen_range(0..clusters.len());
        let mut b = rng.gen_range(0..clusters.len() - 1);
        if b >= a {
            b += 1;
        }
        let h = next_height(rng);
        for &x in &clusters[a] {
            for &y in &clusters[b] {
                d[x][y] = h.clone();
                d[y][x] = h.clone();
            }
        }
        let moved = std::mem::take(&mut clusters[b]);
        clusters[a].extend(moved);
        clusters.swap_remove(b);
    }
    FiniteMetricSpace::new(labels(n), d).expect("monotone merges give an ultrametric")
}

/// Random ultrametric with rational merge heights.
pub fn random_ultrametric<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> FiniteMetricSpace<S> {
    let mut h = S::zero();
    merged_ultrametric(rng, n, |rng| {
        // equal heights are allowed and produce larger uniform blocks
        if h.is_zero() || rng.gen_bool(0.7) {
            h = h.clone() + S::from_ratio(rng.gen_range(1..=6), rng.gen_range(1..=3));
        }
        h.clone()
    })
}

/// Random ultrametric whose distances are powers of three with exponents
/// in `lowest..=lowest + spread`.
pub fn random_3n_ultrametric<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    lowest: i64,
    spread: i64,
) -> FiniteMetricSpace<S> {
    let merges = n.saturating_sub(1).max(1) as f64;
    let mut e = lowest;
    merged_ultrametric(rng, n, |rng| {
        if e < lowest + spread && rng.gen_bool((spread as f64 / merges).min(1.0)) {
            e += 1;
        }
        crate::ThreePower::Pow(e).value()
    })
}

/// Nonempty random subset of `0..n`, ascending.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    assert!(n > 0);
    let size = rng.gen_range(1..=n);
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v.truncate(size);
    v.sort_unstable();
    v
}

/// Random permutation of `0..n`.
pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

/// Every metric on `n` points whose distances come from `alphabet`.
pub fn metrics_over_alphabet<S: Scalar>(n: usize, alphabet: &[S]) -> Vec<FiniteMetricSpace<S>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let k = alphabet.len();
    let total = k.checked_pow(pairs.len() as u32).expect("alphabet enumeration fits in usize");
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut d = vec![vec![S::zero(); n]; n];
        for &(i, j) in &pairs {
            let v = alphabet[code % k].clone();
            code /= k;
            d[i][j] = v.clone();
            d[j][i] = v;
        }
        if let Ok(space) = FiniteMetricSpace::new(labels(n), d) {
            out.push(space);
        }
    }
    out
}
