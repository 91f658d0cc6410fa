//! Reference implementations used as oracles by the integration suites.
//! They follow the definitions directly and share no code with the library
//! algorithms they check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ultrazero::lomega::LOmegaPoint;
use ultrazero::{MetricSpace, Rational, Scalar};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `ULTRAZERO_SEED` if set, otherwise a fixed default.
pub fn seed() -> u64 {
    std::env::var("ULTRAZERO_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Every triangle has its two largest sides equal.
pub fn ultrametric_by_triangles(s: &MetricSpace) -> bool {
    let n = s.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut sides = [s.d(i, j).clone(), s.d(j, k).clone(), s.d(i, k).clone()];
                sides.sort();
                if sides[1] != sides[2] {
                    return false;
                }
            }
        }
    }
    true
}

/// Minimax chain distance by Floyd-style relaxation over intermediate points.
pub fn minimax_closure(s: &MetricSpace) -> Vec<Vec<Rational>> {
    let n = s.len();
    let mut m: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| s.d(i, j).clone()).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = m[i][k].clone().max(m[k][j].clone());
                if via < m[i][j] {
                    m[i][j] = via;
                }
            }
        }
    }
    m
}

/// Components of the graph joining points at distance `<= scale`.
pub fn components(s: &MetricSpace, scale: &Rational) -> Vec<Vec<usize>> {
    let n = s.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = vec![];
        while let Some(x) = stack.pop() {
            comp.push(x);
            for y in 0..n {
                if !seen[y] && s.d(x, y) <= scale {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `(m, [(S, D(S))])` straight from the definition: largest component
/// diameter at every realized distance.
pub fn certificate_oracle(s: &MetricSpace) -> (Rational, Vec<(Rational, Rational)>) {
    let scales: BTreeSet<Rational> = s.pairs().map(|(i, j)| s.d(i, j).clone()).collect();
    let mut m = int(if s.len() < 2 { 1 } else { 0 });
    let mut table = Vec::new();
    for scale in scales {
        let mut big = int(0);
        for comp in components(s, &scale) {
            for &a in &comp {
                for &b in &comp {
                    if s.d(a, b) > &big {
                        big = s.d(a, b).clone();
                    }
                }
            }
        }
        let ratio = big.clone() / scale.clone();
        if ratio > m {
            m = ratio;
        }
        table.push((scale, big));
    }
    (m, table)
}

/// `3^-i` where `i` is the first index at which the symbols differ.
pub fn mu_oracle(p: &LOmegaPoint, q: &LOmegaPoint) -> Rational {
    let indices: BTreeSet<i64> = p.entries().chain(q.entries()).map(|(i, _)| i).collect();
    match indices.into_iter().find(|&i| p.symbol(i) != q.symbol(i)) {
        None => int(0),
        Some(i) => {
            let three = int(3);
            if i >= 0 {
                int(1) / num_traits::pow(three, i as usize)
            } else {
                num_traits::pow(three, (-i) as usize)
            }
        }
    }
}

/// Largest `d(f x, f y) / d(x, y)`.
pub fn lipschitz_oracle(s: &MetricSpace, map: &[usize]) -> Rational {
    let mut best = int(0);
    for x in 0..s.len() {
        for y in 0..s.len() {
            if x != y {
                let r = s.d(map[x], map[y]).clone() / s.d(x, y).clone();
                if r > best {
                    best = r;
                }
            }
        }
    }
    best
}

/// Least Lipschitz constant over all retractions onto `subset`.
pub fn best_retraction_oracle(s: &MetricSpace, subset: &[usize]) -> (Rational, Vec<usize>) {
    let free: Vec<usize> = (0..s.len()).filter(|x| !subset.contains(x)).collect();
    let mut map: Vec<usize> = (0..s.len()).collect();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let total = subset.len().pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &x in &free {
            map[x] = subset[c % subset.len()];
            c /= subset.len();
        }
        let k = lipschitz_oracle(s, &map);
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, map.clone()));
        }
    }
    best.expect("subset is nonempty")
}

/// `d_L` from the displayed formula on trimmed digit strings.
pub fn d_filtration_oracle(p: &[u64], q: &[u64]) -> u64 {
    let trim = |v: &[u64]| {
        let mut v = v.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let (p, q) = (trim(p), trim(q));
    if p.len() != q.len() {
        return p.len().max(q.len()) as u64;
    }
    (0..p.len()).rev().find(|&i| p[i] != q[i]).map_or(0, |i| i as u64 + 1)
}

/// `sum 2 p_i 3^(i-1)`
pub fn cantor_oracle(p: &[u64]) -> u128 {
    p.iter().rev().fold(0u128, |acc, &d| acc * 3 + 2 * d as u128)
}
