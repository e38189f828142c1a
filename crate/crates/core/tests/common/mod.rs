//! Fixtures, random instances and independent oracles shared by the
//! integration tests. Nothing here calls into the code paths it checks.

#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use targetctl::io::{parse_json, LoadedGraph};
use targetctl::{DiGraph, Matrix, Rational, VertexSet};

pub fn fixture(name: &str) -> LoadedGraph {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_json(&text).unwrap()
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

/// Random simple digraph on `n` vertices; the arc density is drawn from
/// `density`, then each ordered pair is an arc independently.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: std::ops::Range<f64>) -> DiGraph {
    let density = rng.random_range(density);
    let mut arcs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.random_bool(density) {
                arcs.push((u, v));
            }
        }
    }
    DiGraph::new(n, arcs).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, nonempty: bool) -> VertexSet {
    loop {
        let s: VertexSet = (1..=n).filter(|_| rng.random_bool(0.4)).collect();
        if !nonempty || !s.is_empty() {
            return s;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random matrix with the support of `g` (weights in ±1..=5, diagonal in
/// -3..=3), with no distance-preserving guarantee.
pub fn random_q_matrix(rng: &mut ChaCha8Rng, g: &DiGraph) -> Matrix<Rational> {
    let n = g.n();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            rat(rng.random_range(-3..=3))
        } else if g.has_arc(j + 1, i + 1) {
            let v = rng.random_range(1..=5);
            rat(if rng.random_bool(0.5) { v } else { -v })
        } else {
            rat(0)
        }
    })
}

/// Floyd-Warshall distances, `None` for unreachable; `[u-1][v-1] = d(u, v)`.
pub fn floyd_warshall(g: &DiGraph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = Some(0);
    }
    for (u, v) in g.arcs() {
        d[u - 1][v - 1] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Naive closure under the color-change rule: sweep all vertices until a
/// full sweep changes nothing.
pub fn naive_closure(g: &DiGraph, initial: &[bool]) -> Vec<bool> {
    let mut black = initial.to_vec();
    loop {
        let mut changed = false;
        for u in 1..=g.n() {
            if !black[u - 1] {
                continue;
            }
            let whites: Vec<usize> = g
                .out_neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !black[w - 1])
                .collect();
            if whites.len() == 1 {
                black[whites[0] - 1] = true;
                changed = true;
            }
        }
        if !changed {
            return black;
        }
    }
}

/// Rank by textbook Gauss-Jordan elimination over the rationals.
pub fn gauss_rank(m: &Matrix<Rational>) -> usize {
    let mut a = m.to_rows();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = Rational::one() / a[rank][c].clone();
        for v in a[rank].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let sub = f.clone() * a[rank][j].clone();
                    a[i][j] = a[i][j].clone() - sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Output controllability matrix assembled from explicit powers, no early
/// exit.
pub fn ctrb_matrix(x: &Matrix<Rational>, leaders: &VertexSet, targets: &VertexSet) -> Matrix<Rational> {
    let n = x.rows();
    let mut power: Matrix<Rational> = Matrix::identity(n);
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for _ in 0..n {
        for l in leaders.iter() {
            cols.push(targets.iter().map(|t| power[(t - 1, l - 1)].clone()).collect());
        }
        power = oracle_mul(&power, x);
    }
    Matrix::from_rows(cols).transpose()
}

/// Every subset of `0..n` as a bitmask, smallest cardinality first.
pub fn exhaustive_min_cover(rows: &[Vec<u8>], n: usize) -> (usize, Vec<Vec<usize>>) {
    let mut best = usize::MAX;
    let mut optima = Vec::new();
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > best {
            continue;
        }
        let covers = rows
            .iter()
            .all(|row| (0..n).any(|j| mask >> j & 1 == 1 && row[j] == 1));
        if !covers {
            continue;
        }
        if size < best {
            best = size;
            optima.clear();
        }
        optima.push((0..n).filter(|j| mask >> j & 1 == 1).map(|j| j + 1).collect());
    }
    optima.sort();
    (best, optima)
}

/// Schoolbook product, independent of the library's multiplication.
pub fn oracle_mul(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(rat(0), |acc, k| acc + a[(i, k)].clone() * b[(k, j)].clone())
    })
}

/// Checks `d(j, i) = k` implies `(X^k)_{ij} != 0` for distinct `i`, `j`,
/// straight from the definition.
pub fn oracle_distance_preserving(g: &DiGraph, x: &Matrix<Rational>) -> bool {
    let n = g.n();
    let d = floyd_warshall(g);
    let mut power = x.clone();
    for k in 1..n {
        for i in 0..n {
            for j in 0..n {
                if i != j && d[j][i] == Some(k) && power[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        power = oracle_mul(&power, x);
    }
    true
}
