//! Dense degreewise oracles, independent of the Gröbner engine.

#![allow(dead_code)]

use brane_algebra::{Monomial, PolyMatrix, Polynomial, Rational};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let (top, bottom) = rows.split_at_mut(rank + 1);
        for row in bottom {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot;
                for (x, y) in row[c..].iter_mut().zip(&top[rank][c..]) {
                    *x -= y * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn binom(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
}

/// `dim (⊕ R(-t_c))_d`.
pub fn free_dim(nvars: usize, twists: &[i64], d: i64) -> usize {
    twists.iter().map(|&t| binom(d - t + nvars as i64 - 1, nvars as i64 - 1)).sum()
}

fn coordinates(v: &[Polynomial], twists: &[i64], d: i64, nvars: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    for (c, &t) in twists.iter().enumerate() {
        if d - t < 0 {
            continue;
        }
        for m in Monomial::all_of_degree(nvars, (d - t) as u32) {
            out.push(v[c].coefficient(&m));
        }
    }
    out
}

/// `dim` of the degree-`d` part of the column span of `m`.
pub fn span_dim(m: &PolyMatrix, d: i64) -> usize {
    let nvars = m.nvars();
    let mut rows = Vec::new();
    for (col, &t) in m.columns().iter().zip(m.col_twists()) {
        if d - t < 0 {
            continue;
        }
        for mono in Monomial::all_of_degree(nvars, (d - t) as u32) {
            let v: Vec<Polynomial> = col.iter().map(|e| e.mul_monomial(&mono)).collect();
            rows.push(coordinates(&v, m.row_twists(), d, nvars));
        }
    }
    rank(rows)
}

/// `dim (F / im rel)_d` for the presentation with row twists `twists`.
pub fn hilbert(rel: &PolyMatrix, d: i64) -> usize {
    free_dim(rel.nvars(), rel.row_twists(), d) - span_dim(rel, d)
}

pub fn random_form(rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> Polynomial {
    loop {
        let terms = Monomial::all_of_degree(nvars, degree)
            .into_iter()
            .filter_map(|m| rng.gen_bool(0.5).then(|| (m, Rational::from_integer(rng.gen_range(-3i64..=3).into()))));
        let p = Polynomial::from_terms(nvars, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A homogeneous matrix with random entries of the forced degrees.
pub fn random_matrix(rng: &mut ChaCha8Rng, nvars: usize, row_twists: Vec<i64>, col_twists: Vec<i64>) -> PolyMatrix {
    let columns = col_twists
        .iter()
        .map(|&c| {
            row_twists
                .iter()
                .map(|&r| {
                    let deg = c - r;
                    if deg < 0 || rng.gen_bool(0.25) {
                        Polynomial::zero(nvars)
                    } else {
                        random_form(rng, nvars, deg as u32)
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_columns(nvars, row_twists, col_twists, columns).expect("entries have the forced degrees")
}
