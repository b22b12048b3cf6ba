//! Dense degreewise linear-algebra oracles, independent of the Gröbner engine.

#![allow(dead_code)]

use brane_algebra::{Monomial, PolyMatrix, Polynomial, Rational};
use num_traits::Zero;

/// Rank by plain Gaussian elimination on a row list.
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

/// Coordinates of a vector of polynomials on the monomial basis of a free
/// module piece: component `c` uses monomials of degree `d - twists[c]`.
pub fn coordinates(v: &[Polynomial], twists: &[i64], d: i64, nvars: usize) -> Vec<Rational> {
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

/// Degree-`d` vectors spanned by monomial multiples of the columns.
pub fn span_rows(cols: &[Vec<Polynomial>], col_twists: &[i64], row_twists: &[i64], d: i64, nvars: usize) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for (col, &t) in cols.iter().zip(col_twists) {
        if d - t < 0 {
            continue;
        }
        for m in Monomial::all_of_degree(nvars, (d - t) as u32) {
            let v: Vec<Polynomial> = col.iter().map(|e| e.mul_monomial(&m)).collect();
            rows.push(coordinates(&v, row_twists, d, nvars));
        }
    }
    rows
}

/// Membership of a homogeneous vector in the column span, by rank comparison.
pub fn in_span(v: &[Polynomial], m: &PolyMatrix, d: i64) -> bool {
    let cols = m.columns();
    let mut rows = span_rows(&cols, m.col_twists(), m.row_twists(), d, m.nvars());
    let base = rank(rows.clone());
    rows.push(coordinates(v, m.row_twists(), d, m.nvars()));
    rank(rows) == base
}

/// Ideal membership for a homogeneous polynomial.
pub fn ideal_member(f: &Polynomial, gens: &[Polynomial]) -> bool {
    let nvars = f.nvars();
    let Some(d) = f.degree() else { return true };
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let cols: Vec<Vec<Polynomial>> = gens.iter().map(|g| vec![(*g).clone()]).collect();
    let tw: Vec<i64> = gens.iter().map(|g| g.degree().unwrap() as i64).collect();
    let mut rows = span_rows(&cols, &tw, &[0], d as i64, nvars);
    let base = rank(rows.clone());
    rows.push(coordinates(std::slice::from_ref(f), &[0], d as i64, nvars));
    rank(rows) == base
}

/// `dim ker` of the degree-`d` piece of the map given by `m`.
pub fn kernel_dim(m: &PolyMatrix, d: i64) -> usize {
    let nvars = m.nvars();
    let mut src = 0;
    let mut images = Vec::new();
    for (c, &t) in m.col_twists().iter().enumerate() {
        if d - t < 0 {
            continue;
        }
        for mono in Monomial::all_of_degree(nvars, (d - t) as u32) {
            src += 1;
            let v: Vec<Polynomial> = m.column(c).iter().map(|e| e.mul_monomial(&mono)).collect();
            images.push(coordinates(&v, m.row_twists(), d, nvars));
        }
    }
    src - rank(images)
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
