//! Homogeneous polynomial matrices.
//!
//! A `PolyMatrix` with `row_twists = a` and `col_twists = b` describes a
//! degree-zero map `⊕ R(-b_c) → ⊕ R(-a_r)`: twists are generator degrees and
//! entry `(r, c)` is zero or homogeneous of degree `b_c - a_r`. Column `c` is
//! the image of the `c`-th source generator.

use crate::error::AlgebraError;
use crate::poly::{Polynomial, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
}

impl PolyMatrix {
    /// Builds a matrix from row-major entries, checking homogeneity.
    pub fn new(
        nvars: usize,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
        entries: Vec<Polynomial>,
    ) -> Result<Self, AlgebraError> {
        let rows = row_twists.len();
        let cols = col_twists.len();
        if entries.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        let m = PolyMatrix {
            nvars,
            rows,
            cols,
            entries,
            row_twists,
            col_twists,
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds from columns (each column lists one entry per row).
    pub fn from_columns(
        nvars: usize,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self, AlgebraError> {
        let rows = row_twists.len();
        if columns.len() != col_twists.len() || columns.iter().any(|c| c.len() != rows) {
            return Err(AlgebraError::Shape("column lengths do not match row count".into()));
        }
        let cols = columns.len();
        let mut entries = vec![Polynomial::zero(nvars); rows * cols];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, e) in col.into_iter().enumerate() {
                entries[r * cols + c] = e;
            }
        }
        Self::new(nvars, row_twists, col_twists, entries)
    }

    /// Builds from columns, inferring each column's twist from its entries.
    ///
    /// Zero columns get twist `fallback`.
    pub fn from_columns_inferred(
        nvars: usize,
        row_twists: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
        fallback: i64,
    ) -> Result<Self, AlgebraError> {
        let col_twists = columns
            .iter()
            .map(|col| {
                col.iter()
                    .enumerate()
                    .find_map(|(r, e)| e.degree().map(|d| d as i64 + row_twists[r]))
                    .unwrap_or(fallback)
            })
            .collect();
        Self::from_columns(nvars, row_twists, col_twists, columns)
    }

    pub fn zero(nvars: usize, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Self {
        let rows = row_twists.len();
        let cols = col_twists.len();
        PolyMatrix {
            nvars,
            rows,
            cols,
            entries: vec![Polynomial::zero(nvars); rows * cols],
            row_twists,
            col_twists,
        }
    }

    pub fn identity(nvars: usize, twists: Vec<i64>) -> Self {
        let n = twists.len();
        let mut m = Self::zero(nvars, twists.clone(), twists);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(nvars);
        }
        m
    }

    /// Diagonal matrix `f * I` between the given twists; `f` must have degree
    /// `source - target` uniformly.
    pub fn scalar(f: &Polynomial, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Result<Self, AlgebraError> {
        let n = row_twists.len();
        if col_twists.len() != n {
            return Err(AlgebraError::Shape("scalar matrix must be square".into()));
        }
        let mut entries = vec![Polynomial::zero(f.nvars()); n * n];
        for i in 0..n {
            entries[i * n + i] = f.clone();
        }
        Self::new(f.nvars(), row_twists, col_twists, entries)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if e.nvars() != self.nvars {
                    return Err(AlgebraError::RingMismatch {
                        left: self.nvars,
                        right: e.nvars(),
                    });
                }
                if e.is_zero() {
                    continue;
                }
                let expected = self.col_twists[c] - self.row_twists[r];
                if !e.is_homogeneous() || e.degree().map(|d| d as i64) != Some(expected) {
                    return Err(AlgebraError::NotHomogeneous { row: r, col: c, expected });
                }
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Matrix product `self * other`; requires `self.col_twists == other.row_twists`.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.col_twists != other.row_twists {
            return Err(AlgebraError::Shape("inner twists differ".into()));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: other.cols,
            entries,
            row_twists: self.row_twists.clone(),
            col_twists: other.col_twists.clone(),
        })
    }

    /// Applies the matrix to one source vector.
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        (0..self.rows)
            .map(|r| {
                let mut acc = Polynomial::zero(self.nvars);
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(r, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.row_twists != other.row_twists || self.col_twists != other.col_twists {
            return Err(AlgebraError::Shape("cannot add matrices with different twists".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(PolyMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix {
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            entries: self.entries.iter().map(|e| e.neg()).collect(),
            ..self.clone()
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.row_twists != other.row_twists {
            return Err(AlgebraError::Shape("hcat needs equal row twists".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        let mut tw = self.col_twists.clone();
        tw.extend_from_slice(&other.col_twists);
        PolyMatrix::from_columns(self.nvars, self.row_twists.clone(), tw, cols)
    }

    /// Vertical concatenation; requires equal column twists.
    pub fn vcat(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.col_twists != other.col_twists {
            return Err(AlgebraError::Shape("vcat needs equal column twists".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        let mut rt = self.row_twists.clone();
        rt.extend_from_slice(&other.row_twists);
        Ok(PolyMatrix {
            nvars: self.nvars,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
            row_twists: rt,
            col_twists: self.col_twists.clone(),
        })
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &PolyMatrix) -> PolyMatrix {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut entries = vec![Polynomial::zero(self.nvars); rows * cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[r * cols + c] = self.get(r, c).clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                entries[(self.rows + r) * cols + self.cols + c] = other.get(r, c).clone();
            }
        }
        let mut rt = self.row_twists.clone();
        rt.extend_from_slice(&other.row_twists);
        let mut ct = self.col_twists.clone();
        ct.extend_from_slice(&other.col_twists);
        PolyMatrix {
            nvars: self.nvars,
            rows,
            cols,
            entries,
            row_twists: rt,
            col_twists: ct,
        }
    }

    /// Kronecker product; index `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![Polynomial::zero(self.nvars); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        entries[(i * other.rows + k) * cols + j * other.cols + l] = a.mul(b);
                    }
                }
            }
        }
        let row_twists = self
            .row_twists
            .iter()
            .flat_map(|a| other.row_twists.iter().map(move |b| a + b))
            .collect();
        let col_twists = self
            .col_twists
            .iter()
            .flat_map(|a| other.col_twists.iter().map(move |b| a + b))
            .collect();
        PolyMatrix {
            nvars: self.nvars,
            rows,
            cols,
            entries,
            row_twists,
            col_twists,
        }
    }

    /// Transpose, read as the dual map: twists are negated and swapped.
    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            nvars: self.nvars,
            rows: self.cols,
            cols: self.rows,
            entries,
            row_twists: self.col_twists.iter().map(|t| -t).collect(),
            col_twists: self.row_twists.iter().map(|t| -t).collect(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> PolyMatrix {
        let cols: Vec<Vec<Polynomial>> = idx.iter().map(|&c| self.column(c)).collect();
        let tw = idx.iter().map(|&c| self.col_twists[c]).collect();
        PolyMatrix::from_columns(self.nvars, self.row_twists.clone(), tw, cols).unwrap()
    }

    pub fn select_rows(&self, idx: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            for c in 0..self.cols {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            nvars: self.nvars,
            rows: idx.len(),
            cols: self.cols,
            entries,
            row_twists: idx.iter().map(|&r| self.row_twists[r]).collect(),
            col_twists: self.col_twists.clone(),
        }
    }

    /// Shifts every row and column twist by `k`.
    pub fn shift_twists(&self, k: i64) -> PolyMatrix {
        PolyMatrix {
            row_twists: self.row_twists.iter().map(|t| t + k).collect(),
            col_twists: self.col_twists.iter().map(|t| t + k).collect(),
            ..self.clone()
        }
    }

    /// Same entries with different twists; entries are re-validated.
    pub fn with_twists(&self, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Result<PolyMatrix, AlgebraError> {
        if row_twists.len() != self.rows || col_twists.len() != self.cols {
            return Err(AlgebraError::Shape("twist list lengths differ from shape".into()));
        }
        let m = PolyMatrix {
            row_twists,
            col_twists,
            ..self.clone()
        };
        m.validate()?;
        Ok(m)
    }
}
