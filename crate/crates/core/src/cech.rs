//! Degree-zero Čech complex on the standard affine cover of `P^n`.
//!
//! For a presented module `F/N` and a subset `I` of the variables, the
//! degree-zero part of the localization at `x_I = prod_{i in I} x_i` is
//! approximated at level `k` by `(F/N_I)_{k|I|}`, each element `v` standing
//! for `v / x_I^k`; here `N_I = N : x_I^∞` is the kernel of localization.
//! Restriction from `I` to `J = I ∪ {j}` multiplies by `x_j^k`.
//!
//! When the presentation admits a `Z^{n+1}`-grading the complex splits into
//! blocks indexed by Laurent exponent vectors, and ranks are taken per block.

use std::collections::{BTreeMap, HashMap};

use brane_algebra::{DenseMatrix, Monomial, ModuleBasis, PolyMatrix, Polynomial, Rational};
use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::module::{kernel_vectors, GradedModule};

/// Block key: Laurent exponent vector, or empty when ungraded.
pub type BlockKey = Vec<i64>;

/// Multidegrees of the cover generators making every relation
/// multihomogeneous, if such an assignment exists.
pub fn multidegrees(m: &GradedModule) -> Option<Vec<Vec<i64>>> {
    let nv = m.nvars();
    let r = m.rank();
    let rel = m.relations();
    let terms_of = |c: usize| -> Vec<(usize, Vec<i64>)> {
        let mut out = Vec::new();
        for row in 0..r {
            for (mono, _) in rel.get(row, c).terms() {
                out.push((row, mono.exponents().iter().map(|&e| e as i64).collect()));
            }
        }
        out
    };
    let mut deg: Vec<Option<Vec<i64>>> = vec![None; r];
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for c in 0..rel.cols() {
                let terms = terms_of(c);
                let Some(total) = terms.iter().find_map(|(row, e)| {
                    deg[*row].as_ref().map(|g| g.iter().zip(e).map(|(a, b)| a + b).collect::<Vec<i64>>())
                }) else {
                    continue;
                };
                for (row, e) in &terms {
                    if deg[*row].is_none() {
                        deg[*row] = Some(total.iter().zip(e).map(|(a, b)| a - b).collect());
                        changed = true;
                    }
                }
            }
        }
        match deg.iter().position(|d| d.is_none()) {
            None => break,
            Some(i) => {
                let mut g = vec![0; nv];
                g[0] = m.twists()[i];
                deg[i] = Some(g);
            }
        }
    }
    let deg: Vec<Vec<i64>> = deg.into_iter().map(|d| d.unwrap()).collect();
    for c in 0..rel.cols() {
        let mut total: Option<Vec<i64>> = None;
        for (row, e) in terms_of(c) {
            let t: Vec<i64> = deg[row].iter().zip(&e).map(|(a, b)| a + b).collect();
            match &total {
                None => total = Some(t),
                Some(prev) if *prev != t => return None,
                _ => {}
            }
        }
    }
    Some(deg)
}

struct Chart {
    subset: Vec<usize>,
    basis: ModuleBasis,
}

/// One basis vector of a cochain group: chart, cover component, monomial.
type Cell = (usize, usize, Monomial);

pub struct CechComplex {
    nvars: usize,
    level: u32,
    grading: Option<Vec<Vec<i64>>>,
    charts: Vec<Chart>,
    chart_index: HashMap<Vec<usize>, usize>,
    /// blocks[key][p] lists the cells of C^p in that block.
    blocks: BTreeMap<BlockKey, Vec<Vec<Cell>>>,
}

/// `N : f^∞` for the submodule spanned by `rels`.
fn saturate_by(rels: &PolyMatrix, f: &Polynomial) -> Result<PolyMatrix> {
    let mut rels = rels.clone();
    if rels.cols() == 0 {
        return Ok(rels);
    }
    let twists = rels.row_twists().to_vec();
    let deg = f.degree().unwrap_or(0) as i64;
    loop {
        let mult = PolyMatrix::scalar(f, twists.iter().map(|t| t - deg).collect(), twists.clone())?;
        let colon = kernel_vectors(&mult, &rels.shift_twists(-deg))?;
        let basis = ModuleBasis::new(&rels);
        if colon.columns().iter().all(|c| basis.contains(c)) {
            return Ok(rels);
        }
        rels = colon;
    }
}

fn subsets(nv: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << nv))
        .map(|mask| (0..nv).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

impl CechComplex {
    pub fn new(m: &GradedModule, level: u32) -> Result<Self> {
        let nv = m.nvars();
        let grading = multidegrees(m);
        let mut charts = Vec::new();
        let mut chart_index = HashMap::new();
        for s in subsets(nv) {
            let f = s.iter().fold(Polynomial::one(nv), |acc, &i| acc.mul(&Polynomial::var(nv, i)));
            let rels = saturate_by(m.relations(), &f)?;
            chart_index.insert(s.clone(), charts.len());
            charts.push(Chart {
                subset: s,
                basis: ModuleBasis::new(&rels),
            });
        }
        let mut blocks: BTreeMap<BlockKey, Vec<Vec<Cell>>> = BTreeMap::new();
        if m.rank() > 0 {
            for (ci, chart) in charts.iter().enumerate() {
                let p = chart.subset.len() - 1;
                let d = level as i64 * chart.subset.len() as i64;
                for (c, mono) in chart.basis.standard_monomials(d) {
                    let key = match &grading {
                        None => Vec::new(),
                        Some(g) => {
                            let mut a: Vec<i64> =
                                g[c].iter().zip(mono.exponents()).map(|(x, &e)| x + e as i64).collect();
                            for &i in &chart.subset {
                                a[i] -= level as i64;
                            }
                            a
                        }
                    };
                    blocks.entry(key).or_insert_with(|| vec![Vec::new(); nv])[p].push((ci, c, mono));
                }
            }
        }
        Ok(CechComplex {
            nvars: nv,
            level,
            grading,
            charts,
            chart_index,
            blocks,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_multigraded(&self) -> bool {
        self.grading.is_some()
    }

    pub fn block_keys(&self) -> Vec<BlockKey> {
        self.blocks.keys().cloned().collect()
    }

    /// `dim C^p` within a block.
    pub fn block_dim(&self, key: &BlockKey, p: usize) -> usize {
        self.blocks.get(key).map(|b| b[p].len()).unwrap_or(0)
    }

    fn block_position(&self, key: &BlockKey, p: usize) -> HashMap<(usize, usize, Monomial), usize> {
        self.blocks
            .get(key)
            .map(|b| b[p].iter().cloned().enumerate().map(|(i, cell)| (cell, i)).collect())
            .unwrap_or_default()
    }

    /// Matrix of `d^p: C^p -> C^{p+1}` restricted to a block.
    pub fn block_differential(&self, key: &BlockKey, p: usize) -> DenseMatrix {
        let rows = if p + 1 < self.nvars { self.block_dim(key, p + 1) } else { 0 };
        let cols = self.block_dim(key, p);
        let mut d = DenseMatrix::zeros(rows, cols);
        if rows == 0 || cols == 0 {
            return d;
        }
        let target = self.block_position(key, p + 1);
        for (col, (ci, c, mono)) in self.blocks[key][p].iter().enumerate() {
            let subset = &self.charts[*ci].subset;
            for j in (0..self.nvars).filter(|j| !subset.contains(j)) {
                let mut sup = subset.clone();
                sup.push(j);
                sup.sort();
                let pos = sup.iter().position(|&x| x == j).unwrap();
                let sign = if pos % 2 == 0 { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
                let cj = self.chart_index[&sup];
                let mut e = vec![0; self.nvars];
                e[j] = self.level;
                let shifted = mono.mul(&Monomial::from_exponents(&e));
                let mut v = vec![Polynomial::zero(self.nvars); self.charts[cj].basis.rank()];
                v[*c] = Polynomial::monomial(shifted);
                let red = self.charts[cj].basis.reduce(&v);
                for (c2, poly) in red.iter().enumerate() {
                    for (m2, coef) in poly.terms() {
                        let row = target[&(cj, c2, m2.clone())];
                        let cur = d.get(row, col).clone();
                        d.set(row, col, cur + &sign * coef);
                    }
                }
            }
        }
        d
    }

    /// `dim H^p` of the whole truncated complex.
    pub fn cohomology_dim(&self, p: usize) -> usize {
        let mut total = 0;
        for key in self.blocks.keys() {
            let dim = self.block_dim(key, p);
            if dim == 0 {
                continue;
            }
            let out_rank = if p + 1 < self.nvars { self.block_differential(key, p).rank() } else { 0 };
            let in_rank = if p > 0 { self.block_differential(key, p - 1).rank() } else { 0 };
            total += dim - out_rank - in_rank;
        }
        total
    }

    /// Block containing the first nonzero cell of a cochain, or `None` for
    /// the zero cochain.
    pub fn cochain_key(&self, p: usize, parts: &[(Vec<usize>, Vec<Polynomial>)]) -> Result<Option<BlockKey>> {
        for (subset, v) in parts {
            let ci = *self
                .chart_index
                .get(subset)
                .ok_or_else(|| CoreError::Invalid(format!("no chart {:?}", subset)))?;
            let red = self.charts[ci].basis.reduce(v);
            for (c, poly) in red.iter().enumerate() {
                if let Some((m, _)) = poly.terms().first() {
                    let cell = (ci, c, m.clone());
                    return Ok(self
                        .blocks
                        .iter()
                        .find(|(_, b)| b.get(p).map(|cells| cells.contains(&cell)).unwrap_or(false))
                        .map(|(k, _)| k.clone()));
                }
            }
        }
        Ok(None)
    }

    /// Coordinates in block `key` of `C^p` of a cochain given chart by chart
    /// as cover vectors of degree `level * |I|`.
    pub fn cochain_coordinates(&self, key: &BlockKey, p: usize, parts: &[(Vec<usize>, Vec<Polynomial>)]) -> Result<Vec<Rational>> {
        let pos = self.block_position(key, p);
        let mut out = vec![Rational::zero(); self.block_dim(key, p)];
        for (subset, v) in parts {
            let ci = *self
                .chart_index
                .get(subset)
                .ok_or_else(|| CoreError::Invalid(format!("no chart {:?}", subset)))?;
            let red = self.charts[ci].basis.reduce(v);
            for (c, poly) in red.iter().enumerate() {
                for (m, coef) in poly.terms() {
                    let i = pos
                        .get(&(ci, c, m.clone()))
                        .ok_or_else(|| CoreError::Invalid("cochain leaves the requested block".into()))?;
                    out[*i] = coef.clone();
                }
            }
        }
        Ok(out)
    }
}

/// Default truncation level for `P^n`.
pub fn default_cech_bound(n: usize) -> u32 {
    n as u32 + 3
}

/// `dim H^i(P^n, M~)` from the truncated Čech complex, certified by equal
/// answers at `bound` and `bound + 1`.
pub fn cech_cohomology_dim(m: &GradedModule, i: usize, bound: u32) -> Result<usize> {
    if i >= m.nvars() {
        return Err(CoreError::Invalid(format!("cohomological degree {} above n = {}", i, m.nvars() - 1)));
    }
    if bound == 0 {
        return Err(CoreError::Invalid("Čech bound must be at least 1".into()));
    }
    let at_bound = CechComplex::new(m, bound)?.cohomology_dim(i);
    let at_next = CechComplex::new(m, bound + 1)?.cohomology_dim(i);
    if at_bound != at_next {
        return Err(CoreError::NotStabilized { bound, at_bound, at_next });
    }
    Ok(at_bound)
}

/// `[h^0, ..., h^n]` with the same stabilization certificate.
pub fn cech_table(m: &GradedModule, bound: u32) -> Result<Vec<usize>> {
    let a = CechComplex::new(m, bound)?;
    let b = CechComplex::new(m, bound + 1)?;
    (0..m.nvars())
        .map(|i| {
            let (x, y) = (a.cohomology_dim(i), b.cohomology_dim(i));
            if x == y {
                Ok(x)
            } else {
                Err(CoreError::NotStabilized {
                    bound,
                    at_bound: x,
                    at_next: y,
                })
            }
        })
        .collect()
}
