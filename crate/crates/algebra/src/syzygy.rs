//! Submodule Gröbner bases, syzygies and lifting.
//!
//! Syzygies and lifts both come from one Gröbner basis of the augmented
//! columns `(m_c, e_c)` in `F ⊕ R^k`, computed for an order in which the `F`
//! block dominates. Basis elements whose `F` part vanishes generate the
//! syzygy module; the others carry their own expression in the original
//! columns.

use crate::groebner::{full_reduce, groebner, top_reduce, ModVec, ModuleOrder};
use crate::matrix::PolyMatrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Gröbner basis of the column span of a matrix, graded order.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    nvars: usize,
    order: ModuleOrder,
    basis: Vec<ModVec>,
}

impl ModuleBasis {
    pub fn new(m: &PolyMatrix) -> Self {
        Self::with_order(m, MonomialOrder::GRevLex)
    }

    pub fn with_order(m: &PolyMatrix, mono: MonomialOrder) -> Self {
        let order = ModuleOrder::graded(mono, m.row_twists().to_vec());
        let inputs: Vec<ModVec> = m
            .columns()
            .iter()
            .map(|c| ModVec::from_components(c, &order))
            .collect();
        let basis = groebner(&inputs, &order).basis;
        ModuleBasis {
            nvars: m.nvars(),
            order,
            basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.order.rank()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical remainder of `v` modulo the submodule.
    pub fn reduce(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let mv = ModVec::from_components(v, &self.order);
        full_reduce(&mv, &self.basis, &self.order).to_components(self.nvars, self.rank())
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        let mv = ModVec::from_components(v, &self.order);
        top_reduce(&mv, &self.basis, &self.order).is_zero()
    }

    /// Leading `(component, monomial)` pairs of the basis.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.basis
            .iter()
            .map(|b| {
                let l = b.lead().unwrap();
                (l.comp, l.mono.clone())
            })
            .collect()
    }

    pub fn basis_columns(&self) -> Vec<Vec<Polynomial>> {
        self.basis
            .iter()
            .map(|b| b.to_components(self.nvars, self.rank()))
            .collect()
    }

    /// Monomials `x^a e_c` of total degree `d` outside the leading-term module.
    ///
    /// They form a basis of the degree-`d` piece of the quotient.
    pub fn standard_monomials(&self, d: i64) -> Vec<(usize, Monomial)> {
        let lts = self.leading_terms();
        let mut out = Vec::new();
        for (c, &w) in self.order.weights.iter().enumerate() {
            let e = d - w;
            if e < 0 {
                continue;
            }
            for m in Monomial::all_of_degree(self.nvars, e as u32) {
                if !lts.iter().any(|(lc, lm)| *lc == c && lm.divides(&m)) {
                    out.push((c, m));
                }
            }
        }
        out
    }

    /// `dim_Q (F / N)_d`.
    pub fn quotient_dim(&self, d: i64) -> usize {
        let lts = self.leading_terms();
        let mut count = 0;
        for (c, &w) in self.order.weights.iter().enumerate() {
            let e = d - w;
            if e < 0 {
                continue;
            }
            let comp_lts: Vec<&Monomial> = lts.iter().filter(|(lc, _)| *lc == c).map(|(_, m)| m).collect();
            if comp_lts.iter().any(|m| m.is_one()) {
                continue;
            }
            count += Monomial::all_of_degree(self.nvars, e as u32)
                .iter()
                .filter(|m| !comp_lts.iter().any(|l| l.divides(m)))
                .count();
        }
        count
    }
}

/// Gröbner basis of augmented columns, tracking each element's expression
/// in the generators.
#[derive(Clone, Debug)]
pub struct Lifter {
    nvars: usize,
    rank: usize,
    ngens: usize,
    gen_twists: Vec<i64>,
    order: ModuleOrder,
    basis: Vec<ModVec>,
}

impl Lifter {
    pub fn new(gens: &PolyMatrix) -> Self {
        let rank = gens.rows();
        let ngens = gens.cols();
        let mut weights = gens.row_twists().to_vec();
        weights.extend_from_slice(gens.col_twists());
        let order = ModuleOrder {
            mono: MonomialOrder::GRevLex,
            weights,
            priority: rank,
        };
        let nvars = gens.nvars();
        let inputs: Vec<ModVec> = (0..ngens)
            .map(|c| {
                let mut comps = gens.column(c);
                comps.extend((0..ngens).map(|k| {
                    if k == c {
                        Polynomial::one(nvars)
                    } else {
                        Polynomial::zero(nvars)
                    }
                }));
                ModVec::from_components(&comps, &order)
            })
            .collect();
        let basis = groebner(&inputs, &order).basis;
        Lifter {
            nvars,
            rank,
            ngens,
            gen_twists: gens.col_twists().to_vec(),
            order,
            basis,
        }
    }

    /// Generators of the syzygy module, as vectors over the generators.
    pub fn syzygies(&self) -> Vec<Vec<Polynomial>> {
        self.basis
            .iter()
            .filter(|b| b.lead().map(|l| l.comp >= self.rank).unwrap_or(false))
            .map(|b| b.components_range(self.nvars, self.rank, self.ngens))
            .collect()
    }

    /// Coefficients `c` with `gens * c = v`, or `None` if `v` is not in the span.
    pub fn lift(&self, v: &[Polynomial]) -> Option<Vec<Polynomial>> {
        let mut comps = v.to_vec();
        comps.extend((0..self.ngens).map(|_| Polynomial::zero(self.nvars)));
        let mv = ModVec::from_components(&comps, &self.order);
        // Only reduce while the leading term sits in the ambient block.
        let ambient: Vec<ModVec> = self
            .basis
            .iter()
            .filter(|b| b.lead().map(|l| l.comp < self.rank).unwrap_or(false))
            .cloned()
            .collect();
        let r = top_reduce(&mv, &ambient, &self.order);
        if r.lead().map(|l| l.comp < self.rank).unwrap_or(false) {
            return None;
        }
        Some(
            r.components_range(self.nvars, self.rank, self.ngens)
                .into_iter()
                .map(|p| p.neg())
                .collect(),
        )
    }

    pub fn gen_twists(&self) -> &[i64] {
        &self.gen_twists
    }
}

/// A minimal subset of columns generating the same submodule.
///
/// Columns must be homogeneous; zero columns are dropped.
pub fn minimal_columns(m: &PolyMatrix) -> Vec<usize> {
    let order = ModuleOrder::graded(MonomialOrder::GRevLex, m.row_twists().to_vec());
    let inputs: Vec<ModVec> = m
        .columns()
        .iter()
        .map(|c| ModVec::from_components(c, &order))
        .collect();
    groebner(&inputs, &order).minimal_inputs
}

/// Columns generating the kernel of `m`, as a minimal homogeneous generating set.
///
/// Rows of the result carry `m`'s column twists; composing `m` with the
/// result gives the zero matrix. An injective `m` yields zero columns.
pub fn syzygy_basis(m: &PolyMatrix) -> PolyMatrix {
    let lifter = Lifter::new(m);
    let syz = lifter.syzygies();
    let rows = m.col_twists().to_vec();
    let all = PolyMatrix::from_columns_inferred(m.nvars(), rows.clone(), syz, 0)
        .expect("syzygies of a homogeneous matrix are homogeneous");
    let keep = minimal_columns(&all);
    all.select_columns(&keep)
}
