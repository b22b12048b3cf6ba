//! Saturation with respect to the irrelevant ideal `m = (x0, ..., xn)`.
//!
//! First the `m`-torsion is removed by iterating `N <- N : m` on the relation
//! submodule. Then sections are extended by iterating `V <- Hom(m, V)`, which
//! stops exactly when `V -> Hom(m, V)` is onto. The truncated variant keeps
//! only degrees `>= t`, which is finitely generated even when the full
//! module of sections is not (zero-dimensional support).

use brane_algebra::{Monomial, ModuleBasis, PolyMatrix, Polynomial};

use crate::error::{CoreError, Result};
use crate::module::{hom_embedded, kernel_vectors, prune, subquotient, Embedded, GradedModule};

pub const DEFAULT_SATURATION_CAP: usize = 40;

/// The ideal `(x0, ..., xn)` presented on generators of degree 1 with the
/// Koszul relations `x_j e_i - x_i e_j`, `i < j`.
pub fn irrelevant_ideal(nvars: usize) -> GradedModule {
    let mut cols = Vec::new();
    for i in 0..nvars {
        for j in i + 1..nvars {
            let mut c = vec![Polynomial::zero(nvars); nvars];
            c[i] = Polynomial::var(nvars, j);
            c[j] = Polynomial::var(nvars, i).neg();
            cols.push(c);
        }
    }
    let ncols = cols.len();
    let rel = PolyMatrix::from_columns(nvars, vec![1; nvars], vec![2; ncols], cols).expect("Koszul relations are homogeneous");
    GradedModule::new(nvars, vec![1; nvars], rel).expect("twists match")
}

/// Generators of `N : m` for `N` spanned by `rels` in a free module.
fn colon_irrelevant(rels: &PolyMatrix) -> Result<PolyMatrix> {
    let nv = rels.nvars();
    let twists = rels.row_twists().to_vec();
    let r = twists.len();
    let mut mult = PolyMatrix::zero(nv, vec![], twists.clone());
    let mut blocks: Option<PolyMatrix> = None;
    let shifted = rels.shift_twists(-1);
    for i in 0..nv {
        let x = Polynomial::var(nv, i);
        let block = PolyMatrix::scalar(&x, twists.iter().map(|t| t - 1).collect(), twists.clone())?;
        mult = mult.vcat(&block)?;
        blocks = Some(match blocks {
            None => shifted.clone(),
            Some(b) => b.block_diag(&shifted),
        });
    }
    debug_assert_eq!(mult.rows(), nv * r);
    kernel_vectors(&mult, &blocks.unwrap())
}

/// `M / H^0_m(M)`, minimally presented.
pub fn torsion_free_quotient(m: &GradedModule, cap: usize) -> Result<GradedModule> {
    let mut rels = m.relations().clone();
    if rels.cols() == 0 || m.rank() == 0 {
        return Ok(prune(m)?.0);
    }
    for _ in 0..cap {
        let colon = colon_irrelevant(&rels)?;
        let basis = ModuleBasis::new(&rels);
        if colon.columns().iter().all(|c| basis.contains(c)) {
            let q = GradedModule::new(m.nvars(), m.twists().to_vec(), rels)?;
            return Ok(prune(&q)?.0);
        }
        rels = colon;
    }
    Err(CoreError::SaturationCap { cap })
}

/// Degree-`>= t` truncation, embedded in the cover of `m`.
pub(crate) fn truncate_embedded(m: &GradedModule, t: i64) -> Result<Embedded> {
    let nv = m.nvars();
    let mut cols = Vec::new();
    let mut col_twists = Vec::new();
    for (i, &a) in m.twists().iter().enumerate() {
        if a >= t {
            cols.push(m.cover_vector(i));
            col_twists.push(a);
        } else {
            for mono in Monomial::all_of_degree(nv, (t - a) as u32) {
                let mut v = vec![Polynomial::zero(nv); m.rank()];
                v[i] = Polynomial::monomial(mono);
                cols.push(v);
                col_twists.push(t);
            }
        }
    }
    let gens = PolyMatrix::from_columns(nv, m.twists().to_vec(), col_twists, cols)?;
    subquotient(&gens, m.relations())
}

/// The submodule `M_{>=t}`.
pub fn truncate(m: &GradedModule, t: i64) -> Result<GradedModule> {
    Ok(truncate_embedded(m, t)?.module)
}

/// Full saturation `Γ_*(M~)`; fails when sections are not finitely
/// generated within the cap.
pub fn saturate(m: &GradedModule) -> Result<GradedModule> {
    saturate_with(m, None, DEFAULT_SATURATION_CAP)
}

/// `Γ_*(M~)_{>=t}`.
pub fn saturate_truncated(m: &GradedModule, t: i64, cap: usize) -> Result<GradedModule> {
    saturate_with(m, Some(t), cap)
}

pub fn saturate_with(m: &GradedModule, truncation: Option<i64>, cap: usize) -> Result<GradedModule> {
    let nv = m.nvars();
    let mut v = torsion_free_quotient(m, cap)?;
    if let Some(t) = truncation {
        v = truncate(&v, t)?;
    }
    let ideal = irrelevant_ideal(nv);
    for _ in 0..cap {
        if v.rank() == 0 {
            return Ok(v);
        }
        let (h, h0) = hom_embedded(&ideal, &v)?;
        let (gens, module) = match truncation {
            Some(t) => {
                let tr = truncate_embedded(&h.module, t)?;
                (h.gens.mul(&tr.gens)?, tr.module)
            }
            None => (h.gens, h.module),
        };
        // v -> Hom(m, v): e_k maps to (x_0 e_k, ..., x_n e_k)
        let r = v.rank();
        let mut cols = Vec::with_capacity(r);
        for k in 0..r {
            let mut c = vec![Polynomial::zero(nv); nv * r];
            for i in 0..nv {
                c[i * r + k] = Polynomial::var(nv, i);
            }
            cols.push(c);
        }
        let nat = PolyMatrix::from_columns(nv, h0.twists().to_vec(), v.twists().to_vec(), cols)?;
        let span = ModuleBasis::new(&nat.hcat(h0.relations())?);
        if gens.columns().iter().all(|c| span.contains(c)) {
            return Ok(v);
        }
        v = module;
    }
    Err(CoreError::SaturationCap { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::graded_piece_dim;

    fn vars(nv: usize) -> Vec<Polynomial> {
        (0..nv).map(|i| Polynomial::var(nv, i)).collect()
    }

    #[test]
    fn free_module_is_saturated() {
        let r = GradedModule::free(3, vec![0]);
        let s = saturate(&r).unwrap();
        assert_eq!(s.twists(), &[0]);
        assert_eq!(s.relations().cols(), 0);
    }

    #[test]
    fn irrelevant_skyscraper_vanishes() {
        let k = GradedModule::cyclic(3, &vars(3), 0).unwrap();
        assert_eq!(saturate(&k).unwrap().rank(), 0);
    }

    #[test]
    fn irrelevant_ideal_saturates_to_ring() {
        for nv in 2..=4 {
            let s = saturate(&irrelevant_ideal(nv)).unwrap();
            for d in -2..=3 {
                assert_eq!(graded_piece_dim(&s, d), graded_piece_dim(&GradedModule::free(nv, vec![0]), d));
            }
        }
    }

    #[test]
    fn torsion_is_removed() {
        // R/(x0^2, x0*x1) on P^1 has torsion x0; quotient is R/(x0)
        let nv = 2;
        let p = |s: &str| Polynomial::parse(s, nv).unwrap();
        let m = GradedModule::cyclic(nv, &[p("x0^2"), p("x0*x1")], 0).unwrap();
        let q = torsion_free_quotient(&m, 40).unwrap();
        for d in 0..5 {
            assert_eq!(graded_piece_dim(&q, d), 1);
        }
    }

    #[test]
    fn point_sections_need_truncation() {
        // a point on P^1: sections in every degree, so the full saturation cannot stop
        let nv = 2;
        let pt = GradedModule::cyclic(nv, &[Polynomial::var(nv, 0)], 0).unwrap();
        assert_eq!(saturate_with(&pt, None, 5), Err(CoreError::SaturationCap { cap: 5 }));
        let s = saturate_truncated(&pt, -3, 40).unwrap();
        for d in -3..=3 {
            assert_eq!(graded_piece_dim(&s, d), 1, "degree {}", d);
        }
        assert_eq!(graded_piece_dim(&s, -4), 0);
    }
}
