use brane_algebra::{syzygy_basis, PolyMatrix};

use crate::error::{CoreError, Result};
use crate::module::{prune, GradedModule};

/// Minimal free resolution `F0 <- F1 <- ... <- Fl <- 0` of `m`.
///
/// Entry `i` is the matrix of `F_{i+1} -> F_i`; the first matrix is the
/// minimized relation matrix, so a free module has the empty resolution.
pub fn free_resolution(m: &GradedModule, max_len: usize) -> Result<Vec<PolyMatrix>> {
    let (pruned, _) = prune(m)?;
    let mut out = Vec::new();
    let mut d = pruned.relations().clone();
    while d.cols() > 0 {
        if out.len() == max_len {
            return Err(CoreError::ResolutionTooLong { max_len });
        }
        let next = syzygy_basis(&d);
        out.push(d);
        d = next;
    }
    Ok(out)
}

/// Ranks of the free modules `F0, F1, ...` of a resolution.
pub fn resolution_ranks(res: &[PolyMatrix], m: &GradedModule) -> Vec<usize> {
    match res.first() {
        None => vec![prune(m).map(|(p, _)| p.rank()).unwrap_or(m.rank())],
        Some(first) => std::iter::once(first.rows()).chain(res.iter().map(|d| d.cols())).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use brane_algebra::Polynomial;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn free_module_has_empty_resolution() {
        let r = GradedModule::free(3, vec![0]);
        let res = free_resolution(&r, 3).unwrap();
        assert!(res.is_empty());
        assert_eq!(resolution_ranks(&res, &r), vec![1]);
    }

    #[test]
    fn residue_field_resolves_by_koszul() {
        for nv in 2..=4 {
            let vars: Vec<Polynomial> = (0..nv).map(|i| Polynomial::var(nv, i)).collect();
            let k = GradedModule::cyclic(nv, &vars, 0).unwrap();
            let res = free_resolution(&k, nv).unwrap();
            assert_eq!(res.len(), nv);
            let ranks = resolution_ranks(&res, &k);
            let expected: Vec<usize> = (0..=nv).map(|i| binom(nv, i)).collect();
            assert_eq!(ranks, expected);
            for w in res.windows(2) {
                assert!(w[0].mul(&w[1]).unwrap().is_zero());
            }
            for (i, d) in res.iter().enumerate() {
                assert!(d.col_twists().iter().all(|&t| t == i as i64 + 1));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let vars: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(3, i)).collect();
        let k = GradedModule::cyclic(3, &vars, 0).unwrap();
        assert_eq!(free_resolution(&k, 2), Err(CoreError::ResolutionTooLong { max_len: 2 }));
    }
}
