//! The Hom complex `Hom^m(B, C) = prod_p Hom(B^p, C^{p+m})` with
//! `(d g)^p = d_C g^p + (-1)^{m+1} g^{p+1} d_B^p`.

use brane_algebra::{DenseMatrix, Rational};
use num_traits::Zero;

use crate::complex::BoundedComplex;
use crate::error::{CoreError, Result};
use crate::module::DegreeZeroHoms;
use crate::projective::sheaf_hom_dim;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomOracle {
    /// Degree-zero module homomorphisms, with explicit differentials.
    ModuleHom,
    /// Sheaf homomorphisms; dimensions only.
    SheafHom { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComplex {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `d^m` for `m` in `lo..hi`, present for the module oracle.
    pub differentials: Option<Vec<DenseMatrix>>,
}

impl HomComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, m: i64) -> usize {
        if m < self.lo || m > self.hi() {
            0
        } else {
            self.dims[(m - self.lo) as usize]
        }
    }

    /// Every term vanishes.
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `d ∘ d = 0`, when differentials are known.
    pub fn square_zero(&self) -> Option<bool> {
        let ds = self.differentials.as_ref()?;
        Some(ds.windows(2).all(|w| w[1].mul(&w[0]).is_zero()))
    }

    /// `dim H^m`, when differentials are known.
    pub fn cohomology_dim(&self, m: i64) -> Option<usize> {
        let ds = self.differentials.as_ref()?;
        let rank = |k: i64| -> usize {
            if k < self.lo || k >= self.hi() {
                0
            } else {
                ds[(k - self.lo) as usize].rank()
            }
        };
        Some(self.dim(m) - rank(m) - rank(m - 1))
    }
}

pub fn hom_complex(b: &BoundedComplex, c: &BoundedComplex, oracle: HomOracle) -> Result<HomComplex> {
    if b.nvars() != c.nvars() {
        return Err(CoreError::RingMismatch {
            left: b.nvars(),
            right: c.nvars(),
        });
    }
    let lo = c.lo() - b.hi();
    let hi = c.hi() - b.lo();
    match oracle {
        HomOracle::SheafHom { cap } => {
            let mut dims = Vec::new();
            for m in lo..=hi {
                let mut total = 0;
                for p in b.lo()..=b.hi() {
                    total += sheaf_hom_dim(&b.term(p), &c.term(p + m), cap)?;
                }
                dims.push(total);
            }
            Ok(HomComplex {
                lo,
                dims,
                differentials: None,
            })
        }
        HomOracle::ModuleHom => module_hom_complex(b, c, lo, hi),
    }
}

fn module_hom_complex(b: &BoundedComplex, c: &BoundedComplex, lo: i64, hi: i64) -> Result<HomComplex> {
    // spaces[m - lo][p - b.lo()] = Hom(B^p, C^{p+m})_0
    let mut spaces: Vec<Vec<DegreeZeroHoms>> = Vec::new();
    for m in lo..=hi {
        let mut row = Vec::new();
        for p in b.lo()..=b.hi() {
            row.push(DegreeZeroHoms::new(&b.term(p), &c.term(p + m))?);
        }
        spaces.push(row);
    }
    let offsets: Vec<Vec<usize>> = spaces
        .iter()
        .map(|row| {
            let mut acc = 0;
            row.iter()
                .map(|s| {
                    let o = acc;
                    acc += s.dim();
                    o
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = spaces.iter().map(|row| row.iter().map(|s| s.dim()).sum()).collect();
    let np = (b.hi() - b.lo() + 1) as usize;
    let mut diffs = Vec::new();
    for m in lo..hi {
        let mi = (m - lo) as usize;
        let mut d = DenseMatrix::zeros(dims[mi + 1], dims[mi]);
        let sign = Rational::from_integer(if (m + 1).rem_euclid(2) == 0 { 1 } else { -1 }.into());
        for pi in 0..np {
            let p = b.lo() + pi as i64;
            for k in 0..spaces[mi][pi].dim() {
                let g = spaces[mi][pi].map(k);
                let col = offsets[mi][pi] + k;
                // d_C ∘ g lands in Hom(B^p, C^{p+m+1})
                let left = c.diff(p + m).compose(&g)?;
                let coords = spaces[mi + 1][pi]
                    .coordinates(left.matrix())
                    .ok_or_else(|| CoreError::Invalid("d_C g is not a module map".into()))?;
                for (r, x) in coords.into_iter().enumerate() {
                    let row = offsets[mi + 1][pi] + r;
                    let cur = d.get(row, col).clone();
                    d.set(row, col, cur + x);
                }
                // (-1)^{m+1} g ∘ d_B^{p-1} lands in Hom(B^{p-1}, C^{p+m})
                if pi > 0 {
                    let right = g.compose(&b.diff(p - 1))?;
                    let coords = spaces[mi + 1][pi - 1]
                        .coordinates(right.matrix())
                        .ok_or_else(|| CoreError::Invalid("g d_B is not a module map".into()))?;
                    for (r, x) in coords.into_iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        let row = offsets[mi + 1][pi - 1] + r;
                        let cur = d.get(row, col).clone();
                        d.set(row, col, cur + &sign * &x);
                    }
                }
            }
        }
        diffs.push(d);
    }
    Ok(HomComplex {
        lo,
        dims,
        differentials: Some(diffs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::embed_object;
    use crate::module::{GradedMap, GradedModule};
    use brane_algebra::{PolyMatrix, Polynomial};

    const NV: usize = 3;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, NV).unwrap()
    }

    #[test]
    fn concentrated_objects_give_concentrated_hom() {
        let m = GradedModule::cyclic(NV, &[p("x0")], 0).unwrap();
        let h = hom_complex(&embed_object(&m), &embed_object(&m), HomOracle::ModuleHom).unwrap();
        assert_eq!((h.lo, h.dims.clone()), (0, vec![1]));
        let n = GradedModule::free(NV, vec![-1]);
        let h = hom_complex(&embed_object(&m), &embed_object(&n), HomOracle::ModuleHom).unwrap();
        assert_eq!(h.dims, vec![0]);
    }

    #[test]
    fn hom_complex_of_koszul_pair_squares_to_zero() {
        let r = |t| GradedModule::free(NV, vec![t]);
        let d = PolyMatrix::new(NV, vec![0], vec![1], vec![p("x0")]).unwrap();
        let b = BoundedComplex::checked(NV, -1, vec![r(1), r(0)], vec![GradedMap::new(r(1), r(0), d).unwrap()]).unwrap();
        let h = hom_complex(&b, &b, HomOracle::ModuleHom).unwrap();
        assert_eq!(h.lo, -1);
        assert_eq!(h.dims, vec![0, 2, 3]);
        assert_eq!(h.square_zero(), Some(true));
        // homotopy classes of self-maps: multiplications by constants
        assert_eq!(h.cohomology_dim(0), Some(1));
    }
}
