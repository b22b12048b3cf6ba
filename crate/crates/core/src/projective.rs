//! Constructions on `P^n`: the generator family, support loci, the cotangent
//! sheaf, sheaf Hom and the hyperplane sequence.

use std::collections::BTreeSet;

use brane_algebra::{syzygy_basis, PolyMatrix, Polynomial};

use crate::error::{CoreError, Result};
use crate::module::{
    cokernel_with_projection, is_zero_module, kernel_with_inclusion, prune, tensor, twist, DegreeZeroHoms, GradedMap,
    GradedModule,
};
use crate::saturation::saturate_truncated;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveSpace {
    n: usize,
}

impl ProjectiveSpace {
    pub const MAX_DIM: usize = 4;

    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX_DIM {
            return Err(CoreError::UnsupportedDimension { n });
        }
        Ok(ProjectiveSpace { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    /// `O(a)`, the free module on one generator of degree `-a`.
    pub fn line_bundle(&self, a: i64) -> GradedModule {
        GradedModule::free(self.nvars(), vec![-a])
    }

    pub fn structure_sheaf(&self) -> GradedModule {
        self.line_bundle(0)
    }
}

/// Points where the coordinates in `zero_indices` vanish and, if present,
/// `nonzero_index` does not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Locus {
    n: usize,
    zero_indices: BTreeSet<usize>,
    nonzero_index: Option<usize>,
}

impl Locus {
    pub fn new(n: usize, zero_indices: BTreeSet<usize>, nonzero_index: Option<usize>) -> Result<Self> {
        if zero_indices.iter().chain(nonzero_index.iter()).any(|&i| i > n) {
            return Err(CoreError::Invalid(format!("locus index beyond x{}", n)));
        }
        if let Some(i) = nonzero_index {
            if zero_indices.contains(&i) {
                return Err(CoreError::Invalid(format!("x{} forced both zero and nonzero", i)));
            }
        }
        Ok(Locus {
            n,
            zero_indices,
            nonzero_index,
        })
    }

    /// `V_k = {x0 = ... = x_{k-2} = 0, x_{k-1} != 0}`.
    pub fn stratum(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n + 1 {
            return Err(CoreError::IndexOutOfRange { k, max: n + 1 });
        }
        Locus::new(n, (0..k - 1).collect(), Some(k - 1))
    }

    pub fn zero_indices(&self) -> &BTreeSet<usize> {
        &self.zero_indices
    }

    pub fn nonzero_index(&self) -> Option<usize> {
        self.nonzero_index
    }

    pub fn ambient(&self) -> usize {
        self.n
    }
}

impl std::fmt::Display for Locus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.zero_indices.iter().map(|i| format!("x{} = 0", i)).collect();
        if let Some(i) = self.nonzero_index {
            parts.push(format!("x{} != 0", i));
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn loci_disjoint(a: &Locus, b: &Locus) -> Result<bool> {
    if a.n != b.n {
        return Err(CoreError::RingMismatch {
            left: a.n + 1,
            right: b.n + 1,
        });
    }
    let clash = |x: &Locus, y: &Locus| x.nonzero_index.map(|i| y.zero_indices.contains(&i)).unwrap_or(false);
    let all_zero = a.zero_indices.union(&b.zero_indices).count() == a.n + 1;
    Ok(clash(a, b) || clash(b, a) || all_zero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSheaf {
    pub index: usize,
    pub module: GradedModule,
    pub locus: Locus,
}

/// `S_k = (R/(x0, ..., x_{k-2}))(-1)` for `k <= n` and the point
/// `S_{n+1} = R/(x0, ..., x_{n-1})`.
pub fn generator(k: usize, p: &ProjectiveSpace) -> Result<GeneratorSheaf> {
    let n = p.n();
    if k == 0 || k > n + 1 {
        return Err(CoreError::IndexOutOfRange { k, max: n + 1 });
    }
    let (ideal, twist) = if k <= n {
        ((0..k - 1).map(|i| p.var(i)).collect::<Vec<_>>(), 1)
    } else {
        ((0..n).map(|i| p.var(i)).collect(), 0)
    };
    Ok(GeneratorSheaf {
        index: k,
        module: GradedModule::cyclic(p.nvars(), &ideal, twist)?,
        locus: Locus::stratum(n, k)?,
    })
}

/// Generators of the kernel of the Euler map `R(-1)^{n+1} -> R`, the forms
/// `x_j e_i - x_i e_j` in degree 2.
pub fn euler_kernel(p: &ProjectiveSpace) -> PolyMatrix {
    let nv = p.nvars();
    let vars: Vec<Polynomial> = (0..nv).map(|i| p.var(i)).collect();
    let euler = PolyMatrix::new(nv, vec![0], vec![1; nv], vars).expect("linear forms");
    syzygy_basis(&euler)
}

/// `Ω¹` as the kernel of the Euler map, presented on its degree-2 generators.
pub fn cotangent_sheaf(p: &ProjectiveSpace) -> GradedModule {
    let k = euler_kernel(p);
    let rel = syzygy_basis(&k);
    GradedModule::new(p.nvars(), k.col_twists().to_vec(), rel).expect("syzygies match the generators")
}

/// `Ω¹ ⊗ M`.
pub fn twisted_cotangent(p: &ProjectiveSpace, m: &GradedModule) -> Result<GradedModule> {
    tensor(&cotangent_sheaf(p), m)
}

/// `dim Hom(F~, G~)`, computed as `Hom_R(F, Γ_*(G~)_{>=t})_0` where `t` is the
/// lowest generator degree of `F`.
pub fn sheaf_hom_dim(f: &GradedModule, g: &GradedModule, cap: usize) -> Result<usize> {
    f.check_ring(g)?;
    let (f, _) = prune(f)?;
    let Some(&t) = f.twists().iter().min() else {
        return Ok(0);
    };
    let sections = saturate_truncated(g, t, cap)?;
    Ok(DegreeZeroHoms::new(&f, &sections)?.dim())
}

/// `dim H^0(G~)`.
pub fn global_sections_dim(g: &GradedModule, cap: usize) -> Result<usize> {
    sheaf_hom_dim(&GradedModule::free(g.nvars(), vec![0]), g, cap)
}

/// `0 -> S(-1) --x0--> S -> S/x0 S -> 0`, with exactness certified.
pub fn hyperplane_ses(s: &GradedModule) -> Result<(GradedMap, GradedMap)> {
    let nv = s.nvars();
    let x0 = Polynomial::var(nv, 0);
    let shifted = twist(s, -1);
    let mat = PolyMatrix::scalar(&x0, s.twists().to_vec(), shifted.twists().to_vec())?;
    let f = GradedMap::new(shifted, s.clone(), mat)?;
    let (ker, inc) = kernel_with_inclusion(&f)?;
    if !is_zero_module(&ker) {
        let basis = ker.relation_basis();
        let witness = (0..ker.rank())
            .find(|&i| !basis.contains(&ker.cover_vector(i)))
            .map(|i| format_vector(&inc.matrix().column(i)))
            .unwrap_or_default();
        return Err(CoreError::ZeroDivisor { witness });
    }
    let (_, g) = cokernel_with_projection(&f)?;
    crate::module::check_short_exact(&f, &g)?;
    Ok((f, g))
}

pub(crate) fn format_vector(v: &[Polynomial]) -> String {
    let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{annihilator, graded_piece_dim};
    use crate::saturation::saturate;

    fn pn(n: usize) -> ProjectiveSpace {
        ProjectiveSpace::new(n).unwrap()
    }

    #[test]
    fn generators_have_expected_models() {
        let p = pn(2);
        let s1 = generator(1, &p).unwrap();
        assert_eq!(s1.module.twists(), &[1]);
        assert_eq!(s1.module.relations().cols(), 0);
        assert_eq!(s1.locus.to_string(), "{x0 != 0}");
        let s2 = generator(2, &p).unwrap();
        assert_eq!(annihilator(&s2.module).unwrap(), vec![p.var(0)]);
        assert_eq!(s2.locus.to_string(), "{x0 = 0, x1 != 0}");
        let s3 = generator(3, &p).unwrap();
        assert_eq!(s3.module.twists(), &[0]);
        assert_eq!(s3.locus.to_string(), "{x0 = 0, x1 = 0, x2 != 0}");
        assert!(matches!(generator(4, &p), Err(CoreError::IndexOutOfRange { k: 4, max: 3 })));
    }

    #[test]
    fn distinct_strata_are_disjoint() {
        for n in 1..=3 {
            for a in 1..=n + 1 {
                for b in 1..=n + 1 {
                    let la = Locus::stratum(n, a).unwrap();
                    let lb = Locus::stratum(n, b).unwrap();
                    assert_eq!(loci_disjoint(&la, &lb).unwrap(), a != b);
                }
            }
        }
    }

    #[test]
    fn euler_kernel_dimensions() {
        for n in 1..=3 {
            let p = pn(n);
            let om = cotangent_sheaf(&p);
            assert!(om.twists().iter().all(|&t| t == 2));
            let r = GradedModule::free(p.nvars(), vec![0]);
            for d in -5..=5 {
                let expected = (n + 1) * graded_piece_dim(&r, d - 1) as usize;
                assert_eq!(graded_piece_dim(&om, d) + graded_piece_dim(&r, d), expected + if d == 0 { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn cotangent_of_line_is_minus_two() {
        let p = pn(1);
        let s = saturate(&cotangent_sheaf(&p)).unwrap();
        for d in -3..=4 {
            assert_eq!(graded_piece_dim(&s, d), graded_piece_dim(&p.line_bundle(-2), d));
        }
    }

    #[test]
    fn basic_sheaf_homs() {
        for n in 1..=3 {
            let p = pn(n);
            let o = p.structure_sheaf();
            assert_eq!(sheaf_hom_dim(&o, &o, 40).unwrap(), 1);
            assert_eq!(sheaf_hom_dim(&p.line_bundle(-1), &o, 40).unwrap(), n + 1);
            assert_eq!(global_sections_dim(&cotangent_sheaf(&p), 40).unwrap(), 0);
        }
    }

    #[test]
    fn hyperplane_sequence_of_ring() {
        let p = pn(2);
        let (f, g) = hyperplane_ses(&p.structure_sheaf()).unwrap();
        assert_eq!(f.source().twists(), &[1]);
        assert_eq!(annihilator(g.target()).unwrap(), vec![p.var(0)]);
        let s2 = generator(2, &p).unwrap().module;
        assert!(matches!(hyperplane_ses(&s2), Err(CoreError::ZeroDivisor { .. })));
    }
}
