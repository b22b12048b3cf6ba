//! Finitely generated graded modules given by presentations.
//!
//! Twists are generator degrees: the free module `R(a)` has twist list `[-a]`
//! and `R(a)_d = R_{a+d}`. A module is `F / im(relations)` where `F` is the
//! free cover; relation columns are vectors in `F`.

use std::collections::HashMap;

use brane_algebra::{
    minimal_columns, DenseMatrix, Lifter, Monomial, ModuleBasis, PolyMatrix, Polynomial, Rational,
};
use num_traits::{One, Zero};

use crate::error::{CoreError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeGradedModule {
    nvars: usize,
    twists: Vec<i64>,
}

impl FreeGradedModule {
    pub fn new(nvars: usize, twists: Vec<i64>) -> Self {
        FreeGradedModule { nvars, twists }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The `n` of the ambient `P^n`.
    pub fn ring_dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedModule {
    cover: FreeGradedModule,
    relations: PolyMatrix,
}

impl GradedModule {
    pub fn new(nvars: usize, twists: Vec<i64>, relations: PolyMatrix) -> Result<Self> {
        if relations.nvars() != nvars {
            return Err(CoreError::RingMismatch {
                left: nvars,
                right: relations.nvars(),
            });
        }
        if relations.row_twists() != twists.as_slice() {
            return Err(CoreError::Invalid(format!(
                "relation rows carry twists {:?}, cover has {:?}",
                relations.row_twists(),
                twists
            )));
        }
        Ok(GradedModule {
            cover: FreeGradedModule::new(nvars, twists),
            relations,
        })
    }

    pub fn free(nvars: usize, twists: Vec<i64>) -> Self {
        let relations = PolyMatrix::zero(nvars, twists.clone(), vec![]);
        GradedModule {
            cover: FreeGradedModule::new(nvars, twists),
            relations,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::free(nvars, vec![])
    }

    /// `(R / ideal)` with its generator in degree `twist`.
    pub fn cyclic(nvars: usize, ideal: &[Polynomial], twist: i64) -> Result<Self> {
        let cols: Vec<Vec<Polynomial>> = ideal.iter().filter(|f| !f.is_zero()).map(|f| vec![f.clone()]).collect();
        let relations = PolyMatrix::from_columns_inferred(nvars, vec![twist], cols, twist)?;
        Self::new(nvars, vec![twist], relations)
    }

    pub fn nvars(&self) -> usize {
        self.cover.nvars
    }

    pub fn cover(&self) -> &FreeGradedModule {
        &self.cover
    }

    pub fn twists(&self) -> &[i64] {
        &self.cover.twists
    }

    pub fn rank(&self) -> usize {
        self.cover.rank()
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    /// Gröbner basis of the relation submodule.
    pub fn relation_basis(&self) -> ModuleBasis {
        ModuleBasis::new(&self.relations)
    }

    pub(crate) fn check_ring(&self, other: &GradedModule) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(CoreError::RingMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    /// Unit vector `e_i` of the cover.
    pub fn cover_vector(&self, i: usize) -> Vec<Polynomial> {
        unit_vector(self.nvars(), self.rank(), i)
    }
}

pub(crate) fn unit_vector(nvars: usize, len: usize, i: usize) -> Vec<Polynomial> {
    (0..len)
        .map(|k| if k == i { Polynomial::one(nvars) } else { Polynomial::zero(nvars) })
        .collect()
}

/// Degree-zero map between presented modules, given on cover generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedModule,
    target: GradedModule,
    matrix: PolyMatrix,
}

impl GradedMap {
    /// Checks twists and that source relations land in the target relations.
    pub fn new(source: GradedModule, target: GradedModule, matrix: PolyMatrix) -> Result<Self> {
        source.check_ring(&target)?;
        if matrix.row_twists() != target.twists() || matrix.col_twists() != source.twists() {
            return Err(CoreError::Invalid(format!(
                "matrix twists {:?} -> {:?} do not match modules {:?} -> {:?}",
                matrix.col_twists(),
                matrix.row_twists(),
                source.twists(),
                target.twists()
            )));
        }
        let image = matrix.mul(source.relations())?;
        if image.cols() > 0 {
            let basis = target.relation_basis();
            for c in 0..image.cols() {
                if !basis.contains(&image.column(c)) {
                    return Err(CoreError::NotWellDefined { relation: c });
                }
            }
        }
        Ok(GradedMap { source, target, matrix })
    }

    /// Skips the well-definedness check; callers guarantee it by construction.
    pub(crate) fn new_unchecked(source: GradedModule, target: GradedModule, matrix: PolyMatrix) -> Self {
        debug_assert_eq!(matrix.row_twists(), target.twists());
        debug_assert_eq!(matrix.col_twists(), source.twists());
        GradedMap { source, target, matrix }
    }

    pub fn identity(m: &GradedModule) -> Self {
        let matrix = PolyMatrix::identity(m.nvars(), m.twists().to_vec());
        GradedMap::new_unchecked(m.clone(), m.clone(), matrix)
    }

    pub fn zero(source: &GradedModule, target: &GradedModule) -> Self {
        let matrix = PolyMatrix::zero(source.nvars(), target.twists().to_vec(), source.twists().to_vec());
        GradedMap::new_unchecked(source.clone(), target.clone(), matrix)
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target.twists() != self.source.twists() {
            return Err(CoreError::Invalid("composition across different modules".into()));
        }
        let matrix = self.matrix.mul(&other.matrix)?;
        Ok(GradedMap::new_unchecked(other.source.clone(), self.target.clone(), matrix))
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        let matrix = self.matrix.add(&other.matrix)?;
        Ok(GradedMap::new_unchecked(self.source.clone(), self.target.clone(), matrix))
    }

    pub fn scale(&self, c: &Rational) -> GradedMap {
        GradedMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn neg(&self) -> GradedMap {
        GradedMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    /// True iff every source generator maps into the target relations.
    pub fn is_zero(&self) -> bool {
        if self.matrix.is_zero() {
            return true;
        }
        let basis = self.target.relation_basis();
        (0..self.matrix.cols()).all(|c| basis.contains(&self.matrix.column(c)))
    }
}

/// A module `(im gens + im rels) / im rels` inside an ambient free module.
///
/// `gens` holds the ambient vectors of the cover generators of `module`;
/// `reexpress` writes each original generator in terms of the kept ones.
#[derive(Clone, Debug)]
pub(crate) struct Embedded {
    pub module: GradedModule,
    pub gens: PolyMatrix,
    pub reexpress: PolyMatrix,
}

pub(crate) fn subquotient(gens: &PolyMatrix, rels: &PolyMatrix) -> Result<Embedded> {
    let nvars = gens.nvars();
    let k = gens.cols();
    let twists = gens.col_twists().to_vec();
    if k == 0 {
        return Ok(Embedded {
            module: GradedModule::zero(nvars),
            gens: gens.clone(),
            reexpress: PolyMatrix::zero(nvars, vec![], vec![]),
        });
    }
    let relations = if gens.rows() == 0 {
        PolyMatrix::identity(nvars, twists.clone())
    } else {
        let lifter = Lifter::new(&gens.hcat(rels)?);
        let cols: Vec<Vec<Polynomial>> = lifter
            .syzygies()
            .into_iter()
            .map(|mut s| {
                s.truncate(k);
                s
            })
            .filter(|s| s.iter().any(|e| !e.is_zero()))
            .collect();
        PolyMatrix::from_columns_inferred(nvars, twists.clone(), cols, 0)?
    };
    let pruned = prune_presentation(&twists, &relations)?;
    Ok(Embedded {
        gens: gens.select_columns(&pruned.keep),
        module: pruned.module,
        reexpress: pruned.reexpress,
    })
}

pub(crate) struct Pruned {
    pub module: GradedModule,
    /// Indices of the original generators that survive.
    pub keep: Vec<usize>,
    /// Columns: images of the original generators in the pruned module.
    pub reexpress: PolyMatrix,
}

/// Removes generators killed through unit relation entries and minimizes the
/// remaining relations. Surviving generators are a subset of the originals.
pub(crate) fn prune_presentation(twists: &[i64], rels: &PolyMatrix) -> Result<Pruned> {
    let nvars = rels.nvars();
    let n = twists.len();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut cols: Vec<Vec<Polynomial>> = rels.columns();
    // reexp[g][r]: coefficient of current generator r in original generator g
    let mut reexp: Vec<Vec<Polynomial>> = (0..n).map(|g| unit_vector(nvars, n, g)).collect();
    loop {
        let pivot = cols.iter().enumerate().find_map(|(c, col)| {
            col.iter()
                .position(|e| e.as_constant().map(|u| !u.is_zero()).unwrap_or(false))
                .map(|j| (c, j))
        });
        let Some((c, j)) = pivot else { break };
        let pcol = cols.remove(c);
        let u = pcol[j].as_constant().unwrap();
        let inv = u.recip();
        for col in cols.iter_mut() {
            let f = &col[j];
            if f.is_zero() {
                continue;
            }
            let factor = f.scale(&inv);
            for (r, e) in col.iter_mut().enumerate() {
                if !pcol[r].is_zero() {
                    *e = e.sub(&factor.mul(&pcol[r]));
                }
            }
        }
        for col in cols.iter_mut() {
            col.remove(j);
        }
        let neg_inv = -inv;
        for v in reexp.iter_mut() {
            let coef = v.remove(j);
            if coef.is_zero() {
                continue;
            }
            let factor = coef.scale(&neg_inv);
            let mut rest = pcol.clone();
            rest.remove(j);
            for (e, p) in v.iter_mut().zip(rest.iter()) {
                if !p.is_zero() {
                    *e = e.add(&factor.mul(p));
                }
            }
        }
        alive.remove(j);
    }
    let new_twists: Vec<i64> = alive.iter().map(|&g| twists[g]).collect();
    let cols: Vec<Vec<Polynomial>> = cols.into_iter().filter(|c| c.iter().any(|e| !e.is_zero())).collect();
    let rel = PolyMatrix::from_columns_inferred(nvars, new_twists.clone(), cols, 0)?;
    let rel = rel.select_columns(&minimal_columns(&rel));
    let reexpress = PolyMatrix::from_columns(nvars, new_twists.clone(), twists.to_vec(), reexp)?;
    Ok(Pruned {
        module: GradedModule::new(nvars, new_twists, rel)?,
        keep: alive,
        reexpress,
    })
}

/// Minimal presentation of `m` with the comparison isomorphism `m -> pruned`.
pub fn prune(m: &GradedModule) -> Result<(GradedModule, GradedMap)> {
    let p = prune_presentation(m.twists(), m.relations())?;
    let map = GradedMap::new_unchecked(m.clone(), p.module.clone(), p.reexpress);
    Ok((p.module, map))
}

/// `M(k)`: every generator degree drops by `k`.
pub fn twist(m: &GradedModule, k: i64) -> GradedModule {
    GradedModule {
        cover: FreeGradedModule::new(m.nvars(), m.twists().iter().map(|t| t - k).collect()),
        relations: m.relations.shift_twists(-k),
    }
}

pub fn direct_sum(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    m.check_ring(n)?;
    let mut twists = m.twists().to_vec();
    twists.extend_from_slice(n.twists());
    GradedModule::new(m.nvars(), twists, m.relations.block_diag(&n.relations))
}

/// Tensor product; cover generator `(i, j)` sits at index `i * rank(n) + j`.
pub fn tensor(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    m.check_ring(n)?;
    let nv = m.nvars();
    let im = PolyMatrix::identity(nv, m.twists().to_vec());
    let inn = PolyMatrix::identity(nv, n.twists().to_vec());
    let rel = m.relations.kron(&inn).hcat(&im.kron(&n.relations))?;
    let twists = rel.row_twists().to_vec();
    let raw = GradedModule::new(nv, twists, rel)?;
    Ok(prune(&raw)?.0)
}

pub fn kernel(phi: &GradedMap) -> Result<GradedModule> {
    Ok(kernel_with_inclusion(phi)?.0)
}

/// Kernel together with its inclusion into the source.
pub fn kernel_with_inclusion(phi: &GradedMap) -> Result<(GradedModule, GradedMap)> {
    let e = kernel_embedded(phi)?;
    let inc = GradedMap::new_unchecked(e.module.clone(), phi.source.clone(), e.gens);
    Ok((e.module, inc))
}

pub(crate) fn kernel_embedded(phi: &GradedMap) -> Result<Embedded> {
    let k = kernel_vectors(&phi.matrix, phi.target.relations())?;
    subquotient(&k, phi.source.relations())
}

/// Vectors `v` of the source cover with `matrix * v` in the span of `rels`.
pub(crate) fn kernel_vectors(matrix: &PolyMatrix, rels: &PolyMatrix) -> Result<PolyMatrix> {
    let nv = matrix.nvars();
    let k = matrix.cols();
    let twists = matrix.col_twists().to_vec();
    if k == 0 || matrix.rows() == 0 {
        return Ok(PolyMatrix::identity(nv, twists));
    }
    let lifter = Lifter::new(&matrix.hcat(rels)?);
    let cols: Vec<Vec<Polynomial>> = lifter
        .syzygies()
        .into_iter()
        .map(|mut s| {
            s.truncate(k);
            s
        })
        .filter(|s| s.iter().any(|e| !e.is_zero()))
        .collect();
    let all = PolyMatrix::from_columns_inferred(nv, twists, cols, 0)?;
    Ok(all.select_columns(&minimal_columns(&all)))
}

pub fn image(phi: &GradedMap) -> Result<GradedModule> {
    Ok(image_with_maps(phi)?.0)
}

/// Image with the surjection from the source and the inclusion into the target.
pub fn image_with_maps(phi: &GradedMap) -> Result<(GradedModule, GradedMap, GradedMap)> {
    let e = subquotient(&phi.matrix, phi.target.relations())?;
    let onto = GradedMap::new_unchecked(phi.source.clone(), e.module.clone(), e.reexpress);
    let inc = GradedMap::new_unchecked(e.module.clone(), phi.target.clone(), e.gens);
    Ok((e.module, onto, inc))
}

pub fn cokernel(phi: &GradedMap) -> Result<GradedModule> {
    Ok(cokernel_with_projection(phi)?.0)
}

pub fn cokernel_with_projection(phi: &GradedMap) -> Result<(GradedModule, GradedMap)> {
    let rel = phi.target.relations.hcat(&phi.matrix)?;
    let p = prune_presentation(phi.target.twists(), &rel)?;
    let proj = GradedMap::new_unchecked(phi.target.clone(), p.module.clone(), p.reexpress);
    Ok((p.module, proj))
}

/// `dim_Q M_d`.
pub fn graded_piece_dim(m: &GradedModule, d: i64) -> usize {
    if m.rank() == 0 {
        return 0;
    }
    m.relation_basis().quotient_dim(d)
}

/// Every cover generator reduces to zero modulo the relations.
pub fn is_zero_module(m: &GradedModule) -> bool {
    if m.rank() == 0 {
        return true;
    }
    let basis = m.relation_basis();
    (0..m.rank()).all(|i| basis.contains(&m.cover_vector(i)))
}

pub fn is_iso(phi: &GradedMap) -> Result<bool> {
    Ok(is_zero_module(&kernel(phi)?) && is_zero_module(&cokernel(phi)?))
}

/// Reduced Gröbner basis of the ideal of ring elements killing `m`.
pub fn annihilator(m: &GradedModule) -> Result<Vec<Polynomial>> {
    let nv = m.nvars();
    let r = m.rank();
    if is_zero_module(m) {
        return Ok(vec![Polynomial::one(nv)]);
    }
    // 1 -> (e_0, ..., e_{r-1}) in ⊕_i F(a_i), block i shifted so e_i has degree 0
    let mut rows = Vec::new();
    let mut blocks: Option<PolyMatrix> = None;
    for i in 0..r {
        let a = m.twists()[i];
        let shifted = m.relations.shift_twists(-a);
        rows.extend(m.cover_vector(i));
        blocks = Some(match blocks {
            None => shifted,
            Some(b) => b.block_diag(&shifted),
        });
    }
    let blocks = blocks.unwrap();
    let col = PolyMatrix::from_columns(nv, blocks.row_twists().to_vec(), vec![0], vec![rows])?;
    let k = kernel_vectors(&col, &blocks)?;
    let gens: Vec<Polynomial> = k.columns().into_iter().map(|c| c[0].clone()).filter(|f| !f.is_zero()).collect();
    Ok(brane_algebra::buchberger(&gens, brane_algebra::MonomialOrder::GRevLex))
}

/// Matrix of `Hom(F0, N) -> Hom(F1, N)` induced by the relations of `m`,
/// with `Hom(F0, N) = ⊕_i N(a_i)` indexed `i * rank(N) + k`.
fn hom_free_stage(m: &GradedModule, n: &GradedModule) -> Result<(GradedModule, GradedModule, PolyMatrix)> {
    let nv = m.nvars();
    let f0_dual = PolyMatrix::identity(nv, m.twists().iter().map(|a| -a).collect());
    let f1_dual = PolyMatrix::identity(nv, m.relations.col_twists().iter().map(|b| -b).collect());
    let h0_rel = f0_dual.kron(&n.relations);
    let h1_rel = f1_dual.kron(&n.relations);
    let h0 = GradedModule::new(nv, h0_rel.row_twists().to_vec(), h0_rel)?;
    let h1 = GradedModule::new(nv, h1_rel.row_twists().to_vec(), h1_rel)?;
    let psi = m.relations.transpose().kron(&PolyMatrix::identity(nv, n.twists().to_vec()));
    Ok((h0, h1, psi))
}

/// Graded `Hom(m, n)`, embedded in `⊕_i N(a_i)`.
pub(crate) fn hom_embedded(m: &GradedModule, n: &GradedModule) -> Result<(Embedded, GradedModule)> {
    m.check_ring(n)?;
    let (h0, h1, psi) = hom_free_stage(m, n)?;
    if m.rank() == 0 || n.rank() == 0 {
        let e = subquotient(&PolyMatrix::zero(m.nvars(), h0.twists().to_vec(), vec![]), h0.relations())?;
        return Ok((e, h0));
    }
    let map = GradedMap::new_unchecked(h0.clone(), h1, psi);
    Ok((kernel_embedded(&map)?, h0))
}

pub fn hom_module(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    Ok(hom_embedded(m, n)?.0.module)
}

/// Converts a vector of `⊕_i N(a_i)` into the matrix of a map `m -> n`.
pub fn hom_vector_to_matrix(m: &GradedModule, n: &GradedModule, v: &[Polynomial], degree: i64) -> Result<PolyMatrix> {
    let r = n.rank();
    let cols: Vec<Vec<Polynomial>> = (0..m.rank()).map(|i| v[i * r..(i + 1) * r].to_vec()).collect();
    let col_twists = m.twists().iter().map(|a| a - degree).collect();
    Ok(PolyMatrix::from_columns(m.nvars(), n.twists().to_vec(), col_twists, cols)?)
}

/// Linear coordinates of graded pieces of a presented module on the
/// standard monomials of its relation Gröbner basis.
pub(crate) struct PieceCoordinates {
    basis: ModuleBasis,
    index: HashMap<i64, HashMap<(usize, Monomial), usize>>,
    dims: HashMap<i64, usize>,
}

impl PieceCoordinates {
    pub fn new(m: &GradedModule) -> Self {
        PieceCoordinates {
            basis: m.relation_basis(),
            index: HashMap::new(),
            dims: HashMap::new(),
        }
    }

    fn ensure(&mut self, d: i64) {
        if self.index.contains_key(&d) {
            return;
        }
        let std = self.basis.standard_monomials(d);
        self.dims.insert(d, std.len());
        self.index.insert(d, std.into_iter().enumerate().map(|(i, k)| (k, i)).collect());
    }

    pub fn dim(&mut self, d: i64) -> usize {
        self.ensure(d);
        self.dims[&d]
    }

    pub fn standard(&mut self, d: i64) -> Vec<(usize, Monomial)> {
        self.ensure(d);
        let mut v: Vec<((usize, Monomial), usize)> = self.index[&d].iter().map(|(k, &i)| (k.clone(), i)).collect();
        v.sort_by_key(|(_, i)| *i);
        v.into_iter().map(|(k, _)| k).collect()
    }

    /// Coordinates of a homogeneous vector of degree `d`.
    pub fn coordinates(&mut self, v: &[Polynomial], d: i64) -> Vec<Rational> {
        self.ensure(d);
        let mut out = vec![Rational::zero(); self.dims[&d]];
        let red = self.basis.reduce(v);
        let idx = &self.index[&d];
        for (c, p) in red.iter().enumerate() {
            for (mono, coef) in p.terms() {
                let i = idx[&(c, mono.clone())];
                out[i] = coef.clone();
            }
        }
        out
    }
}

/// Basis of the degree-zero homomorphisms `m -> n`, by dense linear algebra
/// over the standard-monomial coordinates of `n`.
pub struct DegreeZeroHoms {
    source: GradedModule,
    target: GradedModule,
    coords: PieceCoordinates,
    /// Per source generator, the coordinate offset in parameter space.
    offsets: Vec<usize>,
    params: usize,
    basis: Vec<Vec<Rational>>,
}

impl DegreeZeroHoms {
    pub fn new(m: &GradedModule, n: &GradedModule) -> Result<Self> {
        m.check_ring(n)?;
        let mut coords = PieceCoordinates::new(n);
        let mut offsets = Vec::with_capacity(m.rank());
        let mut params = 0;
        for &a in m.twists() {
            offsets.push(params);
            params += if n.rank() == 0 { 0 } else { coords.dim(a) };
        }
        let mut out = DegreeZeroHoms {
            source: m.clone(),
            target: n.clone(),
            coords,
            offsets,
            params,
            basis: Vec::new(),
        };
        if params == 0 {
            return Ok(out);
        }
        // Constraint rows: every source relation must map into the target relations.
        let rel = m.relations();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for j in 0..rel.cols() {
            let bj = rel.col_twists()[j];
            let dim = out.coords.dim(bj);
            if dim == 0 {
                continue;
            }
            let mut block = vec![vec![Rational::zero(); params]; dim];
            for i in 0..m.rank() {
                let f = rel.get(i, j);
                if f.is_zero() {
                    continue;
                }
                let std = out.coords.standard(m.twists()[i]);
                for (s, (c, mono)) in std.iter().enumerate() {
                    let mut v = vec![Polynomial::zero(n.nvars()); n.rank()];
                    v[*c] = f.mul_monomial(mono);
                    let img = out.coords.coordinates(&v, bj);
                    for (r, x) in img.into_iter().enumerate() {
                        block[r][out.offsets[i] + s] = x;
                    }
                }
            }
            rows.extend(block);
        }
        out.basis = if rows.is_empty() {
            (0..params)
                .map(|i| {
                    let mut v = vec![Rational::zero(); params];
                    v[i] = Rational::one();
                    v
                })
                .collect()
        } else {
            DenseMatrix::from_rows(rows).kernel()
        };
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    /// The `k`-th basis map.
    pub fn map(&mut self, k: usize) -> GradedMap {
        let v = self.basis[k].clone();
        self.map_from_parameters(&v)
    }

    pub fn maps(&mut self) -> Vec<GradedMap> {
        (0..self.dim()).map(|k| self.map(k)).collect()
    }

    fn map_from_parameters(&mut self, v: &[Rational]) -> GradedMap {
        let nv = self.source.nvars();
        let mut cols = Vec::with_capacity(self.source.rank());
        for i in 0..self.source.rank() {
            let std = self.coords.standard(self.source.twists()[i]);
            let mut col = vec![Polynomial::zero(nv); self.target.rank()];
            for (s, (c, mono)) in std.into_iter().enumerate() {
                let x = &v[self.offsets[i] + s];
                if !x.is_zero() {
                    col[c] = col[c].add(&Polynomial::term(mono, x.clone()));
                }
            }
            cols.push(col);
        }
        let matrix = PolyMatrix::from_columns(nv, self.target.twists().to_vec(), self.source.twists().to_vec(), cols)
            .expect("standard monomials have the right degrees");
        GradedMap::new_unchecked(self.source.clone(), self.target.clone(), matrix)
    }

    /// Coordinates of a degree-zero map `source -> target` in this basis.
    pub fn coordinates(&mut self, f: &PolyMatrix) -> Option<Vec<Rational>> {
        let mut param = vec![Rational::zero(); self.params];
        for i in 0..self.source.rank() {
            let c = self.coords.coordinates(&f.column(i), self.source.twists()[i]);
            for (s, x) in c.into_iter().enumerate() {
                param[self.offsets[i] + s] = x;
            }
        }
        if self.basis.is_empty() {
            return param.iter().all(|x| x.is_zero()).then(Vec::new);
        }
        // Solve basis^T * x = param.
        let mut t = DenseMatrix::zeros(self.params, self.basis.len());
        for (k, b) in self.basis.iter().enumerate() {
            for (r, x) in b.iter().enumerate() {
                t.set(r, k, x.clone());
            }
        }
        t.solve(&param)
    }
}

/// Certifies `0 -> A --f--> B --g--> C -> 0` exact at every spot.
pub fn check_short_exact(f: &GradedMap, g: &GradedMap) -> Result<()> {
    let min_degree = |m: &GradedModule| m.twists().iter().copied().min().unwrap_or(0);
    let (ker_f, _) = kernel_with_inclusion(f)?;
    if !is_zero_module(&ker_f) {
        return Err(CoreError::NotExact {
            position: "source",
            degree: min_degree(&ker_f),
        });
    }
    let coker_g = cokernel(g)?;
    if !is_zero_module(&coker_g) {
        return Err(CoreError::NotExact {
            position: "target",
            degree: min_degree(&coker_g),
        });
    }
    if !g.compose(f)?.is_zero() {
        let gf = g.compose(f)?;
        let basis = gf.target.relation_basis();
        let c = (0..gf.matrix.cols()).find(|&c| !basis.contains(&gf.matrix.column(c))).unwrap_or(0);
        return Err(CoreError::NotExact {
            position: "middle",
            degree: f.source.twists()[c],
        });
    }
    let (_, inc) = kernel_with_inclusion(g)?;
    let span = ModuleBasis::new(&f.matrix.hcat(f.target.relations())?);
    for c in 0..inc.matrix.cols() {
        if !span.contains(&inc.matrix.column(c)) {
            return Err(CoreError::NotExact {
                position: "middle",
                degree: inc.matrix.col_twists()[c],
            });
        }
    }
    Ok(())
}

/// Degree-`d` homomorphisms `m -> n`, as a basis count.
pub fn hom_dim_in_degree(m: &GradedModule, n: &GradedModule, d: i64) -> Result<usize> {
    Ok(DegreeZeroHoms::new(m, &twist(n, d))?.dim())
}
