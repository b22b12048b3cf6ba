//! Bounded cochain complexes of presented graded modules.
//!
//! A complex carries an explicit window `[lo, hi]`; terms outside it are zero.
//! The differential `d^i` maps the term in degree `i` to degree `i + 1`.

use brane_algebra::{Lifter, PolyMatrix, Rational};

use crate::error::{CoreError, Result};
use crate::module::{direct_sum, is_iso, kernel_vectors, subquotient, Embedded, GradedMap, GradedModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedComplex {
    nvars: usize,
    lo: i64,
    terms: Vec<GradedModule>,
    diffs: Vec<GradedMap>,
}

fn sign(k: i64) -> Rational {
    Rational::from_integer(if k.rem_euclid(2) == 0 { 1 } else { -1 }.into())
}

impl BoundedComplex {
    /// Assembles a complex from terms in degrees `lo, lo+1, ...` and the
    /// differentials between consecutive terms. Shapes are checked here;
    /// `d ∘ d = 0` is checked by [`validate_complex`].
    pub fn new(nvars: usize, lo: i64, terms: Vec<GradedModule>, diffs: Vec<GradedMap>) -> Result<Self> {
        if terms.is_empty() {
            return Err(CoreError::Invalid("a complex needs at least one term".into()));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(CoreError::Invalid(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        for t in &terms {
            if t.nvars() != nvars {
                return Err(CoreError::RingMismatch {
                    left: nvars,
                    right: t.nvars(),
                });
            }
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source().twists() != terms[i].twists() || d.target().twists() != terms[i + 1].twists() {
                return Err(CoreError::Invalid(format!(
                    "differential in degree {} does not connect the neighbouring terms",
                    lo + i as i64
                )));
            }
        }
        Ok(BoundedComplex { nvars, lo, terms, diffs })
    }

    /// Terms and differentials that must already form a complex.
    pub fn checked(nvars: usize, lo: i64, terms: Vec<GradedModule>, diffs: Vec<GradedMap>) -> Result<Self> {
        let c = Self::new(nvars, lo, terms, diffs)?;
        c.check()?;
        Ok(c)
    }

    pub fn zero(nvars: usize) -> Self {
        BoundedComplex {
            nvars,
            lo: 0,
            terms: vec![GradedModule::zero(nvars)],
            diffs: vec![],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, i: i64) -> GradedModule {
        if i < self.lo || i > self.hi() {
            GradedModule::zero(self.nvars)
        } else {
            self.terms[(i - self.lo) as usize].clone()
        }
    }

    /// `d^i`, the zero map outside the window.
    pub fn diff(&self, i: i64) -> GradedMap {
        if i < self.lo || i >= self.hi() {
            GradedMap::zero(&self.term(i), &self.term(i + 1))
        } else {
            self.diffs[(i - self.lo) as usize].clone()
        }
    }

    pub fn check(&self) -> Result<()> {
        for i in self.lo..self.hi() - 1 {
            if !self.diff(i + 1).compose(&self.diff(i))?.is_zero() {
                return Err(CoreError::NotAComplex { degree: i });
            }
        }
        Ok(())
    }

    /// True iff every term in the window is the zero module.
    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(crate::module::is_zero_module)
    }
}

/// `d^{i+1} ∘ d^i = 0` for every `i`.
pub fn validate_complex(c: &BoundedComplex) -> bool {
    c.check().is_ok()
}

/// The complex with `m` in degree 0.
pub fn embed_object(m: &GradedModule) -> BoundedComplex {
    BoundedComplex {
        nvars: m.nvars(),
        lo: 0,
        terms: vec![m.clone()],
        diffs: vec![],
    }
}

/// `C[k]`: term `i` is `C^{i+k}` and the differential is `(-1)^k d^{i+k}`.
pub fn shift(c: &BoundedComplex, k: i64) -> BoundedComplex {
    let s = sign(k);
    BoundedComplex {
        nvars: c.nvars,
        lo: c.lo - k,
        terms: c.terms.clone(),
        diffs: c.diffs.iter().map(|d| d.scale(&s)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    source: BoundedComplex,
    target: BoundedComplex,
    lo: i64,
    levels: Vec<GradedMap>,
}

impl ComplexMap {
    /// Builds a chain map from its nonzero levels; missing levels are zero.
    /// Commutation with the differentials is checked.
    pub fn new(source: BoundedComplex, target: BoundedComplex, given: Vec<(i64, GradedMap)>) -> Result<Self> {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let mut levels: Vec<GradedMap> = (lo..=hi).map(|i| GradedMap::zero(&source.term(i), &target.term(i))).collect();
        for (i, f) in given {
            if i < lo || i > hi {
                if f.matrix().rows() > 0 && f.matrix().cols() > 0 {
                    return Err(CoreError::Invalid(format!("map level {} outside both windows", i)));
                }
                continue;
            }
            if f.source().twists() != source.term(i).twists() || f.target().twists() != target.term(i).twists() {
                return Err(CoreError::Invalid(format!("map level {} has the wrong shape", i)));
            }
            levels[(i - lo) as usize] = f;
        }
        let m = ComplexMap {
            source,
            target,
            lo,
            levels,
        };
        for i in lo - 1..=hi {
            let left = m.target.diff(i).compose(&m.level(i))?;
            let right = m.level(i + 1).compose(&m.source.diff(i))?;
            if !left.add(&right.neg())?.is_zero() {
                return Err(CoreError::NotChainMap { degree: i });
            }
        }
        Ok(m)
    }

    pub fn identity(c: &BoundedComplex) -> Self {
        let levels = (c.lo()..=c.hi()).map(|i| GradedMap::identity(&c.term(i))).collect();
        ComplexMap {
            source: c.clone(),
            target: c.clone(),
            lo: c.lo(),
            levels,
        }
    }

    pub fn source(&self) -> &BoundedComplex {
        &self.source
    }

    pub fn target(&self) -> &BoundedComplex {
        &self.target
    }

    /// Union of the source and target windows.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.levels.len() as i64 - 1)
    }

    pub fn level(&self, i: i64) -> GradedMap {
        let (lo, hi) = self.window();
        if i < lo || i > hi {
            GradedMap::zero(&self.source.term(i), &self.target.term(i))
        } else {
            self.levels[(i - lo) as usize].clone()
        }
    }

    pub fn neg(&self) -> Self {
        ComplexMap {
            levels: self.levels.iter().map(|f| f.neg()).collect(),
            ..self.clone()
        }
    }

    /// `f[k]: A[k] -> B[k]`, level `i` equal to `f^{i+k}`.
    pub fn shift(&self, k: i64) -> Self {
        ComplexMap {
            source: shift(&self.source, k),
            target: shift(&self.target, k),
            lo: self.lo - k,
            levels: self.levels.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ComplexMap) -> Result<ComplexMap> {
        let src = other.source.clone();
        let tgt = self.target.clone();
        let lo = src.lo().min(tgt.lo());
        let hi = src.hi().max(tgt.hi());
        let mut levels = Vec::new();
        for i in lo..=hi {
            levels.push((i, self.level(i).compose(&other.level(i))?));
        }
        ComplexMap::new(src, tgt, levels)
    }
}

/// `Con(h)` with its inclusion of `B` and projection onto `A[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: BoundedComplex,
    pub inclusion: ComplexMap,
    pub projection: ComplexMap,
}

/// Mapping cone: `Con^i = A^{i+1} ⊕ B^i` with `d = [[-d_A, 0], [h, d_B]]`.
pub fn cone(h: &ComplexMap) -> Result<Cone> {
    let a = h.source();
    let b = h.target();
    let nv = a.nvars();
    let lo = (a.lo() - 1).min(b.lo());
    let hi = (a.hi() - 1).max(b.hi());
    let terms: Vec<GradedModule> = (lo..=hi)
        .map(|i| direct_sum(&a.term(i + 1), &b.term(i)))
        .collect::<Result<_>>()?;
    let mut diffs = Vec::new();
    for i in lo..hi {
        let da = a.diff(i + 1).matrix().neg();
        let db = b.diff(i).matrix().clone();
        let hm = h.level(i + 1).matrix().clone();
        let zero = PolyMatrix::zero(nv, a.term(i + 2).twists().to_vec(), b.term(i).twists().to_vec());
        let top = da.hcat(&zero)?;
        let bottom = hm.hcat(&db)?;
        let m = top.vcat(&bottom)?;
        let idx = (i - lo) as usize;
        diffs.push(GradedMap::new_unchecked(terms[idx].clone(), terms[idx + 1].clone(), m));
    }
    let con = BoundedComplex::new(nv, lo, terms, diffs)?;
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for i in lo..=hi {
        let ai = a.term(i + 1);
        let bi = b.term(i);
        let ci = con.term(i);
        let z = PolyMatrix::zero(nv, ai.twists().to_vec(), bi.twists().to_vec());
        let m = z.vcat(&PolyMatrix::identity(nv, bi.twists().to_vec()))?;
        inc.push((i, GradedMap::new_unchecked(bi.clone(), ci.clone(), m)));
        let z = PolyMatrix::zero(nv, ai.twists().to_vec(), bi.twists().to_vec());
        let m = PolyMatrix::identity(nv, ai.twists().to_vec()).hcat(&z)?;
        proj.push((i, GradedMap::new_unchecked(ci, ai, m)));
    }
    let inclusion = ComplexMap::new(b.clone(), con.clone(), inc)?;
    let projection = ComplexMap::new(con.clone(), shift(a, 1), proj)?;
    Ok(Cone {
        complex: con,
        inclusion,
        projection,
    })
}

/// `H^i` as a subquotient of `C^i`, with the cover vectors of its generators.
pub(crate) fn cohomology_embedded(c: &BoundedComplex, i: i64) -> Result<Embedded> {
    let term = c.term(i);
    let k = kernel_vectors(c.diff(i).matrix(), c.term(i + 1).relations())?;
    let boundaries = c.diff(i - 1).matrix().hcat(term.relations())?;
    subquotient(&k, &boundaries)
}

pub fn cohomology(c: &BoundedComplex, i: i64) -> Result<GradedModule> {
    Ok(cohomology_embedded(c, i)?.module)
}

/// `H^i(h): H^i(A) -> H^i(B)`, by lifting images of cycle representatives.
pub fn induced_cohomology_map(h: &ComplexMap, i: i64) -> Result<GradedMap> {
    let ha = cohomology_embedded(h.source(), i)?;
    let hb = cohomology_embedded(h.target(), i)?;
    let nv = h.source().nvars();
    if ha.module.rank() == 0 || hb.module.rank() == 0 {
        return Ok(GradedMap::zero(&ha.module, &hb.module));
    }
    let b = h.target();
    let span = hb.gens.hcat(b.diff(i - 1).matrix())?.hcat(b.term(i).relations())?;
    let lifter = Lifter::new(&span);
    let images = h.level(i).matrix().mul(&ha.gens)?;
    let k = hb.module.rank();
    let mut cols = Vec::with_capacity(images.cols());
    for c in 0..images.cols() {
        let coeffs = lifter
            .lift(&images.column(c))
            .ok_or_else(|| CoreError::Invalid(format!("cycle image in degree {} does not lift", i)))?;
        cols.push(coeffs[..k].to_vec());
    }
    let matrix = PolyMatrix::from_columns(nv, hb.module.twists().to_vec(), ha.module.twists().to_vec(), cols)?;
    Ok(GradedMap::new_unchecked(ha.module, hb.module, matrix))
}

pub fn is_quasi_iso(h: &ComplexMap) -> Result<bool> {
    let (lo, hi) = h.window();
    for i in lo..=hi {
        if !is_iso(&induced_cohomology_map(h, i)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Acyclic in every degree of its window.
pub fn is_acyclic(c: &BoundedComplex) -> Result<bool> {
    for i in c.lo()..=c.hi() {
        if !crate::module::is_zero_module(&cohomology(c, i)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Chain map built from a single module map placed in degree 0.
pub fn embed_map(f: &GradedMap) -> Result<ComplexMap> {
    ComplexMap::new(embed_object(f.source()), embed_object(f.target()), vec![(0, f.clone())])
}
