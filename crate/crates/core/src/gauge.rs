//! Holomorphic connections and gauge fields on branes built from the
//! generator family: the Hom-vanishing certificates, the Atiyah class of a
//! line bundle in Čech form, and the counting bound.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use brane_algebra::{DenseMatrix, Lifter, Monomial, Polynomial, Rational};
use num_traits::Zero;

use crate::cech::{cech_table, CechComplex};
use crate::complex::BoundedComplex;
use crate::error::{CoreError, Result};
use crate::module::{direct_sum, graded_piece_dim, GradedMap, GradedModule};
use crate::projective::{
    cotangent_sheaf, euler_kernel, generator, loci_disjoint, sheaf_hom_dim, twisted_cotangent, ProjectiveSpace,
};

/// A support-disjoint pair whose sheaf Hom into `Ω¹ ⊗ S_j` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub dim: usize,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hom(S_{}, Omega1 (x) S_{}) on P^{} has dimension {}: {}",
            self.i, self.j, self.n, self.dim, self.message
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCertificate {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
    pub support_disjoint: bool,
    pub vanishes: bool,
}

/// `dim Hom(S_i, Ω¹ ⊗ S_j)` with the support-disjointness shortcut recorded
/// next to it. The two disagreeing is reported as a [`Finding`].
pub fn hom_vanishing_certificate(i: usize, j: usize, p: &ProjectiveSpace, cap: usize) -> Result<HomCertificate> {
    let si = generator(i, p)?;
    let sj = generator(j, p)?;
    let support_disjoint = loci_disjoint(&si.locus, &sj.locus)?;
    let dim = sheaf_hom_dim(&si.module, &twisted_cotangent(p, &sj.module)?, cap)?;
    if support_disjoint && dim != 0 {
        return Err(CoreError::Finding(Finding {
            n: p.n(),
            i,
            j,
            dim,
            message: format!("loci {} and {} are disjoint but the sheaf Hom is nonzero", si.locus, sj.locus),
        }));
    }
    Ok(HomCertificate {
        i,
        j,
        dim,
        support_disjoint,
        vanishes: dim == 0,
    })
}

/// A direct summand of a declared term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    /// The generator `S_k`.
    Generator(usize),
    /// The line bundle `O(a)`.
    LineBundle(i64),
}

impl Summand {
    pub fn module(&self, p: &ProjectiveSpace) -> Result<GradedModule> {
        match *self {
            Summand::Generator(k) => Ok(generator(k, p)?.module),
            Summand::LineBundle(a) => Ok(p.line_bundle(a)),
        }
    }

    /// Degree `a` when the summand is the line bundle `O(a)`.
    pub fn line_bundle_degree(&self) -> Option<i64> {
        match *self {
            Summand::LineBundle(a) => Some(a),
            Summand::Generator(1) => Some(-1),
            Summand::Generator(_) => None,
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Generator(k) => write!(f, "S({})", k),
            Summand::LineBundle(a) => write!(f, "O({})", a),
        }
    }
}

/// A bounded complex whose every nonzero term carries a direct-sum
/// decomposition into summands.
#[derive(Clone, Debug)]
pub struct DeclaredComplex {
    space: ProjectiveSpace,
    complex: BoundedComplex,
    summands: Vec<Vec<Summand>>,
}

const HILBERT_WINDOW: i64 = 12;

impl DeclaredComplex {
    /// `summands[p - lo]` declares term `p`; `None` marks an undeclared term,
    /// which is rejected unless the term is zero.
    pub fn new(space: ProjectiveSpace, complex: BoundedComplex, summands: Vec<Option<Vec<Summand>>>) -> Result<Self> {
        if complex.nvars() != space.nvars() {
            return Err(CoreError::RingMismatch {
                left: space.nvars(),
                right: complex.nvars(),
            });
        }
        let len = (complex.hi() - complex.lo() + 1) as usize;
        if summands.len() != len {
            return Err(CoreError::Invalid(format!(
                "{} summand lists for a complex with {} terms",
                summands.len(),
                len
            )));
        }
        let mut out = Vec::with_capacity(len);
        for (k, decl) in summands.into_iter().enumerate() {
            let deg = complex.lo() + k as i64;
            let term = complex.term(deg);
            let list = match decl {
                Some(list) => list,
                None if term.rank() == 0 => Vec::new(),
                None => return Err(CoreError::UndeclaredTerm { degree: deg }),
            };
            let declared = direct_sum_of(&space, &list)?;
            if declared != term && !same_hilbert_function(&declared, &term) {
                return Err(CoreError::Invalid(format!("term {} does not match its declared summands", deg)));
            }
            out.push(list);
        }
        Ok(DeclaredComplex {
            space,
            complex,
            summands: out,
        })
    }

    /// Builds the terms from the declarations themselves.
    pub fn from_summands(space: ProjectiveSpace, lo: i64, summands: Vec<Vec<Summand>>, diffs: Vec<GradedMap>) -> Result<Self> {
        let terms = summands
            .iter()
            .map(|l| direct_sum_of(&space, l))
            .collect::<Result<Vec<_>>>()?;
        let complex = BoundedComplex::checked(space.nvars(), lo, terms, diffs)?;
        Ok(DeclaredComplex {
            space,
            complex,
            summands,
        })
    }

    pub fn space(&self) -> &ProjectiveSpace {
        &self.space
    }

    pub fn complex(&self) -> &BoundedComplex {
        &self.complex
    }

    pub fn summands(&self, p: i64) -> &[Summand] {
        let lo = self.complex.lo();
        if p < lo || p > self.complex.hi() {
            &[]
        } else {
            &self.summands[(p - lo) as usize]
        }
    }

    /// `F[k]`, keeping the declarations.
    pub fn shift(&self, k: i64) -> DeclaredComplex {
        DeclaredComplex {
            space: self.space,
            complex: crate::complex::shift(&self.complex, k),
            summands: self.summands.clone(),
        }
    }

    fn all_summands(&self) -> impl Iterator<Item = Summand> + '_ {
        self.summands.iter().flatten().copied()
    }
}

/// The direct sum of the listed summands, in order.
pub fn direct_sum_of(p: &ProjectiveSpace, list: &[Summand]) -> Result<GradedModule> {
    let mut acc = GradedModule::zero(p.nvars());
    for s in list {
        acc = direct_sum(&acc, &s.module(p)?)?;
    }
    Ok(acc)
}

fn same_hilbert_function(a: &GradedModule, b: &GradedModule) -> bool {
    (-HILBERT_WINDOW..=HILBERT_WINDOW).all(|d| graded_piece_dim(a, d) == graded_piece_dim(b, d))
}

/// `dim Hom(s, Ω¹ ⊗ t)` for a pair of summands.
fn pair_hom_dim(s: Summand, t: Summand, p: &ProjectiveSpace, cap: usize) -> Result<usize> {
    if let (Summand::Generator(i), Summand::Generator(j)) = (s, t) {
        return Ok(hom_vanishing_certificate(i, j, p, cap)?.dim);
    }
    sheaf_hom_dim(&s.module(p)?, &twisted_cotangent(p, &t.module(p)?)?, cap)
}

/// `sum_m dim Hom^m(F, Ω¹ ⊗ F)` over the sheaf Hom complex, which by
/// bilinearity is the sum over all pairs of declared summands.
pub fn derived_hom_dim(f: &DeclaredComplex, cap: usize) -> Result<usize> {
    let mut cache: HashMap<(Summand, Summand), usize> = HashMap::new();
    let mut total = 0;
    let all: Vec<Summand> = f.all_summands().collect();
    for &s in &all {
        for &t in &all {
            let d = match cache.get(&(s, t)) {
                Some(&d) => d,
                None => {
                    let d = pair_hom_dim(s, t, f.space(), cap)?;
                    cache.insert((s, t), d);
                    d
                }
            };
            total += d;
        }
    }
    Ok(total)
}

/// Every term of `Hom(F, Ω¹ ⊗ F)` vanishes.
pub fn derived_hom_vanishes(f: &DeclaredComplex, cap: usize) -> Result<bool> {
    Ok(derived_hom_dim(f, cap)? == 0)
}

/// A Čech 1-cochain of `Ω¹` on the standard cover, stored for `i < j` as
/// cover vectors of degree `2 * level` standing for `v / (x_i x_j)^level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCocycle {
    pub ambient: ProjectiveSpace,
    pub level: u32,
    entries: BTreeMap<(usize, usize), Vec<Polynomial>>,
}

impl CechCocycle {
    /// Entry on the chart pair `(i, j)`; antisymmetric by construction.
    pub fn entry(&self, i: usize, j: usize) -> Option<Vec<Polynomial>> {
        if i < j {
            self.entries.get(&(i, j)).cloned()
        } else if j < i {
            self.entries.get(&(j, i)).map(|v| v.iter().map(|p| p.neg()).collect())
        } else {
            None
        }
    }

    fn parts(&self) -> Vec<(Vec<usize>, Vec<Polynomial>)> {
        self.entries.iter().map(|(&(i, j), v)| (vec![i, j], v.clone())).collect()
    }
}

/// The transition-derivative cocycle `a · dlog(x_j / x_i)` of `O(a)`.
pub fn atiyah_cocycle(a: i64, p: &ProjectiveSpace, level: u32) -> Result<CechCocycle> {
    if level == 0 {
        return Err(CoreError::Invalid("Čech level must be at least 1".into()));
    }
    let nv = p.nvars();
    let lifter = Lifter::new(&euler_kernel(p));
    let scale = Rational::from_integer(a.into());
    let mut entries = BTreeMap::new();
    for i in 0..nv {
        for j in i + 1..nv {
            // x_i dx_j - x_j dx_i, in the free module on dx_0, ..., dx_n
            let mut form = vec![Polynomial::zero(nv); nv];
            form[j] = p.var(i);
            form[i] = p.var(j).neg();
            let coeffs = lifter
                .lift(&form)
                .ok_or_else(|| CoreError::Invalid("dlog form outside the Euler kernel".into()))?;
            let mut e = vec![0; nv];
            e[i] = level - 1;
            e[j] = level - 1;
            let factor = Polynomial::term(Monomial::from_exponents(&e), scale.clone());
            entries.insert((i, j), coeffs.iter().map(|c| c.mul(&factor)).collect());
        }
    }
    Ok(CechCocycle {
        ambient: *p,
        level,
        entries,
    })
}

/// Coordinate of the class of `atiyah_cocycle(a)` against the `a = 1` class
/// in the truncated Čech complex at `level`.
fn atiyah_coordinate_at(a: i64, p: &ProjectiveSpace, om: &GradedModule, level: u32) -> Result<Rational> {
    let cech = CechComplex::new(om, level)?;
    let basis = atiyah_cocycle(1, p, level)?;
    let key = cech
        .cochain_key(1, &basis.parts())?
        .ok_or_else(|| CoreError::Invalid("basis cocycle vanishes in the Čech model".into()))?;
    let c1 = cech.cochain_coordinates(&key, 1, &basis.parts())?;
    let ca = cech.cochain_coordinates(&key, 1, &atiyah_cocycle(a, p, level)?.parts())?;
    let d1 = cech.block_differential(&key, 1);
    if d1.rows() > 0 && !d1.mul_vec(&ca).iter().all(Zero::is_zero) {
        return Err(CoreError::Invalid("transition cochain fails the cocycle condition".into()));
    }
    let d0 = cech.block_differential(&key, 0);
    let rows: Vec<Vec<Rational>> = (0..c1.len())
        .map(|r| {
            let mut row = vec![c1[r].clone()];
            row.extend((0..d0.cols()).map(|c| d0.get(r, c).clone()));
            row
        })
        .collect();
    let system = DenseMatrix::from_rows(rows);
    if system.rank() == d0.rank() {
        return Err(CoreError::Invalid("basis cocycle is a coboundary".into()));
    }
    let sol = system
        .solve(&ca)
        .ok_or_else(|| CoreError::Invalid("Atiyah cocycle outside the span of the basis class".into()))?;
    Ok(sol[0].clone())
}

/// Coordinate of the Atiyah class of `O(a)` in `H¹(Ω¹) ≅ Q`, relative to the
/// class of `O(1)`, certified equal at `bound` and `bound + 1`.
pub fn atiyah_class_line_bundle(a: i64, p: &ProjectiveSpace, bound: u32) -> Result<Rational> {
    if p.n() > 3 {
        return Err(CoreError::UnsupportedDimension { n: p.n() });
    }
    let om = cotangent_sheaf(p);
    let x = atiyah_coordinate_at(a, p, &om, bound)?;
    let y = atiyah_coordinate_at(a, p, &om, bound + 1)?;
    if x != y {
        return Err(CoreError::NotStabilized {
            bound,
            at_bound: usize::from(!x.is_zero()),
            at_next: usize::from(!y.is_zero()),
        });
    }
    Ok(x)
}

pub fn connection_exists_line_bundle(a: i64, p: &ProjectiveSpace, bound: u32) -> Result<bool> {
    Ok(atiyah_class_line_bundle(a, p, bound)?.is_zero())
}

/// `0 -> Ω¹(a) -> J¹(O(a)) -> O(a) -> 0`, recorded by its outer terms and
/// extension class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSequenceRecord {
    pub degree: i64,
    pub sub: String,
    pub middle: String,
    pub quotient: String,
    pub class: Rational,
    pub split: bool,
    pub sub_cech: Vec<usize>,
    pub quotient_cech: Vec<usize>,
}

pub fn jet_sequence_record(a: i64, p: &ProjectiveSpace, bound: u32) -> Result<JetSequenceRecord> {
    let class = atiyah_class_line_bundle(a, p, bound)?;
    let line = p.line_bundle(a);
    Ok(JetSequenceRecord {
        degree: a,
        sub: format!("Omega1({})", a),
        middle: format!("J1(O({}))", a),
        quotient: format!("O({})", a),
        split: class.is_zero(),
        class,
        sub_cech: cech_table(&twisted_cotangent(p, &line)?, bound)?,
        quotient_cech: cech_table(&line, bound)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtiyahStatus {
    Zero,
    Nonzero,
    Undecided,
}

impl fmt::Display for AtiyahStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtiyahStatus::Zero => "zero",
            AtiyahStatus::Nonzero => "nonzero",
            AtiyahStatus::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaugeCount {
    Exactly0,
    Exactly1,
    AtMost1,
    /// Gauge fields form an affine space over a nonzero space, if any exist.
    ZeroOrInfinite,
}

impl fmt::Display for GaugeCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GaugeCount::Exactly0 => "exactly_0",
            GaugeCount::Exactly1 => "exactly_1",
            GaugeCount::AtMost1 => "at_most_1",
            GaugeCount::ZeroOrInfinite => "zero_or_infinite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeReport {
    pub brane_id: String,
    pub hom_dim: usize,
    pub atiyah_status: AtiyahStatus,
    pub count: GaugeCount,
    /// Oracles run and bounds used, in order.
    pub trail: Vec<String>,
}

impl GaugeReport {
    pub fn is_consistent(&self) -> bool {
        let by_hom = match self.count {
            GaugeCount::ZeroOrInfinite => self.hom_dim > 0,
            GaugeCount::Exactly0 => true,
            _ => self.hom_dim == 0,
        };
        let by_status = match self.atiyah_status {
            AtiyahStatus::Nonzero => self.count == GaugeCount::Exactly0,
            AtiyahStatus::Zero => self.hom_dim != 0 || self.count == GaugeCount::Exactly1,
            AtiyahStatus::Undecided => !matches!(self.count, GaugeCount::Exactly0 | GaugeCount::Exactly1),
        };
        by_hom && by_status
    }
}

/// The single line bundle `O(a)` making up `F`, if that is all `F` is.
fn single_line_bundle(f: &DeclaredComplex) -> Option<i64> {
    let mut found = None;
    for p in f.complex().lo()..=f.complex().hi() {
        for s in f.summands(p) {
            if found.is_some() {
                return None;
            }
            found = Some(s.line_bundle_degree()?);
        }
    }
    found
}

pub fn gauge_field_count_bound(brane_id: &str, f: &DeclaredComplex, cap: usize, cech_bound: u32) -> Result<GaugeReport> {
    let mut trail = Vec::new();
    let hom_dim = derived_hom_dim(f, cap)?;
    trail.push(format!("hom complex: sheaf-hom oracle, saturation cap {}", cap));
    let (atiyah_status, decided) = match single_line_bundle(f) {
        Some(a) => {
            let zero = connection_exists_line_bundle(a, f.space(), cech_bound)?;
            trail.push(format!(
                "atiyah: line bundle O({}), cech bound {} stabilized at {}",
                a,
                cech_bound,
                cech_bound + 1
            ));
            (if zero { AtiyahStatus::Zero } else { AtiyahStatus::Nonzero }, true)
        }
        None => {
            trail.push("atiyah: not a single line bundle, existence undecided".to_string());
            (AtiyahStatus::Undecided, false)
        }
    };
    let count = match (atiyah_status, hom_dim) {
        (AtiyahStatus::Nonzero, _) => GaugeCount::Exactly0,
        (_, d) if d > 0 => GaugeCount::ZeroOrInfinite,
        (AtiyahStatus::Zero, _) if decided => GaugeCount::Exactly1,
        _ => GaugeCount::AtMost1,
    };
    let report = GaugeReport {
        brane_id: brane_id.to_string(),
        hom_dim,
        atiyah_status,
        count,
        trail,
    };
    if !report.is_consistent() {
        return Err(CoreError::Invalid(format!("inconsistent gauge report for {}", brane_id)));
    }
    Ok(report)
}
