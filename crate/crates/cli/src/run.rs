//! Task execution. Each task builds what it needs from the manifest, so a
//! failing task leaves the others untouched.

use brane_algebra::PolyMatrix;
use brane_core::cech::{cech_table, default_cech_bound};
use brane_core::complex::{cone, embed_map, is_acyclic, is_quasi_iso, shift, validate_complex, BoundedComplex};
use brane_core::gauge::{
    atiyah_class_line_bundle, direct_sum_of, gauge_field_count_bound, hom_vanishing_certificate, jet_sequence_record,
    DeclaredComplex, Summand,
};
use brane_core::homcomplex::{hom_complex, HomOracle};
use brane_core::module::{annihilator, graded_piece_dim, prune, GradedMap, GradedModule};
use brane_core::projective::{cotangent_sheaf, generator, loci_disjoint, sheaf_hom_dim, ProjectiveSpace};
use brane_core::resolution::{free_resolution, resolution_ranks};
use brane_core::saturation::DEFAULT_SATURATION_CAP;
use brane_core::triangle::triangle_from_ses;
use brane_core::{CoreError, Result};

use crate::manifest::{Manifest, MapRef, ModuleRef, OracleChoice, Task};
use crate::report::{Report, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Čech truncation level; `None` uses the default for the ring.
    pub cech_bound: Option<u32>,
    /// Top degree for Hilbert-function output.
    pub max_degree: i64,
    pub saturation_cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            cech_bound: None,
            max_degree: 8,
            saturation_cap: DEFAULT_SATURATION_CAP,
        }
    }
}

struct Context<'a> {
    manifest: &'a Manifest,
    space: ProjectiveSpace,
    opts: &'a RunOptions,
}

fn list<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn missing(what: &str, name: &str) -> CoreError {
    CoreError::Invalid(format!("no {} named '{}'", what, name))
}

impl Context<'_> {
    fn nvars(&self) -> usize {
        self.space.nvars()
    }

    fn cech_bound(&self, p: &ProjectiveSpace) -> u32 {
        self.opts.cech_bound.unwrap_or_else(|| default_cech_bound(p.n()))
    }

    fn module(&self, r: &ModuleRef) -> Result<GradedModule> {
        match r {
            ModuleRef::Named(name) => {
                let d = self.manifest.module(name).ok_or_else(|| missing("module", name))?;
                let rel = PolyMatrix::from_columns_inferred(self.nvars(), d.twists.clone(), d.relations.clone(), 0)?;
                GradedModule::new(self.nvars(), d.twists.clone(), rel)
            }
            ModuleRef::LineBundle(a) => Ok(self.space.line_bundle(*a)),
            ModuleRef::Generator(k) => Ok(generator(*k, &self.space)?.module),
            ModuleRef::Cotangent => Ok(cotangent_sheaf(&self.space)),
            ModuleRef::Sum(list) => direct_sum_of(&self.space, list),
        }
    }

    fn map(&self, r: &MapRef) -> Result<GradedMap> {
        match r {
            MapRef::Identity(m) => Ok(GradedMap::identity(&self.module(m)?)),
            MapRef::Named(name) => {
                let d = self.manifest.map(name).ok_or_else(|| missing("map", name))?;
                let src = self.module(&d.source)?;
                let tgt = self.module(&d.target)?;
                let m = PolyMatrix::from_columns(self.nvars(), tgt.twists().to_vec(), src.twists().to_vec(), d.matrix.clone())?;
                GradedMap::new(src, tgt, m)
            }
        }
    }

    /// The complex and the summand declaration of each term.
    fn complex(&self, name: &str) -> Result<(BoundedComplex, Vec<Option<Vec<Summand>>>)> {
        let d = self.manifest.complex(name).ok_or_else(|| missing("complex", name))?;
        let mut terms = Vec::new();
        let mut decls = Vec::new();
        for p in d.lo..=d.hi {
            match d.terms.get(&p) {
                Some(r) => {
                    terms.push(self.module(r)?);
                    decls.push(r.summands());
                }
                None => {
                    terms.push(GradedModule::zero(self.nvars()));
                    decls.push(Some(Vec::new()));
                }
            }
        }
        let mut diffs = Vec::new();
        for p in d.lo..d.hi {
            let (src, tgt) = (&terms[(p - d.lo) as usize], &terms[(p - d.lo) as usize + 1]);
            match d.diffs.get(&p) {
                None => diffs.push(GradedMap::zero(src, tgt)),
                Some(r) => {
                    let f = self.map(r)?;
                    if f.source() != src || f.target() != tgt {
                        return Err(CoreError::Invalid(format!("d[{}] = {} does not run from term {} to term {}", p, r, p, p + 1)));
                    }
                    diffs.push(f);
                }
            }
        }
        Ok((BoundedComplex::checked(self.nvars(), d.lo, terms, diffs)?, decls))
    }

    fn space_for(&self, n: Option<usize>) -> Result<ProjectiveSpace> {
        match n {
            None => Ok(self.space),
            Some(n) => ProjectiveSpace::new(n),
        }
    }
}

fn ranks(c: &BoundedComplex) -> String {
    list((c.lo()..=c.hi()).map(|p| c.term(p).rank()))
}

fn run_task(ctx: &Context, task: &Task, r: &mut Report) -> Result<()> {
    let cap = ctx.opts.saturation_cap;
    match task {
        Task::Resolve(m) => {
            let m = ctx.module(m)?;
            let res = free_resolution(&m, ctx.nvars())?;
            r.field("length", res.len());
            r.field("ranks", list(resolution_ranks(&res, &m)));
            let f0 = match res.first() {
                Some(d) => d.row_twists().to_vec(),
                None => prune(&m)?.0.twists().to_vec(),
            };
            r.field("twists[0]", list(f0));
            for (i, d) in res.iter().enumerate() {
                r.field(format!("twists[{}]", i + 1), list(d.col_twists().iter()));
            }
            r.note(format!("minimal resolution, length bound {}", ctx.nvars()));
        }
        Task::Annihilator(m) => {
            let gens = annihilator(&ctx.module(m)?)?;
            r.field("generators", list(gens.iter()));
        }
        Task::Hilbert { module, from, to } => {
            let m = ctx.module(module)?;
            let from = from.unwrap_or_else(|| m.twists().iter().copied().min().unwrap_or(0));
            let to = to.unwrap_or(ctx.opts.max_degree);
            r.field("from", from);
            r.field("to", to);
            r.field("dims", list((from..=to).map(|d| graded_piece_dim(&m, d))));
        }
        Task::SheafHom(a, b) => {
            let dim = sheaf_hom_dim(&ctx.module(a)?, &ctx.module(b)?, cap)?;
            r.field("dim", dim);
            r.note(format!("sheaf hom through truncated saturation, cap {}", cap));
        }
        Task::Cech(m) => {
            let bound = ctx.cech_bound(&ctx.space);
            let table = cech_table(&ctx.module(m)?, bound)?;
            for (i, h) in table.iter().enumerate() {
                r.field(format!("h{}", i), h);
            }
            r.note(format!("cech bound {} stabilized at {}", bound, bound + 1));
        }
        Task::Cone(h) => {
            let h = embed_map(&ctx.map(h)?)?;
            let c = cone(&h)?.complex;
            r.field("window", format!("[{}..{}]", c.lo(), c.hi()));
            r.field("ranks", ranks(&c));
            r.field("square-zero", validate_complex(&c));
            r.field("acyclic", is_acyclic(&c)?);
        }
        Task::QuasiIso(h) => {
            let q = is_quasi_iso(&embed_map(&ctx.map(h)?)?)?;
            r.field("quasi-iso", q);
            if !q {
                r.mark(Status::False);
            }
        }
        Task::TriangleFromSes(f, g) => {
            let st = triangle_from_ses(&ctx.map(f)?, &ctx.map(g)?)?;
            let q = is_quasi_iso(&st.comparison)?;
            let gf = st.triangle.composite_vanishes_on_cohomology()?;
            r.field("exact", true);
            r.field("cone-window", format!("[{}..{}]", st.triangle.c.lo(), st.triangle.c.hi()));
            r.field("comparison-quasi-iso", q);
            r.field("composite-vanishes", gf);
            if !(q && gf) {
                r.mark(Status::False);
            }
        }
        Task::Shift { complex, k } => {
            let (c, _) = ctx.complex(complex)?;
            let s = shift(&c, *k);
            r.field("window", format!("[{}..{}]", s.lo(), s.hi()));
            r.field("ranks", ranks(&s));
            r.field("square-zero", validate_complex(&s));
        }
        Task::HomComplex { source, target, oracle } => {
            let (b, _) = ctx.complex(source)?;
            let (c, _) = ctx.complex(target)?;
            let oracle = match oracle {
                OracleChoice::Module => HomOracle::ModuleHom,
                OracleChoice::Sheaf => HomOracle::SheafHom { cap },
            };
            let h = hom_complex(&b, &c, oracle)?;
            r.field("window", format!("[{}..{}]", h.lo, h.hi()));
            r.field("dims", list(h.dims.iter()));
            r.field("vanishing-certificate", h.is_zero());
            if let Some(sq) = h.square_zero() {
                r.field("square-zero", sq);
                let coh = (h.lo..=h.hi()).map(|m| h.cohomology_dim(m).unwrap_or(0));
                r.field("cohomology", list(coh));
                r.note("module hom oracle with explicit differentials");
            } else {
                r.note(format!("sheaf hom oracle, dimensions only, cap {}", cap));
            }
        }
        Task::Generators => {
            for k in 1..=ctx.space.n() + 1 {
                let g = generator(k, &ctx.space)?;
                r.field(format!("S({}).twist", k), -g.module.twists()[0]);
                r.field(format!("S({}).annihilator", k), list(annihilator(&g.module)?.iter()));
                r.field(format!("S({}).locus", k), &g.locus);
            }
        }
        Task::Disjointness => {
            let n = ctx.space.n();
            for a in 1..=n + 1 {
                for b in a + 1..=n + 1 {
                    let d = loci_disjoint(&generator(a, &ctx.space)?.locus, &generator(b, &ctx.space)?.locus)?;
                    r.field(format!("disjoint({},{})", a, b), d);
                    if !d {
                        r.mark(Status::False);
                    }
                }
            }
        }
        Task::Lem1Check { n } => {
            let p = ctx.space_for(*n)?;
            let mut vanishing = 0;
            let total = (p.n() + 1) * (p.n() + 1);
            for i in 1..=p.n() + 1 {
                for j in 1..=p.n() + 1 {
                    let key = format!("pair({},{})", i, j);
                    match hom_vanishing_certificate(i, j, &p, cap) {
                        Ok(c) => {
                            r.field(
                                key,
                                format!("dim={} support-disjoint={} vanishes={}", c.dim, c.support_disjoint, c.vanishes),
                            );
                            if c.vanishes {
                                vanishing += 1;
                            } else {
                                r.mark(Status::False);
                            }
                        }
                        Err(CoreError::Finding(f)) => {
                            r.field(key, format!("dim={} support-disjoint=true finding", f.dim));
                            r.note(f.to_string());
                            r.mark(Status::Finding);
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            r.field("vanishing", format!("{}/{}", vanishing, total));
            r.note(format!("sheaf hom through truncated saturation, cap {}", cap));
        }
        Task::Atiyah { a, n } => {
            let p = ctx.space_for(*n)?;
            let bound = ctx.cech_bound(&p);
            let class = atiyah_class_line_bundle(*a, &p, bound)?;
            let jet = jet_sequence_record(*a, &p, bound)?;
            r.field("class", &class);
            r.field("connection-exists", jet.split);
            r.field("jet.sequence", format!("0 -> {} -> {} -> {} -> 0", jet.sub, jet.middle, jet.quotient));
            r.field("jet.sub-cech", list(jet.sub_cech.iter()));
            r.field("jet.quotient-cech", list(jet.quotient_cech.iter()));
            r.note(format!("cech bound {} stabilized at {}; basis class O(1)", bound, bound + 1));
        }
        Task::GaugeBound(name) => {
            let (c, decls) = ctx.complex(name)?;
            let f = DeclaredComplex::new(ctx.space, c, decls)?;
            let g = gauge_field_count_bound(name, &f, cap, ctx.cech_bound(&ctx.space))?;
            r.field("brane-id", &g.brane_id);
            r.field("hom-dim", g.hom_dim);
            r.field("derived-hom-vanishes", g.hom_dim == 0);
            r.field("atiyah-status", g.atiyah_status);
            r.field("count", g.count);
            r.field("consistent", g.is_consistent());
            for t in g.trail {
                r.note(t);
            }
            if g.hom_dim > 0 {
                r.mark(Status::False);
            }
        }
    }
    Ok(())
}

pub fn run_tasks(m: &Manifest, opts: &RunOptions) -> Vec<Report> {
    let space = match ProjectiveSpace::new(m.n) {
        Ok(s) => s,
        Err(e) => {
            return m
                .tasks
                .iter()
                .map(|t| {
                    let mut r = Report::new(t.to_string());
                    r.field("error", &e);
                    r.mark(Status::Error);
                    r
                })
                .collect()
        }
    };
    let ctx = Context {
        manifest: m,
        space,
        opts,
    };
    m.tasks
        .iter()
        .map(|t| {
            let mut r = Report::new(t.to_string());
            if let Err(e) = run_task(&ctx, t, &mut r) {
                match e {
                    CoreError::Finding(f) => {
                        r.field("finding", &f);
                        r.mark(Status::Finding);
                    }
                    e => {
                        r.field("error", &e);
                        r.mark(Status::Error);
                    }
                }
            }
            r
        })
        .collect()
}
