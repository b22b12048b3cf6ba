//! Distinguished triangles `A -> B -> C -> A[1]` in their cone models.

use brane_algebra::PolyMatrix;

use crate::complex::{cone, embed_map, embed_object, induced_cohomology_map, is_quasi_iso, shift, BoundedComplex, ComplexMap};
use crate::error::Result;
use crate::module::{check_short_exact, GradedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangleWitness {
    FromCone,
    FromSes,
    Rotated,
}

#[derive(Clone, Debug)]
pub struct Triangle {
    pub a: BoundedComplex,
    pub b: BoundedComplex,
    pub c: BoundedComplex,
    pub f: ComplexMap,
    pub g: ComplexMap,
    /// Connecting map `C -> A[1]`.
    pub h: ComplexMap,
    pub witness: TriangleWitness,
}

impl Triangle {
    /// `A --h--> B --i(h)--> Con(h) --p--> A[1]`.
    pub fn from_cone(h: &ComplexMap) -> Result<Self> {
        let con = cone(h)?;
        Ok(Triangle {
            a: h.source().clone(),
            b: h.target().clone(),
            c: con.complex,
            f: h.clone(),
            g: con.inclusion,
            h: con.projection,
            witness: TriangleWitness::FromCone,
        })
    }

    /// `g ∘ f` induces zero on cohomology at every degree of the window.
    pub fn composite_vanishes_on_cohomology(&self) -> Result<bool> {
        let gf = self.g.compose(&self.f)?;
        let (lo, hi) = gf.window();
        for i in lo..=hi {
            if !induced_cohomology_map(&gf, i)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(B, C, A[1])` with maps `g`, `h`, `-f[1]`.
pub fn rotate_triangle(t: &Triangle) -> Result<Triangle> {
    Ok(Triangle {
        a: t.b.clone(),
        b: t.c.clone(),
        c: shift(&t.a, 1),
        f: t.g.clone(),
        g: t.h.clone(),
        h: t.f.shift(1).neg(),
        witness: TriangleWitness::Rotated,
    })
}

/// Triangle of a short exact sequence, modelled on `Con(f)`, together with
/// the quasi-isomorphism `Con(f) -> C` that identifies the cone with `C`.
#[derive(Clone, Debug)]
pub struct SesTriangle {
    pub triangle: Triangle,
    pub quotient: BoundedComplex,
    pub comparison: ComplexMap,
}

pub fn triangle_from_ses(f: &GradedMap, g: &GradedMap) -> Result<SesTriangle> {
    check_short_exact(f, g)?;
    let fc = embed_map(f)?;
    let mut t = Triangle::from_cone(&fc)?;
    t.witness = TriangleWitness::FromSes;
    let quotient = embed_object(g.target());
    let nv = f.source().nvars();
    // Con(f)^0 = A^1 ⊕ B with A^1 = 0, so the comparison is g in degree 0.
    let con0 = t.c.term(0);
    let m = PolyMatrix::zero(nv, g.target().twists().to_vec(), vec![]).hcat(g.matrix())?;
    let level0 = GradedMap::new(con0, g.target().clone(), m)?;
    let comparison = ComplexMap::new(t.c.clone(), quotient.clone(), vec![(0, level0)])?;
    Ok(SesTriangle {
        triangle: t,
        quotient,
        comparison,
    })
}

/// Certifies `A[1] ≃ Con(i(h))` through `a ↦ (-h a, a, 0)`.
pub fn cone_rotation_equiv(h: &ComplexMap) -> Result<bool> {
    let a = h.source();
    let b = h.target();
    let nv = a.nvars();
    let first = cone(h)?;
    let second = cone(&first.inclusion)?;
    let a1 = shift(a, 1);
    let mut levels = Vec::new();
    for j in a1.lo()..=a1.hi() {
        let aj = a.term(j + 1);
        let minus_h = h.level(j + 1).matrix().neg();
        let id = PolyMatrix::identity(nv, aj.twists().to_vec());
        let zero = PolyMatrix::zero(nv, b.term(j).twists().to_vec(), aj.twists().to_vec());
        let m = minus_h.vcat(&id)?.vcat(&zero)?;
        levels.push((j, GradedMap::new(aj, second.complex.term(j), m)?));
    }
    let phi = ComplexMap::new(a1, second.complex, levels)?;
    is_quasi_iso(&phi)
}
