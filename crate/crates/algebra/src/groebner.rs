//! Buchberger's algorithm for submodules of free modules over `Q[x0..xn]`.
//!
//! Ideals are the rank-one case. Elements are sparse vectors whose terms are
//! `(component, monomial, coefficient)` triples kept in descending order under
//! a [`ModuleOrder`]. Pairs are selected by the normal strategy (smallest lcm
//! first, ties broken by index) and pruned with the coprime criterion (rank one
//! only) and Buchberger's chain criterion.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Rational};

/// Term order on `(component, monomial)` pairs of a free module.
///
/// Components below `priority` dominate every other component (an
/// elimination block). Inside a block terms are compared by weighted degree
/// `deg(m) + weights[c]`, then by the monomial order, then by component with
/// lower indices larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub weights: Vec<i64>,
    pub priority: usize,
}

impl ModuleOrder {
    pub fn graded(mono: MonomialOrder, weights: Vec<i64>) -> Self {
        ModuleOrder {
            mono,
            weights,
            priority: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self, comp: usize, m: &Monomial) -> i64 {
        m.degree() as i64 + self.weights[comp]
    }

    pub fn cmp(&self, c1: usize, m1: &Monomial, c2: usize, m2: &Monomial) -> Ordering {
        let b1 = c1 < self.priority;
        let b2 = c2 < self.priority;
        b1.cmp(&b2)
            .then_with(|| self.degree(c1, m1).cmp(&self.degree(c2, m2)))
            .then_with(|| self.mono.cmp(m1, m2))
            .then_with(|| c2.cmp(&c1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coef: Rational,
}

/// Sparse free-module element, terms descending under the engine order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModVec {
    terms: Vec<Term>,
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    /// Collects the terms of `components[c]` into one vector sorted by `order`.
    pub fn from_components(components: &[Polynomial], order: &ModuleOrder) -> Self {
        Self::from_components_offset(components, 0, order)
    }

    pub fn from_components_offset(components: &[Polynomial], offset: usize, order: &ModuleOrder) -> Self {
        let mut terms: Vec<Term> = components
            .iter()
            .enumerate()
            .flat_map(|(c, p)| {
                p.terms().iter().map(move |(m, k)| Term {
                    comp: c + offset,
                    mono: m.clone(),
                    coef: k.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(b.comp, &b.mono, a.comp, &a.mono));
        ModVec { terms }
    }

    pub fn from_sorted_terms(terms: Vec<Term>) -> Self {
        ModVec { terms }
    }

    /// Splits back into one polynomial per component, `rank` components.
    pub fn to_components(&self, nvars: usize, rank: usize) -> Vec<Polynomial> {
        self.components_range(nvars, 0, rank)
    }

    /// Components `start .. start + len`, renumbered from zero.
    pub fn components_range(&self, nvars: usize, start: usize, len: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); len];
        for t in &self.terms {
            if t.comp >= start && t.comp < start + len {
                buckets[t.comp - start].push((t.mono.clone(), t.coef.clone()));
            }
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(nvars, b))
            .collect()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Largest weighted degree among the terms (the degree when homogeneous).
    pub fn degree(&self, order: &ModuleOrder) -> i64 {
        self.terms
            .iter()
            .map(|t| order.degree(t.comp, &t.mono))
            .max()
            .unwrap_or(i64::MIN)
    }

    pub fn make_monic(&mut self) {
        if let Some(lc) = self.terms.first().map(|t| t.coef.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in &mut self.terms {
                    t.coef *= &inv;
                }
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> ModVec {
        if c.is_zero() {
            return ModVec::zero();
        }
        ModVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: t.mono.clone(),
                    coef: &t.coef * c,
                })
                .collect(),
        }
    }

    /// `self - c * m * g`.
    pub fn sub_mul(&self, c: &Rational, m: &Monomial, g: &ModVec, order: &ModuleOrder) -> ModVec {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let mut gm: Option<Term> = None;
        loop {
            if gm.is_none() && j < g.terms.len() {
                let t = &g.terms[j];
                gm = Some(Term {
                    comp: t.comp,
                    mono: t.mono.mul(m),
                    coef: &t.coef * c,
                });
                j += 1;
            }
            match (self.terms.get(i), gm.as_ref()) {
                (None, None) => break,
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    let mut b = gm.take().unwrap();
                    b.coef = -b.coef;
                    out.push(b);
                }
                (Some(a), Some(b)) => match order.cmp(a.comp, &a.mono, b.comp, &b.mono) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let mut b = gm.take().unwrap();
                        b.coef = -b.coef;
                        out.push(b);
                    }
                    Ordering::Equal => {
                        let k = &a.coef - &b.coef;
                        if !k.is_zero() {
                            out.push(Term {
                                comp: a.comp,
                                mono: a.mono.clone(),
                                coef: k,
                            });
                        }
                        i += 1;
                        gm = None;
                    }
                },
            }
        }
        ModVec { terms: out }
    }

    pub fn add(&self, other: &ModVec, order: &ModuleOrder) -> ModVec {
        let one = Monomial::one(
            self.terms
                .first()
                .or(other.terms.first())
                .map(|t| t.mono.nvars())
                .unwrap_or(0),
        );
        self.sub_mul(&-Rational::one(), &one, other, order)
    }
}

/// Index from component to basis elements, for divisor lookup.
#[derive(Clone, Debug, Default)]
struct DivisorIndex {
    by_comp: HashMap<usize, Vec<usize>>,
}

impl DivisorIndex {
    fn insert(&mut self, comp: usize, idx: usize) {
        self.by_comp.entry(comp).or_default().push(idx);
    }

    fn find(&self, basis: &[ModVec], t: &Term) -> Option<usize> {
        self.by_comp.get(&t.comp)?.iter().copied().find(|&k| {
            basis[k]
                .lead()
                .map(|l| l.mono.divides(&t.mono))
                .unwrap_or(false)
        })
    }
}

/// Reduces the leading term repeatedly until it is not divisible by any
/// leading term of `basis`.
pub fn top_reduce(f: &ModVec, basis: &[ModVec], order: &ModuleOrder) -> ModVec {
    let mut idx = DivisorIndex::default();
    for (k, b) in basis.iter().enumerate() {
        if let Some(l) = b.lead() {
            idx.insert(l.comp, k);
        }
    }
    top_reduce_indexed(f.clone(), basis, &idx, order)
}

fn top_reduce_indexed(mut f: ModVec, basis: &[ModVec], idx: &DivisorIndex, order: &ModuleOrder) -> ModVec {
    while let Some(lt) = f.lead() {
        let Some(k) = idx.find(basis, lt) else { break };
        let g = &basis[k];
        let gl = g.lead().unwrap();
        let c = &lt.coef / &gl.coef;
        let m = lt.mono.div(&gl.mono).unwrap();
        f = f.sub_mul(&c, &m, g, order);
    }
    f
}

/// Full reduction: no term of the result is divisible by a basis leading term.
/// Divisors are tried in basis order, so the result is deterministic.
pub fn full_reduce(f: &ModVec, basis: &[ModVec], order: &ModuleOrder) -> ModVec {
    let mut idx = DivisorIndex::default();
    for (k, b) in basis.iter().enumerate() {
        if let Some(l) = b.lead() {
            idx.insert(l.comp, k);
        }
    }
    full_reduce_indexed(f.clone(), basis, &idx, order)
}

fn full_reduce_indexed(f: ModVec, basis: &[ModVec], idx: &DivisorIndex, order: &ModuleOrder) -> ModVec {
    let mut rem: Vec<Term> = Vec::new();
    let mut cur = f;
    loop {
        cur = top_reduce_indexed(cur, basis, idx, order);
        if cur.terms.is_empty() {
            break;
        }
        let head = cur.terms.remove(0);
        rem.push(head);
    }
    ModVec { terms: rem }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
    degree: i64,
}

/// Result of a Gröbner basis computation.
#[derive(Clone, Debug)]
pub struct GroebnerOutput {
    /// Reduced Gröbner basis, monic, sorted by ascending leading term.
    pub basis: Vec<ModVec>,
    /// Indices of inputs that were not in the span of previously processed
    /// data. For homogeneous inputs these form a minimal generating set.
    pub minimal_inputs: Vec<usize>,
}

/// Buchberger's algorithm.
///
/// Inputs are processed in increasing degree, interleaved with S-pairs so
/// that every pair of degree `d` is handled before inputs of degree `d`.
pub fn groebner(inputs: &[ModVec], order: &ModuleOrder) -> GroebnerOutput {
    let rank_one = order.rank() <= 1;
    let mut pending_inputs: Vec<usize> = (0..inputs.len()).filter(|&k| !inputs[k].is_zero()).collect();
    pending_inputs.sort_by_key(|&k| (inputs[k].degree(order), k));
    let mut pending_inputs = pending_inputs.into_iter().peekable();

    let mut basis: Vec<ModVec> = Vec::new();
    let mut index = DivisorIndex::default();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut minimal_inputs = Vec::new();

    loop {
        let best_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| order.cmp(a.comp, &a.lcm, b.comp, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, p)| (k, p.degree));
        let next_input_deg = pending_inputs.peek().map(|&k| inputs[k].degree(order));

        let (candidate, from_input) = match (best_pair, next_input_deg) {
            (None, None) => break,
            (Some((k, pd)), Some(id)) if pd <= id => (Candidate::Pair(k), false),
            (Some((k, _)), None) => (Candidate::Pair(k), false),
            _ => (Candidate::Input(pending_inputs.next().unwrap()), true),
        };

        let h = match candidate {
            Candidate::Pair(k) => {
                let p = pairs.swap_remove(k);
                pending.remove(&(p.i, p.j));
                if chain_criterion(&p, &basis, &pending) {
                    continue;
                }
                let s = s_vector(&basis[p.i], &basis[p.j], &p.lcm, order);
                top_reduce_indexed(s, &basis, &index, order)
            }
            Candidate::Input(k) => top_reduce_indexed(inputs[k].clone(), &basis, &index, order),
        };
        if h.is_zero() {
            continue;
        }
        if let (true, Candidate::Input(k)) = (from_input, candidate) {
            minimal_inputs.push(k);
        }
        let mut h = h;
        h.make_monic();
        let new = basis.len();
        let hl = h.lead().unwrap().clone();
        for (k, b) in basis.iter().enumerate() {
            let bl = b.lead().unwrap();
            if bl.comp != hl.comp {
                continue;
            }
            let lcm = bl.mono.lcm(&hl.mono);
            if rank_one && bl.mono.is_coprime(&hl.mono) {
                continue;
            }
            let degree = order.degree(hl.comp, &lcm);
            pairs.push(Pair {
                i: k,
                j: new,
                comp: hl.comp,
                lcm,
                degree,
            });
            pending.insert((k, new));
        }
        index.insert(hl.comp, new);
        basis.push(h);
    }

    minimal_inputs.sort_unstable();
    GroebnerOutput {
        basis: interreduce(basis, order),
        minimal_inputs,
    }
}

#[derive(Clone, Copy)]
enum Candidate {
    Pair(usize),
    Input(usize),
}

fn chain_criterion(p: &Pair, basis: &[ModVec], pending: &HashSet<(usize, usize)>) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    basis.iter().enumerate().any(|(k, b)| {
        if k == p.i || k == p.j {
            return false;
        }
        let l = b.lead().unwrap();
        l.comp == p.comp
            && l.mono.divides(&p.lcm)
            && !pending.contains(&key(p.i, k))
            && !pending.contains(&key(p.j, k))
    })
}

fn s_vector(f: &ModVec, g: &ModVec, lcm: &Monomial, order: &ModuleOrder) -> ModVec {
    let fl = f.lead().unwrap();
    let gl = g.lead().unwrap();
    let mf = lcm.div(&fl.mono).unwrap();
    let mg = lcm.div(&gl.mono).unwrap();
    let zero = ModVec::zero();
    let a = zero.sub_mul(&-fl.coef.recip(), &mf, f, order);
    a.sub_mul(&gl.coef.recip(), &mg, g, order)
}

fn interreduce(mut basis: Vec<ModVec>, order: &ModuleOrder) -> Vec<ModVec> {
    basis.sort_by(|a, b| {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        order.cmp(la.comp, &la.mono, lb.comp, &lb.mono)
    });
    let mut kept: Vec<ModVec> = Vec::new();
    for b in basis {
        let bl = b.lead().unwrap();
        let redundant = kept.iter().any(|k| {
            let kl = k.lead().unwrap();
            kl.comp == bl.comp && kl.mono.divides(&bl.mono)
        });
        if !redundant {
            kept.push(b);
        }
    }
    let snapshot = kept.clone();
    let mut out = Vec::with_capacity(kept.len());
    for (i, b) in kept.into_iter().enumerate() {
        let others: Vec<ModVec> = snapshot
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v.clone())
            .collect();
        let head = ModVec {
            terms: vec![b.terms[0].clone()],
        };
        let tail = ModVec {
            terms: b.terms[1..].to_vec(),
        };
        let tail = full_reduce(&tail, &others, order);
        let mut v = head.add(&tail, order);
        v.make_monic();
        out.push(v);
    }
    out
}

fn poly_order(order: MonomialOrder) -> ModuleOrder {
    ModuleOrder::graded(order, vec![0])
}

fn poly_to_vec(f: &Polynomial, order: &ModuleOrder) -> ModVec {
    ModVec::from_components(std::slice::from_ref(f), order)
}

fn vec_to_poly(v: &ModVec, nvars: usize) -> Polynomial {
    v.to_components(nvars, 1).pop().unwrap()
}

/// Remainder of `f` under the division algorithm by `basis`.
///
/// Zero basis elements are ignored; with an empty basis `f` is returned.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let ord = poly_order(order);
    let divisors: Vec<ModVec> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| poly_to_vec(g, &ord))
        .collect();
    vec_to_poly(&full_reduce(&poly_to_vec(f, &ord), &divisors, &ord), f.nvars())
}

/// Reduced Gröbner basis of the ideal generated by `generators`, monic and
/// sorted by ascending leading monomial.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let Some(nvars) = generators.first().map(|g| g.nvars()) else {
        return Vec::new();
    };
    let ord = poly_order(order);
    let inputs: Vec<ModVec> = generators.iter().map(|g| poly_to_vec(g, &ord)).collect();
    groebner(&inputs, &ord)
        .basis
        .iter()
        .map(|v| vec_to_poly(v, nvars))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, 3).unwrap()
    }

    #[test]
    fn normal_form_of_ideal_member_is_zero() {
        assert!(normal_form(&p("x0^2"), &[p("x0")], MonomialOrder::GRevLex).is_zero());
    }

    #[test]
    fn empty_divisor_set_returns_input() {
        let f = p("x0^2 + 3*x1*x2");
        assert_eq!(normal_form(&f, &[], MonomialOrder::GRevLex), f);
    }

    #[test]
    fn one_step_division() {
        let r = normal_form(&p("x0^2 + x1^2"), &[p("x0^2 - x1^2")], MonomialOrder::GRevLex);
        assert_eq!(r, p("2*x1^2"));
    }

    #[test]
    fn principal_and_monomial_ideals() {
        assert_eq!(buchberger(&[p("x0")], MonomialOrder::GRevLex), vec![p("x0")]);
        let gb = buchberger(&[p("x0"), p("x1")], MonomialOrder::GRevLex);
        assert_eq!(gb, vec![p("x1"), p("x0")]);
    }

    #[test]
    fn output_is_reduced_and_monic() {
        let gb = buchberger(&[p("2*x0^2 - 2*x1*x2"), p("x0*x1 - x2^2")], MonomialOrder::GRevLex);
        for g in &gb {
            assert!(g.leading_term(MonomialOrder::GRevLex).unwrap().1.is_one());
            let others: Vec<Polynomial> = gb.iter().filter(|h| *h != g).cloned().collect();
            let (lm, _) = g.leading_term(MonomialOrder::GRevLex).unwrap();
            for t in g.terms() {
                for o in &others {
                    let (ol, _) = o.leading_term(MonomialOrder::GRevLex).unwrap();
                    assert!(!ol.divides(&t.0), "{} reducible by {} (lead {})", g, o, lm);
                }
            }
        }
    }

    #[test]
    fn glex_basis_contains_expected_element() {
        let gb = buchberger(&[p("x0^2 - x1*x2"), p("x0*x1 - x2^2")], MonomialOrder::GLex);
        let target = p("x1^2*x2 - x0*x2^2");
        assert!(normal_form(&target, &gb, MonomialOrder::GLex).is_zero());
    }

    #[test]
    fn module_order_blocks_dominate() {
        let ord = ModuleOrder {
            mono: MonomialOrder::GRevLex,
            weights: vec![0, 5],
            priority: 1,
        };
        let m0 = Monomial::one(2);
        let m1 = Monomial::from_exponents(&[3, 0]);
        assert_eq!(ord.cmp(0, &m0, 1, &m1), Ordering::Greater);
    }
}
