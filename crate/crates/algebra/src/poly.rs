//! Multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::monomial::{Monomial, MonomialOrder};

pub type Rational = BigRational;

/// Polynomial in `x0 .. x{nvars-1}`.
///
/// Terms are kept sorted in descending canonical (grevlex) order with no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant coefficient if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Total degree of the highest term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        match order {
            MonomialOrder::GRevLex => self.terms.first().map(|(m, c)| (m, c)),
            _ => self
                .terms
                .iter()
                .max_by(|a, b| order.cmp(&a.0, &b.0))
                .map(|(m, c)| (m, c)),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::RingMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.mul(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                self.terms[i].0.cmp(&other.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by a monomial preserves the term order, so no resorting.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &small.terms {
            let part = Polynomial {
                nvars: self.nvars,
                terms: big.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
            };
            acc = acc.add(&part);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Parses the textual syntax `3/2*x0^2*x1 - x2^3`.
    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial, crate::parse::ParseError> {
        crate::parse::parse_polynomial(text, nvars)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Prints in the same syntax the parser accepts; terms in canonical order.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!(x(0).add(&x(0).neg()).is_zero());
    }

    #[test]
    fn monomial_product() {
        let p = x(0).mul(&x(1));
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0, Monomial::from_exponents(&[1, 1, 0]));
        assert!(p.terms()[0].1.is_one());
    }

    #[test]
    fn binomial_square_matches_hand_expansion() {
        let s = x(0).add(&x(1));
        let sq = s.mul(&s);
        let expected = Polynomial::from_terms(
            3,
            [
                (Monomial::from_exponents(&[2, 0, 0]), q(1, 1)),
                (Monomial::from_exponents(&[1, 1, 0]), q(2, 1)),
                (Monomial::from_exponents(&[0, 2, 0]), q(1, 1)),
            ],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(matches!(
            a.try_add(&b),
            Err(AlgebraError::RingMismatch { left: 2, right: 3 })
        ));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn display_uses_parser_syntax() {
        let p = Polynomial::from_terms(
            3,
            [
                (Monomial::from_exponents(&[2, 1, 0]), q(3, 2)),
                (Monomial::from_exponents(&[0, 0, 3]), q(-1, 1)),
            ],
        );
        assert_eq!(p.to_string(), "3/2*x0^2*x1 - x2^3");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        assert_eq!(Polynomial::constant(2, q(-5, 3)).to_string(), "-5/3");
    }

    #[test]
    fn leading_terms_depend_on_order() {
        // x0*x2 + x1^2
        let p = x(0).mul(&x(2)).add(&x(1).mul(&x(1)));
        let (g, _) = p.leading_term(MonomialOrder::GRevLex).unwrap();
        let (l, _) = p.leading_term(MonomialOrder::GLex).unwrap();
        assert_eq!(*g, Monomial::from_exponents(&[0, 2, 0]));
        assert_eq!(*l, Monomial::from_exponents(&[1, 0, 1]));
    }
}
