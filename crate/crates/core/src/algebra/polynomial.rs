use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialDisplay};
use super::ring::{Ring, RingContext};
use super::Rational;
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in decreasing monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        RingContext::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), index), Rational::one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    /// Builds a polynomial from arbitrary terms, combining repeats.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts that `terms` is sorted decreasingly without zeros.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common total degree of all terms.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        let d = it.next().ok_or(Error::ZeroPolynomial)?;
        if it.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    /// Common weighted degree under the ring's variable weights.
    pub fn weighted_degree(&self) -> Result<u32> {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        let d = it.next().ok_or(Error::ZeroPolynomial)?;
        if it.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_ok()
    }

    /// Largest weighted degree among terms (0 for the zero polynomial).
    pub fn sugar(&self) -> u32 {
        let w = self.ring.weights();
        self.terms
            .iter()
            .map(|(m, _)| m.weighted_degree(w))
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(index) > 0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if RingContext::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Exact arithmetic with a ring check.
    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(match op {
            ArithOp::Add => self.merge(other, &Rational::one()),
            ArithOp::Sub => self.merge(other, &-Rational::one()),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    /// `self + c * other`.
    fn merge(&self, other: &Polynomial, c: &Rational) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), &b[j].1 * c));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1 * c;
                    if !s.is_zero() {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, k)| (m.clone(), k * c)));
        Polynomial::from_sorted(ring, out)
    }

    /// `self - c * m * other`, the elementary reduction step.
    pub fn sub_scaled(&self, c: &Rational, m: &Monomial, other: &Polynomial) -> Polynomial {
        let shifted = other.mul_term(m, &-c.clone());
        self.merge(&shifted, &Rational::one())
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.merge(&large.mul_term(m, c), &Rational::one());
        }
        acc
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, k)| (t.mul(m), k * c))
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Formal partial derivative in the variable with the given index.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(index);
            if e == 0 {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            Some((Monomial::from_exponents(exps), c * Rational::from_integer(e.into())))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn derivative_named(&self, name: &str) -> Result<Polynomial> {
        Ok(self.derivative(self.ring.var_index(name)?))
    }

    /// Substitutes `images[i]` for the i-th variable; images live in `target`.
    pub fn compose(&self, images: &[Polynomial], target: &Ring) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (tm, tc) in t.terms {
                *acc.entry(tm).or_insert_with(Rational::zero) += tc;
            }
        }
        Polynomial::from_map(target, acc)
    }

    /// Moves the polynomial to another ring, matching variables by name.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial> {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect::<Result<_>>()?;
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial::from_exponents(e), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Moves to a ring containing only some of the variables; fails if a
    /// dropped variable occurs.
    pub fn restrict_to(&self, target: &Ring) -> Result<Polynomial> {
        for (i, v) in self.ring.vars().iter().enumerate() {
            if target.var_index(v).is_err() && self.uses_var(i) {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        let n = target.nvars();
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v).ok())
            .collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += x;
                }
            }
            (Monomial::from_exponents(e), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Multiplies all coefficients so they become coprime integers with a
    /// positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut num = num_bigint::BigInt::zero();
        for (_, c) in &self.terms {
            let v = (c * Rational::from_integer(den.clone())).to_integer();
            num = num.gcd(&v);
        }
        let mut factor = Rational::new(den, num);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let md = MonomialDisplay {
                monomial: m,
                names: self.ring.vars(),
            };
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", md)?;
            } else {
                write!(f, "{}*{}", abs, md)?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.arith(rhs, $op).expect("ring context mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
