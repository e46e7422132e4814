use std::cell::RefCell;
use std::collections::HashMap;

use super::GroebnerBasis;
use crate::algebra::{Monomial, Polynomial, Rational};
use crate::linalg::SparseVec;

/// `P/I` with memoized normal forms of monomials and standard-monomial
/// coordinates in each degree.
pub struct QuotientRing {
    gb: GroebnerBasis,
    nf_cache: RefCell<HashMap<Monomial, Polynomial>>,
    std_cache: RefCell<HashMap<u32, (Vec<Monomial>, HashMap<Monomial, usize>)>>,
}

impl QuotientRing {
    pub fn new(gb: GroebnerBasis) -> Self {
        QuotientRing {
            gb,
            nf_cache: RefCell::new(HashMap::new()),
            std_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn nf_monomial(&self, m: &Monomial) -> Polynomial {
        if let Some(p) = self.nf_cache.borrow().get(m) {
            return p.clone();
        }
        let ring = self.gb.ring();
        let divisor = self
            .gb
            .polynomials()
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|l| l.divides(m)));
        let out = match divisor {
            None => Polynomial::term(ring, m.clone(), Rational::from_integer(1.into())),
            Some(g) => {
                let u = g.leading_monomial().unwrap().quotient_of(m).unwrap();
                let mut acc: Vec<(Monomial, Rational)> = Vec::new();
                for (t, c) in &g.terms()[1..] {
                    for (s, k) in self.nf_monomial(&u.mul(t)).terms() {
                        acc.push((s.clone(), -(c * k)));
                    }
                }
                Polynomial::from_terms(ring, acc)
            }
        };
        self.nf_cache.borrow_mut().insert(m.clone(), out.clone());
        out
    }

    pub fn nf(&self, p: &Polynomial) -> Polynomial {
        let mut acc: Vec<(Monomial, Rational)> = Vec::new();
        for (m, c) in p.terms() {
            for (s, k) in self.nf_monomial(m).terms() {
                acc.push((s.clone(), c * k));
            }
        }
        Polynomial::from_terms(self.gb.ring(), acc)
    }

    /// `NF(m * p)`.
    pub fn nf_times(&self, m: &Monomial, p: &Polynomial) -> Polynomial {
        let mut acc: Vec<(Monomial, Rational)> = Vec::new();
        for (t, c) in p.terms() {
            for (s, k) in self.nf_monomial(&m.mul(t)).terms() {
                acc.push((s.clone(), c * k));
            }
        }
        Polynomial::from_terms(self.gb.ring(), acc)
    }

    fn ensure(&self, d: u32) {
        if self.std_cache.borrow().contains_key(&d) {
            return;
        }
        let basis = self.gb.quotient_basis(d);
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        self.std_cache.borrow_mut().insert(d, (basis, index));
    }

    /// Standard monomials of degree `d`, largest first.
    pub fn basis(&self, d: u32) -> Vec<Monomial> {
        self.ensure(d);
        self.std_cache.borrow()[&d].0.clone()
    }

    pub fn dim(&self, d: u32) -> usize {
        self.ensure(d);
        self.std_cache.borrow()[&d].0.len()
    }

    /// Coordinates of a reduced homogeneous form of degree `d`, shifted by `offset`.
    pub fn coords(&self, reduced: &Polynomial, d: u32, offset: usize) -> SparseVec {
        self.ensure(d);
        let cache = self.std_cache.borrow();
        let index = &cache[&d].1;
        let mut out: SparseVec = reduced
            .terms()
            .iter()
            .map(|(m, c)| (offset + index[m], c.clone()))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Inverse of [`coords`](Self::coords) on one block.
    pub fn from_coords(&self, v: &SparseVec, d: u32, offset: usize, len: usize) -> Polynomial {
        self.ensure(d);
        let cache = self.std_cache.borrow();
        let basis = &cache[&d].0;
        let terms = v
            .iter()
            .filter(|(i, _)| *i >= offset && *i < offset + len)
            .map(|(i, c)| (basis[i - offset].clone(), c.clone()));
        Polynomial::from_terms(self.gb.ring(), terms)
    }
}
