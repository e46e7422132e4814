use std::cmp::Ordering;

use num_traits::Zero;

use super::GroebnerConfig;
use crate::algebra::{Monomial, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

/// Reduced Gröbner basis of an ideal for the order of its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Runs Buchberger's algorithm on the given generators.
    pub fn compute(ring: &Ring, generators: &[Polynomial], config: &GroebnerConfig) -> Result<Self> {
        for g in generators {
            if !crate::algebra::RingContext::same(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let basis = buchberger(ring, generators, config, None)?;
        Ok(GroebnerBasis {
            ring: ring.clone(),
            basis,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True if the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    /// Unique remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let reducers: Vec<&Polynomial> = self.basis.iter().collect();
        normal_form(p, &reducers)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// True if every element of `other` reduces to zero here.
    pub fn contains_all(&self, other: &[Polynomial]) -> bool {
        other.iter().all(|p| self.contains(p))
    }

    /// True if no leading monomial divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self
            .basis
            .iter()
            .any(|g| g.leading_monomial().is_some_and(|l| l.divides(m)))
    }
}

/// Full reduction of `p` by `reducers` (any order of reducers is allowed;
/// the first whose leading monomial divides the current term is used).
pub(crate) fn normal_form(p: &Polynomial, reducers: &[&Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let mut rest = p.clone();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    loop {
        let (m, c) = match rest.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => break,
        };
        let divisor = reducers
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|l| l.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero reducer");
                let quot = lm.quotient_of(&m).expect("divides");
                let coef = &c / lc;
                rest = rest.sub_scaled(&coef, &quot, g);
            }
            None => {
                let mut terms = rest.into_terms();
                let first = terms.remove(0);
                rem.push(first);
                rest = Polynomial::from_sorted(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l).unwrap(), &fc.recip());
    let b = g.mul_term(&gm.quotient_of(&l).unwrap(), &gc.recip());
    a - b
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<'a> {
    ring: &'a Ring,
    polys: Vec<Polynomial>,
    sugars: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    module_front: Option<usize>,
}

fn position(m: &Monomial, front: usize) -> Option<usize> {
    (0..front).find(|&i| m.exponent(i) > 0)
}

impl State<'_> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    fn compatible(&self, a: usize, b: usize) -> bool {
        match self.module_front {
            None => true,
            Some(front) => position(self.lm(a), front) == position(self.lm(b), front),
        }
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let w = self.ring.weights();
        let si = self.sugars[i] + lcm.weighted_degree(w) - self.lm(i).weighted_degree(w);
        let sj = self.sugars[j] + lcm.weighted_degree(w) - self.lm(j).weighted_degree(w);
        si.max(sj)
    }

    /// Gebauer-Möller installation of a new basis element.
    fn update(&mut self, h: usize) {
        let hm = self.lm(h).clone();
        let mut cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .copied()
            .filter(|&g| self.compatible(h, g))
            .map(|g| {
                let gm = self.lm(g);
                (g, hm.lcm(gm), hm.is_coprime(gm))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, l, coprime)) = cands.pop() {
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            }
        }
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && hm.lcm(self.polys[p.i].leading_monomial().unwrap()) != p.lcm
                && hm.lcm(self.polys[p.j].leading_monomial().unwrap()) != p.lcm)
        });
        for (g, l, coprime) in kept {
            if !coprime {
                let sugar = self.pair_sugar(g, h, &l);
                self.pairs.push(Pair {
                    i: g,
                    j: h,
                    lcm: l,
                    sugar,
                });
            }
        }
        let polys = &self.polys;
        self.active
            .retain(|&g| !hm.divides(polys[g].leading_monomial().unwrap()));
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| ring.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn reduce(&self, p: &Polynomial) -> Polynomial {
        let reducers: Vec<&Polynomial> = self.active.iter().map(|&i| &self.polys[i]).collect();
        normal_form(p, &reducers)
    }

    fn add(&mut self, h: Polynomial, sugar: u32, config: &GroebnerConfig, stage: &str) -> Result<()> {
        let h = h.monic();
        let idx = self.polys.len();
        let sugar = sugar.max(h.sugar());
        self.polys.push(h);
        self.sugars.push(sugar);
        self.update(idx);
        if self.active.len() > config.max_basis_size {
            return Err(Error::CapExceeded {
                stage: stage.to_string(),
                detail: format!("basis size exceeds {}", config.max_basis_size),
            });
        }
        Ok(())
    }
}

/// Reduced Gröbner basis. With `module_front = Some(k)` the first `k`
/// variables mark module positions and pairs across positions are skipped.
pub(crate) fn buchberger(
    ring: &Ring,
    generators: &[Polynomial],
    config: &GroebnerConfig,
    module_front: Option<usize>,
) -> Result<Vec<Polynomial>> {
    let stage = "groebner basis";
    let mut input: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| {
        a.sugar()
            .cmp(&b.sugar())
            .then_with(|| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
    });
    let mut st = State {
        ring,
        polys: Vec::new(),
        sugars: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        module_front,
    };
    let mut pending = input.into_iter().peekable();
    loop {
        // Interleave input generators with pairs of no larger sugar.
        let next_input_sugar = pending.peek().map(|p| p.sugar());
        let pair_sugar = st
            .pairs
            .iter()
            .map(|p| p.sugar)
            .min();
        let take_input = match (next_input_sugar, pair_sugar) {
            (Some(a), Some(b)) => a <= b,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_input {
            let p = pending.next().unwrap();
            let s = p.sugar();
            if s > config.max_degree {
                return Err(Error::CapExceeded {
                    stage: stage.to_string(),
                    detail: format!("degree {} exceeds cap {}", s, config.max_degree),
                });
            }
            let h = st.reduce(&p);
            if !h.is_zero() {
                st.add(h, s, config, stage)?;
            }
            continue;
        }
        let pair = st.next_pair().unwrap();
        if pair.sugar > config.max_degree {
            return Err(Error::CapExceeded {
                stage: stage.to_string(),
                detail: format!("degree {} exceeds cap {}", pair.sugar, config.max_degree),
            });
        }
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j]);
        let h = st.reduce(&s);
        if !h.is_zero() {
            st.add(h, pair.sugar, config, stage)?;
        }
    }
    // Interreduce the minimal basis.
    let mut minimal: Vec<Polynomial> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
    minimal.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p)
            .collect();
        let (lm, lc) = minimal[k].leading_term().unwrap();
        let head = Polynomial::term(ring, lm.clone(), lc.clone());
        let tail = normal_form(&(&minimal[k] - &head), &others);
        reduced.push((head + tail).monic());
    }
    reduced.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    debug_assert!(reduced.iter().all(|g| !g.leading_coefficient().unwrap().is_zero()));
    Ok(reduced)
}
