use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GroebnerBasis;
use crate::algebra::{Monomial, Rational};

/// Hilbert series `N(t) / (1 - t)^n` of `P/I` under the standard grading,
/// read off the leading monomials of a Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: Vec<BigInt>,
}

impl HilbertSeries {
    pub fn of(gb: &GroebnerBasis) -> Self {
        let gens = minimalize(gb.leading_monomials());
        let numerator = trim(numerator(gens, gb.ring().nvars()));
        HilbertSeries {
            nvars: gb.ring().nvars(),
            numerator,
        }
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn value(&self, m: u32) -> u64 {
        hilbert_function_from_numerator(&self.numerator, self.nvars, m)
    }

    /// `(krull_dim, h)` with `N(t) = (1 - t)^(n - krull_dim) h(t)` and `h(1) != 0`.
    fn reduced(&self) -> (usize, Vec<BigInt>) {
        let mut h = self.numerator.clone();
        let mut dim = self.nvars;
        while dim > 0 && !h.is_empty() && h.iter().sum::<BigInt>().is_zero() {
            // Synthetic division by (1 - t).
            let mut q = Vec::with_capacity(h.len() - 1);
            let mut acc = BigInt::zero();
            for c in &h[..h.len() - 1] {
                acc += c;
                q.push(acc.clone());
            }
            h = trim(q);
            dim -= 1;
        }
        (dim, h)
    }

    /// Krull dimension of `P/I`; zero for the unit ideal as well.
    pub fn krull_dimension(&self) -> usize {
        if self.numerator.is_empty() {
            return 0;
        }
        self.reduced().0
    }

    /// Dimension of the projective scheme, `-1` when it is empty.
    pub fn projective_dimension(&self) -> i64 {
        self.krull_dimension() as i64 - 1
    }

    /// Degree (multiplicity) of `P/I`.
    pub fn degree(&self) -> u64 {
        if self.numerator.is_empty() {
            return 0;
        }
        let h = self.reduced().1;
        h.iter().sum::<BigInt>().to_u64().unwrap_or(0)
    }

    /// First degree from which the Hilbert function is polynomial.
    pub fn regularity_index(&self) -> u32 {
        (self.numerator.len() as i64 - self.nvars as i64).max(0) as u32
    }

    /// Coefficients `c_0, c_1, ...` of the Hilbert polynomial `sum c_k m^k`.
    pub fn polynomial(&self) -> Vec<Rational> {
        let d = self.krull_dimension();
        if d == 0 {
            return Vec::new();
        }
        let start = self.regularity_index();
        let pts: Vec<(i64, Rational)> = (0..d as u32)
            .map(|k| {
                let m = start + k;
                (m as i64, Rational::from_integer(BigInt::from(self.value(m))))
            })
            .collect();
        interpolate(&pts)
    }
}

/// `HF(m) = sum_k N_k C(m - k + n - 1, n - 1)`.
pub fn hilbert_function_from_numerator(numerator: &[BigInt], nvars: usize, m: u32) -> u64 {
    let mut total = BigInt::zero();
    for (k, c) in numerator.iter().enumerate() {
        if k as u32 > m {
            break;
        }
        let r = (m - k as u32) as u64;
        let b = if nvars == 0 {
            if r == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        } else {
            binomial(r + nvars as u64 - 1, nvars as u64 - 1)
        };
        total += c * b;
    }
    debug_assert!(!total.is_negative());
    total.to_u64().unwrap_or(u64::MAX)
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn interpolate(points: &[(i64, Rational)]) -> Vec<Rational> {
    // Lagrange in the monomial basis.
    let n = points.len();
    let mut out = vec![Rational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = Rational::from_integer(BigInt::from(*xj));
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xj;
            }
            basis = next;
            denom *= Rational::from_integer(BigInt::from(*xi)) - xj;
        }
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * yi / &denom;
        }
    }
    out
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(d: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d as usize + 1];
    v[0] += 1;
    v[d as usize] -= 1;
    v
}

/// Numerator of the Hilbert series of `P / (gens)` for a minimal monomial
/// generating set, by pivoting on a variable power.
fn numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens
            .iter()
            .fold(vec![BigInt::one()], |acc, m| poly_mul(&acc, &one_minus_t_pow(m.degree())));
    }
    // Pivot on the variable occurring in the most mixed generators.
    let mut counts = vec![0usize; nvars];
    for m in &gens {
        if m.support().count() > 1 {
            for v in m.support() {
                counts[v] += 1;
            }
        }
    }
    let var = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
    let mut exps: Vec<u32> = gens
        .iter()
        .filter(|m| m.support().count() > 1)
        .map(|m| m.exponent(var))
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pe = vec![0; nvars];
    pe[var] = e;
    let pivot = Monomial::from_exponents(pe);

    // N(I) = N(I + (p)) + t^deg(p) N(I : p)
    let mut with = gens.clone();
    with.push(pivot.clone());
    let with = minimalize(with);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let ex: Vec<u32> = m
                .exponents()
                .iter()
                .zip(pivot.exponents())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect();
            Monomial::from_exponents(ex)
        })
        .collect();
    let colon = minimalize(colon);
    let mut a = numerator(with, nvars);
    let b = numerator(colon, nvars);
    let shift = e as usize;
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigInt::zero());
    }
    for (k, c) in b.into_iter().enumerate() {
        a[k + shift] += c;
    }
    trim(a)
}

impl GroebnerBasis {
    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of(self)
    }

    /// Dimension of the degree-`m` piece of `P/I` (standard grading).
    pub fn hilbert_function(&self, m: u32) -> u64 {
        self.hilbert_series().value(m)
    }

    /// Standard monomials of degree `d`, largest first.
    pub fn quotient_basis(&self, d: u32) -> Vec<Monomial> {
        let lms = self.leading_monomials();
        let n = self.ring().nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        standard_rec(0, d, &mut cur, &lms, &mut out);
        out.sort_by(|a, b| self.ring().cmp(b, a));
        out
    }
}

fn standard_rec(i: usize, left: u32, cur: &mut Vec<u32>, lms: &[Monomial], out: &mut Vec<Monomial>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 && lms.is_empty() {
            out.push(Monomial::one(0));
        }
        return;
    }
    // Prune on partial exponent vectors: a generator supported on the
    // variables fixed so far already divides every completion.
    let blocked = lms.iter().any(|g| {
        g.exponents()[i..].iter().all(|&e| e == 0)
            && g.exponents()[..i].iter().zip(cur.iter()).all(|(a, b)| a <= b)
    });
    if blocked {
        return;
    }
    if i + 1 == n {
        cur[i] = left;
        let m = Monomial::from_exponents(cur.clone());
        if !lms.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
        cur[i] = 0;
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        standard_rec(i + 1, left - e, cur, lms, out);
    }
    cur[i] = 0;
}
