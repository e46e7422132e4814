//! Extensions `W ⊂ P^{n+k}` of a projective variety `V ⊂ P^n` given by
//! lifted equations. Kodaira-Spencer layers and the comparison of two
//! extensions live in the submodules.

mod ks;
mod matching;
mod moves;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::algebra::{Monomial, MonomialOrder, Polynomial, Rational, Ring, RingContext};
use crate::error::{Error, Result};
use crate::groebner::{GradedIdeal, GroebnerBasis, GroebnerConfig};

pub use ks::{ks_higher, ks_map, ks_report, KsLayer, KsReport, KsVerdict};
pub use matching::{bielliptic_normalize, match_extensions, BiellipticForm, MatchMode, MatchOutcome, MatchReport};
pub use moves::Move;

#[cfg(test)]
mod tests;

/// Lifted equations `F_j = f_j + sum_i t_i g_{j,i} + sum_{|I|>=2} t^I g_j^I`
/// over a base ideal `I = (f_1, ..., f_κ)`.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    base: GradedIdeal,
    ring: Ring,
    lifted: Vec<Polynomial>,
    extra: Vec<Polynomial>,
}

/// Outcome of [`check_extension`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCheck {
    pub passed: bool,
    pub section_matches: bool,
    /// First degree where the Hilbert recursion fails.
    pub first_failure: Option<u32>,
    pub bound: u32,
    /// `HF_W(m)` for `m = 0..=bound`.
    pub actual: Vec<u64>,
    /// `sum_j C(k-1+m-j, k-1) HF_V(j)` for `m = 0..=bound`.
    pub expected: Vec<u64>,
}

fn t_names(x: &Ring, k: usize) -> Vec<String> {
    let mut prefix = String::from("t");
    while x.vars().iter().any(|v| v.starts_with(&prefix)) {
        prefix.push('t');
    }
    (1..=k).map(|i| format!("{}{}", prefix, i)).collect()
}

impl ExtensionData {
    /// `lifted[j]` must restrict to `base.generators()[j]` at `t = 0`.
    pub fn new(base: &GradedIdeal, t_vars: Vec<String>, lifted: Vec<Polynomial>) -> Result<Self> {
        let ring = Self::make_ring(base.ring(), t_vars)?;
        if lifted.len() != base.generators().len() {
            return Err(Error::Shape(format!(
                "{} lifted equations for {} generators",
                lifted.len(),
                base.generators().len()
            )));
        }
        let e = ExtensionData {
            base: base.clone(),
            ring,
            lifted,
            extra: Vec::new(),
        };
        let e = e.rehome()?;
        for (j, (f, big)) in e.base.generators().iter().zip(&e.lifted).enumerate() {
            if &e.restrict(big) != f {
                return Err(Error::Precondition(format!(
                    "lifted equation {} does not restrict to its generator at t = 0",
                    j + 1
                )));
            }
        }
        Ok(e)
    }

    /// Moves lifted equations into `self.ring` by variable name.
    fn rehome(mut self) -> Result<Self> {
        self.lifted = self
            .lifted
            .iter()
            .map(|p| p.to_ring(&self.ring))
            .collect::<Result<_>>()?;
        for p in &self.lifted {
            p.homogeneous_degree()?;
        }
        Ok(self)
    }

    /// Base ideal read off by setting `t = 0`; equations restricting to
    /// zero are kept as extra generators of `I(W)`.
    pub fn from_lifts(x_ring: &Ring, t_vars: Vec<String>, equations: Vec<Polynomial>) -> Result<Self> {
        let ring = Self::make_ring(x_ring, t_vars)?;
        let mut lifted = Vec::new();
        let mut extra = Vec::new();
        let mut base = Vec::new();
        for p in equations {
            let p = p.to_ring(&ring)?;
            if p.is_zero() {
                continue;
            }
            p.homogeneous_degree()?;
            let nx = x_ring.nvars();
            let f = restrict_terms(&p, nx, x_ring);
            if f.is_zero() {
                extra.push(p);
            } else {
                base.push(f);
                lifted.push(p);
            }
        }
        Ok(ExtensionData {
            base: GradedIdeal::new(x_ring, base)?,
            ring,
            lifted,
            extra,
        })
    }

    fn make_ring(x: &Ring, t_vars: Vec<String>) -> Result<Ring> {
        let mut vars = x.vars().to_vec();
        for t in &t_vars {
            if vars.contains(t) {
                return Err(Error::InvalidRing(format!("t-variable `{}` clashes with an x-variable", t)));
            }
        }
        vars.extend(t_vars);
        RingContext::new(vars, MonomialOrder::Grevlex)
    }

    /// Trivial 0-step extension.
    pub fn trivial(base: &GradedIdeal) -> Self {
        ExtensionData {
            base: base.clone(),
            ring: base.ring().clone(),
            lifted: base.generators().to_vec(),
            extra: Vec::new(),
        }
    }

    pub fn base(&self) -> &GradedIdeal {
        &self.base
    }

    pub fn x_ring(&self) -> &Ring {
        self.base.ring()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nx(&self) -> usize {
        self.base.ring().nvars()
    }

    pub fn steps(&self) -> usize {
        self.ring.nvars() - self.nx()
    }

    pub fn t_vars(&self) -> &[String] {
        &self.ring.vars()[self.nx()..]
    }

    pub fn lifted(&self) -> &[Polynomial] {
        &self.lifted
    }

    pub fn extra(&self) -> &[Polynomial] {
        &self.extra
    }

    /// All equations of `W`.
    pub fn equations(&self) -> Vec<Polynomial> {
        let mut out = self.lifted.clone();
        out.extend(self.extra.iter().cloned());
        out
    }

    pub(crate) fn with_lifted(&self, lifted: Vec<Polynomial>) -> Self {
        ExtensionData {
            base: self.base.clone(),
            ring: self.ring.clone(),
            lifted,
            extra: self.extra.clone(),
        }
    }

    /// Value at `t = 0`, as a polynomial over the base ring.
    pub fn restrict(&self, p: &Polynomial) -> Polynomial {
        restrict_terms(p, self.nx(), self.x_ring())
    }

    /// Coefficient of `t^I` in `p`, over the base ring.
    pub fn t_coefficient(&self, p: &Polynomial, index: &[u32]) -> Polynomial {
        let nx = self.nx();
        let terms = p.terms().iter().filter(|(m, _)| &m.exponents()[nx..] == index).map(|(m, c)| {
            (Monomial::from_exponents(m.exponents()[..nx].to_vec()), c.clone())
        });
        Polynomial::from_terms(self.x_ring(), terms)
    }

    /// Nonzero `t`-coefficients of `p`, keyed by exponent vector.
    pub fn t_expansion(&self, p: &Polynomial) -> BTreeMap<Vec<u32>, Polynomial> {
        let nx = self.nx();
        let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            groups
                .entry(m.exponents()[nx..].to_vec())
                .or_default()
                .push((Monomial::from_exponents(m.exponents()[..nx].to_vec()), c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, t)| (k, Polynomial::from_terms(self.x_ring(), t)))
            .collect()
    }

    /// Base-ring polynomial viewed in the extension ring.
    pub fn embed(&self, p: &Polynomial) -> Polynomial {
        let k = self.steps();
        let terms = p.terms().iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.extend(std::iter::repeat(0).take(k));
            (Monomial::from_exponents(e), c.clone())
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// `t^I` in the extension ring.
    pub fn t_monomial(&self, index: &[u32]) -> Monomial {
        let mut e = vec![0; self.nx()];
        e.extend_from_slice(index);
        Monomial::from_exponents(e)
    }

    pub fn max_degree(&self) -> u32 {
        self.equations()
            .iter()
            .filter_map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn default_bound(&self) -> u32 {
        self.max_degree() + self.steps() as u32 + 2
    }
}

fn restrict_terms(p: &Polynomial, nx: usize, x_ring: &Ring) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exponents()[nx..].iter().all(|&e| e == 0))
        .map(|(m, c)| (Monomial::from_exponents(m.exponents()[..nx].to_vec()), c.clone()));
    Polynomial::from_terms(x_ring, terms)
}

impl fmt::Display for ExtensionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {} | {}", self.x_ring().vars().join(" "), self.t_vars().join(" "))?;
        for p in self.equations() {
            writeln!(f, "{}", p)?;
        }
        Ok(())
    }
}

/// Checks `t = 0` recovers `I` and the Hilbert recursion certifying that
/// `t_1, ..., t_k` is a regular sequence on `P[t]/I(W)`, up to `bound`.
pub fn check_extension(e: &ExtensionData, bound: Option<u32>, config: &GroebnerConfig) -> Result<ExtensionCheck> {
    let bound = bound.unwrap_or_else(|| e.default_bound());
    let base_gb = e.base.groebner(config)?;
    let restricted: Vec<Polynomial> = e.equations().iter().map(|p| e.restrict(p)).collect();
    let section_gb = GroebnerBasis::compute(e.x_ring(), &restricted, config)?;
    let section_matches = section_gb == base_gb;
    let w_gb = GroebnerBasis::compute(&e.ring, &e.equations(), config)?;
    let hw = w_gb.hilbert_series();
    let hv = base_gb.hilbert_series();
    let k = e.steps() as u64;
    let mut actual = Vec::new();
    let mut expected = Vec::new();
    let mut first_failure = None;
    for m in 0..=bound {
        let a = hw.value(m);
        let x: u64 = if k == 0 {
            hv.value(m)
        } else {
            (0..=m)
                .map(|j| binomial(k - 1 + (m - j) as u64, k - 1) * hv.value(j))
                .sum()
        };
        if a != x && first_failure.is_none() {
            first_failure = Some(m);
        }
        actual.push(a);
        expected.push(x);
    }
    Ok(ExtensionCheck {
        passed: section_matches && first_failure.is_none(),
        section_matches,
        first_failure,
        bound,
        actual,
        expected,
    })
}

/// `F + sum_i t_i^(d - d_i) M_i` over the standard monomials `M_i` of the
/// Jacobian ring in degrees `d_i < d`.
pub fn universal_hypersurface_extension(f: &Polynomial, config: &GroebnerConfig) -> Result<ExtensionData> {
    let ring = f.ring().clone();
    let d = f.homogeneous_degree()?;
    if d < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    if ring.nvars() < 2 {
        return Err(Error::Precondition("need at least two variables".into()));
    }
    let base = GradedIdeal::new(&ring, vec![f.clone()])?;
    if base.singular_locus_dim(1, config)? != -1 {
        return Err(Error::Singular("hypersurface is singular".into()));
    }
    let partials: Vec<Polynomial> = (0..ring.nvars()).map(|i| f.derivative(i)).collect();
    let jac = GroebnerBasis::compute(&ring, &partials, config)?;
    let mut monomials = Vec::new();
    for e in 0..d {
        monomials.extend(jac.quotient_basis(e));
    }
    let k = monomials.len();
    let names = t_names(&ring, k);
    let ext_ring = ExtensionData::make_ring(&ring, names.clone())?;
    let nx = ring.nvars();
    let mut big = f.to_ring(&ext_ring)?;
    for (i, m) in monomials.iter().enumerate() {
        let mut e = m.exponents().to_vec();
        e.extend(std::iter::repeat(0).take(k));
        e[nx + i] = d - m.degree();
        big = big + Polynomial::term(&ext_ring, Monomial::from_exponents(e), Rational::one());
    }
    ExtensionData::new(&base, names, vec![big])
}

/// Adds `j` unused `t`-variables.
pub fn cone(e: &ExtensionData, j: usize) -> Result<ExtensionData> {
    let k = e.steps();
    let mut names = e.t_vars().to_vec();
    let fresh = t_names(e.x_ring(), k + j + names.len());
    for n in fresh {
        if names.len() == k + j {
            break;
        }
        if !names.contains(&n) {
            names.push(n);
        }
    }
    let ring = ExtensionData::make_ring(e.x_ring(), names)?;
    let lifted = e.lifted.iter().map(|p| p.to_ring(&ring)).collect::<Result<_>>()?;
    let extra = e.extra.iter().map(|p| p.to_ring(&ring)).collect::<Result<_>>()?;
    Ok(ExtensionData {
        base: e.base.clone(),
        ring,
        lifted,
        extra,
    })
}

/// Cone over the base ideal with `j` steps.
pub fn cone_over(base: &GradedIdeal, j: usize) -> Result<ExtensionData> {
    cone(&ExtensionData::trivial(base), j)
}

/// Substitutes `t = A t'` for a `k x k'` matrix `A` of full column rank.
pub fn sub_extension(e: &ExtensionData, matrix: &[Vec<Rational>]) -> Result<ExtensionData> {
    let k = e.steps();
    if matrix.len() != k {
        return Err(Error::Shape(format!("matrix has {} rows, expected {}", matrix.len(), k)));
    }
    let kp = matrix.first().map(|r| r.len()).unwrap_or(0);
    if matrix.iter().any(|r| r.len() != kp) {
        return Err(Error::Shape("ragged matrix".into()));
    }
    let cols: Vec<crate::linalg::SparseVec> = (0..kp)
        .map(|c| {
            crate::linalg::sparse_from_dense(&matrix.iter().map(|r| r[c].clone()).collect::<Vec<_>>())
        })
        .collect();
    if crate::linalg::rank(&cols) != kp {
        return Err(Error::Precondition("substitution matrix is not injective".into()));
    }
    let names = if kp == k { e.t_vars().to_vec() } else { t_names(e.x_ring(), kp) };
    substitute_t(e, matrix, names)
}

/// `t = A t'` without the injectivity check.
pub(crate) fn substitute_t(e: &ExtensionData, matrix: &[Vec<Rational>], names: Vec<String>) -> Result<ExtensionData> {
    let ring = ExtensionData::make_ring(e.x_ring(), names)?;
    let nx = e.nx();
    let mut images: Vec<Polynomial> = (0..nx).map(|i| Polynomial::var(&ring, i)).collect();
    for row in matrix {
        let mut img = Polynomial::zero(&ring);
        for (c, a) in row.iter().enumerate() {
            if !a.is_zero() {
                img = img + Polynomial::var(&ring, nx + c).scale(a);
            }
        }
        images.push(img);
    }
    let lifted = e.lifted.iter().map(|p| p.compose(&images, &ring)).collect();
    let extra = e
        .extra
        .iter()
        .map(|p| p.compose(&images, &ring))
        .filter(|p: &Polynomial| !p.is_zero())
        .collect();
    Ok(ExtensionData {
        base: e.base.clone(),
        ring,
        lifted,
        extra,
    })
}
