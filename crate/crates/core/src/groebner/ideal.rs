use num_traits::Zero;

use super::syzygy::ModuleSystem;
use super::{GroebnerBasis, GroebnerConfig, SyzygyModule};
use crate::algebra::{MonomialOrder, Polynomial, Rational, Ring, RingContext};
use crate::error::{Error, Result};

/// Homogeneous ideal given by generators in a common ring.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl GradedIdeal {
    /// Zero generators are dropped; the rest must be homogeneous.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !RingContext::same(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            g.homogeneous_degree()?;
            gens.push(g);
        }
        Ok(GradedIdeal {
            ring: ring.clone(),
            generators: gens,
        })
    }

    pub fn unit(ring: &Ring) -> Self {
        GradedIdeal {
            ring: ring.clone(),
            generators: vec![Polynomial::one(ring)],
        }
    }

    /// The ideal `(x_0, ..., x_n)`.
    pub fn irrelevant(ring: &Ring) -> Self {
        GradedIdeal {
            ring: ring.clone(),
            generators: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self, config: &GroebnerConfig) -> Result<GroebnerBasis> {
        GroebnerBasis::compute(&self.ring, &self.generators, config)
    }

    pub fn sum(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        if !RingContext::same(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        GradedIdeal::new(&self.ring, g)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<GradedIdeal> {
        let mut g = self.generators.clone();
        g.extend(extra);
        GradedIdeal::new(&self.ring, g)
    }

    /// A minimal homogeneous generating set, taken from the reduced basis.
    pub fn minimalized(&self, config: &GroebnerConfig) -> Result<GradedIdeal> {
        let mut cands = self.groebner(config)?.polynomials().to_vec();
        cands.sort_by_key(|p| p.total_degree());
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut gb: Option<GroebnerBasis> = None;
        for p in cands {
            if gb.as_ref().is_some_and(|g| g.contains(&p)) {
                continue;
            }
            kept.push(p);
            gb = Some(GroebnerBasis::compute(&self.ring, &kept, config)?);
        }
        GradedIdeal::new(&self.ring, kept)
    }

    /// `I : (g)`.
    pub fn quotient_by(&self, g: &Polynomial, config: &GroebnerConfig) -> Result<GradedIdeal> {
        if g.is_zero() {
            return Ok(GradedIdeal::unit(&self.ring));
        }
        if self.generators.is_empty() {
            return Ok(self.clone());
        }
        let mut row = vec![g.clone()];
        row.extend(self.generators.iter().cloned());
        let syz = SyzygyModule::compute(&row, config)?;
        let gens: Vec<Polynomial> = syz.columns().iter().map(|c| c[0].clone()).collect();
        let gb = GroebnerBasis::compute(&self.ring, &gens, config)?;
        GradedIdeal::new(&self.ring, gb.polynomials().to_vec())
    }

    /// `I : J`.
    pub fn quotient(&self, j: &GradedIdeal, config: &GroebnerConfig) -> Result<GradedIdeal> {
        let mut acc: Option<GradedIdeal> = None;
        for g in &j.generators {
            let q = self.quotient_by(g, config)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q, config)?,
            });
        }
        Ok(acc.unwrap_or_else(|| GradedIdeal::unit(&self.ring)))
    }

    /// `I ∩ J` via relations `a f = b g`.
    pub fn intersect(&self, other: &GradedIdeal, config: &GroebnerConfig) -> Result<GradedIdeal> {
        if !RingContext::same(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.generators.is_empty() || other.generators.is_empty() {
            return Ok(GradedIdeal::new(&self.ring, Vec::new())?);
        }
        // Submodule of P^2 generated by (f_i, f_i) and (g_j, 0): elements
        // with zero first coordinate have second coordinate in I ∩ J.
        let ring = &self.ring;
        let mut elements = Vec::new();
        for f in &self.generators {
            elements.push(vec![f.clone(), f.clone()]);
        }
        for g in &other.generators {
            elements.push(vec![g.clone(), Polynomial::zero(ring)]);
        }
        let basis = module_basis(ring, 2, &[0, 0], &elements, config)?;
        let gens: Vec<Polynomial> = basis
            .into_iter()
            .filter(|v| v[0].is_zero())
            .map(|v| v[1].clone())
            .collect();
        let gb = GroebnerBasis::compute(ring, &gens, config)?;
        GradedIdeal::new(ring, gb.polynomials().to_vec())
    }

    /// `I : J^∞`, iterating quotients until they stabilize.
    pub fn saturate(&self, j: &GradedIdeal, config: &GroebnerConfig) -> Result<GradedIdeal> {
        let mut cur = self.groebner(config)?;
        let mut ideal = GradedIdeal::new(&self.ring, cur.polynomials().to_vec())?;
        for _ in 0..=config.max_degree {
            let next = ideal.quotient(j, config)?;
            let next_gb = next.groebner(config)?;
            if next_gb == cur {
                return Ok(ideal);
            }
            cur = next_gb;
            ideal = GradedIdeal::new(&self.ring, cur.polynomials().to_vec())?;
        }
        Err(Error::CapExceeded {
            stage: "saturation".into(),
            detail: "quotient chain did not stabilize".into(),
        })
    }

    pub fn hilbert_function(&self, m: u32, config: &GroebnerConfig) -> Result<u64> {
        Ok(self.groebner(config)?.hilbert_function(m))
    }

    /// Dimension of the projective zero set (`-1` when empty).
    pub fn projective_dimension(&self, config: &GroebnerConfig) -> Result<i64> {
        Ok(self.groebner(config)?.hilbert_series().projective_dimension())
    }

    /// Projective dimension of the singular locus of the scheme cut out by
    /// `I`, assuming it is equidimensional of codimension `codim`.
    pub fn singular_locus_dim(&self, codim: usize, config: &GroebnerConfig) -> Result<i64> {
        let minors = jacobian_minors(&self.generators, codim)?;
        let j = self.with(minors)?;
        j.projective_dimension(config)
    }

    /// True if the zero set of `I` is exactly the point `p` (as a set).
    pub fn vanishes_only_at(&self, point: &[Rational], config: &GroebnerConfig) -> Result<bool> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::Shape("point has wrong number of coordinates".into()));
        }
        let pivot = point
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Precondition("point has all coordinates zero".into()))?;
        let gb = self.groebner(config)?;
        if gb.hilbert_series().projective_dimension() != 0 {
            return Ok(false);
        }
        // Every generator of the ideal of the point has a power in I.
        let hs = gb.hilbert_series();
        let bound = hs.regularity_index().max(1) + hs.degree() as u32 + 1;
        for i in 0..n {
            if i == pivot {
                continue;
            }
            let l = Polynomial::var(&self.ring, i).scale(&point[pivot])
                - Polynomial::var(&self.ring, pivot).scale(&point[i]);
            let mut pow = l.clone();
            let mut found = false;
            for _ in 0..=bound.min(config.max_degree) {
                if gb.contains(&pow) {
                    found = true;
                    break;
                }
                pow = &pow * &l;
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reduced basis of a submodule of `P^rank`, as coordinate vectors.
fn module_basis(
    ring: &Ring,
    rank: usize,
    weights: &[u32],
    elements: &[Vec<Polynomial>],
    config: &GroebnerConfig,
) -> Result<Vec<Vec<Polynomial>>> {
    let sys = ModuleSystem::new(ring, rank, weights, elements, config)?;
    Ok(sys.module_elements())
}

/// All `c x c` minors of the Jacobian matrix of `gens`.
pub fn jacobian_minors(gens: &[Polynomial], c: usize) -> Result<Vec<Polynomial>> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::Precondition("no generators".into()))?
        .ring()
        .clone();
    let n = ring.nvars();
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| (0..n).map(|j| g.derivative(j)).collect())
        .collect();
    if c == 0 {
        return Ok(vec![Polynomial::one(&ring)]);
    }
    let mut out = Vec::new();
    for rows in subsets(gens.len(), c) {
        for cols in subsets(n, c) {
            let m = determinant(&jac, &rows, &cols, &ring);
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first row.
pub(crate) fn determinant(m: &[Vec<Polynomial>], rows: &[usize], cols: &[usize], ring: &Ring) -> Polynomial {
    if rows.is_empty() {
        return Polynomial::one(ring);
    }
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = determinant(m, &rows[1..], &rest, ring);
        let term = entry * &minor;
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// `I ∩ k[back variables]` for arbitrary (not necessarily homogeneous)
/// generators, where the first `front` variables of the ring are eliminated.
/// The result lives in a ring over the remaining variables with their
/// weights and graded reverse lexicographic order.
pub fn eliminate(
    generators: &[Polynomial],
    front: usize,
    config: &GroebnerConfig,
) -> Result<(Ring, Vec<Polynomial>)> {
    let ring = generators
        .first()
        .ok_or_else(|| Error::Precondition("no generators".into()))?
        .ring()
        .clone();
    let elim = ring.with_order(MonomialOrder::Elimination { front })?;
    let gens: Vec<Polynomial> = generators
        .iter()
        .map(|g| g.to_ring(&elim))
        .collect::<Result<_>>()?;
    let gb = GroebnerBasis::compute(&elim, &gens, config)?;
    let back = RingContext::with_weights(
        ring.vars()[front..].to_vec(),
        MonomialOrder::Grevlex,
        ring.weights()[front..].to_vec(),
    )?;
    let kept: Vec<Polynomial> = gb
        .polynomials()
        .iter()
        .filter(|g| (0..front).all(|i| !g.uses_var(i)))
        .map(|g| g.restrict_to(&back))
        .collect::<Result<_>>()?;
    let out = GroebnerBasis::compute(&back, &kept, config)?;
    Ok((back, out.polynomials().to_vec()))
}

