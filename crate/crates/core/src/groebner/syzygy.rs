use super::{buchberger, normal_form, GroebnerConfig};
use crate::algebra::{Monomial, MonomialOrder, Polynomial, Ring, RingContext};
use crate::error::{Error, Result};

/// Submodule of a free module `P^rank` generated by `elements`, encoded in an
/// extended ring: position variables `E_1..E_rank` followed by tag variables
/// `T_1..T_s` (one per generator) in a lex front block. A Gröbner basis of
/// `sum_i v_i E_i + T_j` records every element together with its cofactors.
pub(crate) struct ModuleSystem {
    base: Ring,
    ext: Ring,
    rank: usize,
    count: usize,
    basis: Vec<Polynomial>,
}

fn fresh_prefix(ring: &Ring) -> String {
    let mut p = String::from("e_");
    while ring.vars().iter().any(|v| v.starts_with(&p)) {
        p.insert(0, 'e');
    }
    p
}

impl ModuleSystem {
    /// `position_weights[i]` is the degree shift of the i-th basis vector.
    pub(crate) fn new(
        base: &Ring,
        rank: usize,
        position_weights: &[u32],
        elements: &[Vec<Polynomial>],
        config: &GroebnerConfig,
    ) -> Result<Self> {
        let prefix = fresh_prefix(base);
        let count = elements.len();
        let mut vars: Vec<String> = (0..rank).map(|i| format!("{}p{}", prefix, i)).collect();
        vars.extend((0..count).map(|j| format!("{}t{}", prefix, j)));
        vars.extend(base.vars().iter().cloned());
        let mut weights: Vec<u32> = position_weights.to_vec();
        for el in elements {
            weights.push(element_weight(el, position_weights).unwrap_or(0));
        }
        weights.extend(base.weights().iter().copied());
        let ext = RingContext::with_weights(
            vars,
            MonomialOrder::Position { front: rank + count },
            weights,
        )?;
        let mut gens = Vec::with_capacity(count);
        for (j, el) in elements.iter().enumerate() {
            if el.len() != rank {
                return Err(Error::Shape(format!(
                    "module element has {} entries, expected {}",
                    el.len(),
                    rank
                )));
            }
            let mut v = Polynomial::var(&ext, rank + j);
            for (i, p) in el.iter().enumerate() {
                v = v + lift(p, &ext, rank + count, Some(i));
            }
            gens.push(v);
        }
        let basis = buchberger(&ext, &gens, config, Some(rank + count))?;
        Ok(ModuleSystem {
            base: base.clone(),
            ext,
            rank,
            count,
            basis,
        })
    }

    fn split(&self, p: &Polynomial) -> (Vec<Polynomial>, Vec<Polynomial>) {
        let front = self.rank + self.count;
        let mut parts: Vec<Vec<(Monomial, crate::algebra::Rational)>> = vec![Vec::new(); front];
        for (m, c) in p.terms() {
            let slot = (0..front).find(|&i| m.exponent(i) > 0).expect("module element is linear");
            let rest = Monomial::from_exponents(m.exponents()[front..].to_vec());
            parts[slot].push((rest, c.clone()));
        }
        let mut polys: Vec<Polynomial> = parts
            .into_iter()
            .map(|t| Polynomial::from_terms(&self.base, t))
            .collect();
        let tags = polys.split_off(self.rank);
        (polys, tags)
    }

    /// Reduces `v` modulo the submodule: returns the remainder and cofactors
    /// `b` with `v = remainder + sum_j b_j elements_j`.
    pub(crate) fn reduce(&self, v: &[Polynomial]) -> (Vec<Polynomial>, Vec<Polynomial>) {
        let front = self.rank + self.count;
        let mut x = Polynomial::zero(&self.ext);
        for (i, p) in v.iter().enumerate() {
            x = x + lift(p, &self.ext, front, Some(i));
        }
        let reducers: Vec<&Polynomial> = self.basis.iter().collect();
        let r = normal_form(&x, &reducers);
        let (rem, tags) = self.split(&r);
        (rem, tags.into_iter().map(|t| -t).collect())
    }

    /// Gröbner basis of the submodule itself, as coordinate vectors.
    pub(crate) fn module_elements(&self) -> Vec<Vec<Polynomial>> {
        self.basis
            .iter()
            .filter(|g| {
                let lm = g.leading_monomial().unwrap();
                (0..self.rank).any(|i| lm.exponent(i) > 0)
            })
            .map(|g| self.split(g).0)
            .collect()
    }

    /// Generators of the relations among the elements.
    pub(crate) fn syzygies(&self) -> Vec<Vec<Polynomial>> {
        let mut out = Vec::new();
        for g in &self.basis {
            let lm = g.leading_monomial().unwrap();
            if (0..self.rank).any(|i| lm.exponent(i) > 0) {
                continue;
            }
            let (_, tags) = self.split(g);
            out.push(tags);
        }
        out
    }
}

fn element_weight(el: &[Polynomial], position_weights: &[u32]) -> Option<u32> {
    el.iter()
        .zip(position_weights)
        .find(|(p, _)| !p.is_zero())
        .map(|(p, w)| p.sugar() + w)
}

/// Embeds `p` into the extended ring, multiplied by front variable `slot`.
fn lift(p: &Polynomial, ext: &Ring, front: usize, slot: Option<usize>) -> Polynomial {
    let terms = p.terms().iter().map(|(m, c)| {
        let mut ex = vec![0u32; front];
        if let Some(s) = slot {
            ex[s] = 1;
        }
        ex.extend_from_slice(m.exponents());
        (Monomial::from_exponents(ex), c.clone())
    });
    Polynomial::from_terms(ext, terms)
}

/// Generators of the module of relations `sum_i r_i f_i = 0`.
#[derive(Clone, Debug)]
pub struct SyzygyModule {
    generators: Vec<Polynomial>,
    columns: Vec<Vec<Polynomial>>,
}

impl SyzygyModule {
    pub fn compute(generators: &[Polynomial], config: &GroebnerConfig) -> Result<Self> {
        let ring = generators
            .first()
            .ok_or_else(|| Error::Precondition("empty generator row".into()))?
            .ring()
            .clone();
        for g in generators {
            if !RingContext::same(g.ring(), &ring) {
                return Err(Error::RingMismatch);
            }
        }
        let elements: Vec<Vec<Polynomial>> = generators.iter().map(|g| vec![g.clone()]).collect();
        let sys = ModuleSystem::new(&ring, 1, &[0], &elements, config)?;
        let mut columns = sys.syzygies();
        columns.sort_by(|a, b| column_key(a).cmp(&column_key(b)));
        Ok(SyzygyModule {
            generators: generators.to_vec(),
            columns,
        })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// `sum_i f_i r_i`.
    pub fn apply(generators: &[Polynomial], column: &[Polynomial]) -> Polynomial {
        let ring = generators[0].ring();
        generators
            .iter()
            .zip(column)
            .fold(Polynomial::zero(ring), |acc, (f, r)| acc + f * r)
    }
}

fn column_key(col: &[Polynomial]) -> (u32, String) {
    let deg = col.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
    (deg, col.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
}

/// Solves `r' = R b` for a polynomial matrix `b`, one column of `b` per
/// column of `r'`.
pub fn lift_through_syzygies(
    syz: &SyzygyModule,
    candidates: &[Vec<Polynomial>],
    config: &GroebnerConfig,
) -> Result<Vec<Vec<Polynomial>>> {
    let f = syz.generators();
    let k = f.len();
    for c in candidates {
        if c.len() != k {
            return Err(Error::Shape(format!("relation has {} entries, expected {}", c.len(), k)));
        }
        if !SyzygyModule::apply(f, c).is_zero() {
            return Err(Error::Precondition("candidate is not a relation among the generators".into()));
        }
    }
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let ring = f[0].ring();
    if syz.is_empty() {
        if candidates.iter().all(|c| c.iter().all(|p| p.is_zero())) {
            return Ok(vec![Vec::new(); candidates.len()]);
        }
        return Err(Error::Internal("nonzero relation but empty syzygy module".into()));
    }
    let weights: Vec<u32> = f.iter().map(|p| p.sugar()).collect();
    let sys = ModuleSystem::new(ring, k, &weights, syz.columns(), config)?;
    let mut out = Vec::with_capacity(candidates.len());
    for c in candidates {
        let (rem, b) = sys.reduce(c);
        if rem.iter().any(|p| !p.is_zero()) {
            return Err(Error::Internal("relation outside the syzygy module".into()));
        }
        out.push(b);
    }
    Ok(out)
}

/// Ideal membership with cofactors, reusing one module basis.
pub struct IdealMembership {
    system: ModuleSystem,
}

impl IdealMembership {
    pub fn new(generators: &[Polynomial], config: &GroebnerConfig) -> Result<Self> {
        let ring = generators
            .first()
            .ok_or_else(|| Error::Precondition("empty generator row".into()))?
            .ring()
            .clone();
        let elements: Vec<Vec<Polynomial>> = generators.iter().map(|g| vec![g.clone()]).collect();
        Ok(IdealMembership {
            system: ModuleSystem::new(&ring, 1, &[0], &elements, config)?,
        })
    }

    /// Cofactors `a` with `p = sum a_i f_i`, or `None` when `p` is not in the ideal.
    pub fn cofactors(&self, p: &Polynomial) -> Option<Vec<Polynomial>> {
        let (rem, b) = self.system.reduce(std::slice::from_ref(p));
        rem[0].is_zero().then_some(b)
    }
}

/// One-shot form of [`IdealMembership::cofactors`].
pub fn membership_cofactors(
    generators: &[Polynomial],
    p: &Polynomial,
    config: &GroebnerConfig,
) -> Result<Option<Vec<Polynomial>>> {
    Ok(IdealMembership::new(generators, config)?.cofactors(p))
}
