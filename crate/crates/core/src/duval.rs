//! One-step Du Val construction: the linear system of degree `deg E` forms
//! through `Z = E ∩ F` on `X`, the image of the induced map, and the check
//! that `E` is a hyperplane section of the image.

use crate::algebra::{monomials_of_degree, q, MonomialOrder, Polynomial, RingContext};
use crate::error::{Error, Result};
use crate::groebner::{jacobian_minors, GradedIdeal, GroebnerBasis, GroebnerConfig, QuotientRing};
use crate::linalg::Echelon;
use crate::models::image_ideal;

#[derive(Clone, Debug)]
pub struct DuvalOutput {
    /// `s_0 = E`, then `F m_j` reduced to independence mod `I_X`.
    pub system: Vec<Polynomial>,
    /// The monomials `m_j` kept in the system (parallel to `system[1..]`).
    pub multipliers: Vec<Polynomial>,
    /// Image ideal in `w0..wN`, with `w0` corresponding to `E`.
    pub image: GradedIdeal,
    pub image_dim: i64,
    pub image_degree: u64,
    /// Ideal of `E` re-embedded by the `m_j`, in `w1..wN`.
    pub reembedding: GradedIdeal,
    pub singular_dim: i64,
    /// Whether the singular locus is supported at `[1:0:...:0]`, the image of `F`.
    pub singular_at_vertex: bool,
}

/// Dimension of `X` (projective), with the zero ideal meaning `P^n`.
fn projective_dim(x: &GradedIdeal, config: &GroebnerConfig) -> Result<i64> {
    if x.generators().is_empty() {
        return Ok(x.ring().nvars() as i64 - 1);
    }
    x.projective_dimension(config)
}

/// Basis of `Γ(I_Z(deg E))` on `X`: `E` together with the multiples `F m`.
pub fn duval_linear_system(
    x: &GradedIdeal,
    e: &Polynomial,
    f: &Polynomial,
    config: &GroebnerConfig,
) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    let ring = x.ring().clone();
    let de = e.homogeneous_degree()?;
    let df = f.homogeneous_degree()?;
    if !(de > df && df >= 1) {
        return Err(Error::Precondition(format!(
            "need deg E > deg F >= 1, got {} and {}",
            de, df
        )));
    }
    let dim_x = projective_dim(x, config)?;
    let z = x.with([e.clone(), f.clone()])?;
    if z.projective_dimension(config)? != dim_x - 2 {
        return Err(Error::ImproperIntersection("E and F do not meet in codimension two on X".into()));
    }
    let xe = x.with([e.clone()])?;
    if xe.projective_dimension(config)? != dim_x - 1 {
        return Err(Error::ImproperIntersection("E contains a component of X".into()));
    }
    let codim = (ring.nvars() as i64 - 1 - (dim_x - 1)) as usize;
    let minors = jacobian_minors(xe.generators(), codim)?;
    if xe.with(minors)?.projective_dimension(config)? != -1 {
        return Err(Error::Singular("E is singular on X".into()));
    }
    let quotient = QuotientRing::new(GroebnerBasis::compute(&ring, x.generators(), config)?);
    let mut span = Echelon::new();
    let mut system = Vec::new();
    let mut multipliers = Vec::new();
    if span.insert(&quotient.coords(&quotient.nf(e), de, 0)).is_none() {
        return Err(Error::Precondition("E vanishes on X".into()));
    }
    system.push(e.clone());
    for m in monomials_of_degree(&ring, de - df) {
        let mp = Polynomial::term(&ring, m, q(1));
        let s = f * &mp;
        if span.insert(&quotient.coords(&quotient.nf(&s), de, 0)).is_some() {
            system.push(s);
            multipliers.push(mp);
        }
    }
    Ok((system, multipliers))
}

pub fn duval_extension(x: &GradedIdeal, e: &Polynomial, f: &Polynomial, config: &GroebnerConfig) -> Result<DuvalOutput> {
    let (system, multipliers) = duval_linear_system(x, e, f, config)?;
    let (wr, gens) = image_ideal(x.generators(), &system, "w", config)?;
    let image = GradedIdeal::new(&wr, gens)?;
    let gb = image.groebner(config)?;
    let hs = gb.hilbert_series();
    let image_dim = hs.projective_dimension();
    let image_degree = hs.degree();

    let xe = x.with([e.clone()])?;
    let (rr, rgens) = image_ideal(xe.generators(), &multipliers, "v", config)?;
    let names: Vec<String> = (1..system.len()).map(|i| format!("w{}", i)).collect();
    let section_ring = RingContext::new(names, MonomialOrder::Grevlex)?;
    let images: Vec<Polynomial> = (0..rr.nvars()).map(|i| Polynomial::var(&section_ring, i)).collect();
    let reembedding = GradedIdeal::new(&section_ring, rgens.iter().map(|p| p.compose(&images, &section_ring)).collect())?;

    let codim = (wr.nvars() as i64 - 1 - image_dim) as usize;
    let minors = jacobian_minors(image.generators(), codim)?;
    let sing = image.with(minors)?;
    let singular_dim = sing.projective_dimension(config)?;
    let mut vertex = vec![q(0); wr.nvars()];
    vertex[0] = q(1);
    let singular_at_vertex = singular_dim == 0 && sing.vanishes_only_at(&vertex, config)?;
    Ok(DuvalOutput {
        system,
        multipliers,
        image,
        image_dim,
        image_degree,
        reembedding,
        singular_dim,
        singular_at_vertex,
    })
}

/// The saturated section `{w0 = 0}` of the image equals the re-embedded `E`.
pub fn verify_hyperplane_section(out: &DuvalOutput, config: &GroebnerConfig) -> Result<bool> {
    let wr = out.image.ring().clone();
    let section = out.image.with([Polynomial::var(&wr, 0)])?;
    let sat = section.saturate(&GradedIdeal::irrelevant(&wr), config)?;
    let target = out.reembedding.ring().clone();
    let mut images = vec![Polynomial::zero(&target)];
    images.extend((0..target.nvars()).map(|i| Polynomial::var(&target, i)));
    let restricted: Vec<Polynomial> = sat
        .generators()
        .iter()
        .map(|p| p.compose(&images, &target))
        .filter(|p| !p.is_zero())
        .collect();
    let a = GroebnerBasis::compute(&target, &restricted, config)?;
    let b = out.reembedding.groebner(config)?;
    Ok(a.contains_all(b.polynomials()) && b.contains_all(a.polynomials()))
}
