//! Gaussian-Wahl maps of smooth plane curves, and the corank of `Φ_K` of a
//! canonical curve read off its normal module.

use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::groebner::{GradedIdeal, GroebnerConfig, QuotientRing};
use crate::linalg::{Echelon, SparseVec};
use crate::normal::NormalModule;

/// Matrix of `Φ(K, K^i)` for a plane curve of degree `d`, with `K = O(d-3)`.
#[derive(Clone, Debug)]
pub struct GaussianMatrix {
    pub degree: u32,
    pub weight: u32,
    pub source_dim: usize,
    /// `h^0(K^(i+2)) = HF_{P/(F)}((i+2)(d-3))`.
    pub target_dim: usize,
    /// Dimension of the triples-mod-conormal model the columns live in.
    pub model_dim: usize,
    pub rank: usize,
    pub corank: usize,
    /// Columns as coordinate vectors in the model.
    pub columns: Vec<SparseVec>,
    /// Every column triple `A` satisfies `x A_x + y A_y + z A_z = 0`.
    pub euler_ok: bool,
}

impl GaussianMatrix {
    pub fn is_surjective(&self) -> bool {
        self.corank == 0
    }
}

/// Triple `a p ∇q - b q ∇p` for forms of degrees `a` and `b`.
pub fn gaussian_triple(p: &Polynomial, q: &Polynomial) -> [Polynomial; 3] {
    let a = Rational::from_integer(p.total_degree().unwrap_or(0).into());
    let b = Rational::from_integer(q.total_degree().unwrap_or(0).into());
    std::array::from_fn(|v| (p * &q.derivative(v)).scale(&a) - (q * &p.derivative(v)).scale(&b))
}

/// `Φ(K, K^i)` on a smooth plane curve `F = 0` (`Λ^2` of the source for `i = 1`).
pub fn gaussian_corank_plane_curve(f: &Polynomial, weight: u32, config: &GroebnerConfig) -> Result<GaussianMatrix> {
    let ring = f.ring().clone();
    if ring.nvars() != 3 {
        return Err(Error::Precondition("plane curves need exactly three variables".into()));
    }
    if weight == 0 {
        return Err(Error::Precondition("weight must be at least 1".into()));
    }
    let d = f.homogeneous_degree()?;
    if d < 4 {
        return Err(Error::Precondition(format!("degree {} is below 4", d)));
    }
    let ideal = GradedIdeal::new(&ring, vec![f.clone()])?;
    if ideal.singular_locus_dim(1, config)? != -1 {
        return Err(Error::Singular("plane curve is singular".into()));
    }
    let quotient = QuotientRing::new(ideal.groebner(config)?);
    let a = d - 3;
    let b = weight * (d - 3);
    let k = a + b;
    let block = quotient.dim(k - 1);
    let coords = |t: &[Polynomial; 3]| -> SparseVec {
        let mut v = Vec::new();
        for (c, p) in t.iter().enumerate() {
            v.extend(quotient.coords(&quotient.nf(p), k - 1, c * block));
        }
        v
    };
    // Conormal directions ∇F · h.
    let mut conormal = Echelon::new();
    if k >= d {
        let grad: Vec<Polynomial> = (0..3).map(|v| f.derivative(v)).collect();
        for m in quotient.basis(k - d) {
            let h = Polynomial::term(&ring, m, Rational::from_integer(1.into()));
            let t: [Polynomial; 3] = std::array::from_fn(|v| &grad[v] * &h);
            conormal.insert(&coords(&t));
        }
    }
    let ps: Vec<Polynomial> = quotient
        .basis(a)
        .into_iter()
        .map(|m| Polynomial::term(&ring, m, Rational::from_integer(1.into())))
        .collect();
    let qs: Vec<Polynomial> = quotient
        .basis(b)
        .into_iter()
        .map(|m| Polynomial::term(&ring, m, Rational::from_integer(1.into())))
        .collect();
    let mut columns = Vec::new();
    let mut euler_ok = true;
    let mut span = conormal.clone();
    for (i, p) in ps.iter().enumerate() {
        let start = if weight == 1 { i + 1 } else { 0 };
        for q in &qs[start.min(qs.len())..] {
            let t = gaussian_triple(p, q);
            let euler = (0..3).fold(Polynomial::zero(&ring), |acc, v| acc + &Polynomial::var(&ring, v) * &t[v]);
            euler_ok &= euler.is_zero();
            let v = coords(&t);
            span.insert(&v);
            columns.push(v);
        }
    }
    let rank = span.rank() - conormal.rank();
    let target_dim = quotient.dim((weight + 2) * (d - 3));
    let model_dim = 3 * block - conormal.rank();
    Ok(GaussianMatrix {
        degree: d,
        weight,
        source_dim: columns.len(),
        target_dim,
        model_dim,
        rank,
        corank: target_dim.saturating_sub(rank),
        columns,
        euler_ok,
    })
}

/// Corank of `Φ_K` for a canonical curve, as `dim N(-1)/Der`.
pub fn corank_via_normal_module(ideal: &GradedIdeal, config: &GroebnerConfig) -> Result<usize> {
    let g = ideal.ring().nvars() as i64;
    let hs = ideal.groebner(config)?.hilbert_series();
    let hp = hs.polynomial();
    let expect = [Rational::from_integer((1 - g).into()), Rational::from_integer((2 * g - 2).into())];
    if hp.len() != 2 || hp[..] != expect[..] {
        return Err(Error::Precondition(format!(
            "not a canonical curve of genus {}: Hilbert polynomial coefficients {:?}",
            g,
            hp.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(NormalModule::new(ideal, config)?.ks_quotient_dim())
}
