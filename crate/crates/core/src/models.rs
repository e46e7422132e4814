//! Concrete varieties used by the examples, the command line and the
//! acceptance suite.

use crate::algebra::{MonomialOrder, Polynomial, Ring, RingContext};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, GradedIdeal, GroebnerConfig};

/// `x_0^d + ... + x_n^d` in variables `x0..xn`.
pub fn fermat(n: usize, d: u32) -> Polynomial {
    let r = RingContext::indexed("x", n + 1);
    (0..=n).fold(Polynomial::zero(&r), |acc, i| acc + Polynomial::var(&r, i).pow(d))
}

/// Ideal of the image of `V(gens)` under the forms `maps` (all of one
/// degree), computed by eliminating the source variables from the graph.
/// The image lives in variables `prefix0, prefix1, ...`.
pub fn image_ideal(gens: &[Polynomial], maps: &[Polynomial], prefix: &str, config: &GroebnerConfig) -> Result<(Ring, Vec<Polynomial>)> {
    let src = maps
        .first()
        .ok_or_else(|| Error::Precondition("empty linear system".into()))?
        .ring()
        .clone();
    let e = maps[0].homogeneous_degree()?;
    for m in maps {
        if m.homogeneous_degree()? != e {
            return Err(Error::Inhomogeneous);
        }
    }
    let n = src.nvars();
    let mut vars = src.vars().to_vec();
    let targets: Vec<String> = (0..maps.len()).map(|i| format!("{}{}", prefix, i)).collect();
    vars.extend(targets.iter().cloned());
    let mut weights = vec![1; n];
    weights.extend(std::iter::repeat(e).take(maps.len()));
    let graph = RingContext::with_weights(vars, MonomialOrder::Elimination { front: n }, weights)?;
    let mut g: Vec<Polynomial> = gens.iter().map(|p| p.to_ring(&graph)).collect::<Result<_>>()?;
    for (i, m) in maps.iter().enumerate() {
        g.push(Polynomial::var(&graph, n + i) - m.to_ring(&graph)?);
    }
    let (_, eliminated) = eliminate(&g, n, config)?;
    let out_ring = RingContext::new(targets, MonomialOrder::Grevlex)?;
    let out = eliminated
        .iter()
        .map(|p| p.to_ring(&out_ring))
        .collect::<Result<Vec<_>>>()?;
    let minimal = GradedIdeal::new(&out_ring, out)?.minimalized(config)?;
    let out = minimal.generators().iter().map(|p| p.primitive()).collect();
    Ok((out_ring, out))
}

/// Fermat cubic re-embedded by the conics through `[1:-1:0]`, an elliptic
/// normal curve of degree 5 in `P^4`, in variables `y0..y4`.
pub fn elliptic_quintic(config: &GroebnerConfig) -> Result<(Ring, Vec<Polynomial>)> {
    let r = RingContext::new(["x", "y", "z"], MonomialOrder::Grevlex)?;
    let p = |s: &str| Polynomial::parse(&r, s);
    let cubic = p("x^3+y^3+z^3")?;
    let conics = ["x^2+x*y", "x*y+y^2", "x*z", "y*z", "z^2"]
        .iter()
        .map(|s| p(s))
        .collect::<Result<Vec<_>>>()?;
    image_ideal(&[cubic], &conics, "y", config)
}

/// Quadric `A` used for the bielliptic double cover.
pub const BIELLIPTIC_QUADRIC: &str = "x2^2 + 2*x3*x5 - x4*x6 + x3^2 - x2*x6 + 3*x4*x5";

/// Genus 6 bielliptic canonical curve in `P^5` (variables `x1..x6`): the
/// cone over the elliptic quintic in `x2..x6` cut by `h = x1^2 - A`.
pub fn bielliptic_canonical_curve(config: &GroebnerConfig) -> Result<GradedIdeal> {
    let (_, quintic) = elliptic_quintic(config)?;
    let ring = RingContext::new((1..=6).map(|i| format!("x{}", i)), MonomialOrder::Grevlex)?;
    let images: Vec<Polynomial> = (1..6).map(|i| Polynomial::var(&ring, i)).collect();
    let mut gens: Vec<Polynomial> = quintic.iter().map(|f| f.compose(&images, &ring)).collect();
    let a = Polynomial::parse(&ring, BIELLIPTIC_QUADRIC)?;
    gens.push(Polynomial::var(&ring, 0).pow(2) - a);
    GradedIdeal::new(&ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::groebner::{jacobian_minors, GroebnerBasis};
    use crate::normal::NormalModule;

    #[test]
    fn elliptic_quintic_is_smooth_of_degree_five() {
        let cfg = GroebnerConfig::default();
        let (r, g) = elliptic_quintic(&cfg).unwrap();
        assert_eq!(g.len(), 5);
        assert!(g.iter().all(|p| p.homogeneous_degree() == Ok(2)));
        let gb = GroebnerBasis::compute(&r, &g, &cfg).unwrap();
        let hs = gb.hilbert_series();
        assert_eq!(hs.polynomial(), vec![q(0), q(5)]);
        let i = GradedIdeal::new(&r, g.clone()).unwrap();
        let sing = i.with(jacobian_minors(&g, 3).unwrap()).unwrap();
        assert_eq!(sing.projective_dimension(&cfg).unwrap(), -1);
    }

    #[test]
    fn bielliptic_normal_module() {
        let cfg = GroebnerConfig::default();
        let c = bielliptic_canonical_curve(&cfg).unwrap();
        let gb = c.groebner(&cfg).unwrap();
        // Canonical curve of genus 6: Hilbert polynomial 10m - 5.
        assert_eq!(gb.hilbert_series().polynomial(), vec![q(-5), q(10)]);
        let nm = NormalModule::new(&c, &cfg).unwrap();
        assert_eq!(nm.ks_quotient_dim(), 10);
        let p2 = nm.piece(-2);
        assert_eq!(p2.dim(), 1);
        assert!(nm.piece(-3).is_zero());
    }
}
