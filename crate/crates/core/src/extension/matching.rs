use num_traits::{One, Zero};

use super::ks::{multi_indices, unit_index, Normalizer};
use super::{ExtensionData, Move};
use crate::algebra::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerConfig, IdealMembership};
use crate::linalg::SparseVec;
use crate::normal::NormalModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    /// Requires `H^0(N(-2)) = 0`, where the comparison is a proof.
    Strict,
    /// Runs the same layer-by-layer comparison without that hypothesis.
    Heuristic,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatchOutcome {
    Equivalent,
    /// First layer where the classes differ; `left`/`right` are the classes
    /// of the two coefficients (`None` when a coefficient is not itself a
    /// homomorphism).
    Distinct {
        order: u32,
        index: Vec<u32>,
        left: Option<SparseVec>,
        right: Option<SparseVec>,
    },
}

#[derive(Clone, Debug)]
pub struct MatchReport {
    pub outcome: MatchOutcome,
    pub mode: MatchMode,
    /// True when the twist `-2` piece is nonzero, so the verdict is not
    /// backed by the uniqueness argument.
    pub heuristic: bool,
    pub twist_minus_two_dim: usize,
    /// Moves applied to the second extension.
    pub moves: Vec<Move>,
    pub transcript: Vec<String>,
}

impl MatchReport {
    pub fn is_equivalent(&self) -> bool {
        self.outcome == MatchOutcome::Equivalent
    }
}

/// Rewrites `e` over the variables of `like` (positionally).
fn in_ring_of(e: &ExtensionData, like: &ExtensionData) -> ExtensionData {
    let ring = like.ring();
    let images: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
    let lifted = e.lifted().iter().map(|p| p.compose(&images, ring)).collect();
    let mut out = like.with_lifted(lifted);
    out.extra = e.extra().iter().map(|p| p.compose(&images, ring)).collect();
    out
}

/// Decides whether two extensions of the same base are equivalent under the
/// moves of the uniqueness argument: `t`-linear shifts of `x`, generator
/// recombinations `F ↦ F - t^I w F`.
pub fn match_extensions(
    e1: &ExtensionData,
    e2: &ExtensionData,
    mode: MatchMode,
    config: &GroebnerConfig,
) -> Result<MatchReport> {
    if e1.base().generators() != e2.base().generators() {
        return Err(Error::Precondition("extensions have different base generators".into()));
    }
    if e1.steps() != e2.steps() {
        return Err(Error::Precondition("extensions have different step counts".into()));
    }
    if !e1.extra().is_empty() || !e2.extra().is_empty() {
        return Err(Error::Precondition("extensions carry equations vanishing at t = 0".into()));
    }
    let nm = NormalModule::new(e1.base(), config)?;
    let (vanishes, dim2) = nm.twist_minus_two_vanishes();
    if !vanishes && mode == MatchMode::Strict {
        return Err(Error::Refused(format!(
            "H^0(N(-2)) has dimension {}; extensions are not determined by KS (use heuristic mode)",
            dim2
        )));
    }
    let target = nm.ks_target();
    let membership = IdealMembership::new(e1.base().generators(), config)?;
    let mut ctx = Normalizer {
        nm: &nm,
        target: &target,
        membership: &membership,
        current: in_ring_of(e2, e1),
        moves: Vec::new(),
        transcript: Vec::new(),
    };
    let left_ctx = Normalizer {
        nm: &nm,
        target: &target,
        membership: &membership,
        current: e1.clone(),
        moves: Vec::new(),
        transcript: Vec::new(),
    };
    let report = |outcome, ctx: Normalizer| MatchReport {
        outcome,
        mode,
        heuristic: !vanishes,
        twist_minus_two_dim: dim2,
        moves: ctx.moves,
        transcript: ctx.transcript,
    };
    let k = e1.steps();
    for i in 0..k {
        let goal = left_ctx.g_vector(&unit_index(k, i));
        if !ctx.absorb_linear(i, &goal)? {
            let outcome = MatchOutcome::Distinct {
                order: 1,
                index: unit_index(k, i),
                left: Some(left_ctx.linear_class(i)?),
                right: Some(ctx.linear_class(i)?),
            };
            return Ok(report(outcome, ctx));
        }
    }
    let all: Vec<usize> = (0..k).collect();
    let max_order = e1.max_degree().max(e2.max_degree());
    for order in 2..=max_order {
        let piece = nm.piece(-(order as i64));
        for index in multi_indices(k, &all, order) {
            let g1 = left_ctx.g_vector(&index);
            let g2 = ctx.g_vector(&index);
            let diff: Vec<Polynomial> = g2.iter().zip(&g1).map(|(a, b)| a - b).collect();
            if diff.iter().all(|p| p.is_zero()) {
                continue;
            }
            let reduced_zero = diff.iter().all(|p| nm.quotient().nf(p).is_zero());
            if reduced_zero {
                ctx.recombine_to_zero(&index, &diff)?;
                continue;
            }
            if !nm.is_homomorphism(&diff) && mode == MatchMode::Strict {
                return Err(Error::Internal(format!(
                    "order {} difference is not a homomorphism; inputs are not both extensions",
                    order
                )));
            }
            let outcome = MatchOutcome::Distinct {
                order,
                index: index.clone(),
                left: left_ctx.higher_class(&index, order, &piece),
                right: ctx.higher_class(&index, order, &piece),
            };
            return Ok(report(outcome, ctx));
        }
    }
    if ctx.current.lifted() != e1.lifted() {
        return Err(Error::Internal("normalization finished with unequal equations".into()));
    }
    Ok(report(MatchOutcome::Equivalent, ctx))
}

/// Result of normalizing a one-step extension of a bielliptic canonical
/// curve given by `f_1, ..., f_N, h + t α + t^2 β`.
#[derive(Clone, Debug)]
pub struct BiellipticForm {
    pub is_cone: bool,
    /// Index of the variable `x_1` with `h = x_1^2 - A`.
    pub vertex: usize,
    pub alpha: Rational,
    pub beta: Rational,
    /// `β - α^2/4` after the shift.
    pub reduced_beta: Rational,
    pub normalized: ExtensionData,
    pub moves: Vec<Move>,
    pub transcript: Vec<String>,
}

pub fn bielliptic_normalize(e: &ExtensionData) -> Result<BiellipticForm> {
    let shape = |msg: &str| Error::Shape(format!("not a bielliptic extension: {}", msg));
    if e.steps() != 1 {
        return Err(shape("expected a one-step extension"));
    }
    let f = e.base().generators();
    let n = e.nx();
    // The vertex variable occurs in exactly one generator h = v^2 - A.
    let mut found = None;
    for v in 0..n {
        let users: Vec<usize> = (0..f.len()).filter(|&j| f[j].uses_var(v)).collect();
        if users.len() != 1 {
            continue;
        }
        let h = &f[users[0]];
        let mut sq = vec![0; n];
        sq[v] = 2;
        let sq = Monomial::from_exponents(sq);
        let rest = h - &Polynomial::term(h.ring(), sq.clone(), h.coefficient(&sq));
        if h.coefficient(&sq).is_one() && !rest.uses_var(v) && h.homogeneous_degree() == Ok(2) {
            found = Some((v, users[0]));
            break;
        }
    }
    let (v, hj) = found.ok_or_else(|| shape("no generator of the form x^2 - A(other variables)"))?;
    for (j, big) in e.lifted().iter().enumerate() {
        if j != hj && big != &e.embed(&f[j]) {
            return Err(shape("the cone equations are not lifted trivially"));
        }
    }
    let exp = e.t_expansion(&e.lifted()[hj]);
    let alpha_poly = exp.get(&vec![1]).cloned().unwrap_or_else(|| Polynomial::zero(e.x_ring()));
    let beta_poly = exp.get(&vec![2]).cloned().unwrap_or_else(|| Polynomial::zero(e.x_ring()));
    if exp.keys().any(|key| key[0] > 2) {
        return Err(shape("lift of h has t-degree above 2"));
    }
    let xv = Polynomial::var(e.x_ring(), v);
    let a = alpha_poly.coefficient(xv.leading_monomial().unwrap());
    if alpha_poly != xv.scale(&a) {
        return Err(Error::Precondition(format!(
            "α = {} has components outside {}; they carry a nonzero KS_1 class and no shift of {} removes them",
            alpha_poly,
            e.x_ring().vars()[v],
            e.x_ring().vars()[v]
        )));
    }
    let beta = if beta_poly.is_zero() { Rational::zero() } else { beta_poly.coefficient(&Monomial::one(n)) };
    let mut moves = Vec::new();
    let mut transcript = Vec::new();
    let mut cur = e.clone();
    if !a.is_zero() {
        let mut shift = vec![Rational::zero(); n];
        shift[v] = &a / Rational::from_integer(2.into());
        let m = Move::Shift { direction: 0, shift };
        transcript.push(m.describe(&cur));
        cur = m.apply(&cur)?;
        moves.push(m);
    }
    let reduced_beta = &beta - &a * &a / Rational::from_integer(4.into());
    let is_cone = reduced_beta.is_zero();
    if !is_cone && !reduced_beta.is_one() {
        // Over the algebraic closure t ↦ t/sqrt(β) brings β to 1.
        let m = Move::Rescale { direction: 0, square: reduced_beta.clone() };
        transcript.push(m.describe(&cur));
        let tsq = e.t_monomial(&[2]);
        let mut lifted = cur.lifted().to_vec();
        lifted[hj] = e.embed(&f[hj]) + Polynomial::term(e.ring(), tsq, Rational::one());
        cur = cur.with_lifted(lifted);
        moves.push(m);
    }
    Ok(BiellipticForm {
        is_cone,
        vertex: v,
        alpha: a,
        beta,
        reduced_beta,
        normalized: cur,
        moves,
        transcript,
    })
}
