use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{ExtensionData, Move};
use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerConfig, IdealMembership};
use crate::linalg::{self, Echelon, SparseVec};
use crate::normal::{class_in_piece, KsTarget, NormalModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsVerdict {
    /// `KS_1` is an isomorphism onto `N(-1)/Der`.
    Isomorphism,
    /// Every layer vanishes.
    Zero,
    Mixed,
}

/// Classes of `g^I` for `|I| = order`, `I` supported on the surviving
/// kernel directions (indices refer to the normalized `t`-basis).
#[derive(Clone, Debug)]
pub struct KsLayer {
    pub order: u32,
    pub piece_dim: usize,
    pub classes: Vec<(Vec<u32>, SparseVec)>,
    pub rank: usize,
    /// Kernel directions entering this layer.
    pub domain: Vec<usize>,
    /// Directions all of whose indices at this order have zero class.
    pub kernel: Vec<usize>,
}

impl KsLayer {
    pub fn is_surjective(&self) -> bool {
        self.rank == self.piece_dim
    }
}

#[derive(Clone, Debug)]
pub struct KsReport {
    pub steps: usize,
    pub quotient_dim: usize,
    /// Order-one class of each original `t_i` in `N(-1)/Der`.
    pub classes: Vec<SparseVec>,
    pub rank: usize,
    pub layers: Vec<KsLayer>,
    pub verdict: KsVerdict,
    pub normalized: ExtensionData,
    pub moves: Vec<Move>,
    pub transcript: Vec<String>,
}

impl KsReport {
    pub fn corank(&self) -> usize {
        self.quotient_dim - self.rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.steps - self.rank
    }

    pub fn layer(&self, order: u32) -> Option<&KsLayer> {
        self.layers.iter().find(|l| l.order == order)
    }
}

/// Order-one Kodaira-Spencer map.
pub fn ks_map(e: &ExtensionData, config: &GroebnerConfig) -> Result<KsReport> {
    ks_report(e, Some(1), config)
}

/// The order-`m` layer, after normalizing all lower layers.
pub fn ks_higher(e: &ExtensionData, order: u32, config: &GroebnerConfig) -> Result<Option<KsLayer>> {
    if order < 2 {
        return Err(Error::Precondition("higher layers start at order 2".into()));
    }
    let r = ks_report(e, Some(order), config)?;
    Ok(r.layer(order).cloned())
}

/// Layer-by-layer Kodaira-Spencer data up to `max_order` (default: the
/// largest generator degree, beyond which all layers vanish).
pub fn ks_report(e: &ExtensionData, max_order: Option<u32>, config: &GroebnerConfig) -> Result<KsReport> {
    let nm = NormalModule::new(e.base(), config)?;
    let target = nm.ks_target();
    let membership = IdealMembership::new(e.base().generators(), config)?;
    let mut ctx = Normalizer {
        nm: &nm,
        target: &target,
        membership: &membership,
        current: e.clone(),
        moves: Vec::new(),
        transcript: Vec::new(),
    };
    let k = e.steps();
    let classes: Vec<SparseVec> = (0..k)
        .map(|i| ctx.linear_class(i))
        .collect::<Result<_>>()?;
    let rank = linalg::rank(&classes);
    let max_order = max_order.unwrap_or_else(|| nm.degrees().iter().copied().max().unwrap_or(1));
    let mut layers = Vec::new();
    if max_order >= 2 && rank < k {
        let mut kernel = ctx.align_kernel(&classes)?;
        for order in 2..=max_order {
            if kernel.is_empty() {
                break;
            }
            let layer = ctx.layer(order, &kernel)?;
            kernel = layer.kernel.clone();
            layers.push(layer);
        }
    }
    let verdict = if rank == k && rank == target.dim() {
        KsVerdict::Isomorphism
    } else if rank == 0 && layers.iter().all(|l| l.rank == 0) {
        KsVerdict::Zero
    } else {
        KsVerdict::Mixed
    };
    Ok(KsReport {
        steps: k,
        quotient_dim: target.dim(),
        classes,
        rank,
        layers,
        verdict,
        normalized: ctx.current,
        moves: ctx.moves,
        transcript: ctx.transcript,
    })
}

pub(crate) struct Normalizer<'a> {
    pub nm: &'a NormalModule,
    pub target: &'a KsTarget,
    pub membership: &'a IdealMembership,
    pub current: ExtensionData,
    pub moves: Vec<Move>,
    pub transcript: Vec<String>,
}

pub(crate) fn unit_index(k: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

impl Normalizer<'_> {
    pub fn apply(&mut self, m: Move) -> Result<()> {
        self.transcript.push(m.describe(&self.current));
        self.current = m.apply(&self.current)?;
        self.moves.push(m);
        Ok(())
    }

    /// `(coefficient of t^I in F_j)_j` over the base ring.
    pub fn g_vector(&self, index: &[u32]) -> Vec<Polynomial> {
        self.current
            .lifted()
            .iter()
            .map(|f| self.current.t_coefficient(f, index))
            .collect()
    }

    pub fn linear_class(&self, i: usize) -> Result<SparseVec> {
        let g = self.g_vector(&unit_index(self.current.steps(), i));
        let v = self.nm.coords(&self.target.piece.layout, &g);
        self.target
            .class(&v)
            .ok_or_else(|| Error::Internal(format!("t-linear part of direction {} is not a homomorphism", i + 1)))
    }

    /// Makes the `t`-linear part along `direction` equal to `goal` when the
    /// difference has zero class: a shift of `x` by multiples of `t` and a
    /// recombination of the equations.
    pub fn absorb_linear(&mut self, direction: usize, goal: &[Polynomial]) -> Result<bool> {
        let k = self.current.steps();
        let index = unit_index(k, direction);
        let g = self.g_vector(&index);
        let diff: Vec<Polynomial> = g.iter().zip(goal).map(|(a, b)| a - b).collect();
        if diff.iter().all(|p| p.is_zero()) {
            return Ok(true);
        }
        let v = self.nm.coords(&self.target.piece.layout, &diff);
        let Some(a) = self.target.derivation_preimage(&v) else {
            return Ok(false);
        };
        let n = self.nm.ideal().ring().nvars();
        let mut shift = vec![Rational::zero(); n];
        for (i, c) in a {
            shift[i] = c;
        }
        let f = self.nm.generators();
        let residual: Vec<Polynomial> = diff
            .iter()
            .zip(f)
            .map(|(d, fj)| {
                let mut r = d.clone();
                for (gamma, c) in shift.iter().enumerate() {
                    if !c.is_zero() {
                        r = r - fj.derivative(gamma).scale(c);
                    }
                }
                r
            })
            .collect();
        if shift.iter().any(|c| !c.is_zero()) {
            self.apply(Move::Shift { direction, shift })?;
        }
        self.recombine_to_zero(&index, &residual)?;
        let after = self.g_vector(&index);
        if after.iter().zip(goal).any(|(a, b)| a != b) {
            return Err(Error::Internal("linear normalization did not converge".into()));
        }
        Ok(true)
    }

    /// Removes `t^I w F` when every entry of `residual` lies in `I`.
    pub fn recombine_to_zero(&mut self, index: &[u32], residual: &[Polynomial]) -> Result<()> {
        if residual.iter().all(|p| p.is_zero()) {
            return Ok(());
        }
        let mut matrix = Vec::with_capacity(residual.len());
        for r in residual {
            let b = self
                .membership
                .cofactors(r)
                .ok_or_else(|| Error::Internal("residual not in the ideal".into()))?;
            matrix.push(b);
        }
        self.apply(Move::Recombine {
            index: index.to_vec(),
            matrix,
        })
    }

    /// Re-bases `t` so the kernel of `KS_1` is spanned by the last
    /// coordinates, then makes their linear parts vanish exactly.
    fn align_kernel(&mut self, classes: &[SparseVec]) -> Result<Vec<usize>> {
        let k = classes.len();
        let q = self.target.dim();
        let rows: Vec<SparseVec> = (0..q)
            .map(|c| {
                classes
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| v.iter().find(|(j, _)| *j == c).map(|(_, x)| (i, x.clone())))
                    .collect()
            })
            .collect();
        let ker = linalg::kernel(&rows, k);
        let mut e = Echelon::new();
        for v in &ker {
            e.insert(v);
        }
        let mut columns: Vec<SparseVec> = Vec::new();
        for i in 0..k {
            let unit = vec![(i, Rational::one())];
            if e.insert(&unit).is_some() {
                columns.push(unit);
            }
        }
        let first_kernel = columns.len();
        columns.extend(ker.iter().cloned());
        let identity = columns
            .iter()
            .enumerate()
            .all(|(c, v)| v.len() == 1 && v[0].0 == c && v[0].1.is_one());
        if !identity {
            let mut matrix = vec![vec![Rational::zero(); k]; k];
            for (c, v) in columns.iter().enumerate() {
                for (i, x) in v {
                    matrix[*i][c] = x.clone();
                }
            }
            self.apply(Move::ChangeT { matrix })?;
        }
        let n = self.nm.generators().len();
        let ring = self.nm.ideal().ring().clone();
        let zero = vec![Polynomial::zero(&ring); n];
        for l in first_kernel..k {
            if !self.absorb_linear(l, &zero)? {
                return Err(Error::Internal("kernel direction has nonzero class".into()));
            }
        }
        Ok((first_kernel..k).collect())
    }

    /// Class of `g^I` in `N(-order)`; `None` when `g^I` is not a homomorphism.
    pub fn higher_class(&self, index: &[u32], order: u32, piece: &crate::normal::NormalPiece) -> Option<SparseVec> {
        let g = self.g_vector(index);
        if g.iter().all(|p| p.is_zero()) {
            return Some(Vec::new());
        }
        let degrees = self.nm.degrees();
        if g
            .iter()
            .zip(degrees)
            .any(|(p, &d)| !p.is_zero() && (d as i64) < order as i64)
        {
            return None;
        }
        let v = self.nm.coords(&piece.layout, &g);
        class_in_piece(piece, &v)
    }

    fn layer(&mut self, order: u32, domain: &[usize]) -> Result<KsLayer> {
        let piece = self.nm.piece(-(order as i64));
        let k = self.current.steps();
        let mut classes = Vec::new();
        for index in multi_indices(k, domain, order) {
            let class = self.higher_class(&index, order, &piece).ok_or_else(|| {
                Error::Internal(format!("order {} coefficient is not a homomorphism", order))
            })?;
            classes.push((index, class));
        }
        let rank = linalg::rank(&classes.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>());
        let mut busy: BTreeSet<usize> = BTreeSet::new();
        for (index, class) in &classes {
            if class.is_empty() {
                let g = self.g_vector(index);
                self.recombine_to_zero(index, &g)?;
            } else {
                busy.extend(index.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i));
            }
        }
        let kernel = domain.iter().copied().filter(|l| !busy.contains(l)).collect();
        Ok(KsLayer {
            order,
            piece_dim: piece.dim(),
            classes,
            rank,
            domain: domain.to_vec(),
            kernel,
        })
    }
}

/// Exponent vectors of total degree `order` supported on `support`.
pub(crate) fn multi_indices(k: usize, support: &[usize], order: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, support: &[usize], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == support.len() {
            cur[support[pos]] = left;
            out.push(cur.clone());
            cur[support[pos]] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[support[pos]] = e;
            rec(pos + 1, left - e, support, cur, out);
        }
        cur[support[pos]] = 0;
    }
    let mut out = Vec::new();
    if support.is_empty() {
        return out;
    }
    rec(0, order, support, &mut vec![0; k], &mut out);
    out
}
