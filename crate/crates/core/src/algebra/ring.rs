use std::cmp::Ordering;
use std::sync::Arc;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Monomial orders supported by the workbench.
///
/// `Elimination { front }` compares the first `front` variables by
/// (weighted) graded reverse lexicographic order and breaks ties on the
/// remaining block the same way, so it eliminates the front block.
/// `Position { front }` compares the front block lexicographically first;
/// it is used to emulate position-over-term orders on free modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    Elimination { front: usize },
    Position { front: usize },
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    vars: Vec<String>,
    order: MonomialOrder,
    weights: Vec<u32>,
}

/// Shared handle to a ring context.
pub type Ring = Arc<RingContext>;

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let weights = vec![1; vars.len()];
        Self::with_weights(vars, order, weights)
    }

    pub fn with_weights(vars: Vec<String>, order: MonomialOrder, weights: Vec<u32>) -> Result<Ring> {
        if weights.len() != vars.len() {
            return Err(Error::InvalidRing("weight count differs from variable count".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{}` is not an identifier", v)));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{}`", v)));
            }
        }
        match order {
            MonomialOrder::Elimination { front } | MonomialOrder::Position { front } => {
                if front > vars.len() {
                    return Err(Error::InvalidRing("front block larger than variable list".into()));
                }
            }
            _ => {}
        }
        Ok(Arc::new(RingContext {
            vars,
            order,
            weights,
        }))
    }

    /// Variables `prefix0 .. prefix{n-1}` with graded reverse lexicographic order.
    pub fn indexed(prefix: &str, n: usize) -> Ring {
        Self::new((0..n).map(|i| format!("{}{}", prefix, i)), MonomialOrder::Grevlex)
            .expect("indexed names are valid")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables and weights under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Self::with_weights(self.vars.clone(), order, self.weights.clone())
    }

    pub fn same(a: &Ring, b: &Ring) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        let w = &self.weights[..];
        match self.order {
            MonomialOrder::Grevlex => grevlex(a, b, w),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination { front } => grevlex(&a[..front], &b[..front], &w[..front])
                .then_with(|| grevlex(&a[front..], &b[front..], &w[front..])),
            MonomialOrder::Position { front } => a[..front]
                .cmp(&b[..front])
                .then_with(|| grevlex(&a[front..], &b[front..], &w[front..])),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32], w: &[u32]) -> Ordering {
    let da: u64 = a.iter().zip(w).map(|(e, w)| (*e as u64) * (*w as u64)).sum();
    let db: u64 = b.iter().zip(w).map(|(e, w)| (*e as u64) * (*w as u64)).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `d` in `nvars` variables (unsorted).
pub(crate) fn exponent_vectors(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

/// All monomials of total degree `d`, largest first in the ring's order.
pub fn monomials_of_degree(ring: &RingContext, d: u32) -> Vec<Monomial> {
    let mut out = exponent_vectors(ring.nvars(), d);
    out.sort_by(|a, b| ring.cmp(b, a));
    out
}
