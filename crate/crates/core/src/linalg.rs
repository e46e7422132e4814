//! Exact sparse linear algebra over the rationals.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Sparse vector: entries sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(dense: &[Rational]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// `a + c * b`.
pub fn axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].0 < b[j].0 {
            out.push(a[i].clone());
            i += 1;
        } else if a[i].0 > b[j].0 {
            let v = &b[j].1 * c;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let s = &a[i].1 + &b[j].1 * c;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()));
    out
}

pub fn scale(a: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

fn entry(v: &SparseVec, col: usize) -> Option<&Rational> {
    v.binary_search_by_key(&col, |(i, _)| *i)
        .ok()
        .map(|k| &v[k].1)
}

/// Incrementally built row-echelon basis of a subspace.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Remainder of `v` modulo the span; zero iff `v` lies in it.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut k = 0;
        while k < v.len() {
            let (col, c) = (v[k].0, v[k].1.clone());
            match self.pivots.get(&col) {
                Some(&r) => v = axpy(&v, &-c, &self.rows[r]),
                None => k += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns its new pivot column if it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (col, lead) = r.first().map(|(c, x)| (*c, x.clone()))?;
        let r = scale(&r, &lead.recip());
        self.pivots.insert(col, self.rows.len());
        self.rows.push(r);
        Some(col)
    }

    /// Reduced row-echelon rows, sorted by pivot column.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut rows: Vec<SparseVec> = order.iter().map(|&r| self.rows[r].clone()).collect();
        for i in (0..rows.len()).rev() {
            let pivot = rows[i][0].0;
            let pivot_row = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                if let Some(c) = entry(row, pivot).cloned() {
                    *row = axpy(row, &-c, &pivot_row);
                }
            }
        }
        rows
    }
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : row . x = 0 for all rows}` in `ncols` unknowns.
pub fn kernel(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let rref = e.rref();
    let pivot_cols: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v: SparseVec = vec![(free, Rational::one())];
        for (row, &p) in rref.iter().zip(&pivot_cols) {
            if let Some(c) = entry(row, free) {
                v.push((p, -c.clone()));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        out.push(v);
    }
    out
}

/// One solution of `rows . x = rhs`, or `None` if inconsistent.
pub fn solve(rows: &[SparseVec], rhs: &[Rational], ncols: usize) -> Option<SparseVec> {
    let mut e = Echelon::new();
    for (r, b) in rows.iter().zip(rhs) {
        let mut aug = r.clone();
        if !b.is_zero() {
            aug.push((ncols, b.clone()));
        }
        if e.insert(&aug) == Some(ncols) {
            return None;
        }
    }
    let mut x = Vec::new();
    for row in e.rref() {
        let p = row[0].0;
        if let Some(b) = entry(&row, ncols) {
            x.push((p, b.clone()));
        }
    }
    x.sort_by_key(|(i, _)| *i);
    Some(x)
}

/// Coefficients `a` with `v = sum_k a_k basis_k`, if `v` lies in the span.
pub fn express(basis: &[SparseVec], v: &SparseVec) -> Option<SparseVec> {
    let mut by_coord: HashMap<usize, SparseVec> = HashMap::new();
    for (k, b) in basis.iter().enumerate() {
        for (i, c) in b {
            by_coord.entry(*i).or_default().push((k, c.clone()));
        }
    }
    for (i, _) in v {
        by_coord.entry(*i).or_default();
    }
    let mut coords: Vec<usize> = by_coord.keys().copied().collect();
    coords.sort_unstable();
    let rows: Vec<SparseVec> = coords.iter().map(|i| by_coord[i].clone()).collect();
    let rhs: Vec<Rational> = coords
        .iter()
        .map(|i| entry(v, *i).cloned().unwrap_or_else(Rational::zero))
        .collect();
    solve(&rows, &rhs, basis.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn v(d: &[i64]) -> SparseVec {
        sparse_from_dense(&d.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    fn dot(a: &SparseVec, b: &SparseVec) -> Rational {
        let mut s = Rational::zero();
        for (i, x) in a {
            if let Some(y) = entry(b, *i) {
                s += x * y;
            }
        }
        s
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        for r in &rows {
            assert!(dot(r, &k[0]).is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let rows = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let x = solve(&rows, &[q(3), q(5)], 3).unwrap();
        assert_eq!(dot(&rows[0], &x), q(3));
        assert_eq!(dot(&rows[1], &x), q(5));
        let bad = vec![v(&[1, 1]), v(&[2, 2])];
        assert!(solve(&bad, &[q(1), q(3)], 2).is_none());
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[0, 2, 4])).is_some());
        assert!(e.insert(&v(&[0, 1, 2])).is_none());
        assert!(e.contains(&v(&[0, -3, -6])));
        assert!(!e.contains(&v(&[1, 0, 0])));
    }
}
