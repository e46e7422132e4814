use num_traits::Zero;

use super::{substitute_t, ExtensionData};
use crate::algebra::{Polynomial, Rational};
use crate::error::Result;

/// One normalization move applied to lifted equations.
#[derive(Clone, Debug, PartialEq)]
pub enum Move {
    /// `t_i = sum_l A_il t'_l`.
    ChangeT { matrix: Vec<Vec<Rational>> },
    /// `x_γ ↦ x_γ - a_γ t_l`.
    Shift { direction: usize, shift: Vec<Rational> },
    /// `F_j ↦ F_j - t^I sum_l w_jl F_l`.
    Recombine { index: Vec<u32>, matrix: Vec<Vec<Polynomial>> },
    /// `t_l ↦ t_l / sqrt(c)`, recorded symbolically.
    Rescale { direction: usize, square: Rational },
}

impl Move {
    pub fn apply(&self, e: &ExtensionData) -> Result<ExtensionData> {
        match self {
            Move::ChangeT { matrix } => substitute_t(e, matrix, e.t_vars().to_vec()),
            Move::Shift { direction, shift } => Ok(shift_x(e, *direction, shift)),
            Move::Recombine { index, matrix } => Ok(recombine(e, index, matrix)),
            Move::Rescale { .. } => Ok(e.clone()),
        }
    }

    pub fn describe(&self, e: &ExtensionData) -> String {
        let x = e.x_ring().vars();
        let t = e.t_vars();
        match self {
            Move::ChangeT { matrix } => {
                let rows: Vec<String> = matrix
                    .iter()
                    .enumerate()
                    .map(|(i, row)| format!("{} = {}", t[i], linear_combination(row, t)))
                    .collect();
                format!("change t-basis: {}", rows.join(", "))
            }
            Move::Shift { direction, shift } => {
                let parts: Vec<String> = shift
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(g, a)| format!("{} -> {} - ({})*{}", x[g], x[g], a, t[*direction]))
                    .collect();
                format!("shift {}", parts.join(", "))
            }
            Move::Recombine { index, matrix } => {
                let mut parts = Vec::new();
                for (j, row) in matrix.iter().enumerate() {
                    for (l, w) in row.iter().enumerate() {
                        if !w.is_zero() {
                            parts.push(format!("F{} -= {}*({})*F{}", j + 1, t_power(index, t), w, l + 1));
                        }
                    }
                }
                format!("recombine {}", parts.join(", "))
            }
            Move::Rescale { direction, square } => {
                format!("rescale {} -> {}/sqrt({})", t[*direction], t[*direction], square)
            }
        }
    }
}

fn linear_combination(row: &[Rational], names: &[String]) -> String {
    let parts: Vec<String> = row
        .iter()
        .zip(names)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, n)| format!("({})*{}'", a, n))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub(crate) fn t_power(index: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = index
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{}^{}", n, e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn shift_x(e: &ExtensionData, direction: usize, shift: &[Rational]) -> ExtensionData {
    let ring = e.ring();
    let nx = e.nx();
    let t = Polynomial::var(ring, nx + direction);
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| {
            let v = Polynomial::var(ring, i);
            if i < nx && !shift[i].is_zero() {
                v - t.scale(&shift[i])
            } else {
                v
            }
        })
        .collect();
    let lifted = e.lifted().iter().map(|p| p.compose(&images, ring)).collect();
    let mut out = e.with_lifted(lifted);
    out.extra = e.extra().iter().map(|p| p.compose(&images, ring)).collect();
    out
}

fn recombine(e: &ExtensionData, index: &[u32], matrix: &[Vec<Polynomial>]) -> ExtensionData {
    let tm = e.t_monomial(index);
    let one = Rational::from_integer(1.into());
    let lifted: Vec<Polynomial> = e
        .lifted()
        .iter()
        .zip(matrix)
        .map(|(fj, row)| {
            let mut acc = fj.clone();
            for (w, fl) in row.iter().zip(e.lifted()) {
                if !w.is_zero() {
                    acc = acc - (&e.embed(w) * fl).mul_term(&tm, &one);
                }
            }
            acc
        })
        .collect();
    e.with_lifted(lifted)
}
