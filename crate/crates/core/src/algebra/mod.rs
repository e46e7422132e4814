//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::Monomial;
pub use polynomial::{ArithOp, Polynomial};
pub use ring::{monomials_of_degree, MonomialOrder, Ring, RingContext};


/// Arbitrary-precision rational coefficients.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `num/den`.
pub fn qq(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Euler operator applied to `p`: the sum of `x_i * dp/dx_i`.
pub fn euler_operator(p: &Polynomial) -> Polynomial {
    let ring = p.ring();
    (0..ring.nvars()).fold(Polynomial::zero(ring), |acc, i| {
        acc + Polynomial::var(ring, i) * p.derivative(i)
    })
}
