//! Gröbner bases, Hilbert functions, syzygies and ideal operations.

mod basis;
mod hilbert;
mod ideal;
mod quotient;
mod syzygy;

pub use basis::{s_polynomial, GroebnerBasis};
pub use hilbert::{hilbert_function_from_numerator, HilbertSeries};
pub use ideal::{eliminate, jacobian_minors, GradedIdeal};
pub use quotient::QuotientRing;
pub use syzygy::{lift_through_syzygies, membership_cofactors, IdealMembership, SyzygyModule};

pub(crate) use basis::{buchberger, normal_form};

/// Resource caps for Buchberger's algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub max_degree: u32,
    pub max_basis_size: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_degree: 64,
            max_basis_size: 20_000,
        }
    }
}
