//! Graded pieces of the normal module `Hom(I/I^2, P/I)` and the derivation
//! image inside the twist `-1` piece.

use crate::algebra::Polynomial;
use crate::error::Result;
use crate::groebner::{GradedIdeal, GroebnerConfig, QuotientRing, SyzygyModule};
use crate::linalg::{self, Echelon, SparseVec};


/// Coordinates for κ-vectors `(g_1, ..., g_κ)` with `g_j` a reduced form of
/// degree `deg f_j + twist`: one block of standard monomials per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub twist: i64,
    /// `(offset, degree, len)` per generator; `degree` is `None` when negative.
    pub blocks: Vec<(usize, Option<u32>, usize)>,
    pub total: usize,
}

/// Twist `e` piece of the normal module.
#[derive(Clone, Debug)]
pub struct NormalPiece {
    pub twist: i64,
    pub layout: Layout,
    /// Basis vectors as reduced κ-vectors.
    pub basis: Vec<Vec<Polynomial>>,
    /// The same vectors in layout coordinates.
    pub coords: Vec<SparseVec>,
}

impl NormalPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Image of the constant-coefficient derivations in the twist `-1` piece.
#[derive(Clone, Debug)]
pub struct DerivationImage {
    /// `(∂f_1/∂x_γ, ..., ∂f_κ/∂x_γ)` mod `I`, one per variable.
    pub vectors: Vec<Vec<Polynomial>>,
    pub coords: Vec<SparseVec>,
    pub rank: usize,
}

/// `N(-1)/Der` with a fixed complement basis, for class coordinates.
#[derive(Clone, Debug)]
pub struct KsTarget {
    pub piece: NormalPiece,
    pub derivations: DerivationImage,
    /// Basis vectors of `N(-1)` spanning a complement of `Der`.
    pub complement: Vec<SparseVec>,
    derivation_basis: Vec<SparseVec>,
}

impl KsTarget {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Class of a twist `-1` vector (layout coordinates); `None` if it is
    /// not a homomorphism.
    pub fn class(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut basis = self.complement.clone();
        basis.extend(self.derivation_basis.iter().cloned());
        let a = linalg::express(&basis, v)?;
        Some(a.into_iter().filter(|(i, _)| *i < self.complement.len()).collect())
    }

    /// Constants `a_γ` with `v - sum a_γ ∂f/∂x_γ ≡ 0`, if the class is zero.
    pub fn derivation_preimage(&self, v: &SparseVec) -> Option<SparseVec> {
        linalg::express(&self.derivations.coords, v)
    }
}

/// Class of a vector in a piece, as coordinates in its basis.
pub fn class_in_piece(piece: &NormalPiece, v: &SparseVec) -> Option<SparseVec> {
    linalg::express(&piece.coords, v)
}

/// Shared data for computing normal module pieces of one ideal.
pub struct NormalModule {
    ideal: GradedIdeal,
    degrees: Vec<u32>,
    quotient: QuotientRing,
    syzygies: SyzygyModule,
}

impl NormalModule {
    pub fn new(ideal: &GradedIdeal, config: &GroebnerConfig) -> Result<Self> {
        let gens = ideal.generators().to_vec();
        if gens.is_empty() {
            return Err(crate::Error::Precondition("ideal has no generators".into()));
        }
        let degrees = gens
            .iter()
            .map(|g| g.homogeneous_degree())
            .collect::<Result<Vec<_>>>()?;
        let quotient = QuotientRing::new(ideal.groebner(config)?);
        let syzygies = SyzygyModule::compute(&gens, config)?;
        Ok(NormalModule {
            ideal: ideal.clone(),
            degrees,
            quotient,
            syzygies,
        })
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn quotient(&self) -> &QuotientRing {
        &self.quotient
    }

    pub fn syzygies(&self) -> &SyzygyModule {
        &self.syzygies
    }

    pub fn layout(&self, twist: i64) -> Layout {
        let mut blocks = Vec::with_capacity(self.degrees.len());
        let mut offset = 0;
        for &d in &self.degrees {
            let deg = d as i64 + twist;
            if deg < 0 {
                blocks.push((offset, None, 0));
            } else {
                let len = self.quotient.dim(deg as u32);
                blocks.push((offset, Some(deg as u32), len));
                offset += len;
            }
        }
        Layout {
            twist,
            blocks,
            total: offset,
        }
    }

    /// Reduces each entry mod `I` and returns layout coordinates. Entries
    /// must be homogeneous of the layout's degree (or zero).
    pub fn coords(&self, layout: &Layout, g: &[Polynomial]) -> SparseVec {
        let mut out = Vec::new();
        for (p, &(offset, deg, _)) in g.iter().zip(&layout.blocks) {
            let r = self.quotient.nf(p);
            if r.is_zero() {
                continue;
            }
            let deg = deg.expect("entry in a negative degree block");
            debug_assert_eq!(r.homogeneous_degree().ok(), Some(deg));
            out.extend(self.quotient.coords(&r, deg, offset));
        }
        out
    }

    pub fn from_coords(&self, layout: &Layout, v: &SparseVec) -> Vec<Polynomial> {
        let ring = self.ideal.ring();
        layout
            .blocks
            .iter()
            .map(|&(offset, deg, len)| match deg {
                Some(d) => self.quotient.from_coords(v, d, offset, len),
                None => Polynomial::zero(ring),
            })
            .collect()
    }

    /// Basis of the twist `e` piece: κ-vectors `g` of reduced forms with
    /// `sum_j g_j r_j ≡ 0 mod I` for every syzygy column `r`.
    pub fn piece(&self, twist: i64) -> NormalPiece {
        let layout = self.layout(twist);
        let mut rows: Vec<SparseVec> = Vec::new();
        for col in self.syzygies.columns() {
            let Some(cdeg) = column_degree(col, &self.degrees) else {
                continue;
            };
            let target = cdeg as i64 + twist;
            if target < 0 {
                continue;
            }
            // Column k of the constraint matrix is NF(m * r_j) for unknown k.
            let nrows = self.quotient.dim(target as u32);
            let mut constraint: Vec<SparseVec> = vec![Vec::new(); nrows];
            for (j, &(offset, deg, _)) in layout.blocks.iter().enumerate() {
                let Some(deg) = deg else { continue };
                if col[j].is_zero() {
                    continue;
                }
                for (k, m) in self.quotient.basis(deg).iter().enumerate() {
                    let image = self.quotient.nf_times(m, &col[j]);
                    for (i, c) in self.quotient.coords(&image, target as u32, 0) {
                        constraint[i].push((offset + k, c));
                    }
                }
            }
            for mut r in constraint {
                if !r.is_empty() {
                    r.sort_by_key(|e| e.0);
                    rows.push(r);
                }
            }
        }
        let kernel = linalg::kernel(&rows, layout.total);
        let mut e = Echelon::new();
        for v in &kernel {
            e.insert(v);
        }
        let coords = e.rref();
        let basis = coords.iter().map(|v| self.from_coords(&layout, v)).collect();
        NormalPiece {
            twist,
            layout,
            basis,
            coords,
        }
    }

    /// True if `g` (layout coordinates) is a homomorphism of the given twist.
    pub fn is_homomorphism(&self, g: &[Polynomial]) -> bool {
        let ring = self.ideal.ring();
        self.syzygies.columns().iter().all(|col| {
            let s = g
                .iter()
                .zip(col)
                .fold(Polynomial::zero(ring), |acc, (a, b)| acc + a * b);
            self.quotient.nf(&s).is_zero()
        })
    }

    pub fn derivation_image(&self) -> DerivationImage {
        let layout = self.layout(-1);
        let ring = self.ideal.ring();
        let mut vectors = Vec::with_capacity(ring.nvars());
        let mut coords = Vec::with_capacity(ring.nvars());
        for v in 0..ring.nvars() {
            let g: Vec<Polynomial> = self
                .generators()
                .iter()
                .map(|f| self.quotient.nf(&f.derivative(v)))
                .collect();
            coords.push(self.coords(&layout, &g));
            vectors.push(g);
        }
        let rank = linalg::rank(&coords);
        DerivationImage {
            vectors,
            coords,
            rank,
        }
    }

    pub fn ks_target(&self) -> KsTarget {
        let piece = self.piece(-1);
        let derivations = self.derivation_image();
        let mut e = Echelon::new();
        let mut derivation_basis = Vec::new();
        for v in &derivations.coords {
            if e.insert(v).is_some() {
                derivation_basis.push(v.clone());
            }
        }
        let mut complement = Vec::new();
        for v in &piece.coords {
            if e.insert(v).is_some() {
                complement.push(v.clone());
            }
        }
        KsTarget {
            piece,
            derivations,
            complement,
            derivation_basis,
        }
    }

    /// `dim N(-1) - dim Der`.
    pub fn ks_quotient_dim(&self) -> usize {
        self.piece(-1).dim() - self.derivation_image().rank
    }

    /// Whether the twist `-2` piece vanishes, with its dimension.
    pub fn twist_minus_two_vanishes(&self) -> (bool, usize) {
        let d = self.piece(-2).dim();
        (d == 0, d)
    }
}

/// Degree of a homogeneous syzygy column as a graded module element.
fn column_degree(col: &[Polynomial], degrees: &[u32]) -> Option<u32> {
    col.iter()
        .zip(degrees)
        .find(|(p, _)| !p.is_zero())
        .map(|(p, d)| p.total_degree().unwrap() + d)
}

pub fn normal_module_piece(ideal: &GradedIdeal, twist: i64, config: &GroebnerConfig) -> Result<NormalPiece> {
    Ok(NormalModule::new(ideal, config)?.piece(twist))
}

pub fn derivation_image(ideal: &GradedIdeal, config: &GroebnerConfig) -> Result<DerivationImage> {
    Ok(NormalModule::new(ideal, config)?.derivation_image())
}

pub fn ks_quotient_dim(ideal: &GradedIdeal, config: &GroebnerConfig) -> Result<usize> {
    Ok(NormalModule::new(ideal, config)?.ks_quotient_dim())
}

/// Whether `H^0(N(-2))` vanishes, with its dimension.
pub fn twist_minus_two_vanishes(ideal: &GradedIdeal, config: &GroebnerConfig) -> Result<(bool, usize)> {
    Ok(NormalModule::new(ideal, config)?.twist_minus_two_vanishes())
}
