//! The commutator distance family `d_alpha(A, B) = ||AB - BA||_F^alpha` and
//! the signed triangle-inequality defect built from it.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Absolute/relative tolerance used by [`check_axioms`].
pub const AXIOM_TOL: f64 = 1e-12;

/// Exponent of the distance family. Always finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub const HALF: Alpha = Alpha(0.5);
    pub const ONE: Alpha = Alpha(1.0);
    pub const TWO: Alpha = Alpha(2.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Raises a commutator norm to this exponent.
    #[inline]
    pub fn apply(self, norm: f64) -> f64 {
        norm.powf(self.0)
    }

    /// Same as `apply(sq_norm.sqrt())`, bit for bit.
    #[inline]
    pub fn apply_sq(self, sq_norm: f64) -> f64 {
        self.apply(sq_norm.sqrt())
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Pairwise distances of one triple and its signed defect
/// `d_ab + d_bc - d_ac`. A negative defect is a triangle-inequality violation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectSample {
    pub d_ab: f64,
    pub d_bc: f64,
    pub d_ac: f64,
    pub defect: f64,
}

impl DefectSample {
    pub fn from_distances(d_ab: f64, d_bc: f64, d_ac: f64) -> Self {
        Self {
            d_ab,
            d_bc,
            d_ac,
            defect: d_ab + d_bc - d_ac,
        }
    }

    /// Builds the sample from the three squared commutator norms.
    pub fn from_sq_norms(sq: [f64; 3], alpha: Alpha) -> Self {
        Self::from_distances(alpha.apply_sq(sq[0]), alpha.apply_sq(sq[1]), alpha.apply_sq(sq[2]))
    }

    pub fn violates(&self) -> bool {
        self.defect < 0.0
    }
}

pub fn distance(a: &Matrix, b: &Matrix, alpha: Alpha) -> Result<f64> {
    Ok(alpha.apply(a.commutator(b)?.frobenius_norm()))
}

/// Distances with roles `(A, B)`, `(B, C)`, `(A, C)` and their defect.
pub fn defect(a: &Matrix, b: &Matrix, c: &Matrix, alpha: Alpha) -> Result<DefectSample> {
    Ok(DefectSample::from_distances(
        distance(a, b, alpha)?,
        distance(b, c, alpha)?,
        distance(a, c, alpha)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomReport {
    /// `d(a, b) == d(b, a)` within tolerance.
    pub symmetric: bool,
    /// `d(a, a) == 0` within tolerance.
    pub identity_forward: bool,
    /// Whether `a` and `b` commute numerically.
    pub commuting: bool,
    /// Commuting inputs get distance zero (vacuously true otherwise).
    pub zero_on_commuting: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.symmetric && self.identity_forward && self.zero_on_commuting
    }
}

pub fn check_axioms(a: &Matrix, b: &Matrix, alpha: Alpha) -> Result<AxiomReport> {
    let d_ab = distance(a, b, alpha)?;
    let d_ba = distance(b, a, alpha)?;
    let d_aa = distance(a, a, alpha)?;
    let commuting = a.commutator(b)?.frobenius_norm() <= AXIOM_TOL;
    Ok(AxiomReport {
        symmetric: (d_ab - d_ba).abs() <= AXIOM_TOL * d_ab.max(1.0),
        identity_forward: d_aa <= AXIOM_TOL,
        commuting,
        zero_on_commuting: !commuting || d_ab <= alpha.apply(AXIOM_TOL),
    })
}

/// The 2x2 triple whose `alpha = 1` defect is `-sqrt(2)`:
/// `A = [[2,1],[1,1]]`, `B = I`, `C = [[0,1],[1,0]]`.
pub fn counterexample_triple() -> [Matrix; 3] {
    [
        Matrix::from_rows(&[[2.0, 1.0], [1.0, 1.0]]).expect("valid 2x2"),
        Matrix::identity(2).expect("valid 2x2"),
        Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).expect("valid 2x2"),
    ]
}
