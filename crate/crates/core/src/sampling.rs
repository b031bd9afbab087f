//! Reproducible draws from the three matrix ensembles.
//!
//! Every matrix comes from its own ChaCha8 stream, keyed on
//! `(master_seed, trial_index, slot)`. The 32-byte key is laid out as
//!
//! ```text
//! bytes  0..8   master_seed, little endian
//! bytes  8..16  trial_index, little endian
//! byte   16     slot tag (A = 0, B = 1, C = 2)
//! bytes 17..32  zero
//! ```
//!
//! so the mapping from [`SeedSpec`] to stream is injective. There is no
//! shared RNG state, so trials can run in any order or concurrently and
//! still produce the same matrices.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MIN_DIM};

/// Default master seed for reproducible runs.
pub const DEFAULT_SEED: u64 = 0x5EED_C0DE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    /// Uniform on the unit Frobenius sphere.
    UnitSphere,
    /// I.i.d. standard normal entries.
    GaussianIid,
    /// I.i.d. entries uniform on {-1, +1}.
    RademacherIid,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 3] = [
        EnsembleKind::UnitSphere,
        EnsembleKind::GaussianIid,
        EnsembleKind::RademacherIid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::UnitSphere => "unit-sphere",
            EnsembleKind::GaussianIid => "gaussian",
            EnsembleKind::RademacherIid => "rademacher",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EnsembleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown ensemble {s:?} (expected unit-sphere, gaussian or rademacher)"
                ))
            })
    }
}

/// An ensemble kind together with the matrix dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ensemble {
    kind: EnsembleKind,
    n: usize,
}

impl Ensemble {
    pub fn new(kind: EnsembleKind, n: usize) -> Result<Self> {
        if n < MIN_DIM {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self { kind, n })
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// Which member of a sampled triple a matrix is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    A,
    B,
    C,
}

impl Slot {
    fn tag(self) -> u8 {
        match self {
            Slot::A => 0,
            Slot::B => 1,
            Slot::C => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub trial_index: u64,
    pub slot: Slot,
}

impl SeedSpec {
    pub fn new(master_seed: u64, trial_index: u64, slot: Slot) -> Self {
        Self {
            master_seed,
            trial_index,
            slot,
        }
    }

    pub fn key(&self) -> [u8; 32] {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.master_seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.trial_index.to_le_bytes());
        key[16] = self.slot.tag();
        key
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::from_seed(self.key())
    }
}

/// Draws one matrix. A pure function of `(ensemble, seed)`.
pub fn sample(ensemble: Ensemble, seed: SeedSpec) -> Matrix {
    let mut rng = seed.rng();
    let n = ensemble.n;
    let entries: Vec<f64> = match ensemble.kind {
        EnsembleKind::GaussianIid | EnsembleKind::UnitSphere => (0..n * n)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect(),
        EnsembleKind::RademacherIid => (0..n * n)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect(),
    };
    let m = Matrix::from_row_major(n, entries).expect("sampled entries are finite");
    match ensemble.kind {
        // A Gaussian fill is rotation invariant, so its projection is uniform
        // on the sphere. An all-zero draw has probability zero.
        EnsembleKind::UnitSphere => m
            .normalize_to_sphere()
            .expect("gaussian draw is nonzero"),
        _ => m,
    }
}

/// The `(A, B, C)` triple for one trial, each from its own substream.
pub fn sample_triple(ensemble: Ensemble, master_seed: u64, trial_index: u64) -> [Matrix; 3] {
    [Slot::A, Slot::B, Slot::C].map(|slot| {
        sample(ensemble, SeedSpec::new(master_seed, trial_index, slot))
    })
}
