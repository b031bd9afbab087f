//! Random-matrix experiments on the commutator distance
//! `d_alpha(A, B) = ||AB - BA||_F^alpha`.
//!
//! The distance is symmetric and vanishes on commuting pairs but can break
//! the triangle inequality. For large random matrices those violations
//! become rare. This crate samples matrix triples, measures the signed
//! triangle-inequality defect
//! `Delta_alpha(A, B, C) = d_alpha(A, B) + d_alpha(B, C) - d_alpha(A, C)`,
//! and compares the statistics against closed-form moments and
//! Chebyshev-type bounds.
//!
//! Modules, bottom up:
//!
//! - [`matrix`]: dense square matrices, commutator, Frobenius norm.
//! - [`sampling`]: unit-sphere, Gaussian and Rademacher ensembles with
//!   per-trial reproducible substreams.
//! - [`metrics`]: the distance family, defects, metric-axiom checks.
//! - [`theory`]: closed-form predictors and bounds.
//! - [`montecarlo`]: the trial engine, streaming statistics, histograms.
//! - [`report`]: CSV/manifest writers used by the `commetric` binary.
//!
//! ```
//! use commutator_metric::{metrics, Alpha};
//!
//! let [a, b, c] = metrics::counterexample_triple();
//! let s = metrics::defect(&a, &b, &c, Alpha::ONE).unwrap();
//! assert!((s.defect + 2f64.sqrt()).abs() < 1e-12);
//! ```

pub mod error;
pub mod matrix;
pub mod metrics;
pub mod montecarlo;
pub mod report;
pub mod sampling;
pub mod theory;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use metrics::{Alpha, DefectSample};
pub use sampling::{Ensemble, EnsembleKind, SeedSpec, Slot, DEFAULT_SEED};
