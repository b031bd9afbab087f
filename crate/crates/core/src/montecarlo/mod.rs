//! Monte Carlo experiment engine.
//!
//! A trial draws one `(A, B, C)` triple and records the three squared
//! commutator norms. Every exponent `alpha` is derived from those norms, so a
//! sweep over several exponents samples each dimension once.
//!
//! Trials run on the current rayon pool and are collected in trial-index
//! order before any statistic is folded, which keeps every output bit-stable
//! across thread counts.

mod histogram;
mod stats;

pub use histogram::Histogram;
pub use stats::{RunningStats, SummaryStats};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{counterexample_triple, Alpha, DefectSample};
use crate::sampling::{sample_triple, Ensemble, EnsembleKind, DEFAULT_SEED};
use crate::theory;

/// Trials per cell used for the reference table.
pub const DEFAULT_TRIALS: u64 = 10_000;
pub const DEFAULT_BINS: usize = 100;
pub const TABLE_N: [usize; 10] = [2, 3, 4, 5, 10, 25, 50, 100, 200, 500];
pub const TABLE_ALPHA: [f64; 3] = [0.5, 1.0, 2.0];

/// Squared commutator norms of one triple, ordered `(AB, BC, AC)`.
pub type TrialNorms = [f64; 3];

/// Runs `f` on a dedicated pool with `threads` workers, or on the global pool
/// when `threads == 0`. Results never depend on the thread count.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn triple_sq_norms(triple: &[crate::Matrix; 3], scratch: &mut Vec<f64>) -> TrialNorms {
    let [a, b, c] = triple;
    let sq = |x: &crate::Matrix, y: &crate::Matrix, s: &mut Vec<f64>| {
        x.commutator_sq_norm(y, s).expect("triple shares one dimension")
    };
    [sq(a, b, scratch), sq(b, c, scratch), sq(a, c, scratch)]
}

/// Squared norms for trials `0..trials`, in trial order.
///
/// With `inject_counterexample`, trial 0 is replaced by the fixed 2x2 triple
/// with a negative defect (requires `n == 2`).
pub fn sample_sq_norms(
    ensemble: Ensemble,
    trials: u64,
    master_seed: u64,
    inject_counterexample: bool,
) -> Result<Vec<TrialNorms>> {
    if inject_counterexample && ensemble.dim() != 2 {
        return Err(Error::InvalidConfig(format!(
            "the counterexample triple is 2x2 but n = {}",
            ensemble.dim()
        )));
    }
    let len = usize::try_from(trials).map_err(|_| Error::ResourceExhausted {
        completed: 0,
        requested: trials,
    })?;
    let mut out: Vec<TrialNorms> = Vec::new();
    out.try_reserve_exact(len)
        .map_err(|_| Error::ResourceExhausted {
            completed: 0,
            requested: trials,
        })?;
    out.par_extend((0..trials).into_par_iter().map_init(Vec::new, |scratch, t| {
        let triple = if inject_counterexample && t == 0 {
            counterexample_triple()
        } else {
            sample_triple(ensemble, master_seed, t)
        };
        triple_sq_norms(&triple, scratch)
    }));
    Ok(out)
}

/// One `(ensemble, n, alpha)` cell of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct CellConfig {
    pub ensemble: Ensemble,
    pub alpha: Alpha,
    pub trials: u64,
    pub master_seed: u64,
    pub histogram_bins: usize,
    /// Keep every [`DefectSample`] in the result.
    pub keep_samples: bool,
    pub inject_counterexample: bool,
}

impl CellConfig {
    pub fn new(ensemble: Ensemble, alpha: Alpha, trials: u64) -> Self {
        Self {
            ensemble,
            alpha,
            trials,
            master_seed: DEFAULT_SEED,
            histogram_bins: DEFAULT_BINS,
            keep_samples: false,
            inject_counterexample: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_counts(self.trials, self.histogram_bins)
    }
}

fn validate_counts(trials: u64, bins: usize) -> Result<()> {
    if trials < 1 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if bins < 2 {
        return Err(Error::InvalidConfig(format!(
            "histogram bins must be at least 2, got {bins}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub ensemble: EnsembleKind,
    pub n: usize,
    pub alpha: Alpha,
    pub stats: SummaryStats,
    pub histogram: Histogram,
    pub samples: Option<Vec<DefectSample>>,
}

/// Folds precomputed norms into the statistics for one exponent.
pub fn cell_from_sq_norms(
    ensemble: Ensemble,
    alpha: Alpha,
    norms: &[TrialNorms],
    histogram_bins: usize,
    keep_samples: bool,
) -> Result<CellResult> {
    validate_counts(norms.len() as u64, histogram_bins)?;
    let samples: Vec<DefectSample> = norms
        .iter()
        .map(|&sq| DefectSample::from_sq_norms(sq, alpha))
        .collect();
    let defects: Vec<f64> = samples.iter().map(|s| s.defect).collect();
    let stats = defects.iter().copied().collect::<RunningStats>().summary();
    let histogram = Histogram::from_samples(&defects, histogram_bins)?;
    Ok(CellResult {
        ensemble: ensemble.kind(),
        n: ensemble.dim(),
        alpha,
        stats,
        histogram,
        samples: keep_samples.then_some(samples),
    })
}

pub fn run_cell(cfg: &CellConfig) -> Result<CellResult> {
    cfg.validate()?;
    let norms = sample_sq_norms(
        cfg.ensemble,
        cfg.trials,
        cfg.master_seed,
        cfg.inject_counterexample,
    )?;
    cell_from_sq_norms(
        cfg.ensemble,
        cfg.alpha,
        &norms,
        cfg.histogram_bins,
        cfg.keep_samples,
    )
}

/// A grid of dimensions and exponents over one ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub ensemble_kind: EnsembleKind,
    pub n_list: Vec<usize>,
    pub alpha_list: Vec<Alpha>,
    pub trials: u64,
    pub master_seed: u64,
    pub histogram_bins: usize,
}

impl Default for ExperimentConfig {
    /// The reference table grid: 10 dimensions, 3 exponents, unit sphere.
    fn default() -> Self {
        Self {
            ensemble_kind: EnsembleKind::UnitSphere,
            n_list: TABLE_N.to_vec(),
            alpha_list: TABLE_ALPHA
                .iter()
                .map(|&a| Alpha::new(a).expect("positive"))
                .collect(),
            trials: DEFAULT_TRIALS,
            master_seed: DEFAULT_SEED,
            histogram_bins: DEFAULT_BINS,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        validate_counts(self.trials, self.histogram_bins)?;
        if self.n_list.is_empty() || self.alpha_list.is_empty() {
            return Err(Error::InvalidConfig(
                "dimension and exponent lists must be nonempty".into(),
            ));
        }
        for &n in &self.n_list {
            Ensemble::new(self.ensemble_kind, n)?;
        }
        Ok(())
    }
}

/// Runs every `(n, alpha)` cell, ordered by `n` then `alpha` as listed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<CellResult>> {
    cfg.validate()?;
    let mut cells = Vec::with_capacity(cfg.n_list.len() * cfg.alpha_list.len());
    for &n in &cfg.n_list {
        let ensemble = Ensemble::new(cfg.ensemble_kind, n)?;
        let norms = sample_sq_norms(ensemble, cfg.trials, cfg.master_seed, false)?;
        for &alpha in &cfg.alpha_list {
            cells.push(cell_from_sq_norms(
                ensemble,
                alpha,
                &norms,
                cfg.histogram_bins,
                false,
            )?);
        }
    }
    Ok(cells)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationPoint {
    pub n: usize,
    pub trials: u64,
    pub violations: u64,
    pub violation_rate: f64,
    pub violation_std_error: f64,
    /// Chebyshev bound where one is known for `(ensemble, alpha)`.
    pub chebyshev_bound: Option<f64>,
}

/// Empirical `P(Delta_alpha < 0)` per dimension, next to the Chebyshev bound.
pub fn violation_curve(
    kind: EnsembleKind,
    n_list: &[usize],
    alpha: Alpha,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<ViolationPoint>> {
    if n_list.is_empty() {
        return Err(Error::InvalidConfig("dimension list is empty".into()));
    }
    n_list
        .iter()
        .map(|&n| {
            let ensemble = Ensemble::new(kind, n)?;
            let mut cfg = CellConfig::new(ensemble, alpha, trials);
            cfg.master_seed = master_seed;
            let cell = run_cell(&cfg)?;
            Ok(violation_point(&cell))
        })
        .collect()
}

pub fn violation_point(cell: &CellResult) -> ViolationPoint {
    let bound = theory::predict(cell.ensemble, cell.n, cell.alpha)
        .ok()
        .and_then(|p| p.chebyshev_violation_bound);
    ViolationPoint {
        n: cell.n,
        trials: cell.stats.count,
        violations: cell.stats.violations,
        violation_rate: cell.stats.violation_rate,
        violation_std_error: cell.stats.violation_std_error(),
        chebyshev_bound: bound,
    }
}

/// Empirical against predicted moments of `Delta_2` and `Delta_1` at one `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryRow {
    pub n: usize,
    pub trials: u64,
    pub defect2: SummaryStats,
    pub theory_mean_d2: f64,
    pub theory_var_bound_d2: f64,
    pub chebyshev_bound: f64,
    pub defect1: SummaryStats,
    pub theory_mean_d1: f64,
}

impl TheoryRow {
    pub fn rel_dev_mean_d2(&self) -> f64 {
        (self.defect2.mean - self.theory_mean_d2) / self.theory_mean_d2
    }

    pub fn rel_dev_mean_d1(&self) -> f64 {
        (self.defect1.mean - self.theory_mean_d1) / self.theory_mean_d1
    }

    /// Empirical variance over the bound; at most 1 when the bound holds.
    pub fn var_to_bound_ratio(&self) -> f64 {
        self.defect2.variance() / self.theory_var_bound_d2
    }
}

/// Side-by-side table behind the expectation/deviation plot. Unit sphere only.
pub fn theory_comparison(
    kind: EnsembleKind,
    n_list: &[usize],
    trials: u64,
    master_seed: u64,
) -> Result<Vec<TheoryRow>> {
    if kind != EnsembleKind::UnitSphere {
        return Err(Error::UnsupportedEnsemble {
            what: "theory comparison",
            ensemble: kind.name(),
        });
    }
    if n_list.is_empty() {
        return Err(Error::InvalidConfig("dimension list is empty".into()));
    }
    validate_counts(trials, DEFAULT_BINS)?;
    n_list
        .iter()
        .map(|&n| {
            let ensemble = Ensemble::new(kind, n)?;
            let norms = sample_sq_norms(ensemble, trials, master_seed, false)?;
            let d2 = cell_from_sq_norms(ensemble, Alpha::TWO, &norms, DEFAULT_BINS, false)?;
            let d1 = cell_from_sq_norms(ensemble, Alpha::ONE, &norms, DEFAULT_BINS, false)?;
            let m = theory::defect2_moments(kind, n)?;
            Ok(TheoryRow {
                n,
                trials,
                defect2: d2.stats,
                theory_mean_d2: m.expected,
                theory_var_bound_d2: m.variance_upper_bound,
                chebyshev_bound: theory::chebyshev_violation_bound(n)?,
                defect1: d1.stats,
                theory_mean_d1: theory::expected_norm_alpha1(n)?,
            })
        })
        .collect()
}

/// Statistics of the single-pair quantities `||AB - BA||_F^2` and
/// `||AB - BA||_F`, taken from the `AB` slot of each trial.
pub fn pair_norm_stats(norms: &[TrialNorms]) -> (SummaryStats, SummaryStats) {
    let sq: RunningStats = norms.iter().map(|t| t[0]).collect();
    let root: RunningStats = norms.iter().map(|t| t[0].sqrt()).collect();
    (sq.summary(), root.summary())
}
