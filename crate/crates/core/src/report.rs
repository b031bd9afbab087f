//! The experiment commands behind the `commetric` binary: run a sweep, write
//! CSV files plus a key=value run manifest, and render a console summary.
//!
//! CSV floats use 17 significant digits (`{:.16e}`), so every value round
//! trips exactly; console output uses 4.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::metrics::{counterexample_triple, defect, Alpha, DefectSample};
use crate::montecarlo::{
    self, with_threads, ExperimentConfig, SummaryStats, TheoryRow, DEFAULT_BINS, DEFAULT_TRIALS,
    TABLE_ALPHA,
};
use crate::sampling::{EnsembleKind, DEFAULT_SEED};
use crate::theory;

pub const TABLE1_FILE: &str = "table1.csv";
pub const THEORY_FILE: &str = "theory_vs_sim.csv";
pub const MANIFEST_FILE: &str = "run_manifest.txt";
pub const HISTOGRAM_N: [usize; 6] = [2, 5, 10, 25, 50, 100];
pub const THEORY_N: [usize; 8] = [2, 3, 4, 5, 10, 25, 50, 100];

pub fn histogram_file(n: usize) -> String {
    format!("hist_n{n}.csv")
}

/// Full-precision float for CSV.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Four significant digits for the console.
pub fn sig4(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-3..5).contains(&exp) {
        format!("{:.*}", (3 - exp).max(0) as usize, x)
    } else {
        format!("{x:.3e}")
    }
}

/// Options shared by every sweep command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Worker threads; 0 picks automatically. Never affects results.
    pub threads: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            out_dir: PathBuf::from("."),
            threads: 0,
        }
    }
}

fn filter_max_n(n_list: &[usize], max_n: Option<usize>) -> Result<Vec<usize>> {
    let kept: Vec<usize> = n_list
        .iter()
        .copied()
        .filter(|&n| max_n.is_none_or(|m| n <= m))
        .collect();
    if kept.is_empty() {
        return Err(Error::InvalidConfig(
            "no dimensions left after applying --max-n".into(),
        ));
    }
    Ok(kept)
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Flat, sorted `key=value` manifest.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunManifest {
    entries: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        let mut m = Self::default();
        m.set("command", command);
        m.set("version", env!("CARGO_PKG_VERSION"));
        let ts = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        m.set("timestamp_unix", ts);
        m
    }

    pub fn set(&mut self, key: &str, value: impl fmt::Display) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .fold(String::new(), |mut s, (k, v)| {
                let _ = writeln!(s, "{k}={v}");
                s
            })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Self::default();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("manifest line without '=': {line:?}"))
            })?;
            m.entries.insert(k.to_string(), v.to_string());
        }
        Ok(m)
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(MANIFEST_FILE);
        fs::write(&path, self.to_text())?;
        Ok(path)
    }
}

fn prepare_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

// ---------------------------------------------------------------- table1

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Options {
    pub ensemble: EnsembleKind,
    pub n_list: Vec<usize>,
    pub alpha_list: Vec<Alpha>,
    pub trials: u64,
    pub seed: u64,
    pub max_n: Option<usize>,
}

impl Default for Table1Options {
    fn default() -> Self {
        let exp = ExperimentConfig::default();
        Self {
            ensemble: exp.ensemble_kind,
            n_list: exp.n_list,
            alpha_list: exp.alpha_list,
            trials: exp.trials,
            seed: exp.master_seed,
            max_n: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub n: usize,
    pub alpha: Alpha,
    pub stats: SummaryStats,
    /// Predicted mean where a quantitative predictor exists.
    pub theory_mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Report {
    pub ensemble: EnsembleKind,
    pub seed: u64,
    pub trials: u64,
    pub n_list: Vec<usize>,
    pub alpha_list: Vec<Alpha>,
    pub rows: Vec<Table1Row>,
    pub csv_path: PathBuf,
    pub manifest_path: PathBuf,
}

fn theory_mean(kind: EnsembleKind, n: usize, alpha: Alpha) -> Option<f64> {
    theory::predict(kind, n, alpha)
        .ok()
        .and_then(|p| p.expected_value)
        .filter(|m| m.is_quantitative())
        .map(|m| m.value)
}

pub fn cmd_table1(opts: &Table1Options, run: &RunOptions) -> Result<Table1Report> {
    let cfg = ExperimentConfig {
        ensemble_kind: opts.ensemble,
        n_list: filter_max_n(&opts.n_list, opts.max_n)?,
        alpha_list: opts.alpha_list.clone(),
        trials: opts.trials,
        master_seed: opts.seed,
        histogram_bins: DEFAULT_BINS,
    };
    cfg.validate()?;
    prepare_dir(&run.out_dir)?;

    let cells = with_threads(run.threads, || montecarlo::run_experiment(&cfg))??;
    let rows: Vec<Table1Row> = cells
        .iter()
        .map(|c| Table1Row {
            n: c.n,
            alpha: c.alpha,
            stats: c.stats,
            theory_mean: theory_mean(c.ensemble, c.n, c.alpha),
        })
        .collect();

    let csv_path = run.out_dir.join(TABLE1_FILE);
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record([
        "n",
        "alpha",
        "trials",
        "mean",
        "std_dev",
        "violation_rate",
        "theory_mean",
        "seed",
    ])?;
    for r in &rows {
        w.write_record([
            r.n.to_string(),
            csv_float(r.alpha.value()),
            r.stats.count.to_string(),
            csv_float(r.stats.mean),
            csv_float(r.stats.std_dev),
            csv_float(r.stats.violation_rate),
            r.theory_mean.map(csv_float).unwrap_or_default(),
            cfg.master_seed.to_string(),
        ])?;
    }
    w.flush()?;

    let mut manifest = RunManifest::new("table1");
    manifest.set("ensemble", cfg.ensemble_kind);
    manifest.set("n_list", join(&cfg.n_list));
    manifest.set("alpha_list", join(&cfg.alpha_list));
    manifest.set("trials", cfg.trials);
    manifest.set("master_seed", cfg.master_seed);
    manifest.set("histogram_bins", cfg.histogram_bins);
    manifest.set("output.table1", TABLE1_FILE);
    let manifest_path = manifest.write(&run.out_dir)?;

    Ok(Table1Report {
        ensemble: cfg.ensemble_kind,
        seed: cfg.master_seed,
        trials: cfg.trials,
        n_list: cfg.n_list,
        alpha_list: cfg.alpha_list,
        rows,
        csv_path,
        manifest_path,
    })
}

impl Table1Report {
    pub fn cell(&self, n: usize, alpha: Alpha) -> Option<&Table1Row> {
        self.rows.iter().find(|r| r.n == n && r.alpha == alpha)
    }
}

impl fmt::Display for Table1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Delta_alpha mean +- std ({} ensemble, {} trials, seed {})",
            self.ensemble, self.trials, self.seed
        )?;
        write!(f, "{:>5}", "n")?;
        for a in &self.alpha_list {
            write!(f, " | {:^25}", format!("alpha={a}"))?;
        }
        writeln!(f)?;
        for &n in &self.n_list {
            write!(f, "{n:>5}")?;
            for &a in &self.alpha_list {
                let cell = match self.cell(n, a) {
                    Some(r) => format!("{} +- {}", sig4(r.stats.mean), sig4(r.stats.std_dev)),
                    None => String::new(),
                };
                write!(f, " | {cell:^25}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

// ------------------------------------------------------------- histogram

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramOptions {
    pub ensemble: EnsembleKind,
    pub n_list: Vec<usize>,
    pub alpha: Alpha,
    pub trials: u64,
    pub seed: u64,
    pub bins: usize,
    pub max_n: Option<usize>,
}

impl Default for HistogramOptions {
    fn default() -> Self {
        Self {
            ensemble: EnsembleKind::GaussianIid,
            n_list: HISTOGRAM_N.to_vec(),
            alpha: Alpha::ONE,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            bins: DEFAULT_BINS,
            max_n: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramEntry {
    pub n: usize,
    pub path: PathBuf,
    pub histogram: montecarlo::Histogram,
    pub stats: SummaryStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramReport {
    pub ensemble: EnsembleKind,
    pub alpha: Alpha,
    pub entries: Vec<HistogramEntry>,
    pub manifest_path: PathBuf,
}

pub fn cmd_histogram(opts: &HistogramOptions, run: &RunOptions) -> Result<HistogramReport> {
    let n_list = filter_max_n(&opts.n_list, opts.max_n)?;
    let cfg = ExperimentConfig {
        ensemble_kind: opts.ensemble,
        n_list: n_list.clone(),
        alpha_list: vec![opts.alpha],
        trials: opts.trials,
        master_seed: opts.seed,
        histogram_bins: opts.bins,
    };
    cfg.validate()?;
    prepare_dir(&run.out_dir)?;

    let cells = with_threads(run.threads, || montecarlo::run_experiment(&cfg))??;
    let mut manifest = RunManifest::new("histogram");
    manifest.set("ensemble", cfg.ensemble_kind);
    manifest.set("n_list", join(&cfg.n_list));
    manifest.set("alpha_list", opts.alpha);
    manifest.set("trials", cfg.trials);
    manifest.set("master_seed", cfg.master_seed);
    manifest.set("histogram_bins", cfg.histogram_bins);

    let mut entries = Vec::with_capacity(cells.len());
    for cell in cells {
        let name = histogram_file(cell.n);
        let path = run.out_dir.join(&name);
        let h = &cell.histogram;
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["bin_left", "bin_right", "count", "density"])?;
        for (i, (left, right, count)) in h.iter_bins().enumerate() {
            w.write_record([
                csv_float(left),
                csv_float(right),
                count.to_string(),
                csv_float(h.density(i)),
            ])?;
        }
        w.flush()?;
        manifest.set(&format!("output.hist_n{:04}", cell.n), &name);
        entries.push(HistogramEntry {
            n: cell.n,
            path,
            histogram: cell.histogram,
            stats: cell.stats,
        });
    }
    let manifest_path = manifest.write(&run.out_dir)?;
    Ok(HistogramReport {
        ensemble: opts.ensemble,
        alpha: opts.alpha,
        entries,
        manifest_path,
    })
}

impl fmt::Display for HistogramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Delta distribution ({} ensemble, alpha={})",
            self.ensemble, self.alpha
        )?;
        writeln!(f, "{:>5} {:>10} {:>10} {:>12}  file", "n", "mean", "std", "P(Delta<0)")?;
        for e in &self.entries {
            writeln!(
                f,
                "{:>5} {:>10} {:>10} {:>12}  {}",
                e.n,
                sig4(e.stats.mean),
                sig4(e.stats.std_dev),
                sig4(e.stats.violation_rate),
                e.path.display()
            )?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- theory

#[derive(Debug, Clone, PartialEq)]
pub struct TheoryOptions {
    pub ensemble: EnsembleKind,
    pub n_list: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub max_n: Option<usize>,
}

impl Default for TheoryOptions {
    fn default() -> Self {
        Self {
            ensemble: EnsembleKind::UnitSphere,
            n_list: THEORY_N.to_vec(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            max_n: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoryReport {
    pub rows: Vec<TheoryRow>,
    pub csv_path: PathBuf,
    pub manifest_path: PathBuf,
}

pub fn cmd_theory(opts: &TheoryOptions, run: &RunOptions) -> Result<TheoryReport> {
    if opts.ensemble != EnsembleKind::UnitSphere {
        return Err(Error::UnsupportedEnsemble {
            what: "the theory comparison (the moment formulas and bounds hold for matrices uniform on the unit sphere)",
            ensemble: opts.ensemble.name(),
        });
    }
    let n_list = filter_max_n(&opts.n_list, opts.max_n)?;
    if opts.trials < 1 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    prepare_dir(&run.out_dir)?;
    let rows = with_threads(run.threads, || {
        montecarlo::theory_comparison(opts.ensemble, &n_list, opts.trials, opts.seed)
    })??;

    let csv_path = run.out_dir.join(THEORY_FILE);
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record([
        "n",
        "empirical_mean",
        "theory_mean",
        "empirical_std",
        "theory_std_bound",
        "empirical_violation_rate",
        "chebyshev_bound",
    ])?;
    for r in &rows {
        w.write_record([
            r.n.to_string(),
            csv_float(r.defect2.mean),
            csv_float(r.theory_mean_d2),
            csv_float(r.defect2.std_dev),
            csv_float(r.theory_var_bound_d2.sqrt()),
            csv_float(r.defect2.violation_rate),
            csv_float(r.chebyshev_bound),
        ])?;
    }
    w.flush()?;

    let mut manifest = RunManifest::new("theory");
    manifest.set("ensemble", opts.ensemble);
    manifest.set("n_list", join(&n_list));
    manifest.set("alpha_list", "2");
    manifest.set("trials", opts.trials);
    manifest.set("master_seed", opts.seed);
    manifest.set("output.theory", THEORY_FILE);
    let manifest_path = manifest.write(&run.out_dir)?;
    Ok(TheoryReport {
        rows,
        csv_path,
        manifest_path,
    })
}

impl fmt::Display for TheoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>5} {:>10} {:>10} {:>10} {:>10} {:>11} {:>22}",
            "n", "mean", "theory", "std", "std_bound", "P(D2<0)", "chebyshev (capped)"
        )?;
        for r in &self.rows {
            let cheb = format!(
                "{} ({})",
                sig4(r.chebyshev_bound),
                sig4(r.chebyshev_bound.min(1.0))
            );
            writeln!(
                f,
                "{:>5} {:>10} {:>10} {:>10} {:>10} {:>11} {:>22}",
                r.n,
                sig4(r.defect2.mean),
                sig4(r.theory_mean_d2),
                sig4(r.defect2.std_dev),
                sig4(r.theory_var_bound_d2.sqrt()),
                sig4(r.defect2.violation_rate),
                cheb
            )?;
        }
        writeln!(
            f,
            "(std_bound comes from a Cauchy-Schwarz upper bound on the variance)"
        )
    }
}

// -------------------------------------------------------- counterexample

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleReport {
    pub matrices: [Matrix; 3],
    pub defects: Vec<(Alpha, DefectSample)>,
}

impl CounterexampleReport {
    pub fn defect(&self, alpha: Alpha) -> Option<f64> {
        self.defects
            .iter()
            .find(|(a, _)| *a == alpha)
            .map(|(_, s)| s.defect)
    }
}

pub fn cmd_counterexample(alphas: &[Alpha]) -> Result<CounterexampleReport> {
    let matrices = counterexample_triple();
    let [a, b, c] = &matrices;
    let defects = alphas
        .iter()
        .map(|&alpha| Ok((alpha, defect(a, b, c, alpha)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CounterexampleReport { matrices, defects })
}

pub fn default_counterexample_alphas() -> Vec<Alpha> {
    TABLE_ALPHA
        .iter()
        .map(|&a| Alpha::new(a).expect("positive"))
        .collect()
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, m) in ["A", "B", "C"].iter().zip(&self.matrices) {
            writeln!(f, "{name} =")?;
            write!(f, "{m}")?;
        }
        for (alpha, s) in &self.defects {
            writeln!(
                f,
                "alpha={alpha}: d(A,B)={:.15} d(B,C)={:.15} d(A,C)={:.15} Delta={:.15}",
                s.d_ab, s.d_bc, s.d_ac, s.defect
            )?;
        }
        Ok(())
    }
}
