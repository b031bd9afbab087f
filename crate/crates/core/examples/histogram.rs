//! Text histograms of the alpha = 1 defect for Gaussian matrices. The
//! negative tail shrinks as n grows.
//!
//! ```bash
//! cargo run --release -p commutator-metric --example histogram
//! ```

use commutator_metric::montecarlo::{run_cell, CellConfig};
use commutator_metric::{Alpha, Ensemble, EnsembleKind};

fn main() -> commutator_metric::Result<()> {
    for n in [2, 5, 25] {
        let mut cfg = CellConfig::new(Ensemble::new(EnsembleKind::GaussianIid, n)?, Alpha::ONE, 20_000);
        cfg.histogram_bins = 24;
        let cell = run_cell(&cfg)?;
        let h = &cell.histogram;
        let peak = *h.counts().iter().max().unwrap_or(&1) as f64;
        println!(
            "n = {n}: mean {:.3}, P(Delta < 0) = {:.4}",
            cell.stats.mean, cell.stats.violation_rate
        );
        for (left, right, count) in h.iter_bins() {
            let bar = "#".repeat((50.0 * count as f64 / peak).round() as usize);
            let marker = if left < 0.0 { '-' } else { ' ' };
            println!("  {marker}[{left:>9.2}, {right:>9.2}) {bar}");
        }
        println!();
    }
    Ok(())
}
